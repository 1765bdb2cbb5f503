#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tensortail/rng.hpp"
#include "tensortail/tensor.hpp"

namespace tensortail {

enum class EnsembleKind {
    RademacherScaled,          // eps_i * B_i with fixed Hermitian B_i, spectral radius <= T
    BoundedGaussianHermitian,  // GUE-style draw, rejected until spectral radius <= T, random sign
    DiagonalRademacher,        // diagonal with iid +/-T entries
};

EnsembleKind ensemble_kind_from_string(const std::string& s);
std::string ensemble_kind_to_string(EnsembleKind k);

struct EnsembleSpec {
    EnsembleKind kind = EnsembleKind::DiagonalRademacher;
    Shape shape;
    double bound = 1.0;       // T_ens: a.s. cap on lambda_max of every draw
    std::uint64_t seed = 0;   // root seed for generated bases and default streams
    /// Optional explicit B_i for RademacherScaled; cycled when shorter than n.
    std::vector<EinsteinTensor> basis;
};

/// Draws independent zero-mean bounded random Hermitian tensors for the n
/// blocks of a quadratic form. The fixed data (the B_i) is materialized at
/// construction; the RNG stream is supplied per call.
class Sampler {
public:
    Sampler(EnsembleSpec spec, std::size_t n);

    const EnsembleSpec& spec() const noexcept { return spec_; }
    std::size_t block_count() const noexcept { return n_; }

    EinsteinTensor sample_block(std::size_t i, RngStream& rng) const;
    std::vector<EinsteinTensor> sample(RngStream& rng) const;

    /// Exact E X_i^2 where available; ErrorKind::Unsupported for ensembles
    /// with continuous support.
    EinsteinTensor second_moment(std::size_t i) const;

    bool finite_support() const noexcept;
    /// Atoms (value, probability) of X_i; ErrorKind::Unsupported when the
    /// support is continuous or too large to enumerate.
    std::vector<std::pair<EinsteinTensor, double>> support(std::size_t i) const;

private:
    EinsteinTensor basis_tensor(std::size_t i) const;

    EnsembleSpec spec_;
    std::size_t n_;
    std::vector<EinsteinTensor> basis_;  // resolved B_i (RademacherScaled only)
};

/// Dense Hermitian tensor with iid Gaussian entries of the given scale.
EinsteinTensor random_hermitian_tensor(const Shape& shape, RngStream& rng, double entry_std);

/// Two streams split deterministically from one seed; repeated calls with the
/// same arguments reproduce both lists bit-exactly.
std::pair<std::vector<EinsteinTensor>, std::vector<EinsteinTensor>>
independent_copies(const EnsembleSpec& spec, std::size_t n, std::uint64_t seed);

struct SwapPair {
    std::vector<EinsteinTensor> z1;
    std::vector<EinsteinTensor> z2;
    std::vector<int> rho;  // +1 keeps (x1_i, x2_i), -1 swaps them
};

SwapPair bernoulli_swap(const std::vector<EinsteinTensor>& x1,
                        const std::vector<EinsteinTensor>& x2,
                        const std::vector<int>& rho);

}  // namespace tensortail
