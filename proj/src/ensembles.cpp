#include "tensortail/ensembles.hpp"

#include <cmath>

#include "tensortail/spectral.hpp"

namespace tensortail {

EnsembleKind ensemble_kind_from_string(const std::string& s) {
    if (s == "rademacher_scaled") return EnsembleKind::RademacherScaled;
    if (s == "bounded_gaussian_hermitian") return EnsembleKind::BoundedGaussianHermitian;
    if (s == "diagonal_rademacher") return EnsembleKind::DiagonalRademacher;
    throw Error(ErrorKind::Parse, "unknown ensemble kind: " + s);
}

std::string ensemble_kind_to_string(EnsembleKind k) {
    switch (k) {
        case EnsembleKind::RademacherScaled: return "rademacher_scaled";
        case EnsembleKind::BoundedGaussianHermitian: return "bounded_gaussian_hermitian";
        case EnsembleKind::DiagonalRademacher: return "diagonal_rademacher";
    }
    return "?";
}

namespace {

constexpr int kRejectionCap = 1000000;
constexpr std::uint64_t kBasisStream = 0xB0;

double spectral_radius(const EinsteinTensor& h) {
    const auto eig = eigensystem(h, 1e-9);
    return std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
}

}  // namespace

EinsteinTensor random_hermitian_tensor(const Shape& shape, RngStream& rng, double entry_std) {
    const auto d = shape.product();
    EinsteinTensor t(shape, shape);
    for (std::int64_t r = 0; r < d; ++r) {
        t.at(r, r) = entry_std * rng.next_normal();
        for (std::int64_t c = r + 1; c < d; ++c) {
            const cplx v{entry_std * rng.next_normal(), entry_std * rng.next_normal()};
            t.at(r, c) = v;
            t.at(c, r) = std::conj(v);
        }
    }
    return t;
}

Sampler::Sampler(EnsembleSpec spec, std::size_t n) : spec_(std::move(spec)), n_(n) {
    if (n_ < 1) throw Error(ErrorKind::Domain, "sampler: block count must be >= 1");
    if (spec_.bound <= 0.0) throw Error(ErrorKind::Domain, "sampler: bound T must be > 0");
    if (spec_.kind == EnsembleKind::RademacherScaled) {
        basis_.reserve(n_);
        for (std::size_t i = 0; i < n_; ++i) basis_.push_back(basis_tensor(i));
    }
}

EinsteinTensor Sampler::basis_tensor(std::size_t i) const {
    if (!spec_.basis.empty()) {
        const auto& b = spec_.basis[i % spec_.basis.size()];
        if (b.row_shape() != spec_.shape || !b.square()) {
            throw Error(ErrorKind::Dimension, "ensemble basis tensor shape mismatch");
        }
        if (!b.is_hermitian(1e-10)) {
            throw Error(ErrorKind::Contract, "ensemble basis tensor is not Hermitian");
        }
        if (spectral_radius(b) > spec_.bound + 1e-9) {
            throw Error(ErrorKind::Contract, "ensemble basis tensor exceeds bound T");
        }
        return b;
    }
    auto rng = make_stream(spec_.seed, kBasisStream, static_cast<std::uint64_t>(i) & 0xFF);
    auto b = random_hermitian_tensor(spec_.shape, rng, 1.0);
    const double radius = spectral_radius(b);
    if (radius > 0.0) b *= spec_.bound / radius;
    return b;
}

EinsteinTensor Sampler::sample_block(std::size_t i, RngStream& rng) const {
    switch (spec_.kind) {
        case EnsembleKind::DiagonalRademacher: {
            EinsteinTensor t = EinsteinTensor::zero(spec_.shape);
            const auto d = spec_.shape.product();
            for (std::int64_t r = 0; r < d; ++r) t.at(r, r) = spec_.bound * rng.next_sign();
            return t;
        }
        case EnsembleKind::RademacherScaled:
            return static_cast<double>(rng.next_sign()) * basis_[i];
        case EnsembleKind::BoundedGaussianHermitian: {
            const auto d = spec_.shape.product();
            const double entry_std =
                spec_.bound / (2.5 * std::sqrt(static_cast<double>(d)) + 1.0);
            for (int attempt = 0; attempt < kRejectionCap; ++attempt) {
                auto h = random_hermitian_tensor(spec_.shape, rng, entry_std);
                // rejection on the full spectral radius keeps the draw bounded
                // under the symmetrizing sign flip as well
                if (spectral_radius(h) <= spec_.bound) {
                    return static_cast<double>(rng.next_sign()) * h;
                }
            }
            throw Error(ErrorKind::Infeasible,
                        "bounded gaussian ensemble: rejection cap reached for T = " +
                            std::to_string(spec_.bound));
        }
    }
    throw Error(ErrorKind::Unsupported, "unknown ensemble kind");
}

std::vector<EinsteinTensor> Sampler::sample(RngStream& rng) const {
    std::vector<EinsteinTensor> out;
    out.reserve(n_);
    for (std::size_t i = 0; i < n_; ++i) out.push_back(sample_block(i, rng));
    return out;
}

EinsteinTensor Sampler::second_moment(std::size_t i) const {
    switch (spec_.kind) {
        case EnsembleKind::DiagonalRademacher:
            // diag(+-T)^2 = T^2 I exactly
            return (spec_.bound * spec_.bound) * EinsteinTensor::identity(spec_.shape);
        case EnsembleKind::RademacherScaled:
            return einstein_product(basis_[i], basis_[i]);
        case EnsembleKind::BoundedGaussianHermitian:
            throw Error(ErrorKind::Unsupported,
                        "second moment of the bounded gaussian ensemble is not analytic; "
                        "supply a Monte Carlo estimate");
    }
    throw Error(ErrorKind::Unsupported, "unknown ensemble kind");
}

bool Sampler::finite_support() const noexcept {
    return spec_.kind != EnsembleKind::BoundedGaussianHermitian;
}

std::vector<std::pair<EinsteinTensor, double>> Sampler::support(std::size_t i) const {
    switch (spec_.kind) {
        case EnsembleKind::RademacherScaled: {
            const auto& b = basis_[i];
            return {{b, 0.5}, {-1.0 * b, 0.5}};
        }
        case EnsembleKind::DiagonalRademacher: {
            const auto d = spec_.shape.product();
            if (d > 20) {
                throw Error(ErrorKind::Unsupported,
                            "diagonal Rademacher support too large to enumerate");
            }
            const std::uint64_t patterns = 1ULL << d;
            std::vector<std::pair<EinsteinTensor, double>> out;
            out.reserve(patterns);
            const double prob = 1.0 / static_cast<double>(patterns);
            for (std::uint64_t mask = 0; mask < patterns; ++mask) {
                EinsteinTensor t = EinsteinTensor::zero(spec_.shape);
                for (std::int64_t r = 0; r < d; ++r) {
                    t.at(r, r) = ((mask >> r) & 1) ? spec_.bound : -spec_.bound;
                }
                out.emplace_back(std::move(t), prob);
            }
            return out;
        }
        case EnsembleKind::BoundedGaussianHermitian:
            throw Error(ErrorKind::Unsupported, "bounded gaussian ensemble has continuous support");
    }
    throw Error(ErrorKind::Unsupported, "unknown ensemble kind");
}

std::pair<std::vector<EinsteinTensor>, std::vector<EinsteinTensor>>
independent_copies(const EnsembleSpec& spec, std::size_t n, std::uint64_t seed) {
    Sampler sampler(spec, n);
    auto rng1 = make_stream(seed, 0, 1);
    auto rng2 = make_stream(seed, 0, 2);
    return {sampler.sample(rng1), sampler.sample(rng2)};
}

SwapPair bernoulli_swap(const std::vector<EinsteinTensor>& x1,
                        const std::vector<EinsteinTensor>& x2,
                        const std::vector<int>& rho) {
    if (x1.size() != x2.size() || x1.size() != rho.size()) {
        throw Error(ErrorKind::Dimension, "bernoulli_swap: list length mismatch");
    }
    SwapPair out;
    out.rho = rho;
    out.z1.reserve(x1.size());
    out.z2.reserve(x1.size());
    for (std::size_t i = 0; i < x1.size(); ++i) {
        if (rho[i] != 1 && rho[i] != -1) {
            throw Error(ErrorKind::Domain, "bernoulli_swap: rho entries must be +1 or -1");
        }
        if (rho[i] == 1) {
            out.z1.push_back(x1[i]);
            out.z2.push_back(x2[i]);
        } else {
            out.z1.push_back(x2[i]);
            out.z2.push_back(x1[i]);
        }
    }
    return out;
}

}  // namespace tensortail
