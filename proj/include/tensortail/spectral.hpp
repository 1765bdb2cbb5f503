#pragma once

#include <vector>

#include "tensortail/tensor.hpp"

namespace tensortail {

/// Full spectrum of a Hermitian tensor. Eigenvectors are order-M tensors
/// (empty column group), pairwise orthonormal; for repeated eigenvalues any
/// orthonormal basis of the eigenspace may appear.
struct EigenSystem {
    std::vector<double> values;            // descending
    std::vector<EinsteinTensor> vectors;   // vectors[k] belongs to values[k]
};

/// Perturbation sandwich lambda_k(a) + eps_min(b) <= mu_k(a+b) <= lambda_k(a) + eps_max(b).
struct WeylCheck {
    std::size_t k = 0;  // 1-based
    double lower = 0.0;
    double value = 0.0;
    double upper = 0.0;
};

EigenSystem eigensystem(const EinsteinTensor& c, double hermitian_tol = 1e-10);

double lambda_max(const EinsteinTensor& c, double hermitian_tol = 1e-10);
double lambda_min(const EinsteinTensor& c, double hermitian_tol = 1e-10);

/// <x, c * x> / <x, x> for a nonzero order-M direction x.
double rayleigh_quotient(const EinsteinTensor& c, const EinsteinTensor& x);

WeylCheck weyl_check(const EinsteinTensor& a, const EinsteinTensor& b, std::size_t k);

/// a >= b in the semidefinite order, i.e. lambda_min(a-b) >= -tol.
bool psd_order(const EinsteinTensor& a, const EinsteinTensor& b, double tol);

}  // namespace tensortail
