#pragma once

#include <vector>

#include "tensortail/tensor.hpp"

namespace tensortail {
namespace linalg {

FlatMatrix matmul(const FlatMatrix& a, const FlatMatrix& b);
FlatMatrix adjoint(const FlatMatrix& a);
double frobenius(const FlatMatrix& a);

struct HermitianEig {
    std::vector<double> values;  // ascending
    FlatMatrix vectors;          // column k is the eigenvector of values[k]
};

/// Cyclic Jacobi eigensolver for a complex Hermitian matrix. Converges when
/// the off-diagonal Frobenius mass drops below 1e-12 * ||A||_F.
HermitianEig hermitian_eig(const FlatMatrix& a);

/// Largest singular value, computed as sqrt(lambda_max(A^H A)).
double largest_singular_value(const FlatMatrix& a);

struct InverseResult {
    FlatMatrix inverse;
    double rcond;  // 1 / (||A||_1 * ||A^-1||_1)
};

/// LU with partial pivoting. Throws ErrorKind::Singular on an exactly zero
/// pivot or rcond < 1e-14.
InverseResult lu_inverse(const FlatMatrix& a);

}  // namespace linalg
}  // namespace tensortail
