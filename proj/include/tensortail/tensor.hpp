#pragma once

#include <complex>
#include <vector>

#include "tensortail/shape.hpp"

namespace tensortail {

using cplx = std::complex<double>;

/// Dense square-unfoldable matrix; carrier of the unfolding isomorphism.
struct FlatMatrix {
    std::int64_t rows = 0;
    std::int64_t cols = 0;
    std::vector<cplx> entries;  // row-major

    FlatMatrix() = default;
    FlatMatrix(std::int64_t r, std::int64_t c)
        : rows(r), cols(c), entries(static_cast<std::size_t>(r * c)) {}

    cplx& at(std::int64_t r, std::int64_t c) {
        return entries[static_cast<std::size_t>(r * cols + c)];
    }
    cplx at(std::int64_t r, std::int64_t c) const {
        return entries[static_cast<std::size_t>(r * cols + c)];
    }
};

/// Dense order-(M+N) tensor with a row index group and a column index group,
/// stored row-major with the row group varying slowest. Values are immutable
/// in practice: every operation returns a fresh tensor.
class EinsteinTensor {
public:
    EinsteinTensor() = default;

    EinsteinTensor(Shape row_shape, Shape col_shape)
        : row_(std::move(row_shape)),
          col_(std::move(col_shape)),
          entries_(static_cast<std::size_t>(row_.product() * col_.product())) {}

    EinsteinTensor(Shape row_shape, Shape col_shape, std::vector<cplx> entries);

    /// Real-valued construction.
    EinsteinTensor(Shape row_shape, Shape col_shape, const std::vector<double>& entries);

    static EinsteinTensor zero(const Shape& shape) { return {shape, shape}; }
    static EinsteinTensor identity(const Shape& shape);

    const Shape& row_shape() const noexcept { return row_; }
    const Shape& col_shape() const noexcept { return col_; }
    const std::vector<cplx>& entries() const noexcept { return entries_; }
    std::vector<cplx>& entries() noexcept { return entries_; }

    std::int64_t row_dim() const noexcept { return row_.product(); }
    std::int64_t col_dim() const noexcept { return col_.product(); }

    bool square() const noexcept { return row_ == col_; }
    bool same_shape(const EinsteinTensor& other) const noexcept {
        return row_ == other.row_ && col_ == other.col_;
    }

    cplx& at(std::int64_t r, std::int64_t c) {
        return entries_[static_cast<std::size_t>(r * col_dim() + c)];
    }
    cplx at(std::int64_t r, std::int64_t c) const {
        return entries_[static_cast<std::size_t>(r * col_dim() + c)];
    }

    bool is_hermitian(double tol = 1e-10) const;

    EinsteinTensor& operator+=(const EinsteinTensor& other);
    EinsteinTensor& operator-=(const EinsteinTensor& other);
    EinsteinTensor& operator*=(cplx factor);

private:
    Shape row_;
    Shape col_;
    std::vector<cplx> entries_;
};

EinsteinTensor add(const EinsteinTensor& a, const EinsteinTensor& b);
EinsteinTensor sub(const EinsteinTensor& a, const EinsteinTensor& b);
EinsteinTensor scale(const EinsteinTensor& a, cplx factor);

inline EinsteinTensor operator+(const EinsteinTensor& a, const EinsteinTensor& b) { return add(a, b); }
inline EinsteinTensor operator-(const EinsteinTensor& a, const EinsteinTensor& b) { return sub(a, b); }
inline EinsteinTensor operator*(cplx f, const EinsteinTensor& a) { return scale(a, f); }
inline EinsteinTensor operator*(double f, const EinsteinTensor& a) { return scale(a, f); }

/// Contraction of a's column group against b's row group; generalizes matrix
/// multiplication and reduces to it under unfolding.
EinsteinTensor einstein_product(const EinsteinTensor& a, const EinsteinTensor& b);

EinsteinTensor conjugate_transpose(const EinsteinTensor& a);

/// Inverse via LU with partial pivoting on the unfolding. Throws
/// ErrorKind::Singular (message carries the condition estimate) when the
/// reciprocal condition estimate falls below 1e-14.
EinsteinTensor inverse(const EinsteinTensor& a);

cplx trace(const EinsteinTensor& a);
cplx inner(const EinsteinTensor& a, const EinsteinTensor& b);

double frobenius_norm(const EinsteinTensor& a);
/// Largest singular value of the unfolding.
double spectral_norm(const EinsteinTensor& a);

FlatMatrix unfold(const EinsteinTensor& a);
EinsteinTensor fold(const FlatMatrix& m, const Shape& row_shape, const Shape& col_shape);

bool is_unitary(const EinsteinTensor& a, double tol);

/// Largest entrywise |a - b|; shapes must match.
double max_abs_diff(const EinsteinTensor& a, const EinsteinTensor& b);

/// (t + t^H) / 2.
EinsteinTensor hermitize(const EinsteinTensor& t);

}  // namespace tensortail
