#include "tensortail/quadform.hpp"

namespace tensortail {

BlockTensor::BlockTensor(std::size_t n, const Shape& shape) {
    if (n < 1) throw Error(ErrorKind::Dimension, "block tensor: n must be >= 1");
    grid_.assign(n, std::vector<EinsteinTensor>(n, EinsteinTensor::zero(shape)));
}

BlockTensor::BlockTensor(std::vector<std::vector<EinsteinTensor>> grid) : grid_(std::move(grid)) {
    if (grid_.empty()) throw Error(ErrorKind::Dimension, "block tensor: empty grid");
    for (const auto& row : grid_) {
        if (row.size() != grid_.size()) {
            throw Error(ErrorKind::Dimension, "block tensor: grid is not square");
        }
        for (const auto& block : row) {
            if (!block.square() || block.row_shape() != grid_.front().front().row_shape()) {
                throw Error(ErrorKind::Dimension, "block tensor: inconsistent block shapes");
            }
        }
    }
}

void BlockTensor::validate(double hermitian_tol) const {
    for (std::size_t i = 0; i < n(); ++i)
        for (std::size_t j = 0; j < n(); ++j)
            if (!grid_[i][j].is_hermitian(hermitian_tol)) {
                throw Error(ErrorKind::Contract, "block tensor: block (" + std::to_string(i) +
                                                     "," + std::to_string(j) +
                                                     ") is not Hermitian");
            }
}

namespace {

void check_dims(const BlockTensor& a, const BlockVector& x) {
    if (x.size() != a.n()) {
        throw Error(ErrorKind::Dimension, "quadratic form: block count mismatch");
    }
    for (const auto& b : x.blocks) {
        if (!b.square() || b.row_shape() != a.shape()) {
            throw Error(ErrorKind::Dimension, "quadratic form: block shape mismatch");
        }
    }
}

}  // namespace

std::vector<EinsteinTensor> diag_terms(const BlockTensor& a, const BlockVector& x,
                                       const std::vector<EinsteinTensor>& second_moments) {
    check_dims(a, x);
    if (second_moments.size() != a.n()) {
        throw Error(ErrorKind::Dimension, "quadratic form: second moment count mismatch");
    }
    std::vector<EinsteinTensor> out;
    out.reserve(a.n());
    for (std::size_t i = 0; i < a.n(); ++i) {
        const auto centered =
            einstein_product(x.blocks[i], x.blocks[i]) - second_moments[i];
        out.push_back(einstein_product(a.at(i, i), centered));
    }
    return out;
}

std::vector<EinsteinTensor> coupling_terms(const BlockTensor& a, const BlockVector& x1,
                                           const BlockVector& x2) {
    check_dims(a, x1);
    check_dims(a, x2);
    std::vector<EinsteinTensor> out;
    out.reserve(a.n() * a.n() - a.n());
    for (std::size_t i = 0; i < a.n(); ++i) {
        for (std::size_t j = 0; j < a.n(); ++j) {
            if (i == j) continue;
            out.push_back(einstein_product(einstein_product(a.at(i, j), x1.blocks[i]),
                                           x2.blocks[j]));
        }
    }
    return out;
}

std::pair<std::size_t, std::size_t> coupling_pair(std::size_t k, std::size_t n) {
    if (n < 2 || k >= n * n - n) {
        throw Error(ErrorKind::Domain, "coupling_pair: index out of range");
    }
    const std::size_t i = k / (n - 1);
    std::size_t j = k % (n - 1);
    if (j >= i) ++j;
    return {i, j};
}

QuadDecomposition quad_form_centered(const BlockTensor& a, const BlockVector& x,
                                     const std::vector<EinsteinTensor>& second_moments) {
    auto diag = diag_terms(a, x, second_moments);
    auto coupling = coupling_terms(a, x, x);

    QuadDecomposition out{EinsteinTensor::zero(a.shape()), EinsteinTensor::zero(a.shape()),
                          EinsteinTensor::zero(a.shape())};
    for (const auto& y : diag) out.diag_sum += y;
    for (const auto& z : coupling) out.coupling_sum += z;
    out.total = out.diag_sum + out.coupling_sum;
    return out;
}

}  // namespace tensortail
