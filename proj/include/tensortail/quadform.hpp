#pragma once

#include <vector>

#include "tensortail/tensor.hpp"

namespace tensortail {

/// n stacked square blocks, all on one shape.
struct BlockVector {
    std::vector<EinsteinTensor> blocks;

    std::size_t size() const noexcept { return blocks.size(); }
};

/// n x n grid of Hermitian blocks A_{i,j}, all on one shape.
class BlockTensor {
public:
    BlockTensor() = default;
    BlockTensor(std::size_t n, const Shape& shape);
    explicit BlockTensor(std::vector<std::vector<EinsteinTensor>> grid);

    std::size_t n() const noexcept { return grid_.size(); }
    const Shape& shape() const { return grid_.front().front().row_shape(); }

    const EinsteinTensor& at(std::size_t i, std::size_t j) const { return grid_[i][j]; }
    EinsteinTensor& at(std::size_t i, std::size_t j) { return grid_[i][j]; }

    void validate(double hermitian_tol = 1e-9) const;

private:
    std::vector<std::vector<EinsteinTensor>> grid_;
};

/// Centered quadratic form split into the i=j and i!=j sums; total is their
/// entrywise sum by construction.
struct QuadDecomposition {
    EinsteinTensor diag_sum;
    EinsteinTensor coupling_sum;
    EinsteinTensor total;
};

QuadDecomposition quad_form_centered(const BlockTensor& a, const BlockVector& x,
                                     const std::vector<EinsteinTensor>& second_moments);

/// Y_i = A_{i,i} (X_i^2 - E X_i^2).
std::vector<EinsteinTensor> diag_terms(const BlockTensor& a, const BlockVector& x,
                                       const std::vector<EinsteinTensor>& second_moments);

/// Z_k = A_{i,j} * X1_i * X2_j over ordered pairs i != j, k running row-major
/// over (i, j).
std::vector<EinsteinTensor> coupling_terms(const BlockTensor& a, const BlockVector& x1,
                                           const BlockVector& x2);

/// The ordered pair (i, j) of coupling term k under the row-major convention.
std::pair<std::size_t, std::size_t> coupling_pair(std::size_t k, std::size_t n);

}  // namespace tensortail
