#pragma once

#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <string>
#include <vector>

#include "tensortail/error.hpp"

namespace tensortail {

/// One index group (I_1, ..., I_M) of an Einstein tensor. An empty group is
/// allowed and has product 1; it is how order-M "vector" operands carry an
/// absent column group.
class Shape {
public:
    Shape() = default;

    explicit Shape(std::vector<std::int64_t> dims) : dims_(std::move(dims)) {
        for (auto d : dims_) {
            if (d < 1) throw Error(ErrorKind::Dimension, "shape dims must be >= 1");
        }
    }

    Shape(std::initializer_list<std::int64_t> dims)
        : Shape(std::vector<std::int64_t>(dims)) {}

    const std::vector<std::int64_t>& dims() const noexcept { return dims_; }
    std::size_t order() const noexcept { return dims_.size(); }
    bool empty() const noexcept { return dims_.empty(); }

    std::int64_t product() const noexcept {
        return std::accumulate(dims_.begin(), dims_.end(), std::int64_t{1},
                               [](std::int64_t a, std::int64_t b) { return a * b; });
    }

    bool operator==(const Shape& other) const noexcept = default;

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < dims_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(dims_[i]);
        }
        return s + ")";
    }

private:
    std::vector<std::int64_t> dims_;
};

}  // namespace tensortail
