#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "egp/errors.hpp"

namespace egp {

// A set of input points sharing one dimension, stored row-major in one
// contiguous buffer. Time-series use dim == 1.
struct Points {
  std::size_t dim = 0;
  std::vector<double> data;

  Points() = default;
  Points(std::size_t dim_, std::vector<double> data_) : dim(dim_), data(std::move(data_)) {
    if (dim == 0 && !data.empty())
      throw DimensionMismatch("Points: dimension 0 with nonempty data");
    if (dim > 0 && data.size() % dim != 0)
      throw DimensionMismatch("Points: data length is not a multiple of the dimension");
  }

  static Points column(std::span<const double> values) {
    return Points(1, std::vector<double>(values.begin(), values.end()));
  }

  std::size_t count() const { return dim == 0 ? 0 : data.size() / dim; }

  std::span<const double> row(std::size_t i) const { return {data.data() + i * dim, dim}; }

  void append(std::span<const double> point) {
    if (dim == 0) dim = point.size();
    if (point.size() != dim)
      throw DimensionMismatch("Points::append: point dimension differs from set dimension");
    data.insert(data.end(), point.begin(), point.end());
  }
};

}  // namespace egp
