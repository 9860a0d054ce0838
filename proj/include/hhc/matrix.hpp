#pragma once

#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

namespace hhc {

// Dense row-major double matrix. Just enough for the encoder and the
// similarity kernels; not a general linear-algebra library.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0.0) {}

  double& operator()(int r, int c) {
    assert(r >= 0 && r < rows && c >= 0 && c < cols);
    return data[static_cast<std::size_t>(r) * cols + c];
  }
  double operator()(int r, int c) const {
    assert(r >= 0 && r < rows && c >= 0 && c < cols);
    return data[static_cast<std::size_t>(r) * cols + c];
  }

  std::span<double> row(int r) {
    return {data.data() + static_cast<std::size_t>(r) * cols, static_cast<std::size_t>(cols)};
  }
  std::span<const double> row(int r) const {
    return {data.data() + static_cast<std::size_t>(r) * cols, static_cast<std::size_t>(cols)};
  }

  Matrix select_rows(std::span<const int> idx) const {
    Matrix out(static_cast<int>(idx.size()), cols);
    for (int r = 0; r < out.rows; ++r) {
      auto src = row(idx[static_cast<std::size_t>(r)]);
      auto dst = out.row(r);
      for (int c = 0; c < cols; ++c) dst[c] = src[c];
    }
    return out;
  }

  bool same_shape(const Matrix& o) const { return rows == o.rows && cols == o.cols; }
};

}  // namespace hhc
