#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace evassoc {

/// Minimal dense row-major matrix of doubles, sized at construction.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), cells_(rows * cols, fill) {}

  double& operator()(std::size_t i, std::size_t j) { return cells_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return cells_[i * cols_ + j]; }

  double& at(std::size_t i, std::size_t j) {
    check(i, j);
    return cells_[i * cols_ + j];
  }
  double at(std::size_t i, std::size_t j) const {
    check(i, j);
    return cells_[i * cols_ + j];
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

 private:
  void check(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw std::out_of_range("Matrix index out of range");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> cells_;
};

}  // namespace evassoc
