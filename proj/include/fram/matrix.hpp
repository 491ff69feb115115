#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace fram {

// Dense row-major matrix of binary64 values.
//
// Shapes are validated when the matrix is built and every entry must be
// finite at that point. A default-constructed Matrix is the empty 0x0 value
// and is only meant as a placeholder inside aggregates.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix constant(std::size_t rows, std::size_t cols, double value);
  // 11ᵀ/n, the barycenter of the Birkhoff polytope.
  static Matrix uniform(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  double operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * cols_ + j];
  }
  double& operator()(std::size_t i, std::size_t j) noexcept {
    return data_[i * cols_ + j];
  }

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }
  std::span<const double> row(std::size_t i) const noexcept {
    return std::span<const double>(data_).subspan(i * cols_, cols_);
  }
  std::span<double> row(std::size_t i) noexcept {
    return std::span<double>(data_).subspan(i * cols_, cols_);
  }

  Matrix transposed() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(double s) noexcept;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(double s, Matrix a);

// Throws DimensionError unless a and b have the same shape.
void require_same_shape(const Matrix& a, const Matrix& b, const char* what);
// Throws DimensionError unless m is square.
void require_square(const Matrix& m, const char* what);

double frobenius_inner(const Matrix& a, const Matrix& b);
double frobenius_norm(const Matrix& a);
double frobenius_distance(const Matrix& a, const Matrix& b);
// Reductions use compensated summation.
double total_sum(const Matrix& a);
std::vector<double> row_sums(const Matrix& a);
std::vector<double> col_sums(const Matrix& a);
double max_entry(const Matrix& a);
double min_entry(const Matrix& a);
// Entrywise max(a, floor).
Matrix clamp_below(const Matrix& a, double floor);

// Plain product, accumulating each output entry in ascending k order.
Matrix matmul(const Matrix& a, const Matrix& b);

bool all_finite(std::span<const double> values);

}  // namespace fram
