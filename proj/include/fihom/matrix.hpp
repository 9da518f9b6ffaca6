#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fihom/field.hpp"

namespace fihom {

using Vector = std::vector<Scalar>;

/// Dense row-major matrix over F_p. Entries are always reduced.
class Matrix {
 public:
  Matrix() = default;
  Matrix(PrimeField field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  /// Builds from integer rows; entries are reduced mod p.
  Matrix(PrimeField field, std::initializer_list<std::initializer_list<std::int64_t>> rows)
      : field_(field), rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
      for (auto v : r) data_.push_back(field.from_int(v));
    }
  }

  static Matrix identity(PrimeField field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix from_columns(PrimeField field, std::size_t rows, const std::vector<Vector>& cols) {
    Matrix m(field, rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw std::invalid_argument("column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  static Matrix from_rows(PrimeField field, std::size_t cols, const std::vector<Vector>& rows) {
    Matrix m(field, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw std::invalid_argument("row length mismatch");
      std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
    }
    return m;
  }

  const PrimeField& field() const { return field_; }
  Scalar p() const { return field_.p(); }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Scalar operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<Scalar> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const Scalar> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  const std::vector<Scalar>& data() const { return data_; }

  Vector column(std::size_t j) const {
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  void set_column(std::size_t j, std::span<const Scalar> v) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](Scalar s) { return s == 0; });
  }

  std::size_t nonzeros() const {
    return static_cast<std::size_t>(std::count_if(data_.begin(), data_.end(), [](Scalar s) { return s != 0; }));
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Rows selected by index, in the given order.
  Matrix select_rows(std::span<const std::size_t> idx) const {
    Matrix m(field_, idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i) std::copy_n(row(idx[i]).begin(), cols_, m.row(i).begin());
    return m;
  }

  Matrix select_columns(std::span<const std::size_t> idx) const {
    Matrix m(field_, rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
    return m;
  }

  Matrix hstack(const Matrix& other) const {
    check_same_field(other);
    if (other.rows_ != rows_) throw std::invalid_argument("hstack: row count mismatch");
    Matrix m(field_, rows_, cols_ + other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      std::copy_n(row(i).begin(), cols_, m.row(i).begin());
      std::copy_n(other.row(i).begin(), other.cols_, m.row(i).begin() + cols_);
    }
    return m;
  }

  Matrix vstack(const Matrix& other) const {
    check_same_field(other);
    if (other.cols_ != cols_) throw std::invalid_argument("vstack: column count mismatch");
    Matrix m = *this;
    m.rows_ += other.rows_;
    m.data_.insert(m.data_.end(), other.data_.begin(), other.data_.end());
    return m;
  }

  Matrix operator+(const Matrix& o) const {
    check_shape(o);
    Matrix m = *this;
    for (std::size_t k = 0; k < data_.size(); ++k) m.data_[k] = field_.add(m.data_[k], o.data_[k]);
    return m;
  }

  Matrix operator-(const Matrix& o) const {
    check_shape(o);
    Matrix m = *this;
    for (std::size_t k = 0; k < data_.size(); ++k) m.data_[k] = field_.sub(m.data_[k], o.data_[k]);
    return m;
  }

  Matrix scaled(Scalar c) const {
    Matrix m = *this;
    for (auto& x : m.data_) x = field_.mul(x, c);
    return m;
  }

  /// Product; skips zero entries of the left factor, so permutation-like
  /// matrices multiply in time proportional to their nonzeros.
  Matrix operator*(const Matrix& b) const {
    check_same_field(b);
    if (cols_ != b.rows_) throw std::invalid_argument("matrix product: inner dimension mismatch");
    Matrix c(field_, rows_, b.cols_);
    std::vector<std::uint64_t> acc(b.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      std::fill(acc.begin(), acc.end(), 0);
      unsigned pending = 0;
      for (std::size_t k = 0; k < cols_; ++k) {
        Scalar a = (*this)(i, k);
        if (a == 0) continue;
        auto brow = b.row(k);
        for (std::size_t j = 0; j < b.cols_; ++j) acc[j] += static_cast<std::uint64_t>(a) * brow[j];
        // each term < 2^62, so at most three terms can accumulate safely
        if (++pending == 3) {
          for (auto& x : acc) x = field_.reduce(x);
          pending = 0;
        }
      }
      auto crow = c.row(i);
      for (std::size_t j = 0; j < b.cols_; ++j) crow[j] = field_.reduce(acc[j]);
    }
    return c;
  }

  Vector operator*(std::span<const Scalar> v) const {
    if (v.size() != cols_) throw std::invalid_argument("matrix-vector product: dimension mismatch");
    Vector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      std::uint64_t acc = 0;
      auto r = row(i);
      for (std::size_t k = 0; k < cols_; ++k) {
        if (r[k] == 0 || v[k] == 0) continue;
        acc = field_.reduce(acc + static_cast<std::uint64_t>(r[k]) * v[k]);
      }
      out[i] = static_cast<Scalar>(acc);
    }
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
      os << (i ? ",[" : "[");
      for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j);
      os << ']';
    }
    os << ']';
    return os.str();
  }

 private:
  void check_same_field(const Matrix& o) const {
    if (!(o.field_ == field_)) throw std::invalid_argument("matrices over different fields");
  }
  void check_shape(const Matrix& o) const {
    check_same_field(o);
    if (o.rows_ != rows_ || o.cols_ != cols_) throw std::invalid_argument("matrix shape mismatch");
  }

  PrimeField field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

inline bool is_zero_vector(std::span<const Scalar> v) {
  return std::all_of(v.begin(), v.end(), [](Scalar s) { return s == 0; });
}

}  // namespace fihom
