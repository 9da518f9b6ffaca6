#pragma once

// Exact row reduction over F_p: echelon engines (dense and sparse pivot
// storage), rref, rank, kernel/image bases, solve and quotient maps.
//
// Pivot selection is always first-nonzero in column order, so every result
// is a deterministic function of the input. The reduced row echelon form is
// unique, which makes results independent of the storage choice.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fihom/field.hpp"
#include "fihom/matrix.hpp"

namespace fihom {

enum class Storage { Auto, Dense, Sparse };

/// Sparse storage is chosen for matrices with at least `min_entries` entries
/// and a nonzero density below `max_density`.
struct SparsityPolicy {
  std::size_t min_entries = 1u << 14;
  double max_density = 0.08;

  bool prefer_sparse(std::size_t rows, std::size_t cols, std::size_t nnz) const {
    std::size_t total = rows * cols;
    return total >= min_entries && static_cast<double>(nnz) < max_density * static_cast<double>(total);
  }
};

inline SparsityPolicy& sparsity_policy() {
  static SparsityPolicy policy;
  return policy;
}

inline Storage resolve_storage(Storage s, const Matrix& a) {
  if (s != Storage::Auto) return s;
  return sparsity_policy().prefer_sparse(a.rows(), a.cols(), a.nonzeros()) ? Storage::Sparse : Storage::Dense;
}

/// Incremental row echelon basis. Rows are inserted one at a time and
/// reduced against the current pivots; independent rows become new pivots
/// (normalized to a leading 1).
class RowEchelon {
 public:
  RowEchelon(PrimeField field, std::size_t cols, Storage storage = Storage::Dense)
      : field_(field), cols_(cols), sparse_(storage == Storage::Sparse), pivot_of_(cols, npos) {}

  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return pivot_col_.size(); }
  bool full() const { return rank() == cols_; }

  /// Reduces `v` in place against the pivots; returns true if it vanished.
  bool reduce(std::span<Scalar> v) const {
    bool zero = true;
    for (std::size_t c = 0; c < cols_; ++c) {
      if (v[c] == 0) continue;
      std::size_t r = pivot_of_[c];
      if (r == npos) {
        zero = false;
        continue;
      }
      axpy(v, r, field_.neg(v[c]));
    }
    return zero;
  }

  /// Inserts a row; returns true if it increased the rank.
  bool insert(std::span<const Scalar> row) {
    if (full()) return false;
    work_.assign(row.begin(), row.end());
    std::size_t lead = npos;
    for (std::size_t c = 0; c < cols_; ++c) {
      if (work_[c] == 0) continue;
      std::size_t r = pivot_of_[c];
      if (r == npos) {
        if (lead == npos) lead = c;
        continue;
      }
      axpy(work_, r, field_.neg(work_[c]));
    }
    if (lead == npos) return false;
    Scalar s = field_.inv(work_[lead]);
    if (s != 1)
      for (std::size_t j = lead; j < cols_; ++j) work_[j] = field_.mul(work_[j], s);
    store(work_, lead);
    return true;
  }

  /// Pivot columns in increasing order.
  std::vector<std::size_t> pivots() const {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < cols_; ++c)
      if (pivot_of_[c] != npos) out.push_back(c);
    return out;
  }

  /// The reduced row echelon basis: one row per pivot, sorted by pivot column.
  Matrix reduced() const {
    auto piv = pivots();
    Matrix out(field_, piv.size(), cols_);
    for (std::size_t i = piv.size(); i-- > 0;) {
      auto row = out.row(i);
      load(pivot_of_[piv[i]], row);
      for (std::size_t k = i + 1; k < piv.size(); ++k) {
        Scalar c = row[piv[k]];
        if (c == 0) continue;
        Scalar f = field_.neg(c);
        auto other = out.row(k);
        for (std::size_t j = piv[k]; j < cols_; ++j)
          if (other[j]) row[j] = field_.reduce(row[j] + static_cast<std::uint64_t>(f) * other[j]);
      }
    }
    return out;
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  void store(const Vector& v, std::size_t lead) {
    pivot_of_[lead] = pivot_col_.size();
    pivot_col_.push_back(lead);
    if (sparse_) {
      std::vector<std::uint32_t> idx;
      Vector val;
      for (std::size_t j = lead; j < cols_; ++j)
        if (v[j]) {
          idx.push_back(static_cast<std::uint32_t>(j));
          val.push_back(v[j]);
        }
      sparse_idx_.push_back(std::move(idx));
      sparse_val_.push_back(std::move(val));
    } else {
      dense_.push_back(v);
    }
  }

  void load(std::size_t r, std::span<Scalar> out) const {
    std::fill(out.begin(), out.end(), 0);
    if (sparse_) {
      const auto& idx = sparse_idx_[r];
      const auto& val = sparse_val_[r];
      for (std::size_t k = 0; k < idx.size(); ++k) out[idx[k]] = val[k];
    } else {
      std::copy(dense_[r].begin(), dense_[r].end(), out.begin());
    }
  }

  // v += f * pivot_row(r)
  void axpy(std::span<Scalar> v, std::size_t r, Scalar f) const {
    const bool gf2 = field_.p() == 2;
    if (sparse_) {
      const auto& idx = sparse_idx_[r];
      const auto& val = sparse_val_[r];
      if (gf2) {
        for (std::size_t k = 0; k < idx.size(); ++k) v[idx[k]] ^= 1u;
      } else {
        for (std::size_t k = 0; k < idx.size(); ++k)
          v[idx[k]] = field_.reduce(v[idx[k]] + static_cast<std::uint64_t>(f) * val[k]);
      }
      return;
    }
    const Vector& row = dense_[r];
    std::size_t start = pivot_col_[r];
    if (gf2) {
      for (std::size_t j = start; j < cols_; ++j) v[j] ^= row[j];
    } else {
      for (std::size_t j = start; j < cols_; ++j)
        if (row[j]) v[j] = field_.reduce(v[j] + static_cast<std::uint64_t>(f) * row[j]);
    }
  }

  PrimeField field_;
  std::size_t cols_;
  bool sparse_;
  std::vector<std::size_t> pivot_of_;
  std::vector<std::size_t> pivot_col_;
  std::vector<Vector> dense_;
  std::vector<std::vector<std::uint32_t>> sparse_idx_;
  std::vector<Vector> sparse_val_;
  Vector work_;
};

struct RrefResult {
  Matrix reduced;  // same shape as the input, zero rows at the bottom
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
};

inline RrefResult rref(const Matrix& a, Storage storage = Storage::Auto) {
  RowEchelon ech(a.field(), a.cols(), resolve_storage(storage, a));
  for (std::size_t i = 0; i < a.rows(); ++i) ech.insert(a.row(i));
  Matrix basis = ech.reduced();
  RrefResult out{Matrix(a.field(), a.rows(), a.cols()), ech.pivots(), ech.rank()};
  for (std::size_t i = 0; i < basis.rows(); ++i)
    std::copy_n(basis.row(i).begin(), a.cols(), out.reduced.row(i).begin());
  return out;
}

inline std::size_t rank(const Matrix& a, Storage storage = Storage::Auto) {
  // rank(A) = rank(A^T); eliminating along the shorter side is cheaper
  if (a.rows() > a.cols()) {
    Matrix t = a.transpose();
    RowEchelon ech(a.field(), t.cols(), resolve_storage(storage, t));
    for (std::size_t i = 0; i < t.rows() && !ech.full(); ++i) ech.insert(t.row(i));
    return ech.rank();
  }
  RowEchelon ech(a.field(), a.cols(), resolve_storage(storage, a));
  for (std::size_t i = 0; i < a.rows() && !ech.full(); ++i) ech.insert(a.row(i));
  return ech.rank();
}

/// A linear subspace of F_p^ambient with a canonical basis.
///
/// The basis is kept as the rows of a reduced row echelon matrix, which is
/// the transpose of a reduced column echelon basis: two subspaces with the
/// same span have bit-identical bases. The coordinates of a member vector
/// are its entries at the pivot positions.
class Subspace {
 public:
  Subspace() = default;
  Subspace(PrimeField field, std::size_t ambient) : field_(field), ambient_(ambient), rows_(field, 0, ambient) {}

  static Subspace full(PrimeField field, std::size_t ambient) {
    Subspace s(field, ambient);
    s.rows_ = Matrix::identity(field, ambient);
    s.pivots_.resize(ambient);
    for (std::size_t i = 0; i < ambient; ++i) s.pivots_[i] = i;
    return s;
  }

  /// Span of the rows of `m`.
  static Subspace span_of_rows(const Matrix& m, Storage storage = Storage::Auto) {
    RowEchelon ech(m.field(), m.cols(), resolve_storage(storage, m));
    for (std::size_t i = 0; i < m.rows() && !ech.full(); ++i) ech.insert(m.row(i));
    return from_echelon(ech);
  }

  /// Span of the columns of `m`.
  static Subspace span_of_columns(const Matrix& m, Storage storage = Storage::Auto) {
    return span_of_rows(m.transpose(), storage);
  }

  const PrimeField& field() const { return field_; }
  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return pivots_.size(); }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Basis vectors as rows (dim x ambient), reduced row echelon form.
  const Matrix& basis_rows() const { return rows_; }
  /// Basis vectors as columns (ambient x dim), reduced column echelon form.
  Matrix basis() const { return rows_.transpose(); }

  Vector basis_vector(std::size_t i) const {
    auto r = rows_.row(i);
    return Vector(r.begin(), r.end());
  }

  /// Coordinates of a member vector; no membership check.
  Vector coordinates(std::span<const Scalar> v) const {
    Vector c(dim());
    for (std::size_t i = 0; i < dim(); ++i) c[i] = v[pivots_[i]];
    return c;
  }

  /// Coordinates of the columns of `m` (all assumed members): dim x m.cols().
  Matrix coordinates_of_columns(const Matrix& m) const { return m.select_rows(pivots_); }

  /// Embeds coordinates back into the ambient space.
  Vector embed(std::span<const Scalar> coords) const {
    Vector v(ambient_, 0);
    for (std::size_t i = 0; i < dim(); ++i) {
      Scalar c = coords[i];
      if (c == 0) continue;
      auto r = rows_.row(i);
      for (std::size_t j = pivots_[i]; j < ambient_; ++j)
        if (r[j]) v[j] = field_.reduce(v[j] + static_cast<std::uint64_t>(c) * r[j]);
    }
    return v;
  }

  /// Residue of v after subtracting its pivot-coordinate combination;
  /// zero iff v lies in the subspace.
  Vector residue(std::span<const Scalar> v) const {
    Vector w(v.begin(), v.end());
    for (std::size_t i = 0; i < dim(); ++i) {
      Scalar c = w[pivots_[i]];
      if (c == 0) continue;
      Scalar f = field_.neg(c);
      auto r = rows_.row(i);
      for (std::size_t j = pivots_[i]; j < ambient_; ++j)
        if (r[j]) w[j] = field_.reduce(w[j] + static_cast<std::uint64_t>(f) * r[j]);
    }
    return w;
  }

  bool contains(std::span<const Scalar> v) const { return is_zero_vector(residue(v)); }

  bool contains(const Subspace& other) const {
    for (std::size_t i = 0; i < other.dim(); ++i)
      if (!contains(other.rows_.row(i))) return false;
    return true;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.pivots_ == b.pivots_ && a.rows_ == b.rows_;
  }

  static Subspace from_echelon(const RowEchelon& ech) {
    Subspace s;
    s.ambient_ = ech.cols();
    s.rows_ = ech.reduced();
    s.field_ = s.rows_.field();
    s.pivots_ = ech.pivots();
    return s;
  }

 private:
  PrimeField field_;
  std::size_t ambient_ = 0;
  Matrix rows_;
  std::vector<std::size_t> pivots_;
};

/// Canonical basis of {x : A x = 0}.
inline Subspace kernel_basis(const Matrix& a, Storage storage = Storage::Auto) {
  const auto& f = a.field();
  RrefResult r = rref(a, storage);
  std::vector<char> is_pivot(a.cols(), 0);
  for (auto c : r.pivots) is_pivot[c] = 1;
  std::size_t nfree = a.cols() - r.rank;
  Matrix null(f, nfree, a.cols());
  std::size_t k = 0;
  for (std::size_t col = 0; col < a.cols(); ++col) {
    if (is_pivot[col]) continue;
    auto row = null.row(k++);
    row[col] = 1;
    for (std::size_t i = 0; i < r.rank; ++i) row[r.pivots[i]] = f.neg(r.reduced(i, col));
  }
  return Subspace::span_of_rows(null, storage);
}

/// Canonical basis of the column space of A.
inline Subspace image_basis(const Matrix& a, Storage storage = Storage::Auto) {
  return Subspace::span_of_columns(a, storage);
}

/// Some x with A x = b, or nullopt if b is not in the image. Free variables
/// are set to zero, so the choice is fixed by the pivot structure.
inline std::optional<Vector> solve(const Matrix& a, std::span<const Scalar> b, Storage storage = Storage::Auto) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve: right-hand side has wrong length");
  Matrix aug(a.field(), a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::copy_n(a.row(i).begin(), a.cols(), aug.row(i).begin());
    aug(i, a.cols()) = b[i];
  }
  RrefResult r = rref(aug, storage);
  if (!r.pivots.empty() && r.pivots.back() == a.cols()) return std::nullopt;
  Vector x(a.cols(), 0);
  for (std::size_t i = 0; i < r.rank; ++i) x[r.pivots[i]] = r.reduced(i, a.cols());
  return x;
}

/// A surjection Q : F_p^ambient -> F_p^(ambient - dim U) with ker Q = U.
///
/// Row a of Q reads off the a-th non-pivot coordinate of v after v has been
/// reduced by U's canonical basis, so Q restricted to the non-pivot
/// coordinates is the identity. That inclusion is the canonical section.
inline Matrix quotient_map(const Subspace& u) {
  const auto& f = u.field();
  std::size_t n = u.ambient_dim();
  std::vector<char> is_pivot(n, 0);
  for (auto c : u.pivots()) is_pivot[c] = 1;
  Matrix q(f, n - u.dim(), n);
  std::size_t a = 0;
  for (std::size_t r = 0; r < n; ++r) {
    if (is_pivot[r]) continue;
    q(a, r) = 1;
    for (std::size_t i = 0; i < u.dim(); ++i) q(a, u.pivots()[i]) = f.neg(u.basis_rows()(i, r));
    ++a;
  }
  return q;
}

/// Non-pivot coordinates of U, i.e. the basis of the canonical section of
/// quotient_map(U).
inline std::vector<std::size_t> complement_coordinates(const Subspace& u) {
  std::vector<char> is_pivot(u.ambient_dim(), 0);
  for (auto c : u.pivots()) is_pivot[c] = 1;
  std::vector<std::size_t> out;
  for (std::size_t r = 0; r < u.ambient_dim(); ++r)
    if (!is_pivot[r]) out.push_back(r);
  return out;
}

}  // namespace fihom
