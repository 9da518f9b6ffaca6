#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fihom/linalg.hpp"
#include "fihom/matrix.hpp"
#include "fihom/perm.hpp"

namespace fihom {

/// A representation of S_n on F_p^dim, given by the action matrices of the
/// adjacent transpositions s_1, ..., s_{n-1} (0-based: gens[i] swaps i, i+1).
class SnRep {
 public:
  SnRep() = default;
  SnRep(PrimeField field, std::size_t n, std::size_t dim) : field_(field), n_(n), dim_(dim) {
    for (std::size_t i = 0; i + 1 < n; ++i) gens_.push_back(Matrix::identity(field, dim));
  }
  SnRep(PrimeField field, std::size_t n, std::size_t dim, std::vector<Matrix> gens)
      : field_(field), n_(n), dim_(dim), gens_(std::move(gens)) {
    if (gens_.size() != (n ? n - 1 : 0)) throw std::invalid_argument("SnRep needs n-1 generator matrices");
    for (const auto& g : gens_)
      if (g.rows() != dim || g.cols() != dim || !(g.field() == field))
        throw std::invalid_argument("SnRep generator has wrong shape or field");
  }

  static SnRep zero(PrimeField field, std::size_t n) { return SnRep(field, n, 0); }
  static SnRep trivial(PrimeField field, std::size_t n) { return SnRep(field, n, 1); }

  const PrimeField& field() const { return field_; }
  std::size_t n() const { return n_; }
  std::size_t dim() const { return dim_; }
  const std::vector<Matrix>& gens() const { return gens_; }
  const Matrix& gen(std::size_t i) const { return gens_.at(i); }

  /// Action matrix of sigma.
  Matrix act(const Perm& sigma) const {
    if (sigma.size() != n_) throw std::invalid_argument("act: permutation degree does not match representation");
    Matrix m = Matrix::identity(field_, dim_);
    auto word = sigma.coxeter_word();
    for (auto it = word.rbegin(); it != word.rend(); ++it) m = gens_[*it] * m;
    return m;
  }

  /// act(sigma) * x without forming act(sigma).
  Matrix apply(const Perm& sigma, Matrix x) const {
    if (sigma.size() != n_) throw std::invalid_argument("apply: permutation degree does not match representation");
    auto word = sigma.coxeter_word();
    for (auto it = word.rbegin(); it != word.rend(); ++it) x = gens_[*it] * x;
    return x;
  }

  /// First violated Coxeter relation, if any.
  std::optional<std::string> coxeter_violation() const {
    Matrix id = Matrix::identity(field_, dim_);
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      if (!(gens_[i] * gens_[i] == id)) return "s_" + std::to_string(i + 1) + "^2 != 1";
      for (std::size_t j = i + 2; j < gens_.size(); ++j)
        if (!(gens_[i] * gens_[j] == gens_[j] * gens_[i]))
          return "s_" + std::to_string(i + 1) + " s_" + std::to_string(j + 1) + " != s_" + std::to_string(j + 1) +
                 " s_" + std::to_string(i + 1);
      if (i + 1 < gens_.size()) {
        const auto& a = gens_[i];
        const auto& b = gens_[i + 1];
        if (!(a * b * a == b * a * b))
          return "braid relation fails for s_" + std::to_string(i + 1) + ", s_" + std::to_string(i + 2);
      }
    }
    return std::nullopt;
  }

  /// Direct sum, block-diagonal.
  SnRep direct_sum(const SnRep& o) const {
    if (o.n_ != n_) throw std::invalid_argument("direct sum of representations of different S_n");
    std::vector<Matrix> gens;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      Matrix g(field_, dim_ + o.dim_, dim_ + o.dim_);
      for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = 0; c < dim_; ++c) g(r, c) = gens_[i](r, c);
      for (std::size_t r = 0; r < o.dim_; ++r)
        for (std::size_t c = 0; c < o.dim_; ++c) g(dim_ + r, dim_ + c) = o.gens_[i](r, c);
      gens.push_back(std::move(g));
    }
    return SnRep(field_, n_, dim_ + o.dim_, std::move(gens));
  }

  friend bool operator==(const SnRep& a, const SnRep& b) {
    return a.field_ == b.field_ && a.n_ == b.n_ && a.dim_ == b.dim_ && a.gens_ == b.gens_;
  }

 private:
  PrimeField field_;
  std::size_t n_ = 0;
  std::size_t dim_ = 0;
  std::vector<Matrix> gens_;
};

using Partition = std::vector<std::size_t>;

inline bool is_partition_of(const Partition& lambda, std::size_t n) {
  std::size_t sum = 0;
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (lambda[i] == 0) return false;
    if (i && lambda[i] > lambda[i - 1]) return false;
    sum += lambda[i];
  }
  return sum == n;
}

/// Ordered set partitions of shape lambda, encoded as words w in
/// {0..l-1}^n (w[i] = block of i) with lambda[b] occurrences of b,
/// listed in lexicographic order.
inline std::vector<std::vector<std::size_t>> ordered_set_partitions(std::size_t n, const Partition& lambda) {
  std::vector<std::size_t> word;
  for (std::size_t b = 0; b < lambda.size(); ++b) word.insert(word.end(), lambda[b], b);
  std::vector<std::vector<std::size_t>> out;
  if (word.size() != n) return out;
  do out.push_back(word);
  while (std::next_permutation(word.begin(), word.end()));
  return out;
}

/// The permutation module on the cosets of the Young subgroup S_lambda.
/// sigma acts on a word by (sigma w)[sigma(i)] = w[i]; s_i swaps letters i, i+1.
inline SnRep perm_module(PrimeField field, std::size_t n, const Partition& lambda) {
  if (!is_partition_of(lambda, n)) throw std::invalid_argument("perm_module: not a partition of n");
  auto words = ordered_set_partitions(n, lambda);
  std::map<std::vector<std::size_t>, std::size_t> index;
  for (std::size_t k = 0; k < words.size(); ++k) index.emplace(words[k], k);
  std::vector<Matrix> gens;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    Matrix g(field, words.size(), words.size());
    for (std::size_t k = 0; k < words.size(); ++k) {
      auto w = words[k];
      std::swap(w[i], w[i + 1]);
      g(index.at(w), k) = 1;
    }
    gens.push_back(std::move(g));
  }
  return SnRep(field, n, words.size(), std::move(gens));
}

inline SnRep regular_rep(PrimeField field, std::size_t n) { return perm_module(field, n, Partition(n, 1)); }

/// Basis of Hom_{S_n}(V, W): all X (dim W x dim V) with
/// W(s_i) X = X V(s_i) for every generator, as the kernel of the stacked
/// commutation system in row-major unknowns. Canonical order.
inline std::vector<Matrix> equivariant_hom_basis(const SnRep& v, const SnRep& w) {
  if (v.n() != w.n()) throw std::invalid_argument("equivariant_hom_basis: different symmetric groups");
  const auto& f = v.field();
  const std::size_t dv = v.dim(), dw = w.dim(), unknowns = dv * dw;
  std::vector<Matrix> out;
  if (unknowns == 0) return out;
  RowEchelon ech(f, unknowns);
  Vector eq(unknowns);
  for (std::size_t g = 0; g < v.gens().size() && !ech.full(); ++g) {
    const Matrix& a = w.gen(g);
    const Matrix& b = v.gen(g);
    for (std::size_t r = 0; r < dw; ++r) {
      for (std::size_t c = 0; c < dv; ++c) {
        std::fill(eq.begin(), eq.end(), 0);
        // (A X)_{rc} = sum_k A_{rk} X_{kc}
        for (std::size_t k = 0; k < dw; ++k)
          if (a(r, k)) eq[k * dv + c] = f.add(eq[k * dv + c], a(r, k));
        // (X B)_{rc} = sum_k X_{rk} B_{kc}
        for (std::size_t k = 0; k < dv; ++k)
          if (b(k, c)) eq[r * dv + k] = f.sub(eq[r * dv + k], b(k, c));
        ech.insert(eq);
      }
    }
  }
  Matrix system = ech.reduced();
  Subspace ker = kernel_basis(system.rows() ? system : Matrix(f, 0, unknowns));
  for (std::size_t i = 0; i < ker.dim(); ++i) {
    Matrix x(f, dw, dv);
    auto row = ker.basis_rows().row(i);
    for (std::size_t k = 0; k < unknowns; ++k) x(k / dv, k % dv) = row[k];
    out.push_back(std::move(x));
  }
  return out;
}

/// True if X intertwines V -> W.
inline bool is_equivariant(const Matrix& x, const SnRep& v, const SnRep& w) {
  if (v.n() != w.n() || x.rows() != w.dim() || x.cols() != v.dim()) return false;
  for (std::size_t g = 0; g < v.gens().size(); ++g)
    if (!(w.gen(g) * x == x * v.gen(g))) return false;
  return true;
}

}  // namespace fihom
