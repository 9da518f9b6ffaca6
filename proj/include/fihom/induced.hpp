#pragma once

// Induced FI-modules II(V) with explicit orbit bases, and morphisms between
// them stored as adjunction data.
//
// Level n of II(V) has basis {(S, j)}: S an m-subset of [n], j a basis index
// of V_m. The pair stands for beta_S (x) e_j, beta_S the order-preserving
// injection [m] -> [n] with image S. Canonical order: m ascending, S
// lexicographic, j ascending.

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "fihom/fb_module.hpp"
#include "fihom/linalg.hpp"
#include "fihom/perm.hpp"
#include "fihom/snrep.hpp"

namespace fihom {

struct InducedBlock {
  std::size_t m = 0;        // inner degree
  std::size_t offset = 0;   // index of (first subset, j = 0)
  std::size_t rep_dim = 0;  // dim V_m
  std::vector<Subset> subsets;
};

/// Basis enumeration of II(V)_n.
class InducedLevel {
 public:
  InducedLevel(const FBModule& v, std::size_t n) : n_(n) {
    std::size_t offset = 0;
    for (std::size_t m = 0; m <= n && m < v.stored(); ++m) {
      std::size_t d = v.dim(m);
      if (d == 0) continue;
      InducedBlock b{m, offset, d, subsets_of_size(n, m)};
      offset += b.subsets.size() * d;
      blocks_.push_back(std::move(b));
    }
    dim_ = offset;
  }

  std::size_t n() const { return n_; }
  std::size_t dim() const { return dim_; }
  const std::vector<InducedBlock>& blocks() const { return blocks_; }

  const InducedBlock* block(std::size_t m) const {
    for (const auto& b : blocks_)
      if (b.m == m) return &b;
    return nullptr;
  }

  std::size_t index(std::size_t m, const Subset& s, std::size_t j) const {
    const InducedBlock* b = block(m);
    if (!b || s.size() != m || j >= b->rep_dim) throw std::out_of_range("induced basis element out of range");
    return b->offset + subset_rank(n_, s) * b->rep_dim + j;
  }

  /// Inner degree of every basis index.
  std::vector<std::size_t> inner_degrees() const {
    std::vector<std::size_t> out(dim_);
    for (const auto& b : blocks_)
      for (std::size_t k = 0; k < b.subsets.size() * b.rep_dim; ++k) out[b.offset + k] = b.m;
    return out;
  }

 private:
  std::size_t n_;
  std::size_t dim_ = 0;
  std::vector<InducedBlock> blocks_;
};

inline std::size_t induced_dim(const FBModule& v, std::size_t n) {
  std::size_t d = 0;
  for (std::size_t m = 0; m <= n && m < v.stored(); ++m) d += binomial(n, m) * v.dim(m);
  return d;
}

/// Action of sigma in S_n on II(V)_n: (S, j) -> (sigma(S), V_m(tau) e_j).
inline Matrix induced_action(const FBModule& v, std::size_t n, const Perm& sigma) {
  if (sigma.size() != n) throw std::invalid_argument("induced_action: permutation is not in S_n");
  InducedLevel lvl(v, n);
  Matrix out(v.field(), lvl.dim(), lvl.dim());
  for (const auto& b : lvl.blocks()) {
    const SnRep& rep = v.stored_part(b.m);
    std::map<Perm, Matrix> cache;
    for (std::size_t k = 0; k < b.subsets.size(); ++k) {
      auto [t, tau] = induced_subset_perm(sigma, b.subsets[k]);
      auto it = cache.find(tau);
      if (it == cache.end()) it = cache.emplace(tau, rep.act(tau)).first;
      const Matrix& a = it->second;
      std::size_t row0 = b.offset + subset_rank(n, t) * b.rep_dim;
      std::size_t col0 = b.offset + k * b.rep_dim;
      for (std::size_t r = 0; r < b.rep_dim; ++r)
        for (std::size_t c = 0; c < b.rep_dim; ++c) out(row0 + r, col0 + c) = a(r, c);
    }
  }
  return out;
}

/// The S_n-representation II(V)_n, generators computed directly: s_i fixes
/// S unless exactly one of i, i+1 lies in S (then it moves S with trivial
/// inner permutation) or both do (then tau is an adjacent transposition).
inline SnRep induced_level_rep(const FBModule& v, std::size_t n) {
  InducedLevel lvl(v, n);
  std::vector<Matrix> gens;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    Matrix g(v.field(), lvl.dim(), lvl.dim());
    for (const auto& b : lvl.blocks()) {
      const SnRep& rep = v.stored_part(b.m);
      for (std::size_t k = 0; k < b.subsets.size(); ++k) {
        const Subset& s = b.subsets[k];
        std::size_t col0 = b.offset + k * b.rep_dim;
        auto pos_i = std::find(s.begin(), s.end(), i);
        bool has_i = pos_i != s.end();
        bool has_next = std::binary_search(s.begin(), s.end(), i + 1);
        if (has_i && has_next) {
          const Matrix& a = rep.gen(static_cast<std::size_t>(pos_i - s.begin()));
          for (std::size_t r = 0; r < b.rep_dim; ++r)
            for (std::size_t c = 0; c < b.rep_dim; ++c) g(col0 + r, col0 + c) = a(r, c);
        } else {
          std::size_t row0 = col0;
          if (has_i || has_next) {
            Subset t = s;
            for (auto& x : t) {
              if (x == i) x = i + 1;
              else if (x == i + 1) x = i;
            }
            row0 = b.offset + subset_rank(n, t) * b.rep_dim;
          }
          for (std::size_t r = 0; r < b.rep_dim; ++r) g(row0 + r, col0 + r) = 1;
        }
      }
    }
    gens.push_back(std::move(g));
  }
  return SnRep(v.field(), n, lvl.dim(), std::move(gens));
}

/// Index map of the pushforward along beta_T (T an m-subset of [n]):
/// basis index at level m -> basis index at level n. The inner
/// permutation is trivial because beta_T is order preserving.
inline std::vector<std::size_t> induced_pushforward_indices(const FBModule& v, std::size_t m, const Subset& t,
                                                           std::size_t n) {
  InducedLevel src(v, m), dst(v, n);
  std::vector<std::size_t> out(src.dim());
  for (const auto& b : src.blocks()) {
    const InducedBlock* db = dst.block(b.m);
    for (std::size_t k = 0; k < b.subsets.size(); ++k) {
      Subset img(b.m);
      for (std::size_t q = 0; q < b.m; ++q) img[q] = t[b.subsets[k][q]];
      std::size_t base = db->offset + subset_rank(n, img) * b.rep_dim;
      for (std::size_t j = 0; j < b.rep_dim; ++j) out[b.offset + k * b.rep_dim + j] = base + j;
    }
  }
  return out;
}

/// Structure map for the standard inclusion [n] -> [n+1]: (S, j) -> (S, j).
inline Matrix induced_transition(const FBModule& v, std::size_t n) {
  Subset t(n);
  for (std::size_t k = 0; k < n; ++k) t[k] = k;
  auto idx = induced_pushforward_indices(v, n, t, n + 1);
  Matrix out(v.field(), induced_dim(v, n + 1), idx.size());
  for (std::size_t c = 0; c < idx.size(); ++c) out(idx[c], c) = 1;
  return out;
}

/// II(V) as a value type.
class InducedModule {
 public:
  InducedModule() = default;
  explicit InducedModule(FBModule v) : v_(std::move(v)) {}
  const FBModule& generators() const { return v_; }
  const PrimeField& field() const { return v_.field(); }
  std::size_t dim(std::size_t n) const { return induced_dim(v_, n); }
  InducedLevel level(std::size_t n) const { return InducedLevel(v_, n); }

 private:
  FBModule v_;
};

/// M(n) = II(F_p[S_n]), the free FI-module on one generator in degree n.
inline InducedModule free_module(PrimeField field, std::size_t n) {
  return InducedModule(FBModule::concentrated(regular_rep(field, n)));
}

/// A morphism II(V) -> II(W) given by adjunction data c_m : V_m -> II(W)_m.
class InducedMorphism {
 public:
  InducedMorphism() = default;

  /// Validating constructor: every c_m must have the right shape and be
  /// S_m-equivariant.
  InducedMorphism(FBModule source, FBModule target, std::vector<Matrix> data)
      : source_(std::move(source)), target_(std::move(target)), data_(std::move(data)) {
    normalize();
    for (std::size_t m = 0; m < data_.size(); ++m) {
      SnRep tgt = induced_level_rep(target_, m);
      if (!is_equivariant(data_[m], source_.part(m), tgt))
        throw std::invalid_argument("adjunction datum c_" + std::to_string(m) + " is not S_" + std::to_string(m) +
                                    "-equivariant");
    }
  }

  static InducedMorphism zero(const FBModule& source, const FBModule& target) {
    return InducedMorphism(source, target, {});
  }

  const FBModule& source() const { return source_; }
  const FBModule& target() const { return target_; }
  const PrimeField& field() const { return source_.field(); }

  /// c_m, dim II(W)_m x dim V_m.
  const Matrix& datum(std::size_t m) const { return data_.at(m); }
  std::size_t data_size() const { return data_.size(); }
  const std::vector<Matrix>& data() const { return data_; }

  /// The level-n matrix, dim II(W)_n x dim II(V)_n: column (S, j) is the
  /// pushforward of c_m e_j along beta_S.
  Matrix eval(std::size_t n) const {
    InducedLevel src(source_, n);
    Matrix out(field(), induced_dim(target_, n), src.dim());
    for (const auto& b : src.blocks()) {
      const Matrix& c = data_[b.m];
      for (std::size_t k = 0; k < b.subsets.size(); ++k) {
        auto rows = induced_pushforward_indices(target_, b.m, b.subsets[k], n);
        for (std::size_t j = 0; j < b.rep_dim; ++j) {
          std::size_t col = b.offset + k * b.rep_dim + j;
          for (std::size_t r = 0; r < c.rows(); ++r)
            if (c(r, j)) out(rows[r], col) = c(r, j);
        }
      }
    }
    return out;
  }

  /// Keeps only the data c_m with m <= cutoff: the restriction of the
  /// morphism to the summand of inner degrees <= cutoff.
  InducedMorphism restricted_to(int cutoff) const {
    InducedMorphism out = *this;
    for (std::size_t m = 0; m < out.data_.size(); ++m)
      if (static_cast<int>(m) > cutoff) out.data_[m] = Matrix(field(), out.data_[m].rows(), out.data_[m].cols());
    return out;
  }

  bool is_zero() const {
    for (const auto& c : data_)
      if (!c.is_zero()) return false;
    return true;
  }

  /// this o g.
  InducedMorphism compose(const InducedMorphism& g) const {
    if (!(g.target_ == source_)) throw std::invalid_argument("compose: target of g differs from source of f");
    std::vector<Matrix> data;
    for (std::size_t m = 0; m < g.source_.stored(); ++m) data.push_back(eval(m) * g.data_[m]);
    InducedMorphism out;
    out.source_ = g.source_;
    out.target_ = target_;
    out.data_ = std::move(data);
    out.normalize();
    return out;
  }

  InducedMorphism linear_combination(Scalar a, const InducedMorphism& o, Scalar b) const {
    InducedMorphism out = *this;
    for (std::size_t m = 0; m < data_.size(); ++m) out.data_[m] = data_[m].scaled(a) + o.data_[m].scaled(b);
    return out;
  }

  friend bool operator==(const InducedMorphism& a, const InducedMorphism& b) {
    return a.source_ == b.source_ && a.target_ == b.target_ && a.data_ == b.data_;
  }

  /// Unchecked construction, for data already known to be equivariant.
  static InducedMorphism trusted(FBModule source, FBModule target, std::vector<Matrix> data) {
    InducedMorphism out;
    out.source_ = std::move(source);
    out.target_ = std::move(target);
    out.data_ = std::move(data);
    out.normalize();
    return out;
  }

 private:
  // one datum per stored source part; missing data are zero
  void normalize() {
    std::size_t parts = source_.stored();
    if (data_.size() > parts) {
      for (std::size_t m = parts; m < data_.size(); ++m)
        if (data_[m].cols() != 0) throw std::invalid_argument("adjunction datum for a zero source part");
      data_.resize(parts);
    }
    for (std::size_t m = 0; m < parts; ++m) {
      std::size_t rows = induced_dim(target_, m), cols = source_.dim(m);
      if (m >= data_.size()) data_.emplace_back(field(), rows, cols);
      else if (data_[m].rows() != rows || data_[m].cols() != cols)
        throw std::invalid_argument("adjunction datum c_" + std::to_string(m) + " has shape " +
                                    std::to_string(data_[m].rows()) + "x" + std::to_string(data_[m].cols()) +
                                    ", expected " + std::to_string(rows) + "x" + std::to_string(cols));
    }
  }

  FBModule source_;
  FBModule target_;
  std::vector<Matrix> data_;
};

inline InducedMorphism adjoint_morphism(const FBModule& v, const FBModule& w, std::vector<Matrix> c) {
  return InducedMorphism(v, w, std::move(c));
}

/// Basis of Hom(II(V), II(W)) = (+)_m Hom_{S_m}(V_m, II(W)_m), m ascending.
inline std::vector<InducedMorphism> hom_space_basis(const FBModule& v, const FBModule& w) {
  std::vector<InducedMorphism> out;
  for (std::size_t m = 0; m < v.stored(); ++m) {
    if (v.dim(m) == 0) continue;
    SnRep tgt = induced_level_rep(w, m);
    for (auto& x : equivariant_hom_basis(v.stored_part(m), tgt)) {
      std::vector<Matrix> data;
      for (std::size_t q = 0; q < v.stored(); ++q)
        data.emplace_back(v.field(), induced_dim(w, q), v.dim(q));
      data[m] = std::move(x);
      out.push_back(InducedMorphism::trusted(v, w, std::move(data)));
    }
  }
  return out;
}

}  // namespace fihom
