#pragma once

// FI-homology of truncated FI-modules: H_0 by lower-degree spans, covers by
// induced modules, the syzygy recursion for t_i, and the Koszul complex as a
// second, independent route to the same numbers.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fihom/fi_module.hpp"
#include "fihom/induced.hpp"
#include "fihom/linalg.hpp"
#include "fihom/snrep.hpp"

namespace fihom {

/// Degree of a graded dimension vector: largest n with d[n] > 0, or -1.
inline int degree_of(const std::vector<std::size_t>& dims) {
  for (std::size_t n = dims.size(); n-- > 0;)
    if (dims[n] > 0) return static_cast<int>(n);
  return -1;
}

struct H0Level {
  Subspace lower;     // (M_{<n})_n, spanned by images of lower levels
  Matrix quotient;    // quotient_map(lower)
  SnRep action;       // induced S_n-action on H_0(M)_n
  std::size_t dim() const { return action.dim(); }
};

/// Span of sigma . phi_{n-1}(M_{n-1}) over the coset representatives
/// sigma = (i i+1 ... n) of S_{n-1} in S_n; im(phi_{n-1}) is already
/// S_{n-1}-stable, so n representatives give all of (M_{<n})_n.
inline Subspace lower_span(const FIMatrixModule& m, std::size_t n) {
  if (n == 0 || m.dim(n) == 0 || m.dim(n - 1) == 0) return Subspace(m.field(), m.dim(n));
  const Matrix& img = m.phi(n - 1);
  RowEchelon ech(m.field(), m.dim(n));
  for (std::size_t i = 0; i < n && !ech.full(); ++i) {
    Matrix moved = m.action(n).apply(Perm::cycle(n, i, n - 1), img);
    Matrix rows = moved.transpose();
    for (std::size_t r = 0; r < rows.rows() && !ech.full(); ++r) ech.insert(rows.row(r));
  }
  return Subspace::from_echelon(ech);
}

inline H0Level h0_level(const FIMatrixModule& m, std::size_t n) {
  Subspace u = lower_span(m, n);
  Matrix q = quotient_map(u);
  auto section = complement_coordinates(u);
  std::vector<Matrix> gens;
  for (const auto& g : m.action(n).gens()) gens.push_back((q * g).select_columns(section));
  SnRep act(m.field(), n, q.rows(), std::move(gens));
  return H0Level{std::move(u), std::move(q), std::move(act)};
}

/// H_0^FI(M) level by level; throws if M violates the FI axioms.
inline std::vector<H0Level> h0(const FIMatrixModule& m) {
  if (auto v = fi_check(m)) throw std::invalid_argument("h0: not an FI-module: " + *v);
  std::vector<H0Level> out;
  for (std::size_t n = 0; n <= m.window(); ++n) out.push_back(h0_level(m, n));
  return out;
}

inline std::vector<std::size_t> h0_dims(const FIMatrixModule& m) {
  std::vector<std::size_t> d;
  for (std::size_t n = 0; n <= m.window(); ++n) d.push_back(m.dim(n) - lower_span(m, n).dim());
  return d;
}

inline int t0(const FIMatrixModule& m) { return degree_of(h0_dims(m)); }

// ---------------------------------------------------------------------------
// Covers

enum class CoverKind {
  Free,     // (+)_n M(n)^{b_n}, M(n) free on the regular representation
  Span,     // II(W), W_n = S_n-span of lifts of an H_0 basis
  Minimal,  // II(H_0(M)) via an equivariant splitting where one exists, else Span
};

inline const char* to_string(CoverKind k) {
  switch (k) {
    case CoverKind::Free: return "free";
    case CoverKind::Span: return "span";
    case CoverKind::Minimal: return "minimal";
  }
  return "?";
}

/// A surjection II(W) -> M given by adjunction data c_n : W_n -> M_n, its
/// level matrices, and its kernel.
struct Cover {
  CoverKind kind = CoverKind::Minimal;
  std::vector<std::size_t> multiplicities;  // b_n = dim H_0(M)_n
  FBModule generators;                      // W
  std::vector<Matrix> data;                 // c_n, dim M_n x dim W_n
  std::vector<Matrix> level_maps;           // G_n : II(W)_n -> M_n
  std::vector<Subspace> kernel_levels;      // ker G_n inside II(W)_n
  FIMatrixModule kernel;                    // K
};

namespace detail {

// Lifts of an H_0 basis: the canonical section picks the non-pivot unit vectors.
inline Matrix h0_lifts(const H0Level& lvl, std::size_t dim) {
  auto section = complement_coordinates(lvl.lower);
  Matrix x(lvl.quotient.field(), dim, section.size());
  for (std::size_t a = 0; a < section.size(); ++a) x(section[a], a) = 1;
  return x;
}

// Smallest S_n-stable subspace containing the columns of x.
inline Subspace orbit_span(const SnRep& rep, const Matrix& x) {
  RowEchelon ech(rep.field(), rep.dim());
  std::vector<Vector> frontier;
  for (std::size_t c = 0; c < x.cols(); ++c) {
    Vector v = x.column(c);
    if (ech.insert(v)) frontier.push_back(std::move(v));
  }
  while (!frontier.empty() && !ech.full()) {
    std::vector<Vector> next;
    for (const auto& v : frontier)
      for (const auto& g : rep.gens()) {
        Vector w = g * v;
        if (ech.insert(w)) next.push_back(std::move(w));
      }
    frontier = std::move(next);
  }
  return Subspace::from_echelon(ech);
}

// Restriction of a representation to a stable subspace, in its coordinates.
inline SnRep restrict_rep(const SnRep& rep, const Subspace& u) {
  Matrix basis = u.basis();
  std::vector<Matrix> gens;
  for (const auto& g : rep.gens()) gens.push_back(u.coordinates_of_columns(g * basis));
  return SnRep(rep.field(), rep.n(), u.dim(), std::move(gens));
}

// Equivariant X : H_0(M)_n -> M_n with Q X = 1, if one exists.
inline std::optional<Matrix> equivariant_splitting(const SnRep& level, const H0Level& h) {
  std::size_t b = h.dim();
  const auto& f = level.field();
  if (b == 0) return Matrix(f, level.dim(), 0);
  auto basis = equivariant_hom_basis(h.action, level);
  if (basis.empty()) return std::nullopt;
  Matrix system(f, b * b, basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    Matrix qx = h.quotient * basis[k];
    for (std::size_t r = 0; r < b; ++r)
      for (std::size_t c = 0; c < b; ++c) system(r * b + c, k) = qx(r, c);
  }
  Vector rhs(b * b, 0);
  for (std::size_t r = 0; r < b; ++r) rhs[r * b + r] = 1;
  auto coeffs = solve(system, rhs);
  if (!coeffs) return std::nullopt;
  Matrix x(f, level.dim(), b);
  for (std::size_t k = 0; k < basis.size(); ++k)
    if ((*coeffs)[k]) x = x + basis[k].scaled((*coeffs)[k]);
  return x;
}

}  // namespace detail

/// Level matrix G_n : II(W)_n -> M_n of the map with adjunction data c.
/// Column (S, j) is M(beta_S) c_m e_j. Subsets are visited in lexicographic
/// order; a non-initial S is s_i(S') for the smallest i with i not in S,
/// i+1 in S, where S' < S replaces i+1 by i, so its column is s_i applied to
/// an earlier column.
inline Matrix cover_level_map(const FIMatrixModule& m, const FBModule& w, const std::vector<Matrix>& c,
                              std::size_t n) {
  InducedLevel lvl(w, n);
  Matrix out(m.field(), m.dim(n), lvl.dim());
  for (const auto& b : lvl.blocks()) {
    std::vector<Matrix> cols(b.subsets.size());
    for (std::size_t k = 0; k < b.subsets.size(); ++k) {
      const Subset& s = b.subsets[k];
      std::size_t i = 0;
      bool initial = true;
      for (std::size_t q = 0; q < s.size(); ++q)
        if (s[q] != q) {
          initial = false;
          i = s[q] - 1;  // s[q] - 1 is not in S and s[q] is
          break;
        }
      if (initial) {
        cols[k] = standard_inclusion_map(m, b.m, n) * c[b.m];
      } else {
        Subset prev = s;
        *std::find(prev.begin(), prev.end(), i + 1) = i;
        cols[k] = m.action(n).gen(i) * cols[subset_rank(n, prev)];
      }
      for (std::size_t r = 0; r < m.dim(n); ++r)
        for (std::size_t j = 0; j < b.rep_dim; ++j) out(r, b.offset + k * b.rep_dim + j) = cols[k](r, j);
    }
  }
  return out;
}

/// A cover of M by an induced module and its kernel. Generators are lifts
/// of an H_0 basis (first preimage under the quotient map).
inline Cover free_cover(const FIMatrixModule& m, CoverKind kind = CoverKind::Minimal,
                        const std::vector<H0Level>* precomputed_h0 = nullptr) {
  const auto& f = m.field();
  std::vector<H0Level> local;
  if (!precomputed_h0) {
    for (std::size_t n = 0; n <= m.window(); ++n) local.push_back(h0_level(m, n));
    precomputed_h0 = &local;
  }
  const auto& h = *precomputed_h0;

  Cover cov;
  cov.kind = kind;
  cov.generators = FBModule(f);
  for (std::size_t n = 0; n <= m.window(); ++n) {
    std::size_t b = h[n].dim();
    cov.multiplicities.push_back(b);
    if (b == 0) {
      cov.generators.set_part(n, SnRep::zero(f, n));
      cov.data.emplace_back(f, m.dim(n), 0);
      continue;
    }
    Matrix lifts = detail::h0_lifts(h[n], m.dim(n));
    CoverKind use = kind;
    if (kind == CoverKind::Minimal) {
      if (auto x = detail::equivariant_splitting(m.action(n), h[n])) {
        cov.generators.set_part(n, h[n].action);
        cov.data.push_back(std::move(*x));
        continue;
      }
      use = CoverKind::Span;
    }
    if (use == CoverKind::Span) {
      Subspace span = detail::orbit_span(m.action(n), lifts);
      cov.generators.set_part(n, detail::restrict_rep(m.action(n), span));
      cov.data.push_back(span.basis());
    } else {
      // copies of the regular representation; basis word w is e_{w^{-1}}
      SnRep reg = regular_rep(f, n);
      auto words = ordered_set_partitions(n, Partition(n, 1));
      SnRep sum = SnRep::zero(f, n);
      for (std::size_t r = 0; r < b; ++r) sum = sum.direct_sum(reg);
      Matrix data(f, m.dim(n), b * words.size());
      for (std::size_t r = 0; r < b; ++r) {
        Matrix x(f, m.dim(n), 1);
        for (std::size_t i = 0; i < m.dim(n); ++i) x(i, 0) = lifts(i, r);
        for (std::size_t k = 0; k < words.size(); ++k) {
          Perm pi = Perm(words[k]).inverse();
          Matrix y = m.action(n).apply(pi, x);
          for (std::size_t i = 0; i < m.dim(n); ++i) data(i, r * words.size() + k) = y(i, 0);
        }
      }
      cov.generators.set_part(n, std::move(sum));
      cov.data.push_back(std::move(data));
    }
  }

  FIMatrixModule induced = materialize(cov.generators, m.window());
  for (std::size_t n = 0; n <= m.window(); ++n) {
    Matrix g = cover_level_map(m, cov.generators, cov.data, n);
    if (rank(g) != m.dim(n))
      throw std::logic_error("free_cover: cover is not surjective at level " + std::to_string(n));
    cov.kernel_levels.push_back(kernel_basis(g));
    cov.level_maps.push_back(std::move(g));
  }
  cov.kernel = submodule(induced, cov.kernel_levels);
  return cov;
}

// ---------------------------------------------------------------------------
// t_i

/// Degrees t_i(M) = deg H_i^FI(M) computed inside the window.
///
/// H_i(M)_n is exact for every n <= window (FI-homology at level n only
/// depends on levels <= n). A value is flagged exact when H_i vanishes at
/// the top level of the window; otherwise it is INCONCLUSIVE: the true
/// degree may lie beyond the window.
struct DegreeReport {
  std::size_t window = 0;
  std::vector<int> values;
  std::vector<bool> exact;
  std::vector<std::vector<std::size_t>> level_dims;  // dim H_i(M)_n

  int t(std::size_t i) const { return values.at(i); }
  bool all_exact() const { return std::all_of(exact.begin(), exact.end(), [](bool b) { return b; }); }
};

inline DegreeReport make_report(std::size_t window, std::vector<std::vector<std::size_t>> dims) {
  DegreeReport r;
  r.window = window;
  for (auto& d : dims) {
    r.values.push_back(degree_of(d));
    r.exact.push_back(d.empty() || d.back() == 0);
  }
  r.level_dims = std::move(dims);
  return r;
}

/// t_0 .. t_{max_i} by the syzygy recursion: with 0 -> K -> F -> M -> 0 a
/// cover by an induced (hence FI-homology acyclic) module,
///   H_1(M) = ker(H_0(K) -> H_0(F)),  H_i(M) = H_{i-1}(K) for i >= 2.
/// H_0(F)_n is the top inner-degree block W_n, so
///   dim H_1(M)_n = dim H_0(K)_n - rank(K_n -> W_n).
inline DegreeReport degrees(const FIMatrixModule& m, std::size_t max_i, CoverKind kind = CoverKind::Minimal) {
  if (auto v = fi_check(m)) throw std::invalid_argument("degrees: not an FI-module: " + *v);
  const std::size_t window = m.window();
  std::vector<std::vector<std::size_t>> dims;
  FIMatrixModule cur = m;
  std::vector<H0Level> h;
  for (std::size_t n = 0; n <= window; ++n) h.push_back(h0_level(cur, n));
  {
    std::vector<std::size_t> d;
    for (const auto& lvl : h) d.push_back(lvl.dim());
    dims.push_back(std::move(d));
  }
  for (std::size_t i = 1; i <= max_i; ++i) {
    Cover cov = free_cover(cur, kind, &h);
    std::vector<H0Level> hk;
    for (std::size_t n = 0; n <= window; ++n) hk.push_back(h0_level(cov.kernel, n));
    std::vector<std::size_t> d;
    for (std::size_t n = 0; n <= window; ++n) {
      const Subspace& k = cov.kernel_levels[n];
      InducedLevel lvl(cov.generators, n);
      std::vector<std::size_t> top;
      if (const InducedBlock* b = lvl.block(n))
        for (std::size_t j = 0; j < b->rep_dim; ++j) top.push_back(b->offset + j);
      std::size_t proj_rank = top.empty() || k.dim() == 0 ? 0 : rank(k.basis_rows().select_columns(top));
      d.push_back(hk[n].dim() - proj_rank);
    }
    dims.push_back(std::move(d));
    cur = std::move(cov.kernel);
    h = std::move(hk);
  }
  return make_report(window, std::move(dims));
}

inline int ti(const FIMatrixModule& m, std::size_t i, CoverKind kind = CoverKind::Minimal) {
  return degrees(m, i, kind).values.at(i);
}

/// max(t_0, t_1).
inline int presentation_degree(const DegreeReport& r) { return std::max(r.values.at(0), r.values.at(1)); }
inline int presentation_degree(const FIMatrixModule& m) { return presentation_degree(degrees(m, 1)); }

// ---------------------------------------------------------------------------
// Koszul complex

/// The Koszul complex computing FI-homology at level n: degree i is
/// (+)_{E subset [n], |E| = i} M_{[n] - E}, with
///   d(x (x) e_1 ^ ... ^ e_i) = sum_k (-1)^k M(incl)(x) (x) (E - e_k).
/// For an induced module it is the augmented chain complex of a simplex
/// for every generator, hence acyclic in positive degrees; it is exact in
/// M, so its homology is H_i^FI(M)_n over any field.
class KoszulComplex {
 public:
  KoszulComplex(const FIMatrixModule& m, std::size_t n) : m_(m), n_(n) {
    if (n > m.window()) throw std::invalid_argument("Koszul complex level beyond window");
    // inclusion U -> U + {e} lands at position q: act(cycle q..u) phi_u
    for (std::size_t u = 0; u < n; ++u) {
      std::vector<Matrix> maps;
      for (std::size_t q = 0; q <= u; ++q) maps.push_back(m.action(u + 1).apply(Perm::cycle(u + 1, q, u), m.phi(u)));
      insert_.push_back(std::move(maps));
    }
  }

  std::size_t dim(std::size_t i) const { return i > n_ ? 0 : binomial(n_, i) * m_.dim(n_ - i); }

  /// d_i : C_i -> C_{i-1}.
  Matrix differential(std::size_t i) const {
    const auto& f = m_.field();
    if (i == 0 || i > n_) return Matrix(f, dim(i ? i - 1 : 0), dim(i));
    std::size_t u = n_ - i, du = m_.dim(u), dup = m_.dim(u + 1);
    Matrix d(f, dim(i - 1), dim(i));
    auto removed = subsets_of_size(n_, i);
    for (std::size_t e = 0; e < removed.size(); ++e) {
      const Subset& set = removed[e];
      for (std::size_t k = 0; k < i; ++k) {
        Subset smaller = set;
        smaller.erase(smaller.begin() + static_cast<std::ptrdiff_t>(k));
        std::size_t row0 = subset_rank(n_, smaller) * dup;
        const Matrix& ins = insert_[u][set[k] - k];
        bool negate = k % 2 == 1;
        for (std::size_t r = 0; r < dup; ++r)
          for (std::size_t c = 0; c < du; ++c) {
            Scalar v = ins(r, c);
            if (v) d(row0 + r, e * du + c) = negate ? f.neg(v) : v;
          }
      }
    }
    return d;
  }

  /// dim H_i = dim C_i - rank d_i - rank d_{i+1}.
  std::size_t homology_dim(std::size_t i) const {
    if (dim(i) == 0) return 0;
    std::size_t out = dim(i);
    if (i > 0) out -= rank(differential(i));
    if (i + 1 <= n_) out -= rank(differential(i + 1));
    return out;
  }

 private:
  const FIMatrixModule& m_;
  std::size_t n_;
  std::vector<std::vector<Matrix>> insert_;
};

/// t_0 .. t_{max_i} through the Koszul complex.
inline DegreeReport koszul_degrees(const FIMatrixModule& m, std::size_t max_i) {
  std::vector<std::vector<std::size_t>> dims(max_i + 1, std::vector<std::size_t>(m.window() + 1, 0));
  for (std::size_t n = 0; n <= m.window(); ++n) {
    KoszulComplex k(m, n);
    for (std::size_t i = 0; i <= max_i; ++i) dims[i][n] = k.homology_dim(i);
  }
  return make_report(m.window(), std::move(dims));
}

}  // namespace fihom
