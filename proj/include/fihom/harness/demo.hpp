#pragma once

// The matrix FI-module n -> M_n(F_p) and the stable-range arithmetic.
//
// Over F_2 the matrix module is H_1(GL(Z/4, (2)); F_2): the level-n
// congruence subgroup {I + 2A} is elementary abelian and A mod 2 is an
// isomorphism onto (M_n(F_2), +), compatible with conjugation by
// permutation matrices and with block inclusion. congruence_identification
// checks this by enumerating the group for small n.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fihom/colimit.hpp"
#include "fihom/fi_homology.hpp"
#include "fihom/fi_module.hpp"

namespace fihom::harness {

/// Level n: n x n matrices, basis E_ij at index i n + j; S_n permutes rows
/// and columns simultaneously; the transition adds a zero last row and column.
inline FIMatrixModule gl_example(std::size_t window, std::uint32_t p = 2) {
  PrimeField f(p);
  std::vector<SnRep> actions;
  std::vector<Matrix> phi;
  for (std::size_t n = 0; n <= window; ++n) {
    std::vector<Matrix> gens;
    for (std::size_t a = 0; a + 1 < n; ++a) {
      Matrix g(f, n * n, n * n);
      auto s = [&](std::size_t i) { return i == a ? a + 1 : (i == a + 1 ? a : i); };
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g(s(i) * n + s(j), i * n + j) = 1;
      gens.push_back(std::move(g));
    }
    actions.emplace_back(f, n, n * n, std::move(gens));
    if (n < window) {
      Matrix t(f, (n + 1) * (n + 1), n * n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) t(i * (n + 1) + j, i * n + j) = 1;
      phi.push_back(std::move(t));
    }
  }
  return FIMatrixModule(f, std::move(actions), std::move(phi));
}

/// Result of enumerating GL_n(Z/4, (2)) = ker(GL_n(Z/4) -> GL_n(Z/2)).
struct CongruenceCheck {
  std::size_t n = 0;
  std::size_t order = 0;
  bool abelian = false;
  bool exponent_two = false;
  bool reduction_is_isomorphism = false;  // I + 2A -> A mod 2
  bool ok() const { return order == (std::size_t{1} << (n * n)) && abelian && exponent_two && reduction_is_isomorphism; }
};

inline CongruenceCheck congruence_identification(std::size_t n) {
  using Mat = std::vector<int>;
  const std::size_t sz = n * n;
  auto mul = [&](const Mat& a, const Mat& b) {
    Mat c(sz, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        int s = 0;
        for (std::size_t k = 0; k < n; ++k) s += a[i * n + k] * b[k * n + j];
        c[i * n + j] = s % 4;
      }
    return c;
  };
  Mat id(sz, 0);
  for (std::size_t i = 0; i < n; ++i) id[i * n + i] = 1;
  // all matrices over Z/4 that reduce to I mod 2 and are invertible mod 4
  std::vector<Mat> group;
  std::size_t total = 1;
  for (std::size_t i = 0; i < sz; ++i) total *= 4;
  for (std::size_t code = 0; code < total; ++code) {
    Mat a(sz);
    std::size_t c = code;
    for (std::size_t i = 0; i < sz; ++i, c /= 4) a[i] = static_cast<int>(c % 4);
    bool congruent = true;
    for (std::size_t i = 0; i < sz; ++i) congruent = congruent && (a[i] - id[i]) % 2 == 0;
    if (!congruent) continue;
    bool invertible = false;
    for (std::size_t code2 = 0; code2 < total && !invertible; ++code2) {
      Mat b(sz);
      std::size_t c2 = code2;
      for (std::size_t i = 0; i < sz; ++i, c2 /= 4) b[i] = static_cast<int>(c2 % 4);
      invertible = mul(a, b) == id;
    }
    if (invertible) group.push_back(a);
  }
  CongruenceCheck r;
  r.n = n;
  r.order = group.size();
  r.abelian = true;
  r.exponent_two = true;
  for (const auto& a : group) {
    r.exponent_two = r.exponent_two && mul(a, a) == id;
    for (const auto& b : group) r.abelian = r.abelian && mul(a, b) == mul(b, a);
  }
  // reduction (I + 2A) -> A mod 2 is a bijective homomorphism to (M_n(F_2), +)
  auto red = [&](const Mat& a) {
    Mat x(sz);
    for (std::size_t i = 0; i < sz; ++i) x[i] = ((a[i] - id[i] + 4) % 4) / 2;
    return x;
  };
  std::set<Mat> images;
  bool hom = true;
  for (const auto& a : group) {
    images.insert(red(a));
    for (const auto& b : group) {
      Mat s = red(a), t = red(b), u = red(mul(a, b));
      for (std::size_t i = 0; i < sz; ++i) hom = hom && u[i] == (s[i] + t[i]) % 2;
    }
  }
  r.reduction_is_isomorphism = hom && images.size() == group.size() && images.size() == (std::size_t{1} << sz);
  return r;
}

// ---------------------------------------------------------------------------
// Stable-range arithmetic

/// Hyperhomology degree bound t-tilde_k <= 2k + d for the congruence complex.
inline int bass_bound(int k, int d) { return 2 * k + d; }

/// Presentation bounds for H_k: generation degree 4k + 2d + 1, relation degree 4k + 2d + 6.
inline int generation_bound(int k, int d) { return 4 * k + 2 * d + 1; }
inline int relation_bound(int k, int d) { return 4 * k + 2 * d + 6; }

/// The stable range omega(k) = 4k + 2d + 6.
inline int bound_omega(int k, int d) { return 4 * k + 2 * d + 6; }

/// The same constants composed from the hyperhomology bound through
/// t_0(H_k) <= 2 t-tilde_k + 1 and t_1(H_k) <= 2 max(t-tilde_k, t-tilde_{k+1}) + 2.
inline int composed_generation_bound(int k, int d) { return 2 * bass_bound(k, d) + 1; }
inline int composed_relation_bound(int k, int d) {
  return 2 * std::max(bass_bound(k, d), bass_bound(k + 1, d)) + 2;
}

struct OmegaRow {
  int k, d, hyper, t0, t1, omega;
};

inline std::vector<OmegaRow> omega_table(int kmax, int dmax) {
  std::vector<OmegaRow> rows;
  for (int k = 0; k <= kmax; ++k)
    for (int d = 0; d <= dmax; ++d)
      rows.push_back({k, d, bass_bound(k, d), generation_bound(k, d), relation_bound(k, d), bound_omega(k, d)});
  return rows;
}

/// First (k, d) in range where the composed constants disagree with the
/// stated ones.
inline std::optional<std::string> omega_identity_violation(int kmax, int dmax) {
  for (int k = 0; k <= kmax; ++k)
    for (int d = 0; d <= dmax; ++d) {
      if (composed_generation_bound(k, d) > generation_bound(k, d))
        return "generation bound mismatch at k=" + std::to_string(k) + ", d=" + std::to_string(d);
      if (composed_relation_bound(k, d) != relation_bound(k, d) || relation_bound(k, d) != bound_omega(k, d))
        return "omega mismatch at k=" + std::to_string(k) + ", d=" + std::to_string(d);
    }
  return std::nullopt;
}

struct CongruenceDemo {
  std::size_t window = 0;
  std::uint32_t p = 2;
  DegreeReport degrees;
  int presentation_degree = -1;
  std::vector<std::size_t> h0_dims;
  std::vector<ColimitComparison> colimits;  // at N = presentation degree, n = 0..window
  std::vector<CongruenceCheck> identification;
  int k = 1, d = 0;
  bool within_bounds() const {
    return degrees.t(0) <= generation_bound(k, d) && degrees.t(1) <= relation_bound(k, d) &&
           presentation_degree <= bound_omega(k, d);
  }
  bool colimits_ok() const {
    return std::all_of(colimits.begin(), colimits.end(), [](const auto& c) { return c.is_isomorphism; });
  }
};

/// t_0, t_1, presentation degree and colimit checks of the matrix module,
/// against the k = 1, d = 0 bounds.
inline CongruenceDemo demo_congruence(std::size_t window = 10, std::uint32_t p = 2) {
  CongruenceDemo r;
  r.window = window;
  r.p = p;
  FIMatrixModule m = gl_example(window, p);
  if (auto v = fi_check(m)) throw std::logic_error("gl example fails the FI axioms: " + *v);
  r.degrees = degrees(m, 1);
  r.presentation_degree = presentation_degree(r.degrees);
  r.h0_dims = r.degrees.level_dims[0];
  for (std::size_t n = 0; n <= window; ++n) r.colimits.push_back(colimit_compare(m, n, r.presentation_degree));
  if (p == 2)
    for (std::size_t n = 1; n <= 2; ++n) r.identification.push_back(congruence_identification(n));
  return r;
}

}  // namespace fihom::harness
