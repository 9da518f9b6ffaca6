#pragma once

// The colimit of M over the poset of subsets S of [n] with |S| <= N,
// compared with M_n.

#include <algorithm>
#include <cstddef>
#include <vector>

#include "fihom/fi_module.hpp"
#include "fihom/linalg.hpp"
#include "fihom/perm.hpp"

namespace fihom {

struct ColimitComparison {
  std::size_t n = 0, bound = 0;
  std::size_t colim_dim = 0;
  std::size_t level_dim = 0;
  Matrix map;  // colim -> M_n, in the coordinates of the canonical section
  bool is_isomorphism = false;
};

/// colim_{S subset [n], |S| <= N} M_S: the direct sum of the M_S modulo
/// iota_T(M(S -> T) x) - iota_S(x) over covering pairs S < T (|T| = |S| + 1),
/// which generate all relations of the poset.
inline ColimitComparison colimit_compare(const FIMatrixModule& m, std::size_t n, int bound) {
  if (n > m.window()) throw std::invalid_argument("colimit_compare: level beyond window");
  const auto& f = m.field();
  ColimitComparison out;
  out.n = n;
  out.bound = bound < 0 ? 0 : static_cast<std::size_t>(bound);
  out.level_dim = m.dim(n);
  std::size_t top = bound < 0 ? 0 : std::min<std::size_t>(n, static_cast<std::size_t>(bound));

  // block offsets of the direct sum, by size then lexicographic subset
  std::vector<std::vector<Subset>> sets;
  std::vector<std::size_t> size_offset;
  std::size_t total = 0;
  if (bound >= 0)
    for (std::size_t s = 0; s <= top; ++s) {
      sets.push_back(subsets_of_size(n, s));
      size_offset.push_back(total);
      total += sets.back().size() * m.dim(s);
    }

  Storage storage = total > 256 ? Storage::Sparse : Storage::Dense;
  RowEchelon rel(f, total, storage);
  Vector row(total);
  for (std::size_t s = 0; s + 1 <= top && s + 1 < sets.size(); ++s) {
    std::size_t ds = m.dim(s), dt = m.dim(s + 1);
    if (ds == 0) continue;
    for (std::size_t a = 0; a < sets[s].size(); ++a) {
      const Subset& small = sets[s][a];
      for (std::size_t extra = 0; extra < n; ++extra) {
        if (std::binary_search(small.begin(), small.end(), extra)) continue;
        Subset big = small;
        big.insert(std::lower_bound(big.begin(), big.end(), extra), extra);
        Matrix t = transition_map(m, small, big);
        std::size_t src = size_offset[s] + a * ds;
        std::size_t dst = size_offset[s + 1] + subset_rank(n, big) * dt;
        for (std::size_t j = 0; j < ds; ++j) {
          std::fill(row.begin(), row.end(), 0);
          for (std::size_t r = 0; r < dt; ++r) row[dst + r] = t(r, j);
          row[src + j] = f.sub(row[src + j], 1);
          rel.insert(row);
        }
      }
    }
  }
  Subspace relations = Subspace::from_echelon(rel);
  out.colim_dim = total - relations.dim();

  // the canonical map sends iota_S(x) to M(S -> [n]) x
  Subset all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  Matrix g(f, m.dim(n), total);
  for (std::size_t s = 0; s < sets.size(); ++s)
    for (std::size_t a = 0; a < sets[s].size(); ++a) {
      if (m.dim(s) == 0) continue;
      Matrix t = transition_map(m, sets[s][a], all);
      std::size_t off = size_offset[s] + a * m.dim(s);
      for (std::size_t r = 0; r < t.rows(); ++r)
        for (std::size_t j = 0; j < t.cols(); ++j) g(r, off + j) = t(r, j);
    }
  out.map = g.select_columns(complement_coordinates(relations));
  out.is_isomorphism = out.colim_dim == out.level_dim && rank(out.map) == out.level_dim;
  return out;
}

}  // namespace fihom
