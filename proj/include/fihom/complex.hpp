#pragma once

// Finite chain complexes of induced FI-modules
//   P_L -> ... -> P_1 -> P_0,  P_k = II(V_k),
// their diagonal-block complexes V_*, homology as truncated FI-modules, and
// the top-block elimination procedures that push cycles and boundary
// witnesses down to low inner degrees.

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fihom/fi_homology.hpp"
#include "fihom/fi_module.hpp"
#include "fihom/induced.hpp"
#include "fihom/linalg.hpp"

namespace fihom {

class ChainComplexFI {
 public:
  ChainComplexFI() = default;

  /// modules[k] = V_k for k = 0..L; diffs[k-1] = d_k : P_k -> P_{k-1}.
  ChainComplexFI(std::vector<FBModule> modules, std::vector<InducedMorphism> diffs, std::size_t window)
      : modules_(std::move(modules)), diffs_(std::move(diffs)), window_(window),
        cache_(std::make_shared<Cache>()) {
    if (modules_.empty()) throw std::invalid_argument("chain complex needs P_0");
    if (diffs_.size() + 1 != modules_.size())
      throw std::invalid_argument("chain complex of length L needs L differentials");
    for (std::size_t k = 1; k < modules_.size(); ++k) {
      const auto& d = diffs_[k - 1];
      if (!(d.source() == modules_[k]) || !(d.target() == modules_[k - 1]))
        throw std::invalid_argument("d_" + std::to_string(k) + " does not map P_" + std::to_string(k) + " to P_" +
                                    std::to_string(k - 1));
    }
  }

  const PrimeField& field() const { return modules_.front().field(); }
  std::size_t length() const { return modules_.size() - 1; }
  std::size_t window() const { return window_; }
  const FBModule& generators(std::size_t k) const { return modules_.at(k); }
  const std::vector<FBModule>& modules() const { return modules_; }
  const std::vector<InducedMorphism>& differentials() const { return diffs_; }

  /// d_k for 1 <= k <= L.
  const InducedMorphism& d(std::size_t k) const {
    if (k == 0 || k > length()) throw std::out_of_range("differential index out of range");
    return diffs_[k - 1];
  }

  /// dim P_k at level n (0 outside 0..L).
  std::size_t dim(std::size_t k, std::size_t n) const { return k > length() ? 0 : induced_dim(modules_[k], n); }

  /// Level-n matrix of d_k : P_k -> P_{k-1}; the zero map for k = 0 and
  /// k = L + 1. Memoized per (k, n).
  const Matrix& eval(std::size_t k, std::size_t n) const {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto key = std::make_pair(k, n);
    auto it = cache_->levels.find(key);
    if (it != cache_->levels.end()) return *it->second;
    Matrix m = (k == 0 || k > length())
                   ? Matrix(field(), k == 0 ? 0 : dim(k - 1, n), k == 0 ? dim(0, n) : 0)
                   : diffs_[k - 1].eval(n);
    auto ptr = std::make_shared<const Matrix>(std::move(m));
    cache_->levels.emplace(key, ptr);
    return *ptr;
  }

  /// Same complex with d_k replaced (cache not shared).
  ChainComplexFI with_differential(std::size_t k, InducedMorphism d) const {
    auto diffs = diffs_;
    diffs.at(k - 1) = std::move(d);
    ChainComplexFI out;
    out.modules_ = modules_;
    out.diffs_ = std::move(diffs);
    out.window_ = window_;
    out.cache_ = std::make_shared<Cache>();
    return out;
  }

 private:
  struct Cache {
    std::mutex mutex;
    std::map<std::pair<std::size_t, std::size_t>, std::shared_ptr<const Matrix>> levels;
  };

  std::vector<FBModule> modules_;
  std::vector<InducedMorphism> diffs_;
  std::size_t window_ = 0;
  std::shared_ptr<Cache> cache_;
};

/// d_{k-1} d_k = 0 at every level of the window; first violation otherwise.
inline std::optional<std::string> check_complex(const ChainComplexFI& c) {
  for (std::size_t k = 2; k <= c.length(); ++k)
    for (std::size_t n = 0; n <= c.window(); ++n) {
      const Matrix& a = c.eval(k - 1, n);
      const Matrix& b = c.eval(k, n);
      if (a.cols() == 0 || b.cols() == 0 || a.rows() == 0) continue;
      if (!(a * b).is_zero())
        return "d_" + std::to_string(k - 1) + " d_" + std::to_string(k) + " != 0 at level " + std::to_string(n);
    }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// The diagonal-block complex V_*

/// The complex V_* = H_0^FI(P_*): the differential at inner degree n is the
/// block d^{n,n}, i.e. the rows of c_n lying in the top block II(W_n)_n = W_n.
class VComplex {
 public:
  VComplex() = default;
  explicit VComplex(const ChainComplexFI& c) : field_(c.field()), modules_(c.modules()) {
    dbar_.resize(modules_.size());
    for (std::size_t k = 1; k < modules_.size(); ++k) {
      const auto& d = c.d(k);
      std::size_t top = std::max(modules_[k].stored(), modules_[k - 1].stored());
      for (std::size_t n = 0; n < top; ++n) {
        std::size_t rows = modules_[k - 1].dim(n), cols = modules_[k].dim(n);
        Matrix block(field_, rows, cols);
        if (rows && cols) {
          InducedLevel lvl(modules_[k - 1], n);
          const InducedBlock* b = lvl.block(n);
          const Matrix& datum = d.datum(n);
          for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t j = 0; j < cols; ++j) block(r, j) = datum(b->offset + r, j);
        }
        dbar_[k].push_back(std::move(block));
      }
    }
  }

  const PrimeField& field() const { return field_; }
  std::size_t length() const { return modules_.size() - 1; }
  const FBModule& part(std::size_t k) const { return modules_.at(k); }

  /// d-bar_k at inner degree n : (V_k)_n -> (V_{k-1})_n, zero outside 1..L.
  Matrix dbar(std::size_t k, std::size_t n) const {
    if (k == 0 || k > length()) {
      std::size_t rows = k == 0 ? 0 : (k - 1 <= length() ? modules_[k - 1].dim(n) : 0);
      std::size_t cols = k <= length() ? modules_[k].dim(n) : 0;
      return Matrix(field_, rows, cols);
    }
    if (n < dbar_[k].size()) return dbar_[k][n];
    return Matrix(field_, modules_[k - 1].dim(n), modules_[k].dim(n));
  }

  /// dim H_k(V_*)_n.
  std::size_t homology_dim(std::size_t k, std::size_t n) const {
    std::size_t d = k <= length() ? modules_[k].dim(n) : 0;
    if (d == 0) return 0;
    return d - rank(dbar(k, n)) - rank(dbar(k + 1, n));
  }

  /// First inner degree at which d-bar d-bar != 0.
  std::optional<std::string> check() const {
    for (std::size_t k = 2; k <= length(); ++k)
      for (std::size_t n = 0; n < dbar_[k].size(); ++n) {
        Matrix a = dbar(k - 1, n), b = dbar(k, n);
        if (a.rows() && b.cols() && a.cols() && !(a * b).is_zero())
          return "dbar_" + std::to_string(k - 1) + " dbar_" + std::to_string(k) + " != 0 at inner degree " +
                 std::to_string(n);
      }
    return std::nullopt;
  }

 private:
  PrimeField field_;
  std::vector<FBModule> modules_;
  std::vector<std::vector<Matrix>> dbar_;
};

inline VComplex v_complex(const ChainComplexFI& c) {
  if (auto v = check_complex(c)) throw std::invalid_argument("v_complex: not a complex: " + *v);
  VComplex out(c);
  if (auto v = out.check()) throw std::logic_error("v_complex: " + *v);
  return out;
}

/// t-tilde_k = deg H_k(V_*) for k = 0..L (and -1 beyond).
struct HyperDegreeReport {
  std::vector<int> values;
  int t(std::size_t k) const { return k < values.size() ? values[k] : -1; }
};

inline HyperDegreeReport hyper_degrees(const VComplex& v) {
  HyperDegreeReport r;
  for (std::size_t k = 0; k <= v.length(); ++k) {
    int deg = -1;
    for (std::size_t n = 0; n < v.part(k).stored(); ++n)
      if (v.homology_dim(k, n) > 0) deg = static_cast<int>(n);
    r.values.push_back(deg);
  }
  return r;
}

inline HyperDegreeReport hyper_degrees(const ChainComplexFI& c) { return hyper_degrees(v_complex(c)); }

inline int hyper_t(const ChainComplexFI& c, std::size_t k) { return hyper_degrees(c).t(k); }

// ---------------------------------------------------------------------------
// Homology

/// Cycles Z_k and boundaries B_k at level n, in P_k coordinates.
inline Subspace cycles(const ChainComplexFI& c, std::size_t k, std::size_t n) {
  if (k == 0) return Subspace::full(c.field(), c.dim(0, n));
  return kernel_basis(c.eval(k, n));
}

inline Subspace boundaries(const ChainComplexFI& c, std::size_t k, std::size_t n) {
  if (k >= c.length()) return Subspace(c.field(), c.dim(k, n));
  return image_basis(c.eval(k + 1, n));
}

/// H_k(P_*) = Z_k / B_k together with the data needed to map cycles to it.
struct HomologyModule {
  FIMatrixModule module;          // in the coordinates below
  std::vector<Subspace> cycles;   // Z_k at each level, in P_k coordinates
  std::vector<Subspace> boundaries_in_cycles;  // B_k in Z_k coordinates

  /// Class of a cycle x (P_k coordinates) at level n, in module coordinates.
  Vector class_of(std::size_t n, std::span<const Scalar> x) const {
    Vector z = cycles.at(n).coordinates(x);
    return quotient_map(boundaries_in_cycles.at(n)) * z;
  }
};

inline HomologyModule homology(const ChainComplexFI& c, std::size_t k) {
  if (k > c.length()) throw std::out_of_range("homology: degree beyond the complex");
  if (auto v = check_complex(c)) throw std::invalid_argument("homology: not a complex: " + *v);
  HomologyModule h;
  FIMatrixModule p = materialize(c.generators(k), c.window());
  for (std::size_t n = 0; n <= c.window(); ++n) h.cycles.push_back(cycles(c, k, n));
  FIMatrixModule z = submodule(p, h.cycles);
  for (std::size_t n = 0; n <= c.window(); ++n) {
    Subspace b = boundaries(c, k, n);
    if (!h.cycles[n].contains(b)) throw std::logic_error("homology: boundary is not a cycle at level " + std::to_string(n));
    Matrix coords = h.cycles[n].coordinates_of_columns(b.basis());
    h.boundaries_in_cycles.push_back(image_basis(coords));
  }
  // boundaries must be stable under the actions and transitions of Z
  for (std::size_t n = 0; n <= c.window(); ++n) {
    Matrix bb = h.boundaries_in_cycles[n].basis();
    for (const auto& g : z.action(n).gens()) {
      Matrix img = g * bb;
      for (std::size_t col = 0; col < img.cols(); ++col)
        if (!h.boundaries_in_cycles[n].contains(img.column(col)))
          throw std::logic_error("homology: boundaries not S_n-stable at level " + std::to_string(n));
    }
    if (n < c.window()) {
      Matrix img = z.phi(n) * bb;
      for (std::size_t col = 0; col < img.cols(); ++col)
        if (!h.boundaries_in_cycles[n + 1].contains(img.column(col)))
          throw std::logic_error("homology: transition leaves the boundaries at level " + std::to_string(n));
    }
  }
  h.module = quotient_module(z, h.boundaries_in_cycles);
  return h;
}

inline FIMatrixModule homology_module(const ChainComplexFI& c, std::size_t k) { return homology(c, k).module; }

// ---------------------------------------------------------------------------
// Top-block elimination

/// Largest inner degree carrying a nonzero coordinate of x in II(V)_n, or -1.
inline int support_degree(const FBModule& v, std::size_t n, std::span<const Scalar> x) {
  InducedLevel lvl(v, n);
  int deg = -1;
  for (const auto& b : lvl.blocks())
    for (std::size_t i = b.offset; i < b.offset + b.subsets.size() * b.rep_dim; ++i)
      if (x[i]) {
        deg = static_cast<int>(b.m);
        break;
      }
  return deg;
}

struct Reduction {
  Vector reduced;
  std::vector<Vector> witnesses;  // w_1..w_r with x - reduced = sum d(w_i)
  std::size_t iterations = 0;
  int start_degree = -1;
  int target_degree = -1;
};

namespace detail {

// Given z in II(V_j)_n whose inner-degree-N part z'' satisfies
// dbar_j z'' = 0 subset by subset, finds w in II(V_{j+1})_n supported in
// inner degree N with (d_{j+1} w)'' = z''; each subset is an independent
// solve against dbar_{j+1} at inner degree N.
inline Vector lift_top_block(const ChainComplexFI& c, const VComplex& v, std::size_t j, std::size_t n,
                             std::size_t top, std::span<const Scalar> z) {
  const auto& f = c.field();
  InducedLevel src(c.generators(j), n);
  const InducedBlock* zb = src.block(top);
  Vector w(c.dim(j + 1, n), 0);
  if (!zb) return w;
  Matrix below = v.dbar(j, top);
  Matrix up = v.dbar(j + 1, top);
  InducedLevel dst(j + 1 <= c.length() ? c.generators(j + 1) : FBModule(f), n);
  const InducedBlock* wb = dst.block(top);
  for (std::size_t s = 0; s < zb->subsets.size(); ++s) {
    Vector part(z.begin() + static_cast<std::ptrdiff_t>(zb->offset + s * zb->rep_dim),
                z.begin() + static_cast<std::ptrdiff_t>(zb->offset + (s + 1) * zb->rep_dim));
    if (is_zero_vector(part)) continue;
    if (below.rows() && !is_zero_vector(below * part))
      throw std::logic_error("top block is not a dbar-cycle at inner degree " + std::to_string(top) +
                             " (input is not a cycle or the complex is corrupted)");
    auto sol = solve(up, part);
    if (!sol)
      throw std::logic_error("top block is not a dbar-boundary at inner degree " + std::to_string(top) +
                             " (exactness of V_* fails above t-tilde)");
    for (std::size_t q = 0; q < sol->size(); ++q) w[wb->offset + s * wb->rep_dim + q] = (*sol)[q];
  }
  return w;
}

inline Reduction eliminate(const ChainComplexFI& c, const VComplex& v, std::size_t j, std::size_t n, Vector x,
                           int target) {
  const auto& f = c.field();
  Reduction r;
  r.target_degree = target;
  r.start_degree = support_degree(c.generators(j), n, x);
  const Matrix& d = c.eval(j + 1, n);
  for (int top = r.start_degree; top > target; top = support_degree(c.generators(j), n, x)) {
    if (r.iterations > static_cast<std::size_t>(r.start_degree - target))
      throw std::logic_error("top-block elimination did not terminate");
    Vector w = lift_top_block(c, v, j, n, static_cast<std::size_t>(top), x);
    Vector dw = d.cols() ? d * w : Vector(x.size(), 0);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = f.sub(x[i], dw[i]);
    if (support_degree(c.generators(j), n, x) >= top)
      throw std::logic_error("top-block elimination failed to lower the support");
    r.witnesses.push_back(std::move(w));
    ++r.iterations;
  }
  r.reduced = std::move(x);
  return r;
}

}  // namespace detail

/// Replaces a cycle x of P_k at level n by a homologous cycle supported in
/// inner degrees <= t-tilde_k: while the top inner degree N of x exceeds
/// t-tilde_k, its top block is a dbar-cycle, hence dbar_{k+1} w for some w,
/// and x - d_{k+1} w has lower support.
inline Reduction reduce_cycle(const ChainComplexFI& c, const VComplex& v, const HyperDegreeReport& h,
                              std::size_t k, std::size_t n, Vector x) {
  if (x.size() != c.dim(k, n)) throw std::invalid_argument("reduce_cycle: vector has the wrong length");
  if (k > 0 && !is_zero_vector(c.eval(k, n) * x)) throw std::logic_error("reduce_cycle: input is not a cycle");
  return detail::eliminate(c, v, k, n, std::move(x), h.t(k));
}

inline Reduction reduce_cycle(const ChainComplexFI& c, std::size_t k, std::size_t n, Vector x) {
  VComplex v = v_complex(c);
  return reduce_cycle(c, v, hyper_degrees(v), k, n, std::move(x));
}

/// Given d_{k+1} y = x with x supported in inner degrees
/// <= max(t-tilde_k, t-tilde_{k+1}), replaces y by y - d_{k+2}(...) supported
/// in the same range; d_{k+1} of the result is still x.
inline Reduction reduce_witness(const ChainComplexFI& c, const VComplex& v, const HyperDegreeReport& h,
                                std::size_t k, std::size_t n, std::span<const Scalar> x, Vector y) {
  if (k + 1 > c.length()) throw std::invalid_argument("reduce_witness: no d_{k+1}");
  if (y.size() != c.dim(k + 1, n) || x.size() != c.dim(k, n))
    throw std::invalid_argument("reduce_witness: vectors have the wrong length");
  Vector dy = c.eval(k + 1, n) * y;
  if (!std::equal(dy.begin(), dy.end(), x.begin())) throw std::logic_error("reduce_witness: d(y) != x");
  int bound = std::max(h.t(k), h.t(k + 1));
  if (support_degree(c.generators(k), n, x) > bound)
    throw std::logic_error("reduce_witness: x is supported above max(t-tilde_k, t-tilde_{k+1})");
  return detail::eliminate(c, v, k + 1, n, std::move(y), bound);
}

/// Level-wise surjectivity of (cycles supported in inner degrees <= t) -> H_k.
inline bool low_cycles_generate(const ChainComplexFI& c, const HomologyModule& h, std::size_t k, std::size_t n,
                                int t) {
  std::size_t hdim = h.module.dim(n);
  if (hdim == 0) return true;
  if (t < 0) return false;
  InducedLevel lvl(c.generators(k), n);
  std::vector<std::size_t> low;
  for (const auto& b : lvl.blocks())
    if (static_cast<int>(b.m) <= t)
      for (std::size_t i = 0; i < b.subsets.size() * b.rep_dim; ++i) low.push_back(b.offset + i);
  if (low.empty()) return false;
  Matrix restricted = k == 0 ? Matrix(c.field(), 0, low.size()) : c.eval(k, n).select_columns(low);
  Subspace z = kernel_basis(restricted);
  Matrix classes(c.field(), hdim, z.dim());
  for (std::size_t i = 0; i < z.dim(); ++i) {
    Vector full(c.dim(k, n), 0);
    auto row = z.basis_rows().row(i);
    for (std::size_t q = 0; q < low.size(); ++q) full[low[q]] = row[q];
    Vector cl = h.class_of(n, full);
    for (std::size_t r = 0; r < hdim; ++r) classes(r, i) = cl[r];
  }
  return rank(classes) == hdim;
}

// ---------------------------------------------------------------------------
// The two degree bounds for the homology of a complex

enum class Verdict { Pass, Fail, Inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

struct MainBoundsReport {
  std::size_t k = 0;
  int tt_k = -1, tt_k1 = -1;  // t-tilde_k, t-tilde_{k+1}
  int t0 = -1, t1 = -1;       // of H_k
  int bound0 = 0, bound1 = 0;
  std::size_t window = 0, required_window = 0;
  bool t0_exact = false, t1_exact = false;
  Verdict verdict = Verdict::Inconclusive;
};

/// t_0(H_k) <= 2 t-tilde_k + 1 and t_1(H_k) <= 2 max(t-tilde_k, t-tilde_{k+1}) + 2,
/// with t-tilde_{L+1} = -1. Needs window >= 2 max + 3.
inline MainBoundsReport verify_main_bounds(const ChainComplexFI& c, const HyperDegreeReport& h, std::size_t k,
                                           const FIMatrixModule* homology_k = nullptr) {
  MainBoundsReport r;
  r.k = k;
  r.tt_k = h.t(k);
  r.tt_k1 = h.t(k + 1);
  int top = std::max(r.tt_k, r.tt_k1);
  r.bound0 = 2 * r.tt_k + 1;
  r.bound1 = 2 * top + 2;
  r.window = c.window();
  r.required_window = static_cast<std::size_t>(std::max(0, 2 * top + 3));
  if (r.window < r.required_window) return r;
  FIMatrixModule local;
  if (!homology_k) {
    local = homology_module(c, k);
    homology_k = &local;
  }
  DegreeReport d = degrees(*homology_k, 1);
  r.t0 = d.t(0);
  r.t1 = d.t(1);
  r.t0_exact = d.exact[0];
  r.t1_exact = d.exact[1];
  r.verdict = (r.t0 <= r.bound0 && r.t1 <= r.bound1) ? Verdict::Pass : Verdict::Fail;
  return r;
}

inline MainBoundsReport verify_main_bounds(const ChainComplexFI& c, std::size_t k) {
  return verify_main_bounds(c, hyper_degrees(c), k);
}

}  // namespace fihom
