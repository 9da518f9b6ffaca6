#pragma once

// Property suites. Each suite runs its trials once per field; a trial is a
// pure function of (profile, trial seed), so results do not depend on the
// number of worker threads. Every suite also runs deliberately broken
// control instances that must be flagged.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "fihom/colimit.hpp"
#include "fihom/complex.hpp"
#include "fihom/fi_homology.hpp"
#include "fihom/fi_module.hpp"
#include "fihom/harness/demo.hpp"
#include "fihom/harness/random.hpp"
#include "fihom/io/json.hpp"

namespace fihom::harness {

using io::json;

enum class TrialStatus { Pass, Violation, Inconclusive };

struct TrialOutcome {
  TrialStatus status = TrialStatus::Pass;
  std::vector<std::string> messages;  // violations, or why the trial is inconclusive
  json values = json::object();
  json instance = json::object();

  void violation(std::string msg) {
    status = TrialStatus::Violation;
    messages.push_back(std::move(msg));
  }
  void inconclusive(std::string msg) {
    if (status == TrialStatus::Pass) status = TrialStatus::Inconclusive;
    messages.push_back(std::move(msg));
  }
};

struct ControlOutcome {
  std::string name;
  std::uint32_t p = 0;
  bool detected = false;
  std::string detail;
};

struct SuiteOptions {
  std::vector<std::uint32_t> fields{2, 101};
  std::size_t jobs = 1;
  bool timing = false;
};

struct SuiteResult {
  std::string suite;
  GenProfile profile;
  std::vector<std::uint32_t> fields;
  std::size_t trials = 0, passed = 0, inconclusive = 0;
  std::vector<json> violations;
  std::vector<ControlOutcome> controls;
  json stats = json::object();
  std::optional<double> seconds;

  bool controls_ok() const {
    return std::all_of(controls.begin(), controls.end(), [](const auto& c) { return c.detected; });
  }
  bool ok() const { return violations.empty() && controls_ok(); }
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"foundations", "regularity", "key-lemma", "main", "colimit"};
  return names;
}

// ---------------------------------------------------------------------------
// Helpers

inline json degree_json(const DegreeReport& r) {
  return json{{"t", r.values}, {"exact", r.exact}, {"window", r.window}};
}

/// Cover route and Koszul route must give the same level dimensions.
inline void cross_check_routes(TrialOutcome& out, const std::string& what, const FIMatrixModule& m,
                               const DegreeReport& cover) {
  DegreeReport k = koszul_degrees(m, cover.values.size() - 1);
  if (k.level_dims != cover.level_dims)
    out.violation(what + ": syzygy and Koszul routes disagree on H_i dimensions");
}

/// Runs f(0..count-1) on `jobs` threads, collecting results by index.
template <class T>
std::vector<T> run_indexed(std::size_t count, std::size_t jobs, const std::function<T(std::size_t)>& f) {
  std::vector<T> out(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        out[i] = f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

// ---------------------------------------------------------------------------
// Trials

/// H_0(II(V)) = V, acyclicity of induced modules, upper-triangular blocks.
inline TrialOutcome trial_foundations(const GenProfile& prof, std::uint64_t seed) {
  Rng rng(seed);
  TrialOutcome out;
  FBModule v = rand_fb_module(prof, rng);
  FBModule w = rand_fb_module(prof, rng);
  InducedMorphism f = rand_morphism(v, w, rng);
  out.instance = json{{"V", io::to_json(v)}, {"morphism", io::to_json(f)}};

  FIMatrixModule m = materialize(v, prof.nmax);
  if (auto e = fi_check(m)) out.violation("materialized module fails the FI axioms: " + *e);
  auto h = h0(m);
  for (std::size_t n = 0; n <= prof.nmax; ++n) {
    if (h[n].dim() != v.dim(n)) {
      out.violation("dim H_0(II(V))_" + std::to_string(n) + " = " + std::to_string(h[n].dim()) + " != dim V_n = " +
                    std::to_string(v.dim(n)));
      continue;
    }
    if (h[n].dim() == 0 || h[n].action == v.part(n)) continue;
    // otherwise look for an equivariant isomorphism
    bool iso = false;
    for (const auto& x : equivariant_hom_basis(v.part(n), h[n].action))
      if (rank(x) == v.dim(n)) iso = true;
    if (!iso) out.violation("H_0(II(V))_" + std::to_string(n) + " is not isomorphic to V_n");
  }
  DegreeReport r = degrees(m, 3);
  cross_check_routes(out, "II(V)", m, r);
  out.values = json{{"deg_V", v.deg()}, {"degrees", degree_json(r)}};
  if (r.t(0) != v.deg()) out.violation("t_0(II(V)) = " + std::to_string(r.t(0)) + " != deg V = " + std::to_string(v.deg()));
  for (std::size_t i = 1; i <= 3; ++i)
    if (r.t(i) != -1) out.violation("t_" + std::to_string(i) + "(II(V)) = " + std::to_string(r.t(i)) + ", expected -1");

  for (std::size_t n = 0; n <= prof.nmax; ++n) {
    Matrix e = f.eval(n);
    InducedLevel src(v, n), dst(w, n);
    auto block_is_zero = [&](const InducedBlock& rb, const InducedBlock& cb) {
      for (std::size_t r0 = rb.offset; r0 < rb.offset + rb.subsets.size() * rb.rep_dim; ++r0)
        for (std::size_t c0 = cb.offset; c0 < cb.offset + cb.subsets.size() * cb.rep_dim; ++c0)
          if (e(r0, c0)) return false;
      return true;
    };
    for (const auto& sb : src.blocks())
      for (const auto& tb : dst.blocks())
        if (tb.m > sb.m && !block_is_zero(tb, sb))
          out.violation("block f^{" + std::to_string(tb.m) + "," + std::to_string(sb.m) + "} nonzero at level " +
                        std::to_string(n));
  }
  return out;
}

/// t_i(M) <= t_0(M) + t_1(M) + i - 1 for i = 2, 3, M a random cokernel.
inline TrialOutcome trial_regularity(const GenProfile& prof, std::uint64_t seed) {
  Rng rng(seed);
  TrialOutcome out;
  FBModule v = rand_fb_module(prof, rng);
  FBModule w = rand_fb_module(prof, rng);
  InducedMorphism f = rand_morphism(v, w, rng);
  out.instance = json{{"morphism", io::to_json(f)}};
  FIMatrixModule m = cokernel_module(f, prof.nmax);
  DegreeReport r = degrees(m, 3);
  cross_check_routes(out, "cokernel", m, r);
  out.values = degree_json(r);
  for (std::size_t i = 2; i <= 3; ++i) {
    if (!(r.exact[0] && r.exact[1] && r.exact[i])) {
      out.inconclusive("t_" + std::to_string(i) + " bound undecided: a degree reaches the window");
      continue;
    }
    int bound = r.t(0) + r.t(1) + static_cast<int>(i) - 1;
    if (r.t(i) > bound)
      out.violation("t_" + std::to_string(i) + " = " + std::to_string(r.t(i)) + " > t_0 + t_1 + " + std::to_string(i - 1) +
                    " = " + std::to_string(bound));
  }
  return out;
}

/// t_i(ker f) <= 2 t_0(P) + i + 1 for i = 0, 1, 2.
inline TrialOutcome trial_key_lemma(const GenProfile& prof, std::uint64_t seed) {
  Rng rng(seed);
  TrialOutcome out;
  FBModule v = rand_fb_module(prof, rng);
  FBModule w = rand_fb_module(prof, rng);
  InducedMorphism f = rand_morphism(v, w, rng);
  out.instance = json{{"morphism", io::to_json(f)}};
  int tp = t0(materialize(v, prof.nmax));
  FIMatrixModule z = kernel_module(f, prof.nmax);
  DegreeReport r = degrees(z, 2);
  cross_check_routes(out, "kernel", z, r);
  out.values = json{{"t0_P", tp}, {"kernel", degree_json(r)}};
  for (std::size_t i = 0; i <= 2; ++i) {
    int bound = 2 * tp + static_cast<int>(i) + 1;
    if (!r.exact[i] && bound >= static_cast<int>(prof.nmax)) {
      out.inconclusive("t_" + std::to_string(i) + "(Z) reaches the window");
      continue;
    }
    if (r.t(i) > bound)
      out.violation("t_" + std::to_string(i) + "(Z) = " + std::to_string(r.t(i)) + " > 2 t_0(P) + " + std::to_string(i + 1) +
                    " = " + std::to_string(bound));
  }
  return out;
}

struct MainTrialStats {
  // largest t_0(H_k) / (2 t-tilde_k + 1) seen, as a fraction
  int num = 0, den = 1;
};

/// Both homology bounds for k = 0..2, the generation claim for low-degree
/// cycles, and the two reduction procedures on random input.
inline TrialOutcome trial_main(const GenProfile& prof, std::uint64_t seed) {
  Rng rng(seed);
  TrialOutcome out;
  const std::size_t length = 3;
  ChainComplexFI c = rand_complex(prof, rng, length);
  out.instance = json{{"complex", io::to_json(c)}};
  const auto& fld = c.field();
  VComplex v = v_complex(c);
  HyperDegreeReport h = hyper_degrees(v);
  json per_k = json::array();
  MainTrialStats best;

  for (std::size_t k = 0; k <= 2; ++k) {
    HomologyModule hom = homology(c, k);
    if (auto e = fi_check(hom.module)) out.violation("H_" + std::to_string(k) + " fails the FI axioms: " + *e);
    MainBoundsReport b = verify_main_bounds(c, h, k, &hom.module);
    DegreeReport kz = koszul_degrees(hom.module, 1);
    if (b.verdict != Verdict::Inconclusive && (kz.t(0) != b.t0 || kz.t(1) != b.t1))
      out.violation("H_" + std::to_string(k) + ": syzygy and Koszul routes disagree");
    per_k.push_back(json{{"k", k}, {"tt_k", b.tt_k}, {"tt_k1", b.tt_k1}, {"t0", b.t0}, {"t1", b.t1},
                         {"bound0", b.bound0}, {"bound1", b.bound1}, {"verdict", to_string(b.verdict)}});
    if (b.verdict == Verdict::Inconclusive)
      out.inconclusive("window " + std::to_string(b.window) + " below required " + std::to_string(b.required_window));
    else if (b.verdict == Verdict::Fail)
      out.violation("H_" + std::to_string(k) + ": t_0 = " + std::to_string(b.t0) + " (bound " + std::to_string(b.bound0) +
                    "), t_1 = " + std::to_string(b.t1) + " (bound " + std::to_string(b.bound1) + ")");
    if (b.verdict != Verdict::Inconclusive && b.tt_k >= 0 && b.t0 * best.den > best.num * b.bound0) {
      best.num = b.t0;
      best.den = b.bound0;
    }
    // linear form: t-tilde_j <= a j + b for all j gives t_0(H_k) <= 2ak + 2b + 1
    // and t_1(H_k) <= 2ak + 2a + 2b + 2
    if (b.verdict != Verdict::Inconclusive)
      for (int a = 0; a <= 2; ++a) {
        int bb = -1;
        for (std::size_t j = 0; j <= length + 1; ++j) bb = std::max(bb, h.t(j) - a * static_cast<int>(j));
        int kk = static_cast<int>(k);
        if (b.t0 > 2 * a * kk + 2 * bb + 1 || b.t1 > 2 * a * kk + 2 * a + 2 * bb + 2)
          out.violation("linear form a=" + std::to_string(a) + ", b=" + std::to_string(bb) + " fails for H_" +
                        std::to_string(k));
      }
    // classes are hit by cycles supported in inner degrees <= t-tilde_k
    for (std::size_t n = 0; n <= c.window(); ++n)
      if (!low_cycles_generate(c, hom, k, n, h.t(k)))
        out.violation("cycles of inner degree <= t-tilde_" + std::to_string(k) + " miss H_" + std::to_string(k) +
                      " at level " + std::to_string(n));

    // reduce a random cycle at a random level
    std::size_t n = rng.below(c.window() + 1);
    Subspace z = hom.cycles[n];
    Vector x(c.dim(k, n), 0);
    for (std::size_t i = 0; i < z.dim(); ++i) {
      Scalar s = rng.scalar(fld);
      auto row = z.basis_rows().row(i);
      for (std::size_t q = 0; q < x.size(); ++q) x[q] = fld.add(x[q], fld.mul(s, row[q]));
    }
    Reduction red = reduce_cycle(c, v, h, k, n, x);
    std::string where = "reduce_cycle(k=" + std::to_string(k) + ", n=" + std::to_string(n) + ")";
    if (k > 0 && !is_zero_vector(c.eval(k, n) * red.reduced)) out.violation(where + ": output is not a cycle");
    if (support_degree(c.generators(k), n, red.reduced) > h.t(k)) out.violation(where + ": support above t-tilde");
    if (hom.class_of(n, x) != hom.class_of(n, red.reduced)) out.violation(where + ": class changed");
    Vector diff = x;
    for (const auto& w : red.witnesses) {
      Vector dw = c.eval(k + 1, n) * w;
      for (std::size_t q = 0; q < diff.size(); ++q) diff[q] = fld.sub(diff[q], dw[q]);
    }
    if (diff != red.reduced) out.violation(where + ": x - x_red is not the sum of d(witnesses)");
    std::size_t allowed = red.start_degree > red.target_degree ? red.start_degree - red.target_degree : 0;
    if (red.iterations > allowed) out.violation(where + ": too many iterations");

    // reduce a boundary witness: y with d y = x low, and a top-degree cycle y
    if (k + 1 <= length) {
      int bound = std::max(h.t(k), h.t(k + 1));
      Vector y(c.dim(k + 1, n));
      for (auto& e : y) e = rng.scalar(fld);
      Vector dy = c.eval(k + 1, n) * y;
      std::vector<Vector> tries;
      if (support_degree(c.generators(k), n, dy) <= bound) tries.push_back(y);
      Subspace zz = cycles(c, k + 1, n);
      Vector cyc(c.dim(k + 1, n), 0);
      for (std::size_t i = 0; i < zz.dim(); ++i) {
        Scalar s = rng.scalar(fld);
        auto row = zz.basis_rows().row(i);
        for (std::size_t q = 0; q < cyc.size(); ++q) cyc[q] = fld.add(cyc[q], fld.mul(s, row[q]));
      }
      tries.push_back(cyc);
      for (const auto& yy : tries) {
        Vector target = c.eval(k + 1, n) * yy;
        Reduction rw = reduce_witness(c, v, h, k, n, target, yy);
        std::string wh = "reduce_witness(k=" + std::to_string(k) + ", n=" + std::to_string(n) + ")";
        if (c.eval(k + 1, n) * rw.reduced != target) out.violation(wh + ": d(y_red) != x");
        if (support_degree(c.generators(k + 1), n, rw.reduced) > bound) out.violation(wh + ": support too high");
      }
    }
  }
  out.values = json{{"tt", h.values}, {"per_k", per_k}, {"ratio", json::array({best.num, best.den})}};
  return out;
}

/// colim over subsets of size <= presentation degree recovers M_n.
inline TrialOutcome trial_colimit(const GenProfile& prof, std::uint64_t seed) {
  Rng rng(seed);
  TrialOutcome out;
  FBModule v = rand_fb_module(prof, rng);
  FBModule w = rand_fb_module(prof, rng);
  InducedMorphism f = rand_morphism(v, w, rng);
  out.instance = json{{"morphism", io::to_json(f)}};
  FIMatrixModule m = cokernel_module(f, prof.nmax);
  DegreeReport r = degrees(m, 1);
  int pd = presentation_degree(r);
  json control = nullptr;
  if (!(r.exact[0] && r.exact[1])) {
    out.inconclusive("presentation degree reaches the window");
  } else {
    for (std::size_t n = 0; n <= prof.nmax; ++n) {
      auto cmp = colimit_compare(m, n, pd);
      if (!cmp.is_isomorphism)
        out.violation("colimit at N = " + std::to_string(pd) + " is not M_" + std::to_string(n) + " (colim dim " +
                      std::to_string(cmp.colim_dim) + ", level dim " + std::to_string(cmp.level_dim) + ")");
    }
  }
  // control: below t_0 the colimit must miss some level
  if (r.t(0) >= 0) {
    bool detected = false;
    for (std::size_t n = 0; n <= prof.nmax && !detected; ++n)
      detected = !colimit_compare(m, n, r.t(0) - 1).is_isomorphism;
    control = detected;
  }
  out.values = json{{"degrees", degree_json(r)}, {"presentation_degree", pd}, {"control_detected", control}};
  return out;
}

// ---------------------------------------------------------------------------
// Controls

/// k in degree 0: M_0 = F_p, M_n = 0 for n > 0. Its degrees are t_i = i.
inline FIMatrixModule point_module(std::uint32_t p, std::size_t window) {
  PrimeField f(p);
  std::vector<SnRep> a;
  std::vector<Matrix> ph;
  for (std::size_t n = 0; n <= window; ++n) {
    a.push_back(n == 0 ? SnRep::trivial(f, 0) : SnRep::zero(f, n));
    if (n < window) ph.emplace_back(f, 0, n == 0 ? 1 : 0);
  }
  return FIMatrixModule(f, std::move(a), std::move(ph));
}

inline ControlOutcome control_corrupted_phi(std::uint32_t p) {
  ControlOutcome c{"fi_check flags a corrupted transition map", p, false, {}};
  FIMatrixModule m = harness::gl_example(4, p);
  // E_11 -> E_11 + E_12 at level 2; a diagonal entry would only rescale
  // phi_1 and still give an FI-module
  Matrix& phi = m.mutable_phi(1);
  phi(1, 0) = m.field().add(phi(1, 0), 1);
  auto v = fi_check(m);
  c.detected = v.has_value();
  c.detail = v.value_or("not detected");
  return c;
}

// regular rep of S_2 mapped onto the trivial rep by (1, 0)
inline std::pair<FBModule, FBModule> non_equivariant_pair(std::uint32_t p) {
  PrimeField f(p);
  return {FBModule::concentrated(regular_rep(f, 2)), FBModule::concentrated(SnRep::trivial(f, 2))};
}

inline ControlOutcome control_non_equivariant(std::uint32_t p) {
  ControlOutcome c{"non-equivariant adjunction data rejected", p, false, {}};
  auto [v, w] = non_equivariant_pair(p);
  std::vector<Matrix> data(3, Matrix());
  data[0] = Matrix(v.field(), induced_dim(w, 0), 0);
  data[1] = Matrix(v.field(), induced_dim(w, 1), 0);
  data[2] = Matrix(v.field(), {{1, 0}});
  try {
    InducedMorphism bad(v, w, data);
    c.detail = "accepted";
  } catch (const std::invalid_argument& e) {
    c.detected = true;
    c.detail = e.what();
  }
  return c;
}

inline ControlOutcome control_unstable_kernel(std::uint32_t p, std::size_t window) {
  ControlOutcome c{"kernel of a non-equivariant map is not a submodule", p, false, {}};
  auto [v, w] = non_equivariant_pair(p);
  std::vector<Matrix> data{Matrix(v.field(), induced_dim(w, 0), 0), Matrix(v.field(), induced_dim(w, 1), 0),
                           Matrix(v.field(), {{1, 0}})};
  try {
    kernel_module(InducedMorphism::trusted(v, w, data), window);
    c.detail = "accepted";
  } catch (const std::logic_error& e) {
    c.detected = true;
    c.detail = e.what();
  }
  return c;
}

inline ControlOutcome control_off_by_one_regularity(std::uint32_t p, std::size_t window) {
  ControlOutcome c{"regularity bound lowered by one is violated by the point module", p, false, {}};
  DegreeReport r = degrees(point_module(p, window), 3);
  for (std::size_t i = 2; i <= 3; ++i)
    if (r.exact[i] && r.t(i) > r.t(0) + r.t(1) + static_cast<int>(i) - 2) c.detected = true;
  c.detail = "t = (" + std::to_string(r.t(0)) + ", " + std::to_string(r.t(1)) + ", " + std::to_string(r.t(2)) + ", " +
             std::to_string(r.t(3)) + ")";
  return c;
}

inline ControlOutcome control_mismatched_source(std::uint32_t p, std::size_t window) {
  ControlOutcome c{"point module posing as a kernel with P = 0 breaks the kernel bound", p, false, {}};
  DegreeReport r = degrees(point_module(p, window), 2);
  for (std::size_t i = 0; i <= 2; ++i)
    if (r.t(i) > 2 * -1 + static_cast<int>(i) + 1) c.detected = true;
  c.detail = "t_1 = " + std::to_string(r.t(1));
  return c;
}

// P_2 -> P_1 -> P_0 all II(trivial in degree 0), d_1 = id
inline ChainComplexFI identity_complex(std::uint32_t p, std::size_t window, bool corrupt) {
  PrimeField f(p);
  FBModule one = FBModule::concentrated(SnRep::trivial(f, 0));
  InducedMorphism id(one, one, {Matrix::identity(f, 1)});
  InducedMorphism d2 = corrupt ? id : InducedMorphism::zero(one, one);
  return ChainComplexFI({one, one, one}, {id, d2}, window);
}

inline ControlOutcome control_corrupted_differential(std::uint32_t p, std::size_t window) {
  ControlOutcome c{"check_complex flags a corrupted d_2", p, false, {}};
  auto v = check_complex(identity_complex(p, window, true));
  c.detected = v.has_value();
  c.detail = v.value_or("not detected");
  return c;
}

inline ControlOutcome control_non_cycle(std::uint32_t p, std::size_t window) {
  ControlOutcome c{"reduce_cycle rejects a non-cycle", p, false, {}};
  ChainComplexFI cx = identity_complex(p, window, false);
  try {
    reduce_cycle(cx, 1, 0, Vector{1});
    c.detail = "accepted";
  } catch (const std::logic_error& e) {
    c.detected = true;
    c.detail = e.what();
  }
  return c;
}

inline ControlOutcome control_free_module_colimit(std::uint32_t p) {
  ControlOutcome c{"colimit of M(1) at N = 0 misses level 1", p, false, {}};
  PrimeField f(p);
  FIMatrixModule m = materialize(FBModule::concentrated(SnRep::trivial(f, 1)), 2);
  auto cmp = colimit_compare(m, 1, 0);
  c.detected = !cmp.is_isomorphism;
  c.detail = "colim dim " + std::to_string(cmp.colim_dim) + ", level dim " + std::to_string(cmp.level_dim);
  return c;
}

// ---------------------------------------------------------------------------
// Suite driver

using TrialFn = TrialOutcome (*)(const GenProfile&, std::uint64_t);

inline TrialFn trial_function(const std::string& suite) {
  if (suite == "foundations") return trial_foundations;
  if (suite == "regularity") return trial_regularity;
  if (suite == "key-lemma") return trial_key_lemma;
  if (suite == "main") return trial_main;
  if (suite == "colimit") return trial_colimit;
  throw std::invalid_argument("unknown suite: " + suite);
}

inline std::vector<ControlOutcome> suite_controls(const std::string& suite, std::uint32_t p, std::size_t window) {
  if (suite == "foundations") return {control_corrupted_phi(p), control_non_equivariant(p)};
  if (suite == "regularity") return {control_off_by_one_regularity(p, window)};
  if (suite == "key-lemma") return {control_mismatched_source(p, window), control_unstable_kernel(p, window)};
  if (suite == "main") return {control_corrupted_differential(p, window), control_non_cycle(p, window)};
  if (suite == "colimit") return {control_free_module_colimit(p)};
  throw std::invalid_argument("unknown suite: " + suite);
}

inline std::string stream_name(const std::string& suite, std::uint32_t p) { return suite + "/p=" + std::to_string(p); }

inline SuiteResult run_suite(const std::string& suite, const GenProfile& base, const SuiteOptions& opt) {
  auto start = std::chrono::steady_clock::now();
  TrialFn fn = trial_function(suite);
  SuiteResult res;
  res.suite = suite;
  res.profile = base;
  res.fields = opt.fields;
  std::size_t ratio_num = 0, ratio_den = 1, control_instances = 0, control_hits = 0;
  for (std::uint32_t p : opt.fields) {
    GenProfile prof = base;
    prof.p = p;
    if (auto e = prof.check()) throw std::invalid_argument("invalid profile: " + *e);
    std::string stream = stream_name(suite, p);
    auto outcomes = run_indexed<TrialOutcome>(prof.trials, opt.jobs, [&](std::size_t t) {
      return fn(prof, derive_seed(prof.seed, stream, t));
    });
    for (std::size_t t = 0; t < outcomes.size(); ++t) {
      const auto& o = outcomes[t];
      ++res.trials;
      if (o.status == TrialStatus::Pass) ++res.passed;
      if (o.status == TrialStatus::Inconclusive) ++res.inconclusive;
      if (o.status == TrialStatus::Violation)
        res.violations.push_back(json{{"p", p},
                                      {"trial", t},
                                      {"seed", derive_seed(prof.seed, stream, t)},
                                      {"messages", o.messages},
                                      {"values", o.values},
                                      {"instance", o.instance}});
      if (suite == "main" && o.values.contains("ratio")) {
        std::size_t a = o.values["ratio"][0].get<std::size_t>(), b = o.values["ratio"][1].get<std::size_t>();
        if (a * ratio_den > ratio_num * b) {
          ratio_num = a;
          ratio_den = b;
        }
      }
      if (suite == "colimit" && o.values.contains("control_detected") && !o.values["control_detected"].is_null()) {
        ++control_instances;
        if (o.values["control_detected"].get<bool>()) ++control_hits;
      }
    }
    for (auto& c : suite_controls(suite, p, prof.nmax)) res.controls.push_back(std::move(c));
  }
  if (suite == "main") res.stats["max_t0_over_bound"] = json::array({ratio_num, ratio_den});
  if (suite == "colimit") {
    res.stats["below_t0_controls"] = control_instances;
    res.stats["below_t0_detected"] = control_hits;
    ControlOutcome c{"colimit below t_0 fails in every instance", 0, control_hits == control_instances,
                     std::to_string(control_hits) + "/" + std::to_string(control_instances)};
    res.controls.push_back(c);
  }
  res.stats["exact_fraction"] =
      json::array({res.trials - res.inconclusive, res.trials});
  if (opt.timing)
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

/// Re-runs one trial from its seed.
inline TrialOutcome replay_trial(const std::string& suite, const GenProfile& prof, std::uint64_t seed) {
  return trial_function(suite)(prof, seed);
}

// ---------------------------------------------------------------------------
// Reports

inline json to_json(const GenProfile& p) {
  json pool = json::array();
  for (const auto& l : p.pool) pool.push_back(l);
  return json{{"nmax", p.nmax}, {"gen_degree", p.gen_degree}, {"cap", p.cap},
              {"pool", pool},   {"trials", p.trials},         {"seed", p.seed}};
}

inline json to_json(const SuiteResult& r) {
  json controls = json::array();
  for (const auto& c : r.controls)
    controls.push_back(json{{"name", c.name}, {"p", c.p}, {"detected", c.detected}, {"detail", c.detail}});
  json out{{"suite", r.suite},
           {"fields", r.fields},
           {"profile", to_json(r.profile)},
           {"trials", r.trials},
           {"passed", r.passed},
           {"inconclusive", r.inconclusive},
           {"violations", r.violations},
           {"controls", controls},
           {"stats", r.stats},
           {"ok", r.ok()}};
  if (r.seconds) out["seconds"] = *r.seconds;
  return out;
}

inline std::string csv_header() { return "suite,fields,trials,passed,inconclusive,violations,controls_detected,controls,ok"; }

inline std::string to_csv_row(const SuiteResult& r) {
  std::string fields;
  for (std::size_t i = 0; i < r.fields.size(); ++i) fields += (i ? ";" : "") + std::to_string(r.fields[i]);
  std::size_t det = 0;
  for (const auto& c : r.controls) det += c.detected;
  return r.suite + "," + fields + "," + std::to_string(r.trials) + "," + std::to_string(r.passed) + "," +
         std::to_string(r.inconclusive) + "," + std::to_string(r.violations.size()) + "," + std::to_string(det) + "," +
         std::to_string(r.controls.size()) + "," + (r.ok() ? "true" : "false");
}

}  // namespace fihom::harness
