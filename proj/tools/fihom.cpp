// fihom: run the property suites, compute invariants of serialized
// instances, and print the demos.
//
// Exit codes: 0 success, 1 a violation was found, 2 usage or input error.
// Profile defaults can be overridden by FIHOM_P (comma list), FIHOM_NMAX,
// FIHOM_GEN_DEGREE, FIHOM_CAP, FIHOM_TRIALS, FIHOM_SEED and FIHOM_JOBS;
// a --config file overrides the environment and flags override both.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fihom/fihom.hpp"
#include "fihom/harness/demo.hpp"
#include "fihom/harness/suites.hpp"

namespace {

using fihom::io::json;
namespace hn = fihom::harness;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::uint32_t> parse_primes(const std::string& s) {
  std::vector<std::uint32_t> out;
  std::stringstream ss(s);
  for (std::string tok; std::getline(ss, tok, ',');) {
    try {
      std::size_t used = 0;
      unsigned long long v = std::stoull(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(static_cast<std::uint32_t>(v));
      if (out.back() != v) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw UsageError("not an integer: " + tok);
    }
  }
  return out;
}

std::uint64_t parse_u64(const std::string& name, const std::string& s) {
  try {
    std::size_t used = 0;
    if (!s.empty() && s[0] == '-') throw std::invalid_argument(s);
    unsigned long long v = std::stoull(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError(name + " must be a non-negative integer, got \"" + s + "\"");
  }
}

void check_primes(const std::vector<std::uint32_t>& ps) {
  if (ps.empty()) throw UsageError("no field given");
  for (auto p : ps)
    if (!fihom::PrimeField::is_prime(p) || p >= (1u << 31))
      throw UsageError("p = " + std::to_string(p) + " is not a prime below 2^31");
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
}

void write_output(const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw UsageError("cannot write " + out);
  f << text;
}

// Profile settings in increasing precedence: defaults, environment, config file, flags.
struct ProfileSettings {
  hn::GenProfile profile;
  std::vector<std::uint32_t> fields{2, 101};
  std::size_t jobs = 1;

  void set(const std::string& key, const std::string& value) {
    if (key == "p") fields = parse_primes(value);
    else if (key == "nmax") profile.nmax = parse_u64(key, value);
    else if (key == "gen-degree") profile.gen_degree = parse_u64(key, value);
    else if (key == "cap") profile.cap = parse_u64(key, value);
    else if (key == "trials") profile.trials = parse_u64(key, value);
    else if (key == "seed") profile.seed = parse_u64(key, value);
    else if (key == "jobs") jobs = parse_u64(key, value);
    else throw UsageError("unknown configuration key \"" + key + "\"");
  }

  void from_env() {
    const std::pair<const char*, const char*> vars[] = {{"FIHOM_P", "p"},         {"FIHOM_NMAX", "nmax"},
                                                        {"FIHOM_GEN_DEGREE", "gen-degree"}, {"FIHOM_CAP", "cap"},
                                                        {"FIHOM_TRIALS", "trials"}, {"FIHOM_SEED", "seed"},
                                                        {"FIHOM_JOBS", "jobs"}};
    for (auto [var, key] : vars)
      if (const char* v = std::getenv(var)) set(key, v);
  }

  void from_config(const json& j) {
    if (!j.is_object()) throw UsageError("config must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
      const json& v = it.value();
      if (it.key() == "p" && v.is_array()) {
        std::string s;
        for (const auto& x : v) s += (s.empty() ? "" : ",") + x.dump();
        set("p", s);
      } else if (it.key() == "pool") {
        profile.pool.clear();
        for (const auto& l : v) profile.pool.push_back(l.get<fihom::Partition>());
      } else {
        set(it.key(), v.is_string() ? v.get<std::string>() : v.dump());
      }
    }
  }
};

struct Options {
  // verify
  std::string suite = "all";
  std::string out;
  std::string format = "json";
  std::string config;
  bool timing = false;
  std::optional<std::uint64_t> replay;
  std::optional<std::size_t> replay_trial;
  std::map<std::string, std::string> flags;  // profile flags given on the command line
  // degrees / colim / complex
  std::string input;
  std::size_t i = 3;
  std::size_t level = 0;
  int bound = 0;
  std::string cover = "minimal";
  std::string route = "syzygy";
  std::optional<std::size_t> window;
  // demo / example
  std::string what;
  std::uint32_t p = 2;
  int kmax = 5, dmax = 3;
};

int cmd_verify(const Options& o) {
  ProfileSettings s;
  s.from_env();
  if (!o.config.empty()) s.from_config(read_json(o.config));
  for (const auto& [k, v] : o.flags) s.set(k, v);
  check_primes(s.fields);
  for (auto p : s.fields) {
    hn::GenProfile prof = s.profile;
    prof.p = p;
    if (auto e = prof.check()) throw UsageError(*e);
  }
  if (o.format != "json" && o.format != "csv") throw UsageError("format must be json or csv");
  std::vector<std::string> suites;
  if (o.suite == "all") suites = hn::suite_names();
  else {
    bool known = false;
    for (const auto& n : hn::suite_names()) known = known || n == o.suite;
    if (!known) throw UsageError("unknown suite \"" + o.suite + "\"");
    suites = {o.suite};
  }

  if (o.replay || o.replay_trial) {
    if (suites.size() != 1 || s.fields.size() != 1) throw UsageError("replay needs one suite and one field");
    hn::GenProfile prof = s.profile;
    prof.p = s.fields[0];
    std::uint64_t seed = o.replay ? *o.replay : hn::derive_seed(prof.seed, hn::stream_name(o.suite, prof.p), *o.replay_trial);
    auto t = hn::replay_trial(o.suite, prof, seed);
    const char* status = t.status == hn::TrialStatus::Pass ? "pass"
                         : t.status == hn::TrialStatus::Violation ? "violation"
                                                                  : "inconclusive";
    json j{{"suite", o.suite}, {"p", prof.p}, {"seed", seed}, {"status", status},
           {"messages", t.messages}, {"values", t.values}, {"instance", t.instance}};
    write_output(o.out, j.dump(2) + "\n");
    return t.status == hn::TrialStatus::Violation ? 1 : 0;
  }

  hn::SuiteOptions opt;
  opt.fields = s.fields;
  opt.jobs = s.jobs;
  opt.timing = o.timing;
  std::vector<hn::SuiteResult> results;
  bool ok = true;
  for (const auto& name : suites) {
    results.push_back(hn::run_suite(name, s.profile, opt));
    ok = ok && results.back().ok();
  }
  std::string text;
  if (o.format == "json") {
    json arr = json::array();
    for (const auto& r : results) arr.push_back(hn::to_json(r));
    text = json{{"suites", arr}, {"ok", ok}}.dump(2) + "\n";
  } else {
    text = hn::csv_header() + "\n";
    for (const auto& r : results) text += hn::to_csv_row(r) + "\n";
  }
  write_output(o.out, text);
  for (const auto& r : results) {
    for (const auto& v : r.violations)
      std::cerr << "violation in " << r.suite << ": p=" << v["p"] << " trial=" << v["trial"] << " seed=" << v["seed"]
                << " (replay: fihom verify --suite " << r.suite << " --p " << v["p"] << " --replay " << v["seed"]
                << ")\n";
    for (const auto& c : r.controls)
      if (!c.detected) std::cerr << "control not detected in " << r.suite << ": " << c.name << "\n";
  }
  return ok ? 0 : 1;
}

// An FI-module from a document: fi_module as is, fb_module materialized,
// induced_morphism as its cokernel.
fihom::FIMatrixModule load_module(const json& j, std::optional<std::size_t> window) {
  std::string kind = fihom::io::kind_of(j);
  fihom::FIMatrixModule m;
  if (kind == "fi_module") m = fihom::io::fi_module_from_json(j);
  else if (kind == "fb_module") m = fihom::materialize(fihom::io::fb_module_from_json(j), window.value_or(8));
  else if (kind == "induced_morphism")
    m = fihom::cokernel_module(fihom::io::induced_morphism_from_json(j), window.value_or(8));
  else throw UsageError("cannot read an FI-module from kind \"" + kind + "\"");
  if (window && *window < m.window()) m = m.truncated(*window);
  if (auto v = fihom::fi_check(m)) throw UsageError("not an FI-module: " + *v);
  return m;
}

fihom::CoverKind parse_cover(const std::string& s) {
  if (s == "minimal") return fihom::CoverKind::Minimal;
  if (s == "span") return fihom::CoverKind::Span;
  if (s == "free") return fihom::CoverKind::Free;
  throw UsageError("cover must be minimal, span or free");
}

int cmd_degrees(const Options& o) {
  auto m = load_module(read_json(o.input), o.window);
  if (o.i < 1) throw UsageError("--i must be at least 1");
  fihom::DegreeReport r;
  if (o.route == "syzygy") r = fihom::degrees(m, o.i, parse_cover(o.cover));
  else if (o.route == "koszul") r = fihom::koszul_degrees(m, o.i);
  else throw UsageError("route must be syzygy or koszul");
  json j{{"window", r.window},
         {"t", r.values},
         {"exact_within_window", r.exact},
         {"h_dims", r.level_dims},
         {"presentation_degree", fihom::presentation_degree(r)},
         {"presentation_degree_exact", r.exact[0] && r.exact[1]},
         {"route", o.route}};
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_colim(const Options& o) {
  auto m = load_module(read_json(o.input), o.window);
  if (o.level > m.window()) throw UsageError("--n beyond the module's window");
  auto c = fihom::colimit_compare(m, o.level, o.bound);
  json j{{"n", o.level}, {"N", o.bound}, {"colim_dim", c.colim_dim}, {"level_dim", c.level_dim},
         {"is_isomorphism", c.is_isomorphism}};
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_complex(const Options& o) {
  json doc = read_json(o.input);
  auto c = fihom::io::chain_complex_from_json(doc);
  if (auto v = fihom::check_complex(c)) throw UsageError("not a complex: " + *v);
  auto h = fihom::hyper_degrees(c);
  json per_k = json::array();
  bool ok = true;
  for (std::size_t k = 0; k <= c.length(); ++k) {
    auto b = fihom::verify_main_bounds(c, h, k);
    ok = ok && b.verdict != fihom::Verdict::Fail;
    per_k.push_back(json{{"k", k}, {"tt_k", b.tt_k}, {"t0", b.t0}, {"t1", b.t1}, {"bound0", b.bound0},
                         {"bound1", b.bound1}, {"required_window", b.required_window},
                         {"verdict", fihom::to_string(b.verdict)}});
  }
  std::cout << json{{"tt", h.values}, {"homology", per_k}}.dump(2) << "\n";
  return ok ? 0 : 1;
}

int cmd_demo(const Options& o) {
  if (o.what == "gl") {
    auto d = hn::demo_congruence(o.window.value_or(10), o.p);
    json colim = json::array();
    for (const auto& c : d.colimits)
      colim.push_back(json{{"n", c.n}, {"colim_dim", c.colim_dim}, {"level_dim", c.level_dim},
                           {"is_isomorphism", c.is_isomorphism}});
    json ident = json::array();
    for (const auto& c : d.identification)
      ident.push_back(json{{"n", c.n}, {"order", c.order}, {"abelian", c.abelian}, {"exponent_two", c.exponent_two},
                           {"reduction_is_isomorphism", c.reduction_is_isomorphism}});
    json j{{"window", d.window},
           {"p", d.p},
           {"h0_dims", d.h0_dims},
           {"t0", d.degrees.t(0)},
           {"t1", d.degrees.t(1)},
           {"exact_within_window", d.degrees.exact},
           {"presentation_degree", d.presentation_degree},
           {"bounds", {{"k", d.k}, {"d", d.d}, {"t0", hn::generation_bound(d.k, d.d)},
                       {"t1", hn::relation_bound(d.k, d.d)}, {"omega", hn::bound_omega(d.k, d.d)}}},
           {"within_bounds", d.within_bounds()},
           {"colimits", colim},
           {"congruence_identification", ident}};
    std::cout << j.dump(2) << "\n";
    return d.within_bounds() && d.colimits_ok() ? 0 : 1;
  }
  if (o.what == "omega-table") {
    if (o.kmax < 0 || o.dmax < 0) throw UsageError("--kmax and --dmax must be non-negative");
    std::cout << "k,d,hyper_bound,t0_bound,t1_bound,omega\n";
    for (const auto& r : hn::omega_table(o.kmax, o.dmax))
      std::cout << r.k << ',' << r.d << ',' << r.hyper << ',' << r.t0 << ',' << r.t1 << ',' << r.omega << "\n";
    return hn::omega_identity_violation(o.kmax, o.dmax) ? 1 : 0;
  }
  throw UsageError("demo must be gl or omega-table");
}

int cmd_example(const Options& o) {
  fihom::PrimeField f(o.p);
  std::size_t window = o.window.value_or(6);
  json j;
  if (o.what == "gl") j = fihom::io::to_json(hn::gl_example(window, o.p));
  else if (o.what == "zero") j = fihom::io::to_json(fihom::FIMatrixModule::zero(f, window));
  else if (o.what == "point") j = fihom::io::to_json(hn::point_module(o.p, window));
  else if (o.what == "free1") j = fihom::io::to_json(fihom::free_module(f, 1).generators());
  else if (o.what == "augmentation") {
    auto v = fihom::free_module(f, 1).generators();
    auto w = fihom::free_module(f, 0).generators();
    j = fihom::io::to_json(fihom::InducedMorphism(v, w, {fihom::Matrix(f, 1, 0), fihom::Matrix(f, {{1}})}));
  } else throw UsageError("example must be gl, zero, point, free1 or augmentation");
  std::cout << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FI-homology workbench over prime fields"};
  app.require_subcommand(1);
  Options o;

  auto* verify = app.add_subcommand("verify", "run property suites");
  verify->add_option("--suite", o.suite, "foundations, regularity, key-lemma, main, colimit or all");
  for (const char* key : {"p", "nmax", "gen-degree", "cap", "trials", "seed", "jobs"})
    verify->add_option_function<std::string>(std::string("--") + key, [&o, key](const std::string& v) { o.flags[key] = v; },
                                              std::string("profile setting ") + key);
  verify->add_option("--out", o.out, "output file (default stdout)");
  verify->add_option("--format", o.format, "json or csv");
  verify->add_option("--config", o.config, "JSON file with profile settings");
  verify->add_flag("--timing", o.timing, "include wall-clock seconds in the report");
  verify->add_option_function<std::string>("--replay", [&o](const std::string& v) { o.replay = parse_u64("replay", v); },
                                           "re-run the single trial with this seed");
  verify->add_option_function<std::string>("--trial", [&o](const std::string& v) { o.replay_trial = parse_u64("trial", v); },
                                           "re-run trial number t of the seeded stream");

  auto* deg = app.add_subcommand("degrees", "t_0..t_i of a serialized module");
  deg->add_option("--input", o.input, "fi_module, fb_module or induced_morphism (cokernel) JSON")->required();
  deg->add_option("--i", o.i, "highest i");
  deg->add_option("--nmax", o.window, "window (truncates, or materializes up to)");
  deg->add_option("--cover", o.cover, "minimal, span or free");
  deg->add_option("--route", o.route, "syzygy or koszul");

  auto* colim = app.add_subcommand("colim", "colimit over subsets of size <= N against M_n");
  colim->add_option("--input", o.input)->required();
  colim->add_option("--n", o.level)->required();
  colim->add_option("--N", o.bound)->required();
  colim->add_option("--nmax", o.window);

  auto* cx = app.add_subcommand("complex", "hyperhomology degrees and homology bounds of a serialized complex");
  cx->add_option("--input", o.input)->required();

  auto* demo = app.add_subcommand("demo", "gl or omega-table");
  demo->add_option("what", o.what)->required();
  demo->add_option("--nmax", o.window);
  demo->add_option("--p", o.p);
  demo->add_option("--kmax", o.kmax);
  demo->add_option("--dmax", o.dmax);

  auto* ex = app.add_subcommand("example", "print a JSON instance: gl, zero, point, free1, augmentation");
  ex->add_option("what", o.what)->required();
  ex->add_option("--nmax", o.window);
  ex->add_option("--p", o.p);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*verify) return cmd_verify(o);
    if (*deg) return cmd_degrees(o);
    if (*colim) return cmd_colim(o);
    if (*cx) return cmd_complex(o);
    if (*demo) return cmd_demo(o);
    if (*ex) return cmd_example(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const fihom::io::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
