#pragma once

// JSON forms of the data types. Matrices are {"rows", "cols", "data"} with
// data the row-major entries in [0, p). Top-level documents carry a "kind"
// tag and the prime "p".

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fihom/complex.hpp"
#include "fihom/fb_module.hpp"
#include "fihom/fi_module.hpp"
#include "fihom/induced.hpp"
#include "fihom/snrep.hpp"

namespace fihom::io {

using json = nlohmann::ordered_json;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline const json& need(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

inline std::size_t need_size(const json& j, const char* key) {
  const json& v = need(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    throw ParseError(std::string("field \"") + key + "\" must be a non-negative integer");
  return v.get<std::size_t>();
}

inline void only_keys(const json& j, std::initializer_list<const char*> keys) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (auto k : keys) ok = ok || it.key() == k;
    if (!ok) throw ParseError("unknown field \"" + it.key() + "\"");
  }
}

}  // namespace detail

inline json to_json(const Matrix& m) {
  json data = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) data.push_back(m(r, c));
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

inline Matrix matrix_from_json(const PrimeField& f, const json& j) {
  detail::only_keys(j, {"rows", "cols", "data"});
  std::size_t rows = detail::need_size(j, "rows"), cols = detail::need_size(j, "cols");
  const json& data = detail::need(j, "data");
  if (!data.is_array() || data.size() != rows * cols) throw ParseError("matrix data has the wrong length");
  Matrix m(f, rows, cols);
  for (std::size_t i = 0; i < rows * cols; ++i) {
    if (!data[i].is_number_integer()) throw ParseError("matrix entries must be integers");
    long long v = data[i].get<long long>();
    if (v < 0 || static_cast<unsigned long long>(v) >= f.p()) throw ParseError("matrix entry outside [0, p)");
    m(i / cols, i % cols) = static_cast<Scalar>(v);
  }
  return m;
}

inline json to_json(const SnRep& r) {
  json gens = json::array();
  for (const auto& g : r.gens()) gens.push_back(to_json(g));
  return json{{"n", r.n()}, {"dim", r.dim()}, {"gens", std::move(gens)}};
}

inline SnRep snrep_from_json(const PrimeField& f, const json& j) {
  detail::only_keys(j, {"n", "dim", "gens"});
  std::size_t n = detail::need_size(j, "n"), dim = detail::need_size(j, "dim");
  std::vector<Matrix> gens;
  for (const auto& g : detail::need(j, "gens")) gens.push_back(matrix_from_json(f, g));
  try {
    return SnRep(f, n, dim, std::move(gens));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

inline PrimeField field_from_json(const json& j) {
  try {
    const json& p = detail::need(j, "p");
    if (!p.is_number_integer()) throw ParseError("field \"p\" must be an integer");
    return PrimeField(p.get<long long>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

inline void expect_kind(const json& j, const char* kind) {
  const json& k = detail::need(j, "kind");
  if (!k.is_string() || k.get<std::string>() != kind)
    throw ParseError(std::string("expected kind \"") + kind + "\"");
}

inline json fb_parts(const FBModule& v) {
  json parts = json::array();
  for (std::size_t m = 0; m < v.stored(); ++m) parts.push_back(to_json(v.stored_part(m)));
  return parts;
}

inline FBModule fb_from_parts(const PrimeField& f, const json& parts) {
  if (!parts.is_array()) throw ParseError("\"parts\" must be an array");
  std::vector<SnRep> reps;
  for (const auto& p : parts) reps.push_back(snrep_from_json(f, p));
  try {
    return FBModule(f, std::move(reps));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

inline json to_json(const FBModule& v) {
  return json{{"kind", "fb_module"}, {"p", v.field().p()}, {"parts", fb_parts(v)}};
}

inline FBModule fb_module_from_json(const json& j) {
  detail::only_keys(j, {"kind", "p", "parts"});
  expect_kind(j, "fb_module");
  return fb_from_parts(field_from_json(j), detail::need(j, "parts"));
}

inline json data_to_json(const InducedMorphism& f) {
  json data = json::array();
  for (const auto& c : f.data()) data.push_back(to_json(c));
  return data;
}

inline InducedMorphism morphism_from_data(const FBModule& v, const FBModule& w, const json& data) {
  if (!data.is_array()) throw ParseError("\"data\" must be an array");
  std::vector<Matrix> c;
  for (const auto& x : data) c.push_back(matrix_from_json(v.field(), x));
  try {
    return InducedMorphism(v, w, std::move(c));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

inline json to_json(const InducedMorphism& f) {
  return json{{"kind", "induced_morphism"},
              {"p", f.field().p()},
              {"source", fb_parts(f.source())},
              {"target", fb_parts(f.target())},
              {"data", data_to_json(f)}};
}

inline InducedMorphism induced_morphism_from_json(const json& j) {
  detail::only_keys(j, {"kind", "p", "source", "target", "data"});
  expect_kind(j, "induced_morphism");
  PrimeField f = field_from_json(j);
  FBModule v = fb_from_parts(f, detail::need(j, "source"));
  FBModule w = fb_from_parts(f, detail::need(j, "target"));
  return morphism_from_data(v, w, detail::need(j, "data"));
}

inline json to_json(const FIMatrixModule& m) {
  json levels = json::array(), phi = json::array();
  for (std::size_t n = 0; n <= m.window(); ++n) levels.push_back(to_json(m.action(n)));
  for (std::size_t n = 0; n < m.window(); ++n) phi.push_back(to_json(m.phi(n)));
  return json{{"kind", "fi_module"}, {"p", m.field().p()}, {"window", m.window()},
              {"levels", std::move(levels)}, {"phi", std::move(phi)}};
}

/// Parses an FI-module; the FI axioms are not checked here (see fi_check).
inline FIMatrixModule fi_module_from_json(const json& j) {
  detail::only_keys(j, {"kind", "p", "window", "levels", "phi"});
  expect_kind(j, "fi_module");
  PrimeField f = field_from_json(j);
  std::size_t window = detail::need_size(j, "window");
  const json& levels = detail::need(j, "levels");
  const json& phis = detail::need(j, "phi");
  if (!levels.is_array() || levels.size() != window + 1) throw ParseError("need window + 1 levels");
  if (!phis.is_array() || phis.size() != window) throw ParseError("need window structure maps");
  std::vector<SnRep> actions;
  std::vector<Matrix> phi;
  for (const auto& l : levels) actions.push_back(snrep_from_json(f, l));
  for (const auto& p : phis) phi.push_back(matrix_from_json(f, p));
  try {
    return FIMatrixModule(f, std::move(actions), std::move(phi));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

inline json to_json(const ChainComplexFI& c) {
  json mods = json::array(), diffs = json::array();
  for (const auto& v : c.modules()) mods.push_back(fb_parts(v));
  for (const auto& d : c.differentials()) diffs.push_back(data_to_json(d));
  return json{{"kind", "chain_complex"}, {"p", c.field().p()}, {"window", c.window()},
              {"modules", std::move(mods)}, {"differentials", std::move(diffs)}};
}

inline ChainComplexFI chain_complex_from_json(const json& j) {
  detail::only_keys(j, {"kind", "p", "window", "modules", "differentials"});
  expect_kind(j, "chain_complex");
  PrimeField f = field_from_json(j);
  std::size_t window = detail::need_size(j, "window");
  std::vector<FBModule> mods;
  for (const auto& v : detail::need(j, "modules")) mods.push_back(fb_from_parts(f, v));
  const json& diffs = detail::need(j, "differentials");
  if (!diffs.is_array() || mods.empty() || diffs.size() + 1 != mods.size())
    throw ParseError("a complex of length L needs L + 1 modules and L differentials");
  std::vector<InducedMorphism> d;
  for (std::size_t k = 1; k < mods.size(); ++k) d.push_back(morphism_from_data(mods[k], mods[k - 1], diffs[k - 1]));
  try {
    return ChainComplexFI(std::move(mods), std::move(d), window);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

/// The "kind" field of a document.
inline std::string kind_of(const json& j) {
  const json& k = detail::need(j, "kind");
  if (!k.is_string()) throw ParseError("\"kind\" must be a string");
  return k.get<std::string>();
}

}  // namespace fihom::io
