#pragma once

// JSON scenes and reports. Rationals travel as "p/q" strings (plain JSON
// integers are accepted on input); coordinate indices are 1-based.

#include <json.hpp>

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "superform/calibration.hpp"
#include "superform/error.hpp"
#include "superform/monge_ampere.hpp"
#include "superform/polyhedra.hpp"
#include "superform/polynomial.hpp"
#include "superform/rational.hpp"
#include "superform/superforms.hpp"

namespace superform {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

namespace io {

[[noreturn]] inline void invalid(const std::string& where, const std::string& what) {
  throw ValidationError(where + ": " + what);
}

inline const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) invalid(where, std::string("missing field '") + key + "'");
  return j.at(key);
}

inline void expect_array(const Json& j, const std::string& where) {
  if (!j.is_array()) invalid(where, "expected an array");
}

// ---- scalars and vectors

inline Json to_json(const Scalar& s) { return to_string(s); }

inline Scalar scalar_from(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return parse_scalar(j.dump());
  if (j.is_string()) {
    try {
      return parse_scalar(j.get<std::string>());
    } catch (const ParseError& e) {
      invalid(where, e.what());
    }
  }
  invalid(where, "rationals must be JSON integers or \"p/q\" strings");
}

inline Json to_json(const Vec& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

/// In one dimension a bare scalar stands for the point.
inline Vec vec_from(const Json& j, std::size_t n, const std::string& where) {
  if (n == 1 && !j.is_array()) return {scalar_from(j, where)};
  expect_array(j, where);
  if (j.size() != n) invalid(where, "AmbientMismatch: expected " + std::to_string(n) + " coordinates");
  Vec v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(scalar_from(j[i], where + "[" + std::to_string(i) + "]"));
  return v;
}

inline std::vector<Vec> vecs_from(const Json& j, std::size_t n, const std::string& where) {
  expect_array(j, where);
  std::vector<Vec> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(vec_from(j[i], n, where + "[" + std::to_string(i) + "]"));
  return out;
}

// ---- cells

inline Json to_json(const Cell& c) {
  Json j;
  j["vertices"] = Json::array();
  for (const auto& v : c.vertices()) j["vertices"].push_back(to_json(v));
  j["rays"] = Json::array();
  for (const auto& v : c.rays()) j["rays"].push_back(to_json(v));
  j["lines"] = Json::array();
  for (const auto& v : c.lines()) j["lines"].push_back(to_json(v));
  return j;
}

/// A cell is a list of points, {vertices, rays, lines}, or {halfspaces}
/// with each halfspace {normal, offset} meaning normal·x + offset ≥ 0.
inline Cell cell_from(const Json& j, std::size_t n, const std::string& where) {
  try {
    if (j.is_array()) return Cell::from_generators(n, vecs_from(j, n, where));
    if (j.is_object() && j.contains("halfspaces")) {
      const Json& hs = j.at("halfspaces");
      expect_array(hs, where + ".halfspaces");
      std::vector<AffineForm> forms;
      for (std::size_t i = 0; i < hs.size(); ++i) {
        std::string w = where + ".halfspaces[" + std::to_string(i) + "]";
        forms.push_back({vec_from(field(hs[i], "normal", w), n, w + ".normal"),
                         hs[i].contains("offset") ? scalar_from(hs[i].at("offset"), w + ".offset") : Scalar(0)});
      }
      return build_cell(forms, n);
    }
    if (j.is_object() && j.contains("vertices")) {
      auto get = [&](const char* k) {
        return j.contains(k) ? vecs_from(j.at(k), n, where + "." + k) : std::vector<Vec>{};
      };
      return Cell::from_generators(n, get("vertices"), get("rays"), get("lines"));
    }
  } catch (const ValidationError&) {
    throw;
  } catch (const Error& e) {
    invalid(where, e.what());
  }
  invalid(where, "a cell is a point list, {vertices, rays, lines} or {halfspaces}");
}

// ---- polynomials and forms

inline Json to_json(const Polynomial& p) {
  Json a = Json::array();
  for (const auto& [e, c] : p.terms()) a.push_back({{"exponent", e}, {"coefficient", to_json(c)}});
  return a;
}

/// A scalar literal or a list of {exponent: [naturals], coefficient}.
inline Polynomial polynomial_from(const Json& j, std::size_t n, const std::string& where) {
  if (!j.is_array()) return Polynomial(n, scalar_from(j, where));
  Polynomial p(n);
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string w = where + "[" + std::to_string(i) + "]";
    const Json& e = field(j[i], "exponent", w);
    expect_array(e, w + ".exponent");
    if (e.size() != n) invalid(w + ".exponent", "AmbientMismatch: expected " + std::to_string(n) + " entries");
    Exponent ex;
    for (const auto& k : e) {
      if (!k.is_number_unsigned()) invalid(w + ".exponent", "exponents must be natural numbers");
      ex.push_back(k.get<unsigned>());
    }
    p.add_term(ex, scalar_from(field(j[i], "coefficient", w), w + ".coefficient"));
  }
  return p;
}

inline Json indices_to_json(const IndexSet& s) {
  Json a = Json::array();
  for (auto i : s) a.push_back(i + 1);
  return a;
}

inline IndexSet indices_from(const Json& j, std::size_t n, const std::string& where) {
  expect_array(j, where);
  IndexSet s;
  for (const auto& k : j) {
    if (!k.is_number_unsigned() || k.get<std::size_t>() < 1 || k.get<std::size_t>() > n)
      invalid(where, "coordinate indices run from 1 to " + std::to_string(n));
    s.push_back(k.get<std::size_t>() - 1);
  }
  return s;
}

inline Json to_json(const Superform& w) {
  Json terms = Json::array();
  for (const auto& [mask, c] : w.terms())
    terms.push_back({{"dprime", indices_to_json(w.dprime_indices(mask))},
                     {"dsecond", indices_to_json(w.dsecond_indices(mask))},
                     {"coefficient", to_json(c)}});
  return {{"bidegree", {w.p(), w.q()}}, {"terms", terms}};
}

inline Superform form_from(const Json& j, std::size_t n, const std::string& where) {
  const Json& bd = field(j, "bidegree", where);
  if (!bd.is_array() || bd.size() != 2 || !bd[0].is_number_unsigned() || !bd[1].is_number_unsigned())
    invalid(where + ".bidegree", "expected [p, q]");
  std::size_t p = bd[0].get<std::size_t>(), q = bd[1].get<std::size_t>();
  if (p > n || q > n) invalid(where + ".bidegree", "BidegreeMismatch: degrees exceed the ambient dimension");
  Superform w(n, p, q);
  const Json& terms = j.contains("terms") ? j.at("terms") : Json::array();
  expect_array(terms, where + ".terms");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    std::string t = where + ".terms[" + std::to_string(i) + "]";
    auto I = indices_from(terms[i].contains("dprime") ? terms[i].at("dprime") : Json::array(), n, t + ".dprime");
    auto J = indices_from(terms[i].contains("dsecond") ? terms[i].at("dsecond") : Json::array(), n, t + ".dsecond");
    if (I.size() != p || J.size() != q) invalid(t, "BidegreeMismatch: term does not have the declared bidegree");
    auto sorted_unique = [](IndexSet s) {
      std::sort(s.begin(), s.end());
      return std::adjacent_find(s.begin(), s.end()) == s.end();
    };
    if (!sorted_unique(I) || !sorted_unique(J)) invalid(t, "repeated coordinate index");
    w.add_term(I, J, polynomial_from(field(terms[i], "coefficient", t), n, t + ".coefficient"));
  }
  return w;
}

// ---- tropical data

inline Json to_json(const TropicalPolynomial& f) {
  Json terms = Json::array();
  for (const auto& t : f.terms()) terms.push_back({{"exponent", to_json(t.exponent)}, {"coefficient", to_json(t.coefficient)}});
  return {{"terms", terms}};
}

inline TropicalPolynomial tropical_from(const Json& j, std::size_t n, const std::string& where) {
  const Json& terms = field(j, "terms", where);
  expect_array(terms, where + ".terms");
  if (terms.empty()) invalid(where, "a tropical polynomial needs at least one term");
  std::vector<TropicalTerm> t;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    std::string w = where + ".terms[" + std::to_string(i) + "]";
    t.push_back({vec_from(field(terms[i], "exponent", w), n, w + ".exponent"),
                 scalar_from(field(terms[i], "coefficient", w), w + ".coefficient")});
  }
  return TropicalPolynomial(n, std::move(t));
}

inline Json to_json(const AtomicMeasure& mu) {
  Json atoms = Json::array();
  for (const auto& a : mu.atoms()) atoms.push_back({{"point", to_json(a.point)}, {"mass", to_json(a.mass)}});
  return {{"atoms", atoms}};
}

inline AtomicMeasure measure_from(const Json& j, std::size_t n, const std::string& where = "measure") {
  const Json& atoms = field(j, "atoms", where);
  expect_array(atoms, where + ".atoms");
  AtomicMeasure mu(n);
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    std::string w = where + ".atoms[" + std::to_string(i) + "]";
    mu.add(vec_from(field(atoms[i], "point", w), n, w + ".point"), scalar_from(field(atoms[i], "mass", w), w + ".mass"));
  }
  return mu;
}

inline Json to_json(const Multivector& m) {
  Json a = Json::array();
  for (const auto& [idx, c] : m) a.push_back({{"indices", indices_to_json(idx)}, {"coefficient", to_json(c)}});
  return a;
}

inline Json parse_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(source + " at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

}  // namespace io

/// A form on the scene's complex: one global form, or one piece per listed cell.
using SceneForm = std::variant<Superform, CellwiseForm>;

struct Scene {
  int version = kSchemaVersion;
  std::size_t ambient_dim = 0;
  std::optional<std::size_t> dimension;
  /// Cells as listed under "complex"; slot_of_listed maps them to maximal-cell slots.
  std::vector<Cell> listed;
  std::vector<std::size_t> slot_of_listed;
  std::optional<CellComplex> complex;
  std::optional<WeightedComplex> weighted;
  std::optional<Calibration> calibration;
  std::map<std::string, SceneForm> forms;
  std::map<std::string, TropicalPolynomial> polynomials;
  std::map<std::string, Cell> cells;
  /// Defaults for command flags such as eps and grid.
  Json parameters = Json::object();

  std::size_t listed_of_slot(std::size_t slot) const {
    for (std::size_t i = 0; i < slot_of_listed.size(); ++i)
      if (slot_of_listed[i] == slot) return i;
    throw InvalidArgument("no listed cell for slot " + std::to_string(slot));
  }
};

namespace io {

inline std::vector<Scalar> per_listed(const Json& j, const Scene& s, const char* key) {
  expect_array(j, key);
  if (j.size() != s.listed.size())
    invalid(key, "one entry per listed cell is required (" + std::to_string(s.listed.size()) + ")");
  std::vector<Scalar> by_slot(s.listed.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    by_slot[s.slot_of_listed[i]] = scalar_from(j[i], std::string(key) + "[" + std::to_string(i) + "]");
  return by_slot;
}

inline SceneForm scene_form_from(const Json& j, const Scene& s, const std::string& where) {
  if (!(j.is_object() && j.contains("pieces"))) return form_from(j, s.ambient_dim, where);
  if (!s.complex) invalid(where, "cellwise forms need a complex");
  const Json& pieces = j.at("pieces");
  expect_array(pieces, where + ".pieces");
  if (pieces.size() != s.listed.size()) invalid(where + ".pieces", "one piece per listed cell is required");
  std::vector<Superform> by_slot(s.listed.size());
  for (std::size_t i = 0; i < pieces.size(); ++i)
    by_slot[s.slot_of_listed[i]] = form_from(pieces[i], s.ambient_dim, where + ".pieces[" + std::to_string(i) + "]");
  try {
    return CellwiseForm(*s.complex, std::move(by_slot));
  } catch (const Error& e) {
    invalid(where, e.what());
  }
}

}  // namespace io

/// Parses and validates a scene document; every failure is a ParseError or
/// a ValidationError whose message names the location and the invariant.
inline Scene scene_from_json(const Json& j) {
  using namespace io;
  if (!j.is_object()) invalid("scene", "top level must be an object");
  Scene s;
  if (j.contains("version")) {
    if (!j.at("version").is_number_integer() || j.at("version").get<int>() != kSchemaVersion)
      invalid("version", "unsupported schema version " + j.at("version").dump());
  }
  const Json& n = field(j, "ambient_dim", "scene");
  if (!n.is_number_unsigned() || n.get<std::size_t>() < 1 || n.get<std::size_t>() > 16)
    invalid("ambient_dim", "expected an integer between 1 and 16");
  s.ambient_dim = n.get<std::size_t>();
  if (j.contains("dimension")) {
    if (!j.at("dimension").is_number_unsigned() || j.at("dimension").get<std::size_t>() > s.ambient_dim)
      invalid("dimension", "expected an integer between 0 and ambient_dim");
    s.dimension = j.at("dimension").get<std::size_t>();
  }
  if (j.contains("parameters")) {
    if (!j.at("parameters").is_object()) invalid("parameters", "expected an object");
    s.parameters = j.at("parameters");
  }

  if (j.contains("complex")) {
    const Json& cx = j.at("complex");
    expect_array(cx, "complex");
    for (std::size_t i = 0; i < cx.size(); ++i) s.listed.push_back(cell_from(cx[i], s.ambient_dim, "complex[" + std::to_string(i) + "]"));
    try {
      s.complex = cell_complex(s.listed, s.ambient_dim);
    } catch (const Error& e) {
      invalid("complex", e.what());
    }
    const auto& maxi = s.complex->maximal_cells();
    for (std::size_t i = 0; i < s.listed.size(); ++i) {
      std::size_t slot = maxi.size();
      for (std::size_t k = 0; k < maxi.size(); ++k)
        if (s.complex->cell(maxi[k]) == s.listed[i]) slot = k;
      if (slot == maxi.size()) invalid("complex[" + std::to_string(i) + "]", "listed cell is a face of another listed cell");
      for (std::size_t m = 0; m < i; ++m)
        if (s.slot_of_listed[m] == slot) invalid("complex[" + std::to_string(i) + "]", "duplicate cell");
      s.slot_of_listed.push_back(slot);
    }
    if (j.contains("weights") && j.contains("calibration")) invalid("scene", "give either weights or calibration, not both");
    try {
      if (j.contains("weights")) {
        s.weighted = WeightedComplex(*s.complex, per_listed(j.at("weights"), s, "weights"), s.dimension);
        s.calibration = canonical_calibration(*s.weighted);
      } else if (j.contains("calibration")) {
        s.calibration = Calibration(*s.complex, per_listed(j.at("calibration"), s, "calibration"), s.dimension);
      }
    } catch (const ValidationError&) {
      throw;
    } catch (const Error& e) {
      invalid(j.contains("weights") ? "weights" : "calibration", e.what());
    }
  } else if (j.contains("weights") || j.contains("calibration")) {
    invalid("scene", "weights or calibration given without a complex");
  }

  if (j.contains("cells")) {
    if (!j.at("cells").is_object()) invalid("cells", "expected an object of named cells");
    for (const auto& [name, c] : j.at("cells").items()) s.cells.emplace(name, cell_from(c, s.ambient_dim, "cells." + name));
  }
  if (j.contains("forms")) {
    if (!j.at("forms").is_object()) invalid("forms", "expected an object of named forms");
    for (const auto& [name, f] : j.at("forms").items()) s.forms.emplace(name, scene_form_from(f, s, "forms." + name));
  }
  if (j.contains("polynomials")) {
    if (!j.at("polynomials").is_object()) invalid("polynomials", "expected an object of named tropical polynomials");
    for (const auto& [name, f] : j.at("polynomials").items())
      s.polynomials.emplace(name, tropical_from(f, s.ambient_dim, "polynomials." + name));
  }
  return s;
}

/// Canonical serialization: cells by generators, forms and polynomials in
/// normal form. Loading the output gives back an equal scene.
inline Json scene_to_json(const Scene& s) {
  using namespace io;
  Json j;
  j["version"] = s.version;
  j["ambient_dim"] = s.ambient_dim;
  if (s.dimension) j["dimension"] = *s.dimension;
  if (!s.parameters.empty()) j["parameters"] = s.parameters;
  if (s.complex) {
    j["complex"] = Json::array();
    for (const auto& c : s.listed) j["complex"].push_back(to_json(c));
    auto per = [&](const std::vector<Scalar>& by_slot) {
      Json a = Json::array();
      for (auto slot : s.slot_of_listed) a.push_back(to_json(by_slot[slot]));
      return a;
    };
    if (s.weighted)
      j["weights"] = per(s.weighted->weights());
    else if (s.calibration)
      j["calibration"] = per(s.calibration->coefficients());
  }
  if (!s.cells.empty()) {
    j["cells"] = Json::object();
    for (const auto& [name, c] : s.cells) j["cells"][name] = to_json(c);
  }
  if (!s.forms.empty()) {
    j["forms"] = Json::object();
    for (const auto& [name, f] : s.forms) {
      if (const auto* w = std::get_if<Superform>(&f)) {
        j["forms"][name] = to_json(*w);
      } else {
        const auto& cw = std::get<CellwiseForm>(f);
        Json pieces = Json::array();
        for (auto slot : s.slot_of_listed) pieces.push_back(to_json(cw.piece(slot)));
        j["forms"][name] = {{"pieces", pieces}};
      }
    }
  }
  if (!s.polynomials.empty()) {
    j["polynomials"] = Json::object();
    for (const auto& [name, f] : s.polynomials) j["polynomials"][name] = to_json(f);
  }
  return j;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Scene load_scene(const std::string& path) { return scene_from_json(io::parse_text(read_file(path), path)); }

inline std::string dump_result(const Json& result) { return result.dump(2) + "\n"; }

inline void save_result(const Json& result, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << dump_result(result);
}

inline Json load_result(const std::string& path) { return io::parse_text(read_file(path), path); }

}  // namespace superform
