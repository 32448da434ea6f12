#pragma once

// Command dispatch shared by the superform tool and its tests.

#include <optional>
#include <string>
#include <vector>

#include "superform/integration.hpp"
#include "superform/io.hpp"
#include "superform/monge_ampere.hpp"

namespace superform {

struct CommandFlags {
  std::optional<std::string> form, alpha, beta, box;
  std::vector<std::string> polys;
  std::optional<double> eps;
  std::optional<std::size_t> grid;
};

struct CommandResult {
  Json report;
  int exit_code = 0;  ///< 0 ok, 2 check failure
};

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"integrate", "integrate-boundary", "check-stokes", "check-green",
                                                 "balance",   "ma",                 "mixed-ma",     "corner-locus",
                                                 "smooth-ma", "positivity"};
  return names;
}

namespace cli {

inline const std::string& need(const std::optional<std::string>& v, const char* flag) {
  if (!v) throw InvalidArgument(std::string("missing ") + flag);
  return *v;
}

inline const Calibration& calibration(const Scene& s) {
  if (!s.calibration) throw ValidationError("scene has no weights or calibration");
  return *s.calibration;
}

inline const SceneForm& form(const Scene& s, const std::string& name) {
  auto it = s.forms.find(name);
  if (it == s.forms.end()) throw ValidationError("unknown form '" + name + "'");
  return it->second;
}

inline const Superform& global_form(const Scene& s, const std::string& name) {
  const auto* w = std::get_if<Superform>(&form(s, name));
  if (!w) throw InvalidArgument("form '" + name + "' must be a single global form");
  return *w;
}

inline const TropicalPolynomial& poly(const Scene& s, const std::string& name) {
  auto it = s.polynomials.find(name);
  if (it == s.polynomials.end()) throw ValidationError("unknown polynomial '" + name + "'");
  return it->second;
}

inline const TropicalPolynomial& single_poly(const Scene& s, const CommandFlags& f) {
  if (f.polys.size() != 1) throw InvalidArgument("expected exactly one --poly");
  return poly(s, f.polys.front());
}

inline Json per_cell(const Scene& s, const IntegralResult& r) {
  Json a = Json::array();
  for (const auto& [cell, v] : r.per_cell)
    a.push_back({{"cell", s.listed_of_slot(s.calibration->slot_of(cell))}, {"value", io::to_json(v)}});
  return a;
}

inline Json per_face(const Calibration& cal, const IntegralResult& r) {
  Json a = Json::array();
  for (const auto& [face, v] : r.per_cell)
    a.push_back({{"face", io::to_json(cal.complex().cell(face))}, {"value", io::to_json(v)}});
  return a;
}

inline IntegralResult top(const SceneForm& w, const Calibration& cal) {
  return std::visit([&](const auto& x) { return integrate_top(x, cal); }, w);
}

inline IntegralResult boundary(const SceneForm& w, const Calibration& cal) {
  return std::visit([&](const auto& x) { return integrate_boundary(x, cal); }, w);
}

inline SceneForm d_prime_of(const SceneForm& w) {
  if (const auto* g = std::get_if<Superform>(&w)) return d_prime(*g);
  const auto& cw = std::get<CellwiseForm>(w);
  std::vector<Superform> d;
  for (const auto& piece : cw.pieces()) d.push_back(d_prime(piece));
  return CellwiseForm(cw.carrier(), std::move(d));
}

inline Json unbalanced(const std::vector<Discordance>& faces, const CellComplex& cx) {
  Json a = Json::array();
  for (const auto& d : faces) {
    auto c = d.canonical();
    a.push_back({{"face", io::to_json(cx.cell(c.face))}, {"discordance", io::to_json(c.multivector)}});
  }
  return a;
}

inline double param(const Scene& s, const std::optional<double>& flag, const char* key, double fallback) {
  if (flag) return *flag;
  if (s.parameters.contains(key) && s.parameters.at(key).is_number()) return s.parameters.at(key).get<double>();
  return fallback;
}

}  // namespace cli

inline CommandResult run(const std::string& command, const Scene& scene, const CommandFlags& flags) {
  using namespace cli;
  CommandResult out;
  auto check = [&](const Scalar& residual) {
    if (residual != 0) out.exit_code = 2;
  };

  if (command == "integrate") {
    const auto& cal = calibration(scene);
    auto r = top(form(scene, need(flags.form, "--form")), cal);
    out.report = {{"value", io::to_json(r.value)}, {"per_cell", per_cell(scene, r)}};
  } else if (command == "integrate-boundary") {
    const auto& cal = calibration(scene);
    auto r = boundary(form(scene, need(flags.form, "--form")), cal);
    out.report = {{"value", io::to_json(r.value)}, {"per_face", per_face(cal, r)}};
  } else if (command == "check-stokes") {
    const auto& cal = calibration(scene);
    const auto& w = form(scene, need(flags.form, "--form"));
    if (std::visit([](const auto& x) { return x.bidegree(); }, w) != std::pair<std::size_t, std::size_t>{cal.dim() - 1, cal.dim()})
      throw BidegreeMismatch("Stokes needs a form of bidegree (n-1, n)");
    Scalar interior = top(d_prime_of(w), cal).value;
    Scalar bdy = boundary(w, cal).value;
    out.report = {{"interior", io::to_json(interior)}, {"boundary", io::to_json(bdy)},
                  {"residual", io::to_json(Scalar(interior - bdy))}};
    check(interior - bdy);
  } else if (command == "check-green") {
    const auto& cal = calibration(scene);
    auto g = green_terms(global_form(scene, need(flags.alpha, "--alpha")),
                         global_form(scene, need(flags.beta, "--beta")), cal);
    out.report = {{"interior", io::to_json(g.interior)}, {"boundary", io::to_json(g.boundary)},
                  {"residual", io::to_json(g.residual())}};
    check(g.residual());
  } else if (command == "balance") {
    Json faces;
    if (!flags.polys.empty()) {
      auto h = corner_locus(single_poly(scene, flags));
      faces = unbalanced(unbalanced_faces(h.locus), h.locus.complex());
    } else {
      const auto& cal = calibration(scene);
      faces = unbalanced(boundary_data(cal), cal.complex());
    }
    if (!faces.empty()) out.exit_code = 2;
    out.report = {{"unbalanced_faces", faces}};
  } else if (command == "ma") {
    out.report = io::to_json(ma_measure(single_poly(scene, flags)));
  } else if (command == "mixed-ma") {
    std::vector<TropicalPolynomial> fs;
    for (const auto& name : flags.polys) fs.push_back(poly(scene, name));
    out.report = io::to_json(mixed_ma(fs));
  } else if (command == "corner-locus") {
    const auto& f = single_poly(scene, flags);
    auto h = corner_locus(f);
    const auto& cx = h.locus.complex();
    Json cells = Json::array();
    for (std::size_t k = 0; k < cx.maximal_cells().size(); ++k) {
      Json edge = Json::array();
      for (auto t : h.active[k]) edge.push_back(io::to_json(f.terms()[t].exponent));
      cells.push_back({{"cell", io::to_json(cx.cell(cx.maximal_cells()[k]))},
                       {"weight", io::to_json(h.locus.weights()[k])},
                       {"dual_edge", edge}});
    }
    bool balanced = is_balanced(h);
    if (!balanced) out.exit_code = 2;
    out.report = {{"balanced", balanced}, {"cells", cells}};
  } else if (command == "smooth-ma") {
    const auto& f = single_poly(scene, flags);
    const std::string& box_name = need(flags.box, "--box");
    auto it = scene.cells.find(box_name);
    if (it == scene.cells.end()) throw ValidationError("unknown cell '" + box_name + "'");
    Polynomial phi(scene.ambient_dim, Scalar(1));
    if (flags.form) {
      const auto& w = global_form(scene, *flags.form);
      if (w.bidegree() != std::pair<std::size_t, std::size_t>{0, 0})
        throw BidegreeMismatch("the test function must be a (0,0)-form");
      phi = w.coefficient({}, {});
    }
    double eps = param(scene, flags.eps, "eps", 0.05);
    std::size_t grid = flags.grid ? *flags.grid : static_cast<std::size_t>(param(scene, std::nullopt, "grid", 200));
    double value = lse_ma_quadrature(f, phi, eps, it->second, grid);
    Scalar exact = ma_measure(f).pair(phi);
    out.report = {{"value", value},
                  {"atomic_pairing", io::to_json(exact)},
                  {"error", std::abs(value - exact.get_d())},
                  {"eps", eps},
                  {"grid", grid}};
  } else if (command == "positivity") {
    bool positive = check_positivity(global_form(scene, need(flags.form, "--form")), PositivityKind::positive);
    if (!positive) out.exit_code = 2;
    out.report = {{"positive", positive}};
  } else {
    throw UnknownCommand("'" + command + "'");
  }
  return out;
}

}  // namespace superform
