#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>

#include "superform/superform.hpp"
#include "support/tropical.hpp"

using namespace superform;

namespace {

std::string scene_path(const std::string& name) { return std::string(SUPERFORM_SCENES_DIR) + "/" + name; }

Scene parse(const std::string& text) { return scene_from_json(io::parse_text(text, "inline")); }

template <class E>
std::string message_of(const std::string& text) {
  try {
    parse(text);
  } catch (const E& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(LoadScene, MinimalScene) {
  auto s = parse(R"({"ambient_dim": 1, "complex": [[0, 1]], "weights": [1]})");
  ASSERT_TRUE(s.calibration);
  EXPECT_EQ(s.calibration->dim(), 1u);
  EXPECT_EQ(s.listed.size(), 1u);
  EXPECT_EQ(s.listed[0], Cell::from_generators(1, {{0}, {1}}));
}

TEST(LoadScene, CellEncodings) {
  auto s = parse(R"({"ambient_dim": 2, "cells": {
      "pts": [[0, 0], ["1/2", 0], [0, "1/2"]],
      "gens": {"vertices": [[0, 0]], "rays": [[1, 1]]},
      "hs": {"halfspaces": [{"normal": [1, 0]}, {"normal": [0, 1]}, {"normal": [-2, -2], "offset": 1}]}}})");
  EXPECT_EQ(s.cells.at("pts"), s.cells.at("hs"));
  EXPECT_EQ(s.cells.at("gens"), Cell::from_generators(2, {{0, 0}}, {{1, 1}}));
}

TEST(LoadScene, OverlapIsNotADecomposition) {
  auto msg = message_of<ValidationError>(R"({"ambient_dim": 1, "complex": [[0, 2], [1, 3]], "weights": [1, 1]})");
  EXPECT_NE(msg.find("NotADecomposition"), std::string::npos);
  EXPECT_THROW(load_scene(scene_path("overlap.json")), ValidationError);
}

TEST(LoadScene, ParseErrorsCarryPosition) {
  try {
    parse(R"({"ambient_dim": 1, "complex": [[0, 1]],, })");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("at byte 40"), std::string::npos) << e.what();
  }
  EXPECT_THROW(load_scene(scene_path("does-not-exist.json")), ParseError);
}

TEST(LoadScene, ValidationMessages) {
  EXPECT_NE(message_of<ValidationError>(R"({"version": 2, "ambient_dim": 1})").find("version"), std::string::npos);
  EXPECT_NE(message_of<ValidationError>(R"({"complex": []})").find("ambient_dim"), std::string::npos);
  EXPECT_NE(message_of<ValidationError>(R"({"ambient_dim": 1, "complex": [[0, 1]], "weights": [1, 2]})").find("weights"),
            std::string::npos);
  EXPECT_NE(message_of<ValidationError>(R"({"ambient_dim": 2, "complex": [[[0, 0], [1, 0]], [[5, 5], [6, 5], [5, 6]]],
                                           "weights": [1, 1]})")
                .find("NotPure"),
            std::string::npos);
  EXPECT_NE(message_of<ValidationError>(R"({"ambient_dim": 1, "complex": [[0, 1]], "weights": [0]})").find("positive"),
            std::string::npos);
  EXPECT_NE(message_of<ValidationError>(R"({"ambient_dim": 2, "cells": {"c": [[0, 0, 0]]}})").find("AmbientMismatch"),
            std::string::npos);
  EXPECT_NE(message_of<ValidationError>(R"({"ambient_dim": 1, "cells": {"c": [[0.5]]}})").find("p/q"), std::string::npos);
  EXPECT_NE(message_of<ValidationError>(R"({"ambient_dim": 2, "forms": {"w": {"bidegree": [1, 1],
                                           "terms": [{"dprime": [1], "coefficient": 1}]}}})")
                .find("BidegreeMismatch"),
            std::string::npos);
  EXPECT_NE(message_of<ValidationError>(R"({"ambient_dim": 2, "forms": {"w": {"bidegree": [1, 0],
                                           "terms": [{"dprime": [3], "coefficient": 1}]}}})")
                .find("1 to 2"),
            std::string::npos);
  EXPECT_NE(message_of<ValidationError>(R"({"ambient_dim": 1, "polynomials": {"f": {"terms": []}}})").find("term"),
            std::string::npos);
  EXPECT_NE(message_of<ValidationError>(R"({"ambient_dim": 1, "complex": [[0, 1], [0]], "weights": [1, 1]})").find("face"),
            std::string::npos);
}

TEST(LoadScene, CellwiseFormsMustAgree) {
  auto msg = message_of<ValidationError>(R"({"ambient_dim": 1, "complex": [[-1, 0], [0, 1]], "weights": [1, 1],
      "forms": {"w": {"pieces": [{"bidegree": [0, 0], "terms": [{"coefficient": 1}]},
                                 {"bidegree": [0, 0], "terms": [{"coefficient": 2}]}]}}})");
  EXPECT_NE(msg.find("forms.w"), std::string::npos);
}

TEST(SceneRoundTrip, CanonicalFormIsStable) {
  for (const char* name : {"segment.json", "tropical_line.json", "triangles.json", "graph.json"}) {
    Scene s = load_scene(scene_path(name));
    Json once = scene_to_json(s);
    Json twice = scene_to_json(scene_from_json(once));
    EXPECT_EQ(once.dump(), twice.dump()) << name;
  }
}

TEST(SceneRoundTrip, CellOrderIsPreserved) {
  auto s = parse(R"({"ambient_dim": 1, "complex": [[1, 2], [0, 1]], "weights": [5, 7]})");
  auto j = scene_to_json(s);
  EXPECT_EQ(j["weights"], Json({"5/1", "7/1"}));
  EXPECT_EQ(j["complex"][0]["vertices"], Json({{"1/1"}, {"2/1"}}));
}

TEST(ResultRoundTrip, MeasureSurvivesSaveAndLoad) {
  test::Rng rng(51);
  auto path = (std::filesystem::temp_directory_path() / "superform_measure.json").string();
  for (int trial = 0; trial < 10; ++trial) {
    auto f = test::random_tropical(rng, 2, 6);
    auto mu = ma_measure(f);
    save_result(io::to_json(mu), path);
    EXPECT_EQ(io::measure_from(load_result(path), 2), mu);
  }
  std::remove(path.c_str());
}

TEST(Run, ReportsMatchLibraryCalls) {
  Scene s = load_scene(scene_path("triangles.json"));
  CommandFlags f;
  f.form = "omega";
  auto r = run("check-stokes", s, f);
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.report["residual"], "0/1");
  const auto& omega = std::get<Superform>(s.forms.at("omega"));
  EXPECT_EQ(r.report["boundary"], to_string(integrate_boundary(omega, *s.calibration).value));

  CommandFlags g;
  g.alpha = "f";
  g.beta = "g";
  auto green = run("check-green", s, g);
  EXPECT_EQ(green.exit_code, 0);
  EXPECT_EQ(green.report["residual"], "0/1");

  CommandFlags p;
  p.form = "saddle";
  EXPECT_EQ(run("positivity", s, p).exit_code, 2);
  p.form = "convex";
  EXPECT_EQ(run("positivity", s, p).exit_code, 0);

  auto balance = run("balance", s, {});
  EXPECT_EQ(balance.exit_code, 2);
  EXPECT_EQ(balance.report["unbalanced_faces"].size(), boundary_data(*s.calibration).size());
}

TEST(Run, TropicalCommands) {
  Scene s = load_scene(scene_path("tropical_line.json"));
  CommandFlags f;
  f.polys = {"line"};
  EXPECT_EQ(run("ma", s, f).report.dump(), R"({"atoms":[{"mass":"1/1","point":["0/1","0/1"]}]})");
  EXPECT_EQ(run("balance", s, {}).report.dump(), R"({"unbalanced_faces":[]})");
  EXPECT_EQ(run("balance", s, f).exit_code, 0);

  auto locus = run("corner-locus", s, f);
  EXPECT_EQ(locus.report["balanced"], true);
  EXPECT_EQ(locus.report["cells"].size(), 3u);

  CommandFlags m;
  m.polys = {"x1", "x2"};
  EXPECT_EQ(run("mixed-ma", s, m).report, io::to_json(mixed_ma({s.polynomials.at("x1"), s.polynomials.at("x2")})));
  m.polys = {"x1"};
  EXPECT_THROW(run("mixed-ma", s, m), ArityMismatch);

  CommandFlags q;
  q.polys = {"line"};
  q.box = "box";
  q.grid = 60;
  q.eps = 0.2;
  auto smooth = run("smooth-ma", s, q);
  EXPECT_EQ(smooth.report["atomic_pairing"], "1/1");
  EXPECT_NEAR(smooth.report["value"].get<double>(), 1.0, 5e-2);
}

TEST(Run, Errors) {
  Scene s = load_scene(scene_path("segment.json"));
  EXPECT_THROW(run("frobnicate", s, {}), UnknownCommand);
  EXPECT_THROW(run("integrate", s, {}), InvalidArgument);
  CommandFlags f;
  f.form = "missing";
  EXPECT_THROW(run("integrate", s, f), ValidationError);
  f.form = "x";
  EXPECT_THROW(run("integrate", s, f), BidegreeMismatch);
}

TEST(Run, OutputIsDeterministic) {
  for (const char* cmd : {"ma", "corner-locus"}) {
    CommandFlags f;
    f.polys = {"conic"};
    auto a = dump_result(run(cmd, load_scene(scene_path("tropical_line.json")), f).report);
    auto b = dump_result(run(cmd, load_scene(scene_path("tropical_line.json")), f).report);
    EXPECT_EQ(a, b);
  }
}
