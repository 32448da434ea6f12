#include <CLI11.hpp>

#include <iostream>

#include "superform/superform.hpp"

int main(int argc, char** argv) {
  using namespace superform;
  CLI::App app{"Exact superform integration and tropical Monge-Ampere measures"};
  app.require_subcommand(0, 1);

  std::string command, scene_path, out_path;
  CommandFlags flags;
  std::string form, alpha, beta, box;
  double eps = 0;
  std::size_t grid = 0;
  app.add_option("command", command, "one of: integrate, integrate-boundary, check-stokes, check-green, balance, ma, "
                                     "mixed-ma, corner-locus, smooth-ma, positivity")
      ->required();
  app.add_option("--scene", scene_path, "scene JSON file")->required();
  auto* form_opt = app.add_option("--form", form, "form name (test function for smooth-ma)");
  auto* alpha_opt = app.add_option("--alpha", alpha, "first form for check-green");
  auto* beta_opt = app.add_option("--beta", beta, "second form for check-green");
  app.add_option("--poly", flags.polys, "tropical polynomial name; repeat for mixed-ma");
  auto* eps_opt = app.add_option("--eps", eps, "smoothing parameter for smooth-ma");
  auto* grid_opt = app.add_option("--grid", grid, "nodes per axis for smooth-ma");
  auto* box_opt = app.add_option("--box", box, "named cell used as the smooth-ma domain");
  app.add_option("--out", out_path, "write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  if (*form_opt) flags.form = form;
  if (*alpha_opt) flags.alpha = alpha;
  if (*beta_opt) flags.beta = beta;
  if (*box_opt) flags.box = box;
  if (*eps_opt) flags.eps = eps;
  if (*grid_opt) flags.grid = grid;

  try {
    Scene scene = load_scene(scene_path);
    CommandResult r = run(command, scene, flags);
    if (out_path.empty())
      std::cout << dump_result(r.report);
    else
      save_result(r.report, out_path);
    return r.exit_code;
  } catch (const Error& e) {
    Json err = {{"error", e.kind()}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << Json{{"error", "InternalError"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }
}
