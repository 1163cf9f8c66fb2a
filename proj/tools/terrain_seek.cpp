// terrain-seek: generate instances, run the search strategies, sweep ratio
// formulas, run the acceptance suite and export SVG figures.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "tseek/acceptance.hpp"
#include "tseek/error.hpp"
#include "tseek/evaluation.hpp"
#include "tseek/io.hpp"
#include "tseek/regression_constants.hpp"
#include "tseek/svg.hpp"

using namespace tseek;
namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kValidation = 1, kBudget = 2, kSuite = 3 };

// Instance selection shared by generate, run1d, run25d and export.
struct InstanceArgs {
  std::string name;
  std::string manifest;
  int i = 3;
  double dr = 1.0;
  int d = 1;
  int pick = -1;  // target index in the pit family, -1 for all
  double lambda = 16.0;
  std::vector<int> pit;
  std::uint64_t seed = 1;
  int n_vertices = 24;
  double slope_max = 2.0;
  int size = 33;
  double height = 1.0;

  void add(CLI::App* app) {
    app->add_option("--instance", name, "generator name")
        ->check(CLI::IsMember({"unobstructed", "peak_worstcase", "thm1_pits", "pit_grid", "random1d", "random25d", "cone"}));
    app->add_option("--manifest", manifest, "instance manifest (JSON)")->check(CLI::ExistingFile);
    app->add_option("--i", i, "guide segment index (unobstructed)");
    app->add_option("--dr", dr, "ray distance d_r");
    app->add_option("--d", d, "pit family parameter (thm1_pits)");
    app->add_option("--pick", pick, "target index within the pit family");
    app->add_option("--lambda", lambda, "Lipschitz constant (pit_grid, random25d, cone)");
    app->add_option("--pit", pit, "pit indices a b (pit_grid)")->expected(2);
    app->add_option("--seed", seed, "random seed");
    app->add_option("--n-vertices", n_vertices, "vertices (random1d)");
    app->add_option("--slope-max", slope_max, "slope bound (random1d)");
    app->add_option("--size", size, "raster side 2^n + 1 (random25d)");
    app->add_option("--height", height, "cone height (cone)");
  }

  bool is_25d() const {
    if (!manifest.empty()) return manifest_dimension(manifest) == "2.5d";
    return name == "pit_grid" || name == "random25d" || name == "cone";
  }

  std::vector<Instance1D> make1d(double s) const {
    if (!manifest.empty()) return {load_instance1d(manifest)};
    if (name == "unobstructed") return {gen_unobstructed_1d(i, dr, s)};
    if (name == "peak_worstcase") return {gen_peak_worstcase_1d(dr, s)};
    if (name == "random1d") return {gen_random_1d(seed, n_vertices, slope_max)};
    if (name == "thm1_pits") {
      auto fam = gen_thm1_pits(d);
      if (pick < 0) return fam;
      if (pick >= static_cast<int>(fam.size())) throw Error(ErrorCode::InvalidParam, "--pick out of range");
      return {fam[pick]};
    }
    throw Error(ErrorCode::InvalidParam, "no 1.5D instance selected (use --instance or --manifest)");
  }

  Instance25D make25d() const {
    if (!manifest.empty()) return load_instance25d(manifest);
    if (name == "pit_grid") return gen_pit_grid_25d(lambda, pit.empty() ? -1 : pit[0], pit.empty() ? -1 : pit[1]);
    if (name == "random25d") return gen_random_25d(seed, size, lambda);
    if (name == "cone") return gen_single_cone_25d(lambda, height);
    throw Error(ErrorCode::InvalidParam, "no 2.5D instance selected (use --instance or --manifest)");
  }
};

struct Spec1Args {
  double s = std::sqrt(2.0) / 6.0;
  double eps0 = 1e-6;
  double budget = 1e5;
  bool practical = false;
  bool any_slope = false;
  void add(CLI::App* app) {
    app->add_option("--s", s, "guide slope s");
    app->add_option("--eps0", eps0, "smallest guide scale");
    app->add_option("--budget", budget, "path length budget");
    app->add_flag("--practical-start", practical, "start with a vertical ascent");
    app->add_flag("--allow-any-slope", any_slope, "accept s outside (2/9, 4/9) with a warning");
  }
  StrategySpec1D spec() const {
    StrategySpec1D sp;
    sp.s = s;
    sp.eps0 = eps0;
    sp.budget = budget;
    sp.practical_start = practical;
    sp.allow_any_slope = any_slope;
    return sp;
  }
};

struct Spec25Args {
  double eps0 = 1e-3;
  double budget = 1e5;
  double lambda_override = 0.0;
  void add(CLI::App* app) {
    app->add_option("--eps0", eps0, "first grid half side");
    app->add_option("--budget", budget, "path length budget");
    app->add_option("--lambda-override", lambda_override, "use this lambda instead of the terrain's");
  }
  StrategySpec25D spec() const {
    StrategySpec25D sp;
    sp.eps0 = eps0;
    sp.budget = budget;
    sp.lambda_override = lambda_override;
    return sp;
  }
};

void write_out(const std::string& dir, const std::string& name, const std::string& content) {
  fs::create_directories(dir);
  write_file((fs::path(dir) / name).string(), content);
}

SvgScene scene1d(const Instance1D& inst, const StrategySpec1D& spec, const SearchPath1D& path) {
  SvgScene sc;
  sc.terrain1d = inst.terrain;
  const ProjectedPath guide(spec.s, spec.eps0);
  int last = guide.first_index();
  while (guide.turning_point(last).y < path.p_t.y) ++last;
  sc.lines2.push_back({SvgRole::Guide, guide.polyline(last)});
  sc.lines2.push_back({SvgRole::Path, path.polyline});
  if (inst.ray) {
    sc.rays.push_back(*inst.ray);
    sc.lines2.push_back({SvgRole::Geodesic, geodesic_to_ray(inst.terrain, *inst.ray).path});
  }
  sc.markers = {{0.0, 0.0}, inst.target.position};
  sc.title = inst.id;
  return sc;
}

int cmd_generate(const InstanceArgs& ia, const Spec1Args& s1, const std::string& out) {
  if (ia.is_25d()) {
    const auto inst = ia.make25d();
    save_instance(out, inst);
    std::cout << (fs::path(out) / (inst.id + ".json")).string() << '\n';
  } else {
    for (const auto& inst : ia.make1d(s1.s)) {
      save_instance(out, inst);
      std::cout << (fs::path(out) / (inst.id + ".json")).string() << '\n';
    }
  }
  return kOk;
}

int cmd_run1d(const InstanceArgs& ia, const Spec1Args& s1, const std::string& out, bool svg) {
  const auto spec = s1.spec();
  std::vector<RatioReport> reports;
  for (const auto& inst : ia.make1d(spec.s)) {
    SearchPath1D path;
    reports.push_back(evaluate(inst, spec, &path));
    if (!out.empty()) {
      std::ostringstream csv;
      write_path1d_csv(csv, path);
      write_out(out, inst.id + ".path.csv", csv.str());
      if (svg) write_out(out, inst.id + ".svg", export_svg(scene1d(inst, spec, path)));
    }
  }
  std::ostringstream csv;
  write_results_csv(csv, reports);
  if (!out.empty()) write_out(out, "results.csv", csv.str());
  std::cout << csv.str();
  return kOk;
}

int cmd_run25d(const InstanceArgs& ia, const Spec25Args& s25, const std::string& out, bool svg) {
  const auto inst = ia.make25d();
  SearchPath3D path;
  const auto report = evaluate(inst, s25.spec(), &path);
  std::ostringstream csv;
  write_results_csv(csv, {report});
  if (!out.empty()) {
    write_out(out, "results.csv", csv.str());
    std::ostringstream pcsv;
    write_path25d_csv(pcsv, path);
    write_out(out, inst.id + ".path.csv", pcsv.str());
    if (svg) {
      SvgScene sc;
      sc.terrain25d = &inst.terrain;
      sc.lines3.push_back({SvgRole::Path, path.polyline});
      sc.markers = {{0.0, 0.0}, {inst.target.x, inst.target.y}};
      sc.title = inst.id;
      write_out(out, inst.id + ".svg", export_svg(sc));
    }
  }
  std::cout << csv.str();
  return kOk;
}

int cmd_sweep(const std::string& param, double from, double to, int steps, double s, const std::string& lambdas,
              const Spec25Args& s25, const std::string& out) {
  SweepTable table;
  if (param == "dr") {
    table = sweep_dr(s, from, to, steps);
  } else if (param == "s") {
    table = sweep_s(from, to, steps);
  } else {
    std::vector<double> ls;
    std::stringstream ss(lambdas);
    std::string tok;
    while (std::getline(ss, tok, ',')) ls.push_back(parse_double(tok));
    table = sweep_lambda(ls, s25.spec());
  }
  std::ostringstream csv;
  write_sweep_csv(csv, table);
  if (out.empty()) {
    std::cout << csv.str();
  } else {
    write_file(out, csv.str());
  }
  const auto& best = table.rows[table.best_row];
  std::cerr << "best " << table.param << '=' << format_double(best[0]) << ' ' << table.columns[table.objective] << '='
            << format_double(best[table.objective]) << '\n';
  return kOk;
}

int cmd_verify(bool measure) {
  RegressionMeasurement m;
  int failed = 0;
  const auto results = run_acceptance(
      [&](const CriterionResult& r) {
        std::cout << format_line(r) << std::endl;
        if (!r.pass) ++failed;
      },
      &m);
  std::cout << "summary: " << results.size() - failed << '/' << results.size() << " criteria passed\n";
  if (measure) {
    std::cout << "measured ratio_per_sqrt_lambda=" << format_double(m.ratio_per_sqrt_lambda)
              << " (frozen " << format_double(regression::kRatioPerSqrtLambda) << ")\n"
              << "measured path_per_grid=" << format_double(m.path_per_grid) << " (frozen "
              << format_double(regression::kPathPerGrid) << ")\n";
  }
  if (failed) {
    std::cerr << "suite_failure: " << failed << " criteria failed\n";
    return kSuite;
  }
  return kOk;
}

int cmd_export(const InstanceArgs& ia, const Spec1Args& s1, const Spec25Args& s25, const std::string& out,
               bool terrain_only) {
  std::string svg;
  if (ia.is_25d()) {
    const auto inst = ia.make25d();
    SvgScene sc;
    sc.terrain25d = &inst.terrain;
    sc.markers = {{0.0, 0.0}, {inst.target.x, inst.target.y}};
    sc.title = inst.id;
    if (!terrain_only) sc.lines3.push_back({SvgRole::Path, build_path_25d(inst.terrain, s25.spec(), inst.target).polyline});
    svg = export_svg(sc);
  } else {
    const auto spec = s1.spec();
    const auto insts = ia.make1d(spec.s);
    const auto& inst = insts.front();
    if (terrain_only) {
      SvgScene sc;
      sc.terrain1d = inst.terrain;
      sc.markers = {{0.0, 0.0}, inst.target.position};
      sc.title = inst.id;
      svg = export_svg(sc);
    } else {
      const auto stop = inst.ray ? StopCondition::ray(*inst.ray) : StopCondition::target(inst.target.position);
      svg = export_svg(scene1d(inst, spec, build_search_path(inst.terrain, spec, stop)));
    }
  }
  if (out.empty()) {
    std::cout << svg;
  } else {
    write_file(out, svg);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Competitive search for targets hidden by 1.5D and 2.5D terrains"};
  app.require_subcommand(1);

  InstanceArgs ia;
  Spec1Args s1;
  Spec25Args s25;
  std::string out;
  bool svg = false;

  auto* gen = app.add_subcommand("generate", "write instance manifests and terrain files");
  ia.add(gen);
  gen->add_option("--s", s1.s, "guide slope used by the 1.5D generators");
  gen->add_option("--out", out, "output directory (default .)");

  auto* r1 = app.add_subcommand("run1d", "simulate the 1.5D strategy and report ratios");
  ia.add(r1);
  s1.add(r1);
  r1->add_option("--out-dir", out, "write results.csv and path CSVs here");
  r1->add_flag("--svg", svg, "also write an SVG per instance");

  auto* r25 = app.add_subcommand("run25d", "simulate the 2.5D grid strategy and report ratios");
  ia.add(r25);
  s25.add(r25);
  r25->add_option("--out-dir", out, "write results.csv and the path CSV here");
  r25->add_flag("--svg", svg, "also write an SVG top view");

  std::string param = "dr";
  double from = 0.0, to = 1.0, s_sweep = std::sqrt(2.0) / 6.0;
  int steps = 10000;
  std::string lambdas = "16,64,256";
  auto* sw = app.add_subcommand("sweep", "tabulate ratio formulas or measured ratios");
  sw->add_option("--param", param, "dr, s or lambda")->check(CLI::IsMember({"dr", "s", "lambda"}));
  sw->add_option("--from", from, "range start");
  sw->add_option("--to", to, "range end");
  sw->add_option("--steps", steps, "number of intervals");
  sw->add_option("--s", s_sweep, "slope for the d_r sweep");
  sw->add_option("--lambdas", lambdas, "comma separated lambda values");
  sw->add_option("--out", out, "CSV file (default stdout)");
  sw->add_option("--eps0", s25.eps0, "2.5D first grid half side");

  bool measure = false;
  auto* ver = app.add_subcommand("verify", "run the acceptance suite");
  ver->add_flag("--measure", measure, "print measured regression constants");

  bool terrain_only = false;
  auto* exp = app.add_subcommand("export", "render terrain, guide, path, rays and geodesics as SVG");
  ia.add(exp);
  s1.add(exp);
  exp->add_option("--lambda-override", s25.lambda_override, "2.5D lambda override");
  exp->add_option("--out", out, "SVG file (default stdout)");
  exp->add_flag("--terrain-only", terrain_only, "draw the terrain and markers only");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: InvalidParam: " << e.what() << '\n';
    return kValidation;
  }

  try {
    if (*gen) return cmd_generate(ia, s1, out.empty() ? "." : out);
    if (*r1) return cmd_run1d(ia, s1, out, svg);
    if (*r25) return cmd_run25d(ia, s25, out, svg);
    if (*sw) return cmd_sweep(param, from, to, steps, s_sweep, lambdas, s25, out);
    if (*ver) return cmd_verify(measure);
    if (*exp) return cmd_export(ia, s1, s25, out, terrain_only);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::BudgetExceeded ? kBudget : kValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: InvalidParam: " << e.what() << '\n';
    return kValidation;
  }
  return kOk;
}
