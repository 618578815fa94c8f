#include "widthbright/cli.hpp"

#include "widthbright/brightness.hpp"
#include "widthbright/errors.hpp"
#include "widthbright/gauss_boundary.hpp"
#include "widthbright/generators.hpp"
#include "widthbright/io.hpp"
#include "widthbright/theorem_lab.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

namespace wb::cli {

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> t{
      {"quadrature", 1e-8},
      {"psd", 1e-9},
      {"oracle", 0.01},
      {"width", 1e-10},
      {"converged_norm", 1e-3},
      {"converged_variance", 1e-10},
      {"eig_floor", 0.01},
  };
  return t;
}

double RunConfig::tolerance(const std::string& key) const {
  if (auto it = tol.find(key); it != tol.end()) return it->second;
  return default_tolerances().at(key);
}

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

std::string sibling(const std::string& path, const std::string& suffix) {
  std::filesystem::path p(path);
  p.replace_extension();
  return p.string() + suffix;
}

int grid_lmax(const RunConfig& cfg, int needed) {
  const int lmax = cfg.lmax >= 0 ? cfg.lmax : needed;
  if (lmax < needed) {
    throw InputError("--lmax " + std::to_string(lmax) +
                     " is below the body's degree " + std::to_string(needed));
  }
  if (cfg.n_theta < lmax + 1) {
    throw InputError("grid with n_theta=" + std::to_string(cfg.n_theta) +
                     " cannot resolve degree " + std::to_string(lmax));
  }
  return lmax;
}

GridBasis make_basis(const RunConfig& cfg, int lmax) {
  return GridBasis(SphericalGrid(cfg.n_theta, cfg.n_phi), lmax);
}

// Recipes may nest: "gauge" and "odd" are recipes or literal body specs.
struct Resolved {
  SupportFunction body;
  ordered_json recipe;
};

Resolved resolve_recipe(const json& r, const RunConfig& cfg, int default_lmax);

SupportFunction resolve_odd(const json& r, const RunConfig& cfg, int default_lmax) {
  if (r.contains("basis")) return body_from_json(r);
  const std::string kind = r.value("kind", std::string{"harmonic"});
  if (kind == "harmonic") {
    return harmonic(r.at("l").get<int>(), r.at("m").get<int>(),
                    r.value("amplitude", 1.0));
  }
  return resolve_recipe(r, cfg, default_lmax).body;
}

Resolved resolve_recipe(const json& r, const RunConfig& cfg, int default_lmax) {
  if (!r.is_object()) throw InputError("recipe must be a JSON object");
  if (r.contains("basis")) return {body_from_json(r), ordered_json{{"kind", "literal"}}};
  const std::string kind = r.at("kind").get<std::string>();
  const int lmax = r.value("lmax", default_lmax);
  ordered_json rec;
  rec["kind"] = kind;
  if (kind == "ball") {
    const double radius = r.value("radius", 1.0);
    rec["radius"] = radius;
    return {ball(radius), rec};
  }
  if (kind == "ellipsoid") {
    const auto ax = r.at("axes").get<std::vector<double>>();
    if (ax.size() != 3) throw InputError("ellipsoid recipe needs 3 axes");
    rec["axes"] = ax;
    rec["lmax"] = lmax;
    return {ellipsoid(ax[0], ax[1], ax[2], lmax), rec};
  }
  if (kind == "random_convex") {
    const std::uint64_t seed = r.value("seed", cfg.seed);
    const double roughness = r.value("roughness", 0.5);
    rec["seed"] = seed;
    rec["lmax"] = lmax;
    rec["roughness"] = roughness;
    const GridBasis gb = make_basis(cfg, grid_lmax(cfg, lmax));
    return {random_convex(seed, lmax, roughness, gb), rec};
  }
  if (kind == "constant_width") {
    const SupportFunction gauge = resolve_recipe(r.at("gauge"), cfg, default_lmax).body;
    const SupportFunction odd = resolve_odd(r.at("odd"), cfg, default_lmax);
    double eps = std::numeric_limits<double>::infinity();
    if (r.contains("eps") && !(r["eps"].is_string() && r["eps"] == "auto")) {
      eps = r["eps"].get<double>();
    }
    const GridBasis gb =
        make_basis(cfg, grid_lmax(cfg, std::max(gauge.lmax(), odd.lmax())));
    const BodyRecipe built = constant_width_body(gauge, odd, eps, gb);
    rec["eps_request"] = std::isfinite(eps) ? json(eps) : json("auto");
    rec["eps"] = built.eps;
    rec["rho"] = built.rho;
    return {built.resolved, rec};
  }
  throw InputError("unknown recipe kind \"" + kind + "\"");
}

int cmd_gen(const RunConfig& cfg, std::ostream& out) {
  const json recipe = read_json(cfg.inputs.at(0));
  const int default_lmax = cfg.lmax >= 0 ? cfg.lmax : 12;
  Resolved r;
  try {
    r = resolve_recipe(recipe, cfg, default_lmax);
  } catch (const json::exception& e) {
    throw InputError(std::string("recipe: ") + e.what());
  }
  const GridBasis gb = make_basis(cfg, grid_lmax(cfg, r.body.lmax()));
  const ConvexityCertificate cert = certify_convex(r.body, gb, cfg.tolerance("psd"));
  ordered_json j = body_to_json(r.body);
  j["recipe"] = r.recipe;
  j["certificate"] = certificate_to_json(cert);
  j["grid"] = {cfg.n_theta, cfg.n_phi};
  if (!cert.convex()) {
    throw NotConvexError("recipe resolves to a non-convex body (least curvature "
                         "eigenvalue " + format_double(cert.min_eigenvalue) + ")");
  }
  const std::string text = j.dump(2) + "\n";
  if (cfg.out.empty()) {
    out << text;
  } else {
    write_text(cfg.out, text);
  }
  return kOk;
}

std::vector<Vec3> oracle_directions(std::size_t count, std::uint64_t seed) {
  // Deterministic spread: Fibonacci points with a seeded rotation offset.
  std::vector<Vec3> dirs;
  const double golden = M_PI * (3.0 - std::sqrt(5.0));
  const double offset = 0.1 + 0.37 * static_cast<double>(seed % 97);
  for (std::size_t i = 0; i < count; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / count;
    const double r = std::sqrt(1.0 - z * z);
    const double t = golden * i + offset;
    dirs.emplace_back(r * std::cos(t), r * std::sin(t), z);
  }
  return dirs;
}

int cmd_analyze(const RunConfig& cfg, std::ostream& out) {
  const SupportFunction h = body_from_json(read_json(cfg.inputs.at(0)));
  const GridBasis gb = make_basis(cfg, grid_lmax(cfg, h.lmax()));
  const SphericalGrid& g = gb.grid();

  ordered_json rep;
  rep["label"] = h.label();
  rep["grid"] = {cfg.n_theta, cfg.n_phi};
  rep["lmax"] = gb.lmax();

  const std::vector<double> w = width(h, gb);
  const auto [wmin, wmax] = std::minmax_element(w.begin(), w.end());
  rep["width"] = {{"min", *wmin}, {"max", *wmax}, {"variation", *wmax - *wmin}};

  const ConvexityCertificate cert = certify_convex(h, gb, cfg.tolerance("psd"));
  rep["certificate"] = certificate_to_json(cert);
  rep["parity"] = parity_report_to_json(parity_decomposition_check(h, gb));

  std::string csv;
  if (cert.convex()) {
    const BrightnessProfile prof = brightness_profile(h, gb);
    const auto [bmin, bmax] = std::minmax_element(prof.areas.begin(), prof.areas.end());
    rep["brightness"] = {{"min", *bmin},
                         {"max", *bmax},
                         {"variation", *bmax - *bmin},
                         {"variance", weighted_variance(prof.areas, g.weights())}};
    rep["volume"] = volume(h, gb);
    rep["symmetral_volume"] = volume(central_symmetral(h), gb);

    const BodyMesh mesh = export_mesh(inverse_gauss(h, gb), g, h.label());
    const std::vector<Vec3> dirs = oracle_directions(20, cfg.seed);
    const BrightnessProfile formula = brightness_profile(h, gb, dirs);
    const BrightnessProfile shadow = mesh_shadow_profile(mesh, dirs);
    double worst = 0.0;
    for (std::size_t i = 0; i < dirs.size(); ++i) {
      worst = std::max(worst, std::abs(formula.areas[i] - shadow.areas[i]) /
                                  formula.areas[i]);
    }
    rep["mesh_oracle"] = {{"directions", dirs.size()},
                          {"max_relative_difference", worst},
                          {"tolerance", cfg.tolerance("oracle")},
                          {"agrees", worst <= cfg.tolerance("oracle")}};
    csv = profile_to_csv(prof);
  } else {
    rep["brightness"] = nullptr;
    rep["note"] = "body is not convex; brightness and volume are not defined";
  }

  const std::string text = rep.dump(2) + "\n";
  if (cfg.out.empty()) {
    out << text;
    out << csv;
  } else {
    write_text(cfg.out, text);
    if (!csv.empty()) write_text(sibling(cfg.out, ".brightness.csv"), csv);
  }
  return kOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const SupportFunction gauge = body_from_json(read_json(cfg.inputs.at(0)));
  if (!gauge.is_even()) throw InputError("verify-theorem: gauge is not even");
  const int lmax = grid_lmax(cfg, std::max(gauge.lmax(), cfg.max_odd_degree));
  const GridBasis gb = make_basis(cfg, lmax);
  const ConvexityCertificate cert = certify_convex(gauge, gb, cfg.tolerance("psd"));
  if (!(cert.min_eigenvalue > 0.0)) {
    throw NotConvexError("verify-theorem: gauge is not strictly convex");
  }

  std::vector<int> degrees;
  for (int l = 3; l <= std::min(lmax, cfg.max_odd_degree); l += 2) degrees.push_back(l);
  SupportFunction start(lmax, "start");
  if (!degrees.empty() && cfg.start_scale != 0.0) {
    const SupportFunction dir = random_odd(cfg.seed, lmax, degrees);
    const double eps_max = constant_width_body(gauge, dir,
                                               std::numeric_limits<double>::infinity(), gb).eps;
    start = dir.scaled(cfg.start_scale * eps_max);
  }

  OptimizerOptions opts;
  opts.max_iterations = cfg.max_iterations;
  opts.max_odd_degree = cfg.max_odd_degree;
  opts.converged_norm = cfg.tolerance("converged_norm");
  opts.converged_variance = cfg.tolerance("converged_variance");
  opts.min_eigenvalue_floor = cfg.tolerance("eig_floor");
  const OptimizerTrace trace = minimize_brightness_variance(gauge, start, gb, opts);

  if (!cfg.out.empty()) write_text(cfg.out, trace_to_csv(trace));
  const OptimizerIterate& last = trace.iterations.back();
  if (trace.terminal_status == TerminalStatus::infeasible) {
    out << "INFEASIBLE start (least curvature eigenvalue "
        << format_double(last.min_eigenvalue) << ")\n";
    return kInfeasible;
  }
  const bool ok = trace.terminal_status == TerminalStatus::converged_to_gauge;
  out << (ok ? "RIGIDITY-CONSISTENT" : "RIGIDITY-INCONCLUSIVE")
      << " status=" << status_name(trace.terminal_status)
      << " iterations=" << trace.iterations.size() - 1
      << " coeff_norm=" << format_double(last.coeff_norm)
      << " variance=" << format_double(last.variance) << "\n";
  return ok ? kOk : kNumericalFailure;
}

int cmd_export(const RunConfig& cfg, std::ostream& out) {
  const SupportFunction h = body_from_json(read_json(cfg.inputs.at(0)));
  const GridBasis gb = make_basis(cfg, grid_lmax(cfg, h.lmax()));
  const ConvexityCertificate cert = certify_convex(h, gb, cfg.tolerance("psd"));
  if (!cert.convex()) {
    throw NotConvexError("export: body is not convex (least curvature eigenvalue " +
                         format_double(cert.min_eigenvalue) + ")");
  }
  const BodyMesh mesh = export_mesh(inverse_gauss(h, gb), gb.grid(), h.label());
  const std::string text = to_obj(mesh);
  if (cfg.out.empty()) {
    out << text;
  } else {
    write_text(cfg.out, text);
  }
  return kOk;
}

void parse_grid(const std::string& s, RunConfig& cfg) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw InputError("--grid expects T,P");
  try {
    cfg.n_theta = std::stoi(s.substr(0, comma));
    cfg.n_phi = std::stoi(s.substr(comma + 1));
  } catch (const std::exception&) {
    throw InputError("--grid expects two integers T,P, got " + s);
  }
}

void parse_tol(const std::vector<std::string>& items, RunConfig& cfg) {
  for (const std::string& kv : items) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw InputError("--tol expects KEY=VAL, got " + kv);
    const std::string key = kv.substr(0, eq);
    if (!default_tolerances().contains(key)) {
      throw InputError("--tol: unknown key \"" + key + "\"");
    }
    try {
      cfg.tol[key] = std::stod(kv.substr(eq + 1));
    } catch (const std::exception&) {
      throw InputError("--tol: bad value in " + kv);
    }
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"widthbright: support-function toolkit for convex bodies in R^3"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string grid = "32,64";
  std::vector<std::string> tols;
  auto common = [&](CLI::App* sub, const std::string& input_name) {
    sub->add_option(input_name, cfg.inputs, "input file")->required();
    sub->add_option("--grid", grid, "quadrature grid T,P (P even)");
    sub->add_option("--lmax", cfg.lmax, "harmonic degree of the grid basis");
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--out", cfg.out, "output path");
    sub->add_option("--tol", tols, "tolerance override KEY=VAL (repeatable)");
  };
  CLI::App* gen = app.add_subcommand("gen", "resolve a body recipe into a body spec");
  common(gen, "recipe");
  CLI::App* analyze = app.add_subcommand("analyze", "width, brightness, certificate and parity report");
  common(analyze, "body");
  CLI::App* verify = app.add_subcommand("verify-theorem", "brightness-variance descent over constant-width bodies");
  common(verify, "gauge");
  verify->add_option("--start-scale", cfg.start_scale, "start as a fraction of the convexity bound (0: start at the gauge)");
  verify->add_option("--max-iter", cfg.max_iterations, "iteration cap");
  verify->add_option("--max-odd-degree", cfg.max_odd_degree, "highest odd degree optimized");
  CLI::App* exp = app.add_subcommand("export", "write the boundary mesh as OBJ");
  common(exp, "body");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kInputError;
  }

  try {
    parse_grid(grid, cfg);
    parse_tol(tols, cfg);
    if (cfg.n_theta < 2 || cfg.n_phi <= 0 || cfg.n_phi % 2 != 0) {
      throw InputError("--grid needs T >= 2 and an even P");
    }
    if (*gen) return cmd_gen(cfg, out);
    if (*analyze) return cmd_analyze(cfg, out);
    if (*verify) return cmd_verify(cfg, out);
    return cmd_export(cfg, out);
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const NotConvexError& e) {
    err << "not convex: " << e.what() << "\n";
    return kInfeasible;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  }
}

}  // namespace wb::cli
