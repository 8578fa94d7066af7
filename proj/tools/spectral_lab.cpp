// spectral-lab: seeded verification workbench for the quaternionic real
// form models. Subcommands run one check set each; full-suite runs them all
// plus the integer identity sweep. Exit codes: 0 all checks pass, 1 some
// check failed, 2 bad configuration or input.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

#include "speclab/suite.hpp"

namespace {

using namespace speclab;

struct CliOptions {
  SuiteConfig config;
  std::string group = "SL_H";
  std::string backend = "floating";
  std::string format = "json";
  std::string out_path;
  std::string curve_file;
  std::string model_file;
};

void add_common(CLI::App* cmd, CliOptions& opt, bool generative) {
  cmd->add_option("--group", opt.group, "SL_H | SO_STAR | SP_MM")
      ->capture_default_str();
  cmd->add_option("--m", opt.config.m, "quaternionic rank parameter")
      ->capture_default_str();
  cmd->add_option("--genus", opt.config.genus, "base curve genus")
      ->capture_default_str();
  cmd->add_option("--seed", opt.config.seed, "master 64-bit seed")
      ->capture_default_str();
  cmd->add_option("--tol", opt.config.tolerance, "residual tolerance")
      ->capture_default_str();
  cmd->add_option("--backend", opt.backend, "exact | floating")
      ->capture_default_str();
  cmd->add_option("--format", opt.format, "json | text")
      ->capture_default_str();
  cmd->add_option("--out", opt.out_path, "write the report to a file");
  if (generative) {
    cmd->add_option("--trials", opt.config.trials, "independent trials")
        ->capture_default_str();
    cmd->add_option("--coeff-degree", opt.config.coeff_degree,
                    "z-degree of random curve coefficients")
        ->capture_default_str();
    cmd->add_option("--disc-radius", opt.config.disc_radius,
                    "radius of the working disc")
        ->capture_default_str();
  }
}

void resolve(CliOptions& opt) {
  opt.config.group = group_from_name(opt.group);
  opt.config.backend = backend_from_name(opt.backend);
  opt.config.format = format_from_name(opt.format);
}

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open file: " + path);
  return nlohmann::json::parse(in);
}

int emit(const Report& report, const CliOptions& opt) {
  if (opt.out_path.empty()) {
    emit_report(report, std::cout);
  } else {
    std::ofstream out(opt.out_path);
    if (!out) throw ConfigError("cannot open --out path: " + opt.out_path);
    emit_report(report, out);
  }
  return report.exit_status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral-lab: verification suite for spectral data of the "
               "quaternionic real forms"};
  app.require_subcommand(1);
  CliOptions opt;

  CLI::App* matrix = app.add_subcommand(
      "verify-matrix", "pfaffian characteristic polynomial identities and "
                       "eigenvalue pairing on random models");
  add_common(matrix, opt, true);
  matrix->add_option("--model-file", opt.model_file,
                     "verify one model loaded from JSON instead");

  CLI::App* curve = app.add_subcommand(
      "verify-curve", "smoothness and fixed-point accounting on random "
                      "spectral curves");
  add_common(curve, opt, true);
  curve->add_option("--curve-file", opt.curve_file,
                    "verify one curve loaded from JSON instead");

  CLI::App* fiber = app.add_subcommand(
      "verify-fiber", "direct-image fiber pairing, multiplication operator "
                      "and equivariant splitting");
  add_common(fiber, opt, true);
  fiber->add_option("--curve-file", opt.curve_file,
                    "verify one curve loaded from JSON instead");

  CLI::App* numerology = app.add_subcommand(
      "numerology", "genus, degree, dimension and component formulas plus "
                    "the integer identity sweep");
  add_common(numerology, opt, false);

  CLI::App* full = app.add_subcommand("full-suite", "all of the above");
  add_common(full, opt, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    resolve(opt);
    Report report;
    if (matrix->parsed()) {
      if (!opt.model_file.empty()) {
        HiggsModel<Complex> model = model_from_json(load_json(opt.model_file));
        opt.config.trials = 1;
        opt.config.group = model.group;
        opt.config.m = model.m;
        report = run_model_checks(opt.config, model);
      } else {
        report = run_suite(opt.config, CheckSet::Matrix);
      }
    } else if (curve->parsed()) {
      if (!opt.curve_file.empty()) {
        PlaneCurve<Complex> c = curve_from_json(load_json(opt.curve_file));
        opt.config.trials = 1;
        opt.config.group = c.group();
        opt.config.m = c.m();
        opt.config.disc_radius = c.disc_radius();
        report = run_curve_checks(opt.config, c);
      } else {
        report = run_suite(opt.config, CheckSet::Curve);
      }
    } else if (fiber->parsed()) {
      if (!opt.curve_file.empty()) {
        PlaneCurve<Complex> c = curve_from_json(load_json(opt.curve_file));
        opt.config.trials = 1;
        opt.config.group = c.group();
        opt.config.m = c.m();
        opt.config.disc_radius = c.disc_radius();
        report = run_fiber_checks(opt.config, c);
      } else {
        report = run_suite(opt.config, CheckSet::Fiber);
      }
    } else if (numerology->parsed()) {
      report = run_suite(opt.config, CheckSet::Numerology);
    } else {
      report = run_suite(opt.config, CheckSet::Full);
    }
    return emit(report, opt);
  } catch (const std::exception& e) {
    std::cerr << "spectral-lab: " << e.what() << "\n";
    return 2;
  }
}
