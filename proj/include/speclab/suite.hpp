// speclab/suite.hpp
//
// Seeded verification suite over the model families: generates random
// instances per trial, runs the identity checks from every module, and
// aggregates deterministic reports. Trials are independent; aggregation is
// keyed by trial index, so results do not depend on scheduling.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "speclab/fiber.hpp"
#include "speclab/numerology.hpp"
#include "speclab/plane_curve.hpp"
#include "speclab/real_forms.hpp"

namespace speclab {

enum class Backend { Exact, Floating };
enum class Format { Json, Text };

const char* backend_name(Backend b);
Backend backend_from_name(const std::string& s);  // ConfigError on unknown
const char* format_name(Format f);
Format format_from_name(const std::string& s);  // ConfigError on unknown

struct SuiteConfig {
  Group group = Group::SL_H;
  long m = 2;
  long genus = 2;
  std::uint64_t seed = 1;
  long trials = 200;
  double tolerance = 1e-9;
  long coeff_degree = 4;
  double disc_radius = kDefaultDiscRadius;
  Backend backend = Backend::Floating;
  Format format = Format::Json;
};

// ConfigError unless trials >= 1, tolerance > 0, m >= 1, genus >= 1,
// coeff_degree >= 0 and disc_radius > 0.
void validate(const SuiteConfig& config);

struct CheckRecord {
  std::string name;
  std::string identity;  // the relation being verified, in formula form
  long trials = 0;
  long failures = 0;
  double worst_residual = 0.0;
  std::optional<double> rate;  // statistical checks: pass iff rate >= 0.99

  bool ok() const { return rate ? *rate >= 0.99 : failures == 0; }
};

struct Report {
  SuiteConfig config;
  std::vector<CheckRecord> checks;
  std::optional<NumerologyReport> numerology;
  std::optional<SweepResult> sweep;
  int exit_status = 0;  // 0 iff every check (and the sweep) passed
};

enum class CheckSet { Matrix, Curve, Fiber, Numerology, Full };

// Deterministic given (config, set): per-trial seeds come from a fixed
// 64-bit mix of (seed, trial index). Honors SPECTRAL_LAB_THREADS.
Report run_suite(const SuiteConfig& config, CheckSet set = CheckSet::Full);

// Single-instance variants backing the --model-file / --curve-file paths.
Report run_model_checks(const SuiteConfig& config,
                        const HiggsModel<Complex>& model);
Report run_curve_checks(const SuiteConfig& config,
                        const PlaneCurve<Complex>& curve);
Report run_fiber_checks(const SuiteConfig& config,
                        const PlaneCurve<Complex>& curve);

// Stable-key-ordered JSON; doubles are emitted verbatim, non-finite
// residuals as the string "inf".
nlohmann::ordered_json report_to_json(const Report& report);
std::string report_to_text(const Report& report);
void emit_report(const Report& report, std::ostream& out);

// Curve serialization: {group, m, R, coefficients: [[ [re, im], ... ], ...]}
// with coefficients[j] the ascending z-coefficients of a_{j+1}.
nlohmann::ordered_json curve_to_json(const PlaneCurve<Complex>& curve);
PlaneCurve<Complex> curve_from_json(const nlohmann::json& j);

// Model serialization: {group, m, phi} for SL_H (skew phi block),
// {group, m, beta, gamma} for SO_STAR, {group, m, beta} for SP_MM; complex
// entries as [re, im] row-major nested arrays.
nlohmann::ordered_json model_to_json(const HiggsModel<Complex>& model);
HiggsModel<Complex> model_from_json(const nlohmann::json& j);

}  // namespace speclab
