#include "speclab/suite.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>
#include <utility>

#include "speclab/rng.hpp"
#include "speclab/spectrum.hpp"

namespace speclab {

const char* backend_name(Backend b) {
  return b == Backend::Exact ? "exact" : "floating";
}

Backend backend_from_name(const std::string& s) {
  if (s == "exact") return Backend::Exact;
  if (s == "floating") return Backend::Floating;
  throw ConfigError("unknown backend: " + s);
}

const char* format_name(Format f) {
  return f == Format::Json ? "json" : "text";
}

Format format_from_name(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "text") return Format::Text;
  throw ConfigError("unknown format: " + s);
}

void validate(const SuiteConfig& config) {
  if (config.m < 1) throw ConfigError("m must be >= 1");
  if (config.genus < 1) throw ConfigError("genus must be >= 1");
  if (config.trials < 1) throw ConfigError("trials must be >= 1");
  if (!(config.tolerance > 0)) throw ConfigError("tolerance must be > 0");
  if (config.coeff_degree < 0) throw ConfigError("coeff_degree must be >= 0");
  if (!(config.disc_radius > 0)) throw ConfigError("disc_radius must be > 0");
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double as_double(double r) { return r; }
double as_double(const Rational& r) { return r.get_d(); }

struct TrialCell {
  bool counted = false;
  bool failed = false;
  double residual = 0.0;
};

TrialCell cell(double residual, bool pass) {
  return TrialCell{true, !pass, residual};
}

struct CheckMeta {
  const char* name;
  const char* identity;
  bool statistical = false;  // aggregate as a rate instead of hard failures
};

long thread_budget(long trials) {
  long hw = long(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  if (const char* env = std::getenv("SPECTRAL_LAB_THREADS")) {
    char* end = nullptr;
    long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) hw = std::min(hw, cap);
  }
  return std::max(1L, std::min(hw, trials));
}

// Runs body(i) for i in [0, trials) on a small pool; results must be keyed
// by i so the aggregate is schedule-independent.
template <class Body>
void parallel_trials(long trials, Body&& body) {
  const long threads = thread_budget(trials);
  if (threads <= 1) {
    for (long i = 0; i < trials; ++i) body(i);
    return;
  }
  std::atomic<long> next{0};
  std::vector<std::thread> pool;
  pool.reserve(std::size_t(threads));
  for (long t = 0; t < threads; ++t) {
    pool.emplace_back([&]() {
      for (long i = next.fetch_add(1); i < trials; i = next.fetch_add(1))
        body(i);
    });
  }
  for (auto& th : pool) th.join();
}

// Any check the body did not reach before throwing counts as a failure.
template <std::size_t K, class Body>
std::vector<std::array<TrialCell, K>> run_trials(long trials,
                                                 const std::array<bool, K>& on,
                                                 Body&& body) {
  const std::size_t rows = std::size_t(trials);
  std::vector<std::array<TrialCell, K>> cells(rows);
  parallel_trials(trials, [&](long i) {
    auto& row = cells[std::size_t(i)];
    try {
      body(i, row);
    } catch (const std::exception&) {
      for (std::size_t k = 0; k < K; ++k)
        if (on[k] && !row[k].counted) row[k] = cell(kInf, false);
    }
  });
  return cells;
}

template <std::size_t K>
void aggregate(const std::vector<std::array<TrialCell, K>>& cells,
               const std::array<CheckMeta, K>& meta,
               std::vector<CheckRecord>& out) {
  for (std::size_t k = 0; k < K; ++k) {
    CheckRecord rec;
    rec.name = meta[k].name;
    rec.identity = meta[k].identity;
    for (const auto& row : cells) {
      if (!row[k].counted) continue;
      ++rec.trials;
      if (row[k].failed) ++rec.failures;
      rec.worst_residual = std::max(rec.worst_residual, row[k].residual);
    }
    if (rec.trials == 0) continue;
    if (meta[k].statistical)
      rec.rate = double(rec.trials - rec.failures) / double(rec.trials);
    out.push_back(std::move(rec));
  }
}

// --- matrix checks ---------------------------------------------------------

const std::array<CheckMeta, 4> kMatrixMeta = {{
    {"form-symmetry", "omega(Phi u, v) = omega(u, Phi v)"},
    {"pfaffian-square", "p(x)^2 = det(xI - Phi)"},
    {"annihilation", "p(Phi) = 0"},
    {"eigenvalue-pairing",
     "spectrum symmetric under lambda -> -lambda; iota carries E_lambda to "
     "E_{-lambda}"},
}};

template <class S>
void matrix_checks_on(const SuiteConfig& config, const HiggsModel<S>& model,
                      std::array<TrialCell, 4>& row) {
  using Traits = scalar_traits<S>;
  auto sym = check_form_symmetric(model.phi, model.space);
  row[0] = cell(as_double(sym), Traits::passes(sym, config.tolerance));

  Poly<S> p = pfaffian_char_poly(model.phi, model.space, config.tolerance);
  auto sq = verify_det_square(model.phi, p);
  row[1] = cell(as_double(sq), Traits::passes(sq, config.tolerance));
  auto ann = verify_annihilator(model.phi, p);
  row[2] = cell(as_double(ann), Traits::passes(ann, config.tolerance));

  if (model.group != Group::SL_H) {
    double worst = 0.0;
    for (const EigenPair& pr : involution_pairing(model))
      worst = std::max(worst, pr.residual);
    row[3] = cell(worst, worst <= config.tolerance);
  }
}

template <class S>
std::vector<CheckRecord> run_matrix_set(const SuiteConfig& config) {
  std::array<bool, 4> on = {true, true, true, config.group != Group::SL_H};
  auto cells = run_trials<4>(
      config.trials, on, [&config](long i, std::array<TrialCell, 4>& row) {
        HiggsModel<S> model = random_model<S>(
            config.group, int(config.m), trial_seed(config.seed, std::uint64_t(i)));
        matrix_checks_on(config, model, row);
      });
  std::vector<CheckRecord> out;
  aggregate(cells, kMatrixMeta, out);
  return out;
}

// --- curve checks ----------------------------------------------------------

const std::array<CheckMeta, 2> kCurveMeta = {{
    {"curve-smoothness",
     "generic coefficients give a smooth curve over the disc", true},
    {"fixed-point-count",
     "involution fixed points = zeros of a_m in the disc (argument "
     "principle)"},
}};

// Zeros inside |z| = radius, counted with multiplicity, by integrating the
// winding of p around the contour. nullopt if the contour passes too close
// to a zero at every attempted resolution.
std::optional<long> winding_root_count(const Poly<Complex>& p, double radius) {
  if (p.is_zero()) return std::nullopt;
  if (p.degree() == 0) return 0;
  double coeff_scale = p.max_coeff_mag();
  double floor = 1e-13 * coeff_scale *
                 std::pow(std::max(1.0, radius), double(p.degree()));
  long n = 1024;
  for (int iter = 0; iter < 6; ++iter, n *= 4) {
    bool ok = true;
    double total = 0.0;
    Complex prev = p.eval(Complex(radius, 0.0));
    if (std::abs(prev) < floor) return std::nullopt;
    for (long k = 1; k <= n && ok; ++k) {
      double theta = 2.0 * std::numbers::pi * double(k) / double(n);
      Complex cur = p.eval(std::polar(radius, theta));
      if (std::abs(cur) < floor) return std::nullopt;
      double dphi = std::arg(cur / prev);
      if (std::abs(dphi) > 1.5) ok = false;  // refine: step under pi/2
      total += dphi;
      prev = cur;
    }
    if (ok) return std::lround(total / (2.0 * std::numbers::pi));
  }
  return std::nullopt;
}

template <class S>
void curve_checks_on(const SuiteConfig& config, const PlaneCurve<S>& curve,
                     std::array<TrialCell, 2>& row) {
  (void)config;
  SmoothnessReport rep = smoothness_check(curve);
  row[0] = cell(0.0, rep.smooth);

  if (curve.kind() == CurveKind::EvenHalf) {
    long direct = 0;
    for (const RootCluster& rc : sigma_fixed_points(curve))
      direct += rc.multiplicity;
    std::optional<long> winding = winding_root_count(
        to_floating(curve.last_coefficient()), curve.disc_radius());
    if (!winding) {
      row[1] = cell(kInf, false);
    } else {
      long diff = std::labs(*winding - direct);
      row[1] = cell(double(diff), diff == 0);
    }
  }
}

template <class S>
std::vector<CheckRecord> run_curve_set(const SuiteConfig& config) {
  std::array<bool, 2> on = {true, config.group != Group::SL_H};
  auto cells = run_trials<2>(
      config.trials, on, [&config](long i, std::array<TrialCell, 2>& row) {
        PlaneCurve<S> curve = random_curve<S>(
            config.group, int(config.m), trial_seed(config.seed, std::uint64_t(i)),
            int(config.coeff_degree), config.disc_radius);
        curve_checks_on(config, curve, row);
      });
  std::vector<CheckRecord> out;
  aggregate(cells, kCurveMeta, out);
  return out;
}

// --- fiber checks ----------------------------------------------------------

const std::array<CheckMeta, 4> kFiberMeta = {{
    {"fiber-pairing",
     "x-multiplication is symmetric for the residue pairing; pairing "
     "nondegenerate"},
    {"multiplication-roundtrip",
     "pfaffian char poly of x-multiplication = p(., z0)"},
    {"split-plus",
     "epsilon = +1: summands isotropic, cross pairing nondegenerate"},
    {"split-minus",
     "epsilon = -1: summands orthogonal, diagonal blocks nondegenerate"},
}};

struct DrawnFiber {
  Complex z0;
  FiberModel<Complex> fiber;
};

// Sample regular points in the disc until the fiber is simple with
// comfortably separated sheets, so the residue weights stay bounded.
template <class S>
std::optional<DrawnFiber> draw_regular_fiber(const PlaneCurve<S>& curve,
                                             SplitMix64& rng) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    double r = curve.disc_radius() * (0.15 + 0.35 * rng.next_unit());
    double theta = 2.0 * std::numbers::pi * rng.next_unit();
    Complex z0 = std::polar(r, theta);
    FiberRoots fr = fiber_roots(curve, z0);
    if (!fr.regular) continue;
    double lmax = 0.0;
    for (const RootCluster& rc : fr.clusters)
      lmax = std::max(lmax, std::abs(rc.value));
    double minsep = kInf;
    for (std::size_t i = 0; i < fr.clusters.size(); ++i)
      for (std::size_t j = i + 1; j < fr.clusters.size(); ++j)
        minsep = std::min(
            minsep, std::abs(fr.clusters[i].value - fr.clusters[j].value));
    if (fr.clusters.size() > 1 && minsep < 1e-3 * (1.0 + lmax)) continue;
    return DrawnFiber{z0, assemble_fiber(curve, z0)};
  }
  return std::nullopt;
}

template <class S>
void fiber_checks_on(const SuiteConfig& config, const PlaneCurve<S>& curve,
                     SplitMix64& rng, std::array<TrialCell, 4>& row) {
  std::optional<DrawnFiber> drawn = draw_regular_fiber(curve, rng);
  if (!drawn) {
    row[0] = row[1] = cell(kInf, false);
    if (config.group != Group::SL_H) row[2] = row[3] = cell(kInf, false);
    return;
  }
  const FiberModel<Complex>& fiber = drawn->fiber;

  MultOperator<Complex> mo = multiplication_operator(fiber);
  double wmax = 0.0, wmin = kInf;
  for (const Complex& w : fiber.weights) {
    wmax = std::max(wmax, std::abs(w));
    wmin = std::min(wmin, std::abs(w));
  }
  bool nondeg =
      wmin >= kNondegFactor * config.tolerance * std::max(1.0, wmax);
  row[0] = cell(mo.symmetry_residual,
                mo.symmetry_residual <= config.tolerance && nondeg);

  SymplecticSpace<Complex> space(gram_matrix(fiber));
  Poly<Complex> pc = pfaffian_char_poly(mo.op, space, config.tolerance);
  Poly<Complex> target = fiber.p_z0;
  double num = 0.0, den = 1.0;
  int deg = std::max(pc.degree(), target.degree());
  for (int k = 0; k <= deg; ++k) {
    num = std::max(num, std::abs(pc.coeff(k) - target.coeff(k)));
    den = std::max(den, std::abs(target.coeff(k)));
  }
  double rel = num / den;
  row[1] = cell(rel, rel <= config.tolerance);

  if (fiber.paired) {
    int pairs = int(fiber.sheets.size() / 2);
    for (int epsilon : {+1, -1}) {
      EquivariantLift<Complex> lift =
          random_unitary_lift(epsilon, pairs, rng);
      EquivariantSplit<Complex> split =
          equivariant_split(fiber, lift, config.tolerance);
      bool pass = split.verdict == (epsilon == +1
                                        ? SplitVerdict::DoubleLagrangian
                                        : SplitVerdict::OrthogonalSum);
      double residual =
          epsilon == +1 ? split.intra_residual : split.cross_residual;
      row[epsilon == +1 ? 2 : 3] = cell(residual, pass);
    }
  }
}

template <class S>
std::vector<CheckRecord> run_fiber_set(const SuiteConfig& config) {
  std::array<bool, 4> on = {true, true, config.group != Group::SL_H,
                            config.group != Group::SL_H};
  auto cells = run_trials<4>(
      config.trials, on, [&config](long i, std::array<TrialCell, 4>& row) {
        std::uint64_t s = trial_seed(config.seed, std::uint64_t(i));
        PlaneCurve<S> curve =
            random_curve<S>(config.group, int(config.m), s,
                            int(config.coeff_degree), config.disc_radius);
        SplitMix64 rng(trial_seed(s, 1));
        fiber_checks_on(config, curve, rng, row);
      });
  std::vector<CheckRecord> out;
  aggregate(cells, kFiberMeta, out);
  return out;
}

// --- assembly --------------------------------------------------------------

void finalize(Report& report) {
  std::stable_partition(report.checks.begin(), report.checks.end(),
                        [](const CheckRecord& r) { return !r.ok(); });
  bool pass = true;
  for (const CheckRecord& r : report.checks) pass = pass && r.ok();
  if (report.sweep && !report.sweep->pass) pass = false;
  report.exit_status = pass ? 0 : 1;
}

}  // namespace

Report run_suite(const SuiteConfig& config, CheckSet set) {
  validate(config);
  Report report;
  report.config = config;
  const bool full = set == CheckSet::Full;
  auto append = [&report](std::vector<CheckRecord> recs) {
    for (auto& r : recs) report.checks.push_back(std::move(r));
  };
  if (full || set == CheckSet::Matrix)
    append(config.backend == Backend::Exact ? run_matrix_set<GaussQ>(config)
                                            : run_matrix_set<Complex>(config));
  if (full || set == CheckSet::Curve)
    append(config.backend == Backend::Exact ? run_curve_set<GaussQ>(config)
                                            : run_curve_set<Complex>(config));
  if (full || set == CheckSet::Fiber)
    append(config.backend == Backend::Exact ? run_fiber_set<GaussQ>(config)
                                            : run_fiber_set<Complex>(config));
  if (full || set == CheckSet::Numerology) {
    report.numerology = moduli_dimensions(config.group, config.m, config.genus);
    report.sweep = numerology_sweep();
  }
  finalize(report);
  return report;
}

Report run_model_checks(const SuiteConfig& config,
                        const HiggsModel<Complex>& model) {
  validate(config);
  Report report;
  report.config = config;
  std::array<bool, 4> on = {true, true, true, model.group != Group::SL_H};
  auto cells = run_trials<4>(1, on, [&](long, std::array<TrialCell, 4>& row) {
    matrix_checks_on(config, model, row);
  });
  aggregate(cells, kMatrixMeta, report.checks);
  finalize(report);
  return report;
}

Report run_curve_checks(const SuiteConfig& config,
                        const PlaneCurve<Complex>& curve) {
  validate(config);
  Report report;
  report.config = config;
  std::array<bool, 2> on = {true, curve.kind() == CurveKind::EvenHalf};
  auto cells = run_trials<2>(1, on, [&](long, std::array<TrialCell, 2>& row) {
    curve_checks_on(config, curve, row);
  });
  aggregate(cells, kCurveMeta, report.checks);
  finalize(report);
  return report;
}

Report run_fiber_checks(const SuiteConfig& config,
                        const PlaneCurve<Complex>& curve) {
  validate(config);
  Report report;
  report.config = config;
  bool even = curve.kind() == CurveKind::EvenHalf;
  std::array<bool, 4> on = {true, true, even, even};
  auto cells = run_trials<4>(1, on, [&](long, std::array<TrialCell, 4>& row) {
    SplitMix64 rng(trial_seed(config.seed, 1));
    fiber_checks_on(config, curve, rng, row);
  });
  aggregate(cells, kFiberMeta, report.checks);
  finalize(report);
  return report;
}

// --- serialization ---------------------------------------------------------

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json big_to_json(const BigInt& v) {
  if (v.fits_slong_p()) {
    long s = v.get_si();
    if (s <= (1L << 53) && s >= -(1L << 53)) return s;
  }
  return v.get_str();
}

ordered_json double_to_json(double d) {
  if (!std::isfinite(d)) return "inf";
  return d;
}

ordered_json config_to_json(const SuiteConfig& c) {
  ordered_json j;
  j["group"] = group_name(c.group);
  j["m"] = c.m;
  j["genus"] = c.genus;
  j["seed"] = c.seed;
  j["trials"] = c.trials;
  j["tolerance"] = c.tolerance;
  j["coeff_degree"] = c.coeff_degree;
  j["disc_radius"] = c.disc_radius;
  j["backend"] = backend_name(c.backend);
  j["format"] = format_name(c.format);
  return j;
}

ordered_json check_to_json(const CheckRecord& r) {
  ordered_json j;
  j["name"] = r.name;
  j["identity"] = r.identity;
  j["trials"] = r.trials;
  j["failures"] = r.failures;
  j["worst_residual"] = double_to_json(r.worst_residual);
  j["rate"] = r.rate ? ordered_json(*r.rate) : ordered_json(nullptr);
  j["ok"] = r.ok();
  return j;
}

ordered_json numerology_to_json(const NumerologyReport& n,
                                const std::optional<SweepResult>& sweep) {
  ordered_json j;
  j["group"] = group_name(n.group);
  j["m"] = n.m;
  j["g"] = n.g;
  j["g_s"] = big_to_json(n.g_s);
  j["g_sbar"] = n.g_sbar ? big_to_json(*n.g_sbar) : ordered_json(nullptr);
  j["deg_e"] = big_to_json(n.deg_e);
  j["base_dim"] = big_to_json(n.base_dim);
  j["fiber_dim"] = big_to_json(n.fiber_dim);
  j["parabolic_dim"] = big_to_json(n.parabolic_dim);
  j["total_dim"] = big_to_json(n.total_dim);
  j["complex_group_dim"] = big_to_json(complex_group_dim(n.group, n.m));
  j["milnor_wood_bound"] = big_to_json(n.milnor_wood_bound);
  j["component_count"] = big_to_json(n.component_count);
  ordered_json samples = ordered_json::array();
  for (const DegreeSample& s : n.degree_samples) {
    ordered_json row;
    row["M"] = s.big_m;
    row["deg_l"] = s.deg_l;
    row["deg_w"] = big_to_json(s.deg_w);
    row["odd_M"] = (s.big_m % 2) != 0;
    samples.push_back(std::move(row));
  }
  j["degree_samples"] = std::move(samples);
  j["degenerate"] = n.degenerate;
  if (sweep) {
    ordered_json sw;
    sw["pass"] = sweep->pass;
    sw["identities_checked"] = sweep->checks;
    sw["first_failure"] = sweep->first_failure;
    j["sweep"] = std::move(sw);
  }
  return j;
}

std::string short_double(double d) {
  if (!std::isfinite(d)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", d);
  return buf;
}

}  // namespace

ordered_json report_to_json(const Report& report) {
  ordered_json j;
  j["config"] = config_to_json(report.config);
  ordered_json checks = ordered_json::array();
  for (const CheckRecord& r : report.checks) checks.push_back(check_to_json(r));
  j["checks"] = std::move(checks);
  j["numerology"] = report.numerology
                        ? numerology_to_json(*report.numerology, report.sweep)
                        : ordered_json(nullptr);
  j["exit_status"] = report.exit_status;
  return j;
}

std::string report_to_text(const Report& report) {
  std::ostringstream out;
  const SuiteConfig& c = report.config;
  out << "spectral-lab report\n";
  out << "group=" << group_name(c.group) << " m=" << c.m << " genus=" << c.genus
      << " seed=" << c.seed << " trials=" << c.trials
      << " tolerance=" << short_double(c.tolerance)
      << " coeff_degree=" << c.coeff_degree
      << " disc_radius=" << short_double(c.disc_radius)
      << " backend=" << backend_name(c.backend) << "\n\n";
  for (const CheckRecord& r : report.checks) {
    out << (r.ok() ? "[ ok ] " : "[FAIL] ") << r.name << "  trials "
        << r.trials << "  failures " << r.failures << "  worst "
        << short_double(r.worst_residual);
    if (r.rate) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.4f", *r.rate);
      out << "  rate " << buf;
    }
    out << "\n       " << r.identity << "\n";
  }
  if (report.numerology) {
    const NumerologyReport& n = *report.numerology;
    out << "\nnumerology " << group_name(n.group) << " m=" << n.m
        << " g=" << n.g << (n.degenerate ? " (degenerate)" : "") << "\n";
    out << "  g_S=" << n.g_s.get_str();
    if (n.g_sbar) out << "  g_Sbar=" << n.g_sbar->get_str();
    out << "  deg_E=" << n.deg_e.get_str() << "\n";
    out << "  dims: base=" << n.base_dim.get_str()
        << " fiber=" << n.fiber_dim.get_str()
        << " parabolic=" << n.parabolic_dim.get_str()
        << " total=" << n.total_dim.get_str() << "\n";
    out << "  milnor_wood_bound=" << n.milnor_wood_bound.get_str()
        << "  components=" << n.component_count.get_str() << "\n";
    for (const DegreeSample& s : n.degree_samples)
      out << "  M=" << s.big_m << " deg_L=" << s.deg_l
          << " -> deg_W=" << s.deg_w.get_str()
          << (s.big_m % 2 != 0 ? " (M odd: smooth, connected)" : "") << "\n";
  }
  if (report.sweep)
    out << "sweep: " << (report.sweep->pass ? "pass" : "FAIL") << " ("
        << report.sweep->checks << " identities"
        << (report.sweep->pass ? "" : "; first: " + report.sweep->first_failure)
        << ")\n";
  out << "exit status: " << report.exit_status << "\n";
  return out.str();
}

void emit_report(const Report& report, std::ostream& out) {
  if (report.config.format == Format::Json)
    out << report_to_json(report).dump(2) << "\n";
  else
    out << report_to_text(report);
}

namespace {

ordered_json complex_to_json(const Complex& z) {
  return ordered_json::array({z.real(), z.imag()});
}

Complex complex_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2)
    throw ConfigError("expected a complex number as [re, im]");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

ordered_json matrix_to_json(const MatrixXc& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

MatrixXc matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty())
    throw ConfigError("expected a nonempty matrix");
  const Eigen::Index rows = Eigen::Index(j.size());
  const Eigen::Index cols = Eigen::Index(j[0].size());
  MatrixXc m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (Eigen::Index(j[std::size_t(i)].size()) != cols)
      throw ConfigError("ragged matrix rows");
    for (Eigen::Index k = 0; k < cols; ++k)
      m(i, k) = complex_from_json(j[std::size_t(i)][std::size_t(k)]);
  }
  return m;
}

}  // namespace

ordered_json curve_to_json(const PlaneCurve<Complex>& curve) {
  ordered_json j;
  j["group"] = group_name(curve.group());
  j["m"] = curve.m();
  j["R"] = curve.disc_radius();
  ordered_json coeffs = ordered_json::array();
  for (const Poly<Complex>& a : curve.coefficients()) {
    ordered_json one = ordered_json::array();
    for (const Complex& c : a.coeffs()) one.push_back(complex_to_json(c));
    coeffs.push_back(std::move(one));
  }
  j["coefficients"] = std::move(coeffs);
  return j;
}

PlaneCurve<Complex> curve_from_json(const nlohmann::json& j) {
  if (!j.contains("group") || !j.contains("m") || !j.contains("coefficients"))
    throw ConfigError("curve file needs group, m, coefficients");
  Group group = group_from_name(j["group"].get<std::string>());
  int m = j["m"].get<int>();
  double radius = j.value("R", kDefaultDiscRadius);
  std::vector<Poly<Complex>> a;
  for (const auto& one : j["coefficients"]) {
    std::vector<Complex> c;
    for (const auto& entry : one) c.push_back(complex_from_json(entry));
    a.push_back(Poly<Complex>(std::move(c)));
  }
  return curve_from_coefficients(group, m, std::move(a), radius);
}

ordered_json model_to_json(const HiggsModel<Complex>& model) {
  ordered_json j;
  j["group"] = group_name(model.group);
  j["m"] = model.m;
  if (model.group == Group::SL_H)
    j["phi"] = matrix_to_json(MatrixXc(model.space.omega() * model.phi));
  else if (model.group == Group::SO_STAR) {
    j["beta"] = matrix_to_json(model.beta);
    j["gamma"] = matrix_to_json(model.gamma);
  } else {
    j["beta"] = matrix_to_json(model.beta);
  }
  return j;
}

HiggsModel<Complex> model_from_json(const nlohmann::json& j) {
  if (!j.contains("group") || !j.contains("m"))
    throw ConfigError("model file needs group and m");
  Group group = group_from_name(j["group"].get<std::string>());
  int m = j["m"].get<int>();
  if (m < 1) throw ConfigError("model file: m must be >= 1");
  switch (group) {
    case Group::SL_H: {
      if (!j.contains("phi")) throw ConfigError("SL_H model needs phi");
      MatrixXc phi = matrix_from_json(j["phi"]);
      if (phi.rows() != 2 * m)
        throw ConfigError("model file: phi size does not match m");
      return build_sl_quaternion(phi, standard_symplectic<Complex>(2 * m));
    }
    case Group::SO_STAR: {
      if (!j.contains("beta") || !j.contains("gamma"))
        throw ConfigError("SO_STAR model needs beta and gamma");
      MatrixXc beta = matrix_from_json(j["beta"]);
      MatrixXc gamma = matrix_from_json(j["gamma"]);
      if (beta.rows() != 2 * m)
        throw ConfigError("model file: block size does not match m");
      return build_so_star(beta, gamma);
    }
    case Group::SP_MM: {
      if (!j.contains("beta")) throw ConfigError("SP_MM model needs beta");
      MatrixXc beta = matrix_from_json(j["beta"]);
      if (beta.rows() != 2 * m)
        throw ConfigError("model file: block size does not match m");
      return build_sp_mm(beta, standard_symplectic<Complex>(2 * m),
                         standard_symplectic<Complex>(2 * m));
    }
  }
  throw ConfigError("model file: unknown group");
}

}  // namespace speclab
