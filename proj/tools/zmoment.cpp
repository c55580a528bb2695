// Command-line front end for the zmoment library.
#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "zmoment/zmoment.hpp"

namespace {

using namespace zmoment;
using json = nlohmann::ordered_json;

enum ExitCode { kOk = 0, kInvalid = 2, kBudget = 3, kDegraded = 4 };

struct Global {
  unsigned threads = 1;
  std::uint64_t seed = 20240101;
  double budget = 4e9;
  std::string out;
  std::string format = "kv";
  bool strict = false;
};

// Collects rows for CSV, records for kv and objects for JSON, then renders
// them in the requested format.
class Output {
 public:
  explicit Output(const Global& g) : g_(g) {}

  void header(std::vector<std::string> cols) { header_ = std::move(cols); }
  void row(std::vector<std::string> fields) { rows_.push_back(std::move(fields)); }
  void report(const MomentReport& r) { reports_.push_back(r); }
  void note(const std::string& key, const std::string& value) { notes_.emplace_back(key, value); }

  std::string render() const {
    std::ostringstream os;
    if (g_.format == "json") {
      json doc = json::object();
      for (const auto& [k, v] : notes_) doc[k] = v;
      if (!reports_.empty()) {
        json arr = json::array();
        for (const auto& r : reports_) arr.push_back(to_json(r));
        doc["reports"] = arr;
      }
      if (!rows_.empty()) {
        json arr = json::array();
        for (const auto& row : rows_) {
          json obj = json::object();
          for (std::size_t i = 0; i < row.size() && i < header_.size(); ++i) obj[header_[i]] = row[i];
          arr.push_back(obj);
        }
        doc["rows"] = arr;
      }
      os << doc.dump(2) << '\n';
    } else if (g_.format == "csv") {
      if (!reports_.empty()) {
        os << csv_row({"label", "value", "t_integral", "pair_count", "summation_residual", "error_estimate", "panels",
                       "imag_part", "degraded"})
           << '\n';
        for (const auto& r : reports_) {
          os << csv_row({r.label, format_double(r.value), format_double(r.t_integral), std::to_string(r.pair_count),
                         format_double(r.summation_residual), format_double(r.error_estimate),
                         std::to_string(r.panels), format_double(r.imag_part), r.degraded ? "true" : "false"})
             << '\n';
        }
      }
      if (!rows_.empty()) {
        os << csv_row(header_) << '\n';
        for (const auto& row : rows_) os << csv_row(row) << '\n';
      }
      for (const auto& [k, v] : notes_) os << "# " << k << '=' << v << '\n';
    } else {
      for (const auto& [k, v] : notes_) os << k << '=' << v << '\n';
      for (std::size_t i = 0; i < reports_.size(); ++i) {
        if (i || !notes_.empty()) os << '\n';
        os << to_kv(reports_[i]);
      }
      if (!rows_.empty()) {
        if (!reports_.empty() || !notes_.empty()) os << '\n';
        os << csv_row(header_) << '\n';
        for (const auto& row : rows_) os << csv_row(row) << '\n';
      }
    }
    return os.str();
  }

  void emit() const {
    const std::string text = render();
    std::cout << text;
    if (!g_.out.empty()) {
      std::ofstream f(g_.out);
      if (!f) throw std::invalid_argument("cannot write output file: " + g_.out);
      f << text;
    }
  }

 private:
  static json to_json(const MomentReport& r) {
    json j = json::object();
    j["label"] = r.label;
    j["value"] = r.value;
    json pieces = json::object();
    for (const auto& p : r.pieces) pieces[p.name] = p.value;
    j["pieces"] = pieces;
    j["t_integral"] = r.t_integral;
    j["pair_count"] = r.pair_count;
    j["summation_residual"] = r.summation_residual;
    j["error_estimate"] = r.error_estimate;
    j["panels"] = r.panels;
    j["imag_part"] = r.imag_part;
    j["degraded"] = r.degraded;
    json diag = json::object();
    for (const auto& [k, v] : r.diagnostics) diag[k] = v;
    j["diagnostics"] = diag;
    return j;
  }

  const Global& g_;
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
  std::vector<MomentReport> reports_;
  std::vector<std::pair<std::string, std::string>> notes_;
};

std::string fmt(double x) { return format_double(x); }

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

MomentConfig moment_config(const Global& g) {
  MomentConfig cfg;
  cfg.pair_budget = g.budget;
  cfg.par.threads = g.threads;
  return cfg;
}

// ---------------------------------------------------------------------------
// Coefficient selection shared by `moment` and `mollifier`.

struct CoeffOptions {
  std::string family = "unit";
  std::string file;
  double theta = 0.5;
  std::size_t N = 0;
  double shift = 0.0;
  double log_scale = 0.0;
};

void add_coeff_options(CLI::App* app, CoeffOptions& o) {
  app->add_option("--coeffs", o.family, "unit | conrey | feng | two_piece | file")
      ->check(CLI::IsMember({"unit", "conrey", "feng", "two_piece", "file"}));
  app->add_option("--coeff-file", o.file, "two-column file of n a_n pairs (with --coeffs file)");
  app->add_option("--theta", o.theta, "mollifier length exponent, N = floor(T^theta / log T)");
  app->add_option("--N", o.N, "explicit mollifier length (overrides --theta)");
  app->add_option("--shift", o.shift, "sigma0 - 1/2 weight applied at build time");
  app->add_option("--log-scale", o.log_scale, "Feng normaliser (default log T)");
}

CoefficientTable build_coefficients(const CoeffOptions& o, double T) {
  if (o.family == "unit") return CoefficientTable::delta(1);
  if (o.family == "file") {
    require(!o.file.empty(), "--coeffs file needs --coeff-file");
    return load_coefficient_table(o.file);
  }
  require(T > 1.0, "--T must exceed 1");
  require(o.theta > 0.0 && o.theta < 1.0, "--theta must lie in (0, 1)");
  const std::size_t N = o.N ? o.N : mollifier_length(T, o.theta);
  const double log_scale = o.log_scale > 0.0 ? o.log_scale : std::log(T);
  const std::vector<UnitPolynomial> fp = {presets::feng2011_P2(), presets::feng2011_P3()};
  if (o.family == "conrey") return conrey_coeffs(N, presets::feng2011_P1(), o.shift);
  if (o.family == "feng") return feng_coeffs(N, fp, presets::kFeng2011K, o.shift, log_scale);
  return two_piece_coeffs(conrey_coeffs(N, presets::feng2011_P1(), o.shift),
                          feng_coeffs(N, fp, presets::kFeng2011K, o.shift, log_scale));
}

// ---------------------------------------------------------------------------

struct MomentOptions {
  CoeffOptions coeffs;
  std::optional<double> T;
  double alpha = 0.0, beta = 0.0;
  std::string mode = "auto";
  bool compare = false;
  double rel_tol = 1e-8;
};

int cmd_moment(const Global& g, const MomentOptions& o) {
  require(o.T.has_value(), "moment: --T is required");
  const double T = *o.T;
  require(std::isfinite(T) && T > kTwoPi, "moment: --T must exceed 2 pi");
  const CoefficientTable c = build_coefficients(o.coeffs, T);
  const ShiftPair sh(o.alpha, o.beta, std::log(T));
  const MomentConfig cfg = moment_config(g);
  std::string mode = o.mode;
  if (mode == "auto") mode = sh.sum() == 0.0 ? "jet" : "pointwise";

  Output out(g);
  bool degraded = false;
  MomentReport main;
  if (mode == "limit") {
    require(o.alpha == 0.0 && o.beta == 0.0, "moment: --mode limit needs alpha = beta = 0");
    main = main_term_limit(c, T, cfg);
  } else if (mode == "quadrature") {
    QuadratureControl qc;
    qc.rel_tol = o.rel_tol;
    qc.par.threads = g.threads;
    main = quadrature_I(c, sh, T, qc);
  } else {
    main = main_term_I(c, sh, T, mode == "jet" ? EvalMode::jet : EvalMode::pointwise, cfg);
  }
  degraded = degraded || main.degraded;
  out.report(main);
  if (o.compare && mode != "quadrature") {
    QuadratureControl qc;
    qc.rel_tol = o.rel_tol;
    qc.par.threads = g.threads;
    const MomentReport q = quadrature_I(c, sh, T, qc);
    degraded = degraded || q.degraded;
    out.report(q);
    out.note("relative_deviation", fmt(std::abs(main.value - q.value) / std::abs(q.value)));
  }
  out.emit();
  return (g.strict && degraded) ? kDegraded : kOk;
}

struct KappaOptions {
  std::string preset = "feng2011";
  std::vector<double> T;
  std::optional<double> R, theta1, theta2, log_scale;
  int jet_order = 12;
};

int cmd_kappa(const Global& g, const KappaOptions& o) {
  require(!o.T.empty(), "kappa: --T is required");
  Output out(g);
  out.header({"T", "N1", "N2", "E_value", "kappa_est"});
  for (double T : o.T) {
    require(std::isfinite(T) && T > kTwoPi, "kappa: --T must exceed 2 pi");
    KappaConfig cfg = o.preset == "trivial" ? KappaConfig::trivial_mollifier(T) : KappaConfig::feng2011(T);
    if (o.R) cfg.R = *o.R;
    if (o.theta1) cfg.theta1 = *o.theta1;
    if (o.theta2) cfg.theta2 = *o.theta2;
    if (o.log_scale) cfg.log_scale = *o.log_scale;
    require(cfg.theta1 > 0.0 && cfg.theta1 < 1.0 && cfg.theta2 > 0.0 && cfg.theta2 < 1.0,
            "kappa: theta values must lie in (0, 1)");
    cfg.jet_order = o.jet_order;
    cfg.moment = moment_config(g);
    const KappaReport r = kappa_lower_bound(cfg);
    out.row(kappa_csv_fields(r));
  }
  out.note("normalization", "smoothed_mean");
  out.emit();
  return kOk;
}

struct KloostermanOptions {
  bool weil = false, bilinear = false, trilinear = false;
  std::int64_t cmax = 2000, exhaustive = 100;
  std::uint64_t random = 100000;
  std::int64_t size = 64, rho = 1;
  std::size_t trials = 100;
  std::vector<std::int64_t> complete;
};

int cmd_kloosterman(const Global& g, const KloostermanOptions& o) {
  Output out(g);
  int rc = kOk;
  require(o.weil || o.bilinear || o.trilinear || !o.complete.empty(),
          "kloosterman: choose --weil, --bilinear, --trilinear or --complete");
  if (!o.complete.empty()) {
    require(o.complete.size() == 3, "kloosterman: --complete takes a b c");
    const KloostermanRecord r = complete_kloosterman(o.complete[0], o.complete[1], o.complete[2]);
    out.header({"a", "b", "c", "re", "im", "weil_bound", "satisfied"});
    out.row({std::to_string(r.a), std::to_string(r.b), std::to_string(r.c), fmt(r.value.real()), fmt(r.value.imag()),
             fmt(r.weil_bound), r.satisfied ? "true" : "false"});
  } else if (o.weil) {
    require(o.cmax >= 1 && o.cmax <= 100000, "kloosterman: --cmax must lie in [1, 1e5]");
    const WeilSummary s = weil_campaign(o.exhaustive, o.cmax, o.random, g.seed);
    out.header({"exhaustive_cmax", "cmax", "checked", "failures", "max_ratio", "seed"});
    out.row({std::to_string(o.exhaustive), std::to_string(o.cmax), std::to_string(s.checked),
             std::to_string(s.failures), fmt(s.max_ratio), std::to_string(g.seed)});
    if (s.failures) rc = 1;
  } else {
    require(o.size >= 1, "kloosterman: --size must be >= 1");
    require(o.rho >= 1 && o.rho <= 16, "kloosterman: --rho must lie in [1, 16]");
    const Parallelism par{g.threads};
    const auto reports = o.bilinear ? bilinear_campaign(o.size, o.trials, g.seed, par)
                                    : trilinear_campaign(o.size, o.rho, o.trials, g.seed, par);
    out.header({"kind", "size", "rho", "trial", "lhs", "rhs", "ratio", "seed"});
    for (std::size_t i = 0; i < reports.size(); ++i) {
      const auto& r = reports[i];
      out.row({o.bilinear ? "bilinear" : "trilinear", std::to_string(o.size), std::to_string(o.bilinear ? 0 : o.rho),
               std::to_string(i), fmt(r.lhs), fmt(r.rhs), fmt(r.ratio), std::to_string(r.seed)});
    }
  }
  out.emit();
  return rc;
}

struct AfeOptions {
  std::vector<double> t;
  double alpha = 0.0, beta = 0.0;
  std::size_t truncation = 0;
};

int cmd_afe(const Global& g, const AfeOptions& o) {
  require(!o.t.empty(), "afe: --t is required");
  Output out(g);
  out.header({"t", "alpha", "beta", "truncation", "lhs_re", "lhs_im", "residual", "relative"});
  bool degraded = false;
  for (double t : o.t) {
    require(t >= 50.0 && t <= 5000.0, "afe: --t must lie in [50, 5000]");
    const ShiftPair sh(o.alpha, o.beta, std::log(t));
    const Parallelism par{g.threads};
    const AfeReport r = o.truncation ? afe_residual(t, sh, o.truncation, par) : afe_residual(t, sh, par);
    degraded = degraded || r.degraded;
    out.row({fmt(t), fmt(o.alpha), fmt(o.beta), std::to_string(r.truncation), fmt(r.lhs.real()), fmt(r.lhs.imag()),
             fmt(r.residual), fmt(r.relative)});
  }
  out.emit();
  return (g.strict && degraded) ? kDegraded : kOk;
}

struct MollifierOptions {
  CoeffOptions coeffs;
  std::optional<double> T;
};

int cmd_mollifier(const Global& g, const MollifierOptions& o) {
  CoeffOptions c = o.coeffs;
  if (c.family == "unit") c.family = "conrey";
  require(o.T.has_value() || c.family == "file", "mollifier: --T is required");
  const CoefficientTable t = build_coefficients(c, o.T.value_or(0.0));
  Output out(g);
  out.note("kind", to_string(t.kind()));
  out.note("length", std::to_string(t.length()));
  out.note("sigma0_shift", fmt(t.sigma0_shift()));
  out.note("growth_constant", fmt(t.growth_constant()));
  out.header({"n", "a_n"});
  for (std::size_t n = 1; n <= t.length(); ++n) out.row({std::to_string(n), fmt(t[n])});
  out.emit();
  return kOk;
}

struct ArithOptions {
  std::string function = "mobius";
  std::size_t limit = 100;
  int k = 1;
};

int cmd_arith(const Global& g, const ArithOptions& o) {
  require(o.limit >= 1 && o.limit <= 10'000'000, "arith: --limit must lie in [1, 1e7]");
  require(o.k >= 0 && o.k <= 8, "arith: --k must lie in [0, 8]");
  ArithTable t = o.function == "mobius"        ? sieve_mobius(o.limit)
                 : o.function == "von_mangoldt" ? sieve_von_mangoldt(o.limit)
                                                : mu_lambda_power(o.k, o.limit);
  Output out(g);
  out.note("kind", to_string(t.kind()));
  out.header({"n", "value"});
  for (std::size_t n = 1; n <= t.limit(); ++n) out.row({std::to_string(n), fmt(t[n])});
  out.emit();
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mollified twisted second moment workbench"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value configuration file; explicit flags take precedence");

  Global g;
  app.add_option("--threads", g.threads, "worker threads")->check(CLI::Range(1u, 1024u));
  app.add_option("--seed", g.seed, "master seed for randomized campaigns");
  app.add_option("--budget", g.budget, "pair budget for main-term sums")->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "also write the output to this file");
  app.add_option("--format", g.format, "kv | csv | json")->check(CLI::IsMember({"kv", "csv", "json"}));
  app.add_flag("--strict", g.strict, "exit 4 when a result is flagged as degraded");

  MomentOptions mo;
  auto* moment = app.add_subcommand("moment", "main-term and quadrature evaluation of I(alpha, beta)");
  add_coeff_options(moment, mo.coeffs);
  moment->add_option("--T", mo.T, "height T");
  moment->add_option("--alpha", mo.alpha, "shift alpha");
  moment->add_option("--beta", mo.beta, "shift beta");
  moment->add_option("--mode", mo.mode, "auto | pointwise | jet | limit | quadrature")
      ->check(CLI::IsMember({"auto", "pointwise", "jet", "limit", "quadrature"}));
  moment->add_flag("--compare", mo.compare, "also run the quadrature oracle and report the deviation");
  moment->add_option("--rel-tol", mo.rel_tol, "quadrature relative tolerance")->check(CLI::PositiveNumber);

  KappaOptions ko;
  auto* kappa = app.add_subcommand("kappa", "critical-line proportion estimate");
  kappa->add_option("--preset", ko.preset, "feng2011 | trivial")->check(CLI::IsMember({"feng2011", "trivial"}));
  kappa->add_option("--T", ko.T, "one or more heights");
  kappa->add_option("--R", ko.R, "R in sigma0 = 1/2 - R / log T");
  kappa->add_option("--theta1", ko.theta1, "Conrey piece length exponent");
  kappa->add_option("--theta2", ko.theta2, "Feng piece length exponent");
  kappa->add_option("--log-scale", ko.log_scale, "Feng normaliser (default log T)");
  kappa->add_option("--jet-order", ko.jet_order, "total jet order")->check(CLI::Range(0, 38));

  KloostermanOptions klo;
  auto* kl = app.add_subcommand("kloosterman", "Kloosterman sums, Weil certificates and bilinear measurements");
  kl->add_flag("--weil", klo.weil, "Weil-bound certificate campaign");
  kl->add_flag("--bilinear", klo.bilinear, "bilinear sum ratio campaign");
  kl->add_flag("--trilinear", klo.trilinear, "trilinear sum ratio campaign");
  kl->add_option("--cmax", klo.cmax, "largest modulus for random triples");
  kl->add_option("--exhaustive", klo.exhaustive, "check every (a, b) for c up to this");
  kl->add_option("--random", klo.random, "number of random triples");
  kl->add_option("--size", klo.size, "block size for the bilinear and trilinear campaigns");
  kl->add_option("--rho", klo.rho, "rho for the trilinear campaign");
  kl->add_option("--trials", klo.trials, "number of trials");
  kl->add_option("--complete", klo.complete, "evaluate S(a, b; c)")->expected(3);

  AfeOptions ao;
  auto* afe = app.add_subcommand("afe", "approximate functional equation residuals");
  afe->add_option("--t", ao.t, "one or more heights in [50, 5000]");
  afe->add_option("--alpha", ao.alpha, "shift alpha");
  afe->add_option("--beta", ao.beta, "shift beta");
  afe->add_option("--truncation", ao.truncation, "m1 m2 cutoff (default adaptive)");

  MollifierOptions molo;
  auto* mol = app.add_subcommand("mollifier", "dump a coefficient table");
  add_coeff_options(mol, molo.coeffs);
  mol->add_option("--T", molo.T, "height T used for the length and the Feng normaliser");

  ArithOptions aro;
  auto* ar = app.add_subcommand("arith", "dump an arithmetic function table");
  ar->add_option("--function", aro.function, "mobius | von_mangoldt | mu_lambda")
      ->check(CLI::IsMember({"mobius", "von_mangoldt", "mu_lambda"}));
  ar->add_option("--limit", aro.limit, "table limit");
  ar->add_option("--k", aro.k, "power of Lambda for mu_lambda");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }

  try {
    if (*moment) return cmd_moment(g, mo);
    if (*kappa) return cmd_kappa(g, ko);
    if (*kl) return cmd_kloosterman(g, klo);
    if (*afe) return cmd_afe(g, ao);
    if (*mol) return cmd_mollifier(g, molo);
    if (*ar) return cmd_arith(g, aro);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kBudget;
  } catch (const InvalidResult& e) {
    std::cerr << "invalid result: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return kInvalid;
  }
  return kInvalid;
}
