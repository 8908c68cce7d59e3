// Command-line front end: simulation harness, gamma2 calibration, CMLE
// fitting, tail-index estimation, extreme quantiles, goodness of fit, and the
// induction-time pipeline. Exit codes: 0 success, 1 validation/usage error,
// 2 numerical failure.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "trunctail/cmle.hpp"
#include "trunctail/errors.hpp"
#include "trunctail/harness.hpp"
#include "trunctail/nonparam.hpp"
#include "trunctail/selection.hpp"
#include "trunctail/semiparam.hpp"

namespace tt = trunctail;

namespace {

tt::Family parse_family(const std::string& name) {
  if (name == "burr") return tt::Family::Burr;
  if (name == "frechet") return tt::Family::Frechet;
  if (name == "frechet2") return tt::Family::Frechet2;
  throw std::invalid_argument("unknown family: " + name +
                              " (expected burr, frechet, or frechet2)");
}

std::string join_params(const std::vector<double>& theta) {
  std::ostringstream os;
  os.precision(6);
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (i) os << ", ";
    os << theta[i];
  }
  return os.str();
}

// Resolve the truncation model for the semiparametric path: explicit theta
// wins, else a CMLE fit on the data.
tt::ParametricModel resolve_model(const tt::TruncatedSample& sample,
                                  const std::string& family_name,
                                  const std::vector<double>& theta,
                                  bool announce) {
  const tt::Family family = parse_family(family_name);
  if (!theta.empty()) {
    return tt::make_model(family, theta);
  }
  const tt::CmleFit fit = tt::fit_cmle(sample, family);
  if (announce) {
    std::cout << "cmle theta: " << join_params(fit.theta_hat)
              << (fit.converged ? "" : "  (not converged)") << "\n";
  }
  return fit.model(family);
}

std::vector<double> unit_weight_curve(const std::vector<double>& sorted_x,
                                      std::size_t k_max) {
  // Hill estimator curve: the semiparametric form with every weight equal.
  const std::size_t n = sorted_x.size();
  std::vector<double> out(k_max, std::numeric_limits<double>::quiet_NaN());
  double acc = 0.0;
  for (std::size_t k = 1; k <= std::min(k_max, n - 1); ++k) {
    acc += std::log(sorted_x[n - k]);
    out[k - 1] = acc / static_cast<double>(k) - std::log(sorted_x[n - k - 1]);
  }
  return out;
}

// Plain key=value configuration for `simulate`; keys match the long flag
// names. Command-line flags take precedence over file values.
void apply_config_file(const std::string& path, CLI::App* cmd,
                       struct SimulateArgs& args);

struct SimulateArgs {
  std::string scenario = "s1";
  double gamma1 = 0.6;
  double p = -1.0;
  double gamma2 = -1.0;
  double delta = 0.25;
  std::size_t n = 300;
  std::size_t replications = 1000;
  std::size_t k_min = 2;
  std::size_t k_max = 120;
  std::uint64_t seed = 20240101;
  double theta_exp = 0.3;
  std::size_t scan_min = 15;
  std::vector<std::string> estimators = {"semi", "bmn", "ww"};
  bool strict = false;
  bool serial = false;
  std::string out = "summary.csv";
  std::string config_path;
};

void apply_config_file(const std::string& path, CLI::App* cmd,
                       SimulateArgs& a) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);

  const std::map<std::string, std::function<void(const std::string&)>> set = {
      {"scenario", [&](const std::string& v) { a.scenario = v; }},
      {"gamma1", [&](const std::string& v) { a.gamma1 = std::stod(v); }},
      {"p", [&](const std::string& v) { a.p = std::stod(v); }},
      {"gamma2", [&](const std::string& v) { a.gamma2 = std::stod(v); }},
      {"delta", [&](const std::string& v) { a.delta = std::stod(v); }},
      {"n", [&](const std::string& v) { a.n = std::stoul(v); }},
      {"replications",
       [&](const std::string& v) { a.replications = std::stoul(v); }},
      {"k-min", [&](const std::string& v) { a.k_min = std::stoul(v); }},
      {"k-max", [&](const std::string& v) { a.k_max = std::stoul(v); }},
      {"seed", [&](const std::string& v) { a.seed = std::stoull(v); }},
      {"theta-exp", [&](const std::string& v) { a.theta_exp = std::stod(v); }},
      {"scan-min", [&](const std::string& v) { a.scan_min = std::stoul(v); }},
      {"estimators",
       [&](const std::string& v) {
         a.estimators.clear();
         std::istringstream is(v);
         std::string tok;
         while (std::getline(is, tok, ',')) a.estimators.push_back(tok);
       }},
      {"strict", [&](const std::string& v) { a.strict = v == "true" || v == "1"; }},
      {"out", [&](const std::string& v) { a.out = v; }},
  };

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": expected key=value");
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = set.find(key);
    if (it == set.end()) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": unknown key \"" + key + "\"");
    }
    if (cmd->count("--" + key) > 0) continue;  // flag overrides the file
    try {
      it->second(value);
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": cannot parse value \"" + value + "\"");
    }
  }
}

void cmd_simulate(const SimulateArgs& a) {
  tt::ScenarioConfig config;
  config.scenario = tt::parse_scenario(a.scenario);
  config.gamma1 = a.gamma1;
  if (a.gamma2 > 0.0) config.gamma2 = a.gamma2;
  if (a.p > 0.0) config.p = a.p;
  config.delta = a.delta;
  config.n_draw = a.n;
  config.replications = a.replications;
  config.k_min = a.k_min;
  config.k_max = a.k_max;
  config.master_seed = a.seed;
  config.theta_exponent = a.theta_exp;
  config.k_star_scan_min = a.scan_min;
  config.strict = a.strict;
  config.estimators.clear();
  for (const auto& name : a.estimators) {
    config.estimators.push_back(tt::parse_method(name));
  }

  const tt::MonteCarloSummary summary = a.serial
                                            ? tt::run_scenario_serial(config)
                                            : tt::run_scenario(config);
  tt::emit_csv(summary, a.out);

  std::cout.precision(6);
  std::cout << "scenario: " << tt::scenario_name(config.scenario)
            << "  gamma1: " << config.gamma1
            << "  gamma2: " << summary.gamma2_resolved;
  if (config.p) std::cout << "  (solved from p = " << *config.p << ")";
  std::cout << "\nN: " << config.n_draw
            << "  replications: " << config.replications
            << "  seed: " << config.master_seed << "\n";
  std::cout << "csv: " << a.out << "\n\n";
  std::cout << "estimator   k*(mode)  k*(mean)  mean@k*   abias@k*  rmse@k*   "
               "failures\n";
  for (const auto& es : summary.estimators) {
    std::ostringstream row;
    row.precision(6);
    row << tt::method_name(es.method);
    std::cout << row.str() << std::string(12 - row.str().size(), ' ');
    std::ostringstream cells;
    cells.precision(4);
    cells << es.k_star_mode << "\t" << es.k_star_mean << "\t"
          << es.mean_at_k_star << "\t" << es.abias_at_k_star << "\t"
          << es.rmse_at_k_star << "\t" << es.selection_failures;
    std::cout << cells.str() << "\n";
  }

  const double sigma2 =
      tt::asymptotic_variance(config.gamma1, summary.gamma2_resolved);
  std::cout << "\nvariance report (informational): limit sigma^2 = " << sigma2
            << "\n";
  for (const auto& es : summary.estimators) {
    if (es.k_star_mode == 0) continue;
    const std::size_t j = es.k_star_mode - config.k_min;
    if (j < es.scaled_var.size() && std::isfinite(es.scaled_var[j])) {
      std::cout << "  " << tt::method_name(es.method)
                << ": k*var(gamma_hat) at k=" << es.k_star_mode << " -> "
                << es.scaled_var[j] << "\n";
    }
  }
  std::cout << "replication failures: " << summary.replication_failures
            << "  cmle non-converged: " << summary.cmle_nonconverged << "\n";
}

struct EstimateArgs {
  std::string data;
  std::string method;
  std::size_t k = 0;
  bool auto_k = false;
  std::size_t k_max = 120;
  std::size_t scan_min = 2;
  double theta_exp = 0.3;
  std::string family;
  std::vector<double> theta;
  double level = 0.95;
};

void cmd_estimate(const EstimateArgs& a) {
  const tt::TruncatedSample sample = tt::load_sample(a.data);
  const std::size_t n = sample.size();
  if (n < 3) throw std::invalid_argument("need at least 3 observations");
  if ((a.k == 0) == !a.auto_k) {
    throw std::invalid_argument("give exactly one of --k or --auto-k");
  }
  const tt::Method method = tt::parse_method(a.method);
  const std::size_t k_cap = std::min(a.k_max, n - 1);

  std::optional<tt::ParametricModel> model;
  std::vector<double> curve;
  if (method == tt::Method::Semi) {
    if (!a.family.empty()) {
      model = resolve_model(sample, a.family, a.theta, true);
      curve = tt::gamma1_semi_curve(sample, *model, k_cap);
    } else {
      // No truncation model: every weight is 1 and the estimator is Hill.
      auto xs = sample.xs();
      std::sort(xs.begin(), xs.end());
      curve = unit_weight_curve(xs, k_cap);
      std::cout << "note: no --family given; using constant weights (Hill)\n";
    }
  } else {
    curve = method == tt::Method::BMN ? tt::gamma1_bmn_curve(sample, k_cap)
                                      : tt::gamma1_ww_curve(sample, k_cap);
  }

  std::size_t k = a.k;
  if (a.auto_k) {
    const tt::KStarResult sel =
        tt::thomas_reiss_kstar(curve, a.scan_min, k_cap, a.theta_exp);
    k = sel.k_star;
  } else if (k < 2 || k > k_cap) {
    throw std::invalid_argument("k must satisfy 2 <= k <= min(k_max, n-1)");
  }
  const double gamma1 = curve[k - 1];
  if (!std::isfinite(gamma1)) {
    throw tt::NumericalError("estimate undefined at the requested k");
  }

  auto xs = sample.xs();
  std::sort(xs.begin(), xs.end());
  std::cout.precision(6);
  std::cout << "method: " << tt::method_name(method) << "\nn: " << n
            << "\nk: " << k << "\nthreshold: " << xs[n - k - 1]
            << "\ngamma1: " << gamma1 << "\n";
  if (model) {
    std::cout << "theta: ";
    for (int i = 0; i < model->n_params(); ++i) {
      std::cout << (i ? ", " : "") << model->param(i);
    }
    const double g2 = model->tail_index();
    std::cout << "\n";
    if (gamma1 < g2) {
      tt::TailFit fit;
      fit.method = method;
      fit.k = k;
      fit.gamma1_hat = gamma1;
      const auto [lo, hi] = tt::confidence_interval(fit, g2, a.level);
      std::cout << "ci" << a.level * 100 << ": [" << lo << ", " << hi << "]\n";
    }
  }
}

struct QuantileArgs {
  std::string data;
  double v = 0.0;
  std::string family;
  std::vector<double> theta;
  std::size_t k = 0;
  std::size_t k_max = 120;
  std::size_t scan_min = 2;
  double theta_exp = 0.3;
};

void cmd_quantile(const QuantileArgs& a) {
  const tt::TruncatedSample sample = tt::load_sample(a.data);
  const std::size_t n = sample.size();
  if (n < 3) throw std::invalid_argument("need at least 3 observations");
  if (a.family.empty()) {
    throw std::invalid_argument("--family is required");
  }
  const tt::ParametricModel model =
      resolve_model(sample, a.family, a.theta, true);
  const std::size_t k_cap = std::min(a.k_max, n - 1);
  const std::vector<double> curve = tt::gamma1_semi_curve(sample, model, k_cap);
  std::size_t k = a.k;
  if (k == 0) {
    k = tt::thomas_reiss_kstar(curve, a.scan_min, k_cap, a.theta_exp).k_star;
  } else if (k < 2 || k > k_cap) {
    throw std::invalid_argument("k must satisfy 2 <= k <= min(k_max, n-1)");
  }
  const double gamma1 = curve[k - 1];
  const tt::SemiparamCdf cdf = tt::semiparametric_cdf(sample, model);
  const double threshold = cdf.sorted_x()[n - k - 1];
  const double tail = cdf.survival(threshold);
  const double q = tt::weissman_quantile(a.v, threshold, tail, gamma1);
  std::cout.precision(6);
  std::cout << "k: " << k << "\nthreshold: " << threshold
            << "\ntail_prob: " << tail << "\ngamma1: " << gamma1
            << "\nquantile: " << q << "\n";
}

struct GofArgs {
  std::string data;
  std::size_t k = 0;
  std::string family;
  std::vector<double> theta;
  std::size_t grid = 512;
};

void cmd_gof(const GofArgs& a) {
  const tt::TruncatedSample sample = tt::load_sample(a.data);
  if (a.family.empty()) throw std::invalid_argument("--family is required");
  const tt::ParametricModel model =
      resolve_model(sample, a.family, a.theta, true);
  const tt::TailFit fit = tt::gamma1_semi(sample, model, a.k);
  const tt::TailProcessCurve curve =
      tt::tail_process(sample, model, a.k, fit.gamma1_hat, a.grid);
  std::cout.precision(6);
  std::cout << "k: " << a.k << "\ngamma1: " << fit.gamma1_hat
            << "\nks: " << curve.ks_stat << "\ncvm: " << curve.cvm_stat
            << "\n";
}

struct AidsArgs {
  std::string data;
  double eps = 0.05;
  double eps_end = 0.01;
  double v = -1.0;  // default 1/(2n)
  std::size_t k = 0;
  std::size_t k_max = 120;
  std::size_t scan_min = 2;
  double theta_exp = 0.3;
};

void cmd_aids(const AidsArgs& a) {
  const auto records = tt::load_records(a.data);
  std::vector<std::size_t> bad;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& [m, t] = records[i];
    if (!(m >= 0.0 && t >= 0.0 && t <= 8.0 && m + t <= 8.0)) {
      bad.push_back(i + 1);
    }
  }
  if (!bad.empty()) {
    std::ostringstream os;
    os << "records violating 0 <= m, 0 <= t, m + t <= 8 at rows:";
    for (std::size_t i : bad) os << " " << i;
    throw std::invalid_argument(os.str());
  }

  tt::TruncatedSample sample;
  for (const auto& [m, t] : records) {
    sample.pairs.push_back(tt::aids_transform(m, t, a.eps));
  }
  const std::size_t n = sample.size();
  if (n < 10) throw std::invalid_argument("need at least 10 records");

  const tt::CmleFit cmle = tt::fit_cmle(sample, tt::Family::Frechet2);
  const tt::ParametricModel model = cmle.model(tt::Family::Frechet2);
  const std::size_t k_cap = std::min(a.k_max, n - 1);
  const std::vector<double> curve = tt::gamma1_semi_curve(sample, model, k_cap);
  std::size_t k = a.k;
  if (k == 0) {
    k = tt::thomas_reiss_kstar(curve, a.scan_min, k_cap, a.theta_exp).k_star;
  } else if (k < 2 || k > k_cap) {
    throw std::invalid_argument("k must satisfy 2 <= k <= min(k_max, n-1)");
  }
  const double gamma1 = curve[k - 1];
  if (!std::isfinite(gamma1)) {
    throw tt::NumericalError("estimate undefined at the selected k");
  }
  const tt::SemiparamCdf cdf = tt::semiparametric_cdf(sample, model);
  const double threshold = cdf.sorted_x()[n - k - 1];
  const double tail = cdf.survival(threshold);
  const double v = a.v > 0.0 ? a.v : 1.0 / (2.0 * static_cast<double>(n));
  const double q = tt::weissman_quantile(v, threshold, tail, gamma1);
  const double t_end = tt::end_time(q, a.eps_end);

  std::cout.precision(6);
  std::cout << "n: " << n << "\ntheta: " << join_params(cmle.theta_hat)
            << (cmle.converged ? "" : "  (not converged)") << "\nk*: " << k
            << "\nthreshold: " << threshold << "\ngamma1: " << gamma1
            << "\nv: " << v << "\nquantile: " << q << "\nt_end: " << t_end
            << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tail-index estimation for randomly right-truncated data"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "Run the Monte Carlo study");
  c_sim->add_option("--config", sim.config_path,
                    "key=value file; flags take precedence");
  c_sim->add_option("--scenario", sim.scenario, "s1|s2|s3|s4");
  c_sim->add_option("--gamma1", sim.gamma1, "target tail index");
  c_sim->add_option("--p", sim.p, "target truncation probability");
  c_sim->add_option("--gamma2", sim.gamma2, "explicit truncation tail index");
  c_sim->add_option("--delta", sim.delta, "Burr second shape");
  c_sim->add_option("--n", sim.n, "pre-truncation draws per replication");
  c_sim->add_option("--replications", sim.replications);
  c_sim->add_option("--k-min", sim.k_min);
  c_sim->add_option("--k-max", sim.k_max);
  c_sim->add_option("--seed", sim.seed, "master seed");
  c_sim->add_option("--theta-exp", sim.theta_exp, "selection exponent");
  c_sim->add_option("--scan-min", sim.scan_min, "k* scan floor");
  c_sim->add_option("--estimators", sim.estimators, "subset of semi,bmn,ww")
      ->delimiter(',');
  c_sim->add_flag("--strict", sim.strict, "drop non-converged CMLE reps");
  c_sim->add_flag("--serial", sim.serial, "single-threaded reference run");
  c_sim->add_option("--out", sim.out, "CSV output path");
  c_sim->callback([&, c_sim] {
    if (!sim.config_path.empty()) {
      apply_config_file(sim.config_path, c_sim, sim);
    }
    cmd_simulate(sim);
  });

  struct {
    std::string scenario;
    double p = 0.0, gamma1 = 0.0, delta = 0.25;
  } sg;
  auto* c_sg = app.add_subcommand("solve-gamma2",
                                  "Calibrate gamma2 to a truncation "
                                  "probability");
  c_sg->add_option("--family", sg.scenario, "scenario s1|s2|s3|s4")
      ->required();
  c_sg->add_option("--p", sg.p, "target truncation probability")->required();
  c_sg->add_option("--gamma1", sg.gamma1)->required();
  c_sg->add_option("--delta", sg.delta);
  c_sg->callback([&] {
    const double g2 = tt::solve_gamma2(tt::parse_scenario(sg.scenario), sg.p,
                                       sg.gamma1, sg.delta);
    std::cout.precision(6);
    std::cout << "gamma2: " << g2 << "  (|p - target| < 1e-6)\n";
  });

  struct {
    std::string data, family;
  } fc;
  auto* c_fc = app.add_subcommand("fit-cmle",
                                  "Conditional ML fit of the truncation "
                                  "model");
  c_fc->add_option("--data", fc.data, "x,y sample file")->required();
  c_fc->add_option("--family", fc.family, "burr|frechet|frechet2")->required();
  c_fc->callback([&] {
    const tt::TruncatedSample sample = tt::load_sample(fc.data);
    const tt::CmleFit fit = tt::fit_cmle(sample, parse_family(fc.family));
    std::cout.precision(6);
    std::cout << "theta: " << join_params(fit.theta_hat)
              << "\nlog_likelihood: " << fit.log_likelihood
              << "\nconverged: " << (fit.converged ? "yes" : "no")
              << "\nevaluations: " << fit.iterations << "\n";
  });

  EstimateArgs est;
  auto* c_est = app.add_subcommand("estimate", "Tail-index point estimate");
  c_est->add_option("--data", est.data)->required();
  c_est->add_option("--method", est.method, "semi|bmn|ww")->required();
  c_est->add_option("--k", est.k, "sample fraction");
  c_est->add_flag("--auto-k", est.auto_k, "select k by the stability rule");
  c_est->add_option("--k-max", est.k_max);
  c_est->add_option("--scan-min", est.scan_min);
  c_est->add_option("--theta-exp", est.theta_exp);
  c_est->add_option("--family", est.family, "truncation family (semi)");
  c_est->add_option("--theta", est.theta, "truncation parameters (semi)");
  c_est->add_option("--level", est.level, "confidence level");
  c_est->callback([&] { cmd_estimate(est); });

  QuantileArgs qa;
  auto* c_q = app.add_subcommand("quantile", "Weissman extreme quantile");
  c_q->add_option("--data", qa.data)->required();
  c_q->add_option("--v", qa.v, "exceedance level")->required();
  c_q->add_option("--family", qa.family)->required();
  c_q->add_option("--theta", qa.theta);
  c_q->add_option("--k", qa.k, "fixed k (default: stability rule)");
  c_q->add_option("--k-max", qa.k_max);
  c_q->add_option("--scan-min", qa.scan_min);
  c_q->add_option("--theta-exp", qa.theta_exp);
  c_q->callback([&] { cmd_quantile(qa); });

  GofArgs gof;
  auto* c_gof = app.add_subcommand("gof", "Tail goodness-of-fit statistics");
  c_gof->add_option("--data", gof.data)->required();
  c_gof->add_option("--k", gof.k)->required();
  c_gof->add_option("--family", gof.family)->required();
  c_gof->add_option("--theta", gof.theta);
  c_gof->add_option("--grid", gof.grid);
  c_gof->callback([&] { cmd_gof(gof); });

  AidsArgs aids;
  auto* c_aids = app.add_subcommand("aids",
                                    "Induction-time pipeline on (m, t) "
                                    "records");
  c_aids->add_option("--data", aids.data)->required();
  c_aids->add_option("--epsilon", aids.eps, "transform offset");
  c_aids->add_option("--epsilon-end", aids.eps_end, "end-time offset");
  c_aids->add_option("--v", aids.v, "exceedance level (default 1/(2n))");
  c_aids->add_option("--k", aids.k, "fixed k (default: stability rule)");
  c_aids->add_option("--k-max", aids.k_max);
  c_aids->add_option("--scan-min", aids.scan_min);
  c_aids->add_option("--theta-exp", aids.theta_exp);
  c_aids->callback([&] { cmd_aids(aids); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const tt::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
