// Copyright 2026 The Tailrisk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command line front end: CSV in, CSV/JSON plot data out. Every stochastic
// subcommand takes --seed (or the TAILRISK_SEED environment variable) and is
// byte-for-byte reproducible for fixed inputs and flags.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tailrisk/dataset.hpp"
#include "tailrisk/distributions.hpp"
#include "tailrisk/emission.hpp"
#include "tailrisk/risk_measures.hpp"
#include "tailrisk/tail_dependence.hpp"
#include "tailrisk/tail_estimators.hpp"
#include "tailrisk/threshold_selection.hpp"
#include "tailrisk/validation.hpp"

namespace {

constexpr std::uint64_t kDefaultSeed = 12345;  // fixed so casual runs reproduce

struct DataOpts {
  std::string path;
  std::vector<std::string> columns;
  std::vector<double> mins;
  std::vector<double> shifts;
  std::vector<std::string> filters;  // column=value
};

struct OutOpts {
  std::string format = "csv";
  std::string output;
};

void add_data_opts(CLI::App* cmd, DataOpts* d, std::size_t ncols) {
  cmd->add_option("--data", d->path, "input CSV file")->required();
  cmd->add_option("--column", d->columns,
                  "column name (or 0-based index); repeat for bivariate input")
      ->required()
      ->expected(1, static_cast<int>(ncols));
  cmd->add_option("--min", d->mins, "per-column lower bound filter")
      ->expected(0, static_cast<int>(ncols));
  cmd->add_option("--shift", d->shifts, "per-column additive shift, applied after filters")
      ->expected(0, static_cast<int>(ncols));
  cmd->add_option("--filter", d->filters, "keep rows where column=value (string match)");
}

void add_out_opts(CLI::App* cmd, OutOpts* o) {
  cmd->add_option("--format", o->format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--output", o->output, "output file (default: stdout)");
}

tailrisk::DatasetConfig to_config(const DataOpts& d, std::size_t ncols) {
  tailrisk::DatasetConfig cfg;
  cfg.path = d.path;
  cfg.columns = d.columns;
  if (cfg.columns.size() != ncols)
    throw tailrisk::ConfigError("expected " + std::to_string(ncols) + " --column value(s)");
  for (double m : d.mins) cfg.min_filters.emplace_back(m);
  cfg.shifts = d.shifts;
  for (const auto& f : d.filters) {
    const auto pos = f.find('=');
    if (pos == std::string::npos)
      throw tailrisk::ConfigError("--filter expects column=value, got '" + f + "'");
    cfg.row_filters.emplace_back(f.substr(0, pos), f.substr(pos + 1));
  }
  return cfg;
}

void emit(const tailrisk::PlotEmission& pe, const OutOpts& o) {
  const auto fmt = (o.format == "json") ? tailrisk::PlotEmission::Format::Json
                                        : tailrisk::PlotEmission::Format::Csv;
  if (o.output.empty()) {
    pe.write(std::cout, fmt);
    return;
  }
  std::ofstream os(o.output, std::ios::binary);
  if (!os) throw tailrisk::IoError("cannot write '" + o.output + "'");
  pe.write(os, fmt);
}

void add_load_report(tailrisk::PlotEmission* pe, const tailrisk::LoadReport& rep) {
  pe->meta("rows_read", rep.rows_read);
  pe->meta("rows_kept", rep.rows_kept);
  pe->meta("rows_dropped_filter", rep.dropped_by_filter);
  pe->meta("rows_dropped_non_numeric", rep.dropped_non_numeric);
  if (rep.dropped_non_numeric > 0)
    std::cerr << "warning: dropped " << rep.dropped_non_numeric
              << " row(s) with non-numeric cells\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tailrisk: generalized Pareto tail analysis, threshold selection, "
               "qq-band validation, reinsurance premiums and tail dependence"};
  app.require_subcommand(1);

  DataOpts data;
  OutOpts out;

  // ---- hill-plot ----------------------------------------------------------
  auto* hill_cmd = app.add_subcommand("hill-plot", "Hill estimator versus k");
  std::size_t k_min = 1, k_max = 0;
  bool log_x = false;
  add_data_opts(hill_cmd, &data, 1);
  add_out_opts(hill_cmd, &out);
  hill_cmd->add_option("--k-min", k_min, "smallest k")->capture_default_str();
  hill_cmd->add_option("--k-max", k_max, "largest k (default n-1)");
  hill_cmd->add_flag("--log-x", log_x, "also emit the log k / log n abscissa");

  // ---- ml-plot -------------------------------------------------------------
  auto* ml_cmd = app.add_subcommand("ml-plot", "GPD maximum likelihood fit versus k");
  add_data_opts(ml_cmd, &data, 1);
  add_out_opts(ml_cmd, &out);
  ml_cmd->add_option("--k-min", k_min, "smallest k")->capture_default_str();
  ml_cmd->add_option("--k-max", k_max, "largest k (default n-1)");

  // ---- select-k ------------------------------------------------------------
  auto* sel_cmd = app.add_subcommand("select-k", "data-driven choice of k for the Hill estimator");
  std::string method = "sequential";
  tailrisk::SequentialConfig seq_cfg;
  tailrisk::BootstrapConfig boot_cfg;
  std::uint64_t seed = kDefaultSeed;
  std::vector<std::size_t> n1_opt;
  add_data_opts(sel_cmd, &data, 1);
  add_out_opts(sel_cmd, &out);
  sel_cmd->add_option("--method", method, "selector")
      ->check(CLI::IsMember({"sequential", "bootstrap"}))
      ->capture_default_str();
  sel_cmd->add_option("--r-factor", seq_cfg.r_factor, "sequential: factor in r_n")
      ->capture_default_str();
  sel_cmd->add_option("--xi", seq_cfg.xi, "sequential: exponent xi")->capture_default_str();
  sel_cmd->add_option("--lambda", seq_cfg.lambda, "sequential: fraction lambda")
      ->capture_default_str();
  sel_cmd->add_option("--replicates", boot_cfg.replicates, "bootstrap: resamples per size")
      ->capture_default_str();
  sel_cmd->add_option("--epsilon", boot_cfg.epsilon, "bootstrap: n1 = O(n^(1-eps))")
      ->capture_default_str();
  sel_cmd->add_option("--n1", n1_opt, "bootstrap: explicit n1 candidates");
  sel_cmd->add_option("--seed", seed, "RNG seed")->envname("TAILRISK_SEED")
      ->capture_default_str();

  // ---- qq-band ---------------------------------------------------------------
  auto* qq_cmd = app.add_subcommand("qq-band", "Pareto qq-plot with simultaneous Monte-Carlo band");
  std::size_t band_k = 0, sim_m = 1000, sim_n = 10000;
  double alpha = 0.05, weight_exponent = 0.1;
  add_data_opts(qq_cmd, &data, 1);
  add_out_opts(qq_cmd, &out);
  qq_cmd->add_option("--k", band_k, "number of top order statistics")->required();
  qq_cmd->add_option("--alpha", alpha, "test level")->capture_default_str();
  qq_cmd->add_option("--weight-exponent", weight_exponent,
                     "exponent a in h(t) = (t(1-t))^a / sigma(t)")
      ->capture_default_str();
  qq_cmd->add_option("--m", sim_m, "simulation grid size")->capture_default_str();
  qq_cmd->add_option("--sims", sim_n, "simulation replicates")->capture_default_str();
  qq_cmd->add_option("--seed", seed, "RNG seed")->envname("TAILRISK_SEED")
      ->capture_default_str();

  // ---- gpd-band --------------------------------------------------------------
  auto* gpd_cmd = app.add_subcommand(
      "gpd-band", "band around the fitted Pareto quantile function (Hill measures)");
  add_data_opts(gpd_cmd, &data, 1);
  add_out_opts(gpd_cmd, &out);
  gpd_cmd->add_option("--k", band_k, "number of top order statistics")->required();
  gpd_cmd->add_option("--alpha", alpha, "test level")->capture_default_str();
  gpd_cmd->add_option("--m", sim_m, "simulation grid size")->capture_default_str();
  gpd_cmd->add_option("--sims", sim_n, "simulation replicates")->capture_default_str();
  gpd_cmd->add_option("--seed", seed, "RNG seed")->envname("TAILRISK_SEED")
      ->capture_default_str();

  // ---- premium ----------------------------------------------------------------
  auto* prem_cmd = app.add_subcommand("premium", "excess-of-loss net premium per claim");
  double retention = 0.0, cover = std::numeric_limits<double>::infinity();
  std::optional<double> ci_alpha;
  add_data_opts(prem_cmd, &data, 1);
  add_out_opts(prem_cmd, &out);
  prem_cmd->add_option("--k", band_k, "number of top order statistics")->required();
  prem_cmd->add_option("--retention", retention, "layer retention t")->required();
  prem_cmd->add_option("--cover", cover, "layer cover c (default: unlimited)");
  prem_cmd->add_option("--alpha", [&ci_alpha](const std::vector<std::string>& v) {
        ci_alpha = std::stod(v.front());
        return true;
      }, "confidence level for an interval (omit for none)");

  // ---- var --------------------------------------------------------------------
  auto* var_cmd = app.add_subcommand("var", "extreme value-at-risk");
  add_data_opts(var_cmd, &data, 1);
  add_out_opts(var_cmd, &out);
  var_cmd->add_option("--k", band_k, "number of top order statistics")->required();
  var_cmd->add_option("--alpha", alpha, "exceedance probability")->required();

  // ---- eta --------------------------------------------------------------------
  auto* eta_cmd = app.add_subcommand("eta", "coefficient of tail dependence");
  std::string estimator = "hill";
  double eta_alpha = 0.05;
  add_data_opts(eta_cmd, &data, 2);
  add_out_opts(eta_cmd, &out);
  eta_cmd->add_option("--k", band_k, "number of top order statistics of the T sample")
      ->required();
  eta_cmd->add_option("--estimator", estimator, "hill or ml")
      ->check(CLI::IsMember({"hill", "ml"}))
      ->capture_default_str();
  eta_cmd->add_option("--alpha", eta_alpha, "confidence level")->capture_default_str();

  // ---- d-profile ----------------------------------------------------------------
  auto* dprof_cmd = app.add_subcommand("d-profile",
                                       "sections d(1/x,1) and d(1,1/(2-x)) of the joint "
                                       "tail limit function");
  std::size_t d_m = 0, d_grid = 50;
  add_data_opts(dprof_cmd, &data, 2);
  add_out_opts(dprof_cmd, &out);
  dprof_cmd->add_option("--m", d_m, "number of joint tail exceedances")->required();
  dprof_cmd->add_option("--grid", d_grid, "grid points per branch")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    tailrisk::PlotEmission pe;
    tailrisk::LoadReport rep;

    if (app.got_subcommand(hill_cmd) || app.got_subcommand(ml_cmd)) {
      const bool is_hill = app.got_subcommand(hill_cmd);
      const auto sample = tailrisk::load_univariate(to_config(data, 1), &rep);
      if (k_max == 0) k_max = sample.size() - 1;
      const auto tr = tailrisk::trace(
          sample, is_hill ? tailrisk::TailEstimator::Hill : tailrisk::TailEstimator::GpdMl,
          k_min, k_max);
      pe.meta("command", is_hill ? "hill-plot" : "ml-plot");
      pe.meta("n", sample.size());
      pe.meta("k_min", k_min);
      pe.meta("k_max", k_max);
      add_load_report(&pe, rep);
      std::vector<double> ks(tr.ks.begin(), tr.ks.end());
      pe.series("k", ks);
      if (is_hill && log_x) {
        std::vector<double> lx(ks.size());
        const double ln = std::log(static_cast<double>(sample.size()));
        for (std::size_t i = 0; i < ks.size(); ++i) lx[i] = std::log(ks[i]) / ln;
        pe.series("log_k_over_log_n", lx);
      }
      pe.series("gamma", tr.estimates);
      if (!is_hill) {
        std::vector<double> sigmas;
        sigmas.reserve(tr.ks.size());
        for (std::size_t kk : tr.ks) {
          double s = std::numeric_limits<double>::quiet_NaN();
          if (kk >= 2) {
            try {
              s = tailrisk::gpd_ml_fit(tailrisk::tail_view(sample, kk)).sigma_hat;
            } catch (const tailrisk::Error&) {
            }
          }
          sigmas.push_back(s);
        }
        pe.series("sigma", sigmas);
      }
    } else if (app.got_subcommand(sel_cmd)) {
      const auto sample = tailrisk::load_univariate(to_config(data, 1), &rep);
      pe.meta("command", "select-k");
      pe.meta("method", method);
      pe.meta("n", sample.size());
      add_load_report(&pe, rep);
      if (method == "sequential") {
        const auto sel = tailrisk::select_k_sequential(sample, seq_cfg);
        pe.meta("r_factor", seq_cfg.r_factor);
        pe.meta("xi", seq_cfg.xi);
        pe.meta("lambda", seq_cfg.lambda);
        pe.meta("pilot_gamma", sel.pilot_gamma);
        pe.meta("r", sel.r);
        pe.meta("rho", sel.rho);
        pe.meta("rho_fallback", std::string(sel.rho_fallback ? "true" : "false"));
        pe.meta("kbar_r", sel.kbar_r);
        pe.meta("kbar_r_xi", sel.kbar_r_xi);
        pe.series("k", {static_cast<double>(sel.k)});
      } else {
        boot_cfg.seed = seed;
        boot_cfg.n1_candidates = n1_opt;
        const auto sel = tailrisk::select_k_bootstrap(sample, boot_cfg);
        pe.meta("replicates", boot_cfg.replicates);
        pe.meta("epsilon", boot_cfg.epsilon);
        pe.meta("seed", static_cast<std::size_t>(seed));
        pe.meta("n1", sel.n1);
        pe.meta("n2", sel.n2);
        pe.meta("k0_n1", sel.k0_n1);
        pe.meta("k0_n2", sel.k0_n2);
        pe.meta("q_ratio", sel.q_ratio);
        pe.series("k", {static_cast<double>(sel.k)});
      }
    } else if (app.got_subcommand(qq_cmd)) {
      const auto sample = tailrisk::load_univariate(to_config(data, 1), &rep);
      const auto h = tailrisk::WeightFunction::sigma_normalized(weight_exponent);
      const auto band = tailrisk::qq_band(sample, band_k, h, alpha, sim_m, sim_n, seed);
      pe.meta("command", "qq-band");
      pe.meta("n", sample.size());
      pe.meta("k", band.k);
      pe.meta("alpha", alpha);
      pe.meta("weight_exponent", weight_exponent);
      pe.meta("m", sim_m);
      pe.meta("sims", sim_n);
      pe.meta("seed", static_cast<std::size_t>(seed));
      pe.meta("gamma_hat", band.slope);
      pe.meta("c_alpha", band.c_alpha);
      pe.meta("verdict", std::string(band.all_inside ? "inside" : "outside"));
      add_load_report(&pe, rep);
      pe.series("t", band.t);
      pe.series("x", band.x);
      pe.series("y", band.y);
      pe.series("center", band.center);
      pe.series("lower", band.lower);
      pe.series("upper", band.upper);
    } else if (app.got_subcommand(gpd_cmd)) {
      const auto sample = tailrisk::load_univariate(to_config(data, 1), &rep);
      const auto view = tailrisk::tail_view(sample, band_k);
      const double gamma_hat = tailrisk::hill(view);
      tailrisk::GpdFit fit;
      fit.gamma_hat = gamma_hat;
      fit.sigma_hat = gamma_hat * view.threshold();
      fit.k = band_k;
      fit.n = sample.size();
      fit.threshold = view.threshold();
      fit.cov = tailrisk::asymptotic_cov(gamma_hat);
      const auto band = tailrisk::gpd_band(sample, fit,
                                           tailrisk::SignedMeasure::hill_tail(gamma_hat),
                                           tailrisk::SignedMeasure::hill_scale(gamma_hat),
                                           alpha, sim_m, sim_n, seed);
      pe.meta("command", "gpd-band");
      pe.meta("estimator", "hill-pareto");
      pe.meta("n", sample.size());
      pe.meta("k", band.k);
      pe.meta("alpha", alpha);
      pe.meta("m", sim_m);
      pe.meta("sims", sim_n);
      pe.meta("seed", static_cast<std::size_t>(seed));
      pe.meta("gamma_hat", band.slope);
      pe.meta("sigma_hat", fit.sigma_hat);
      pe.meta("threshold", fit.threshold);
      pe.meta("c_alpha", band.c_alpha);
      pe.meta("verdict", std::string(band.all_inside ? "inside" : "outside"));
      add_load_report(&pe, rep);
      pe.series("t", band.t);
      pe.series("y", band.y);
      pe.series("center", band.center);
      pe.series("lower", band.lower);
      pe.series("upper", band.upper);
    } else if (app.got_subcommand(prem_cmd)) {
      const auto sample = tailrisk::load_univariate(to_config(data, 1), &rep);
      auto est = tailrisk::xl_premium(sample, band_k, tailrisk::XlContract(retention, cover));
      pe.meta("command", "premium");
      pe.meta("n", sample.size());
      pe.meta("k", est.k);
      pe.meta("gamma_hat", est.gamma_hat);
      pe.meta("sigma_hat", est.sigma_hat);
      pe.meta("threshold", est.threshold);
      pe.meta("retention", est.retention);
      pe.meta("cover", est.cover);
      if (est.retention_below_threshold) {
        pe.meta("warning", "retention below fitted threshold");
        std::cerr << "warning: retention lies below the fitted threshold "
                  << est.threshold << "\n";
      }
      add_load_report(&pe, rep);
      if (ci_alpha) {
        const auto ci = tailrisk::premium_ci(est, *ci_alpha);
        const double tau = std::log(est.retention / est.threshold) /
                           (est.gamma_hat * est.gamma_hat);
        pe.meta("alpha", *ci_alpha);
        pe.meta("tau_hat", tau);
        pe.series("value", {est.value});
        pe.series("ci_lower", {ci.lower});
        pe.series("ci_upper", {ci.upper});
      } else {
        pe.series("value", {est.value});
      }
    } else if (app.got_subcommand(var_cmd)) {
      const auto sample = tailrisk::load_univariate(to_config(data, 1), &rep);
      const double v = tailrisk::var_estimate(sample, band_k, alpha);
      const double kn = static_cast<double>(band_k) / static_cast<double>(sample.size());
      pe.meta("command", "var");
      pe.meta("n", sample.size());
      pe.meta("k", band_k);
      pe.meta("alpha", alpha);
      if (alpha >= kn) {
        pe.meta("warning", "alpha >= k/n: interpolation regime, no tail extrapolation");
        std::cerr << "warning: alpha >= k/n, the estimate does not extrapolate\n";
      }
      add_load_report(&pe, rep);
      pe.series("var", {v});
    } else if (app.got_subcommand(eta_cmd)) {
      const auto biv = tailrisk::load_bivariate(to_config(data, 2), &rep);
      const auto est = estimator == "hill" ? tailrisk::TailEstimator::Hill
                                           : tailrisk::TailEstimator::GpdMl;
      const auto fit = tailrisk::eta_fit(biv, band_k, est, eta_alpha);
      pe.meta("command", "eta");
      pe.meta("n", biv.pairs.size());
      pe.meta("k", fit.k);
      pe.meta("estimator", estimator);
      pe.meta("alpha", eta_alpha);
      if (fit.model_violation) pe.meta("warning", "eta_hat > 1 (outside the model range)");
      add_load_report(&pe, rep);
      pe.series("eta", {fit.eta_hat});
      pe.series("ci_lower", {fit.ci.lower});
      pe.series("ci_upper", {fit.ci.upper});
    } else if (app.got_subcommand(dprof_cmd)) {
      const auto biv = tailrisk::load_bivariate(to_config(data, 2), &rep);
      const auto prof = tailrisk::d_profile(biv, d_m, d_grid);
      pe.meta("command", "d-profile");
      pe.meta("n", biv.pairs.size());
      pe.meta("m", prof.m);
      pe.meta("grid", d_grid);
      add_load_report(&pe, rep);
      pe.series("x", prof.x);
      pe.series("d", prof.d);
      pe.series("lower", prof.lower);
      pe.series("upper", prof.upper);
    }

    emit(pe, out);
  } catch (const tailrisk::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
