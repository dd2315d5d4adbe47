// Copyright 2026-present the tsmars project
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tsmars/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tsmars/anova.hpp"
#include "tsmars/arfima.hpp"
#include "tsmars/csv.hpp"
#include "tsmars/diagnostics.hpp"
#include "tsmars/errors.hpp"
#include "tsmars/mars.hpp"
#include "tsmars/model_io.hpp"
#include "tsmars/series.hpp"
#include "tsmars/simulate.hpp"

namespace tsmars::cli {

namespace {

namespace fs = std::filesystem;

struct FileCloser {
  void operator()(std::FILE* f) const { if (f) std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_out(const fs::path& path) {
  FilePtr f(std::fopen(path.c_str(), "w"));
  if (!f) throw DataError("cannot write " + path.string());
  return f;
}

// Table cells are printed at 6 significant digits; model files keep full
// precision.
std::string cell(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct CommonOpts {
  std::string input;
  std::string out_dir = ".";
  std::string date_col = "date";
  std::string value_col = "value";
  int period = 12;

  CsvConfig csv() const { return CsvConfig{date_col, value_col, period}; }

  fs::path out(const std::string& name) const {
    fs::create_directories(out_dir);
    return fs::path(out_dir) / name;
  }
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool needs_input = true) {
  auto* in = cmd->add_option("--input", opts.input, "Input CSV file");
  if (needs_input) in->required();
  cmd->add_option("--out-dir", opts.out_dir, "Output directory");
  cmd->add_option("--date-col", opts.date_col, "Date column name");
  cmd->add_option("--value-col", opts.value_col, "Value column name");
  cmd->add_option("--period", opts.period, "Observations per year");
}

Month parse_month_flag(const std::string& text, const char* what) {
  const auto m = Month::parse(text);
  if (!m) throw DataError(std::string(what) + ": expected YYYY-MM, got '" + text + "'");
  return *m;
}

// ---------------------------------------------------------------- transform

struct TransformOpts {
  CommonOpts common;
  std::string split;
  std::string method = "symmetric";
  double epsilon = -1.0;
};

void run_transform(const TransformOpts& o) {
  const auto series = load_series_csv(o.common.input, o.common.csv());
  if (o.method == "naive") {
    const auto naive = naive_growth(series, o.epsilon);
    save_naive_csv(o.common.out("naive.csv"), naive, o.common.csv());
    std::size_t flagged = 0;
    for (auto u : naive.unstable) flagged += u;
    std::cout << "wrote naive.csv (" << naive.values.size() << " rows, "
              << flagged << " unstable)\n";
    return;
  }
  if (o.method != "symmetric") {
    throw DataError("transform: unknown method '" + o.method + "'");
  }
  const auto growth = symmetric_growth(series);
  save_growth_csv(o.common.out("growth.csv"), growth, o.common.csv());
  std::cout << "wrote growth.csv (" << growth.size() << " rows, "
            << growth.start().str() << ".." << growth.last().str() << ")\n";
  if (!o.split.empty()) {
    const Month boundary = parse_month_flag(o.split, "--split");
    const auto [left, right] = split_at(growth, boundary);
    save_growth_csv(o.common.out("growth_left.csv"), left, o.common.csv());
    save_growth_csv(o.common.out("growth_right.csv"), right, o.common.csv());
    std::cout << "wrote growth_left.csv (" << left.size() << " rows), "
              << "growth_right.csv (" << right.size() << " rows)\n";
  }
}

// --------------------------------------------------------------- fit-tsmars

struct FitTsmarsOpts {
  CommonOpts common;
  std::vector<int> lags{6, 12, 24, 36, 48, 60};
  std::vector<int> kmax{1, 2};
  double penalty = 3.0;
  int basis_limit = 0;
  bool allow_high_degree = false;
};

void write_report(const fs::path& path, const mars::FitReport& report) {
  auto f = open_out(path);
  std::fprintf(f.get(),
               "p\tk_max\trss\tgcv\tn_linear\tn_nonlinear\tpct_constant\t"
               "pct_linear\tpct_nonlinear\tpct_residual\tbest\n");
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& r = report.rows[i];
    if (r.skipped) {
      std::fprintf(f.get(), "%d\t%d\tNA\tNA\tNA\tNA\tNA\tNA\tNA\tNA\t0\n", r.p, r.k_max);
      continue;
    }
    std::fprintf(f.get(), "%d\t%d\t%s\t%s\t%d\t%d\t%s\t%s\t%s\t%s\t%d\n", r.p,
                 r.k_max, cell(r.rss).c_str(), cell(r.gcv).c_str(), r.n_linear,
                 r.n_nonlinear, cell(r.pct_constant).c_str(),
                 cell(r.pct_linear).c_str(), cell(r.pct_nonlinear).c_str(),
                 cell(r.pct_residual).c_str(),
                 i == report.best_index ? 1 : 0);
  }
}

void run_fit_tsmars(const FitTsmarsOpts& o) {
  const auto growth = load_growth_csv(o.common.input, o.common.csv());
  mars::MarsConfig config;
  config.gcv_penalty = o.penalty;
  config.basis_limit = o.basis_limit;
  config.allow_high_degree = o.allow_high_degree;
  const auto result = mars::fit_grid(growth, o.lags, o.kmax, config);

  write_report(o.common.out("report.tsv"), result.report);
  io::save_model(o.common.out("model.json"), result.best);

  const auto emb = embed_lags(growth, result.best.p);
  const std::string equation = mars::format_equation(result.best, emb);
  {
    auto f = open_out(o.common.out("equation.txt"));
    std::fprintf(f.get(), "%s\n", equation.c_str());
  }
  std::cout << "best model: p=" << result.best.p << " k_max=" << result.best.k_max
            << " terms=" << result.best.terms.size()
            << " gcv=" << cell(result.best.gcv) << "\n"
            << equation << "\n"
            << "wrote report.tsv, model.json, equation.txt\n";
}

// --------------------------------------------------------------- fit-arfima

struct FitArfimaOpts {
  CommonOpts common;
  int p_max = 3;
  int q_max = 3;
  int acf_max_lag = 24;
};

void write_acf_csv(const fs::path& path, const diag::AcfResult& r,
                   const std::vector<double>* bartlett) {
  auto f = open_out(path);
  std::fprintf(f.get(), "# n=%zu se_band=%s\n", r.n, cell(r.se_band).c_str());
  std::fprintf(f.get(), "lag,r%s\n", bartlett != nullptr ? ",bartlett_band" : "");
  for (int k = 1; k <= r.max_lag; ++k) {
    if (bartlett != nullptr) {
      std::fprintf(f.get(), "%d,%s,%s\n", k, cell(r.at(k)).c_str(),
                   cell((*bartlett)[static_cast<std::size_t>(k - 1)]).c_str());
    } else {
      std::fprintf(f.get(), "%d,%s\n", k, cell(r.at(k)).c_str());
    }
  }
}

void run_fit_arfima(const FitArfimaOpts& o) {
  const auto growth = load_growth_csv(o.common.input, o.common.csv());
  const auto result = arfima::fit_arfima_grid(growth, o.p_max, o.q_max);

  {
    auto f = open_out(o.common.out("arfima_grid.tsv"));
    std::fprintf(f.get(), "p\tq\td\tcss\taic\tstationarity\tbest\n");
    for (const auto& row : result.table) {
      const bool is_best = row.p == result.best.p && row.q == result.best.q;
      std::fprintf(f.get(), "%d\t%d\t%s\t%s\t%s\t%s\t%d\n", row.p, row.q,
                   cell(row.d).c_str(), cell(row.css).c_str(), cell(row.aic).c_str(),
                   row.d < 0.5 ? "stationary" : "nonstationary", is_best ? 1 : 0);
    }
  }
  io::save_model(o.common.out("model.json"), result.best);

  const auto filtered = arfima::apply_fracdiff(growth, result.best.d);
  save_values_csv(o.common.out("filtered.csv"), growth.start(), filtered,
                  o.common.csv());
  const auto filtered_acf = diag::acf(filtered, o.acf_max_lag);
  write_acf_csv(o.common.out("filtered_acf.csv"), filtered_acf, nullptr);

  std::cout << "best model: ARFIMA(" << result.best.p << ", " << cell(result.best.d)
            << ", " << result.best.q << ") aic=" << cell(result.best.aic) << " ("
            << (result.best.stationary() ? "stationary" : "nonstationary") << ")\n"
            << "wrote arfima_grid.tsv, model.json, filtered.csv, filtered_acf.csv\n";
}

// ------------------------------------------------------------------- fit-ar

struct FitArOpts {
  CommonOpts common;
  std::vector<int> lag_set;
  bool intercept = false;
};

void run_fit_ar(const FitArOpts& o) {
  const auto growth = load_growth_csv(o.common.input, o.common.csv());
  const auto model = arfima::fit_subset_ar(growth, o.lag_set, o.intercept);
  io::save_model(o.common.out("model.json"), model);
  std::cout << "subset AR fit on lags {";
  for (std::size_t i = 0; i < model.lags.size(); ++i) {
    std::cout << (i > 0 ? "," : "") << model.lags[i];
  }
  std::cout << "}: rss=" << cell(model.rss) << " n=" << model.n << "\n";
  for (std::size_t i = 0; i < model.lags.size(); ++i) {
    std::cout << "  z[t-" << model.lags[i] << "]: " << cell(model.coefficients[i])
              << "\n";
  }
  std::cout << "wrote model.json\n";
}

// ----------------------------------------------------------------- diagnose

struct DiagnoseOpts {
  CommonOpts common;
  std::vector<std::string> models;
  std::vector<int> lb_lags{6, 12, 18, 24};
  int acf_max_lag = 24;
  int fitted_params = 0;
  bool bartlett = false;
};

std::vector<double> model_residuals(const io::AnyModel& model,
                                    const GrowthSeries& growth) {
  if (const auto* m = std::get_if<mars::MarsModel>(&model)) {
    const auto emb = embed_lags(growth, m->p);
    auto fitted = mars::predict(*m, emb);
    std::vector<double> res(emb.rows());
    for (std::size_t i = 0; i < res.size(); ++i) res[i] = emb.response()[i] - fitted[i];
    return res;
  }
  if (const auto* m = std::get_if<arfima::SubsetArModel>(&model)) {
    const auto fitted = arfima::predict_subset_ar(*m, growth);
    const int max_lag = *std::max_element(m->lags.begin(), m->lags.end());
    const auto z = growth.values();
    std::vector<double> res(fitted.size());
    for (std::size_t i = 0; i < res.size(); ++i) {
      res[i] = z[i + static_cast<std::size_t>(max_lag)] - fitted[i];
    }
    return res;
  }
  const auto& m = std::get<arfima::ArfimaModel>(model);
  const auto filtered = arfima::apply_fracdiff(growth, m.d);
  return arfima::arma_residuals(filtered, m.ar, m.ma);
}

void write_ljung_box_tsv(std::FILE* f, const std::vector<diag::LjungBoxRow>& rows,
                         const std::string& label) {
  for (const auto& row : rows) {
    std::fprintf(f, "%s%s%d\t%s\t%d\t%s", label.c_str(),
                 label.empty() ? "" : "\t", row.lag, cell(row.q_stat).c_str(),
                 row.df, cell(row.p_value).c_str());
    for (double r : row.recent_r) std::fprintf(f, "\t%s", cell(r).c_str());
    std::fprintf(f, "\n");
  }
}

void run_diagnose(const DiagnoseOpts& o) {
  const auto growth = load_growth_csv(o.common.input, o.common.csv());

  struct Bundle {
    std::string name;
    std::vector<diag::LjungBoxRow> lb;
  };
  std::vector<Bundle> bundles;

  for (const auto& model_path : o.models) {
    const auto model = io::load_model(model_path);
    const auto residuals = model_residuals(model, growth);
    const std::string stem = fs::path(model_path).stem().string();

    const auto r_acf = diag::acf(residuals, o.acf_max_lag);
    std::optional<std::vector<double>> bands;
    if (o.bartlett) bands = diag::bartlett_bands(r_acf);
    write_acf_csv(o.common.out(stem + "_acf.csv"), r_acf,
                  bands ? &*bands : nullptr);

    const auto lb = diag::ljung_box(residuals, o.lb_lags, o.fitted_params);
    {
      auto f = open_out(o.common.out(stem + "_ljung_box.tsv"));
      std::fprintf(f.get(), "lag\tq_stat\tdf\tp_value\tac_1\tac_2\tac_3\tac_4\tac_5\tac_6\n");
      write_ljung_box_tsv(f.get(), lb, "");
    }

    const auto normality = diag::normality_test(residuals);
    const auto hetero = diag::hetero_check(residuals, o.acf_max_lag, o.lb_lags);
    write_acf_csv(o.common.out(stem + "_sq_acf.csv"), hetero.acf, nullptr);
    {
      auto f = open_out(o.common.out(stem + "_sq_ljung_box.tsv"));
      std::fprintf(f.get(), "lag\tq_stat\tdf\tp_value\tac_1\tac_2\tac_3\tac_4\tac_5\tac_6\n");
      write_ljung_box_tsv(f.get(), hetero.rows, "");
    }
    {
      auto f = open_out(o.common.out(stem + "_normality.txt"));
      std::fprintf(f.get(), "statistic = %s\np_value = %s\nskewness = %s\nexcess_kurtosis = %s\nn = %zu\n",
                   cell(normality.statistic).c_str(), cell(normality.p_value).c_str(),
                   cell(normality.skewness).c_str(),
                   cell(normality.excess_kurtosis).c_str(), residuals.size());
    }
    {
      // the same bundle as one structured document
      auto lb_json = [](const std::vector<diag::LjungBoxRow>& rows) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& row : rows) {
          arr.push_back({{"lag", row.lag},
                         {"q_stat", row.q_stat},
                         {"df", row.df},
                         {"p_value", row.p_value},
                         {"recent_r", row.recent_r}});
        }
        return arr;
      };
      const nlohmann::json doc{
          {"model", stem},
          {"n_residuals", residuals.size()},
          {"acf_se_band", r_acf.se_band},
          {"normality",
           {{"statistic", normality.statistic},
            {"p_value", normality.p_value},
            {"skewness", normality.skewness},
            {"excess_kurtosis", normality.excess_kurtosis}}},
          {"ljung_box", lb_json(lb)},
          {"squared_ljung_box", lb_json(hetero.rows)}};
      auto f = open_out(o.common.out(stem + "_diagnostics.json"));
      const auto text = doc.dump(2);
      std::fprintf(f.get(), "%s\n", text.c_str());
    }
    bundles.push_back({stem, lb});
    std::cout << "diagnosed " << stem << ": normality p=" << cell(normality.p_value)
              << ", Q(" << o.lb_lags.back() << ") p="
              << cell(lb.back().p_value) << "\n";
  }

  if (bundles.size() >= 2) {
    auto f = open_out(o.common.out("comparison.tsv"));
    std::fprintf(f.get(), "model\tlag\tq_stat\tdf\tp_value\tac_1\tac_2\tac_3\tac_4\tac_5\tac_6\n");
    for (const auto& b : bundles) write_ljung_box_tsv(f.get(), b.lb, b.name);
    std::cout << "wrote comparison.tsv (" << bundles.size() << " models)\n";
  }
}

// ----------------------------------------------------------------- simulate

struct SimulateOpts {
  CommonOpts common;
  std::string process = "setar";
  std::size_t n = 500;
  std::uint64_t seed = 0;
  double noise_sd = 0.1;
  double d = 0.3;
  double threshold = 0.0;
  double phi_low = 0.8;
  double phi_high = -0.4;
  std::vector<int> ar_lags;
  std::vector<double> ar_coeffs;
  std::string start = "1970-01";
  std::string output = "sim.csv";
};

void run_simulate(const SimulateOpts& o) {
  const Month start = parse_month_flag(o.start, "--start");
  std::vector<double> values;
  if (o.process == "setar") {
    values = sim::setar(o.n, o.threshold, o.phi_low, o.phi_high, o.noise_sd, o.seed);
  } else if (o.process == "arfima") {
    values = sim::fractional_noise(o.n, o.d, o.noise_sd, o.seed);
  } else if (o.process == "ar") {
    values = sim::subset_ar(o.n, o.ar_lags, o.ar_coeffs, o.noise_sd, o.seed);
  } else if (o.process == "wn") {
    values = sim::white_noise(o.n, o.noise_sd, o.seed);
  } else {
    throw DataError("simulate: unknown process '" + o.process + "'");
  }
  const auto path = o.common.out(o.output);
  save_values_csv(path, start, values, o.common.csv());
  std::cout << "wrote " << o.output << " (" << values.size() << " rows, process="
            << o.process << ", seed=" << o.seed << ")\n";
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Nonlinear time-series modelling: adaptive regression splines "
               "over lagged predictors, fractional differencing and residual "
               "diagnostics"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Key=value config file; flags override");

  TransformOpts transform;
  auto* cmd_transform = app.add_subcommand(
      "transform", "Growth-rate transform of a raw monthly series");
  add_common(cmd_transform, transform.common);
  cmd_transform->add_option("--split", transform.split,
                            "Boundary month YYYY-MM; also writes left/right parts");
  cmd_transform->add_option("--method", transform.method,
                            "symmetric (bounded) or naive (plain ratio)");
  cmd_transform->add_option("--epsilon", transform.epsilon,
                            "Instability threshold for naive denominators");

  FitTsmarsOpts fit_tsmars;
  auto* cmd_fit_tsmars = app.add_subcommand(
      "fit-tsmars", "Fit spline models over a (p, k_max) grid");
  add_common(cmd_fit_tsmars, fit_tsmars.common);
  cmd_fit_tsmars->add_option("--lags", fit_tsmars.lags, "Lag depths p")->delimiter(',');
  cmd_fit_tsmars->add_option("--kmax", fit_tsmars.kmax, "Interaction limits")->delimiter(',');
  cmd_fit_tsmars->add_option("--penalty", fit_tsmars.penalty, "GCV smoothing parameter");
  cmd_fit_tsmars->add_option("--basis-limit", fit_tsmars.basis_limit,
                             "Max basis terms (0 = equal to p)");
  cmd_fit_tsmars->add_flag("--allow-high-degree", fit_tsmars.allow_high_degree,
                           "Permit k_max above 3");

  FitArfimaOpts fit_arfima;
  auto* cmd_fit_arfima = app.add_subcommand(
      "fit-arfima", "Fractional differencing with an AIC grid over (p, q)");
  add_common(cmd_fit_arfima, fit_arfima.common);
  cmd_fit_arfima->add_option("--pmax", fit_arfima.p_max, "Max AR order (<= 3)");
  cmd_fit_arfima->add_option("--qmax", fit_arfima.q_max, "Max MA order (<= 3)");
  cmd_fit_arfima->add_option("--acf-max-lag", fit_arfima.acf_max_lag,
                             "Lags in the filtered-series ACF");

  FitArOpts fit_ar;
  auto* cmd_fit_ar = app.add_subcommand("fit-ar", "Least-squares AR on a lag subset");
  add_common(cmd_fit_ar, fit_ar.common);
  cmd_fit_ar->add_option("--lag-set", fit_ar.lag_set, "Lags to include")
      ->delimiter(',')->required();
  cmd_fit_ar->add_flag("--intercept", fit_ar.intercept, "Include an intercept");

  DiagnoseOpts diagnose;
  auto* cmd_diagnose = app.add_subcommand(
      "diagnose", "Residual ACF, portmanteau, normality and squared-residual checks");
  add_common(cmd_diagnose, diagnose.common);
  cmd_diagnose->add_option("--model", diagnose.models, "Model file (repeatable)")
      ->required();
  cmd_diagnose->add_option("--lb-lags", diagnose.lb_lags, "Portmanteau checkpoints")
      ->delimiter(',');
  cmd_diagnose->add_option("--acf-max-lag", diagnose.acf_max_lag, "ACF depth");
  cmd_diagnose->add_option("--fitted-params", diagnose.fitted_params,
                           "Correct df to lag minus this count");
  cmd_diagnose->add_flag("--bartlett", diagnose.bartlett,
                         "Add lag-dependent bands to the residual ACF");

  SimulateOpts simulate;
  auto* cmd_simulate = app.add_subcommand("simulate", "Deterministic synthetic series");
  add_common(cmd_simulate, simulate.common, /*needs_input=*/false);
  cmd_simulate->add_option("--process", simulate.process, "setar | arfima | ar | wn");
  cmd_simulate->add_option("--n", simulate.n, "Series length");
  cmd_simulate->add_option("--seed", simulate.seed, "RNG seed")->required();
  cmd_simulate->add_option("--noise-sd", simulate.noise_sd, "Innovation sd");
  cmd_simulate->add_option("--d", simulate.d, "Fractional order for arfima");
  cmd_simulate->add_option("--threshold", simulate.threshold, "SETAR threshold");
  cmd_simulate->add_option("--phi-low", simulate.phi_low, "SETAR slope at/below threshold");
  cmd_simulate->add_option("--phi-high", simulate.phi_high, "SETAR slope above threshold");
  cmd_simulate->add_option("--ar-lags", simulate.ar_lags, "Subset-AR lags")->delimiter(',');
  cmd_simulate->add_option("--ar-coeffs", simulate.ar_coeffs, "Subset-AR coefficients")
      ->delimiter(',');
  cmd_simulate->add_option("--start", simulate.start, "First output month");
  cmd_simulate->add_option("--output", simulate.output, "Output file name");

  // subcommand options are accepted from [subcommand] config sections, and
  // --config itself may appear after the subcommand name
  for (auto* cmd : {cmd_transform, cmd_fit_tsmars, cmd_fit_arfima, cmd_fit_ar,
                    cmd_diagnose, cmd_simulate}) {
    cmd->configurable();
    cmd->fallthrough();
  }

  try {
    app.parse(argc, argv);
    if (cmd_transform->parsed()) run_transform(transform);
    if (cmd_fit_tsmars->parsed()) run_fit_tsmars(fit_tsmars);
    if (cmd_fit_arfima->parsed()) run_fit_arfima(fit_arfima);
    if (cmd_fit_ar->parsed()) run_fit_ar(fit_ar);
    if (cmd_diagnose->parsed()) run_diagnose(diagnose);
    if (cmd_simulate->parsed()) run_simulate(simulate);
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    std::cerr << "error[usage]: " << e.what() << "\n";
    return 1;
  } catch (const DataError& e) {
    std::cerr << "error[data]: " << e.what() << "\n";
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "error[numeric]: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error[internal]: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace tsmars::cli
