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

#include "tsmars/arfima.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "optim.hpp"
#include "tsmars/errors.hpp"
#include "tsmars/kernels.hpp"
#include "tsmars/linalg.hpp"

namespace tsmars::arfima {

namespace {

constexpr double kGridLo = 0.01;
constexpr double kGridHi = 0.99;
constexpr double kGridStep = 0.01;
constexpr double kRefineTol = 1e-4;
constexpr double kPenaltyValue = 1e12;

std::vector<double> raw_coeffs(double d, std::size_t truncation) {
  std::vector<double> pi(truncation + 1);
  pi[0] = 1.0;
  for (std::size_t k = 1; k <= truncation; ++k) {
    pi[k] = pi[k - 1] * (static_cast<double>(k) - 1.0 - d) / static_cast<double>(k);
  }
  return pi;
}

// AR coefficients a_i of w_t = sum a_i w_{t-i} describe a stationary process
// iff every reflection coefficient of the inverse Levinson-Durbin recursion
// is inside the unit circle.
bool in_stationary_region(std::span<const double> coeffs) {
  std::vector<double> a(coeffs.begin(), coeffs.end());
  for (std::size_t k = a.size(); k > 0; --k) {
    const double r = a[k - 1];
    if (!(std::abs(r) < 1.0)) return false;
    if (k == 1) break;
    std::vector<double> b(k - 1);
    const double denom = 1.0 - r * r;
    for (std::size_t j = 0; j < k - 1; ++j) {
      b[j] = (a[j] + r * a[k - 2 - j]) / denom;
    }
    a = std::move(b);
  }
  return true;
}

struct ArmaFit {
  double css = 0.0;
  std::vector<double> ar;
  std::vector<double> ma;
};

// Conditional sum of squares over t >= burn, with pre-sample shocks set to
// zero. A common burn across grid cells keeps their AIC values comparable.
double arma_css(std::span<const double> w, std::span<const double> ar,
                std::span<const double> ma, std::size_t burn) {
  const std::size_t n = w.size();
  const std::size_t p = ar.size();
  const std::size_t q = ma.size();
  std::vector<double> e(n, 0.0);
  double css = 0.0;
  for (std::size_t t = p; t < n; ++t) {
    double v = w[t];
    for (std::size_t i = 0; i < p; ++i) v -= ar[i] * w[t - 1 - i];
    for (std::size_t j = 0; j < q; ++j) {
      if (t >= 1 + j) v -= ma[j] * e[t - 1 - j];
    }
    e[t] = v;
    if (t >= burn) css += v * v;
  }
  return css;
}

// Explosive or non-invertible parameter vectors get a large penalty so the
// optimizer backs away instead of failing.
double arma_css_penalized(std::span<const double> w, std::span<const double> ar,
                          std::span<const double> ma, std::size_t burn) {
  double excess = 0.0;
  for (double v : ar) excess += std::max(0.0, std::abs(v) - 1.5);
  for (double v : ma) excess += std::max(0.0, std::abs(v) - 1.5);
  if (excess > 0.0) return kPenaltyValue * (1.0 + excess);
  if (!ar.empty() && !in_stationary_region(ar)) return kPenaltyValue;
  if (!ma.empty()) {
    std::vector<double> neg(ma.size());
    for (std::size_t j = 0; j < ma.size(); ++j) neg[j] = -ma[j];
    if (!in_stationary_region(neg)) return kPenaltyValue;
  }
  return arma_css(w, ar, ma, burn);
}

ArmaFit fit_arma_css(std::span<const double> w, int p, int q, std::size_t burn,
                     const ArmaFit* warm) {
  burn = std::max(burn, static_cast<std::size_t>(p));
  ArmaFit fit;
  if (p == 0 && q == 0) {
    fit.css = kernels::dot(w.data() + burn, w.data() + burn, w.size() - burn);
    return fit;
  }
  if (q == 0) {
    // Pure AR: the conditional optimum is ordinary least squares on the
    // lagged columns over the common window.
    const std::size_t n = w.size();
    const std::size_t rows = n - burn;
    std::vector<std::vector<double>> store(static_cast<std::size_t>(p));
    std::vector<std::span<const double>> cols;
    for (int j = 1; j <= p; ++j) {
      auto& col = store[static_cast<std::size_t>(j - 1)];
      col.resize(rows);
      for (std::size_t i = 0; i < rows; ++i) {
        col[i] = w[i + burn - static_cast<std::size_t>(j)];
      }
      cols.emplace_back(col.data(), rows);
    }
    const auto ls = linalg::solve_least_squares(
        cols, std::span<const double>(w.data() + burn, rows));
    fit.ar = ls.coefficients;
    fit.css = ls.rss;
    return fit;
  }

  const std::size_t dim = static_cast<std::size_t>(p + q);
  auto objective = [&](const std::vector<double>& params) {
    std::span<const double> ar(params.data(), static_cast<std::size_t>(p));
    std::span<const double> ma(params.data() + p, static_cast<std::size_t>(q));
    return arma_css_penalized(w, ar, ma, burn);
  };

  std::vector<double> start(dim, 0.0);
  if (warm != nullptr && warm->ar.size() == static_cast<std::size_t>(p) &&
      warm->ma.size() == static_cast<std::size_t>(q)) {
    std::copy(warm->ar.begin(), warm->ar.end(), start.begin());
    std::copy(warm->ma.begin(), warm->ma.end(), start.begin() + p);
    if (objective(start) >= kPenaltyValue) std::fill(start.begin(), start.end(), 0.0);
  }
  const std::size_t budget = 300 + 150 * dim;
  const auto res = optim::nelder_mead(objective, start, 0.1, budget, 1e-12);
  fit.ar.assign(res.x.begin(), res.x.begin() + p);
  fit.ma.assign(res.x.begin() + p, res.x.end());
  fit.css = res.value;
  return fit;
}

struct OuterSearch {
  double d = 0.0;
  double value = 0.0;
  std::vector<std::pair<double, double>> profile;
};

template <class F>
OuterSearch search_d(F&& objective) {
  OuterSearch out;
  double best_d = kGridLo;
  double best_v = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= 99; ++i) {
    const double d = static_cast<double>(i) * kGridStep;
    const double v = objective(d);
    out.profile.emplace_back(d, v);
    if (v < best_v) {
      best_v = v;
      best_d = d;
    }
  }
  const double lo = std::max(kGridLo, best_d - kGridStep);
  const double hi = std::min(kGridHi, best_d + kGridStep);
  const double refined = optim::golden_section(objective, lo, hi, kRefineTol);
  const double refined_v = objective(refined);
  if (refined_v < best_v) {
    out.d = refined;
    out.value = refined_v;
  } else {
    out.d = best_d;
    out.value = best_v;
  }
  return out;
}

void check_series_variance(std::span<const double> z) {
  const auto [lo, hi] = std::minmax_element(z.begin(), z.end());
  if (*lo == *hi) throw NumericError("arfima: constant series, flat objective");
}

}  // namespace

std::vector<double> fracdiff_coeffs(double d, std::size_t truncation) {
  if (!(d >= 0.0 && d <= 1.0)) {
    throw DataError("fracdiff: d must lie in [0, 1], got " + std::to_string(d));
  }
  return raw_coeffs(d, truncation);
}

std::vector<double> apply_fracdiff(std::span<const double> x, double d) {
  const std::size_t n = x.size();
  if (n == 0) return {};
  const auto pi = raw_coeffs(d, n - 1);
  // Reverse the input once so every output value is one contiguous dot.
  std::vector<double> rev(n);
  for (std::size_t i = 0; i < n; ++i) rev[i] = x[n - 1 - i];
  std::vector<double> out(n);
  for (std::size_t t = 0; t < n; ++t) {
    out[t] = kernels::dot(pi.data(), rev.data() + (n - 1 - t), t + 1);
  }
  return out;
}

std::vector<double> apply_fracdiff(const GrowthSeries& series, double d) {
  return apply_fracdiff(series.values(), d);
}

DEstimate estimate_d(const GrowthSeries& series, std::size_t min_length) {
  if (series.size() < min_length) {
    throw DataError("estimate_d: series length " + std::to_string(series.size()) +
                    " below the floor " + std::to_string(min_length));
  }
  check_series_variance(series.values());
  auto css = [&](double d) {
    const auto w = apply_fracdiff(series.values(), d);
    return kernels::dot(w.data(), w.data(), w.size());
  };
  const auto found = search_d(css);
  DEstimate est;
  est.d = found.d;
  est.profile = found.profile;
  return est;
}

std::vector<double> arma_residuals(std::span<const double> w,
                                   std::span<const double> ar,
                                   std::span<const double> ma) {
  const std::size_t n = w.size();
  const std::size_t p = ar.size();
  const std::size_t q = ma.size();
  std::vector<double> e(n, 0.0);
  for (std::size_t t = p; t < n; ++t) {
    double v = w[t];
    for (std::size_t i = 0; i < p; ++i) v -= ar[i] * w[t - 1 - i];
    for (std::size_t j = 0; j < q; ++j) {
      if (t >= 1 + j) v -= ma[j] * e[t - 1 - j];
    }
    e[t] = v;
  }
  return {e.begin() + static_cast<std::ptrdiff_t>(p), e.end()};
}

ArfimaGridResult fit_arfima_grid(const GrowthSeries& series, int p_max, int q_max) {
  if (p_max < 0 || q_max < 0 || p_max > 3 || q_max > 3) {
    throw DataError("arfima grid: orders must lie in 0..3");
  }
  check_series_variance(series.values());
  const std::size_t n = series.size();

  // The coarse d grid is shared by every cell; cache the filtered series.
  std::map<double, std::vector<double>> filtered;
  auto filtered_at = [&](double d) -> const std::vector<double>& {
    auto it = filtered.find(d);
    if (it == filtered.end()) {
      it = filtered.emplace(d, apply_fracdiff(series.values(), d)).first;
    }
    return it->second;
  };

  ArfimaGridResult result;
  bool have_best = false;
  // Every cell conditions on the same presample, so AIC values compare the
  // models rather than their windows.
  const auto burn = static_cast<std::size_t>(p_max);
  for (int p = 0; p <= p_max; ++p) {
    for (int q = 0; q <= q_max; ++q) {
      ArmaFit warm;
      bool have_warm = false;
      auto cell_css = [&](double d) {
        const auto& w = filtered_at(d);
        const ArmaFit fit = fit_arma_css(w, p, q, burn, have_warm ? &warm : nullptr);
        warm = fit;
        have_warm = true;
        return fit.css;
      };
      const auto found = search_d(cell_css);
      const ArmaFit fit = fit_arma_css(filtered_at(found.d), p, q, burn,
                                       have_warm ? &warm : nullptr);

      ArfimaModel model;
      model.p = p;
      model.q = q;
      model.d = found.d;
      model.ar = fit.ar;
      model.ma = fit.ma;
      model.css = fit.css;
      model.n = n;
      model.sigma2 = fit.css / static_cast<double>(n);
      const double safe_css = std::max(fit.css, 1e-300);
      model.aic = static_cast<double>(n) * std::log(safe_css / static_cast<double>(n)) +
                  2.0 * (p + q + 1);

      result.table.push_back({p, q, model.d, model.css, model.aic});
      if (!have_best || model.aic < result.best.aic) {
        have_best = true;
        result.best = model;
      }
    }
  }
  return result;
}

SubsetArModel fit_subset_ar(const GrowthSeries& series, std::span<const int> lags,
                            bool include_intercept) {
  if (lags.empty()) throw DataError("subset ar: empty lag set");
  std::vector<int> sorted(lags.begin(), lags.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw DataError("subset ar: duplicate lags in the lag set");
  }
  if (sorted.front() < 1) throw DataError("subset ar: lags must be >= 1");
  const int max_lag = sorted.back();
  if (series.size() <= static_cast<std::size_t>(max_lag)) {
    throw DataError("subset ar: max lag " + std::to_string(max_lag) +
                    " is not below series length " + std::to_string(series.size()));
  }

  const auto z = series.values();
  const std::size_t rows = series.size() - static_cast<std::size_t>(max_lag);
  std::vector<double> ones(rows, 1.0);
  std::vector<std::vector<double>> store;
  store.reserve(lags.size());
  std::vector<std::span<const double>> cols;
  if (include_intercept) cols.emplace_back(ones.data(), rows);
  for (int lag : lags) {
    auto& col = store.emplace_back(rows);
    for (std::size_t i = 0; i < rows; ++i) {
      col[i] = z[i + static_cast<std::size_t>(max_lag - lag)];
    }
    cols.emplace_back(col.data(), rows);
  }
  std::vector<double> y(z.begin() + max_lag, z.end());
  const auto ls = linalg::solve_least_squares(cols, y);
  if (!ls.dropped.empty()) {
    std::string names;
    for (std::size_t c : ls.dropped) {
      if (!names.empty()) names += ", ";
      const std::size_t shift = include_intercept ? 1 : 0;
      names += (include_intercept && c == 0)
                   ? "intercept"
                   : "lag " + std::to_string(lags[c - shift]);
    }
    throw NumericError("subset ar: rank-deficient design, collinear columns: " + names);
  }

  SubsetArModel model;
  model.lags.assign(lags.begin(), lags.end());
  model.has_intercept = include_intercept;
  const std::size_t shift = include_intercept ? 1 : 0;
  if (include_intercept) model.intercept = ls.coefficients[0];
  model.coefficients.assign(ls.coefficients.begin() + static_cast<std::ptrdiff_t>(shift),
                            ls.coefficients.end());
  model.residuals = ls.residuals;
  model.rss = ls.rss;
  model.n = rows;
  return model;
}

std::vector<double> predict_subset_ar(const SubsetArModel& model,
                                      const GrowthSeries& series) {
  const int max_lag = *std::max_element(model.lags.begin(), model.lags.end());
  if (series.size() <= static_cast<std::size_t>(max_lag)) {
    throw DataError("subset ar: series too short for the model's lags");
  }
  const auto z = series.values();
  const std::size_t rows = series.size() - static_cast<std::size_t>(max_lag);
  std::vector<double> fitted(rows, model.has_intercept ? model.intercept : 0.0);
  for (std::size_t j = 0; j < model.lags.size(); ++j) {
    const int lag = model.lags[j];
    kernels::axpy(model.coefficients[j], z.data() + (max_lag - lag), fitted.data(), rows);
  }
  return fitted;
}

}  // namespace tsmars::arfima
