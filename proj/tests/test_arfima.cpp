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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "test_util.hpp"
#include "tsmars/arfima.hpp"
#include "tsmars/diagnostics.hpp"
#include "tsmars/errors.hpp"
#include "tsmars/simulate.hpp"

using namespace tsmars;
using test::growth_of;

TEST_CASE("fracdiff coefficients: boundary orders") {
  const auto first_diff = arfima::fracdiff_coeffs(1.0, 3);
  CHECK(first_diff == std::vector<double>{1.0, -1.0, 0.0, 0.0});
  const auto identity = arfima::fracdiff_coeffs(0.0, 3);
  CHECK(identity == std::vector<double>{1.0, 0.0, 0.0, 0.0});
  const auto half = arfima::fracdiff_coeffs(0.5, 3);
  CHECK(half[0] == 1.0);
  CHECK(half[1] == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(half[2] == doctest::Approx(-0.125).epsilon(1e-15));
  CHECK(half[3] == doctest::Approx(-0.0625).epsilon(1e-15));
}

TEST_CASE("fracdiff coefficients satisfy the recursion identity") {
  for (double d : {0.1, 0.29, 0.5, 0.9}) {
    const auto pi = arfima::fracdiff_coeffs(d, 50);
    CHECK(pi[0] == 1.0);
    // first terms against the explicit binomial expansion
    CHECK(pi[1] == doctest::Approx(-d).epsilon(1e-14));
    CHECK(pi[2] == doctest::Approx(d * (d - 1.0) / 2.0).epsilon(1e-14));
    CHECK(pi[3] == doctest::Approx(-d * (d - 1.0) * (d - 2.0) / 6.0).epsilon(1e-14));
    for (std::size_t k = 1; k < pi.size(); ++k) {
      const double expect = pi[k - 1] * (static_cast<double>(k) - 1.0 - d) /
                            static_cast<double>(k);
      CHECK(pi[k] == doctest::Approx(expect).epsilon(1e-14));
    }
  }
  CHECK_THROWS_AS(arfima::fracdiff_coeffs(-0.1, 5), DataError);
  CHECK_THROWS_AS(arfima::fracdiff_coeffs(1.1, 5), DataError);
}

TEST_CASE("apply_fracdiff boundary behavior") {
  const std::vector<double> x{0.5, -0.2, 0.3, 0.1, -0.4};
  SUBCASE("d = 0 is the identity") {
    CHECK(arfima::apply_fracdiff(x, 0.0) == x);
  }
  SUBCASE("d = 1 is first differencing with a truncated start") {
    const auto out = arfima::apply_fracdiff(x, 1.0);
    REQUIRE(out.size() == x.size());
    CHECK(out[0] == x[0]);
    for (std::size_t t = 1; t < x.size(); ++t) {
      CHECK(out[t] == doctest::Approx(x[t] - x[t - 1]).epsilon(1e-15));
    }
  }
}

TEST_CASE("apply_fracdiff is linear") {
  test::UniformRng rng(4);
  const auto x = rng.vec(64);
  const auto y = rng.vec(64);
  std::vector<double> combo(64);
  for (std::size_t i = 0; i < combo.size(); ++i) combo[i] = 2.0 * x[i] - 0.5 * y[i];
  const auto fx = arfima::apply_fracdiff(x, 0.37);
  const auto fy = arfima::apply_fracdiff(y, 0.37);
  const auto fc = arfima::apply_fracdiff(combo, 0.37);
  for (std::size_t i = 0; i < combo.size(); ++i) {
    CHECK(fc[i] == doctest::Approx(2.0 * fx[i] - 0.5 * fy[i]).epsilon(1e-10));
  }
}

TEST_CASE("fracdiff round trip through the inverse expansion") {
  test::UniformRng rng(6);
  const auto x = rng.vec(200);
  for (double d : {0.2, 0.45, 0.8}) {
    const auto filtered = arfima::apply_fracdiff(x, d);
    const auto back = arfima::apply_fracdiff(filtered, -d);
    for (std::size_t i = 0; i < x.size(); ++i) {
      CHECK(back[i] == doctest::Approx(x[i]).epsilon(1e-8));
    }
  }
}

TEST_CASE("filtering fractional noise at the true order whitens it") {
  const auto z = sim::fractional_noise(2000, 0.3, 0.1, 2024);
  const auto w = arfima::apply_fracdiff(z, 0.3);
  const auto r = diag::acf(w, 24);
  int inside = 0;
  for (double rk : r.r) {
    if (std::abs(rk) <= r.se_band) ++inside;
  }
  CHECK(inside >= 22);
}

TEST_CASE("estimate_d recovers the fractional order") {
  const auto z = sim::fractional_noise(2000, 0.3, 0.1, 11);
  const auto est = arfima::estimate_d(growth_of(z));
  CHECK(est.d >= 0.22);
  CHECK(est.d <= 0.38);
  CHECK(est.profile.size() == 99);
}

TEST_CASE("estimate_d on white noise stays near zero") {
  const auto z = sim::white_noise(2000, 0.1, 12);
  const auto est = arfima::estimate_d(growth_of(z));
  CHECK(est.d < 0.08);
}

TEST_CASE("estimate_d validates its inputs") {
  const auto z = sim::white_noise(30, 0.1, 1);
  CHECK_THROWS_AS(arfima::estimate_d(growth_of(z)), DataError);
  std::vector<double> flat(100, 0.4);
  CHECK_THROWS_AS(arfima::estimate_d(growth_of(flat)), NumericError);
}

TEST_CASE("arma residual recursion matches a hand-rolled AR(1)") {
  const std::vector<double> w{1.0, 0.5, 0.2, -0.3, 0.4};
  const std::vector<double> ar{0.5};
  const auto e = arfima::arma_residuals(w, ar, {});
  REQUIRE(e.size() == 4);
  CHECK(e[0] == doctest::Approx(0.5 - 0.5 * 1.0));
  CHECK(e[1] == doctest::Approx(0.2 - 0.5 * 0.5));
  // with an MA term the previous shock feeds back
  const auto e2 = arfima::arma_residuals(w, ar, std::vector<double>{0.3});
  CHECK(e2[0] == doctest::Approx(0.0));  // e_{t-1} unset -> same as pure AR
  CHECK(e2[1] == doctest::Approx(0.2 - 0.5 * 0.5 - 0.3 * e2[0]));
}

TEST_CASE("arfima grid: degenerate grid reduces to estimate_d") {
  const auto z = sim::fractional_noise(600, 0.3, 0.1, 9);
  const auto series = growth_of(z);
  const auto grid = arfima::fit_arfima_grid(series, 0, 0);
  REQUIRE(grid.table.size() == 1);
  const auto est = arfima::estimate_d(series);
  CHECK(grid.best.d == est.d);
  CHECK(grid.best.p == 0);
  CHECK(grid.best.q == 0);
}

TEST_CASE("arfima grid: full grid shape and the superset property") {
  const auto z = sim::fractional_noise(400, 0.35, 0.1, 19);
  const auto series = growth_of(z);
  const auto grid = arfima::fit_arfima_grid(series, 3, 3);
  CHECK(grid.table.size() == 16);
  double cell00_aic = 0.0;
  for (const auto& row : grid.table) {
    if (row.p == 0 && row.q == 0) cell00_aic = row.aic;
  }
  CHECK(grid.best.aic <= cell00_aic);
  CHECK_THROWS_AS(arfima::fit_arfima_grid(series, 4, 0), DataError);
}

TEST_CASE("arfima grid on pure fractional noise: selection behavior" *
          doctest::timeout(800)) {
  // An exhaustive (p, q) grid scored by AIC overfits at a substantial rate:
  // each extra parameter wins once its chi-square-scale CSS gain exceeds 2,
  // and near-cancelling ARMA pairs riding the d trade-off inflate those
  // gains beyond the nominal chi-square story. Measured over two seed bases
  // this lands near 19/50, so the checks pin what the procedure actually
  // guarantees: selection meaningfully above chance, a bounded spurious AIC
  // margin, and an accurate d in the (0, d, 0) cell.
  int correct = 0;
  int d_ok = 0;
  double worst_margin = 0.0;
  const int runs = 50;
  for (int s = 0; s < runs; ++s) {
    const auto z = sim::fractional_noise(2000, 0.3, 0.1, 3000 + s);
    const auto grid = arfima::fit_arfima_grid(growth_of(z), 3, 3);
    if (grid.best.p == 0 && grid.best.q == 0) ++correct;
    for (const auto& row : grid.table) {
      if (row.p == 0 && row.q == 0) {
        worst_margin = std::max(worst_margin, row.aic - grid.best.aic);
        if (row.d >= 0.22 && row.d <= 0.38) ++d_ok;
      }
    }
  }
  MESSAGE("parsimony rate: ", correct, "/", runs, ", worst AIC margin ",
          worst_margin);
  CHECK(correct >= 15);        // chance level on the 16-cell grid would be ~3
  CHECK(worst_margin <= 25.0);
  CHECK(d_ok >= 48);
}

TEST_CASE("subset AR recovers a lag-2 coefficient") {
  const std::vector<int> lags{2};
  const std::vector<double> coeffs{0.4};
  const auto z = sim::subset_ar(1000, lags, coeffs, 0.1, 5);
  const auto model = arfima::fit_subset_ar(growth_of(z), lags);
  REQUIRE(model.coefficients.size() == 1);
  CHECK(std::abs(model.coefficients[0] - 0.4) <= 0.07);
  CHECK(model.n == 998);
}

TEST_CASE("subset AR interpolates an exact autoregression") {
  std::vector<double> z(50);
  z[0] = 0.9;
  for (std::size_t t = 1; t < z.size(); ++t) z[t] = 0.9 * z[t - 1];
  const std::vector<int> lags{1};
  const auto model = arfima::fit_subset_ar(growth_of(z), lags);
  CHECK(model.coefficients[0] == doctest::Approx(0.9).epsilon(1e-10));
  CHECK(model.rss <= 1e-18);
}

TEST_CASE("subset AR accepts a ten-lag seasonal set") {
  const std::vector<int> lags{1, 2, 3, 9, 12, 14, 16, 20, 24, 48};
  const auto z = sim::subset_ar(600, std::vector<int>{1, 12},
                                std::vector<double>{0.3, 0.25}, 0.1, 21);
  const auto model = arfima::fit_subset_ar(growth_of(z), lags);
  CHECK(model.coefficients.size() == 10);
  CHECK(model.residuals.size() == model.n);
  // residuals orthogonal to every included lag column
  const auto series = growth_of(z);
  for (std::size_t j = 0; j < lags.size(); ++j) {
    double ip = 0.0;
    for (std::size_t i = 0; i < model.n; ++i) {
      ip += model.residuals[i] * z[i + 48 - static_cast<std::size_t>(lags[j])];
    }
    CHECK(std::abs(ip) <= 1e-8 * static_cast<double>(model.n));
  }
}

TEST_CASE("subset AR rejects collinear lags by name") {
  std::vector<double> z;
  for (int i = 0; i < 40; ++i) z.push_back(i % 2 == 0 ? 0.3 : -0.2);
  const std::vector<int> lags{2, 4};
  CHECK_THROWS_WITH_AS(arfima::fit_subset_ar(growth_of(z), lags),
                       doctest::Contains("lag 4"), NumericError);
}

TEST_CASE("subset AR validates the lag set") {
  const auto z = sim::white_noise(50, 0.1, 2);
  CHECK_THROWS_AS(arfima::fit_subset_ar(growth_of(z), std::vector<int>{}), DataError);
  CHECK_THROWS_AS(arfima::fit_subset_ar(growth_of(z), std::vector<int>{3, 3}), DataError);
  CHECK_THROWS_AS(arfima::fit_subset_ar(growth_of(z), std::vector<int>{60}), DataError);
  CHECK_THROWS_AS(arfima::fit_subset_ar(growth_of(z), std::vector<int>{0}), DataError);
}

TEST_CASE("intercept flag adds a fitted mean") {
  auto z = sim::subset_ar(400, std::vector<int>{1}, std::vector<double>{0.5}, 0.05, 33);
  for (auto& v : z) v += 0.2;  // shift the level
  const auto with = arfima::fit_subset_ar(growth_of(z), std::vector<int>{1}, true);
  CHECK(with.has_intercept);
  CHECK(with.intercept > 0.05);
  const auto without = arfima::fit_subset_ar(growth_of(z), std::vector<int>{1}, false);
  CHECK(without.rss >= with.rss);
}
