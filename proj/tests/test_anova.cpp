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
#include <numeric>
#include <vector>

#include "doctest.h"
#include "test_util.hpp"
#include "tsmars/anova.hpp"
#include "tsmars/errors.hpp"
#include "tsmars/mars.hpp"
#include "tsmars/simulate.hpp"

using namespace tsmars;
using anova::TermClass;
using mars::BasisTerm;
using mars::HingeFactor;
using mars::MarsConfig;
using mars::MarsModel;

namespace {

void check_partition(const anova::AnovaDecomposition& d) {
  CHECK(d.ss_constant >= 0.0);
  CHECK(d.ss_linear >= 0.0);
  CHECK(d.ss_nonlinear >= 0.0);
  CHECK(d.ss_residual >= 0.0);
  const double lhs = d.ss_constant + d.ss_linear + d.ss_nonlinear + d.ss_residual;
  CHECK(lhs == doctest::Approx(d.ss_total).epsilon(1e-8));
  const double pct_sum = d.pct_constant + d.pct_linear + d.pct_nonlinear + d.pct_residual;
  CHECK(std::abs(pct_sum - 100.0) <= 0.01);
}

}  // namespace

TEST_CASE("classification by knot position") {
  const auto emb = tsmars::test::embed_of({-0.4, -0.1, 0.2, 0.5, 0.7, 0.9}, 2);
  // lag-1 column over rows: {-0.1, 0.2, 0.5, 0.7}
  BasisTerm below_min{{HingeFactor{+1, 1, -0.3}}, 1.0};
  CHECK(anova::classify_term(below_min, emb) == TermClass::linear);
  BasisTerm at_min{{HingeFactor{+1, 1, -0.1}}, 1.0};
  CHECK(anova::classify_term(at_min, emb) == TermClass::linear);
  BasisTerm interior{{HingeFactor{+1, 1, 0.2}}, 1.0};
  CHECK(anova::classify_term(interior, emb) == TermClass::nonlinear);
  BasisTerm mirrored_above{{HingeFactor{-1, 1, 0.8}}, 1.0};
  CHECK(anova::classify_term(mirrored_above, emb) == TermClass::linear);
  BasisTerm mirrored_interior{{HingeFactor{-1, 1, 0.2}}, 1.0};
  CHECK(anova::classify_term(mirrored_interior, emb) == TermClass::nonlinear);
  BasisTerm interaction{{HingeFactor{+1, 1, -0.3}, HingeFactor{+1, 2, -0.5}}, 1.0};
  CHECK(anova::classify_term(interaction, emb) == TermClass::nonlinear);
}

TEST_CASE("intercept-only decomposition") {
  const auto emb = tsmars::test::embed_of({0.3, 0.5, 0.1, 0.4, 0.2, 0.6}, 1);
  MarsModel model;
  model.p = 1;
  const auto y = emb.response();
  const double mean = std::accumulate(y.begin(), y.end(), 0.0) / y.size();
  const auto d = anova::decompose(model, emb);
  CHECK(d.ss_constant == doctest::Approx(y.size() * mean * mean).epsilon(1e-12));
  CHECK(d.ss_linear == 0.0);
  CHECK(d.ss_nonlinear == 0.0);
  double tss = 0.0;
  for (double v : y) tss += v * v;
  CHECK(d.ss_residual == doctest::Approx(tss - y.size() * mean * mean).epsilon(1e-10));
  check_partition(d);
}

TEST_CASE("all-linear model has zero percent nonlinearity") {
  std::vector<double> z(60);
  z[0] = 0.8;
  for (std::size_t t = 1; t < z.size(); ++t) z[t] = 0.6 * z[t - 1];
  const auto emb = tsmars::test::embed_of(z, 1);
  MarsConfig config;
  config.k_max = 1;
  config.basis_limit = 2;
  const auto model = mars::prune_backward(mars::forward_pass(emb, config), emb);
  const auto d = anova::decompose(model, emb);
  CHECK(d.n_nonlinear_terms == 0);
  CHECK(anova::pct_nonlinearity(d) == 0.0);
  check_partition(d);
}

TEST_CASE("pct_nonlinearity arithmetic and errors") {
  anova::AnovaDecomposition d;
  d.ss_total = 8.0;
  d.ss_nonlinear = 2.0;
  CHECK(anova::pct_nonlinearity(d) == doctest::Approx(25.0));
  d.ss_nonlinear = 0.0;
  CHECK(anova::pct_nonlinearity(d) == 0.0);
  d.ss_total = 0.0;
  CHECK_THROWS_AS(anova::pct_nonlinearity(d), NumericError);
}

TEST_CASE("partition closes and residual matches model rss on fitted models") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto z = sim::setar(180, 0.0, 0.8, -0.4, 0.1, seed);
    const auto emb = tsmars::test::embed_of(z, 4);
    MarsConfig config;
    config.k_max = seed % 2 == 0 ? 1 : 2;
    config.basis_limit = 8;
    const auto model = mars::prune_backward(mars::forward_pass(emb, config), emb);
    const auto d = anova::decompose(model, emb);
    check_partition(d);
    CHECK(d.ss_residual == doctest::Approx(model.rss).epsilon(1e-8));
    CHECK(d.n_linear_terms + d.n_nonlinear_terms ==
          static_cast<int>(model.terms.size()));
  }
}

TEST_CASE("class sums are invariant to term order within a class") {
  const auto z = sim::setar(200, 0.0, 0.8, -0.4, 0.1, 8);
  const auto emb = tsmars::test::embed_of(z, 3);
  MarsConfig config;
  config.k_max = 1;
  config.basis_limit = 6;
  auto model = mars::prune_backward(mars::forward_pass(emb, config), emb);
  const auto before = anova::decompose(model, emb);
  std::reverse(model.terms.begin(), model.terms.end());
  const auto after = anova::decompose(model, emb);
  CHECK(before.ss_constant == doctest::Approx(after.ss_constant).epsilon(1e-9));
  CHECK(before.ss_linear == doctest::Approx(after.ss_linear).epsilon(1e-9));
  CHECK(before.ss_nonlinear == doctest::Approx(after.ss_nonlinear).epsilon(1e-9));
  CHECK(before.ss_residual == doctest::Approx(after.ss_residual).epsilon(1e-9));
}

TEST_CASE("linear-spline subtotal is part of the nonlinear class") {
  const auto z = sim::setar(300, 0.0, 0.8, -0.4, 0.1, 12);
  const auto emb = tsmars::test::embed_of(z, 3);
  MarsConfig config;
  config.k_max = 2;
  config.basis_limit = 8;
  const auto model = mars::prune_backward(mars::forward_pass(emb, config), emb);
  const auto d = anova::decompose(model, emb);
  CHECK(d.ss_linear_spline <= d.ss_nonlinear + 1e-12);
  CHECK(d.ss_linear_spline >= 0.0);
}
