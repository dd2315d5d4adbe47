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

#include <cmath>
#include <cstdio>
#include <string>

#include "tsmars/anova.hpp"
#include "tsmars/mars.hpp"

namespace tsmars::mars {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string hinge_text(const HingeFactor& f) {
  const char* suffix = f.sign > 0 ? "+" : "-";
  std::string inner = "z[t-" + std::to_string(f.lag) + "]";
  if (f.knot > 0.0) {
    inner += " - " + num(f.knot);
  } else if (f.knot < 0.0) {
    inner += " + " + num(-f.knot);
  }
  return "(" + inner + ")_" + suffix;
}

void append_signed(std::string& eq, double coeff, const std::string& body) {
  if (coeff == 0.0) return;
  eq += coeff < 0.0 ? " - " : " + ";
  eq += num(std::abs(coeff));
  if (!body.empty()) eq += " " + body;
}

std::string render(const MarsModel& model, const LagEmbedding* emb) {
  double intercept = model.intercept;
  std::string body;
  for (const auto& term : model.terms) {
    bool folded = false;
    if (emb != nullptr && term.degree() == 1 &&
        anova::classify_term(term, *emb) == anova::TermClass::linear) {
      // A hinge active over the whole range is the linear map
      // sign * (x - knot); fold the constant part into the intercept.
      const auto& f = term.factors.front();
      const double slope = term.coefficient * (f.sign > 0 ? 1.0 : -1.0);
      intercept -= slope * f.knot;
      append_signed(body, slope, "z[t-" + std::to_string(f.lag) + "]");
      folded = true;
    }
    if (!folded) {
      std::string prod;
      for (const auto& f : term.factors) {
        if (!prod.empty()) prod += " ";
        prod += hinge_text(f);
      }
      append_signed(body, term.coefficient, prod);
    }
  }
  return "z^[t] = " + num(intercept) + body;
}

}  // namespace

std::string format_equation(const MarsModel& model) {
  return render(model, nullptr);
}

std::string format_equation(const MarsModel& model, const LagEmbedding& emb) {
  return render(model, &emb);
}

}  // namespace tsmars::mars
