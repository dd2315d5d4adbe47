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

#include "tsmars/model_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "tsmars/errors.hpp"

namespace tsmars::io {

namespace {

using nlohmann::json;

json to_json(const mars::MarsModel& m) {
  json terms = json::array();
  for (const auto& term : m.terms) {
    json factors = json::array();
    for (const auto& f : term.factors) {
      factors.push_back({{"sign", f.sign}, {"lag", f.lag}, {"knot", f.knot}});
    }
    terms.push_back({{"coefficient", term.coefficient}, {"factors", factors}});
  }
  return json{{"kind", "mars"},
              {"intercept", m.intercept},
              {"gcv_penalty", m.gcv_penalty},
              {"p", m.p},
              {"k_max", m.k_max},
              {"rss", m.rss},
              {"gcv", m.gcv},
              {"n", m.n},
              {"terms", terms}};
}

mars::MarsModel mars_from_json(const json& j) {
  mars::MarsModel m;
  m.intercept = j.at("intercept").get<double>();
  m.gcv_penalty = j.at("gcv_penalty").get<double>();
  m.p = j.at("p").get<int>();
  m.k_max = j.at("k_max").get<int>();
  m.rss = j.at("rss").get<double>();
  m.gcv = j.at("gcv").get<double>();
  m.n = j.at("n").get<std::size_t>();
  for (const auto& jt : j.at("terms")) {
    mars::BasisTerm term;
    term.coefficient = jt.at("coefficient").get<double>();
    for (const auto& jf : jt.at("factors")) {
      mars::HingeFactor f;
      f.sign = jf.at("sign").get<int>();
      f.lag = jf.at("lag").get<int>();
      f.knot = jf.at("knot").get<double>();
      if (f.sign != 1 && f.sign != -1) throw DataError("model: hinge sign must be +-1");
      if (f.lag < 1 || f.lag > m.p) throw DataError("model: hinge lag out of range");
      term.factors.push_back(f);
    }
    if (term.factors.empty()) throw DataError("model: term without factors");
    m.terms.push_back(std::move(term));
  }
  return m;
}

json to_json(const arfima::SubsetArModel& m) {
  return json{{"kind", "subset_ar"},
              {"lags", m.lags},
              {"coefficients", m.coefficients},
              {"has_intercept", m.has_intercept},
              {"intercept", m.intercept},
              {"rss", m.rss},
              {"n", m.n}};
}

arfima::SubsetArModel subset_ar_from_json(const json& j) {
  arfima::SubsetArModel m;
  m.lags = j.at("lags").get<std::vector<int>>();
  m.coefficients = j.at("coefficients").get<std::vector<double>>();
  m.has_intercept = j.at("has_intercept").get<bool>();
  m.intercept = j.at("intercept").get<double>();
  m.rss = j.at("rss").get<double>();
  m.n = j.at("n").get<std::size_t>();
  if (m.lags.empty() || m.lags.size() != m.coefficients.size()) {
    throw DataError("model: lag and coefficient lists must match");
  }
  return m;
}

json to_json(const arfima::ArfimaModel& m) {
  return json{{"kind", "arfima"}, {"p", m.p},         {"q", m.q},
              {"d", m.d},         {"ar", m.ar},       {"ma", m.ma},
              {"sigma2", m.sigma2}, {"css", m.css},   {"aic", m.aic},
              {"n", m.n}};
}

arfima::ArfimaModel arfima_from_json(const json& j) {
  arfima::ArfimaModel m;
  m.p = j.at("p").get<int>();
  m.q = j.at("q").get<int>();
  m.d = j.at("d").get<double>();
  m.ar = j.at("ar").get<std::vector<double>>();
  m.ma = j.at("ma").get<std::vector<double>>();
  m.sigma2 = j.at("sigma2").get<double>();
  m.css = j.at("css").get<double>();
  m.aic = j.at("aic").get<double>();
  m.n = j.at("n").get<std::size_t>();
  if (m.ar.size() != static_cast<std::size_t>(m.p) ||
      m.ma.size() != static_cast<std::size_t>(m.q)) {
    throw DataError("model: ar/ma lengths must equal p/q");
  }
  return m;
}

}  // namespace

std::string serialize_model(const AnyModel& model) {
  const json j = std::visit([](const auto& m) { return to_json(m); }, model);
  return j.dump(2) + "\n";
}

AnyModel parse_model(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw DataError(std::string("model: invalid JSON: ") + e.what());
  }
  try {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "mars") return mars_from_json(j);
    if (kind == "subset_ar") return subset_ar_from_json(j);
    if (kind == "arfima") return arfima_from_json(j);
    throw DataError("model: unknown kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw DataError(std::string("model: missing or mistyped field: ") + e.what());
  }
}

void save_model(const std::filesystem::path& path, const AnyModel& model) {
  std::ofstream out(path);
  if (!out) throw DataError("model: cannot write " + path.string());
  out << serialize_model(model);
}

AnyModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("model: cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_model(ss.str());
}

}  // namespace tsmars::io
