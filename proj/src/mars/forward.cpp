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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <vector>

#include "tsmars/errors.hpp"
#include "tsmars/kernels.hpp"
#include "tsmars/linalg.hpp"
#include "tsmars/mars.hpp"

namespace tsmars::mars {

namespace {

constexpr double kTieRel = 1e-12;
// A candidate column whose squared norm is this small relative to the moment
// scale is cancellation noise, not data.
constexpr double kCancelRel = 1e-12;

struct Candidate {
  double gcv = std::numeric_limits<double>::infinity();
  int lag = 0;
  double knot = 0.0;
  std::size_t parent = 0;  // 0 = constant basis
  bool valid = false;
};

// Tie-break rule: GCVs within 1e-12 relative are a tie; prefer the lower
// lag, then the lower knot, then the parent added earlier.
bool candidate_better(const Candidate& a, const Candidate& b) {
  if (!b.valid) return a.valid;
  if (!a.valid) return false;
  const double scale = std::max(std::abs(a.gcv), std::abs(b.gcv));
  if (a.gcv < b.gcv - kTieRel * scale) return true;
  if (b.gcv < a.gcv - kTieRel * scale) return false;
  if (a.lag != b.lag) return a.lag < b.lag;
  if (a.knot != b.knot) return a.knot < b.knot;
  return a.parent < b.parent;
}

struct ScanSums {
  std::vector<double> u_tot, w_tot, u_run, w_run;
  double uy_tot = 0, wy_tot = 0, p0_tot = 0, p1_tot = 0, p2_tot = 0;
  double uy = 0, wy = 0, p0 = 0, p1 = 0, p2 = 0;

  void reset(std::size_t m) {
    u_tot.assign(m, 0.0);
    w_tot.assign(m, 0.0);
    u_run.assign(m, 0.0);
    w_run.assign(m, 0.0);
    uy_tot = wy_tot = p0_tot = p1_tot = p2_tot = 0.0;
    uy = wy = p0 = p1 = p2 = 0.0;
  }
};

class ForwardFit {
 public:
  ForwardFit(const LagEmbedding& emb, const MarsConfig& config)
      : emb_(emb),
        y_(emb.response()),
        n_(emb.rows()),
        p_(emb.max_lag()),
        k_max_(config.k_max),
        basis_limit_(config.basis_limit > 0 ? config.basis_limit : emb.max_lag()),
        penalty_(config.gcv_penalty),
        ortho_(emb.rows()),
        stride_(static_cast<std::size_t>(basis_limit_) + 1) {
    if (k_max_ < 1) throw DataError("mars: k_max must be >= 1");
    if (k_max_ > 3 && !config.allow_high_degree) {
      throw DataError("mars: k_max above 3 requires the high-degree override");
    }
    if (basis_limit_ < 1) throw DataError("mars: basis limit must be >= 1");
    if (!(penalty_ >= 0.0)) throw DataError("mars: gcv penalty must be >= 0");
    if (n_ < 2) throw DataError("mars: degenerate embedding, fewer than 2 rows");

    sort_columns();
    yy_ = kernels::dot(y_.data(), y_.data(), n_);
    qrows_.assign(n_ * stride_, 0.0);

    std::vector<double> ones(n_, 1.0);
    bcols_.push_back(ones);
    ortho_.push(ones);
    append_qrow_column(0);
    qy_.push_back(kernels::dot(ortho_.column(0).data(), y_.data(), n_));
    rss_ = std::max(yy_ - qy_[0] * qy_[0], 0.0);
    gcv_ = gcv_score(rss_, n_, 1, penalty_);
  }

  MarsModel run(ForwardTrace* trace) {
    if (trace != nullptr) {
      trace->rss_by_step.push_back(rss_);
      trace->gcv_by_step.push_back(gcv_);
    }
    while (static_cast<int>(terms_.size()) < basis_limit_) {
      const Candidate best = scan_all();
      if (!best.valid || !(best.gcv < gcv_)) break;
      if (!accept(best)) break;
      if (trace != nullptr) {
        trace->rss_by_step.push_back(rss_);
        trace->gcv_by_step.push_back(gcv_);
      }
    }
    MarsModel model;
    model.p = p_;
    model.k_max = k_max_;
    model.gcv_penalty = penalty_;
    model.n = n_;
    model.terms = terms_;
    finalize_coefficients(model);
    return model;
  }

 private:
  void sort_columns() {
    order_.resize(static_cast<std::size_t>(p_));
    for (int v = 1; v <= p_; ++v) {
      auto& ord = order_[static_cast<std::size_t>(v - 1)];
      ord.resize(n_);
      for (std::size_t i = 0; i < n_; ++i) ord[i] = static_cast<std::uint32_t>(i);
      const auto x = emb_.lag_column(v);
      std::sort(ord.begin(), ord.end(), [&x](std::uint32_t a, std::uint32_t b) {
        if (x[a] != x[b]) return x[a] < x[b];
        return a < b;
      });
    }
  }

  void append_qrow_column(std::size_t j) {
    const auto q = ortho_.column(j);
    for (std::size_t i = 0; i < n_; ++i) qrows_[i * stride_ + j] = q[i];
  }

  // Scores every (parent, lag, knot) triple and returns the winner.
  Candidate scan_all() {
    Candidate best;
    const int max_added = std::min(2, basis_limit_ - static_cast<int>(terms_.size()));
    if (max_added < 1) return best;
    for (std::size_t parent = 0; parent < bcols_.size(); ++parent) {
      const int degree = parent == 0 ? 0 : terms_[parent - 1].degree();
      if (degree >= k_max_) continue;
      for (int lag = 1; lag <= p_; ++lag) {
        if (parent > 0 && term_uses_lag(terms_[parent - 1], lag)) continue;
        scan_pair(parent, lag, max_added, best);
      }
    }
    return best;
  }

  static bool term_uses_lag(const BasisTerm& term, int lag) {
    for (const auto& f : term.factors) {
      if (f.lag == lag) return true;
    }
    return false;
  }

  // Knot scan for a fixed (parent, lag). Running sums over the active set
  // {x > knot} turn per-knot scoring into an O(m) evaluation.
  void scan_pair(std::size_t parent, int lag, int max_added, Candidate& best) {
    const double* b = bcols_[parent].data();
    const auto x = emb_.lag_column(lag);
    const std::size_t m = ortho_.size();
    sums_.reset(m);

    for (std::size_t i = 0; i < n_; ++i) {
      const double bi = b[i];
      if (bi == 0.0) continue;
      const double* row = &qrows_[i * stride_];
      const double xi = x[i];
      kernels::axpy(bi, row, sums_.u_tot.data(), m);
      kernels::axpy(bi * xi, row, sums_.w_tot.data(), m);
      sums_.uy_tot += bi * y_[i];
      sums_.wy_tot += bi * xi * y_[i];
      const double b2 = bi * bi;
      sums_.p0_tot += b2;
      sums_.p1_tot += b2 * xi;
      sums_.p2_tot += b2 * xi * xi;
    }

    const auto& ord = order_[static_cast<std::size_t>(lag - 1)];
    std::size_t pos = n_;  // scan from the largest value down
    while (pos > 0) {
      // Group of equal values [group_lo, pos).
      const double xi = x[ord[pos - 1]];
      std::size_t group_lo = pos;
      bool admissible = false;
      while (group_lo > 0 && x[ord[group_lo - 1]] == xi) {
        --group_lo;
        if (b[ord[group_lo]] != 0.0) admissible = true;
      }
      if (admissible) score_knot(parent, lag, xi, m, max_added, best);
      for (std::size_t t = group_lo; t < pos; ++t) {
        const std::size_t i = ord[t];
        const double bi = b[i];
        if (bi == 0.0) continue;
        const double* row = &qrows_[i * stride_];
        kernels::axpy(bi, row, sums_.u_run.data(), m);
        kernels::axpy(bi * xi, row, sums_.w_run.data(), m);
        sums_.uy += bi * y_[i];
        sums_.wy += bi * xi * y_[i];
        const double b2 = bi * bi;
        sums_.p0 += b2;
        sums_.p1 += b2 * xi;
        sums_.p2 += b2 * xi * xi;
      }
      pos = group_lo;
    }
  }

  void score_knot(std::size_t parent, int lag, double xi, std::size_t m,
                  int max_added, Candidate& best) {
    const auto ev = kernels::knot_pair_eval(sums_.w_run.data(), sums_.u_run.data(),
                                            sums_.w_tot.data(), sums_.u_tot.data(),
                                            qy_.data(), xi, m);
    const double cc_pos = sums_.p2 - 2.0 * xi * sums_.p1 + xi * xi * sums_.p0;
    const double cy_pos = sums_.wy - xi * sums_.uy;
    const double cc_neg = xi * xi * (sums_.p0_tot - sums_.p0) -
                          2.0 * xi * (sums_.p1_tot - sums_.p1) +
                          (sums_.p2_tot - sums_.p2);
    const double cy_neg = xi * (sums_.uy_tot - sums_.uy) - (sums_.wy_tot - sums_.wy);
    const double moment_scale =
        sums_.p2_tot + xi * xi * sums_.p0_tot + std::numeric_limits<double>::min();

    int added = 0;
    double drop = 0.0;

    const double nu_pos = cc_pos - ev.vv;
    const bool pos_ok = cc_pos > kCancelRel * moment_scale &&
                        nu_pos > linalg::kRankTol * cc_pos;
    double ry_pos = 0.0;
    if (pos_ok) {
      ry_pos = cy_pos - ev.vg;
      drop += ry_pos * ry_pos / nu_pos;
      ++added;
    }

    double nu_neg = cc_neg - ev.mm;
    double ry_neg = cy_neg - ev.mg;
    if (pos_ok) {
      nu_neg -= ev.vm * ev.vm / nu_pos;
      ry_neg += ev.vm * ry_pos / nu_pos;
    }
    const bool neg_ok = cc_neg > kCancelRel * moment_scale &&
                        nu_neg > linalg::kRankTol * cc_neg;
    if (neg_ok) {
      drop += ry_neg * ry_neg / nu_neg;
      ++added;
    }

    if (added == 0 || added > max_added) return;
    const std::size_t n_basis = 1 + terms_.size() + static_cast<std::size_t>(added);
    const double c_eff = static_cast<double>(n_basis) +
                         penalty_ * (static_cast<double>(n_basis) - 1.0);
    if (c_eff >= static_cast<double>(n_)) return;

    const double rss_new = std::max(rss_ - drop, 0.0);
    const double denom = 1.0 - c_eff / static_cast<double>(n_);
    Candidate cand;
    cand.gcv = (rss_new / static_cast<double>(n_)) / (denom * denom);
    cand.lag = lag;
    cand.knot = xi;
    cand.parent = parent;
    cand.valid = true;
    if (candidate_better(cand, best)) best = cand;
  }

  // Rebuilds the winning pair exactly and appends whichever sides are
  // numerically independent; updates rss/gcv from the actual projections.
  bool accept(const Candidate& cand) {
    const auto x = emb_.lag_column(cand.lag);
    const double* parent_col = bcols_[cand.parent].data();
    std::vector<double> hinge(n_);
    std::vector<double> col(n_);
    bool any = false;

    for (int sign = +1; sign >= -1; sign -= 2) {
      if (sign > 0) {
        kernels::hinge_pos(x.data(), cand.knot, hinge.data(), n_);
      } else {
        kernels::hinge_neg(x.data(), cand.knot, hinge.data(), n_);
      }
      kernels::mul(parent_col, hinge.data(), col.data(), n_);
      if (static_cast<int>(terms_.size()) >= basis_limit_) continue;
      if (!ortho_.push(col)) continue;

      const std::size_t j = ortho_.size() - 1;
      append_qrow_column(j);
      qy_.push_back(kernels::dot(ortho_.column(j).data(), y_.data(), n_));
      rss_ = std::max(rss_ - qy_.back() * qy_.back(), 0.0);

      BasisTerm term;
      if (cand.parent > 0) term.factors = terms_[cand.parent - 1].factors;
      term.factors.push_back(HingeFactor{sign, cand.lag, cand.knot});
      terms_.push_back(std::move(term));
      bcols_.push_back(col);
      any = true;
    }
    if (!any) return false;
    gcv_ = gcv_score(rss_, n_, 1 + terms_.size(), penalty_);
    return true;
  }

  // Final coefficients come from a clean least-squares refit on the raw
  // basis columns, so the reported model is exact in its own terms.
  void finalize_coefficients(MarsModel& model) {
    std::vector<std::span<const double>> cols;
    cols.reserve(bcols_.size());
    for (const auto& c : bcols_) cols.emplace_back(c.data(), n_);
    const auto ls = linalg::solve_least_squares(cols, y_);
    model.intercept = ls.coefficients[0];
    for (std::size_t t = 0; t < model.terms.size(); ++t) {
      model.terms[t].coefficient = ls.coefficients[t + 1];
    }
    model.rss = ls.rss;
    model.gcv = gcv_score(ls.rss, n_, 1 + model.terms.size(), penalty_);
  }

  const LagEmbedding& emb_;
  std::span<const double> y_;
  std::size_t n_;
  int p_;
  int k_max_;
  int basis_limit_;
  double penalty_;

  double yy_ = 0.0;
  double rss_ = 0.0;
  double gcv_ = 0.0;
  std::vector<std::vector<double>> bcols_;
  std::vector<BasisTerm> terms_;
  linalg::OrthoBasis ortho_;
  std::vector<double> qy_;
  std::vector<double> qrows_;  // row-major mirror of the orthonormal basis
  std::size_t stride_;
  std::vector<std::vector<std::uint32_t>> order_;
  ScanSums sums_;
};

}  // namespace

MarsModel forward_pass(const LagEmbedding& emb, const MarsConfig& config,
                       ForwardTrace* trace) {
  ForwardFit fit(emb, config);
  return fit.run(trace);
}

}  // namespace tsmars::mars
