// Copyright 2026 The spinent Authors
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

// Gain optimization: minimize lhs/rhs of a sum or product criterion.

#ifndef SPINENT_OPTIMIZER_HPP
#define SPINENT_OPTIMIZER_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <limits>
#include <numeric>
#include <vector>

#include "spinent/criteria.hpp"
#include "spinent/moments.hpp"
#include "spinent/types.hpp"

namespace spinent::optimize {

struct NelderMeadOptions {
  double initial_step = 0.1;
  double diameter_tol = 1e-8;
  int max_iterations = 20000;
};

struct NelderMeadResult {
  VectorR x;
  double f = std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool converged = false;
};

/// Nelder-Mead with the usual coefficients (1, 2, 1/2, 1/2). Stops when
/// every vertex lies within `diameter_tol` of the best one.
inline NelderMeadResult nelder_mead(const std::function<double(const VectorR&)>& f, const VectorR& x0,
                                    const NelderMeadOptions& opt = {}) {
  const Eigen::Index n = x0.size();
  std::vector<VectorR> pts{x0};
  for (Eigen::Index i = 0; i < n; ++i) {
    VectorR p = x0;
    p[i] += opt.initial_step;
    pts.push_back(p);
  }
  std::vector<double> fv;
  for (const auto& p : pts) fv.push_back(f(p));
  std::vector<std::size_t> ord(pts.size());

  NelderMeadResult res;
  for (int it = 0; it < opt.max_iterations; ++it) {
    std::iota(ord.begin(), ord.end(), 0);
    std::stable_sort(ord.begin(), ord.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    const std::size_t best = ord.front(), worst = ord.back(), second = ord[ord.size() - 2];
    double diam = 0.0;
    for (const auto& p : pts) diam = std::max(diam, (p - pts[best]).norm());
    res.iterations = it;
    if (diam < opt.diameter_tol) {
      res.converged = true;
      break;
    }
    VectorR centroid = VectorR::Zero(n);
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (i != worst) centroid += pts[i];
    centroid /= static_cast<double>(n);

    const VectorR xr = centroid + (centroid - pts[worst]);
    const double fr = f(xr);
    if (fr < fv[best]) {
      const VectorR xe = centroid + 2.0 * (centroid - pts[worst]);
      const double fe = f(xe);
      if (fe < fr) {
        pts[worst] = xe;
        fv[worst] = fe;
      } else {
        pts[worst] = xr;
        fv[worst] = fr;
      }
      continue;
    }
    if (fr < fv[second]) {
      pts[worst] = xr;
      fv[worst] = fr;
      continue;
    }
    const bool outside = fr < fv[worst];
    const VectorR xc = outside ? VectorR(centroid + 0.5 * (xr - centroid))
                               : VectorR(centroid + 0.5 * (pts[worst] - centroid));
    const double fc = f(xc);
    if (fc < (outside ? fr : fv[worst])) {
      pts[worst] = xc;
      fv[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i == best) continue;
      pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
      fv[i] = f(pts[i]);
    }
  }
  const auto b = static_cast<std::size_t>(std::min_element(fv.begin(), fv.end()) - fv.begin());
  res.x = pts[b];
  res.f = fv[b];
  return res;
}

enum class Objective { sum_ratio, product_ratio };

struct OptimizerSpec {
  Objective objective = Objective::sum_ratio;
  /// Symmetric form h = (1, h, ..., h), g = (1, g, ..., g); otherwise all 2N
  /// gains are free.
  bool symmetric = true;
  double grid_lo = -1.2;
  double grid_hi = 1.2;
  int grid_points = 5;
  double diameter_tol = 1e-8;
  /// Relative window inside which candidates count as tied minimizers.
  double tie_tol = 1e-9;
};

using MomentSource = std::function<MomentSet(double)>;

struct OptimizationResult {
  double r = 0.0;
  criteria::GainVector gains;
  double ratio = std::numeric_limits<double>::infinity();
  criteria::CriterionResult criterion;

  double h() const { return gains.h.size() > 1 ? gains.h[1] : 0.0; }
  double g() const { return gains.g.size() > 1 ? gains.g[1] : 0.0; }
};

/// lhs/rhs of the sum (c6 / cv_sum) or product (c7 / cv_product) form;
/// +inf when the bound vanishes.
inline double gain_ratio(const MomentSet& m, const criteria::GainVector& g, Objective obj) {
  const double vx = m.variance_x(g.h), vy = m.variance_y(g.g);
  const auto mb = criteria::min_bipartition_bound(m, g, criteria::enumerate_bipartitions(static_cast<int>(m.sites())));
  double lhs = vx + vy, rhs = mb.value;
  if (obj == Objective::product_ratio) {
    lhs = std::sqrt(std::max(0.0, vx) * std::max(0.0, vy));
    rhs *= 0.5;
  }
  if (!(rhs > 0.0) || !std::isfinite(lhs)) return std::numeric_limits<double>::infinity();
  return lhs / rhs;
}

/// Criterion id matching the objective and moment provenance.
inline std::string criterion_for(const MomentSet& m, Objective obj) {
  const bool sum = obj == Objective::sum_ratio;
  if (m.provenance == Provenance::quadrature) return sum ? "cv_sum" : "cv_product";
  if (m.sites() == 3) return sum ? "c1" : "c3";
  if (m.sites() == 4) return sum ? "c8" : "c9";
  return sum ? "c6" : "c7";
}

namespace detail {

inline criteria::GainVector unpack(const VectorR& p, Eigen::Index n, bool symmetric) {
  if (symmetric) return criteria::GainVector::symmetric(static_cast<int>(n), p[0], p[1]);
  return {p.head(n), p.tail(n)};
}

}  // namespace detail

/// Multistart Nelder-Mead over the gain grid. Among candidates whose ratio
/// is within `tie_tol` of the best, the one with the smallest gain norm wins.
inline OptimizationResult optimize_gains(const MomentSource& source, double r, const OptimizerSpec& spec = {},
                                         const criteria::EvalOptions& eval = {}) {
  if (spec.grid_points < 1 || !(spec.grid_hi >= spec.grid_lo))
    throw InvalidArgument("gain grid is empty");
  const MomentSet m = source(r);
  m.validate();
  const Eigen::Index n = m.sites();
  if (n < 2) throw InvalidArgument("gain optimization needs at least two sites");

  struct Candidate {
    VectorR p;
    double f;
  };
  std::vector<Candidate> cands;
  auto sym_obj = [&](const VectorR& p) { return gain_ratio(m, detail::unpack(p, n, true), spec.objective); };
  NelderMeadOptions nm;
  nm.diameter_tol = spec.diameter_tol;

  std::vector<double> axis;
  for (int i = 0; i < spec.grid_points; ++i)
    axis.push_back(spec.grid_points == 1 ? spec.grid_lo
                                         : spec.grid_lo + (spec.grid_hi - spec.grid_lo) * i / (spec.grid_points - 1));
  bool any_finite = false;
  for (double h0 : axis)
    for (double g0 : axis) {
      VectorR p(2);
      p << h0, g0;
      const double f0 = sym_obj(p);
      if (!std::isfinite(f0)) continue;
      any_finite = true;
      cands.push_back({p, f0});
      const NelderMeadResult res = nelder_mead(sym_obj, p, nm);
      if (std::isfinite(res.f)) cands.push_back({res.x, res.f});
    }
  if (!any_finite) throw DegenerateObjective("criterion bound vanishes on every grid point");

  auto expand = [&](const VectorR& p) {
    const criteria::GainVector gv = detail::unpack(p, n, true);
    VectorR q(2 * n);
    q << gv.h, gv.g;
    return q;
  };
  if (!spec.symmetric) {
    for (auto& c : cands) c.p = expand(c.p);
    auto full_obj = [&](const VectorR& p) { return gain_ratio(m, detail::unpack(p, n, false), spec.objective); };
    const auto best = std::min_element(cands.begin(), cands.end(),
                                       [](const Candidate& a, const Candidate& b) { return a.f < b.f; });
    const NelderMeadResult res = nelder_mead(full_obj, best->p, nm);
    if (std::isfinite(res.f)) cands.push_back({res.x, res.f});
  }

  double fbest = std::numeric_limits<double>::infinity();
  for (const auto& c : cands) fbest = std::min(fbest, c.f);
  const double window = spec.tie_tol * std::max(1.0, std::abs(fbest));
  const Candidate* pick = nullptr;
  for (const auto& c : cands)
    if (c.f <= fbest + window && (!pick || c.p.squaredNorm() < pick->p.squaredNorm())) pick = &c;

  OptimizationResult out;
  out.r = r;
  out.gains = detail::unpack(pick->p, n, spec.symmetric);
  out.ratio = pick->f;
  criteria::EvalRequest req;
  req.gains = out.gains;
  out.criterion = criteria::evaluate(criterion_for(m, spec.objective), m, req, eval);
  return out;
}

struct SweepTable {
  std::vector<OptimizationResult> rows;
  /// Ratio non-increasing in r across the sweep.
  bool monotone = true;
};

inline SweepTable sweep(const MomentSource& source, const std::vector<double>& r_values,
                        const OptimizerSpec& spec = {}, const criteria::EvalOptions& eval = {}) {
  std::vector<std::future<OptimizationResult>> jobs;
  for (double r : r_values)
    jobs.push_back(std::async(std::launch::async, [&, r] { return optimize_gains(source, r, spec, eval); }));
  SweepTable t;
  for (auto& j : jobs) t.rows.push_back(j.get());
  for (std::size_t i = 1; i < t.rows.size(); ++i)
    if (r_values[i] > r_values[i - 1] && t.rows[i].ratio > t.rows[i - 1].ratio + 1e-9) t.monotone = false;
  return t;
}

}  // namespace spinent::optimize

#endif  // SPINENT_OPTIMIZER_HPP
