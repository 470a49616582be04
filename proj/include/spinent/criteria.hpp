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

// Multipartite entanglement inequalities evaluated on a MomentSet.

#ifndef SPINENT_CRITERIA_HPP
#define SPINENT_CRITERIA_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spinent/moments.hpp"
#include "spinent/qudit.hpp"
#include "spinent/types.hpp"

namespace spinent::criteria {

/// Split of sites {0..N-1} into `mask` and its complement. `mask` is the
/// smaller side, or the side holding site 0 when both have N/2 sites.
struct Bipartition {
  std::uint32_t mask = 0;
  int sites = 0;

  bool contains(int k) const { return (mask >> k) & 1u; }
  bool splits(int i, int j) const { return contains(i) != contains(j); }

  /// "1|23", "12|34": one-based site labels.
  std::string label() const {
    std::string a, b;
    for (int k = 0; k < sites; ++k) (contains(k) ? a : b) += std::to_string(k + 1);
    return a + "|" + b;
  }
};

/// All 2^{N-1}-1 bipartitions, smallest side first, then lexicographic.
inline std::vector<Bipartition> enumerate_bipartitions(int n) {
  if (n < 2 || n > 20) throw InvalidArgument("bipartitions need between 2 and 20 sites");
  std::vector<Bipartition> out;
  for (int size = 1; size <= n / 2; ++size) {
    std::vector<int> pick(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) pick[static_cast<std::size_t>(i)] = i;
    for (;;) {
      std::uint32_t m = 0;
      for (int s : pick) m |= 1u << s;
      if (2 * size < n || (m & 1u)) out.push_back({m, n});
      int i = size - 1;
      while (i >= 0 && pick[static_cast<std::size_t>(i)] == n - size + i) --i;
      if (i < 0) break;
      ++pick[static_cast<std::size_t>(i)];
      for (int k = i + 1; k < size; ++k)
        pick[static_cast<std::size_t>(k)] = pick[static_cast<std::size_t>(k - 1)] + 1;
    }
  }
  return out;
}

/// u = sum h_k x_k, v = sum g_k y_k.
struct GainVector {
  VectorR h;
  VectorR g;

  static GainVector symmetric(int n, double h_rest, double g_rest) {
    GainVector gv{VectorR::Constant(n, h_rest), VectorR::Constant(n, g_rest)};
    gv.h[0] = 1.0;
    gv.g[0] = 1.0;
    return gv;
  }
};

struct EvalOptions {
  /// Caller asserts |<z_k>| is large; enables conditional genuine verdicts.
  bool large_spin_regime = false;
  /// Relative margin below which lhs counts as violating rhs.
  double violation_tol = 1e-12;
};

struct CriterionResult {
  std::string criterion_id;
  double lhs = 0.0;
  double rhs = 0.0;
  Verdict verdict = Verdict::inconclusive;
  bool conditional = false;
  std::vector<std::string> argmin_bipartitions;
  std::optional<VectorR> validity;
  std::vector<std::string> flags;
  std::vector<std::pair<std::string, double>> terms;

  /// lhs - rhs; negative when violated.
  double margin() const { return lhs - rhs; }
};

inline bool violates(double lhs, double rhs, const EvalOptions& opt) {
  return lhs < rhs - opt.violation_tol * std::max(1.0, std::abs(rhs));
}

namespace detail {

inline void check_gains(const MomentSet& m, const GainVector& g) {
  m.validate();
  if (g.h.size() != m.sites() || g.g.size() != m.sites())
    throw InvalidArgument("gain vectors must have one entry per site");
  if (!g.h.allFinite() || !g.g.allFinite()) throw InvalidArgument("gains must be finite");
}

inline void check_sites(const MomentSet& m, int n, const char* what) {
  m.validate();
  if (m.sites() != n) throw InvalidArgument(std::string(what) + " needs exactly " + std::to_string(n) + " sites");
}

}  // namespace detail

/// c (|sum_{k in S} h_k g_k <z_k>| + |sum_{k not in S} h_k g_k <z_k>|).
inline double bound_sum_bipartition(const MomentSet& m, const GainVector& g, const Bipartition& b) {
  detail::check_gains(m, g);
  if (b.sites != m.sites()) throw InvalidArgument("bipartition does not match site count");
  double in = 0.0, out = 0.0;
  for (Eigen::Index k = 0; k < m.sites(); ++k) {
    const double t = g.h[k] * g.g[k] * m.mean_z[k];
    (b.contains(static_cast<int>(k)) ? in : out) += t;
  }
  return m.scale * (std::abs(in) + std::abs(out));
}

struct MinBound {
  double value = std::numeric_limits<double>::infinity();
  std::vector<std::string> argmin;
};

inline MinBound min_bipartition_bound(const MomentSet& m, const GainVector& g,
                                      const std::vector<Bipartition>& parts) {
  MinBound mb;
  std::vector<double> vals;
  for (const auto& b : parts) vals.push_back(bound_sum_bipartition(m, g, b));
  for (double v : vals) mb.value = std::min(mb.value, v);
  const double tol = 1e-12 * std::max(1.0, mb.value);
  for (std::size_t i = 0; i < parts.size(); ++i)
    if (vals[i] <= mb.value + tol) mb.argmin.push_back(parts[i].label());
  return mb;
}

namespace detail {

/// Verdict for the min-over-bipartitions family whose genuine reading needs
/// the large-spin regime.
inline void conditional_verdict(CriterionResult& r, const MomentSet& m, const EvalOptions& opt) {
  if (m.var_z) r.validity = m.validity_ratios();
  if (!violates(r.lhs, r.rhs, opt)) return;
  r.verdict = Verdict::full_inseparability;
  if (!opt.large_spin_regime) return;
  if (!m.var_z)
    throw MissingData("genuine verdict needs per-site mean-spin variances");
  const VectorR v = *r.validity;
  if ((v.array() <= 1.0 + 1e-12).all()) {
    r.verdict = Verdict::genuine_entanglement;
    r.conditional = true;
  }
}

inline CriterionResult sum_family(const char* id, const MomentSet& m, const GainVector& g,
                                  const EvalOptions& opt) {
  detail::check_gains(m, g);
  CriterionResult r;
  r.criterion_id = id;
  r.lhs = m.variance_x(g.h) + m.variance_y(g.g);
  MinBound mb = min_bipartition_bound(m, g, enumerate_bipartitions(static_cast<int>(m.sites())));
  r.rhs = mb.value;
  r.argmin_bipartitions = std::move(mb.argmin);
  if (m.provenance == Provenance::linearized) r.flags.emplace_back("linearized");
  return r;
}

inline CriterionResult product_family(const char* id, const MomentSet& m, const GainVector& g,
                                      const EvalOptions& opt) {
  CriterionResult r = sum_family(id, m, g, opt);
  r.lhs = std::sqrt(std::max(0.0, m.variance_x(g.h))) * std::sqrt(std::max(0.0, m.variance_y(g.g)));
  r.rhs *= 0.5;
  return r;
}

}  // namespace detail

/// Delta^2 u + Delta^2 v against the min bipartition bound, any N >= 2.
inline CriterionResult criterion6_sum(const MomentSet& m, const GainVector& g, const EvalOptions& opt = {}) {
  CriterionResult r = detail::sum_family("c6", m, g, opt);
  detail::conditional_verdict(r, m, opt);
  return r;
}

/// Delta u Delta v against half the min bipartition bound, any N >= 2.
inline CriterionResult criterion7_product(const MomentSet& m, const GainVector& g, const EvalOptions& opt = {}) {
  CriterionResult r = detail::product_family("c7", m, g, opt);
  detail::conditional_verdict(r, m, opt);
  return r;
}

inline CriterionResult criterion1_sum(const MomentSet& m, const GainVector& g, const EvalOptions& opt = {}) {
  detail::check_sites(m, 3, "criterion c1 (use c6 for other site counts)");
  CriterionResult r = criterion6_sum(m, g, opt);
  r.criterion_id = "c1";
  return r;
}

inline CriterionResult criterion3_product(const MomentSet& m, const GainVector& g, const EvalOptions& opt = {}) {
  detail::check_sites(m, 3, "criterion c3 (use c7 for other site counts)");
  CriterionResult r = criterion7_product(m, g, opt);
  r.criterion_id = "c3";
  return r;
}

inline CriterionResult criterion8_sum(const MomentSet& m, const GainVector& g, const EvalOptions& opt = {}) {
  detail::check_sites(m, 4, "criterion c8");
  CriterionResult r = criterion6_sum(m, g, opt);
  r.criterion_id = "c8";
  return r;
}

inline CriterionResult criterion9_product(const MomentSet& m, const GainVector& g, const EvalOptions& opt = {}) {
  detail::check_sites(m, 4, "criterion c9");
  CriterionResult r = criterion7_product(m, g, opt);
  r.criterion_id = "c9";
  return r;
}

/// Quadrature form: x-role X, y-role P, unit means, c = 2. Unconditional.
inline CriterionResult cv_sum(const MomentSet& m, const GainVector& g, const EvalOptions& opt = {}) {
  CriterionResult r = detail::sum_family("cv_sum", m, g, opt);
  if (violates(r.lhs, r.rhs, opt)) r.verdict = Verdict::genuine_entanglement;
  return r;
}

inline CriterionResult cv_product(const MomentSet& m, const GainVector& g, const EvalOptions& opt = {}) {
  CriterionResult r = detail::product_family("cv_product", m, g, opt);
  if (violates(r.lhs, r.rhs, opt)) r.verdict = Verdict::genuine_entanglement;
  return r;
}

// --- pair (van Loock-Furusawa type) inequalities ---------------------------

using SitePair = std::pair<int, int>;

inline const std::vector<SitePair>& tripartite_pairs() {
  static const std::vector<SitePair> p{{0, 1}, {1, 2}, {0, 2}};
  return p;
}

inline const std::vector<SitePair>& fourpartite_pairs() {
  static const std::vector<SitePair> p{{0, 1}, {1, 2}, {0, 2}, {2, 3}, {1, 3}, {0, 3}};
  return p;
}

namespace detail {
inline const char* roman(std::size_t i) {
  static const char* r[] = {"I", "II", "III", "IV", "V", "VI"};
  return i < 6 ? r[i] : "?";
}

inline GainVector pair_gains(Eigen::Index n, SitePair p, const VectorR& free_gains) {
  if (free_gains.size() != n) throw InvalidArgument("free gains need one entry per site");
  if (p.first == p.second || p.first < 0 || p.second < 0 || p.first >= n || p.second >= n)
    throw InvalidArgument("pair sites must be distinct and in range");
  GainVector g{VectorR::Zero(n), free_gains};
  g.h[p.first] = 1.0;
  g.h[p.second] = -1.0;
  g.g[p.first] = 1.0;
  g.g[p.second] = 1.0;
  return g;
}
}  // namespace detail

/// Delta^2(x_i - x_j) + Delta^2(y_i + y_j + sum_{k not in pair} f_k y_k).
inline double vlf_b(const MomentSet& m, SitePair p, const VectorR& free_gains) {
  const GainVector g = detail::pair_gains(m.sites(), p, free_gains);
  return m.variance_x(g.h) + m.variance_y(g.g);
}

/// Delta(x_i - x_j) Delta(y_i + y_j + sum_{k not in pair} f_k y_k).
inline double vlf_s(const MomentSet& m, SitePair p, const VectorR& free_gains) {
  const GainVector g = detail::pair_gains(m.sites(), p, free_gains);
  return std::sqrt(std::max(0.0, m.variance_x(g.h))) * std::sqrt(std::max(0.0, m.variance_y(g.g)));
}

/// Full inseparability from pair violations: every bipartition must split
/// at least one violated pair. Holds only in the large-spin regime.
inline bool pair_cover(int n, const std::vector<SitePair>& pairs, const std::vector<bool>& violated) {
  for (const auto& b : enumerate_bipartitions(n)) {
    bool hit = false;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (violated[i] && b.splits(pairs[i].first, pairs[i].second)) hit = true;
    if (!hit) return false;
  }
  return true;
}

namespace detail {

inline CriterionResult pair_sum(const char* id, const MomentSet& m, const std::vector<SitePair>& pairs,
                                const VectorR& free_gains, bool product, const EvalOptions& opt) {
  m.validate();
  CriterionResult r;
  r.criterion_id = id;
  const double half = product ? 0.5 : 1.0;
  std::vector<bool> viol;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const double t = product ? vlf_s(m, pairs[i], free_gains) : vlf_b(m, pairs[i], free_gains);
    const double pb = half * m.scale *
                      (std::abs(m.mean_z[pairs[i].first]) + std::abs(m.mean_z[pairs[i].second]));
    r.lhs += t;
    r.terms.emplace_back(std::string(product ? "S_" : "B_") + roman(i), t);
    viol.push_back(violates(t, pb, opt));
  }
  if (pair_cover(static_cast<int>(m.sites()), pairs, viol)) r.flags.emplace_back("pair_cover_full_inseparability");
  if (m.provenance == Provenance::linearized) r.flags.emplace_back("linearized");
  return r;
}

inline void unconditional_genuine(CriterionResult& r, const EvalOptions& opt) {
  if (violates(r.lhs, r.rhs, opt)) r.verdict = Verdict::genuine_entanglement;
}

inline double abs_sum(const MomentSet& m) { return m.mean_z.cwiseAbs().sum(); }

}  // namespace detail

/// B_I + B_II + B_III against c sum |<z_k>|.
inline CriterionResult criterion2(const MomentSet& m, const VectorR& free_gains, const EvalOptions& opt = {}) {
  detail::check_sites(m, 3, "criterion c2");
  CriterionResult r = detail::pair_sum("c2", m, tripartite_pairs(), free_gains, false, opt);
  r.rhs = m.scale * detail::abs_sum(m);
  detail::unconditional_genuine(r, opt);
  return r;
}

/// S_I + S_II + S_III against (c/2) sum |<z_k>|.
inline CriterionResult criterion4(const MomentSet& m, const VectorR& free_gains, const EvalOptions& opt = {}) {
  detail::check_sites(m, 3, "criterion c4");
  CriterionResult r = detail::pair_sum("c4", m, tripartite_pairs(), free_gains, true, opt);
  r.rhs = 0.5 * m.scale * detail::abs_sum(m);
  detail::unconditional_genuine(r, opt);
  return r;
}

namespace detail {
/// The two tripartite pairs sharing `shared`.
inline std::vector<SitePair> pairs_through(int shared) {
  if (shared < 0 || shared > 2) throw InvalidArgument("shared site must be 0, 1 or 2");
  std::vector<SitePair> out;
  for (const auto& p : tripartite_pairs())
    if (p.first == shared || p.second == shared) out.push_back(p);
  return out;
}
}  // namespace detail

/// Two pair terms sharing site `shared` (0-based) against c |<z_shared>|.
inline CriterionResult criterion2b(const MomentSet& m, const VectorR& free_gains, int shared = 1,
                                   const EvalOptions& opt = {}) {
  detail::check_sites(m, 3, "criterion c2b");
  CriterionResult r = detail::pair_sum("c2b", m, detail::pairs_through(shared), free_gains, false, opt);
  r.rhs = m.scale * std::abs(m.mean_z[shared]);
  detail::unconditional_genuine(r, opt);
  return r;
}

inline CriterionResult criterion4b(const MomentSet& m, const VectorR& free_gains, int shared = 1,
                                   const EvalOptions& opt = {}) {
  detail::check_sites(m, 3, "criterion c4b");
  CriterionResult r = detail::pair_sum("c4b", m, detail::pairs_through(shared), free_gains, true, opt);
  r.rhs = 0.5 * m.scale * std::abs(m.mean_z[shared]);
  detail::unconditional_genuine(r, opt);
  return r;
}

/// Six four-site pair terms against c sum |<z_k>|.
inline CriterionResult criterion10(const MomentSet& m, const VectorR& free_gains, const EvalOptions& opt = {}) {
  detail::check_sites(m, 4, "criterion c10");
  CriterionResult r = detail::pair_sum("c10", m, fourpartite_pairs(), free_gains, false, opt);
  r.rhs = m.scale * detail::abs_sum(m);
  detail::unconditional_genuine(r, opt);
  return r;
}

/// Large-spin reading of the three pair bounds with biseparable weights
/// (P_1, P_2, P_3) for 1|23, 2|13, 3|12: true when no weights are consistent.
inline bool vlf_mixture_excluded(const MomentSet& m, const VectorR& free_gains, bool product = false) {
  detail::check_sites(m, 3, "mixture-weighted pair test");
  std::array<double, 3> b{};
  const auto& pairs = tripartite_pairs();
  for (std::size_t i = 0; i < 3; ++i) {
    const double t = product ? vlf_s(m, pairs[i], free_gains) : vlf_b(m, pairs[i], free_gains);
    const double s = (product ? 0.5 : 1.0) * m.scale *
                     (std::abs(m.mean_z[pairs[i].first]) + std::abs(m.mean_z[pairs[i].second]));
    b[i] = s > 0.0 ? t / s : std::numeric_limits<double>::infinity();
  }
  // P1 + P2 <= b_I, P2 + P3 <= b_II, P1 + P3 <= b_III with P summing to 1.
  const double need = std::max(0.0, 1.0 - b[1]) + std::max(0.0, 1.0 - b[2]);
  return need > std::min(b[0], 1.0) + 1e-12;
}

// --- two-site and split-cloud forms ----------------------------------------

/// Two-site product test with x-role S_z, y-role S_y, mean S_x:
/// Delta(g_z S_zA + S_zB) Delta(g_y S_yA + S_yB) against
/// (c/2)(|g_z g_y||<S_xA>| + |<S_xB>|).
inline CriterionResult fadel_bipartite(const MomentSet& m, double g_z, double g_y,
                                       const EvalOptions& opt = {}) {
  detail::check_sites(m, 2, "two-site product criterion");
  GainVector g{VectorR(2), VectorR(2)};
  g.h << g_z, 1.0;
  g.g << g_y, 1.0;
  CriterionResult r = detail::product_family("fadel", m, g, opt);
  if (violates(r.lhs, r.rhs, opt)) r.verdict = Verdict::genuine_entanglement;
  return r;
}

/// Three clouds (A1, A2, B) with grouped gains: the product form with
/// h = (g_z, g_z, 1), g = (g_y, g_y, 1), bounded by the min over all three
/// bipartitions.
inline CriterionResult criterion3_bec_split(const MomentSet& m, double g_z, double g_y,
                                            const EvalOptions& opt = {}) {
  detail::check_sites(m, 3, "split-cloud criterion");
  GainVector g{VectorR(3), VectorR(3)};
  g.h << g_z, g_z, 1.0;
  g.g << g_y, g_y, 1.0;
  CriterionResult r = detail::product_family("bec_split", m, g, opt);
  detail::conditional_verdict(r, m, opt);
  return r;
}

// --- inference-variance criterion -------------------------------------------

/// Two rows: "c5" (sum of B_k against C, genuine) and "c5_fis" (largest
/// B_k against C, full inseparability).
inline std::vector<CriterionResult> criterion5_rows(const qudit::Criterion5Result& c5,
                                                    const EvalOptions& opt = {}) {
  CriterionResult g;
  g.criterion_id = "c5";
  g.lhs = c5.sum();
  g.rhs = c5.bound;
  for (std::size_t k = 0; k < 3; ++k) g.terms.emplace_back("B_" + std::to_string(k + 1), c5.b[k]);
  if (violates(g.lhs, g.rhs, opt)) g.verdict = Verdict::genuine_entanglement;
  CriterionResult f = g;
  f.criterion_id = "c5_fis";
  f.lhs = std::max({c5.b[0], c5.b[1], c5.b[2]});
  f.verdict = violates(f.lhs, f.rhs, opt) ? Verdict::full_inseparability : Verdict::inconclusive;
  return {g, f};
}

// --- dispatch ----------------------------------------------------------------

inline const std::vector<std::string>& moment_criterion_ids() {
  static const std::vector<std::string> ids{"c1", "c2",  "c2b", "c3",     "c4",     "c4b",
                                            "c6", "c7",  "c8",  "c9",     "c10",    "fadel",
                                            "bec_split", "cv_sum", "cv_product"};
  return ids;
}

/// Parameters beyond the moment set for `evaluate`.
struct EvalRequest {
  GainVector gains;
  VectorR free_gains;
  int shared_site = 1;
  double g_z = 1.0;
  double g_y = 1.0;
};

inline CriterionResult evaluate(const std::string& id, const MomentSet& m, const EvalRequest& req,
                                const EvalOptions& opt = {}) {
  const int n = static_cast<int>(m.sites());
  VectorR fg = req.free_gains.size() == n ? req.free_gains : VectorR(VectorR::Zero(n));
  if (id == "c1") return n == 3 ? criterion1_sum(m, req.gains, opt) : criterion6_sum(m, req.gains, opt);
  if (id == "c3") return n == 3 ? criterion3_product(m, req.gains, opt) : criterion7_product(m, req.gains, opt);
  if (id == "c6") return criterion6_sum(m, req.gains, opt);
  if (id == "c7") return criterion7_product(m, req.gains, opt);
  if (id == "c8") return criterion8_sum(m, req.gains, opt);
  if (id == "c9") return criterion9_product(m, req.gains, opt);
  if (id == "c2") return criterion2(m, fg, opt);
  if (id == "c2b") return criterion2b(m, fg, req.shared_site, opt);
  if (id == "c4") return criterion4(m, fg, opt);
  if (id == "c4b") return criterion4b(m, fg, req.shared_site, opt);
  if (id == "c10") return criterion10(m, fg, opt);
  if (id == "fadel") return fadel_bipartite(m, req.g_z, req.g_y, opt);
  if (id == "bec_split") return criterion3_bec_split(m, req.g_z, req.g_y, opt);
  if (id == "cv_sum") return cv_sum(m, req.gains, opt);
  if (id == "cv_product") return cv_product(m, req.gains, opt);
  throw InvalidArgument("unknown criterion id: " + id);
}

}  // namespace spinent::criteria

#endif  // SPINENT_CRITERIA_HPP
