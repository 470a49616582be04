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

// Independent checks: random biseparable states for soundness scans and a
// truncated-Fock simulator for Gaussian networks.

#ifndef SPINENT_ORACLE_HPP
#define SPINENT_ORACLE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "spinent/criteria.hpp"
#include "spinent/gaussian.hpp"
#include "spinent/qudit.hpp"
#include "spinent/spin_algebra.hpp"
#include "spinent/types.hpp"

namespace spinent::oracle {

using Rng = std::mt19937_64;

/// Seed for trial `i` of a scan with master seed `seed`.
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t i) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (i + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Haar-random pure state.
inline VectorC haar_state(Eigen::Index d, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  VectorC v(d);
  for (Eigen::Index i = 0; i < d; ++i) v[i] = cplx(n(rng), n(rng));
  return v.normalized();
}

/// Haar-random unitary (QR of a complex Ginibre matrix, phases fixed).
inline MatrixC haar_unitary(Eigen::Index d, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  MatrixC z(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) z(i, j) = cplx(n(rng), n(rng)) / std::sqrt(2.0);
  Eigen::HouseholderQR<MatrixC> qr(z);
  MatrixC q = qr.householderQ() * MatrixC::Identity(d, d);
  const MatrixC r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < d; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0.0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

/// Dirichlet(1, ..., 1) weights.
inline std::vector<double> dirichlet(std::size_t k, Rng& rng) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> w(k);
  double s = 0.0;
  for (auto& x : w) s += (x = e(rng));
  for (auto& x : w) x /= s;
  return w;
}

enum class Policy {
  /// Mixture of product states across a single bipartition.
  fixed_partition,
  /// Mixture over all bipartitions with Dirichlet weights.
  full_mixture,
};

struct SamplerConfig {
  int sites = 3;
  int local_dim = 2;
  Policy policy = Policy::full_mixture;
  /// Bipartition index for fixed_partition; negative picks one at random.
  int partition = -1;
  int max_components = 3;
};

/// Product of Haar states on `mask` and its complement, as one vector.
inline VectorC partition_product(const criteria::Bipartition& b, int local_dim, Rng& rng) {
  const int n = b.sites;
  int in = 0;
  for (int k = 0; k < n; ++k) in += b.contains(k) ? 1 : 0;
  const auto pw = [&](int e) {
    Eigen::Index v = 1;
    for (int i = 0; i < e; ++i) v *= local_dim;
    return v;
  };
  const VectorC a = haar_state(pw(in), rng);
  const VectorC c = haar_state(pw(n - in), rng);
  VectorC out(pw(n));
  for (Eigen::Index idx = 0; idx < out.size(); ++idx) {
    Eigen::Index rest = idx, ia = 0, ic = 0, ma = 1, mc = 1;
    for (int k = n - 1; k >= 0; --k) {
      const Eigen::Index digit = rest % local_dim;
      rest /= local_dim;
      if (b.contains(k)) {
        ia += digit * ma;
        ma *= local_dim;
      } else {
        ic += digit * mc;
        mc *= local_dim;
      }
    }
    out[idx] = a[ia] * c[ic];
  }
  return out;
}

/// Random biseparable density matrix under `cfg`.
inline qudit::CompositeState sample_biseparable(const SamplerConfig& cfg, Rng& rng) {
  if (cfg.sites < 2 || cfg.local_dim < 2 || cfg.max_components < 1)
    throw InvalidArgument("sampler needs two or more sites of dimension two or more");
  const auto parts = criteria::enumerate_bipartitions(cfg.sites);
  const std::vector<int> dims(static_cast<std::size_t>(cfg.sites), cfg.local_dim);
  const Eigen::Index d = qudit::total_dim(dims);
  std::uniform_int_distribution<int> ncomp(1, cfg.max_components);
  MatrixC rho = MatrixC::Zero(d, d);
  auto add_partition = [&](const criteria::Bipartition& b, double weight) {
    const int k = ncomp(rng);
    const auto eta = dirichlet(static_cast<std::size_t>(k), rng);
    for (int i = 0; i < k; ++i) {
      const VectorC v = partition_product(b, cfg.local_dim, rng);
      rho += weight * eta[static_cast<std::size_t>(i)] * v * v.adjoint();
    }
  };
  if (cfg.policy == Policy::fixed_partition) {
    int idx = cfg.partition;
    if (idx < 0) idx = std::uniform_int_distribution<int>(0, static_cast<int>(parts.size()) - 1)(rng);
    if (idx >= static_cast<int>(parts.size())) throw InvalidArgument("partition index out of range");
    add_partition(parts[static_cast<std::size_t>(idx)], 1.0);
  } else {
    const auto w = dirichlet(parts.size(), rng);
    for (std::size_t i = 0; i < parts.size(); ++i) add_partition(parts[i], w[i]);
  }
  rho = 0.5 * (rho + rho.adjoint());
  rho /= rho.trace().real();
  return {dims, rho};
}

// --- soundness ------------------------------------------------------------------

struct SoundnessReport {
  std::string criterion_id;
  int trials = 0;
  double worst_margin = std::numeric_limits<double>::infinity();
  bool pass = false;
};

/// Site count and sampling policy each criterion is sound for.
inline SamplerConfig soundness_sampler(const std::string& id) {
  SamplerConfig c;
  if (id == "c1" || id == "c3" || id == "bec_split") {
    c.sites = 3;
    c.policy = Policy::fixed_partition;
  } else if (id == "c6" || id == "c7") {
    c.sites = 5;
    c.policy = Policy::fixed_partition;
  } else if (id == "c8" || id == "c9") {
    c.sites = 4;
    c.policy = Policy::fixed_partition;
  } else if (id == "fadel") {
    c.sites = 2;
    c.policy = Policy::fixed_partition;
  } else if (id == "c2" || id == "c2b" || id == "c4" || id == "c4b" || id == "c5") {
    c.sites = 3;
    c.policy = Policy::full_mixture;
  } else if (id == "c10") {
    c.sites = 4;
    c.policy = Policy::full_mixture;
  } else {
    throw InvalidArgument("no soundness sampler for criterion '" + id + "'");
  }
  return c;
}

namespace detail {

inline MatrixC unit_pauli(const Eigen::Vector3d& n) {
  const spin::OperatorSet p = spin::pauli_matrices();
  return n[0] * p.x() + n[1] * p.y() + n[2] * p.z();
}

/// Random inference strategy: orthogonal Pauli target pair per site, random
/// Hermitian partner measurements, bilinear relabel of the outcomes.
inline std::array<qudit::InferencePair, 3> random_strategy(Rng& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::normal_distribution<double> n(0.0, 1.0);
  std::array<qudit::InferencePair, 3> s;
  for (int k = 0; k < 3; ++k) {
    Eigen::Vector3d a(n(rng), n(rng), n(rng));
    a.normalize();
    Eigen::Vector3d b(n(rng), n(rng), n(rng));
    b = (b - b.dot(a) * a).normalized();
    auto& e = s[static_cast<std::size_t>(k)];
    e.targets = {unit_pauli(a), unit_pauli(b)};
    const std::array<int, 2> pr = qudit::detail::partners_of(k);
    for (int c = 0; c < 2; ++c) {
      std::vector<MatrixC> ops;
      for (int q = 0; q < 2; ++q) {
        MatrixC h = MatrixC::Identity(2, 2) * u(rng);
        h += unit_pauli(Eigen::Vector3d(n(rng), n(rng), n(rng)).normalized()) * u(rng);
        ops.push_back(h);
      }
      const double c0 = u(rng), c1 = u(rng), c2 = u(rng), c3 = u(rng);
      e.inferences[static_cast<std::size_t>(c)] = {
          {pr[0], pr[1]}, ops,
          [=](std::span<const double> v) { return c0 + c1 * v[0] + c2 * v[1] + c3 * v[0] * v[1]; }};
    }
  }
  return s;
}

inline double trial_margin(const std::string& id, std::uint64_t seed) {
  Rng rng(seed);
  const SamplerConfig cfg = soundness_sampler(id);
  const qudit::CompositeState st = sample_biseparable(cfg, rng);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  if (id == "c5") {
    const auto strat = random_strategy(rng);
    return qudit::criterion5_evaluate(st, strat, 1.0).sum() - 1.0;
  }
  const MomentSet m = qudit::site_moments(st, spin::spin_matrices(0.5));
  criteria::EvalRequest req;
  const int n = cfg.sites;
  req.gains = {VectorR(n), VectorR(n)};
  for (int k = 0; k < n; ++k) {
    req.gains.h[k] = u(rng);
    req.gains.g[k] = u(rng);
  }
  req.free_gains = VectorR(n);
  for (int k = 0; k < n; ++k) req.free_gains[k] = u(rng);
  req.g_z = u(rng);
  req.g_y = u(rng);
  req.shared_site = std::uniform_int_distribution<int>(0, 2)(rng);
  return criteria::evaluate(id, m, req).margin();
}

}  // namespace detail

/// Worst lhs - rhs over `trials` random biseparable states; PASS iff it is
/// at least -1e-8. Trial i uses trial_seed(seed, i), so results do not
/// depend on the thread count.
inline SoundnessReport soundness_scan(const std::string& id, int trials, std::uint64_t seed,
                                      unsigned threads = std::thread::hardware_concurrency()) {
  if (trials <= 0) throw InvalidArgument("soundness scan needs at least one trial");
  soundness_sampler(id);
  threads = std::max(1u, std::min<unsigned>(threads, 16u));
  std::vector<double> worst(threads, std::numeric_limits<double>::infinity());
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (int i = static_cast<int>(t); i < trials; i += static_cast<int>(threads))
        worst[t] = std::min(worst[t], detail::trial_margin(id, trial_seed(seed, static_cast<std::uint64_t>(i))));
    });
  for (auto& th : pool) th.join();
  SoundnessReport r;
  r.criterion_id = id;
  r.trials = trials;
  r.worst_margin = *std::min_element(worst.begin(), worst.end());
  r.pass = r.worst_margin >= -1e-8;
  return r;
}

inline const std::vector<std::string>& soundness_suite() {
  static const std::vector<std::string> ids{"c1", "c2", "c2b", "c3", "c4", "c4b",   "c5",
                                            "c6", "c7", "c8",  "c9", "c10", "fadel", "bec_split"};
  return ids;
}

// --- truncated Fock simulation ----------------------------------------------------

/// Pure state of `modes` modes, each truncated to photon numbers 0..cutoff.
/// Mode 0 is the most significant index digit.
struct FockState {
  int modes = 0;
  int cutoff = 0;
  VectorC amp;

  Eigen::Index d() const { return cutoff + 1; }
  Eigen::Index stride(int k) const {
    Eigen::Index s = 1;
    for (int i = k + 1; i < modes; ++i) s *= d();
    return s;
  }
};

inline FockState fock_vacuum(int modes, int cutoff) {
  if (modes < 1 || cutoff < 1) throw InvalidArgument("Fock space needs a mode and a positive cutoff");
  FockState s{modes, cutoff, VectorC()};
  Eigen::Index dim = 1;
  for (int k = 0; k < modes; ++k) dim *= s.d();
  s.amp = VectorC::Zero(dim);
  s.amp[0] = 1.0;
  return s;
}

namespace detail {

/// exp(G) for anti-Hermitian G via the spectrum of iG.
inline MatrixC exp_antihermitian(const MatrixC& g) {
  const MatrixC h = cplx(0.0, 1.0) * g;
  Eigen::SelfAdjointEigenSolver<MatrixC> es(0.5 * (h + h.adjoint()));
  VectorC ph(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < ph.size(); ++i) ph[i] = std::polar(1.0, -es.eigenvalues()[i]);
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

inline void apply_single(FockState& s, int mode, const MatrixC& u) {
  const Eigen::Index d = s.d(), st = s.stride(mode), block = st * d;
  VectorC tmp(d);
  for (Eigen::Index base = 0; base < s.amp.size(); base += block)
    for (Eigen::Index off = 0; off < st; ++off) {
      for (Eigen::Index n = 0; n < d; ++n) tmp[n] = s.amp[base + off + n * st];
      const VectorC out = u * tmp;
      for (Eigen::Index n = 0; n < d; ++n) s.amp[base + off + n * st] = out[n];
    }
}

}  // namespace detail

/// Heisenberg X -> e^{-r} X (quad X) or P -> e^{-r} P (quad P).
inline void fock_squeeze(FockState& s, int mode, double r, gaussian::Quadrature quad) {
  const Eigen::Index d = s.d();
  MatrixC a = MatrixC::Zero(d, d);
  for (Eigen::Index n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  const MatrixC ad = a.adjoint();
  const double sr = quad == gaussian::Quadrature::P ? r : -r;
  detail::apply_single(s, mode, detail::exp_antihermitian(0.5 * sr * (ad * ad - a * a)));
}

/// Heisenberg a -> e^{i phi} a.
inline void fock_phase(FockState& s, int mode, double phi) {
  VectorC ph(s.d());
  for (Eigen::Index n = 0; n < s.d(); ++n) ph[n] = std::polar(1.0, phi * static_cast<double>(n));
  detail::apply_single(s, mode, MatrixC(ph.asDiagonal()));
}

/// Same mode map as gaussian::beam_splitter, built per total photon number.
inline void fock_beam_splitter(FockState& s, int i, int j, double reflectivity, double phase = 0.0) {
  if (i == j || i < 0 || j < 0 || i >= s.modes || j >= s.modes)
    throw InvalidArgument("beam splitter modes must be distinct and in range");
  if (phase != 0.0) fock_phase(s, j, phase);
  const Eigen::Index d = s.d(), d2 = d * d;
  const double theta = std::acos(std::sqrt(reflectivity));
  MatrixC u = MatrixC::Zero(d2, d2);
  for (Eigen::Index total = 0; total <= 2 * (d - 1); ++total) {
    std::vector<Eigen::Index> na;
    for (Eigen::Index a = 0; a < d; ++a)
      if (total - a >= 0 && total - a < d) na.push_back(a);
    const auto m = static_cast<Eigen::Index>(na.size());
    MatrixC g = MatrixC::Zero(m, m);  // theta (a^dag b - b^dag a) on the block
    for (Eigen::Index p = 0; p < m; ++p)
      for (Eigen::Index q = 0; q < m; ++q) {
        const Eigen::Index a = na[static_cast<std::size_t>(q)], b = total - a;
        if (na[static_cast<std::size_t>(p)] == a + 1 && b >= 1)
          g(p, q) += theta * std::sqrt(static_cast<double>((a + 1) * b));
        if (na[static_cast<std::size_t>(p)] == a - 1 && a >= 1 && b + 1 < d)
          g(p, q) -= theta * std::sqrt(static_cast<double>(a * (b + 1)));
      }
    const MatrixC e = detail::exp_antihermitian(g);
    for (Eigen::Index p = 0; p < m; ++p)
      for (Eigen::Index q = 0; q < m; ++q) {
        const Eigen::Index ap = na[static_cast<std::size_t>(p)], aq = na[static_cast<std::size_t>(q)];
        const Eigen::Index bp = total - ap;
        u(ap * d + bp, aq * d + (total - aq)) = e(p, q) * ((bp % 2) ? -1.0 : 1.0);
      }
  }
  const Eigen::Index si = s.stride(i), sj = s.stride(j);
  VectorC tmp(d2);
  std::vector<char> seen(static_cast<std::size_t>(s.amp.size()), 0);
  for (Eigen::Index base = 0; base < s.amp.size(); ++base) {
    if ((base / si) % d != 0 || (base / sj) % d != 0 || seen[static_cast<std::size_t>(base)]) continue;
    for (Eigen::Index a = 0; a < d; ++a)
      for (Eigen::Index b = 0; b < d; ++b) tmp[a * d + b] = s.amp[base + a * si + b * sj];
    const VectorC out = u * tmp;
    for (Eigen::Index a = 0; a < d; ++a)
      for (Eigen::Index b = 0; b < d; ++b) {
        s.amp[base + a * si + b * sj] = out[a * d + b];
        seen[static_cast<std::size_t>(base + a * si + b * sj)] = 1;
      }
  }
}

/// Largest population on the top Fock level of any mode.
inline double fock_edge_population(const FockState& s) {
  double worst = 0.0;
  for (int k = 0; k < s.modes; ++k) {
    double p = 0.0;
    const Eigen::Index st = s.stride(k);
    for (Eigen::Index idx = 0; idx < s.amp.size(); ++idx)
      if ((idx / st) % s.d() == s.cutoff) p += std::norm(s.amp[idx]);
    worst = std::max(worst, p);
  }
  return worst;
}

struct FockResult {
  FockState state;
  double leaked = 0.0;
};

/// Runs `net` from vacuum; TruncationError when the top-level population
/// after any element exceeds `max_leak`.
inline FockResult fock_simulate(const gaussian::NetworkConfig& net, int cutoff = 30, double max_leak = 1e-6) {
  FockResult res{fock_vacuum(net.modes, cutoff), 0.0};
  for (const auto& e : net.elements) {
    if (const auto* q = std::get_if<gaussian::Squeezer>(&e)) {
      if (q->mode < 0 || q->mode >= net.modes) throw InvalidArgument("mode index out of range");
      fock_squeeze(res.state, q->mode, q->r, q->quadrature);
    } else {
      const auto& b = std::get<gaussian::BeamSplitter>(e);
      fock_beam_splitter(res.state, b.i, b.j, b.reflectivity, b.phase);
    }
    res.leaked = std::max(res.leaked, fock_edge_population(res.state));
    if (res.leaked > max_leak) throw TruncationError("Fock cutoff too small for this network", res.leaked);
  }
  return res;
}

namespace detail {
inline VectorC lower(const FockState& s, int k) {
  VectorC out = VectorC::Zero(s.amp.size());
  const Eigen::Index st = s.stride(k);
  for (Eigen::Index idx = 0; idx < s.amp.size(); ++idx) {
    const Eigen::Index n = (idx / st) % s.d();
    if (n > 0) out[idx - st] = std::sqrt(static_cast<double>(n)) * s.amp[idx];
  }
  return out;
}
inline VectorC raise(const FockState& s, int k) {
  VectorC out = VectorC::Zero(s.amp.size());
  const Eigen::Index st = s.stride(k);
  for (Eigen::Index idx = 0; idx < s.amp.size(); ++idx) {
    const Eigen::Index n = (idx / st) % s.d();
    if (n < s.cutoff) out[idx + st] = std::sqrt(static_cast<double>(n + 1)) * s.amp[idx];
  }
  return out;
}
}  // namespace detail

/// Quadrature means and symmetrized covariance, interleaved like GaussianState.
inline gaussian::GaussianState fock_quadrature_moments(const FockState& s) {
  std::vector<VectorC> q;
  for (int k = 0; k < s.modes; ++k) {
    const VectorC lo = detail::lower(s, k), hi = detail::raise(s, k);
    q.push_back(lo + hi);
    q.push_back(cplx(0.0, -1.0) * (lo - hi));
  }
  const auto n = static_cast<Eigen::Index>(q.size());
  gaussian::GaussianState g{VectorR(n), MatrixR(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) g.mean[i] = s.amp.dot(q[static_cast<std::size_t>(i)]).real();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      g.cov(i, j) = q[static_cast<std::size_t>(i)].dot(q[static_cast<std::size_t>(j)]).real() - g.mean[i] * g.mean[j];
  return g;
}

}  // namespace spinent::oracle

#endif  // SPINENT_ORACLE_HPP
