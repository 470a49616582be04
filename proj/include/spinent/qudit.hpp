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

// Exact state-vector / density-matrix engine for small composite systems.

#ifndef SPINENT_QUDIT_HPP
#define SPINENT_QUDIT_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Eigenvalues>

#include "spinent/moments.hpp"
#include "spinent/spin_algebra.hpp"
#include "spinent/types.hpp"

namespace spinent::qudit {

inline MatrixC kron(const MatrixC& a, const MatrixC& b) {
  MatrixC r(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return r;
}

inline VectorC kron(const VectorC& a, const VectorC& b) {
  VectorC r(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) r.segment(i * b.size(), b.size()) = a[i] * b;
  return r;
}

inline Eigen::Index total_dim(const std::vector<int>& dims) {
  Eigen::Index d = 1;
  for (int k : dims) {
    if (k < 1) throw InvalidArgument("local dimension must be positive");
    d *= k;
  }
  return d;
}

/// `op` acting on `site`, identity elsewhere. Site 0 is the most significant
/// factor of the basis index.
inline MatrixC embed(const MatrixC& op, int site, const std::vector<int>& dims) {
  if (site < 0 || site >= static_cast<int>(dims.size()))
    throw InvalidArgument("site index out of range");
  if (op.rows() != dims[site] || op.cols() != dims[site])
    throw InvalidArgument("local operator does not match site dimension");
  MatrixC r = MatrixC::Identity(1, 1);
  for (int k = 0; k < static_cast<int>(dims.size()); ++k)
    r = kron(r, k == site ? op : MatrixC(MatrixC::Identity(dims[k], dims[k])));
  return r;
}

/// Pure or mixed state of several subsystems.
class CompositeState {
 public:
  CompositeState(std::vector<int> dims, VectorC psi) : dims_(std::move(dims)) {
    if (psi.size() != total_dim(dims_))
      throw InvalidArgument("amplitude vector does not match subsystem dimensions");
    if (std::abs(psi.squaredNorm() - 1.0) > 1e-10)
      throw InvalidArgument("state vector is not normalized");
    data_ = std::move(psi);
  }

  CompositeState(std::vector<int> dims, MatrixC rho) : dims_(std::move(dims)) {
    const Eigen::Index d = total_dim(dims_);
    if (rho.rows() != d || rho.cols() != d)
      throw InvalidArgument("density matrix does not match subsystem dimensions");
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
      throw InvalidArgument("density matrix is not Hermitian");
    if (std::abs(rho.trace().real() - 1.0) > 1e-10)
      throw InvalidArgument("density matrix does not have unit trace");
    Eigen::SelfAdjointEigenSolver<MatrixC> es(rho, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10)
      throw InvalidArgument("density matrix is not positive semidefinite");
    data_ = std::move(rho);
  }

  const std::vector<int>& dims() const { return dims_; }
  int sites() const { return static_cast<int>(dims_.size()); }
  Eigen::Index dim() const { return total_dim(dims_); }
  bool is_pure() const { return std::holds_alternative<VectorC>(data_); }
  const VectorC& amplitudes() const { return std::get<VectorC>(data_); }

  MatrixC density() const {
    if (is_pure()) {
      const VectorC& v = amplitudes();
      return v * v.adjoint();
    }
    return std::get<MatrixC>(data_);
  }

  /// Tr(rho A) for a full-space operator; complex for non-Hermitian A.
  cplx expect_c(const MatrixC& a) const {
    check(a);
    if (is_pure()) {
      const VectorC& v = amplitudes();
      return v.dot(a * v);
    }
    return (std::get<MatrixC>(data_) * a).trace();
  }

  double expect(const MatrixC& a) const { return expect_c(a).real(); }

 private:
  void check(const MatrixC& a) const {
    if (a.rows() != dim() || a.cols() != dim())
      throw InvalidArgument("operator dimension does not match state");
  }

  std::vector<int> dims_;
  std::variant<VectorC, MatrixC> data_;
};

inline VectorC basis_vector(Eigen::Index d, Eigen::Index k) {
  VectorC v = VectorC::Zero(d);
  v[k] = 1.0;
  return v;
}

/// (|up...up> - |down...down>)/sqrt(2) on N qubits.
inline CompositeState ghz_state(int n) {
  if (n < 2) throw InvalidArgument("GHZ state needs at least two sites");
  const std::vector<int> dims(static_cast<std::size_t>(n), 2);
  const Eigen::Index d = total_dim(dims);
  VectorC v = VectorC::Zero(d);
  v[0] = 1.0 / std::sqrt(2.0);
  v[d - 1] = -1.0 / std::sqrt(2.0);
  return {dims, v};
}

/// Equal superposition of the N single-up basis states (default three sites).
inline CompositeState w_state(int n = 3) {
  if (n < 2) throw InvalidArgument("W state needs at least two sites");
  const std::vector<int> dims(static_cast<std::size_t>(n), 2);
  const Eigen::Index d = total_dim(dims);
  VectorC v = VectorC::Zero(d);
  // up is index 0, so the single-up state at site k has every bit set except k.
  for (int k = 0; k < n; ++k) v[(d - 1) ^ (Eigen::Index{1} << (n - 1 - k))] = 1.0 / std::sqrt(double(n));
  return {dims, v};
}

inline CompositeState product_state(const std::vector<VectorC>& locals) {
  if (locals.empty()) throw InvalidArgument("product state needs at least one factor");
  std::vector<int> dims;
  VectorC v = VectorC::Ones(1);
  for (const auto& l : locals) {
    dims.push_back(static_cast<int>(l.size()));
    v = kron(v, VectorC(l.normalized()));
  }
  return {dims, v};
}

/// Means and symmetrized covariance of a list of Hermitian operators.
struct ObservableMoments {
  VectorR mean;
  MatrixR cov;

  double variance(const VectorR& c) const { return c.dot(cov * c); }
};

inline ObservableMoments moments(const CompositeState& state, std::span<const MatrixC> ops) {
  const auto n = static_cast<Eigen::Index>(ops.size());
  ObservableMoments m;
  m.mean.resize(n);
  m.cov.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m.mean[i] = state.expect(ops[i]);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) {
      const double s = state.expect_c(ops[i] * ops[j]).real() - m.mean[i] * m.mean[j];
      m.cov(i, j) = m.cov(j, i) = s;
    }
  return m;
}

/// MomentSet over all sites using the same local operator set at every site.
inline MomentSet site_moments(const CompositeState& state, const spin::OperatorSet& local) {
  const int n = state.sites();
  for (int k : state.dims())
    if (k != local.dim()) throw InvalidArgument("local operators do not match site dimension");
  std::vector<MatrixC> ops;
  std::vector<MatrixC> zs;
  for (int a = 0; a < 2; ++a)
    for (int k = 0; k < n; ++k) ops.push_back(embed(local.ops[a], k, state.dims()));
  for (int k = 0; k < n; ++k) zs.push_back(embed(local.z(), k, state.dims()));
  const ObservableMoments om = moments(state, ops);
  MomentSet ms = MomentSet::zeros(n);
  ms.mean_x = om.mean.head(n);
  ms.mean_y = om.mean.tail(n);
  ms.cov = om.cov;
  VectorR vz(n);
  for (int k = 0; k < n; ++k) {
    ms.mean_z[k] = state.expect(zs[k]);
    vz[k] = state.expect(zs[k] * zs[k]) - ms.mean_z[k] * ms.mean_z[k];
  }
  ms.var_z = vz;
  ms.scale = local.scale;
  ms.provenance = Provenance::exact;
  return ms;
}

/// Classical postprocessing of a product measurement on partner sites.
///
/// Each partner site is measured in the eigenbasis of its operator; the
/// relabel maps the tuple of observed eigenvalues to a real estimate.
struct InferenceObservable {
  std::vector<int> partner_sites;
  std::vector<MatrixC> partner_ops;
  std::function<double(std::span<const double>)> relabel;
};

/// Eigenvalue and spectral projector of a Hermitian local operator,
/// eigenvalues closer than 1e-9 merged.
struct SpectralPart {
  double value;
  MatrixC projector;
};

inline std::vector<SpectralPart> spectral_parts(const MatrixC& op) {
  if ((op - op.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    throw InvalidArgument("measurement operator is not Hermitian");
  Eigen::SelfAdjointEigenSolver<MatrixC> es(op);
  std::vector<SpectralPart> parts;
  const auto& ev = es.eigenvalues();
  const auto& u = es.eigenvectors();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    const VectorC col = u.col(i);
    if (!parts.empty() && std::abs(ev[i] - parts.back().value) < 1e-9) {
      parts.back().projector += col * col.adjoint();
    } else {
      parts.push_back({ev[i], col * col.adjoint()});
    }
  }
  return parts;
}

/// Var(A - f) with A on `target_site` and f the relabeled partner outcome.
inline double inference_variance(const CompositeState& state, int target_site,
                                 const MatrixC& target_op, const InferenceObservable& inf) {
  const auto& dims = state.dims();
  if (inf.partner_sites.size() != inf.partner_ops.size() || inf.partner_sites.empty())
    throw InvalidArgument("each partner site needs exactly one measurement operator");
  if (!inf.relabel) throw InvalidArgument("inference relabel is empty");
  std::vector<char> used(dims.size(), 0);
  if (target_site < 0 || target_site >= static_cast<int>(dims.size()))
    throw InvalidArgument("target site out of range");
  used[static_cast<std::size_t>(target_site)] = 1;
  for (int s : inf.partner_sites) {
    if (s < 0 || s >= static_cast<int>(dims.size()))
      throw InvalidArgument("partner site out of range");
    if (used[static_cast<std::size_t>(s)])
      throw InvalidArgument("partner operators must act on distinct sites other than the target");
    used[static_cast<std::size_t>(s)] = 1;
  }

  std::vector<std::vector<SpectralPart>> parts;
  for (const auto& op : inf.partner_ops) parts.push_back(spectral_parts(op));

  const MatrixC a = embed(target_op, target_site, dims);
  const MatrixC a2 = a * a;
  const double mean_a = state.expect(a);

  double second = state.expect(a2);  // accumulates <(A - f)^2>
  double mean_f = 0.0;
  std::vector<std::size_t> idx(parts.size(), 0);
  std::vector<double> vals(parts.size());
  for (;;) {
    MatrixC proj = MatrixC::Identity(state.dim(), state.dim());
    for (std::size_t p = 0; p < parts.size(); ++p) {
      vals[p] = parts[p][idx[p]].value;
      proj = proj * embed(parts[p][idx[p]].projector, inf.partner_sites[p], dims);
    }
    const double prob = state.expect(proj);
    const double ap = state.expect_c(a * proj).real();
    const double f = inf.relabel(std::span<const double>(vals));
    second += -2.0 * f * ap + f * f * prob;
    mean_f += f * prob;
    std::size_t p = 0;
    while (p < parts.size() && ++idx[p] == parts[p].size()) idx[p++] = 0;
    if (p == parts.size()) break;
  }
  const double m = mean_a - mean_f;
  return std::max(0.0, second - m * m);
}

/// One B_k term: two target components, each with its own inference.
struct InferencePair {
  std::array<MatrixC, 2> targets;
  std::array<InferenceObservable, 2> inferences;
};

struct Criterion5Result {
  std::array<double, 3> b{};
  double bound = 0.0;
  double sum() const { return b[0] + b[1] + b[2]; }
  /// Strictly below the bound by more than rounding (1e-12 relative).
  bool below(double v) const { return v < bound - 1e-12 * std::max(1.0, bound); }
  bool genuine() const { return below(sum()); }
  bool full_inseparability() const { return below(b[0]) && below(b[1]) && below(b[2]); }
};

inline Criterion5Result criterion5_evaluate(const CompositeState& state,
                                            const std::array<InferencePair, 3>& strategy,
                                            double bound) {
  if (!(bound > 0.0)) throw InvalidArgument("planar bound must be positive");
  if (state.sites() != 3) throw InvalidArgument("inference criterion needs exactly three sites");
  Criterion5Result r;
  r.bound = bound;
  for (int k = 0; k < 3; ++k)
    for (int c = 0; c < 2; ++c)
      r.b[static_cast<std::size_t>(k)] += inference_variance(
          state, k, strategy[static_cast<std::size_t>(k)].targets[static_cast<std::size_t>(c)],
          strategy[static_cast<std::size_t>(k)].inferences[static_cast<std::size_t>(c)]);
  return r;
}

namespace detail {
inline std::array<int, 2> partners_of(int k) {
  return k == 0 ? std::array<int, 2>{1, 2} : k == 1 ? std::array<int, 2>{0, 2} : std::array<int, 2>{0, 1};
}
}  // namespace detail

/// Pauli (z, x) strategy for the GHZ state: z from the first partner's z,
/// x from the negated product of partner x outcomes.
inline std::array<InferencePair, 3> ghz_strategy() {
  const spin::OperatorSet p = spin::pauli_matrices();
  std::array<InferencePair, 3> s;
  for (int k = 0; k < 3; ++k) {
    const auto pr = detail::partners_of(k);
    auto& e = s[static_cast<std::size_t>(k)];
    e.targets = {p.z(), p.x()};
    e.inferences[0] = {{pr[0], pr[1]}, {p.z(), p.z()},
                       [](std::span<const double> v) { return v[0]; }};
    e.inferences[1] = {{pr[0], pr[1]}, {p.x(), p.x()},
                       [](std::span<const double> v) { return -v[0] * v[1]; }};
  }
  return s;
}

/// Pauli (z, x) strategy for the W state: z from the product of partner z,
/// x is +1 / -1 when both partners agree on +1 / -1 and 0 otherwise.
inline std::array<InferencePair, 3> w_strategy() {
  const spin::OperatorSet p = spin::pauli_matrices();
  std::array<InferencePair, 3> s;
  for (int k = 0; k < 3; ++k) {
    const auto pr = detail::partners_of(k);
    auto& e = s[static_cast<std::size_t>(k)];
    e.targets = {p.z(), p.x()};
    e.inferences[0] = {{pr[0], pr[1]}, {p.z(), p.z()},
                       [](std::span<const double> v) { return v[0] * v[1]; }};
    e.inferences[1] = {{pr[0], pr[1]}, {p.x(), p.x()}, [](std::span<const double> v) {
                         if (v[0] > 0 && v[1] > 0) return 1.0;
                         if (v[0] < 0 && v[1] < 0) return -1.0;
                         return 0.0;
                       }};
  }
  return s;
}

}  // namespace spinent::qudit

#endif  // SPINENT_QUDIT_HPP
