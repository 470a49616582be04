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

// Spin operator constructions: spin-J matrices, Pauli matrices and the
// two-mode (Schwinger / Stokes) realizations on a truncated Fock space.

#ifndef SPINENT_SPIN_ALGEBRA_HPP
#define SPINENT_SPIN_ALGEBRA_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>

#include "spinent/types.hpp"

namespace spinent::spin {

/// Three Hermitian operators with [A_x, A_y] = i c A_z on the valid subspace.
///
/// `scale` is c: 1 for spin units, 2 for Pauli/Stokes units. For truncated
/// two-mode constructions `valid` marks the basis states on which the algebra
/// is exact; it is empty when the whole space is valid.
struct OperatorSet {
  std::array<MatrixC, 3> ops;
  double scale = 1.0;
  double theta = 0.0;
  std::vector<char> valid;

  const MatrixC& x() const { return ops[0]; }
  const MatrixC& y() const { return ops[1]; }
  const MatrixC& z() const { return ops[2]; }
  Eigen::Index dim() const { return ops[0].rows(); }

  /// True if `psi` has no weight outside the valid subspace.
  bool supports(const VectorC& psi, double tol = 1e-12) const {
    if (psi.size() != dim()) return false;
    if (valid.empty()) return true;
    double leak = 0.0;
    for (Eigen::Index i = 0; i < psi.size(); ++i)
      if (!valid[static_cast<std::size_t>(i)]) leak += std::norm(psi[i]);
    return leak <= tol;
  }
};

namespace detail {

inline int two_j_of(double j) {
  const double twice = 2.0 * j;
  const int n = static_cast<int>(std::lround(twice));
  if (!(j > 0.0) || std::abs(twice - n) > 1e-12)
    throw InvalidArgument("spin must be a positive multiple of 1/2");
  return n;
}

}  // namespace detail

/// Spin-J matrices in the |J, m> basis ordered m = J, J-1, ..., -J.
inline OperatorSet spin_matrices(double j) {
  const int n = detail::two_j_of(j);
  const Eigen::Index d = n + 1;
  MatrixC jp = MatrixC::Zero(d, d);
  MatrixC jz = MatrixC::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    const double m = j - static_cast<double>(k);
    jz(k, k) = m;
    if (k > 0) jp(k - 1, k) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
  }
  OperatorSet s;
  const MatrixC jm = jp.adjoint();
  s.ops[0] = 0.5 * (jp + jm);
  s.ops[1] = cplx(0.0, -0.5) * (jp - jm);
  s.ops[2] = jz;
  return s;
}

/// Pauli matrices; index 0 is spin up (sigma_z = +1).
inline OperatorSet pauli_matrices() {
  OperatorSet s;
  s.ops[0] = MatrixC::Zero(2, 2);
  s.ops[1] = MatrixC::Zero(2, 2);
  s.ops[2] = MatrixC::Zero(2, 2);
  s.ops[0](0, 1) = s.ops[0](1, 0) = 1.0;
  s.ops[1](0, 1) = cplx(0.0, -1.0);
  s.ops[1](1, 0) = cplx(0.0, 1.0);
  s.ops[2](0, 0) = 1.0;
  s.ops[2](1, 1) = -1.0;
  s.scale = 2.0;
  return s;
}

/// Index of |n_plus, n_minus> in a two-mode space with per-mode cutoff.
inline Eigen::Index two_mode_index(int n_plus, int n_minus, int n_max) {
  return static_cast<Eigen::Index>(n_plus) * (n_max + 1) + n_minus;
}

/// Schwinger spin of modes a_+, a_- with relative phase theta.
///
/// Jx = (n+ - n-)/2, Jy = (a+^dag a- e^{i theta} + h.c.)/2,
/// Jz = (i a-^dag a+ e^{-i theta} - i a+^dag a- e^{i theta})/2.
/// Each mode keeps n <= n_max; states with n+ + n- <= n_max are valid.
inline OperatorSet schwinger_operators(int n_max, double theta = 0.0) {
  if (n_max < 1) throw InvalidArgument("Fock cutoff must be at least 1");
  const Eigen::Index d = static_cast<Eigen::Index>(n_max + 1) * (n_max + 1);
  MatrixC nd = MatrixC::Zero(d, d);
  MatrixC hop = MatrixC::Zero(d, d);  // a+^dag a-
  OperatorSet s;
  s.valid.assign(static_cast<std::size_t>(d), 0);
  for (int np = 0; np <= n_max; ++np) {
    for (int nm = 0; nm <= n_max; ++nm) {
      const Eigen::Index k = two_mode_index(np, nm, n_max);
      nd(k, k) = 0.5 * (np - nm);
      s.valid[static_cast<std::size_t>(k)] = (np + nm <= n_max) ? 1 : 0;
      if (nm > 0 && np < n_max)
        hop(two_mode_index(np + 1, nm - 1, n_max), k) =
            std::sqrt(static_cast<double>(np + 1) * nm);
    }
  }
  const cplx ph = std::polar(1.0, theta);
  const MatrixC t = hop * ph;  // a+^dag a- e^{i theta}
  s.ops[0] = nd;
  s.ops[1] = 0.5 * (t + t.adjoint());
  s.ops[2] = cplx(0.0, 0.5) * (t.adjoint() - t);
  s.theta = theta;
  return s;
}

/// Stokes operators: twice the Schwinger set with + -> H and - -> V.
inline OperatorSet stokes_operators(int n_max, double theta = 0.0) {
  OperatorSet s = schwinger_operators(n_max, theta);
  for (auto& m : s.ops) m *= 2.0;
  s.scale = 2.0;
  return s;
}

/// Largest entry of [A_x, A_y] - i c A_z restricted to valid columns, and the
/// cyclic partners. Operators are handled as sparse matrices.
inline double commutator_residual(const OperatorSet& s) {
  using Sp = Eigen::SparseMatrix<cplx>;
  std::array<Sp, 3> a;
  for (int k = 0; k < 3; ++k) a[k] = s.ops[k].sparseView();
  double worst = 0.0;
  const cplx ic(0.0, s.scale);
  for (int k = 0; k < 3; ++k) {
    const Sp& p = a[k];
    const Sp& q = a[(k + 1) % 3];
    const Sp& r = a[(k + 2) % 3];
    Sp c = Sp(p * q) - Sp(q * p) - Sp(ic * r);
    for (int col = 0; col < c.outerSize(); ++col) {
      if (!s.valid.empty() && !s.valid[static_cast<std::size_t>(col)]) continue;
      for (Sp::InnerIterator it(c, col); it; ++it)
        worst = std::max(worst, std::abs(it.value()));
    }
  }
  return worst;
}

/// Largest entry of A - A^dagger over the three operators.
inline double hermiticity_residual(const OperatorSet& s) {
  double worst = 0.0;
  for (const auto& m : s.ops) worst = std::max(worst, (m - m.adjoint()).cwiseAbs().maxCoeff());
  return worst;
}

inline double expect(const MatrixC& op, const VectorC& psi) {
  return psi.dot(op * psi).real();
}

inline double variance(const MatrixC& op, const VectorC& psi) {
  const VectorC v = op * psi;
  const double m = psi.dot(v).real();
  return v.squaredNorm() - m * m;
}

enum class Units { spin, pauli };

struct PlanarResult {
  double value = 0.0;
  int iterations = 0;
  double residual = 0.0;
  VectorC state;
};

struct PlanarOptions {
  int max_iterations = 500;
  double tolerance = 1e-10;
  double damping = 0.5;
};

/// Minimum of Var(Jx) + Var(Jy) over spin-J states.
///
/// Alternates between the ground vector of (Jx - a)^2 + (Jy - b)^2 and the
/// means (a, b) it produces, from a 3x3 start grid over [-J, J]^2.
inline PlanarResult planar_bound(double j, Units units = Units::spin,
                                 const PlanarOptions& opt = {}) {
  const OperatorSet s = spin_matrices(j);
  const MatrixC jx2 = s.x() * s.x();
  const MatrixC jy2 = s.y() * s.y();
  const MatrixC base = jx2 + jy2;

  PlanarResult best;
  best.value = std::numeric_limits<double>::infinity();
  bool any_converged = false;
  double best_residual = std::numeric_limits<double>::infinity();
  const std::array<double, 3> grid{-j, 0.0, j};
  for (double a0 : grid) {
    for (double b0 : grid) {
      double a = a0, b = b0;
      PlanarResult r;
      r.residual = std::numeric_limits<double>::infinity();
      for (int it = 1; it <= opt.max_iterations; ++it) {
        const MatrixC h = base - 2.0 * a * s.x() - 2.0 * b * s.y();
        Eigen::SelfAdjointEigenSolver<MatrixC> es(h);
        VectorC v = es.eigenvectors().col(0);
        const double mx = expect(s.x(), v);
        const double my = expect(s.y(), v);
        const double na = (1.0 - opt.damping) * a + opt.damping * mx;
        const double nb = (1.0 - opt.damping) * b + opt.damping * my;
        r.residual = std::hypot(mx - a, my - b);
        r.iterations = it;
        r.value = variance(s.x(), v) + variance(s.y(), v);
        r.state = v;
        a = na;
        b = nb;
        if (r.residual < opt.tolerance) break;
      }
      const bool conv = r.residual < opt.tolerance;
      if (conv && (!any_converged || r.value < best.value)) {
        best = r;
        any_converged = true;
      } else if (!any_converged && r.value < best_residual) {
        best_residual = r.value;
        best = r;
      }
    }
  }
  if (!any_converged)
    throw ConvergenceFailure("planar bound iteration did not converge", best.value,
                             best.residual);
  if (units == Units::pauli) best.value *= 4.0;
  return best;
}

}  // namespace spinent::spin

#endif  // SPINENT_SPIN_ALGEBRA_HPP
