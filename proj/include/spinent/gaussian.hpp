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

// Gaussian mode networks. Quadratures X = a + a^dag, P = -i(a - a^dag), so
// the vacuum covariance is the identity. Vectors are interleaved:
// index 2k is X_k and 2k+1 is P_k.

#ifndef SPINENT_GAUSSIAN_HPP
#define SPINENT_GAUSSIAN_HPP

#include <cmath>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Eigenvalues>

#include "spinent/moments.hpp"
#include "spinent/types.hpp"

namespace spinent::gaussian {

enum class Quadrature { X, P };

struct GaussianState {
  VectorR mean;
  MatrixR cov;

  int modes() const { return static_cast<int>(mean.size() / 2); }
};

inline GaussianState vacuum(int modes) {
  if (modes < 1) throw InvalidArgument("network needs at least one mode");
  return {VectorR::Zero(2 * modes), MatrixR::Identity(2 * modes, 2 * modes)};
}

/// Symplectic form for [X_k, P_k] = 2i.
inline MatrixR symplectic_form(int modes) {
  MatrixR w = MatrixR::Zero(2 * modes, 2 * modes);
  for (int k = 0; k < modes; ++k) {
    w(2 * k, 2 * k + 1) = 1.0;
    w(2 * k + 1, 2 * k) = -1.0;
  }
  return w;
}

/// Smallest eigenvalue of cov + i Omega; non-negative for physical states.
inline double physicality_margin(const GaussianState& s) {
  const MatrixC m = s.cov.cast<cplx>() + cplx(0.0, 1.0) * symplectic_form(s.modes()).cast<cplx>();
  Eigen::SelfAdjointEigenSolver<MatrixC> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

inline bool is_physical(const GaussianState& s, double tol = 1e-9) {
  return physicality_margin(s) >= -tol;
}

/// x -> S x on the quadrature vector.
inline GaussianState apply_linear(const GaussianState& s, const MatrixR& map) {
  if (map.rows() != s.mean.size() || map.cols() != s.mean.size())
    throw InvalidArgument("linear map does not match quadrature count");
  return {map * s.mean, map * s.cov * map.transpose()};
}

namespace detail {
inline void check_mode(const GaussianState& s, int k) {
  if (k < 0 || k >= s.modes()) throw InvalidArgument("mode index out of range");
}
}  // namespace detail

/// Squeezes `quad` by e^{-r} and scales its partner by e^{r}.
inline GaussianState squeeze(const GaussianState& s, int mode, double r, Quadrature quad) {
  detail::check_mode(s, mode);
  if (!std::isfinite(r)) throw InvalidArgument("squeezing parameter must be finite");
  MatrixR m = MatrixR::Identity(s.mean.size(), s.mean.size());
  const double sx = quad == Quadrature::X ? std::exp(-r) : std::exp(r);
  m(2 * mode, 2 * mode) = sx;
  m(2 * mode + 1, 2 * mode + 1) = 1.0 / sx;
  return apply_linear(s, m);
}

/// Rotation of one mode: X' = cos(phi) X - sin(phi) P, P' = sin(phi) X + cos(phi) P.
inline GaussianState phase_shift(const GaussianState& s, int mode, double phi) {
  detail::check_mode(s, mode);
  MatrixR m = MatrixR::Identity(s.mean.size(), s.mean.size());
  m(2 * mode, 2 * mode) = std::cos(phi);
  m(2 * mode, 2 * mode + 1) = -std::sin(phi);
  m(2 * mode + 1, 2 * mode) = std::sin(phi);
  m(2 * mode + 1, 2 * mode + 1) = std::cos(phi);
  return apply_linear(s, m);
}

/// out_i = sqrt(R) in_i + sqrt(1-R) in_j, out_j = sqrt(1-R) in_i - sqrt(R) in_j,
/// on both quadratures. A nonzero phase first rotates mode j.
inline GaussianState beam_splitter(const GaussianState& s, int i, int j, double reflectivity,
                                   double phase = 0.0) {
  detail::check_mode(s, i);
  detail::check_mode(s, j);
  if (i == j) throw InvalidArgument("beam splitter needs two distinct modes");
  if (!(reflectivity >= 0.0 && reflectivity <= 1.0))
    throw InvalidArgument("beam splitter reflectivity must lie in [0, 1]");
  const GaussianState in = phase == 0.0 ? s : phase_shift(s, j, phase);
  const double t = std::sqrt(reflectivity);
  const double u = std::sqrt(1.0 - reflectivity);
  MatrixR m = MatrixR::Identity(s.mean.size(), s.mean.size());
  for (int q = 0; q < 2; ++q) {
    const int a = 2 * i + q, b = 2 * j + q;
    m(a, a) = t;
    m(a, b) = u;
    m(b, a) = u;
    m(b, b) = -t;
  }
  return apply_linear(in, m);
}

struct Squeezer {
  int mode = 0;
  double r = 0.0;
  Quadrature quadrature = Quadrature::P;
};

struct BeamSplitter {
  int i = 0;
  int j = 1;
  double reflectivity = 0.5;
  double phase = 0.0;
};

using Element = std::variant<Squeezer, BeamSplitter>;

/// Vacuum inputs on `modes` modes, then the elements in order.
struct NetworkConfig {
  int modes = 0;
  std::vector<Element> elements;
};

inline GaussianState run_network(const NetworkConfig& cfg) {
  GaussianState s = vacuum(cfg.modes);
  for (const auto& e : cfg.elements) {
    if (const auto* q = std::get_if<Squeezer>(&e)) {
      s = squeeze(s, q->mode, q->r, q->quadrature);
    } else {
      const auto& b = std::get<BeamSplitter>(e);
      s = beam_splitter(s, b.i, b.j, b.reflectivity, b.phase);
    }
  }
  return s;
}

struct LinearMoments {
  double mean;
  double variance;
};

/// Mean and variance of c . x.
inline LinearMoments linear_moments(const GaussianState& s, const VectorR& c) {
  if (c.size() != s.mean.size()) throw InvalidArgument("coefficient vector has wrong length");
  return {c.dot(s.mean), c.dot(s.cov * c)};
}

/// Quadrature coefficient vector from per-mode X and P gains.
inline VectorR combination(const VectorR& x_gains, const VectorR& p_gains) {
  if (x_gains.size() != p_gains.size()) throw InvalidArgument("gain vectors differ in length");
  VectorR c(2 * x_gains.size());
  for (Eigen::Index k = 0; k < x_gains.size(); ++k) {
    c[2 * k] = x_gains[k];
    c[2 * k + 1] = p_gains[k];
  }
  return c;
}

/// Gaussian update after observing c . x = outcome.
inline GaussianState condition_on_measurement(const GaussianState& s, const VectorR& c,
                                              double outcome) {
  const LinearMoments lm = linear_moments(s, c);
  const double scale = std::max(1.0, s.cov.cwiseAbs().maxCoeff()) * c.squaredNorm();
  if (!(lm.variance > 1e-14 * scale))
    throw DegenerateMeasurement("measured combination has zero variance");
  const VectorR k = s.cov * c / lm.variance;
  GaussianState out;
  out.mean = s.mean + k * (outcome - lm.mean);
  out.cov = s.cov - (s.cov * c) * (s.cov * c).transpose() / lm.variance;
  out.cov = 0.5 * (out.cov + out.cov.transpose());
  return out;
}

/// Quadrature MomentSet: x-role X_k, y-role P_k, [X, P] = 2i.
inline MomentSet quadrature_moments(const GaussianState& s) {
  const int n = s.modes();
  MomentSet m = MomentSet::zeros(n);
  std::vector<Eigen::Index> order;
  for (int k = 0; k < n; ++k) order.push_back(2 * k);
  for (int k = 0; k < n; ++k) order.push_back(2 * k + 1);
  for (int a = 0; a < 2 * n; ++a)
    for (int b = 0; b < 2 * n; ++b) m.cov(a, b) = s.cov(order[a], order[b]);
  for (int k = 0; k < n; ++k) {
    m.mean_x[k] = s.mean[2 * k];
    m.mean_y[k] = s.mean[2 * k + 1];
  }
  m.mean_z.setOnes();
  m.scale = 2.0;
  m.provenance = Provenance::quadrature;
  return m;
}

/// Stokes moments of mode k mixed with an intense vertical field of
/// amplitude alpha_v (real), to first order in the fluctuations.
///
/// x-role S_y ~ alpha_v (cos t X + sin t P), y-role S_z ~ -alpha_v (-sin t X + cos t P),
/// mean S_x ~ -alpha_v^2 with shot-noise variance alpha_v^2.
inline MomentSet linearized_stokes_moments(const GaussianState& s, double alpha_v,
                                           double theta = 0.0) {
  if (!(alpha_v > 0.0) || !std::isfinite(alpha_v))
    throw InvalidArgument("local oscillator amplitude must be positive");
  const int n = s.modes();
  const double c = std::cos(theta), sn = std::sin(theta);
  MatrixR map = MatrixR::Zero(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    map(k, 2 * k) = alpha_v * c;
    map(k, 2 * k + 1) = alpha_v * sn;
    map(n + k, 2 * k) = alpha_v * sn;
    map(n + k, 2 * k + 1) = -alpha_v * c;
  }
  MomentSet m = MomentSet::zeros(n);
  m.cov = map * s.cov * map.transpose();
  const VectorR mu = map * s.mean;
  m.mean_x = mu.head(n);
  m.mean_y = mu.tail(n);
  m.mean_z.setConstant(-alpha_v * alpha_v);
  m.var_z = VectorR::Constant(n, alpha_v * alpha_v);
  m.scale = 2.0;
  m.provenance = Provenance::linearized;
  return m;
}

}  // namespace spinent::gaussian

#endif  // SPINENT_GAUSSIAN_HPP
