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

#ifndef SPINENT_MOMENTS_HPP
#define SPINENT_MOMENTS_HPP

#include <cmath>
#include <limits>
#include <optional>
#include <string_view>

#include "spinent/types.hpp"

namespace spinent {

enum class Provenance { exact, linearized, quadrature };

inline std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::linearized:
      return "linearized";
    case Provenance::quadrature:
      return "quadrature";
    default:
      return "exact";
  }
}

/// First and second moments of N sites, as used by every criterion.
///
/// Each site k carries an x-role operator, a y-role operator and a mean-spin
/// operator with [x_k, y_k] = i c z_k. `cov` is the symmetrized covariance
/// over (x_1..x_N, y_1..y_N). `var_z` is optional; it is only needed for the
/// large-spin validity ratios.
struct MomentSet {
  VectorR mean_x;
  VectorR mean_y;
  MatrixR cov;
  VectorR mean_z;
  std::optional<VectorR> var_z;
  double scale = 1.0;
  Provenance provenance = Provenance::exact;

  Eigen::Index sites() const { return mean_z.size(); }

  static MomentSet zeros(Eigen::Index n) {
    MomentSet m;
    m.mean_x = VectorR::Zero(n);
    m.mean_y = VectorR::Zero(n);
    m.cov = MatrixR::Zero(2 * n, 2 * n);
    m.mean_z = VectorR::Zero(n);
    return m;
  }

  void validate() const {
    const Eigen::Index n = sites();
    if (n < 1) throw InvalidArgument("moment set has no sites");
    if (mean_x.size() != n || mean_y.size() != n || cov.rows() != 2 * n ||
        cov.cols() != 2 * n)
      throw InvalidArgument("moment set shapes are inconsistent");
    if (var_z && var_z->size() != n) throw InvalidArgument("var_z has wrong length");
    if (!cov.allFinite() || !mean_z.allFinite())
      throw InvalidArgument("moment set contains non-finite values");
    if (!(scale > 0.0)) throw InvalidArgument("commutator scale must be positive");
  }

  /// Var(sum_k a_k x_k + sum_k b_k y_k).
  double variance(const VectorR& a, const VectorR& b) const {
    if (a.size() != sites() || b.size() != sites())
      throw InvalidArgument("gain vector length does not match site count");
    VectorR c(2 * sites());
    c << a, b;
    return c.dot(cov * c);
  }

  double variance_x(const VectorR& a) const {
    return variance(a, VectorR::Zero(sites()));
  }
  double variance_y(const VectorR& b) const {
    return variance(VectorR::Zero(sites()), b);
  }

  /// Delta^2 z_k / |<z_k>| per site; requires var_z.
  VectorR validity_ratios() const {
    if (!var_z) throw MissingData("per-site mean-spin variances were not supplied");
    VectorR r(sites());
    for (Eigen::Index k = 0; k < sites(); ++k) {
      const double m = std::abs(mean_z[k]);
      r[k] = m > 0.0 ? (*var_z)[k] / m : std::numeric_limits<double>::infinity();
    }
    return r;
  }
};

}  // namespace spinent

#endif  // SPINENT_MOMENTS_HPP
