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

// Named physical scenarios that produce moment sets.

#ifndef SPINENT_PRESETS_HPP
#define SPINENT_PRESETS_HPP

#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spinent/criteria.hpp"
#include "spinent/gaussian.hpp"
#include "spinent/moments.hpp"
#include "spinent/optimizer.hpp"
#include "spinent/types.hpp"

namespace spinent::presets {

using Params = std::map<std::string, std::string>;

/// Locale-independent decimal parse of the whole string.
inline double parse_number(const std::string& s) {
  double v = 0.0;
  const char* b = s.data();
  const char* e = b + s.size();
  if (b != e && *b == '+') ++b;
  auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || p != e || b == e) throw InvalidArgument("not a number: '" + s + "'");
  return v;
}

inline double param(const Params& p, const std::string& key, std::optional<double> fallback = std::nullopt) {
  auto it = p.find(key);
  if (it == p.end()) {
    if (!fallback) throw InvalidArgument("missing parameter '" + key + "'");
    return *fallback;
  }
  return parse_number(it->second);
}

inline std::string param_str(const Params& p, const std::string& key, const std::string& fallback) {
  auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

struct Preset {
  std::string name;
  MomentSet moments;
  std::optional<gaussian::GaussianState> state;
  std::optional<gaussian::NetworkConfig> network;
  criteria::GainVector gains;
  double g_z = 1.0;
  double g_y = 1.0;
};

// --- networks ---------------------------------------------------------------

using gaussian::BeamSplitter;
using gaussian::NetworkConfig;
using gaussian::Quadrature;
using gaussian::Squeezer;

/// Three squeezed inputs (X on mode 0, P on modes 1, 2), R = 1/3 then 1/2.
inline NetworkConfig cv_ghz_network(double r) {
  return {3,
          {Squeezer{0, r, Quadrature::X}, Squeezer{1, r, Quadrature::P}, Squeezer{2, r, Quadrature::P},
           BeamSplitter{0, 1, 1.0 / 3.0, 0.0}, BeamSplitter{1, 2, 0.5, 0.0}}};
}

/// Two squeezed inputs (X on mode 0, P on mode 1) and a vacuum, R = 1/2 twice.
inline NetworkConfig cv_epr_network(double r) {
  return {3,
          {Squeezer{0, r, Quadrature::X}, Squeezer{1, r, Quadrature::P}, BeamSplitter{0, 1, 0.5, 0.0},
           BeamSplitter{1, 2, 0.5, 0.0}}};
}

/// One P-squeezed input, R = 1/3 then 1/2.
inline NetworkConfig single_squeezed_tripartite_network(double r) {
  return {3, {Squeezer{0, r, Quadrature::P}, BeamSplitter{0, 1, 1.0 / 3.0, 0.0}, BeamSplitter{1, 2, 0.5, 0.0}}};
}

/// One P-squeezed input, R = 1/4, 1/3, 1/2.
inline NetworkConfig single_squeezed_fourpartite_network(double r) {
  return {4,
          {Squeezer{0, r, Quadrature::P}, BeamSplitter{0, 1, 0.25, 0.0}, BeamSplitter{1, 2, 1.0 / 3.0, 0.0},
           BeamSplitter{2, 3, 0.5, 0.0}}};
}

namespace detail {

inline double squeeze_param(const Params& p) {
  const double r = param(p, "r");
  if (!std::isfinite(r) || r < 0.0 || r > 10.0) throw InvalidArgument("squeezing r must lie in [0, 10]");
  return r;
}

inline double positive(const Params& p, const std::string& key, double fallback) {
  const double v = param(p, key, fallback);
  if (!(v > 0.0) || !std::isfinite(v)) throw InvalidArgument("parameter '" + key + "' must be positive");
  return v;
}

inline Preset from_network(const std::string& name, NetworkConfig net, const Params& p,
                           const std::string& default_readout, double h, double g) {
  Preset out;
  out.name = name;
  out.state = gaussian::run_network(net);
  const int n = net.modes;
  out.network = std::move(net);
  const std::string readout = param_str(p, "readout", default_readout);
  if (readout == "stokes") {
    out.moments = gaussian::linearized_stokes_moments(*out.state, positive(p, "alpha_v", 1.0), param(p, "theta", 0.0));
  } else if (readout == "quadrature") {
    out.moments = gaussian::quadrature_moments(*out.state);
  } else {
    throw InvalidArgument("readout must be 'stokes' or 'quadrature'");
  }
  out.gains = criteria::GainVector::symmetric(n, h, g);
  return out;
}

}  // namespace detail

/// Linearized Stokes moments of the three-input GHZ-type network.
inline Preset cv_ghz(const Params& p) {
  return detail::from_network("cv_ghz", cv_ghz_network(detail::squeeze_param(p)), p, "stokes", 1.0, -0.5);
}

inline Preset cv_epr(const Params& p) {
  return detail::from_network("cv_epr", cv_epr_network(detail::squeeze_param(p)), p, "stokes",
                              std::sqrt(0.5), -std::sqrt(0.5));
}

/// Quadrature moments by default; gains (1, -1/2, -1/2) on X and (1, 1/2, 1/2) on P.
inline Preset single_squeezed_tripartite(const Params& p) {
  return detail::from_network("single_squeezed_tripartite",
                              single_squeezed_tripartite_network(detail::squeeze_param(p)), p, "quadrature",
                              -0.5, 0.5);
}

inline Preset single_squeezed_fourpartite(const Params& p) {
  return detail::from_network("single_squeezed_fourpartite",
                              single_squeezed_fourpartite_network(detail::squeeze_param(p)), p, "quadrature",
                              -1.0 / 3.0, 1.0 / 3.0);
}

/// Field modes mixed with an intense vertically polarized field at each
/// site. `source` picks the field network: ghz, epr, single or single4.
inline Preset polarization_transfer(const Params& p) {
  Params q = p;
  q["readout"] = "stokes";
  const std::string src = param_str(p, "source", "ghz");
  const double r = detail::squeeze_param(p);
  Preset out;
  if (src == "ghz") out = detail::from_network("polarization_transfer", cv_ghz_network(r), q, "stokes", 1.0, -0.5);
  else if (src == "epr")
    out = detail::from_network("polarization_transfer", cv_epr_network(r), q, "stokes", std::sqrt(0.5), -std::sqrt(0.5));
  else if (src == "single")
    out = detail::from_network("polarization_transfer", single_squeezed_tripartite_network(r), q, "stokes", -0.5, 0.5);
  else if (src == "single4")
    out = detail::from_network("polarization_transfer", single_squeezed_fourpartite_network(r), q, "stokes",
                               -1.0 / 3.0, 1.0 / 3.0);
  else
    throw InvalidArgument("unknown polarization source '" + src + "'");
  return out;
}

// --- atomic ensembles ---------------------------------------------------------

struct EnsembleModel {
  gaussian::GaussianState input;
  gaussian::GaussianState output;
  gaussian::GaussianState conditioned;
  VectorR mean_spin;
};

/// Three ensembles with mean spins (J, -J/2, -J/2) along x, coupled to light
/// through H ~ S_z (J_z1 + J_z2 + J_z3). Variables are interleaved pairs:
/// (J_z,k, J_y,k) for k = 0..2, then (S_y, S_z) of each light pulse.
///
/// Pulse one reads out the J_z sum and kicks each J_y,k by beta S_z J_x,k / J.
/// The optional second pulse does the same with the roles of J_z and J_y
/// exchanged. Conditioning is on the light S_y outputs at outcome 0.
inline EnsembleModel ensemble_qnd_model(double jx, double alpha, double beta, double light_noise,
                                        bool second_pulse) {
  if (!(jx > 0.0) || !(light_noise > 0.0)) throw InvalidArgument("mean spin and light noise must be positive");
  EnsembleModel m;
  m.mean_spin.resize(3);
  m.mean_spin << jx, -0.5 * jx, -0.5 * jx;
  const int modes = 5;
  m.input = gaussian::vacuum(modes);
  for (int k = 0; k < 3; ++k) {
    m.input.cov(2 * k, 2 * k) = std::abs(m.mean_spin[k]) / 2.0;
    m.input.cov(2 * k + 1, 2 * k + 1) = std::abs(m.mean_spin[k]) / 2.0;
  }
  for (int k = 3; k < 5; ++k) {
    m.input.cov(2 * k, 2 * k) = light_noise;
    m.input.cov(2 * k + 1, 2 * k + 1) = light_noise;
  }
  MatrixR first = MatrixR::Identity(2 * modes, 2 * modes);
  for (int k = 0; k < 3; ++k) {
    first(6, 2 * k) = alpha;                            // S_y1 += alpha J_z,k
    first(2 * k + 1, 7) = beta * m.mean_spin[k] / jx;  // J_y,k += beta S_z1 J_x,k / J
  }
  m.output = gaussian::apply_linear(m.input, first);
  if (second_pulse) {
    MatrixR second = MatrixR::Identity(2 * modes, 2 * modes);
    for (int k = 0; k < 3; ++k) {
      second(8, 2 * k + 1) = alpha;                       // S_y2 += alpha J_y,k
      second(2 * k, 9) = -beta * m.mean_spin[k] / jx;     // J_z,k -= beta S_z2 J_x,k / J
    }
    m.output = gaussian::apply_linear(m.output, second);
  }
  VectorR c1 = VectorR::Zero(2 * modes);
  c1[6] = 1.0;
  m.conditioned = gaussian::condition_on_measurement(m.output, c1, 0.0);
  if (second_pulse) {
    VectorR c2 = VectorR::Zero(2 * modes);
    c2[8] = 1.0;
    m.conditioned = gaussian::condition_on_measurement(m.conditioned, c2, 0.0);
  }
  return m;
}

inline MomentSet ensemble_moments(const EnsembleModel& model) {
  MomentSet ms = MomentSet::zeros(3);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) ms.cov(3 * a + i, 3 * b + j) = model.conditioned.cov(2 * i + a, 2 * j + b);
  for (int k = 0; k < 3; ++k) {
    ms.mean_x[k] = model.conditioned.mean[2 * k];
    ms.mean_y[k] = model.conditioned.mean[2 * k + 1];
  }
  ms.mean_z = model.mean_spin;
  ms.var_z = VectorR::Zero(3);
  ms.scale = 1.0;
  ms.provenance = Provenance::linearized;
  return ms;
}

/// Parameters: J_x (1000), alpha (0.1), beta (0.05), light_noise (1),
/// second_pulse (1).
inline Preset atomic_ensemble_qnd(const Params& p) {
  const EnsembleModel model =
      ensemble_qnd_model(detail::positive(p, "J_x", 1000.0), param(p, "alpha", 0.1), param(p, "beta", 0.05),
                         detail::positive(p, "light_noise", 1.0), param(p, "second_pulse", 1.0) != 0.0);
  Preset out;
  out.name = "atomic_ensemble_qnd";
  out.moments = ensemble_moments(model);
  out.state = model.conditioned;
  out.gains = {VectorR::Ones(3), VectorR::Ones(3)};
  return out;
}

// --- split condensate ---------------------------------------------------------

/// Two clouds A, B of `atoms` atoms each, mean spin atoms/2 along S_x, with
/// fluctuations S_z = (sqrt(atoms)/2) X and S_y = (sqrt(atoms)/2) P of an
/// EPR pair (P squeezed on mode 0, X on mode 1, 50:50 mixed). x-role S_z,
/// y-role S_y, mean S_x.
inline MomentSet two_cloud_parent(double r, double atoms) {
  if (!(atoms > 0.0)) throw InvalidArgument("atom number must be positive");
  const gaussian::GaussianState s = gaussian::run_network(
      {2, {Squeezer{0, r, Quadrature::P}, Squeezer{1, r, Quadrature::X}, BeamSplitter{0, 1, 0.5, 0.0}}});
  MomentSet m = gaussian::quadrature_moments(s);
  m.cov *= atoms / 4.0;
  m.mean_x *= std::sqrt(atoms) / 2.0;
  m.mean_y *= std::sqrt(atoms) / 2.0;
  m.mean_z.setConstant(atoms / 2.0);
  m.var_z = VectorR::Zero(2);
  m.scale = 1.0;
  m.provenance = Provenance::linearized;
  return m;
}

/// Split cloud A of a two-cloud moment set into A1 (fraction `ratio`) and
/// A2 on a beam splitter with empty ports, giving sites (A1, A2, B).
///
/// Without vacuum terms each A-operator is scaled by ratio / 1 - ratio. With
/// them, the empty-port noise of cloud A (total atom number `atoms_a`) adds
/// t(1-t) atoms_a / 4 to each A1 and A2 variance and removes it from their
/// covariance; grouped sums A1 + A2 are unchanged.
inline MomentSet split_cloud(const MomentSet& parent, double ratio, bool vacuum_terms, double atoms_a = 0.0) {
  parent.validate();
  if (parent.sites() != 2) throw InvalidArgument("split needs a two-cloud moment set");
  if (!(ratio > 0.0 && ratio < 1.0)) throw InvalidArgument("split ratio must lie in (0, 1)");
  if (vacuum_terms && !(atoms_a > 0.0)) throw InvalidArgument("vacuum terms need the atom number of cloud A");
  const double t = ratio, u = 1.0 - ratio;
  MatrixR map = MatrixR::Zero(6, 4);
  for (int a = 0; a < 2; ++a) {
    map(3 * a + 0, 2 * a + 0) = t;
    map(3 * a + 1, 2 * a + 0) = u;
    map(3 * a + 2, 2 * a + 1) = 1.0;
  }
  MomentSet m = MomentSet::zeros(3);
  m.cov = map * parent.cov * map.transpose();
  VectorR mu(4);
  mu << parent.mean_x, parent.mean_y;
  const VectorR mo = map * mu;
  m.mean_x = mo.head(3);
  m.mean_y = mo.tail(3);
  m.mean_z << t * parent.mean_z[0], u * parent.mean_z[0], parent.mean_z[1];
  m.scale = parent.scale;
  m.provenance = parent.provenance;
  VectorR vz = VectorR::Zero(3);
  if (parent.var_z) vz << t * t * (*parent.var_z)[0], u * u * (*parent.var_z)[0], (*parent.var_z)[1];
  if (vacuum_terms) {
    const double e = t * u * atoms_a / 4.0;
    for (int a = 0; a < 2; ++a) {
      m.cov(3 * a, 3 * a) += e;
      m.cov(3 * a + 1, 3 * a + 1) += e;
      m.cov(3 * a, 3 * a + 1) -= e;
      m.cov(3 * a + 1, 3 * a) -= e;
    }
    vz[0] += e;
    vz[1] += e;
  }
  if (parent.var_z || vacuum_terms) m.var_z = vz;
  return m;
}

/// Parameters: r (0.5), atoms (1000), ratio (0.5), vacuum_terms (0),
/// g_z (-1), g_y (1).
inline Preset bec_split(const Params& p) {
  Params q = p;
  if (!q.count("r")) q["r"] = "0.5";
  const double r = detail::squeeze_param(q);
  const double atoms = detail::positive(p, "atoms", 1000.0);
  const double ratio = param(p, "ratio", 0.5);
  Preset out;
  out.name = "bec_split";
  out.moments = split_cloud(two_cloud_parent(r, atoms), ratio, param(p, "vacuum_terms", 0.0) != 0.0, atoms);
  out.g_z = param(p, "g_z", -1.0);
  out.g_y = param(p, "g_y", 1.0);
  out.gains = {VectorR(3), VectorR(3)};
  out.gains.h << out.g_z, out.g_z, 1.0;
  out.gains.g << out.g_y, out.g_y, 1.0;
  return out;
}

// --- registry -----------------------------------------------------------------

inline const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> n{"cv_ghz",
                                          "cv_epr",
                                          "single_squeezed_tripartite",
                                          "single_squeezed_fourpartite",
                                          "polarization_transfer",
                                          "atomic_ensemble_qnd",
                                          "bec_split"};
  return n;
}

inline Preset make_preset(const std::string& name, const Params& p) {
  if (name == "cv_ghz") return cv_ghz(p);
  if (name == "cv_epr") return cv_epr(p);
  if (name == "single_squeezed_tripartite") return single_squeezed_tripartite(p);
  if (name == "single_squeezed_fourpartite") return single_squeezed_fourpartite(p);
  if (name == "polarization_transfer") return polarization_transfer(p);
  if (name == "atomic_ensemble_qnd") return atomic_ensemble_qnd(p);
  if (name == "bec_split") return bec_split(p);
  throw InvalidArgument("unknown preset '" + name + "'");
}

/// r -> moments of the named preset with the other parameters fixed.
inline optimize::MomentSource moment_source(const std::string& name, Params p) {
  return [name, p](double r) {
    Params q = p;
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), r);
    q["r"] = std::string(buf, res.ptr);
    return make_preset(name, q).moments;
  };
}

}  // namespace spinent::presets

#endif  // SPINENT_PRESETS_HPP
