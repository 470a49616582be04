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

#ifndef SPINENT_TYPES_HPP
#define SPINENT_TYPES_HPP

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace spinent {

using cplx = std::complex<double>;
using MatrixC = Eigen::MatrixXcd;
using VectorC = Eigen::VectorXcd;
using MatrixR = Eigen::MatrixXd;
using VectorR = Eigen::VectorXd;

/// Bad input: shapes, ranges, malformed config.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Iterative routine stopped early. Carries the best value seen.
class ConvergenceFailure : public std::runtime_error {
 public:
  ConvergenceFailure(const std::string& what, double best, double residual)
      : std::runtime_error(what), best_value(best), residual(residual) {}
  double best_value;
  double residual;
};

/// A quantity needed for the requested verdict was not supplied.
class MissingData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Conditioning on a measurement with (numerically) zero variance.
class DegenerateMeasurement : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fock truncation lost more norm than allowed.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, double leaked)
      : std::runtime_error(what), leaked_mass(leaked) {}
  double leaked_mass;
};

/// Objective is flat or undefined everywhere on the search grid.
class DegenerateObjective : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Verdict { inconclusive, full_inseparability, genuine_entanglement };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::full_inseparability:
      return "full_inseparability";
    case Verdict::genuine_entanglement:
      return "genuine_entanglement";
    default:
      return "inconclusive";
  }
}

}  // namespace spinent

#endif  // SPINENT_TYPES_HPP
