// Copyright 2026 The Phaselab Authors
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

#pragma once

#include <complex>
#include <Eigen/Dense>

namespace phaselab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

// Shared numerical contract: structural validation (norms, hermiticity,
// unitarity, probability sums) uses kValidationTol; eigenvalues below
// -kEigenvalueFloor are an error, eigenvalues at or below kEigenvalueClamp
// are treated as exact zeros.
inline constexpr double kValidationTol = 1e-10;
inline constexpr double kEigenvalueFloor = 1e-10;
inline constexpr double kEigenvalueClamp = 1e-12;

inline constexpr double kPi = 3.14159265358979323846;

}  // namespace phaselab
