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

#include <cstdint>
#include <string>
#include <vector>

#include "phaselab/qstate.hpp"
#include "phaselab/rng.hpp"

namespace phaselab {

enum class EnsembleKind { Haar, CliffordPrime, Explicit };

/// A distribution over d x d unitaries: the Haar measure, the single-qudit
/// Clifford group for prime d (uniform over the enumerated group, modulo
/// global phase), or an explicit uniform list.
class UnitaryEnsemble {
 public:
  static UnitaryEnsemble haar(Index d);
  static UnitaryEnsemble clifford_prime(Index d);
  static UnitaryEnsemble explicit_list(Index d,
                                       std::vector<UnitaryMatrix> members);

  EnsembleKind kind() const { return kind_; }
  Index dim() const { return d_; }
  /// Empty for the Haar kind.
  const std::vector<UnitaryMatrix>& members() const { return members_; }
  std::string name() const;

 private:
  UnitaryEnsemble(EnsembleKind kind, Index d,
                  std::vector<UnitaryMatrix> members)
      : kind_(kind), d_(d), members_(std::move(members)) {}

  EnsembleKind kind_;
  Index d_;
  std::vector<UnitaryMatrix> members_;
};

/// Exactly Haar-distributed unitary: complex Ginibre matrix, QR, then the
/// R-diagonal phase correction (plain QR alone is not Haar).
UnitaryMatrix haar_unitary(Index d, RandomStream& stream);

/// Single-qudit Clifford group for prime d <= 5, enumerated modulo global
/// phase by closure over {Fourier, quadratic phase, X, Z}.
/// Orders: 24 (d=2), 216 (d=3), 3000 (d=5), i.e. d^3(d^2-1).
UnitaryEnsemble clifford_group(Index d);

UnitaryMatrix sample_from(const UnitaryEnsemble& ensemble,
                          RandomStream& stream);

/// Haar average of (U x U) M (U x U)^dagger for M on C^d x C^d, computed
/// from the symmetric/antisymmetric decomposition. Linear in M.
Matrix twirl_exact_matrix(const Matrix& m, Index d);
DensityMatrix twirl_exact(const DensityMatrix& rho);

struct TwoDesignReport {
  bool pass;
  double max_deviation;
  double tol;
  int test_matrices;
  bool exact_average;     // false when the ensemble average was sampled
  std::uint64_t samples;  // draws used when sampled, 0 otherwise
};

/// Compares the ensemble's two-fold twirl with the exact Haar twirl.
/// Finite ensembles are averaged exactly (full operator basis for d <= 3
/// plus random density matrices); the Haar kind is spot-checked by
/// sampling, so its deviation is statistical.
TwoDesignReport is_two_design(const UnitaryEnsemble& ensemble, double tol,
                              RandomStream& stream, int random_tests = 10,
                              std::uint64_t haar_budget = 20000);
/// Same, with a pinned internal test stream.
TwoDesignReport is_two_design(const UnitaryEnsemble& ensemble, double tol);

}  // namespace phaselab
