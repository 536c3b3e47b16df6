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

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "phaselab/core.hpp"

namespace phaselab {

/// Ordered list of subsystem dimensions. Slot 0 is the most significant
/// index: a basis vector |i0 i1 ... ik> sits at offset
/// sum_p i_p * stride_p with stride_p = prod_{q>p} dim_q.
class SubsystemLayout {
 public:
  SubsystemLayout() = default;
  explicit SubsystemLayout(std::vector<Index> dims);
  static SubsystemLayout uniform(Index d, std::size_t slots);

  Index total_dim() const { return total_; }
  std::size_t slots() const { return dims_.size(); }
  Index dim(std::size_t slot) const;
  const std::vector<Index>& dims() const { return dims_; }
  const std::vector<Index>& strides() const { return strides_; }

  /// Layout of the given slots, in the order given.
  SubsystemLayout subset(std::span<const std::size_t> keep) const;
  /// Layout with the given slots removed; remaining slots keep their order.
  SubsystemLayout without(std::span<const std::size_t> remove) const;
  /// Layout with one slot's dimension replaced.
  SubsystemLayout with_dim(std::size_t slot, Index d) const;

  bool operator==(const SubsystemLayout&) const = default;
  std::string to_string() const;

 private:
  std::vector<Index> dims_;
  std::vector<Index> strides_;
  Index total_ = 1;
};

/// Normalized state vector over a SubsystemLayout.
struct PureState {
  Vector amplitudes;
  SubsystemLayout layout;

  PureState(Vector amps, SubsystemLayout lay);
  Index dim() const { return amplitudes.size(); }
};

/// Hermitian unit-trace operator over a SubsystemLayout. Positivity is not
/// checked on construction; the entropy path rejects spectra below the
/// eigenvalue floor.
struct DensityMatrix {
  Matrix entries;
  SubsystemLayout layout;

  DensityMatrix(Matrix m, SubsystemLayout lay);
  Index dim() const { return entries.rows(); }
};

struct UnitaryMatrix {
  Matrix entries;

  explicit UnitaryMatrix(Matrix m);
  Index dim() const { return entries.rows(); }
};

// --- tensor products -------------------------------------------------------

Matrix tensor(const Matrix& a, const Matrix& b);
Vector tensor(const Vector& a, const Vector& b);
PureState tensor(const PureState& a, const PureState& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
UnitaryMatrix tensor(const UnitaryMatrix& a, const UnitaryMatrix& b);

// --- structural operations -------------------------------------------------

/// Applies `op` to the listed slots of a state vector. `op` acts on the
/// tensor product of the listed slots in the order given; all other slots
/// are untouched. op must be square with dim = prod of the listed dims.
Vector apply_to_slots(const Matrix& op, const Vector& state,
                      const SubsystemLayout& layout,
                      std::span<const std::size_t> slots);
PureState apply_to_slots(const UnitaryMatrix& op, const PureState& state,
                         std::span<const std::size_t> slots);

/// op acting on the listed slots, identity elsewhere, as a full matrix.
Matrix embed_operator(const Matrix& op, std::span<const std::size_t> slots,
                      const SubsystemLayout& layout);

/// Reorders slots so that new slot p is old slot perm[p].
PureState permute_subsystems(const PureState& state,
                             std::span<const std::size_t> perm);
DensityMatrix permute_subsystems(const DensityMatrix& state,
                                 std::span<const std::size_t> perm);

// --- reductions ------------------------------------------------------------

DensityMatrix to_density(const PureState& state);

/// Partial trace keeping the listed slots (in the order given).
DensityMatrix partial_trace(const DensityMatrix& state,
                            std::span<const std::size_t> keep);
/// Reduced state of a pure state, without materializing the full projector.
DensityMatrix reduced_state(const PureState& state,
                            std::span<const std::size_t> keep);

// --- spectra and information measures --------------------------------------

/// Eigenvalues of a density matrix, descending, clamped per the shared
/// numerical contract. Throws if any eigenvalue < -kEigenvalueFloor.
RealVector state_eigenvalues(const DensityMatrix& state);

/// Von Neumann entropy in bits.
double von_neumann_entropy(const DensityMatrix& state);

/// Tr rho^2 via the squared Frobenius norm.
double purity(const DensityMatrix& state);

// --- canonical objects ------------------------------------------------------

/// |phi_d> = d^{-1/2} sum_i |ii> with layout (d, d).
PureState max_entangled_state(Index d);

/// Swap on C^d x C^d.
UnitaryMatrix swap_operator(Index d);

/// Generalized Pauli pair {X, Z}: X|j> = |j+1 mod d>, Z|j> = w^j |j>,
/// w = exp(2 pi i / d). Satisfy Z X = w X Z.
std::pair<UnitaryMatrix, UnitaryMatrix> generalized_paulis(Index d);

/// Computational basis state |digits[0] digits[1] ...>.
PureState basis_state(const SubsystemLayout& layout,
                      std::span<const Index> digits);

// --- misc -------------------------------------------------------------------

/// |<a|b>|^2.
double fidelity(const PureState& a, const PureState& b);
/// <psi|rho|psi>.
double fidelity(const DensityMatrix& rho, const PureState& psi);

struct MeasurementBranch {
  double probability;
  Index outcome;
  PureState post;  // measured slot removed
};

/// Computational-basis measurement of one slot. Branches with probability
/// below 1e-15 are omitted; surviving branches are renormalized and the
/// measured slot is dropped from the layout.
std::vector<MeasurementBranch> measure_computational(const PureState& state,
                                                     std::size_t slot);

}  // namespace phaselab
