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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "phaselab/ensembles.hpp"
#include "phaselab/qstate.hpp"
#include "phaselab/rng.hpp"

namespace phaselab {

/// Diagonal coupling gate on C^d x C^d: |i>|j> -> w^{ij} |i>|j>,
/// w = exp(2 pi i / d). Equal to sum_j Z^j (x) |j><j|.
struct PhaseGate {
  Index d;
  Matrix matrix;  // (d^2) x (d^2), diagonal
};

PhaseGate controlled_phase(Index d);

/// One concrete realization of the randomized channel: the pair (U, V)
/// applied to the two input legs before the coupling gate. The pair is
/// public knowledge of the receiver.
struct ChannelInstance {
  Index d;
  UnitaryMatrix u;
  UnitaryMatrix v;
  std::string provenance;  // "explicit" or a stream record
};

/// The instance's isometry on C^d x C^d: P (U x V). The first leg is the
/// retained output, the second leg is the environment.
UnitaryMatrix channel_isometry(const ChannelInstance& inst);

/// Applies one instance to slots (a1, a2) of the input and traces out the
/// environment leg a2. The surviving slots keep their relative order.
DensityMatrix apply_instance(const ChannelInstance& inst,
                             const PureState& input, std::size_t a1 = 0,
                             std::size_t a2 = 1);
DensityMatrix apply_instance(const ChannelInstance& inst,
                             const DensityMatrix& input, std::size_t a1 = 0,
                             std::size_t a2 = 1);

/// Applies one instance per (a1, a2) pair, then traces all environment
/// legs at once.
DensityMatrix apply_instances(
    std::span<const ChannelInstance> instances, const PureState& input,
    std::span<const std::pair<std::size_t, std::size_t>> pairs);

/// The same evolution with the per-instance isometries precomputed once,
/// for repeated application to many inputs over one layout.
class PreparedInstances {
 public:
  PreparedInstances(std::span<const ChannelInstance> instances,
                    const SubsystemLayout& layout,
                    std::span<const std::pair<std::size_t, std::size_t>> pairs);
  DensityMatrix apply(const PureState& input) const;

 private:
  std::vector<UnitaryMatrix> isometries_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
  SubsystemLayout layout_;
  std::vector<std::size_t> keep_;
};

/// Erasure with fixed probability 1/2: the kept branch passes the slot
/// through unchanged, the erased branch replaces it with an orthogonal
/// flag state in dimension d+1.
struct ErasureChannel {
  Index d;
  static constexpr double probability = 0.5;
};

struct ErasureBranch {
  double probability;
  std::string label;  // "kept" or "erased"
  DensityMatrix state;
};

struct BranchedOutput {
  std::vector<ErasureBranch> branches;
};

BranchedOutput apply_erasure(const ErasureChannel& channel,
                             const DensityMatrix& input, std::size_t slot);

struct SamplerConfig {
  UnitaryEnsemble u_ensemble;
  UnitaryEnsemble v_ensemble;

  static SamplerConfig haar(Index d) {
    return {UnitaryEnsemble::haar(d), UnitaryEnsemble::haar(d)};
  }
  static SamplerConfig from_ensemble(const UnitaryEnsemble& e) {
    return {e, e};
  }
};

/// Draws `copies` independent instances. Copy l uses substream(2l) for U
/// and substream(2l+1) for V, so the draw is stable under reordering.
std::vector<ChannelInstance> sample_channel(Index d, int copies,
                                            const RandomStream& base,
                                            const SamplerConfig& config);
std::vector<ChannelInstance> sample_channel(Index d, int copies,
                                            const RandomStream& base);

}  // namespace phaselab
