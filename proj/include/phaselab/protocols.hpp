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

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "phaselab/info.hpp"
#include "phaselab/phasechannel.hpp"
#include "phaselab/qstate.hpp"
#include "phaselab/rng.hpp"

namespace phaselab {

struct TranscriptStep {
  std::string label;
  std::string systems;
  std::string outcome;
};

struct ProtocolTranscript {
  std::string protocol;
  std::vector<TranscriptStep> steps;
  int channel_uses = 0;
  double payload_bits = 0.0;

  void add(std::string label, std::string systems, std::string outcome);
  double rate() const;
  /// One line per step: "k | label | systems | outcome".
  std::string to_text() const;
};

struct ReversalResult {
  double fidelity;
  ProtocolTranscript transcript;
};

/// Receiver-side reversal of a known instance. The receiver pre-shares a
/// maximally entangled pair whose far leg feeds the instance's second
/// input; rotating and measuring the kept leg reveals which phase power
/// hit the payload, and the receiver undoes it exactly (fidelity 1).
/// With corrections disabled the receiver still undoes the known input
/// unitary but has no phase information; the payload decoheres.
ReversalResult assisted_reversal(const ChannelInstance& inst,
                                 const PureState& input,
                                 bool apply_corrections = true);

enum class ErasureMode { Branch, Identity };

struct JointCIResult {
  Index d = 0;
  double nonerased = 0.0;
  /// Empty in Identity mode (no erased branch exists).
  std::optional<double> erased;
  double average = 0.0;
};

/// Coherent information of one instance run jointly with the 1/2-erasure:
/// maximally entangled probes on both legs, the second probe's kept half
/// routed through the erasure. Per instance the unerased branch carries
/// exactly log2 d bits and the erased branch exactly 0.
JointCIResult joint_coherent_info(const ChannelInstance& inst,
                                  ErasureMode mode = ErasureMode::Branch);

struct EntanglementResult {
  double fidelity;
  /// Post-protocol (sender, receiver) pair state; present only when the
  /// measurement outcome was sampled through a stream.
  std::optional<PureState> pair_state;
  ProtocolTranscript transcript;
};

/// Sender-side correction protocol: both instance legs are fed halves of
/// maximally entangled pairs, the sender learns the phase power from the
/// kept half of the second pair and repairs the first pair's kept half.
/// Ends with one perfect maximally entangled pair per use. Without a
/// stream all measurement branches are enumerated and the fidelity is
/// branch-averaged; with a stream one outcome is sampled and the final
/// pair state is returned.
EntanglementResult backassisted_entanglement(const ChannelInstance& inst,
                                             bool apply_corrections = true,
                                             RandomStream* stream = nullptr);

struct ClassicalRunResult {
  std::pair<Index, Index> sent;
  std::pair<Index, Index> decoded;
  bool correct = false;
  int channel_uses = 0;
  double payload_bits = 0.0;
  double rate = 0.0;
  ProtocolTranscript transcript;
};

/// Classical messaging over three uses: two uses distill two perfect
/// pairs via the sender-corrected protocol, the third use (plus one pair)
/// simulates a perfect qudit channel, and dense coding on the other pair
/// carries 2 log2 d bits. Rate (2/3) log2 d per use. d in {2, 3}.
ClassicalRunResult backassisted_classical(
    Index d, std::pair<Index, Index> message,
    std::span<const ChannelInstance> instances, RandomStream& stream);
/// Same, with the three instances drawn from stream.substream(1000).
ClassicalRunResult backassisted_classical(Index d,
                                          std::pair<Index, Index> message,
                                          RandomStream& stream);

struct NonadditivityReport {
  Index d = 0;
  Index input_dim = 0;  // d^2
  /// Analytic per-use bound on the coupling component's classical
  /// capacity; supported by the sampled Holevo suite, not computed here.
  double classical_capacity_bound = 0.0;
  /// Analytic private capacity of the erasure component alone (assumed,
  /// not verified by this suite).
  double erasure_private_capacity = 0.0;
  /// Measured joint coherent information, averaged over instances.
  double joint_coherent_info = 0.0;
  double spread = 0.0;  // max - min across instances
  double violation_ratio = 0.0;  // joint CI / log2(input_dim)
  int instances = 0;
  std::vector<std::string> notes;
};

NonadditivityReport nonadditivity_report(Index d, const RandomStream& stream,
                                         int instances = 5);

}  // namespace phaselab
