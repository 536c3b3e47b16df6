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

#include "phaselab/protocols.hpp"

#include <cmath>
#include <stdexcept>

namespace phaselab {

namespace {

// Z^k with negative powers folded into [0, d).
Matrix phase_power(Index d, Index k) {
  const Index kk = ((k % d) + d) % d;
  Matrix z = Matrix::Zero(d, d);
  for (Index j = 0; j < d; ++j) {
    const double ang = 2.0 * kPi * static_cast<double>((kk * j) % d) /
                       static_cast<double>(d);
    z(j, j) = Complex(std::cos(ang), std::sin(ang));
  }
  return z;
}

// X^a: |j> -> |j + a mod d>.
Matrix shift_power(Index d, Index a) {
  const Index aa = ((a % d) + d) % d;
  Matrix x = Matrix::Zero(d, d);
  for (Index j = 0; j < d; ++j) x((j + aa) % d, j) = 1.0;
  return x;
}

// (X^a Z^b (x) I) |phi_d>.
PureState bell_state(Index d, Index a, Index b) {
  Vector v = Vector::Zero(d * d);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (Index i = 0; i < d; ++i) {
    const double ang = 2.0 * kPi * static_cast<double>((b * i) % d) /
                       static_cast<double>(d);
    v[((i + a) % d) * d + i] = norm * Complex(std::cos(ang), std::sin(ang));
  }
  return PureState(std::move(v), SubsystemLayout({d, d}));
}

// Samples a measurement branch by its probability weight.
const MeasurementBranch& sample_branch(
    const std::vector<MeasurementBranch>& branches, RandomStream& stream) {
  const double r = stream.next_double();
  double acc = 0.0;
  for (const auto& b : branches) {
    acc += b.probability;
    if (r <= acc) return b;
  }
  return branches.back();
}

// The environment leg is perfectly correlated with the already-measured
// helper leg, so its "measurement" has a single surviving branch; this
// slices it off while keeping the state pure.
PureState drop_collapsed_slot(const PureState& state, std::size_t slot) {
  auto branches = measure_computational(state, slot);
  if (branches.size() != 1)
    throw std::logic_error("phaselab: slot expected to be collapsed");
  return branches.front().post;
}

}  // namespace

void ProtocolTranscript::add(std::string label, std::string systems,
                             std::string outcome) {
  steps.push_back({std::move(label), std::move(systems), std::move(outcome)});
}

double ProtocolTranscript::rate() const {
  return channel_uses > 0 ? payload_bits / static_cast<double>(channel_uses)
                          : 0.0;
}

std::string ProtocolTranscript::to_text() const {
  std::string out = protocol + " | uses=" + std::to_string(channel_uses) +
                    " | payload_bits=" + std::to_string(payload_bits) + "\n";
  for (std::size_t k = 0; k < steps.size(); ++k) {
    out += std::to_string(k) + " | " + steps[k].label + " | " +
           steps[k].systems + " | " + steps[k].outcome + "\n";
  }
  return out;
}

ReversalResult assisted_reversal(const ChannelInstance& inst,
                                 const PureState& input,
                                 bool apply_corrections) {
  const Index d = inst.d;
  if (input.layout != SubsystemLayout({d}))
    throw std::invalid_argument(
        "phaselab: reversal input must be a single d-dimensional slot");

  ProtocolTranscript tr;
  tr.protocol = "assisted_reversal";
  tr.channel_uses = 1;
  tr.payload_bits = 0.0;

  // Slots: 0 payload leg, 1 helper leg into the channel, 2 kept helper.
  PureState state = tensor(input, max_entangled_state(d));
  tr.add("prepare", "A1 A2 B'",
         "payload on A1, maximally entangled helper pair on (A2, B')");

  const UnitaryMatrix w = channel_isometry(inst);
  const std::size_t legs[] = {0, 1};
  state = apply_to_slots(w, state, legs);
  tr.add("channel", "A1 A2 -> B E",
         "instance " + inst.provenance + " applied; environment retained");

  if (!apply_corrections) {
    const std::size_t keep_b[] = {0};
    DensityMatrix rho_b = reduced_state(state, keep_b);
    const Matrix undo = inst.u.entries.adjoint();
    rho_b = DensityMatrix(undo * rho_b.entries * undo.adjoint(),
                          rho_b.layout);
    const double f = fidelity(rho_b, input);
    tr.add("control", "B",
           "helper ignored; input rotation undone without phase data");
    return ReversalResult{f, tr};
  }

  const std::size_t helper[] = {2};
  state = apply_to_slots(UnitaryMatrix(inst.v.entries.conjugate()), state,
                         helper);
  tr.add("helper rotation", "B'", "conjugate of the second-leg unitary");

  const auto branches = measure_computational(state, 2);
  tr.add("helper measurement", "B'",
         std::to_string(branches.size()) + " outcomes enumerated");

  double total_f = 0.0;
  for (const auto& branch : branches) {
    const Matrix fix =
        inst.u.entries.adjoint() * phase_power(d, -branch.outcome);
    const std::size_t payload[] = {0};
    const PureState corrected =
        apply_to_slots(UnitaryMatrix(fix), branch.post, payload);
    const DensityMatrix rho_b = reduced_state(corrected, payload);
    total_f += branch.probability * fidelity(rho_b, input);
  }
  tr.add("phase fix", "B", "inverse phase power, then inverse input unitary");
  return ReversalResult{total_f, tr};
}

JointCIResult joint_coherent_info(const ChannelInstance& inst,
                                  ErasureMode mode) {
  const Index d = inst.d;

  // Slots: 0 reference, 1 payload leg, 2 helper leg, 3 erasure input.
  PureState state = tensor(max_entangled_state(d), max_entangled_state(d));
  const UnitaryMatrix w = channel_isometry(inst);
  const std::size_t legs[] = {1, 2};
  state = apply_to_slots(w, state, legs);

  const std::size_t keep[] = {0, 1, 3};
  const DensityMatrix joint = reduced_state(state, keep);  // (A, B, B')

  const std::size_t reference[] = {0};
  const double nonerased = coherent_information(joint, reference);

  if (mode == ErasureMode::Identity)
    return JointCIResult{d, nonerased, std::nullopt, nonerased};

  const BranchedOutput branched =
      apply_erasure(ErasureChannel{d}, joint, 2);
  double average = 0.0;
  double erased_value = 0.0;
  for (const auto& branch : branched.branches) {
    const double ci = coherent_information(branch.state, reference);
    average += branch.probability * ci;
    if (branch.label == "erased") erased_value = ci;
  }
  return JointCIResult{d, nonerased, erased_value, average};
}

EntanglementResult backassisted_entanglement(const ChannelInstance& inst,
                                             bool apply_corrections,
                                             RandomStream* stream) {
  const Index d = inst.d;

  ProtocolTranscript tr;
  tr.protocol = "backassisted_entanglement";
  tr.channel_uses = 1;
  tr.payload_bits = std::log2(static_cast<double>(d));  // one perfect pair

  // Slots: 0 sender keeps C1, 1 payload leg A1, 2 sender keeps C2,
  // 3 helper leg A2.
  PureState state = tensor(max_entangled_state(d), max_entangled_state(d));
  tr.add("prepare", "C1 A1 C2 A2",
         "two maximally entangled pairs at the sender");

  const UnitaryMatrix w = channel_isometry(inst);
  const std::size_t legs[] = {1, 3};
  state = apply_to_slots(w, state, legs);
  tr.add("channel", "A1 A2 -> B E",
         "instance " + inst.provenance + " applied; environment retained");

  if (!apply_corrections) {
    const std::size_t keep[] = {0, 1};
    const DensityMatrix pair = reduced_state(state, keep);
    const double f = fidelity(pair, max_entangled_state(d));
    tr.add("control", "C1 B", "no sender correction applied");
    return EntanglementResult{f, std::nullopt, tr};
  }

  const std::size_t helper[] = {2};
  state = apply_to_slots(UnitaryMatrix(inst.v.entries.conjugate()), state,
                         helper);
  tr.add("sender rotation", "C2", "conjugate of the second-leg unitary");

  const auto branches = measure_computational(state, 2);

  const auto correct_branch = [&](const MeasurementBranch& branch) {
    // Post layout: (C1, B, E). The sender repairs C1; the transpose
    // identity moves the residual phase shift to the kept side, where
    // Z^{-k} conj(U) cancels it exactly.
    const Matrix fix = phase_power(d, -branch.outcome) *
                       inst.u.entries.conjugate();
    const std::size_t sender[] = {0};
    return apply_to_slots(UnitaryMatrix(fix), branch.post, sender);
  };

  if (stream != nullptr) {
    const MeasurementBranch& branch = sample_branch(branches, *stream);
    tr.add("sender measurement", "C2",
           "outcome " + std::to_string(branch.outcome) + " sampled");
    const PureState corrected = correct_branch(branch);
    const PureState pair = drop_collapsed_slot(corrected, 2);
    const double f = fidelity(pair, max_entangled_state(d));
    tr.add("sender correction", "C1",
           "inverse phase power and conjugate unitary applied");
    return EntanglementResult{f, pair, tr};
  }

  tr.add("sender measurement", "C2",
         std::to_string(branches.size()) + " outcomes enumerated");
  double total_f = 0.0;
  for (const auto& branch : branches) {
    const PureState corrected = correct_branch(branch);
    const std::size_t keep[] = {0, 1};
    const DensityMatrix pair = reduced_state(corrected, keep);
    total_f += branch.probability * fidelity(pair, max_entangled_state(d));
  }
  tr.add("sender correction", "C1",
         "inverse phase power and conjugate unitary applied");
  return EntanglementResult{total_f, std::nullopt, tr};
}

ClassicalRunResult backassisted_classical(
    Index d, std::pair<Index, Index> message,
    std::span<const ChannelInstance> instances, RandomStream& stream) {
  if (d != 2 && d != 3)
    throw std::invalid_argument(
        "phaselab: classical protocol supports d in {2, 3}");
  if (message.first < 0 || message.first >= d || message.second < 0 ||
      message.second >= d)
    throw std::invalid_argument("phaselab: message symbol out of range");
  if (instances.size() != 3)
    throw std::invalid_argument("phaselab: protocol needs 3 instances");
  for (const auto& inst : instances)
    if (inst.d != d)
      throw std::invalid_argument("phaselab: instance dimension mismatch");

  ClassicalRunResult result;
  result.sent = message;
  result.channel_uses = 3;
  result.payload_bits = 2.0 * std::log2(static_cast<double>(d));

  ProtocolTranscript& tr = result.transcript;
  tr.protocol = "backassisted_classical";
  tr.channel_uses = 3;
  tr.payload_bits = result.payload_bits;

  // Uses 1 and 2: distill one perfect pair each.
  EntanglementResult e1 =
      backassisted_entanglement(instances[0], true, &stream);
  tr.add("use 1", "C1 B", "pair distilled, fidelity " +
                              std::to_string(e1.fidelity));
  EntanglementResult e2 =
      backassisted_entanglement(instances[1], true, &stream);
  tr.add("use 2", "C1 B", "pair distilled, fidelity " +
                              std::to_string(e2.fidelity));

  // Dense coding on pair 2.
  const Matrix enc = shift_power(d, message.first) *
                     phase_power(d, message.second);
  const std::size_t sender_slot[] = {0};
  PureState pair2 =
      apply_to_slots(UnitaryMatrix(enc), *e2.pair_state, sender_slot);
  tr.add("encode", "S2",
         "shift^" + std::to_string(message.first) + " phase^" +
             std::to_string(message.second) + " applied");

  // Use 3 simulates a perfect channel for the encoded qudit: slots
  // (S2, R2, S1, R1); the encoded leg feeds the payload input and pair 1
  // feeds the helper input.
  PureState state = tensor(pair2, *e1.pair_state);
  const UnitaryMatrix w = channel_isometry(instances[2]);
  const std::size_t legs[] = {0, 2};
  state = apply_to_slots(w, state, legs);
  tr.add("use 3", "S2 S1 -> B E",
         "encoded qudit through the payload leg, pair-1 sender leg as helper");

  const std::size_t r1_slot[] = {3};
  state = apply_to_slots(UnitaryMatrix(instances[2].v.entries.conjugate()),
                         state, r1_slot);
  const auto branches = measure_computational(state, 3);
  const MeasurementBranch& branch = sample_branch(branches, stream);
  tr.add("receiver measurement", "R1",
         "outcome " + std::to_string(branch.outcome) + " sampled");

  const Matrix fix = instances[2].u.entries.adjoint() *
                     phase_power(d, -branch.outcome);
  const std::size_t b_slot[] = {0};
  PureState fixed = apply_to_slots(UnitaryMatrix(fix), branch.post, b_slot);
  fixed = drop_collapsed_slot(fixed, 2);  // environment, now (B, R2)
  tr.add("receiver correction", "B",
         "inverse phase power, then inverse payload unitary");

  // Generalized Bell measurement on (B, R2).
  std::vector<MeasurementBranch> bell;
  for (Index a = 0; a < d; ++a)
    for (Index b = 0; b < d; ++b) {
      const PureState target = bell_state(d, a, b);
      const double p = fidelity(target, fixed);
      if (p < 1e-15) continue;
      bell.push_back({p, a * d + b, target});
    }
  const MeasurementBranch& outcome = sample_branch(bell, stream);
  result.decoded = {outcome.outcome / d, outcome.outcome % d};
  result.correct = result.decoded == message;
  result.rate = tr.rate();
  tr.add("decode", "B R2",
         "pair (" + std::to_string(result.decoded.first) + ", " +
             std::to_string(result.decoded.second) + ") measured");
  return result;
}

ClassicalRunResult backassisted_classical(Index d,
                                          std::pair<Index, Index> message,
                                          RandomStream& stream) {
  const auto instances = sample_channel(d, 3, stream.substream(1000));
  return backassisted_classical(d, message, instances, stream);
}

NonadditivityReport nonadditivity_report(Index d, const RandomStream& stream,
                                         int instances) {
  if (d < 2)
    throw std::invalid_argument("phaselab: report needs d >= 2");
  if (instances < 1)
    throw std::invalid_argument("phaselab: report needs >= 1 instance");

  double sum = 0.0;
  double lo = 0.0, hi = 0.0;
  for (int i = 0; i < instances; ++i) {
    const auto sampled =
        sample_channel(d, 1, stream.substream(static_cast<std::uint64_t>(i)));
    const JointCIResult res = joint_coherent_info(sampled[0]);
    sum += res.average;
    if (i == 0) {
      lo = hi = res.average;
    } else {
      lo = std::min(lo, res.average);
      hi = std::max(hi, res.average);
    }
  }

  NonadditivityReport report;
  report.d = d;
  report.input_dim = d * d;
  report.classical_capacity_bound = 2.0;
  report.erasure_private_capacity = 0.0;
  report.joint_coherent_info = sum / static_cast<double>(instances);
  report.spread = hi - lo;
  report.violation_ratio =
      report.joint_coherent_info /
      std::log2(static_cast<double>(report.input_dim));
  report.instances = instances;
  report.notes = {
      "erasure component alone: private capacity 0 (analytic input, "
      "assumed; not verified by this suite)",
      "coupling component alone: classical capacity bounded by 2 bits per "
      "use (analytic input; the sampled Holevo suite supports it but does "
      "not compute a capacity)",
      "joint coherent information measured on sampled instances; it lower "
      "bounds the private rate of the combined channel"};
  return report;
}

}  // namespace phaselab
