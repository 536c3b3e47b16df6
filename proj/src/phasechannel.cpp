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

#include "phaselab/phasechannel.hpp"

#include <cmath>
#include <stdexcept>

namespace phaselab {

namespace {

// Embedded-matrix fallback for mixed inputs; pure inputs never hit this.
constexpr Index kMaxEmbedDim = 4096;

void check_pair(const SubsystemLayout& layout, Index d, std::size_t a1,
                std::size_t a2) {
  if (a1 == a2)
    throw std::invalid_argument("phaselab: channel legs must be distinct");
  if (a1 >= layout.slots() || a2 >= layout.slots())
    throw std::invalid_argument("phaselab: channel slot out of range");
  if (layout.dim(a1) != d || layout.dim(a2) != d)
    throw std::invalid_argument(
        "phaselab: channel legs must both have the instance dimension");
}

void check_limits(Index d, int copies) {
  if (d < 2 || d > 16)
    throw std::invalid_argument("phaselab: channel supports 2 <= d <= 16");
  if (copies < 1 || copies > 3)
    throw std::invalid_argument("phaselab: channel supports 1 <= copies <= 3");
}

}  // namespace

PhaseGate controlled_phase(Index d) {
  if (d < 1)
    throw std::invalid_argument("phaselab: controlled_phase needs d >= 1");
  Matrix p = Matrix::Zero(d * d, d * d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) {
      const double ang = 2.0 * kPi * static_cast<double>((i * j) % d) /
                         static_cast<double>(d);
      p(i * d + j, i * d + j) = Complex(std::cos(ang), std::sin(ang));
    }
  return PhaseGate{d, std::move(p)};
}

UnitaryMatrix channel_isometry(const ChannelInstance& inst) {
  if (inst.u.dim() != inst.d || inst.v.dim() != inst.d)
    throw std::invalid_argument(
        "phaselab: instance unitaries must match the instance dimension");
  const PhaseGate p = controlled_phase(inst.d);
  return UnitaryMatrix(p.matrix * tensor(inst.u.entries, inst.v.entries));
}

DensityMatrix apply_instance(const ChannelInstance& inst,
                             const PureState& input, std::size_t a1,
                             std::size_t a2) {
  check_pair(input.layout, inst.d, a1, a2);
  const UnitaryMatrix w = channel_isometry(inst);
  const std::size_t slots[] = {a1, a2};
  const PureState evolved = apply_to_slots(w, input, slots);

  std::vector<std::size_t> keep;
  for (std::size_t s = 0; s < input.layout.slots(); ++s)
    if (s != a2) keep.push_back(s);
  return reduced_state(evolved, keep);
}

DensityMatrix apply_instance(const ChannelInstance& inst,
                             const DensityMatrix& input, std::size_t a1,
                             std::size_t a2) {
  check_pair(input.layout, inst.d, a1, a2);
  if (input.layout.total_dim() > kMaxEmbedDim)
    throw std::invalid_argument(
        "phaselab: mixed-state channel application exceeds the embed limit; "
        "use the pure-state path");
  const UnitaryMatrix w = channel_isometry(inst);
  const std::size_t slots[] = {a1, a2};
  const Matrix full = embed_operator(w.entries, slots, input.layout);
  Matrix evolved = full * input.entries * full.adjoint();
  evolved = 0.5 * (evolved + evolved.adjoint()).eval();
  const DensityMatrix rho(std::move(evolved), input.layout);

  std::vector<std::size_t> keep;
  for (std::size_t s = 0; s < input.layout.slots(); ++s)
    if (s != a2) keep.push_back(s);
  return partial_trace(rho, keep);
}

PreparedInstances::PreparedInstances(
    std::span<const ChannelInstance> instances, const SubsystemLayout& layout,
    std::span<const std::pair<std::size_t, std::size_t>> pairs)
    : pairs_(pairs.begin(), pairs.end()), layout_(layout) {
  if (instances.size() != pairs.size())
    throw std::invalid_argument("phaselab: one slot pair per instance");
  if (instances.empty())
    throw std::invalid_argument("phaselab: no instances to apply");

  std::vector<bool> used(layout.slots(), false);
  for (const auto& [a1, a2] : pairs_) {
    check_pair(layout, instances[0].d, a1, a2);
    if (used[a1] || used[a2])
      throw std::invalid_argument("phaselab: instance slot pairs overlap");
    used[a1] = used[a2] = true;
  }

  isometries_.reserve(instances.size());
  for (const ChannelInstance& inst : instances)
    isometries_.push_back(channel_isometry(inst));

  std::vector<bool> env(layout.slots(), false);
  for (const auto& [a1, a2] : pairs_) env[a2] = true;
  for (std::size_t s = 0; s < layout.slots(); ++s)
    if (!env[s]) keep_.push_back(s);
}

DensityMatrix PreparedInstances::apply(const PureState& input) const {
  if (input.layout.dims() != layout_.dims())
    throw std::invalid_argument(
        "phaselab: input layout does not match the prepared layout");
  PureState state = input;
  for (std::size_t l = 0; l < isometries_.size(); ++l) {
    const std::size_t slots[] = {pairs_[l].first, pairs_[l].second};
    state = apply_to_slots(isometries_[l], state, slots);
  }
  return reduced_state(state, keep_);
}

DensityMatrix apply_instances(
    std::span<const ChannelInstance> instances, const PureState& input,
    std::span<const std::pair<std::size_t, std::size_t>> pairs) {
  return PreparedInstances(instances, input.layout, pairs).apply(input);
}

BranchedOutput apply_erasure(const ErasureChannel& channel,
                             const DensityMatrix& input, std::size_t slot) {
  if (slot >= input.layout.slots())
    throw std::invalid_argument("phaselab: erasure slot out of range");
  if (input.layout.dim(slot) != channel.d)
    throw std::invalid_argument("phaselab: erasure slot dimension mismatch");

  const Index d = channel.d;
  Matrix flag = Matrix::Zero(d + 1, d + 1);
  flag(d, d) = 1.0;
  const DensityMatrix flag_dm(std::move(flag), SubsystemLayout({d + 1}));

  DensityMatrix erased = [&] {
    if (input.layout.slots() == 1) return flag_dm;
    std::vector<std::size_t> rest;
    for (std::size_t s = 0; s < input.layout.slots(); ++s)
      if (s != slot) rest.push_back(s);
    const DensityMatrix joined = tensor(partial_trace(input, rest), flag_dm);
    // Tensored order is (rest..., flag); rebuild the original slot order.
    std::vector<std::size_t> perm;
    std::size_t rest_pos = 0;
    for (std::size_t s = 0; s < input.layout.slots(); ++s)
      perm.push_back(s == slot ? rest.size() : rest_pos++);
    return permute_subsystems(joined, perm);
  }();

  BranchedOutput out;
  out.branches.push_back({ErasureChannel::probability, "kept", input});
  out.branches.push_back({ErasureChannel::probability, "erased",
                          std::move(erased)});
  return out;
}

std::vector<ChannelInstance> sample_channel(Index d, int copies,
                                            const RandomStream& base,
                                            const SamplerConfig& config) {
  check_limits(d, copies);
  if (config.u_ensemble.dim() != d || config.v_ensemble.dim() != d)
    throw std::invalid_argument("phaselab: sampler ensembles must match d");

  std::vector<ChannelInstance> out;
  out.reserve(static_cast<std::size_t>(copies));
  for (int l = 0; l < copies; ++l) {
    RandomStream su = base.substream(2 * static_cast<std::uint64_t>(l));
    RandomStream sv = base.substream(2 * static_cast<std::uint64_t>(l) + 1);
    UnitaryMatrix u = sample_from(config.u_ensemble, su);
    UnitaryMatrix v = sample_from(config.v_ensemble, sv);
    std::string prov = std::string(RandomStream::algorithm) +
                       " seed=" + std::to_string(base.seed()) +
                       " stream=" + std::to_string(base.stream_id()) +
                       " copy=" + std::to_string(l);
    out.push_back({d, std::move(u), std::move(v), std::move(prov)});
  }
  return out;
}

std::vector<ChannelInstance> sample_channel(Index d, int copies,
                                            const RandomStream& base) {
  return sample_channel(d, copies, base, SamplerConfig::haar(d));
}

}  // namespace phaselab
