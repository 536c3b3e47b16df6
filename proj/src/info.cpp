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

#include "phaselab/info.hpp"

#include <cmath>
#include <stdexcept>

#include "phaselab/parallel.hpp"

namespace phaselab {

namespace {

constexpr std::size_t kMaxEnsembleMembers = 256;
constexpr int kProbeSamplesPerCandidate = 32;

struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

std::vector<std::pair<std::size_t, std::size_t>> leg_pairs(int copies) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (int l = 0; l < copies; ++l)
    pairs.emplace_back(2 * static_cast<std::size_t>(l),
                       2 * static_cast<std::size_t>(l) + 1);
  return pairs;
}

void check_sampling(int copies, int samples) {
  if (copies < 1 || copies > 3)
    throw std::invalid_argument("phaselab: 1 <= copies <= 3");
  if (samples < 2)
    throw std::invalid_argument("phaselab: need at least 2 samples");
}

}  // namespace

PureState random_product_state(Index d, std::size_t slots,
                               RandomStream& stream) {
  if (slots == 0)
    throw std::invalid_argument("phaselab: product state needs slots >= 1");
  Vector v = Vector::Ones(1);
  for (std::size_t s = 0; s < slots; ++s) {
    Vector part(d);
    for (Index i = 0; i < d; ++i) part[i] = stream.next_complex_gaussian();
    part /= part.norm();
    v = tensor(v, part);
  }
  return PureState(std::move(v), SubsystemLayout::uniform(d, slots));
}

PureState random_full_state(const SubsystemLayout& layout,
                            RandomStream& stream) {
  Vector v(layout.total_dim());
  for (Index i = 0; i < v.size(); ++i) v[i] = stream.next_complex_gaussian();
  v /= v.norm();
  return PureState(std::move(v), layout);
}

Ensemble::Ensemble(std::vector<double> probs, std::vector<PureState> members)
    : probabilities(std::move(probs)), states(std::move(members)) {
  if (states.empty())
    throw std::invalid_argument("phaselab: ensemble has no members");
  if (states.size() > kMaxEnsembleMembers)
    throw std::invalid_argument("phaselab: ensemble exceeds 256 members");
  if (probabilities.size() != states.size())
    throw std::invalid_argument("phaselab: one probability per member");
  double total = 0.0;
  for (double p : probabilities) {
    if (p < 0.0)
      throw std::invalid_argument("phaselab: negative ensemble probability");
    total += p;
  }
  if (std::abs(total - 1.0) > kValidationTol)
    throw std::invalid_argument("phaselab: ensemble probabilities must sum to 1");
  for (const auto& s : states)
    if (!(s.layout == states.front().layout))
      throw std::invalid_argument("phaselab: ensemble members share one layout");
}

Ensemble uniform_ensemble(std::vector<PureState> members) {
  const std::size_t count = members.size();
  std::vector<double> probs(count, 1.0 / static_cast<double>(count));
  return Ensemble(std::move(probs), std::move(members));
}

EstimateCI estimate_from_samples(std::span<const double> values,
                                 std::uint64_t seed, std::uint64_t stream_id) {
  if (values.size() < 2)
    throw std::invalid_argument("phaselab: need at least 2 samples");
  KahanSum mean_sum;
  for (double v : values) mean_sum.add(v);
  const double n = static_cast<double>(values.size());
  const double mean = mean_sum.sum / n;

  KahanSum var_sum;
  for (double v : values) var_sum.add((v - mean) * (v - mean));
  const double variance = var_sum.sum / (n - 1.0);
  return EstimateCI{mean, std::sqrt(std::max(variance, 0.0) / n),
                    values.size(), seed, stream_id};
}

double holevo_chi(const std::vector<DensityMatrix>& outputs,
                  const std::vector<double>& probabilities) {
  if (outputs.empty())
    throw std::invalid_argument("phaselab: holevo_chi needs outputs");
  if (outputs.size() != probabilities.size())
    throw std::invalid_argument("phaselab: one probability per output");
  double total = 0.0;
  for (double p : probabilities) {
    if (p < 0.0) throw std::invalid_argument("phaselab: negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > kValidationTol)
    throw std::invalid_argument("phaselab: probabilities must sum to 1");

  Matrix avg = Matrix::Zero(outputs[0].dim(), outputs[0].dim());
  double conditional = 0.0;
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    if (!(outputs[i].layout == outputs[0].layout))
      throw std::invalid_argument("phaselab: holevo outputs share one layout");
    avg += probabilities[i] * outputs[i].entries;
    if (probabilities[i] > 0.0)
      conditional += probabilities[i] * von_neumann_entropy(outputs[i]);
  }
  const double chi =
      von_neumann_entropy(DensityMatrix(std::move(avg), outputs[0].layout)) -
      conditional;
  if (chi < -1e-9)
    throw std::logic_error("phaselab: negative Holevo information");
  return std::max(chi, 0.0);
}

EstimateCI avg_holevo(Index d, int copies, const Ensemble& ensemble,
                      int samples, const RandomStream& base,
                      const SamplerConfig& config, int threads) {
  check_sampling(copies, samples);
  const SubsystemLayout expected =
      SubsystemLayout::uniform(d, 2 * static_cast<std::size_t>(copies));
  if (!(ensemble.states.front().layout == expected))
    throw std::invalid_argument(
        "phaselab: ensemble layout must be (d,d) per copy");

  const auto pairs = leg_pairs(copies);
  std::vector<double> chis(static_cast<std::size_t>(samples), 0.0);
  parallel_for(chis.size(), threads, [&](std::size_t s) {
    RandomStream stream = base.substream(s);
    const auto instances = sample_channel(d, copies, stream, config);
    const PreparedInstances prepared(instances, expected, pairs);
    std::vector<DensityMatrix> outputs;
    outputs.reserve(ensemble.size());
    for (const auto& member : ensemble.states)
      outputs.push_back(prepared.apply(member));
    chis[s] = holevo_chi(outputs, ensemble.probabilities);
  });
  return estimate_from_samples(chis, base.seed(), base.stream_id());
}

EstimateCI avg_holevo(Index d, int copies, const Ensemble& ensemble,
                      int samples, const RandomStream& base) {
  return avg_holevo(d, copies, ensemble, samples, base,
                    SamplerConfig::haar(d));
}

double coherent_information(const DensityMatrix& joint,
                            std::span<const std::size_t> reference_slots) {
  if (reference_slots.empty())
    throw std::invalid_argument(
        "phaselab: coherent information needs a marked reference");
  std::vector<bool> is_ref(joint.layout.slots(), false);
  for (auto s : reference_slots) {
    if (s >= joint.layout.slots())
      throw std::invalid_argument("phaselab: reference slot out of range");
    if (is_ref[s])
      throw std::invalid_argument("phaselab: repeated reference slot");
    is_ref[s] = true;
  }
  std::vector<std::size_t> output;
  for (std::size_t s = 0; s < joint.layout.slots(); ++s)
    if (!is_ref[s]) output.push_back(s);
  if (output.empty())
    throw std::invalid_argument(
        "phaselab: reference cannot cover the whole layout");

  return von_neumann_entropy(partial_trace(joint, output)) -
         von_neumann_entropy(joint);
}

OutputEntropyStats avg_output_entropy(Index d, int copies,
                                      const PureState& input, int samples,
                                      const RandomStream& base,
                                      const SamplerConfig& config,
                                      int threads) {
  check_sampling(copies, samples);
  const SubsystemLayout expected =
      SubsystemLayout::uniform(d, 2 * static_cast<std::size_t>(copies));
  if (!(input.layout == expected))
    throw std::invalid_argument(
        "phaselab: input layout must be (d,d) per copy");

  const auto pairs = leg_pairs(copies);
  const std::size_t n = static_cast<std::size_t>(samples);
  std::vector<double> entropies(n, 0.0), renyis(n, 0.0), purities(n, 0.0);
  parallel_for(n, threads, [&](std::size_t s) {
    RandomStream stream = base.substream(s);
    const auto instances = sample_channel(d, copies, stream, config);
    const DensityMatrix out = apply_instances(instances, input, pairs);
    const double p = purity(out);
    entropies[s] = von_neumann_entropy(out);
    renyis[s] = -std::log2(p);
    purities[s] = p;
  });
  return OutputEntropyStats{
      estimate_from_samples(entropies, base.seed(), base.stream_id()),
      estimate_from_samples(renyis, base.seed(), base.stream_id()),
      estimate_from_samples(purities, base.seed(), base.stream_id())};
}

OutputEntropyStats avg_output_entropy(Index d, int copies,
                                      const PureState& input, int samples,
                                      const RandomStream& base) {
  return avg_output_entropy(d, copies, input, samples, base,
                            SamplerConfig::haar(d));
}

ProbeResult min_entropy_probe(Index d, int copies, int iterations,
                              const RandomStream& base) {
  if (iterations < 0)
    throw std::invalid_argument("phaselab: iterations must be >= 0");
  const std::size_t nslots = 2 * static_cast<std::size_t>(copies);
  const SubsystemLayout layout = SubsystemLayout::uniform(d, nslots);

  const std::vector<Index> zeros(nslots, 0);
  PureState best = basis_state(layout, zeros);
  EstimateCI best_ci =
      avg_output_entropy(d, copies, best, kProbeSamplesPerCandidate,
                         base.substream(0))
          .entropy;

  for (int it = 1; it <= iterations; ++it) {
    RandomStream cand_stream =
        base.substream(10000 + static_cast<std::uint64_t>(it));
    PureState candidate = random_product_state(d, nslots, cand_stream);
    const EstimateCI ci =
        avg_output_entropy(d, copies, candidate, kProbeSamplesPerCandidate,
                           base.substream(static_cast<std::uint64_t>(it)))
            .entropy;
    if (ci.mean < best_ci.mean) {
      best = std::move(candidate);
      best_ci = ci;
    }
  }
  return ProbeResult{std::move(best), best_ci};
}

}  // namespace phaselab
