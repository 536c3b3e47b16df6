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
#include <vector>

#include "phaselab/phasechannel.hpp"
#include "phaselab/qstate.hpp"
#include "phaselab/rng.hpp"

namespace phaselab {

/// Discrete input ensemble: probabilities and matching pure states over a
/// shared layout. At most 256 members.
struct Ensemble {
  std::vector<double> probabilities;
  std::vector<PureState> states;

  Ensemble(std::vector<double> probs, std::vector<PureState> members);
  std::size_t size() const { return states.size(); }
};

Ensemble uniform_ensemble(std::vector<PureState> members);

/// Monte Carlo estimate with provenance. The interval convention is
/// mean +- k * std_error with k chosen by the caller.
struct EstimateCI {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
};

/// Mean and standard error of a sample set, summed in index order with
/// Kahan compensation so the result is independent of the worker count.
EstimateCI estimate_from_samples(std::span<const double> values,
                                 std::uint64_t seed, std::uint64_t stream_id);

/// chi = S(sum_i p_i rho_i) - sum_i p_i S(rho_i), in bits. Nonnegative.
double holevo_chi(const std::vector<DensityMatrix>& outputs,
                  const std::vector<double>& probabilities);

/// Mean Holevo information of the instance-averaged outputs over sampled
/// instance tuples. Sample s uses base.substream(s); the ensemble lives on
/// (d,d)^copies and runs through `copies` instances per sample.
EstimateCI avg_holevo(Index d, int copies, const Ensemble& ensemble,
                      int samples, const RandomStream& base,
                      const SamplerConfig& config, int threads = 1);
EstimateCI avg_holevo(Index d, int copies, const Ensemble& ensemble,
                      int samples, const RandomStream& base);

/// S(output part) - S(joint state) in bits, with the reference marked by
/// slot indices. The reference must be a nonempty proper subset.
double coherent_information(const DensityMatrix& joint,
                            std::span<const std::size_t> reference_slots);

struct OutputEntropyStats {
  EstimateCI entropy;  // von Neumann, bits
  EstimateCI renyi2;   // -log2 purity, bits
  EstimateCI purity;
};

/// Entropy statistics of the channel output for a fixed input state over
/// sampled instance tuples. Jensen's inequality chains the three means:
/// mean entropy >= mean renyi2 >= -log2(mean purity).
OutputEntropyStats avg_output_entropy(Index d, int copies,
                                      const PureState& input, int samples,
                                      const RandomStream& base,
                                      const SamplerConfig& config,
                                      int threads = 1);
OutputEntropyStats avg_output_entropy(Index d, int copies,
                                      const PureState& input, int samples,
                                      const RandomStream& base);

/// Product of independent Haar-random pure slot states.
PureState random_product_state(Index d, std::size_t slots,
                               RandomStream& stream);
/// Haar-random pure state over the whole layout.
PureState random_full_state(const SubsystemLayout& layout,
                            RandomStream& stream);

struct ProbeResult {
  PureState best_input;
  EstimateCI entropy;
};

/// Random-restart search for a product input with low mean output entropy.
/// Deterministic in (seed, stream); iterations = number of random
/// candidates tried beyond the all-zeros start.
ProbeResult min_entropy_probe(Index d, int copies, int iterations,
                              const RandomStream& base);

}  // namespace phaselab
