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
#include <vector>

#include "phaselab/qstate.hpp"

namespace phaselab {

/// Symmetric/antisymmetric projectors on C^d x C^d:
/// sym = (I + F)/2 with rank d(d+1)/2, antisym = (I - F)/2 with rank
/// d(d-1)/2, F the swap.
struct SectorProjectors {
  Index d;
  Matrix sym;
  Matrix antisym;
  Index rank_sym;
  Index rank_antisym;
};

SectorProjectors sector_projectors(Index d);

/// Sector rank: d(d+1)/2 for sector 0 (symmetric), d(d-1)/2 for sector 1.
double sector_rank(Index d, int sector);

/// Per-copy trace factor of the doubled-up expectation: the trace of
/// (sector projector pair) x (coupling conjugation of the output swap),
/// as a function of the output sector s_out and environment sector s_env.
/// Closed form: ( d^3 + (-1)^{s_env} d^2 + (-1)^{s_out} d^3
///              + (-1)^{s_out + s_env} d^3 ) / 4.
/// The only negative value is at (s_out, s_env) = (1, 0); the maximum
/// magnitude d^2 (3d + 1)/4 is attained at (0, 0).
double per_copy_trace_term(Index d, int output_sector, int env_sector);

/// Same quantity as an O(d^4) sum over computational indices. Oracle for
/// the closed form; throws if the accumulated imaginary part is not
/// numerically zero.
double per_copy_trace_term_bruteforce(Index d, int output_sector,
                                      int env_sector);

/// Magnitude bound d^2 (3d + 1) / 4 on the per-copy trace factor.
double per_copy_trace_bound(Index d);

/// Sector assignment, one bit per copy: 0 = symmetric, 1 = antisymmetric.
struct SectorLabel {
  std::vector<int> output_bits;
  std::vector<int> env_bits;
};

/// Weights of an input state over the joint sector labels of the doubled
/// input legs. weights[code] with bit 2l of code the output sector and
/// bit 2l+1 the environment sector of copy l. Nonnegative, sum to 1.
struct TwirlDecomposition {
  Index d = 0;
  int copies = 0;
  std::vector<double> weights;

  static std::size_t code(const SectorLabel& label);
  double weight(const SectorLabel& label) const;
};

/// Sector weights of `input` (layout (d,d)^copies), computed from signed
/// combinations of subset purities; copies <= 2.
TwirlDecomposition alpha_coefficients(const PureState& input, Index d,
                                      int copies);

/// Exact expectation of the output purity over independent uniform pairs,
/// one (U, V) pair per copy: sum over sector labels of
/// weight * prod_l per_copy_trace_term / (rank_out * rank_env).
double expected_purity_exact(const PureState& input, Index d, int copies);

/// ((3d + 1)/(d - 1)^2)^copies. Nontrivial (below 1) only for d >= 6.
double purity_upper_bound(Index d, int copies);

struct BoundReport {
  Index d = 0;
  int copies = 0;
  /// Input-specific exact expectation; filled by callers that have one.
  std::optional<double> expected_purity;
  double purity_bound = 0.0;
  /// copies * log2((d-1)^2 / (3d+1)) bits; equals -log2(purity_bound).
  double entropy_lower_bound = 0.0;
  /// copies * (log2 d - 2) bits; meaningful for d >= 9.
  double log_gap_bound = 0.0;
  bool bound_nontrivial = false;  // d >= 6
  bool log_gap_valid = false;     // d >= 9
};

BoundReport entropy_bound_report(Index d, int copies);

}  // namespace phaselab
