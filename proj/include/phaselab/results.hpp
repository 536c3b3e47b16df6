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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "phaselab/core.hpp"

namespace phaselab {

inline constexpr std::string_view kSchemaVersion = "phaselab-results-v1";

struct RunConfig {
  Index d = 9;
  int copies = 1;
  int samples = 400;
  int instances = 20;
  std::uint64_t seed = 1;
  std::string ensemble = "haar";  // haar | clifford
  int threads = 1;
  std::string format = "csv";  // csv | json
  std::string output_path;     // empty -> stdout
  std::string transcript_path;
};

/// One output row. The column set is frozen:
/// experiment,d,n,samples,seed,value,stderr,bound,pass.
struct ResultRow {
  std::string experiment;
  Index d = 0;
  int copies = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  double value = 0.0;
  std::optional<double> std_error;
  std::optional<double> bound;
  std::string pass;  // pass | fail | vacuous(d<6) | info
};

struct RunOutput {
  std::vector<ResultRow> rows;
  std::string transcript_text;  // nonempty only for protocol runs
};

/// Exact and sampled output-purity/entropy bounds for canonical inputs.
RunOutput run_bounds(const RunConfig& config);
/// Joint coherent information with the 1/2-erasure over sampled instances.
RunOutput run_joint(const RunConfig& config);
/// Sampled Holevo information of structured and random input families.
RunOutput run_holevo(const RunConfig& config);
/// Sender-corrected classical protocol, exhaustive over messages.
RunOutput run_backassist(const RunConfig& config);
/// Clifford group order and exact twirl comparison.
RunOutput run_design(const RunConfig& config);

/// Shortest round-trip decimal form, locale-independent.
std::string format_double(double value);

std::string to_csv(std::span<const ResultRow> rows);
std::string to_json(std::span<const ResultRow> rows);

/// True when no row has pass == "fail".
bool all_rows_pass(std::span<const ResultRow> rows);

}  // namespace phaselab
