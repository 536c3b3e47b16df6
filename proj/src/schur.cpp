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

#include "phaselab/schur.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace phaselab {

namespace {

void check_sector(int sector) {
  if (sector != 0 && sector != 1)
    throw std::invalid_argument("phaselab: sector must be 0 or 1");
}

void check_copies(int copies) {
  if (copies < 1 || copies > 2)
    throw std::invalid_argument(
        "phaselab: exact sector decomposition supports 1 or 2 copies");
}

double sign(int bit) { return bit ? -1.0 : 1.0; }

}  // namespace

SectorProjectors sector_projectors(Index d) {
  if (d < 2)
    throw std::invalid_argument("phaselab: sector_projectors needs d >= 2");
  const Matrix f = swap_operator(d).entries;
  const Matrix id = Matrix::Identity(d * d, d * d);
  return SectorProjectors{d, 0.5 * (id + f), 0.5 * (id - f),
                          d * (d + 1) / 2, d * (d - 1) / 2};
}

double sector_rank(Index d, int sector) {
  check_sector(sector);
  return 0.5 * static_cast<double>(d) *
         static_cast<double>(sector == 0 ? d + 1 : d - 1);
}

double per_copy_trace_term(Index d, int output_sector, int env_sector) {
  if (d < 2)
    throw std::invalid_argument("phaselab: per-copy trace term needs d >= 2");
  check_sector(output_sector);
  check_sector(env_sector);
  const double d2 = static_cast<double>(d) * static_cast<double>(d);
  const double d3 = d2 * static_cast<double>(d);
  return 0.25 * (d3 + sign(env_sector) * d2 + sign(output_sector) * d3 +
                 sign(output_sector) * sign(env_sector) * d3);
}

double per_copy_trace_term_bruteforce(Index d, int output_sector,
                                      int env_sector) {
  if (d < 2)
    throw std::invalid_argument("phaselab: per-copy trace term needs d >= 2");
  check_sector(output_sector);
  check_sector(env_sector);

  // Doubled systems (out, env, out', env'). The coupling conjugation of
  // the output swap sends |i j k l> to w^{(k-i)(j-l)} |k j i l>, so the
  // diagonal matrix element against the projector pair is
  // (delta_{ik} + s_out)/2 * (1 + s_env delta_{jl})/2.
  const double so = sign(output_sector);
  const double se = sign(env_sector);
  Complex acc = 0.0;
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j)
      for (Index k = 0; k < d; ++k)
        for (Index l = 0; l < d; ++l) {
          const Index phase = ((k - i) * (j - l) % d + d * d) % d;
          const double ang =
              2.0 * kPi * static_cast<double>(phase) / static_cast<double>(d);
          const Complex w(std::cos(ang), std::sin(ang));
          const double proj_out = (i == k ? 1.0 : 0.0) + so;
          const double proj_env = 1.0 + se * (j == l ? 1.0 : 0.0);
          acc += 0.25 * w * proj_out * proj_env;
        }

  const double scale = static_cast<double>(d) * static_cast<double>(d) *
                       static_cast<double>(d);
  if (std::abs(acc.imag()) > 1e-9 * scale)
    throw std::logic_error(
        "phaselab: per-copy trace sum has a nonzero imaginary part");
  return acc.real();
}

double per_copy_trace_bound(Index d) {
  if (d < 2)
    throw std::invalid_argument("phaselab: per-copy trace bound needs d >= 2");
  const double dd = static_cast<double>(d);
  return 0.25 * dd * dd * (3.0 * dd + 1.0);
}

std::size_t TwirlDecomposition::code(const SectorLabel& label) {
  if (label.output_bits.size() != label.env_bits.size())
    throw std::invalid_argument("phaselab: sector label size mismatch");
  std::size_t c = 0;
  for (std::size_t l = 0; l < label.output_bits.size(); ++l) {
    check_sector(label.output_bits[l]);
    check_sector(label.env_bits[l]);
    if (label.output_bits[l]) c |= std::size_t{1} << (2 * l);
    if (label.env_bits[l]) c |= std::size_t{1} << (2 * l + 1);
  }
  return c;
}

double TwirlDecomposition::weight(const SectorLabel& label) const {
  if (label.output_bits.size() != static_cast<std::size_t>(copies))
    throw std::invalid_argument("phaselab: sector label copy count mismatch");
  return weights.at(code(label));
}

TwirlDecomposition alpha_coefficients(const PureState& input, Index d,
                                      int copies) {
  check_copies(copies);
  if (d < 2)
    throw std::invalid_argument("phaselab: sector weights need d >= 2");
  const std::size_t nslots = 2 * static_cast<std::size_t>(copies);
  if (input.layout != SubsystemLayout::uniform(d, nslots))
    throw std::invalid_argument(
        "phaselab: input layout must be (d,d) per copy");

  // Subset purities. Purity of a subset equals the purity of its
  // complement for a pure state; evaluating the smaller side keeps the
  // reduction cheap.
  const std::size_t full = (std::size_t{1} << nslots) - 1;
  std::vector<double> sub_purity(full + 1, 1.0);
  for (std::size_t mask = 1; mask < full; ++mask) {
    const std::size_t eval_mask =
        std::popcount(mask) * 2 > static_cast<int>(nslots) ? (full & ~mask)
                                                           : mask;
    std::vector<std::size_t> keep;
    for (std::size_t s = 0; s < nslots; ++s)
      if (eval_mask & (std::size_t{1} << s)) keep.push_back(s);
    sub_purity[mask] = purity(reduced_state(input, keep));
  }

  // weights[L] = 4^{-copies} sum_T (-1)^{|T & L|} purity(T): the label bit
  // of slot p lines up with bit p of the subset mask.
  const std::size_t ncodes = std::size_t{1} << nslots;
  TwirlDecomposition out;
  out.d = d;
  out.copies = copies;
  out.weights.assign(ncodes, 0.0);
  const double norm = 1.0 / static_cast<double>(ncodes);
  double total = 0.0;
  for (std::size_t code = 0; code < ncodes; ++code) {
    double acc = 0.0;
    for (std::size_t mask = 0; mask <= full; ++mask) {
      const double s = (std::popcount(mask & code) % 2) ? -1.0 : 1.0;
      acc += s * sub_purity[mask];
    }
    acc *= norm;
    if (acc < -1e-9)
      throw std::logic_error("phaselab: negative sector weight");
    out.weights[code] = std::max(acc, 0.0);
    total += out.weights[code];
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::logic_error("phaselab: sector weights do not sum to 1");
  return out;
}

double expected_purity_exact(const PureState& input, Index d, int copies) {
  const TwirlDecomposition dec = alpha_coefficients(input, d, copies);
  double factor[2][2];
  for (int so = 0; so < 2; ++so)
    for (int se = 0; se < 2; ++se)
      factor[so][se] = per_copy_trace_term(d, so, se) /
                       (sector_rank(d, so) * sector_rank(d, se));

  double acc = 0.0;
  for (std::size_t code = 0; code < dec.weights.size(); ++code) {
    if (dec.weights[code] == 0.0) continue;
    double prod = 1.0;
    for (int l = 0; l < copies; ++l) {
      const int so = (code >> (2 * l)) & 1;
      const int se = (code >> (2 * l + 1)) & 1;
      prod *= factor[so][se];
    }
    acc += dec.weights[code] * prod;
  }
  return acc;
}

double purity_upper_bound(Index d, int copies) {
  if (d < 2)
    throw std::invalid_argument("phaselab: purity bound needs d >= 2");
  if (copies < 1)
    throw std::invalid_argument("phaselab: purity bound needs copies >= 1");
  const double dd = static_cast<double>(d);
  const double per_copy = (3.0 * dd + 1.0) / ((dd - 1.0) * (dd - 1.0));
  return std::pow(per_copy, copies);
}

BoundReport entropy_bound_report(Index d, int copies) {
  BoundReport report;
  report.d = d;
  report.copies = copies;
  report.purity_bound = purity_upper_bound(d, copies);
  report.entropy_lower_bound = -std::log2(report.purity_bound);
  report.log_gap_bound =
      static_cast<double>(copies) * (std::log2(static_cast<double>(d)) - 2.0);
  report.bound_nontrivial = d >= 6;
  report.log_gap_valid = d >= 9;
  return report;
}

}  // namespace phaselab
