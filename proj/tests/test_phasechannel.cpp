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
#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include <doctest.h>

#include "phaselab/ensembles.hpp"
#include "phaselab/qstate.hpp"
#include "phaselab/rng.hpp"

namespace phaselab {
namespace {

ChannelInstance identity_instance(Index d) {
  return ChannelInstance{d, UnitaryMatrix(Matrix::Identity(d, d)),
                         UnitaryMatrix(Matrix::Identity(d, d)), "explicit"};
}

const ErasureBranch& branch_named(const BranchedOutput& out,
                                  const std::string& label) {
  for (const auto& b : out.branches)
    if (b.label == label) return b;
  throw std::logic_error("missing branch " + label);
}

TEST_CASE("the coupling gate is diagonal with unit-root entries") {
  const PhaseGate g1 = controlled_phase(1);
  REQUIRE(g1.matrix.rows() == 1);
  CHECK(std::abs(g1.matrix(0, 0) - 1.0) < 1e-15);

  const PhaseGate g2 = controlled_phase(2);
  Matrix expected = Matrix::Identity(4, 4);
  expected(3, 3) = -1.0;
  CHECK((g2.matrix - expected).norm() < 1e-14);

  const PhaseGate g3 = controlled_phase(3);
  const Complex omega = std::exp(Complex(0.0, 2.0 * kPi / 3.0));
  CHECK(std::abs(g3.matrix(1 * 3 + 1, 1 * 3 + 1) - omega) < 1e-14);
  Matrix off = g3.matrix;
  off.diagonal().setZero();
  CHECK(off.norm() == 0.0);
}

TEST_CASE("the identity instance isometry reduces to the coupling gate") {
  const UnitaryMatrix w = channel_isometry(identity_instance(2));
  Matrix expected = Matrix::Identity(4, 4);
  expected(3, 3) = -1.0;
  CHECK((w.entries - expected).norm() < 1e-14);
}

TEST_CASE("instance isometries are unitary across dimensions") {
  RandomStream stream(41, 0);
  for (Index d = 2; d <= 9; ++d) {
    RandomStream sub = stream.substream(d);
    const auto instances = sample_channel(d, 1, sub);
    const UnitaryMatrix w = channel_isometry(instances[0]);
    CHECK((w.entries * w.entries.adjoint() -
           Matrix::Identity(d * d, d * d))
              .norm() < 1e-12);
  }
}

TEST_CASE("the zero-index row passes through the identity instance") {
  const SubsystemLayout layout = SubsystemLayout::uniform(2, 2);
  const Index digits[] = {0, 0};
  const PureState zerozero = basis_state(layout, digits);
  const UnitaryMatrix w = channel_isometry(identity_instance(2));
  const std::size_t slots[] = {0, 1};
  const PureState out = apply_to_slots(w, zerozero, slots);
  CHECK((out.amplitudes - zerozero.amplitudes).norm() < 1e-14);
}

TEST_CASE("basis inputs exit the identity instance unchanged") {
  const Index d = 3;
  const SubsystemLayout layout = SubsystemLayout::uniform(d, 2);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) {
      const Index digits[] = {i, j};
      const DensityMatrix out =
          apply_instance(identity_instance(d), basis_state(layout, digits));
      Matrix expected = Matrix::Zero(d, d);
      expected(i, i) = 1.0;
      CHECK((out.entries - expected).norm() < 1e-12);
    }
}

TEST_CASE("a mixed second leg fully dephases the first") {
  // Direct 4x4 evaluation: rho_out = Tr_E [ P (|+><+| x I/2) P^dagger ].
  const Index d = 2;
  Vector plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const Matrix plus_proj = plus * plus.adjoint();
  const Matrix mixed = Matrix::Identity(2, 2) / 2.0;
  const DensityMatrix input(tensor(plus_proj, mixed),
                            SubsystemLayout::uniform(d, 2));

  const DensityMatrix out = apply_instance(identity_instance(d), input);
  Matrix expected = Matrix::Zero(2, 2);
  expected(0, 0) = expected(1, 1) = 0.5;
  CHECK((out.entries - expected).norm() < 1e-12);

  // Same answer from explicit matrices, no library channel code involved.
  const PhaseGate p = controlled_phase(d);
  const Matrix evolved = p.matrix * input.entries * p.matrix.adjoint();
  Matrix traced = Matrix::Zero(2, 2);
  for (Index i = 0; i < 2; ++i)
    for (Index k = 0; k < 2; ++k)
      for (Index e = 0; e < 2; ++e)
        traced(i, k) += evolved(i * 2 + e, k * 2 + e);
  CHECK((out.entries - traced).norm() < 1e-12);
}

TEST_CASE("a maximally mixed first leg stays maximally mixed") {
  // Second leg entangled with a spectator reference; the channel is unital
  // on its first leg, so the kept output must still be I/d.
  const Index d = 3;
  RandomStream stream(42, 0);
  const auto instances = sample_channel(d, 1, stream);
  const DensityMatrix mixed(Matrix::Identity(d, d) / double(d),
                            SubsystemLayout({d}));
  const DensityMatrix input = tensor(mixed, to_density(max_entangled_state(d)));
  REQUIRE(input.layout.dims() == std::vector<Index>{d, d, d});

  const DensityMatrix out = apply_instance(instances[0], input, 0, 1);
  REQUIRE(out.layout.dims() == std::vector<Index>{d, d});
  const std::size_t keep_b[] = {0};
  const DensityMatrix on_b = partial_trace(out, keep_b);
  CHECK((on_b.entries - Matrix::Identity(d, d) / double(d)).norm() < 1e-10);
}

TEST_CASE("erasure splits evenly and flags the erased branch") {
  const Index d = 3;
  const DensityMatrix mixed(Matrix::Identity(d, d) / double(d),
                            SubsystemLayout({d}));
  const BranchedOutput out = apply_erasure(ErasureChannel{d}, mixed, 0);
  REQUIRE(out.branches.size() == 2);

  const ErasureBranch& kept = branch_named(out, "kept");
  CHECK(kept.probability == doctest::Approx(0.5));
  CHECK((kept.state.entries - mixed.entries).norm() < 1e-14);

  const ErasureBranch& erased = branch_named(out, "erased");
  CHECK(erased.probability == doctest::Approx(0.5));
  REQUIRE(erased.state.layout.dims() == std::vector<Index>{d + 1});
  Matrix flag = Matrix::Zero(d + 1, d + 1);
  flag(d, d) = 1.0;
  CHECK((erased.state.entries - flag).norm() < 1e-14);
}

TEST_CASE("the kept erasure branch preserves entanglement") {
  const Index d = 3;
  const DensityMatrix phi = to_density(max_entangled_state(d));
  const BranchedOutput out = apply_erasure(ErasureChannel{d}, phi, 0);

  const ErasureBranch& kept = branch_named(out, "kept");
  const std::size_t keep_ref[] = {1};
  CHECK(von_neumann_entropy(partial_trace(kept.state, keep_ref)) ==
        doctest::Approx(std::log2(3.0)).epsilon(1e-10));

  // The erased branch carries the flag times the untouched reference.
  const ErasureBranch& erased = branch_named(out, "erased");
  REQUIRE(erased.state.layout.dims() == std::vector<Index>{d + 1, d});
  Matrix flag = Matrix::Zero(d + 1, d + 1);
  flag(d, d) = 1.0;
  const Matrix expected = tensor(flag, Matrix::Identity(d, d) / double(d));
  CHECK((erased.state.entries - expected).norm() < 1e-12);
}

TEST_CASE("instance sampling is reproducible and labeled") {
  const Index d = 4;
  RandomStream a(43, 2);
  RandomStream b(43, 2);
  const auto ia = sample_channel(d, 2, a);
  const auto ib = sample_channel(d, 2, b);
  REQUIRE(ia.size() == 2);
  CHECK((ia[0].u.entries - ib[0].u.entries).norm() == 0.0);
  CHECK((ia[1].v.entries - ib[1].v.entries).norm() == 0.0);
  CHECK(ia[0].provenance.find("philox4x64-10") != std::string::npos);
  CHECK(ia[0].provenance.find("seed=") != std::string::npos);

  // Distinct copies draw from distinct substreams.
  CHECK((ia[0].u.entries - ia[1].u.entries).norm() > 1e-6);
  CHECK((ia[0].v.entries - ia[1].v.entries).norm() > 1e-6);
}

TEST_CASE("restricted ensembles sample inside the enumerated group") {
  const Index d = 2;
  const UnitaryEnsemble group = clifford_group(d);
  RandomStream stream(44, 0);
  const auto instances =
      sample_channel(d, 2, stream, SamplerConfig::from_ensemble(group));
  for (const auto& inst : instances) {
    for (const Matrix* m : {&inst.u.entries, &inst.v.entries}) {
      bool found = false;
      for (const auto& g : group.members())
        if ((*m - g.entries).norm() < 1e-12) {
          found = true;
          break;
        }
      CHECK(found);
    }
  }
}

TEST_CASE("sampling rejects out-of-range dimensions and copy counts") {
  RandomStream stream(45, 0);
  CHECK_THROWS_AS((void)sample_channel(1, 1, stream), std::invalid_argument);
  CHECK_THROWS_AS((void)sample_channel(17, 1, stream), std::invalid_argument);
  CHECK_THROWS_AS((void)sample_channel(4, 0, stream), std::invalid_argument);
  CHECK_THROWS_AS((void)sample_channel(4, 4, stream), std::invalid_argument);
}

TEST_CASE("prepared application matches the one-shot path") {
  const Index d = 3;
  RandomStream stream(46, 0);
  const auto instances = sample_channel(d, 2, stream);
  const SubsystemLayout layout = SubsystemLayout::uniform(d, 4);
  const std::pair<std::size_t, std::size_t> pairs[] = {{0, 1}, {2, 3}};

  Vector v = stream.gaussian_matrix(layout.total_dim(), 1);
  v.normalize();
  const PureState input(std::move(v), layout);

  const DensityMatrix one_shot = apply_instances(instances, input, pairs);
  const PreparedInstances prepared(instances, layout, pairs);
  const DensityMatrix reused = prepared.apply(input);
  CHECK((one_shot.entries - reused.entries).norm() == 0.0);
  CHECK(one_shot.layout.dims() == std::vector<Index>{d, d});
}

TEST_CASE("overlapping slot pairs are rejected") {
  const Index d = 2;
  RandomStream stream(47, 0);
  const auto instances = sample_channel(d, 2, stream);
  const SubsystemLayout layout = SubsystemLayout::uniform(d, 4);
  const std::pair<std::size_t, std::size_t> overlapping[] = {{0, 1}, {1, 2}};
  CHECK_THROWS_AS(PreparedInstances(instances, layout, overlapping),
                  std::invalid_argument);
}

TEST_CASE("the mixed-state path agrees with the pure-state path") {
  const Index d = 3;
  RandomStream stream(48, 0);
  const auto instances = sample_channel(d, 1, stream);
  const SubsystemLayout layout = SubsystemLayout::uniform(d, 2);
  Vector v = stream.gaussian_matrix(layout.total_dim(), 1);
  v.normalize();
  const PureState psi(std::move(v), layout);

  const DensityMatrix via_pure = apply_instance(instances[0], psi);
  const DensityMatrix via_mixed = apply_instance(instances[0], to_density(psi));
  CHECK((via_pure.entries - via_mixed.entries).norm() < 1e-12);
}

}  // namespace
}  // namespace phaselab
