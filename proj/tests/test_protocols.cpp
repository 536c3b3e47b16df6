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
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <doctest.h>

#include "phaselab/phasechannel.hpp"
#include "phaselab/qstate.hpp"
#include "phaselab/rng.hpp"

namespace phaselab {
namespace {

ChannelInstance identity_instance(Index d) {
  return ChannelInstance{d, UnitaryMatrix(Matrix::Identity(d, d)),
                         UnitaryMatrix(Matrix::Identity(d, d)), "explicit"};
}

PureState random_single(Index d, RandomStream& stream) {
  Vector v = stream.gaussian_matrix(d, 1);
  v.normalize();
  return PureState(std::move(v), SubsystemLayout({d}));
}

TEST_CASE("transcripts accumulate steps and report the rate") {
  ProtocolTranscript t;
  t.protocol = "demo";
  t.add("send", "A->B", "ok");
  t.add("decode", "B", "ok");
  t.channel_uses = 3;
  t.payload_bits = 2.0;
  CHECK(t.rate() == doctest::Approx(2.0 / 3.0));
  const std::string text = t.to_text();
  CHECK(text.find("send") != std::string::npos);
  CHECK(text.find("decode") != std::string::npos);
}

TEST_CASE("the assisted reversal is exact on a basis input") {
  Vector zero = Vector::Zero(2);
  zero(0) = 1.0;
  const PureState input(std::move(zero), SubsystemLayout({Index(2)}));
  const ReversalResult r = assisted_reversal(identity_instance(2), input);
  CHECK(r.fidelity == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("the assisted reversal is exact for random instances and inputs") {
  RandomStream stream(81, 0);
  for (Index d : {Index(2), Index(3), Index(5)}) {
    for (int rep = 0; rep < 5; ++rep) {
      RandomStream sub = stream.substream(d * 100 + rep);
      const auto instances = sample_channel(d, 1, sub);
      const PureState input = random_single(d, sub);
      const ReversalResult r = assisted_reversal(instances[0], input);
      CHECK(r.fidelity == doctest::Approx(1.0).epsilon(1e-9));
      CHECK_FALSE(r.transcript.steps.empty());
    }
  }
}

TEST_CASE("skipping the phase correction leaves the dephased overlap") {
  // Without the measurement record the payload decoheres in the rotated
  // basis; the surviving fidelity is the purity of the dephased weights.
  RandomStream stream(82, 0);
  for (Index d : {Index(2), Index(4)}) {
    for (int rep = 0; rep < 5; ++rep) {
      RandomStream sub = stream.substream(d * 100 + rep);
      const auto instances = sample_channel(d, 1, sub);
      const PureState input = random_single(d, sub);
      const ReversalResult r =
          assisted_reversal(instances[0], input, false);

      const Vector rotated = instances[0].u.entries * input.amplitudes;
      double expected = 0.0;
      for (Index i = 0; i < d; ++i) {
        const double q = std::norm(rotated(i));
        expected += q * q;
      }
      CHECK(r.fidelity == doctest::Approx(expected).epsilon(1e-9));
      CHECK(r.fidelity < 0.99);
    }
  }
}

TEST_CASE("joint use with the erasure yields half the perfect rate") {
  RandomStream stream(83, 0);
  for (Index d : {Index(2), Index(5)}) {
    RandomStream sub = stream.substream(d);
    const auto instances = sample_channel(d, 1, sub);
    const JointCIResult r = joint_coherent_info(instances[0]);
    const double logd = std::log2(double(d));
    CHECK(std::abs(r.nonerased - logd) < 1e-6);
    REQUIRE(r.erased.has_value());
    CHECK(std::abs(*r.erased) < 1e-9);
    CHECK(std::abs(r.average - 0.5 * logd) < 1e-6);
  }
}

TEST_CASE("the identity probe mode keeps the full coherent information") {
  RandomStream stream(84, 0);
  const auto instances = sample_channel(2, 1, stream);
  const JointCIResult r =
      joint_coherent_info(instances[0], ErasureMode::Identity);
  CHECK_FALSE(r.erased.has_value());
  CHECK(r.average == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.nonerased == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("back-assisted distillation ends with a perfect pair") {
  const EntanglementResult plain =
      backassisted_entanglement(identity_instance(3));
  CHECK(plain.fidelity == doctest::Approx(1.0).epsilon(1e-12));

  RandomStream stream(85, 0);
  for (Index d : {Index(2), Index(3), Index(4)}) {
    for (int rep = 0; rep < 20; ++rep) {
      RandomStream sub = stream.substream(d * 100 + rep);
      const auto instances = sample_channel(d, 1, sub);
      const EntanglementResult r = backassisted_entanglement(instances[0]);
      CHECK(r.fidelity == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("the sampled path returns the corrected pair state") {
  RandomStream stream(86, 0);
  const auto instances = sample_channel(3, 1, stream);
  RandomStream outcome_stream = stream.substream(99);
  const EntanglementResult r =
      backassisted_entanglement(instances[0], true, &outcome_stream);
  REQUIRE(r.pair_state.has_value());
  CHECK(fidelity(*r.pair_state, max_entangled_state(3)) ==
        doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("skipping the sender correction collapses the pair fidelity") {
  // With no back-communication the average fidelity sits near 1/d^2, far
  // from the corrected value 1.
  const Index d = 3;
  RandomStream stream(87, 0);
  double avg = 0.0;
  const int instances_count = 100;
  for (int rep = 0; rep < instances_count; ++rep) {
    RandomStream sub = stream.substream(rep);
    const auto instances = sample_channel(d, 1, sub);
    avg += backassisted_entanglement(instances[0], false).fidelity;
  }
  avg /= instances_count;
  CHECK(std::abs(avg - 1.0 / double(d * d)) < 0.03);
}

TEST_CASE("classical messaging decodes every message at d=2") {
  RandomStream stream(88, 0);
  for (Index a = 0; a < 2; ++a)
    for (Index b = 0; b < 2; ++b) {
      RandomStream sub = stream.substream(a * 2 + b);
      const ClassicalRunResult r = backassisted_classical(2, {a, b}, sub);
      CHECK(r.correct);
      CHECK(r.decoded == std::pair<Index, Index>{a, b});
      CHECK(r.channel_uses == 3);
      CHECK(r.rate == 2.0 / 3.0);
    }
}

TEST_CASE("classical messaging decodes every message at d=3") {
  RandomStream stream(89, 0);
  for (Index a = 0; a < 3; ++a)
    for (Index b = 0; b < 3; ++b) {
      RandomStream sub = stream.substream(a * 3 + b);
      const ClassicalRunResult r = backassisted_classical(3, {a, b}, sub);
      CHECK(r.correct);
      CHECK(r.decoded == std::pair<Index, Index>{a, b});
      CHECK(r.rate ==
            doctest::Approx(2.0 * std::log2(3.0) / 3.0).epsilon(1e-15));
    }
}

TEST_CASE("explicit identity instances carry the zero message") {
  std::vector<ChannelInstance> instances = {
      identity_instance(2), identity_instance(2), identity_instance(2)};
  RandomStream stream(90, 0);
  const ClassicalRunResult r =
      backassisted_classical(2, {0, 0}, instances, stream);
  CHECK(r.correct);
  CHECK(r.decoded == std::pair<Index, Index>{0, 0});
  CHECK_FALSE(r.transcript.to_text().empty());
}

TEST_CASE("classical messaging rejects unsupported dimensions") {
  RandomStream stream(91, 0);
  CHECK_THROWS_AS((void)backassisted_classical(4, {0, 0}, stream),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)backassisted_classical(2, {2, 0}, stream),
                  std::invalid_argument);
}

TEST_CASE("the capacity comparison report quantifies the jump") {
  const RandomStream stream(92, 0);
  const NonadditivityReport r = nonadditivity_report(9, stream, 5);
  CHECK(r.input_dim == 81);
  CHECK(r.classical_capacity_bound == 2.0);
  CHECK(r.erasure_private_capacity == 0.0);
  CHECK(r.joint_coherent_info ==
        doctest::Approx(0.5 * std::log2(9.0)).epsilon(1e-9));
  CHECK(r.violation_ratio == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(r.spread < 1e-9);
  CHECK(r.instances == 5);

  bool flagged = false;
  for (const std::string& note : r.notes)
    if (note.find("not verified") != std::string::npos) flagged = true;
  CHECK(flagged);

  const NonadditivityReport r2 = nonadditivity_report(2, stream, 3);
  CHECK(r2.violation_ratio == doctest::Approx(0.25).epsilon(1e-9));
}

}  // namespace
}  // namespace phaselab
