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

#include "phaselab/ensembles.hpp"

#include <cmath>
#include <complex>
#include <cstdlib>
#include <vector>

#include <doctest.h>

#include "phaselab/qstate.hpp"
#include "phaselab/rng.hpp"
#include "phaselab/schur.hpp"

namespace phaselab {
namespace {

// True when m equals a global phase times some power product X^a Z^b.
bool is_pauli_up_to_phase(const Matrix& m, Index d) {
  const auto [x, z] = generalized_paulis(d);
  Matrix xa = Matrix::Identity(d, d);
  for (Index a = 0; a < d; ++a) {
    Matrix zb = Matrix::Identity(d, d);
    for (Index b = 0; b < d; ++b) {
      const Matrix probe = m * (xa * zb).adjoint();
      const Complex lead = probe(0, 0);
      if (std::abs(std::abs(lead) - 1.0) < 1e-8 &&
          (probe - lead * Matrix::Identity(d, d)).norm() < 1e-8)
        return true;
      zb = zb * z.entries;
    }
    xa = xa * x.entries;
  }
  return false;
}

TEST_CASE("haar samples are unitary at every dimension in range") {
  RandomStream stream(31, 0);
  for (Index d = 2; d <= 9; ++d) {
    for (int rep = 0; rep < 100; ++rep) {
      const UnitaryMatrix u = haar_unitary(d, stream);
      CHECK((u.entries * u.entries.adjoint() - Matrix::Identity(d, d)).norm() <
            1e-12);
    }
  }
}

TEST_CASE("the one-dimensional haar unitary is a unit-modulus scalar") {
  RandomStream stream(32, 0);
  const UnitaryMatrix u = haar_unitary(1, stream);
  REQUIRE(u.dim() == 1);
  CHECK(std::abs(std::abs(u.entries(0, 0)) - 1.0) < 1e-12);
}

TEST_CASE("haar columns are uniform on the sphere") {
  // E |U_00|^2 = 1/d; the second moment 2/(d(d+1)) gives the spread.
  RandomStream stream(33, 0);
  const Index d = 4;
  const int samples = 10000;
  double sum = 0.0;
  for (int s = 0; s < samples; ++s)
    sum += std::norm(haar_unitary(d, stream).entries(0, 0));
  const double mean = sum / samples;
  const double var = 2.0 / (double(d) * (d + 1.0)) - 1.0 / double(d * d);
  CHECK(std::abs(mean - 0.25) < 4.0 * std::sqrt(var / samples));
}

TEST_CASE("haar sampling is deterministic per stream") {
  RandomStream a(34, 5);
  RandomStream b(34, 5);
  const UnitaryMatrix ua = haar_unitary(3, a);
  const UnitaryMatrix ub = haar_unitary(3, b);
  CHECK((ua.entries - ub.entries).norm() == 0.0);
}

TEST_CASE("clifford group orders match d^3 (d^2 - 1)") {
  CHECK(clifford_group(2).members().size() == 24);
  CHECK(clifford_group(3).members().size() == 216);
  CHECK(clifford_group(5).members().size() == 3000);
}

TEST_CASE("every clifford element normalizes the pauli group") {
  for (Index d : {Index(2), Index(3)}) {
    const UnitaryEnsemble group = clifford_group(d);
    const auto [x, z] = generalized_paulis(d);
    for (const UnitaryMatrix& u : group.members()) {
      const Matrix cx = u.entries * x.entries * u.entries.adjoint();
      const Matrix cz = u.entries * z.entries * u.entries.adjoint();
      CHECK(is_pauli_up_to_phase(cx, d));
      CHECK(is_pauli_up_to_phase(cz, d));
    }
  }
}

TEST_CASE("clifford enumeration rejects non-prime and oversized dimensions") {
  CHECK_THROWS_AS((void)clifford_group(4), std::invalid_argument);
  CHECK_THROWS_AS((void)clifford_group(7), std::invalid_argument);
}

TEST_CASE("finite-ensemble sampling hits every member uniformly") {
  const UnitaryEnsemble group = clifford_group(2);
  const std::size_t order = group.members().size();
  RandomStream stream(35, 0);
  const int draws = 10000;
  std::vector<int> counts(order, 0);
  for (int s = 0; s < draws; ++s) {
    const UnitaryMatrix u = sample_from(group, stream);
    bool found = false;
    for (std::size_t k = 0; k < order; ++k) {
      if ((u.entries - group.members()[k].entries).norm() < 1e-12) {
        ++counts[k];
        found = true;
        break;
      }
    }
    CHECK(found);
  }
  const double expected = double(draws) / double(order);
  const double sigma =
      std::sqrt(draws * (1.0 / order) * (1.0 - 1.0 / order));
  for (std::size_t k = 0; k < order; ++k)
    CHECK(std::abs(counts[k] - expected) < 4.0 * sigma);
}

TEST_CASE("a singleton explicit ensemble always returns its member") {
  const Index d = 3;
  std::vector<UnitaryMatrix> members;
  members.push_back(UnitaryMatrix(Matrix::Identity(d, d)));
  const UnitaryEnsemble single = UnitaryEnsemble::explicit_list(d, members);
  RandomStream stream(36, 0);
  for (int rep = 0; rep < 5; ++rep) {
    const UnitaryMatrix u = sample_from(single, stream);
    CHECK((u.entries - Matrix::Identity(d, d)).norm() == 0.0);
  }
  CHECK(single.name() == "explicit");
}

TEST_CASE("ensemble kinds carry their names") {
  CHECK(UnitaryEnsemble::haar(2).name() == "haar");
  CHECK(clifford_group(2).name() == "clifford");
  CHECK(UnitaryEnsemble::haar(2).members().empty());
}

TEST_CASE("the exact twirl fixes the normalized sector projectors") {
  for (Index d : {Index(2), Index(3)}) {
    const SectorProjectors proj = sector_projectors(d);
    const SubsystemLayout layout = SubsystemLayout::uniform(d, 2);
    const DensityMatrix sym(proj.sym / double(proj.rank_sym), layout);
    CHECK((twirl_exact(sym).entries - sym.entries).norm() < 1e-12);
    const DensityMatrix anti(proj.antisym / double(proj.rank_antisym), layout);
    CHECK((twirl_exact(anti).entries - anti.entries).norm() < 1e-12);
  }
}

TEST_CASE("the exact twirl sends a symmetric basis state to its sector") {
  const Index d = 2;
  const SubsystemLayout layout = SubsystemLayout::uniform(d, 2);
  const Index digits[] = {0, 0};
  const DensityMatrix rho = to_density(basis_state(layout, digits));
  const SectorProjectors proj = sector_projectors(d);
  const Matrix expected = proj.sym / 3.0;
  CHECK((twirl_exact(rho).entries - expected).norm() < 1e-12);
}

TEST_CASE("the exact twirl matches an empirical haar average") {
  for (Index d : {Index(2), Index(3)}) {
    RandomStream state_stream(37, d);
    Matrix g = state_stream.gaussian_matrix(d * d, d * d);
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();

    const int samples = 10000;
    RandomStream stream(38, d);
    Matrix mean = Matrix::Zero(d * d, d * d);
    Eigen::MatrixXd second_re = Eigen::MatrixXd::Zero(d * d, d * d);
    Eigen::MatrixXd second_im = Eigen::MatrixXd::Zero(d * d, d * d);
    for (int s = 0; s < samples; ++s) {
      const UnitaryMatrix u = haar_unitary(d, stream);
      const Matrix uu = tensor(u.entries, u.entries);
      const Matrix term = uu * rho * uu.adjoint();
      mean += term;
      second_re += term.real().cwiseAbs2();
      second_im += term.imag().cwiseAbs2();
    }
    mean /= double(samples);
    const Matrix exact = twirl_exact_matrix(rho, d);
    for (Index i = 0; i < d * d; ++i)
      for (Index j = 0; j < d * d; ++j) {
        const double var_re =
            second_re(i, j) / samples - mean(i, j).real() * mean(i, j).real();
        const double var_im =
            second_im(i, j) / samples - mean(i, j).imag() * mean(i, j).imag();
        const double se_re = std::sqrt(std::max(var_re, 0.0) / samples);
        const double se_im = std::sqrt(std::max(var_im, 0.0) / samples);
        CHECK(std::abs(mean(i, j).real() - exact(i, j).real()) <
              4.0 * se_re + 1e-12);
        CHECK(std::abs(mean(i, j).imag() - exact(i, j).imag()) <
              4.0 * se_im + 1e-12);
      }
  }
}

TEST_CASE("the clifford group is a 2-design at both prime dimensions") {
  const TwoDesignReport r2 = is_two_design(clifford_group(2), 1e-9);
  CHECK(r2.pass);
  CHECK(r2.max_deviation < 1e-9);
  CHECK(r2.exact_average);

  const TwoDesignReport r3 = is_two_design(clifford_group(3), 1e-9);
  CHECK(r3.pass);
  CHECK(r3.max_deviation < 1e-9);
}

TEST_CASE("a two-element pauli subset fails the 2-design comparison") {
  const Index d = 2;
  const auto [x, z] = generalized_paulis(d);
  std::vector<UnitaryMatrix> members;
  members.push_back(UnitaryMatrix(Matrix::Identity(d, d)));
  members.push_back(x);
  const UnitaryEnsemble pair = UnitaryEnsemble::explicit_list(d, members);
  const TwoDesignReport report = is_two_design(pair, 1e-9);
  CHECK_FALSE(report.pass);
  CHECK(report.max_deviation > 0.1);
}

TEST_CASE("the haar kind passes its own sampled 2-design check") {
  RandomStream stream(39, 0);
  const TwoDesignReport report =
      is_two_design(UnitaryEnsemble::haar(2), 0.1, stream, 4, 4000);
  CHECK(report.pass);
  CHECK_FALSE(report.exact_average);
  CHECK(report.samples > 0);
}

}  // namespace
}  // namespace phaselab
