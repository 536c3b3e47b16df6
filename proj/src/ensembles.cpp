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
#include <cstdint>
#include <deque>
#include <map>
#include <stdexcept>

namespace phaselab {

namespace {

bool is_prime(Index d) {
  if (d < 2) return false;
  for (Index p = 2; p * p <= d; ++p)
    if (d % p == 0) return false;
  return true;
}

// Phase canonicalization: rotate so the first row-major entry with
// |z| > 1e-8 is real positive. Entry magnitudes in the groups handled
// here sit in {0, d^{-1/2}, 1}, far from the cut.
Matrix canonical_phase(const Matrix& m) {
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) {
      const Complex z = m(r, c);
      if (std::abs(z) > 1e-8) return (std::conj(z) / std::abs(z)) * m;
    }
  throw std::logic_error("phaselab: zero matrix in group closure");
}

std::vector<std::int64_t> dedup_key(const Matrix& m) {
  std::vector<std::int64_t> key;
  key.reserve(static_cast<std::size_t>(2 * m.size()));
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) {
      key.push_back(std::llround(m(r, c).real() * 1e6));
      key.push_back(std::llround(m(r, c).imag() * 1e6));
    }
  return key;
}

Complex root_of_unity(Index d, Index power) {
  const double ang =
      2.0 * kPi * static_cast<double>(power % d) / static_cast<double>(d);
  return Complex(std::cos(ang), std::sin(ang));
}

Matrix fourier_matrix(Index d) {
  Matrix f(d, d);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (Index j = 0; j < d; ++j)
    for (Index k = 0; k < d; ++k) f(j, k) = norm * root_of_unity(d, j * k);
  return f;
}

Matrix quadratic_phase_matrix(Index d) {
  Matrix s = Matrix::Zero(d, d);
  if (d == 2) {
    s(0, 0) = 1.0;
    s(1, 1) = Complex(0.0, 1.0);
    return s;
  }
  // Odd prime: diag(w^{j(j+1)/2}) with /2 the inverse of 2 mod d.
  Index inv2 = 0;
  for (Index x = 1; x < d; ++x)
    if ((2 * x) % d == 1) inv2 = x;
  for (Index j = 0; j < d; ++j)
    s(j, j) = root_of_unity(d, (j * (j + 1) % d) * inv2 % d);
  return s;
}

}  // namespace

UnitaryEnsemble UnitaryEnsemble::haar(Index d) {
  if (d < 2) throw std::invalid_argument("phaselab: ensemble needs d >= 2");
  return UnitaryEnsemble(EnsembleKind::Haar, d, {});
}

UnitaryEnsemble UnitaryEnsemble::clifford_prime(Index d) {
  if (!is_prime(d) || d > 5)
    throw std::invalid_argument(
        "phaselab: clifford_group supports prime d <= 5");

  auto [x, z] = generalized_paulis(d);
  const std::vector<Matrix> gens = {fourier_matrix(d),
                                    quadratic_phase_matrix(d), x.entries,
                                    z.entries};

  std::map<std::vector<std::int64_t>, std::size_t> seen;
  std::vector<Matrix> members;
  std::deque<std::size_t> frontier;

  const Matrix id = canonical_phase(Matrix::Identity(d, d));
  seen.emplace(dedup_key(id), 0);
  members.push_back(id);
  frontier.push_back(0);

  while (!frontier.empty()) {
    const Matrix cur = members[frontier.front()];
    frontier.pop_front();
    for (const Matrix& g : gens) {
      Matrix next = canonical_phase(g * cur);
      auto key = dedup_key(next);
      if (seen.emplace(std::move(key), members.size()).second) {
        members.push_back(next);
        frontier.push_back(members.size() - 1);
      }
    }
  }

  std::vector<UnitaryMatrix> out;
  out.reserve(members.size());
  for (auto& m : members) out.emplace_back(std::move(m));
  return UnitaryEnsemble(EnsembleKind::CliffordPrime, d, std::move(out));
}

UnitaryEnsemble UnitaryEnsemble::explicit_list(
    Index d, std::vector<UnitaryMatrix> members) {
  if (members.empty())
    throw std::invalid_argument("phaselab: explicit ensemble is empty");
  for (const auto& u : members)
    if (u.dim() != d)
      throw std::invalid_argument("phaselab: ensemble member dimension mismatch");
  return UnitaryEnsemble(EnsembleKind::Explicit, d, std::move(members));
}

std::string UnitaryEnsemble::name() const {
  switch (kind_) {
    case EnsembleKind::Haar:
      return "haar";
    case EnsembleKind::CliffordPrime:
      return "clifford";
    case EnsembleKind::Explicit:
      return "explicit";
  }
  return "unknown";
}

UnitaryMatrix haar_unitary(Index d, RandomStream& stream) {
  if (d < 1) throw std::invalid_argument("phaselab: haar_unitary needs d >= 1");
  const Matrix g = stream.gaussian_matrix(d, d);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index c = 0; c < d; ++c) {
    const Complex z = r(c, c);
    const double a = std::abs(z);
    // Diagonal of R vanishes only on a measure-zero set; guard anyway.
    q.col(c) *= (a > 0.0) ? (z / a) : Complex(1.0, 0.0);
  }
  return UnitaryMatrix(std::move(q));
}

UnitaryEnsemble clifford_group(Index d) {
  return UnitaryEnsemble::clifford_prime(d);
}

UnitaryMatrix sample_from(const UnitaryEnsemble& ensemble,
                          RandomStream& stream) {
  if (ensemble.kind() == EnsembleKind::Haar)
    return haar_unitary(ensemble.dim(), stream);
  const auto& members = ensemble.members();
  return members[stream.next_index(members.size())];
}

Matrix twirl_exact_matrix(const Matrix& m, Index d) {
  if (m.rows() != d * d || m.cols() != d * d)
    throw std::invalid_argument("phaselab: twirl input must be d^2 x d^2");
  const Matrix f = swap_operator(d).entries;
  const Matrix id = Matrix::Identity(d * d, d * d);
  const Matrix sym = 0.5 * (id + f);
  const Matrix anti = 0.5 * (id - f);
  const double rank_sym = 0.5 * static_cast<double>(d * (d + 1));
  const double rank_anti = 0.5 * static_cast<double>(d * (d - 1));
  Matrix out = (sym * m).trace() / rank_sym * sym;
  if (rank_anti > 0.0) out += (anti * m).trace() / rank_anti * anti;
  return out;
}

DensityMatrix twirl_exact(const DensityMatrix& rho) {
  if (rho.layout.slots() != 2 || rho.layout.dim(0) != rho.layout.dim(1))
    throw std::invalid_argument("phaselab: twirl_exact needs layout (d, d)");
  const Index d = rho.layout.dim(0);
  return DensityMatrix(twirl_exact_matrix(rho.entries, d), rho.layout);
}

TwoDesignReport is_two_design(const UnitaryEnsemble& ensemble, double tol,
                              RandomStream& stream, int random_tests,
                              std::uint64_t haar_budget) {
  const Index d = ensemble.dim();
  const Index dd = d * d;

  std::vector<Matrix> tests;
  if (ensemble.kind() != EnsembleKind::Haar && d <= 3) {
    for (Index a = 0; a < dd; ++a)
      for (Index b = 0; b < dd; ++b) {
        Matrix e = Matrix::Zero(dd, dd);
        e(a, b) = 1.0;
        tests.push_back(std::move(e));
      }
  }
  for (int t = 0; t < random_tests; ++t) {
    const Matrix g = stream.gaussian_matrix(dd, dd);
    Matrix rho = g * g.adjoint();
    rho /= rho.trace();
    tests.push_back(std::move(rho));
  }

  double max_dev = 0.0;
  std::uint64_t samples = 0;
  const bool exact = ensemble.kind() != EnsembleKind::Haar;

  for (const Matrix& m : tests) {
    Matrix avg = Matrix::Zero(dd, dd);
    if (exact) {
      for (const auto& u : ensemble.members()) {
        const Matrix uu = tensor(u.entries, u.entries);
        avg += uu * m * uu.adjoint();
      }
      avg /= static_cast<double>(ensemble.members().size());
    } else {
      for (std::uint64_t s = 0; s < haar_budget; ++s) {
        const Matrix u = haar_unitary(d, stream).entries;
        const Matrix uu = tensor(u, u);
        avg += uu * m * uu.adjoint();
      }
      avg /= static_cast<double>(haar_budget);
      samples += haar_budget;
    }
    const double dev =
        (avg - twirl_exact_matrix(m, d)).cwiseAbs().maxCoeff();
    max_dev = std::max(max_dev, dev);
  }

  return TwoDesignReport{max_dev <= tol, max_dev, tol,
                         static_cast<int>(tests.size()), exact, samples};
}

TwoDesignReport is_two_design(const UnitaryEnsemble& ensemble, double tol) {
  RandomStream stream(1, 0xD351);
  return is_two_design(ensemble, tol, stream);
}

}  // namespace phaselab
