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

#include "phaselab/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

namespace phaselab {

namespace {

[[noreturn]] void fail(const std::string& msg) {
  throw std::invalid_argument("phaselab: " + msg);
}

void check_slot(const SubsystemLayout& layout, std::size_t slot) {
  if (slot >= layout.slots()) fail("slot index out of range");
}

void check_slots_distinct(const SubsystemLayout& layout,
                          std::span<const std::size_t> slots) {
  std::vector<bool> seen(layout.slots(), false);
  for (auto s : slots) {
    check_slot(layout, s);
    if (seen[s]) fail("repeated slot index");
    seen[s] = true;
  }
}

// Offsets of all joint basis assignments of `slots`, lexicographic with
// slots[0] most significant. enumerate_offsets(layout, {}) == {0}.
std::vector<Index> enumerate_offsets(const SubsystemLayout& layout,
                                     std::span<const std::size_t> slots) {
  std::vector<Index> offs{0};
  for (auto s : slots) {
    const Index d = layout.dim(s);
    const Index stride = layout.strides()[s];
    std::vector<Index> next;
    next.reserve(offs.size() * static_cast<std::size_t>(d));
    for (Index base : offs)
      for (Index j = 0; j < d; ++j) next.push_back(base + j * stride);
    offs = std::move(next);
  }
  return offs;
}

std::vector<std::size_t> complement_slots(const SubsystemLayout& layout,
                                          std::span<const std::size_t> slots) {
  std::vector<bool> used(layout.slots(), false);
  for (auto s : slots) used[s] = true;
  std::vector<std::size_t> rest;
  for (std::size_t s = 0; s < layout.slots(); ++s)
    if (!used[s]) rest.push_back(s);
  return rest;
}

}  // namespace

// --- SubsystemLayout ---------------------------------------------------------

SubsystemLayout::SubsystemLayout(std::vector<Index> dims)
    : dims_(std::move(dims)) {
  if (dims_.empty()) fail("layout needs at least one slot");
  for (Index d : dims_)
    if (d < 1) fail("subsystem dimension must be >= 1");
  strides_.assign(dims_.size(), 1);
  for (std::size_t p = dims_.size(); p-- > 0;) {
    if (p + 1 < dims_.size()) strides_[p] = strides_[p + 1] * dims_[p + 1];
  }
  total_ = strides_[0] * dims_[0];
}

SubsystemLayout SubsystemLayout::uniform(Index d, std::size_t slots) {
  return SubsystemLayout(std::vector<Index>(slots, d));
}

Index SubsystemLayout::dim(std::size_t slot) const {
  if (slot >= dims_.size()) fail("slot index out of range");
  return dims_[slot];
}

SubsystemLayout SubsystemLayout::subset(
    std::span<const std::size_t> keep) const {
  std::vector<Index> d;
  d.reserve(keep.size());
  for (auto s : keep) {
    if (s >= dims_.size()) fail("slot index out of range");
    d.push_back(dims_[s]);
  }
  return SubsystemLayout(std::move(d));
}

SubsystemLayout SubsystemLayout::without(
    std::span<const std::size_t> remove) const {
  std::vector<bool> drop(dims_.size(), false);
  for (auto s : remove) {
    if (s >= dims_.size()) fail("slot index out of range");
    drop[s] = true;
  }
  std::vector<Index> d;
  for (std::size_t s = 0; s < dims_.size(); ++s)
    if (!drop[s]) d.push_back(dims_[s]);
  return SubsystemLayout(std::move(d));
}

SubsystemLayout SubsystemLayout::with_dim(std::size_t slot, Index d) const {
  if (slot >= dims_.size()) fail("slot index out of range");
  std::vector<Index> dims = dims_;
  dims[slot] = d;
  return SubsystemLayout(std::move(dims));
}

std::string SubsystemLayout::to_string() const {
  std::string out;
  for (std::size_t p = 0; p < dims_.size(); ++p) {
    if (p) out += "x";
    out += std::to_string(dims_[p]);
  }
  return out;
}

// --- state types -------------------------------------------------------------

PureState::PureState(Vector amps, SubsystemLayout lay)
    : amplitudes(std::move(amps)), layout(std::move(lay)) {
  if (amplitudes.size() != layout.total_dim())
    fail("amplitude vector does not match layout dimension");
  if (std::abs(amplitudes.norm() - 1.0) > kValidationTol)
    fail("state vector is not normalized");
}

DensityMatrix::DensityMatrix(Matrix m, SubsystemLayout lay)
    : entries(std::move(m)), layout(std::move(lay)) {
  if (entries.rows() != entries.cols())
    fail("density matrix must be square");
  if (entries.rows() != layout.total_dim())
    fail("density matrix does not match layout dimension");
  if ((entries - entries.adjoint()).cwiseAbs().maxCoeff() > kValidationTol)
    fail("density matrix is not Hermitian");
  if (std::abs(entries.trace().real() - 1.0) > kValidationTol ||
      std::abs(entries.trace().imag()) > kValidationTol)
    fail("density matrix trace is not 1");
}

UnitaryMatrix::UnitaryMatrix(Matrix m) : entries(std::move(m)) {
  if (entries.rows() != entries.cols()) fail("unitary must be square");
  const Index n = entries.rows();
  Matrix defect = entries * entries.adjoint() - Matrix::Identity(n, n);
  if (defect.cwiseAbs().maxCoeff() > kValidationTol)
    fail("matrix is not unitary within tolerance");
}

// --- tensor products ---------------------------------------------------------

Matrix tensor(const Matrix& a, const Matrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

Vector tensor(const Vector& a, const Vector& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

PureState tensor(const PureState& a, const PureState& b) {
  std::vector<Index> dims = a.layout.dims();
  dims.insert(dims.end(), b.layout.dims().begin(), b.layout.dims().end());
  return PureState(tensor(a.amplitudes, b.amplitudes),
                   SubsystemLayout(std::move(dims)));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  std::vector<Index> dims = a.layout.dims();
  dims.insert(dims.end(), b.layout.dims().begin(), b.layout.dims().end());
  return DensityMatrix(tensor(a.entries, b.entries),
                       SubsystemLayout(std::move(dims)));
}

UnitaryMatrix tensor(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  return UnitaryMatrix(tensor(a.entries, b.entries));
}

// --- structural operations ---------------------------------------------------

Vector apply_to_slots(const Matrix& op, const Vector& state,
                      const SubsystemLayout& layout,
                      std::span<const std::size_t> slots) {
  if (state.size() != layout.total_dim())
    fail("state does not match layout dimension");
  check_slots_distinct(layout, slots);
  if (slots.empty()) fail("operator needs at least one target slot");
  Index opdim = 1;
  for (auto s : slots) opdim *= layout.dim(s);
  if (op.rows() != opdim || op.cols() != opdim)
    fail("operator dimension does not match target slots");

  const std::vector<Index> slot_off = enumerate_offsets(layout, slots);
  const std::vector<std::size_t> rest = complement_slots(layout, slots);
  const std::vector<Index> rest_off = enumerate_offsets(layout, rest);

  Vector out(state.size());
  Vector in_block(opdim), out_block(opdim);
  for (Index base : rest_off) {
    for (Index o = 0; o < opdim; ++o) in_block[o] = state[base + slot_off[o]];
    out_block.noalias() = op * in_block;
    for (Index o = 0; o < opdim; ++o) out[base + slot_off[o]] = out_block[o];
  }
  return out;
}

PureState apply_to_slots(const UnitaryMatrix& op, const PureState& state,
                         std::span<const std::size_t> slots) {
  return PureState(
      apply_to_slots(op.entries, state.amplitudes, state.layout, slots),
      state.layout);
}

Matrix embed_operator(const Matrix& op, std::span<const std::size_t> slots,
                      const SubsystemLayout& layout) {
  check_slots_distinct(layout, slots);
  Index opdim = 1;
  for (auto s : slots) opdim *= layout.dim(s);
  if (op.rows() != opdim || op.cols() != opdim)
    fail("operator dimension does not match target slots");

  const std::vector<Index> slot_off = enumerate_offsets(layout, slots);
  const std::vector<std::size_t> rest = complement_slots(layout, slots);
  const std::vector<Index> rest_off = enumerate_offsets(layout, rest);

  Matrix out = Matrix::Zero(layout.total_dim(), layout.total_dim());
  for (Index base : rest_off)
    for (Index oi = 0; oi < opdim; ++oi)
      for (Index oj = 0; oj < opdim; ++oj)
        out(base + slot_off[oi], base + slot_off[oj]) = op(oi, oj);
  return out;
}

PureState permute_subsystems(const PureState& state,
                             std::span<const std::size_t> perm) {
  const SubsystemLayout& lay = state.layout;
  if (perm.size() != lay.slots()) fail("permutation size mismatch");
  check_slots_distinct(lay, perm);

  SubsystemLayout out_lay = lay.subset(perm);
  // Enumerating old offsets in the order of the new layout's basis walk
  // is exactly the required amplitude reshuffle.
  const std::vector<Index> src = enumerate_offsets(lay, perm);
  Vector out(lay.total_dim());
  for (Index i = 0; i < lay.total_dim(); ++i) out[i] = state.amplitudes[src[i]];
  return PureState(std::move(out), std::move(out_lay));
}

DensityMatrix permute_subsystems(const DensityMatrix& state,
                                 std::span<const std::size_t> perm) {
  const SubsystemLayout& lay = state.layout;
  if (perm.size() != lay.slots()) fail("permutation size mismatch");
  check_slots_distinct(lay, perm);

  SubsystemLayout out_lay = lay.subset(perm);
  const std::vector<Index> src = enumerate_offsets(lay, perm);
  const Index n = lay.total_dim();
  Matrix out(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) out(i, j) = state.entries(src[i], src[j]);
  return DensityMatrix(std::move(out), std::move(out_lay));
}

// --- reductions --------------------------------------------------------------

DensityMatrix to_density(const PureState& state) {
  Matrix m = state.amplitudes * state.amplitudes.adjoint();
  return DensityMatrix(std::move(m), state.layout);
}

DensityMatrix partial_trace(const DensityMatrix& state,
                            std::span<const std::size_t> keep) {
  const SubsystemLayout& lay = state.layout;
  check_slots_distinct(lay, keep);
  if (keep.empty()) fail("partial trace must keep at least one slot");

  const std::vector<Index> keep_off = enumerate_offsets(lay, keep);
  const std::vector<std::size_t> rest = complement_slots(lay, keep);
  const std::vector<Index> rest_off = enumerate_offsets(lay, rest);

  const Index dk = static_cast<Index>(keep_off.size());
  Matrix out = Matrix::Zero(dk, dk);
  for (Index i = 0; i < dk; ++i)
    for (Index j = 0; j < dk; ++j) {
      Complex acc = 0.0;
      for (Index t : rest_off)
        acc += state.entries(keep_off[i] + t, keep_off[j] + t);
      out(i, j) = acc;
    }
  return DensityMatrix(std::move(out), lay.subset(keep));
}

DensityMatrix reduced_state(const PureState& state,
                            std::span<const std::size_t> keep) {
  const SubsystemLayout& lay = state.layout;
  check_slots_distinct(lay, keep);
  if (keep.empty()) fail("reduction must keep at least one slot");

  const std::vector<Index> keep_off = enumerate_offsets(lay, keep);
  const std::vector<std::size_t> rest = complement_slots(lay, keep);
  const std::vector<Index> rest_off = enumerate_offsets(lay, rest);

  const Index dk = static_cast<Index>(keep_off.size());
  const Index dt = static_cast<Index>(rest_off.size());
  Matrix m(dk, dt);
  for (Index k = 0; k < dk; ++k)
    for (Index t = 0; t < dt; ++t)
      m(k, t) = state.amplitudes[keep_off[k] + rest_off[t]];
  Matrix rho = m * m.adjoint();
  // Guard against drift from the gemm: symmetrize before validation.
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix(std::move(rho), lay.subset(keep));
}

// --- spectra and information measures ----------------------------------------

RealVector state_eigenvalues(const DensityMatrix& state) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(state.entries,
                                               Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("phaselab: eigenvalue solver failed");
  RealVector ev = solver.eigenvalues();
  for (Index i = 0; i < ev.size(); ++i) {
    if (ev[i] < -kEigenvalueFloor)
      throw std::runtime_error(
          "phaselab: density matrix has eigenvalue below the tolerance floor");
    if (ev[i] <= kEigenvalueClamp) ev[i] = 0.0;
  }
  std::sort(ev.data(), ev.data() + ev.size(), std::greater<double>());
  return ev;
}

double von_neumann_entropy(const DensityMatrix& state) {
  const RealVector ev = state_eigenvalues(state);
  double s = 0.0;
  for (Index i = 0; i < ev.size(); ++i)
    if (ev[i] > 0.0) s -= ev[i] * std::log2(ev[i]);
  return s;
}

double purity(const DensityMatrix& state) {
  return state.entries.squaredNorm();
}

// --- canonical objects --------------------------------------------------------

PureState max_entangled_state(Index d) {
  if (d < 1) fail("dimension must be >= 1");
  Vector v = Vector::Zero(d * d);
  const double a = 1.0 / std::sqrt(static_cast<double>(d));
  for (Index i = 0; i < d; ++i) v[i * d + i] = a;
  return PureState(std::move(v), SubsystemLayout({d, d}));
}

UnitaryMatrix swap_operator(Index d) {
  if (d < 1) fail("dimension must be >= 1");
  Matrix f = Matrix::Zero(d * d, d * d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) f(j * d + i, i * d + j) = 1.0;
  return UnitaryMatrix(std::move(f));
}

std::pair<UnitaryMatrix, UnitaryMatrix> generalized_paulis(Index d) {
  if (d < 2) fail("generalized Paulis need dimension >= 2");
  Matrix x = Matrix::Zero(d, d);
  Matrix z = Matrix::Zero(d, d);
  for (Index j = 0; j < d; ++j) {
    x((j + 1) % d, j) = 1.0;
    const double ang = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(d);
    z(j, j) = Complex(std::cos(ang), std::sin(ang));
  }
  return {UnitaryMatrix(std::move(x)), UnitaryMatrix(std::move(z))};
}

PureState basis_state(const SubsystemLayout& layout,
                      std::span<const Index> digits) {
  if (digits.size() != layout.slots()) fail("digit count mismatch");
  Index off = 0;
  for (std::size_t p = 0; p < digits.size(); ++p) {
    if (digits[p] < 0 || digits[p] >= layout.dim(p))
      fail("basis digit out of range");
    off += digits[p] * layout.strides()[p];
  }
  Vector v = Vector::Zero(layout.total_dim());
  v[off] = 1.0;
  return PureState(std::move(v), layout);
}

// --- misc ----------------------------------------------------------------------

double fidelity(const PureState& a, const PureState& b) {
  if (a.dim() != b.dim()) fail("fidelity operands differ in dimension");
  return std::norm(a.amplitudes.dot(b.amplitudes));
}

double fidelity(const DensityMatrix& rho, const PureState& psi) {
  if (rho.dim() != psi.dim()) fail("fidelity operands differ in dimension");
  const Complex v = psi.amplitudes.dot(rho.entries * psi.amplitudes);
  return v.real();
}

std::vector<MeasurementBranch> measure_computational(const PureState& state,
                                                     std::size_t slot) {
  const SubsystemLayout& lay = state.layout;
  check_slot(lay, slot);
  if (lay.slots() < 2)
    fail("measurement would leave an empty layout");

  const Index d = lay.dim(slot);
  const Index stride = lay.strides()[slot];
  const std::size_t slot_arr[] = {slot};
  const std::vector<std::size_t> rest = complement_slots(lay, slot_arr);
  const std::vector<Index> rest_off = enumerate_offsets(lay, rest);
  const SubsystemLayout post_lay = lay.without(slot_arr);

  std::vector<MeasurementBranch> branches;
  for (Index j = 0; j < d; ++j) {
    Vector sub(static_cast<Index>(rest_off.size()));
    for (std::size_t t = 0; t < rest_off.size(); ++t)
      sub[static_cast<Index>(t)] = state.amplitudes[rest_off[t] + j * stride];
    const double p = sub.squaredNorm();
    if (p < 1e-15) continue;
    sub /= std::sqrt(p);
    branches.push_back({p, j, PureState(std::move(sub), post_lay)});
  }
  return branches;
}

}  // namespace phaselab
