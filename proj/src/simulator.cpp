// Copyright 2026 The vqepes Authors
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

#include "vqepes/simulator.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numbers>
#include <unordered_map>

#include <fmt/format.h>

#include "vqepes/error.hpp"

namespace vqepes {

namespace {

using Mat2 = std::array<cplx, 4>;  // row-major

inline double parity_sign(std::uint64_t v) { return (std::popcount(v) & 1) ? -1.0 : 1.0; }

void check_qubit(const StateVector& s, unsigned q) {
  if (q >= s.n_qubits()) {
    throw Error(fmt::format("qubit {} out of range for a {}-qubit state", q, s.n_qubits()));
  }
}

void apply_single(StateVector& state, unsigned q, const Mat2& m) {
  check_qubit(state, q);
  auto a = state.amplitudes();
  const std::size_t bit = std::size_t{1} << q;
  for (std::size_t b = 0; b < a.size(); ++b) {
    if (b & bit) continue;
    const cplx a0 = a[b];
    const cplx a1 = a[b | bit];
    a[b] = m[0] * a0 + m[1] * a1;
    a[b | bit] = m[2] * a0 + m[3] * a1;
  }
}

Mat2 gate_matrix(const Gate& g) {
  constexpr double r = std::numbers::sqrt2 / 2.0;
  const cplx i(0.0, 1.0);
  switch (g.kind) {
    case GateKind::X: return {0.0, 1.0, 1.0, 0.0};
    case GateKind::Sx: return {0.5 * (1.0 + i), 0.5 * (1.0 - i), 0.5 * (1.0 - i), 0.5 * (1.0 + i)};
    case GateKind::Sxdg: return {0.5 * (1.0 - i), 0.5 * (1.0 + i), 0.5 * (1.0 + i), 0.5 * (1.0 - i)};
    case GateKind::H: return {r, r, r, -r};
    case GateKind::Sdg: return {1.0, 0.0, 0.0, -i};
    case GateKind::Rz: return {std::exp(-0.5 * i * g.angle), 0.0, 0.0, std::exp(0.5 * i * g.angle)};
    case GateKind::Ry: {
      const double c = std::cos(0.5 * g.angle);
      const double s = std::sin(0.5 * g.angle);
      return {c, -s, s, c};
    }
    case GateKind::CNOT: break;
  }
  throw Error("gate has no single-qubit matrix");
}

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

StateVector::StateVector(unsigned n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits > kMaxStateQubits) {
    throw SizeError(fmt::format("statevector of {} qubits exceeds the {}-qubit limit", n_qubits,
                                kMaxStateQubits));
  }
  amps_.assign(std::size_t{1} << n_qubits, cplx(0.0));
  amps_[0] = 1.0;
}

double StateVector::norm_squared() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return s;
}

cplx StateVector::inner(const StateVector& other) const {
  if (other.n_qubits_ != n_qubits_) throw Error("inner product of states with different widths");
  cplx s = 0.0;
  for (std::size_t b = 0; b < amps_.size(); ++b) s += std::conj(amps_[b]) * other.amps_[b];
  return s;
}

StateVector prepare_reference(std::uint64_t occupation, unsigned n_qubits) {
  StateVector s(n_qubits);
  if (n_qubits < 64 && (occupation >> n_qubits) != 0) {
    throw Error(fmt::format("occupation pattern does not fit in {} qubits", n_qubits));
  }
  s[0] = 0.0;
  s[occupation] = 1.0;
  return s;
}

void apply_pauli_rotation(StateVector& state, const PauliString& p, double theta) {
  if (p.n_qubits() != state.n_qubits()) throw Error("rotation width differs from state width");
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  const std::uint64_t x = p.x_mask();
  const std::uint64_t z = p.z_mask();
  // P|b> = i^y (-1)^{|b & z|} |b ^ x>
  const cplx iy = Phase{static_cast<std::uint8_t>(p.y_count() & 3)}.value();
  const cplx mis = cplx(0.0, -s) * iy;  // -i sin(theta/2) i^y
  auto a = state.amplitudes();
  if (x == 0) {
    const cplx plus = c + mis;
    const cplx minus = c - mis;
    for (std::size_t b = 0; b < a.size(); ++b) a[b] *= (std::popcount(b & z) & 1) ? minus : plus;
    return;
  }
  const std::uint64_t top = std::bit_floor(x);
  for (std::size_t b = 0; b < a.size(); ++b) {
    if (b & top) continue;
    const std::size_t bx = b ^ x;
    const cplx ab = a[b];
    const cplx abx = a[bx];
    // (P psi)[b] = phase(bx) psi[bx], (P psi)[bx] = phase(b) psi[b]
    a[b] = c * ab + mis * parity_sign(bx & z) * abx;
    a[bx] = c * abx + mis * parity_sign(b & z) * ab;
  }
}

void apply_pauli(StateVector& state, const PauliString& p) {
  if (p.n_qubits() != state.n_qubits()) throw Error("Pauli width differs from state width");
  const std::uint64_t x = p.x_mask();
  const std::uint64_t z = p.z_mask();
  const cplx iy = Phase{static_cast<std::uint8_t>(p.y_count() & 3)}.value();
  auto a = state.amplitudes();
  if (x == 0) {
    for (std::size_t b = 0; b < a.size(); ++b) a[b] *= iy * parity_sign(b & z);
    return;
  }
  const std::uint64_t top = std::bit_floor(x);
  for (std::size_t b = 0; b < a.size(); ++b) {
    if (b & top) continue;
    const std::size_t bx = b ^ x;
    const cplx ab = a[b];
    a[b] = iy * parity_sign(bx & z) * a[bx];
    a[bx] = iy * parity_sign(b & z) * ab;
  }
}

void apply_gate(StateVector& state, const Gate& gate) {
  if (gate.kind != GateKind::CNOT) {
    apply_single(state, gate.target, gate_matrix(gate));
    return;
  }
  check_qubit(state, gate.control);
  check_qubit(state, gate.target);
  if (gate.control == gate.target) throw Error("CNOT control and target coincide");
  auto a = state.amplitudes();
  const std::size_t cb = std::size_t{1} << gate.control;
  const std::size_t tb = std::size_t{1} << gate.target;
  for (std::size_t b = 0; b < a.size(); ++b) {
    if ((b & cb) && !(b & tb)) std::swap(a[b], a[b | tb]);
  }
}

Gate inverse(const Gate& gate) {
  Gate g = gate;
  switch (gate.kind) {
    case GateKind::Sx: g.kind = GateKind::Sxdg; break;
    case GateKind::Sxdg: g.kind = GateKind::Sx; break;
    case GateKind::Sdg: throw Error("Sdg inverse is not part of the gate set");
    case GateKind::Rz:
    case GateKind::Ry: g.angle = -gate.angle; break;
    default: break;
  }
  return g;
}

CompiledOperator::CompiledOperator(const QubitOperator& op) : n_qubits_(op.n_qubits()) {
  const QubitOperator s = op.simplify();
  std::unordered_map<std::uint64_t, std::size_t> index;
  for (const auto& [p, c] : s.terms()) {
    if (std::abs(c.imag()) > 1e-10) hermitian_ = false;
    auto [it, inserted] = index.try_emplace(p.x_mask(), groups_.size());
    if (inserted) groups_.push_back({p.x_mask(), {}, {}});
    Group& g = groups_[it->second];
    g.z_masks.push_back(p.z_mask());
    g.coeffs.push_back(c * Phase{static_cast<std::uint8_t>(p.y_count() & 3)}.value());
  }
}

void CompiledOperator::apply(const StateVector& psi, StateVector& out) const {
  if (psi.n_qubits() != n_qubits_) throw Error("operator width differs from state width");
  if (out.n_qubits() != n_qubits_) out = StateVector(n_qubits_);
  auto o = out.amplitudes();
  std::fill(o.begin(), o.end(), cplx(0.0));
  const auto a = psi.amplitudes();
  for (const Group& g : groups_) {
    const std::size_t nz = g.z_masks.size();
    for (std::size_t b = 0; b < a.size(); ++b) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < nz; ++k) {
        s += (std::popcount(b & g.z_masks[k]) & 1) ? -g.coeffs[k] : g.coeffs[k];
      }
      o[b ^ g.x_mask] += s * a[b];
    }
  }
}

cplx CompiledOperator::expectation(const StateVector& psi) const {
  if (psi.n_qubits() != n_qubits_) throw Error("operator width differs from state width");
  const auto a = psi.amplitudes();
  cplx total = 0.0;
  for (const Group& g : groups_) {
    const std::size_t nz = g.z_masks.size();
    cplx acc = 0.0;
    for (std::size_t b = 0; b < a.size(); ++b) {
      const cplx t = std::conj(a[b ^ g.x_mask]) * a[b];
      if (t == cplx(0.0)) continue;
      cplx s = 0.0;
      for (std::size_t k = 0; k < nz; ++k) {
        s += (std::popcount(b & g.z_masks[k]) & 1) ? -g.coeffs[k] : g.coeffs[k];
      }
      acc += s * t;
    }
    total += acc;
  }
  return total;
}

double expectation(const StateVector& state, const CompiledOperator& op) {
  if (!op.hermitian()) throw Error("expectation requires a Hermitian operator (real coefficients)");
  const cplx e = op.expectation(state);
  if (std::abs(e.imag()) >= 1e-10) {
    throw Error(fmt::format("expectation has imaginary residue {:.3e}", e.imag()));
  }
  return e.real();
}

double expectation(const StateVector& state, const QubitOperator& op) {
  return expectation(state, CompiledOperator(op));
}

ReadoutNoiseModel ReadoutNoiseModel::uniform(unsigned n_qubits, double p01, double p10) {
  ReadoutNoiseModel m{std::vector<double>(n_qubits, p01), std::vector<double>(n_qubits, p10)};
  m.validate(n_qubits);
  return m;
}

void ReadoutNoiseModel::validate(unsigned n_qubits) const {
  if (p01.size() != n_qubits || p10.size() != n_qubits) {
    throw Error("readout noise model width differs from the register");
  }
  for (unsigned q = 0; q < n_qubits; ++q) {
    if (!(p01[q] >= 0.0 && p01[q] <= 0.5 && p10[q] >= 0.0 && p10[q] <= 0.5)) {
      throw Error(fmt::format("readout probabilities on qubit {} must lie in [0, 0.5]", q));
    }
  }
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL))) {}

std::uint64_t CounterRng::next_u64() { return splitmix64(key_ + 0x9e3779b97f4a7c15ULL * counter_++); }

double CounterRng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double ShotResult::parity_mean() const {
  if (shots == 0) return 0.0;
  const std::uint64_t support = basis.support();
  double sum = 0.0;
  for (const auto& [outcome, n] : counts) sum += parity_sign(outcome & support) * static_cast<double>(n);
  return sum / static_cast<double>(shots);
}

ShotResult measure_pauli(const StateVector& state, const PauliString& basis, std::uint64_t shots,
                         std::uint64_t seed, const ReadoutNoiseModel* noise, bool twirl) {
  if (shots == 0) throw Error("shots must be positive");
  if (basis.n_qubits() != state.n_qubits()) throw Error("basis width differs from state width");
  const unsigned n = state.n_qubits();
  if (noise) noise->validate(n);

  StateVector rotated = state;
  for (unsigned q = 0; q < n; ++q) {
    const char c = basis.at(q);
    if (c == 'X') {
      apply_gate(rotated, {GateKind::H, q, 0, 0.0});
    } else if (c == 'Y') {
      apply_gate(rotated, {GateKind::Sdg, q, 0, 0.0});
      apply_gate(rotated, {GateKind::H, q, 0, 0.0});
    }
  }
  std::vector<double> cdf(rotated.dim());
  double acc = 0.0;
  for (std::size_t b = 0; b < cdf.size(); ++b) {
    acc += std::norm(rotated[b]);
    cdf[b] = acc;
  }

  ShotResult result{basis, shots, {}, seed};
  CounterRng rng(seed, 0);
  const std::uint64_t all = n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = rng.uniform() * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    std::uint64_t bits = static_cast<std::uint64_t>(it - cdf.begin());
    const std::uint64_t mask = twirl ? (rng.next_u64() & all) : 0;
    bits ^= mask;
    if (noise) {
      for (unsigned q = 0; q < n; ++q) {
        const bool one = (bits >> q) & 1U;
        const double p = one ? noise->p10[q] : noise->p01[q];
        if (rng.uniform() < p) bits ^= std::uint64_t{1} << q;
      }
    }
    bits ^= mask;
    ++result.counts[bits];
  }
  return result;
}

SampledEstimate sample_expectation(const StateVector& state, const QubitOperator& op,
                                   const SamplingOptions& options) {
  if (options.shots == 0) throw Error("shots must be positive");
  const QubitOperator h = op.simplify();
  if (!h.is_hermitian()) throw Error("sampled expectation requires a Hermitian operator");
  const ReadoutNoiseModel* noise = options.noise ? &*options.noise : nullptr;
  const StateVector zero(state.n_qubits());

  double estimate = 0.0;
  double variance = 0.0;
  std::uint64_t k = 0;
  for (const auto& [p, c] : h.terms()) {
    const double coeff = c.real();
    if (p.is_identity()) {
      estimate += coeff;
      continue;
    }
    const std::uint64_t term_seed = splitmix64(options.seed ^ splitmix64(2 * k));
    const ShotResult r = measure_pauli(state, p, options.shots, term_seed, noise, options.twirl);
    const double m = r.parity_mean();
    double mean = m;
    double var = (1.0 - m * m) / static_cast<double>(options.shots);
    if (options.twirl) {
      const std::uint64_t cal_seed = splitmix64(options.seed ^ splitmix64(2 * k + 1));
      const ShotResult cal = measure_pauli(zero, PauliString(p.n_qubits(), 0, p.support()),
                                           options.calibration_shots, cal_seed, noise, true);
      const double f = cal.parity_mean();
      if (std::abs(f) < 1e-3) throw Error("twirled calibration factor vanished; readout too noisy");
      const double var_f = (1.0 - f * f) / static_cast<double>(options.calibration_shots);
      mean = m / f;
      var = var / (f * f) + m * m * var_f / (f * f * f * f);
    }
    estimate += coeff * mean;
    variance += coeff * coeff * var;
    ++k;
  }
  return {estimate, std::sqrt(variance)};
}

}  // namespace vqepes
