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

#include "vqepes/fermion.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <numeric>

#include <fmt/format.h>

#include "vqepes/error.hpp"

namespace vqepes {

namespace {

using Term = QubitOperator::Term;

// Orbital indices sorted by ascending orbital energy (stable); file order
// when the fixture carries no energies.
std::vector<int> energy_order(const FcidumpData& data) {
  std::vector<int> order(data.n_orb);
  std::iota(order.begin(), order.end(), 0);
  if (!data.orbital_energies.empty()) {
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return data.orbital_energies[a] < data.orbital_energies[b];
    });
  }
  return order;
}

// JW image of a single ladder operator as two (string, coeff) terms.
std::pair<Term, Term> jw_ladder(const LadderOp& op, unsigned n) {
  const std::uint64_t bit = std::uint64_t{1} << op.mode;
  const std::uint64_t tail = bit - 1;  // Z on all lower modes
  const PauliString x(n, bit, tail);
  const PauliString y(n, bit, tail | bit);
  // a+ = (X - iY)/2, a = (X + iY)/2, each times the Z tail.
  const cplx ycoef = op.create ? cplx(0.0, -0.5) : cplx(0.0, 0.5);
  return {Term{x, 0.5}, Term{y, ycoef}};
}

}  // namespace

ActiveSpaceSpec ActiveSpaceSpec::parse(std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) {
    throw Error(fmt::format("active space '{}' must be 'electrons,orbitals'", text));
  }
  auto as_int = [&](std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || v < 0) {
      throw Error(fmt::format("active space '{}' must be 'electrons,orbitals'", text));
    }
    return v;
  };
  ActiveSpaceSpec spec;
  spec.n_active_elec = as_int(text.substr(0, comma));
  spec.n_active_orb = as_int(text.substr(comma + 1));
  return spec;
}

ActiveSpaceSpec ActiveSpaceSpec::full(const FcidumpData& data) {
  return {data.n_elec, data.n_orb, HomoLumoWindow{}};
}

ActiveSpaceIntegrals fold_active_space(const FcidumpData& data, const ActiveSpaceSpec& spec) {
  if (spec.n_active_orb <= 0 || spec.n_active_orb > data.n_orb) {
    throw Error(fmt::format("active window of {} orbitals exceeds the {} available",
                            spec.n_active_orb, data.n_orb));
  }
  if (spec.n_active_elec > 2 * spec.n_active_orb) {
    throw Error(fmt::format("{} active electrons do not fit in {} orbitals",
                            spec.n_active_elec, spec.n_active_orb));
  }
  const int frozen_elec = data.n_elec - spec.n_active_elec;
  if (frozen_elec < 0) {
    throw Error(fmt::format("{} active electrons exceed the {} in the system",
                            spec.n_active_elec, data.n_elec));
  }
  if (frozen_elec % 2 != 0) {
    throw Error(fmt::format("freezing {} electrons leaves a fractional number of doubly "
                            "occupied orbitals", frozen_elec));
  }
  const int n_frozen = frozen_elec / 2;

  const std::vector<int> order = energy_order(data);
  std::vector<int> active;
  std::vector<int> frozen;
  if (const auto* ex = std::get_if<ExplicitOrbitals>(&spec.selection)) {
    active = ex->indices;
    if (static_cast<int>(active.size()) != spec.n_active_orb) {
      throw Error("explicit orbital list length differs from n_active_orb");
    }
    for (int a : active) {
      if (a < 0 || a >= data.n_orb) throw Error(fmt::format("active orbital {} out of range", a));
    }
    for (int o : order) {
      if (static_cast<int>(frozen.size()) == n_frozen) break;
      if (std::find(active.begin(), active.end(), o) == active.end()) frozen.push_back(o);
    }
    if (static_cast<int>(frozen.size()) != n_frozen) throw Error("not enough orbitals to freeze");
  } else {
    if (n_frozen + spec.n_active_orb > data.n_orb) {
      throw Error(fmt::format("window [{}, {}) exceeds the {} orbitals", n_frozen,
                              n_frozen + spec.n_active_orb, data.n_orb));
    }
    frozen.assign(order.begin(), order.begin() + n_frozen);
    active.assign(order.begin() + n_frozen, order.begin() + n_frozen + spec.n_active_orb);
  }

  const auto& h1 = data.h1;
  const auto& h2 = data.h2;
  double e_core = data.e_core;
  for (int f : frozen) {
    e_core += 2.0 * h1(f, f);
    for (int g : frozen) e_core += 2.0 * h2(f, f, g, g) - h2(f, g, g, f);
  }

  const int n = spec.n_active_orb;
  ActiveSpaceIntegrals out;
  out.h1 = OneBody(n);
  out.h2 = ElectronRepulsion(n);
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      const int P = active[p];
      const int Q = active[q];
      double v = h1(P, Q);
      for (int f : frozen) v += 2.0 * h2(P, Q, f, f) - h2(P, f, f, Q);
      out.h1(p, q) = v;
      for (int r = 0; r < n; ++r) {
        for (int s = 0; s < n; ++s) out.h2(p, q, r, s) = h2(P, Q, active[r], active[s]);
      }
    }
  }
  out.e_core = e_core;
  out.n_elec = spec.n_active_elec;
  out.active_orbitals = std::move(active);
  out.frozen_orbitals = std::move(frozen);
  return out;
}

ActiveSpaceIntegrals full_space(const FcidumpData& data) {
  ActiveSpaceIntegrals out;
  out.h1 = data.h1;
  out.h2 = data.h2;
  out.e_core = data.e_core;
  out.n_elec = data.n_elec;
  out.active_orbitals.resize(data.n_orb);
  std::iota(out.active_orbitals.begin(), out.active_orbitals.end(), 0);
  return out;
}

FermionOperator FermionOperator::adjoint() const {
  FermionOperator out;
  out.n_modes = n_modes;
  out.terms.reserve(terms.size());
  for (const auto& t : terms) {
    std::vector<LadderOp> ops(t.ops.rbegin(), t.ops.rend());
    for (auto& o : ops) o.create = !o.create;
    out.terms.push_back({std::move(ops), std::conj(t.coeff)});
  }
  return out;
}

FermionOperator build_hamiltonian(const OneBody& h1, const ElectronRepulsion& h2, double e_core) {
  const int n = h1.n_orb();
  FermionOperator op;
  op.n_modes = 2 * n;
  if (e_core != 0.0) op.add({}, e_core);
  constexpr double tiny = 1e-14;
  for (int spin = 0; spin < 2; ++spin) {
    for (int p = 0; p < n; ++p) {
      for (int q = 0; q < n; ++q) {
        if (std::abs(h1(p, q)) < tiny) continue;
        op.add({cre(spin_orbital(p, spin, n)), ann(spin_orbital(q, spin, n))}, h1(p, q));
      }
    }
  }
  // 1/2 (pq|rs) a+_{p s1} a+_{r s2} a_{s s2} a_{q s1}
  for (int s1 = 0; s1 < 2; ++s1) {
    for (int s2 = 0; s2 < 2; ++s2) {
      for (int p = 0; p < n; ++p) {
        for (int q = 0; q < n; ++q) {
          for (int r = 0; r < n; ++r) {
            for (int s = 0; s < n; ++s) {
              const double v = h2(p, q, r, s);
              if (std::abs(v) < tiny) continue;
              const int P = spin_orbital(p, s1, n);
              const int Q = spin_orbital(q, s1, n);
              const int R = spin_orbital(r, s2, n);
              const int S = spin_orbital(s, s2, n);
              if (P == R || Q == S) continue;
              op.add({cre(P), cre(R), ann(S), ann(Q)}, 0.5 * v);
            }
          }
        }
      }
    }
  }
  return op;
}

QubitOperator jordan_wigner(const FermionOperator& op) {
  if (op.n_modes > static_cast<int>(kMaxPauliQubits)) throw SizeError("too many fermionic modes");
  const auto n = static_cast<unsigned>(op.n_modes);
  std::vector<Term> all;
  std::vector<Term> cur;
  std::vector<Term> next;
  for (const auto& t : op.terms) {
    cur.assign(1, Term{PauliString::identity(n), t.coeff});
    for (const auto& l : t.ops) {
      if (l.mode < 0 || l.mode >= op.n_modes) throw Error(fmt::format("mode {} out of range", l.mode));
      const auto [a, b] = jw_ladder(l, n);
      next.clear();
      for (const auto& [p, c] : cur) {
        for (const Term* f : {&a, &b}) {
          const auto [r, ph] = multiply(p, f->first);
          next.emplace_back(r, c * f->second * ph.value());
        }
      }
      std::swap(cur, next);
    }
    all.insert(all.end(), cur.begin(), cur.end());
  }
  return QubitOperator(n, std::move(all)).simplify();
}

std::uint64_t hf_reference(int n_elec, int n_spin_orb) {
  if (n_elec < 0 || n_spin_orb < 0 || n_spin_orb % 2 != 0) {
    throw Error("hf_reference needs a non-negative electron count and an even mode count");
  }
  if (n_elec > n_spin_orb) {
    throw Error(fmt::format("{} electrons exceed {} spin orbitals", n_elec, n_spin_orb));
  }
  const int n = n_spin_orb / 2;
  const int n_alpha = (n_elec + 1) / 2;
  const int n_beta = n_elec / 2;
  if (n_alpha > n) throw Error("alpha block overfilled");
  std::uint64_t bits = 0;
  for (int i = 0; i < n_alpha; ++i) bits |= std::uint64_t{1} << i;
  for (int i = 0; i < n_beta; ++i) bits |= std::uint64_t{1} << (n + i);
  return bits;
}

double determinant_energy(const OneBody& h1, const ElectronRepulsion& h2, double e_core,
                          std::uint64_t occupation) {
  const int n = h1.n_orb();
  std::vector<std::pair<int, int>> occ;  // (spatial, spin)
  for (int m = 0; m < 2 * n; ++m) {
    if ((occupation >> m) & 1U) occ.emplace_back(m % n, m / n);
  }
  double e = e_core;
  for (const auto& [i, si] : occ) e += h1(i, i);
  for (const auto& [i, si] : occ) {
    for (const auto& [j, sj] : occ) {
      e += 0.5 * h2(i, i, j, j);
      if (si == sj) e -= 0.5 * h2(i, j, j, i);
    }
  }
  return e;
}

MolecularProblem make_problem(const ActiveSpaceIntegrals& integrals) {
  MolecularProblem p;
  p.n_qubits = 2 * integrals.n_orb();
  p.n_elec = integrals.n_elec;
  p.e_core = integrals.e_core;
  p.reference = hf_reference(integrals.n_elec, p.n_qubits);
  p.hamiltonian = jordan_wigner(build_hamiltonian(integrals.h1, integrals.h2, integrals.e_core));
  p.hf_energy = determinant_energy(integrals.h1, integrals.h2, integrals.e_core, p.reference);
  return p;
}

}  // namespace vqepes
