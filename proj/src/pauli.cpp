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

#include "vqepes/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>
#include <sstream>

#include <fmt/format.h>

#include "vqepes/error.hpp"

namespace vqepes {

namespace {

std::uint64_t low_mask(unsigned n) {
  return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

void require_same_width(const PauliString& p, const PauliString& q) {
  if (p.n_qubits() != q.n_qubits()) {
    throw Error(fmt::format("Pauli qubit-count mismatch: {} vs {}",
                            p.n_qubits(), q.n_qubits()));
  }
}

void require_same_width(const QubitOperator& a, const QubitOperator& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw Error(fmt::format("operator qubit-count mismatch: {} vs {}",
                            a.n_qubits(), b.n_qubits()));
  }
}

std::string format_coeff(cplx c) {
  if (c.imag() == 0.0) return fmt::format("{:.17g}", c.real());
  return fmt::format("({:.17g},{:.17g})", c.real(), c.imag());
}

double parse_double(std::string_view s, std::size_t line) {
  // std::from_chars for double is available in libstdc++ 11.
  double v = 0.0;
  auto first = s.data();
  auto last = s.data() + s.size();
  if (!s.empty() && s.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) {
    throw ParseError(fmt::format("invalid number '{}'", s), line);
  }
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

cplx Phase::value() const {
  switch (power & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

PauliString::PauliString(unsigned n_qubits, std::uint64_t x_mask, std::uint64_t z_mask)
    : n_qubits_(n_qubits), x_(x_mask), z_(z_mask) {
  if (n_qubits > kMaxPauliQubits) {
    throw SizeError(fmt::format("Pauli string wider than {} qubits", kMaxPauliQubits));
  }
  if (((x_mask | z_mask) & ~low_mask(n_qubits)) != 0) {
    throw Error("Pauli mask has bits beyond n_qubits");
  }
}

PauliString PauliString::identity(unsigned n_qubits) { return {n_qubits, 0, 0}; }

PauliString PauliString::single(unsigned n_qubits, unsigned qubit, char pauli) {
  if (qubit >= n_qubits) throw Error(fmt::format("qubit {} out of range", qubit));
  const std::uint64_t bit = std::uint64_t{1} << qubit;
  switch (pauli) {
    case 'I': return {n_qubits, 0, 0};
    case 'X': return {n_qubits, bit, 0};
    case 'Y': return {n_qubits, bit, bit};
    case 'Z': return {n_qubits, 0, bit};
    default: throw Error(fmt::format("unknown Pauli letter '{}'", pauli));
  }
}

PauliString PauliString::from_dense(std::string_view word) {
  if (word.size() > kMaxPauliQubits) throw SizeError("Pauli word too long");
  std::uint64_t x = 0, z = 0;
  for (std::size_t q = 0; q < word.size(); ++q) {
    const std::uint64_t bit = std::uint64_t{1} << q;
    switch (word[q]) {
      case 'I': break;
      case 'X': x |= bit; break;
      case 'Y': x |= bit; z |= bit; break;
      case 'Z': z |= bit; break;
      default: throw ParseError(fmt::format("bad Pauli letter '{}'", word[q]), 0);
    }
  }
  return {static_cast<unsigned>(word.size()), x, z};
}

PauliString PauliString::from_sparse(std::string_view word, unsigned n_qubits) {
  std::uint64_t x = 0, z = 0;
  if (word == "I") word = {};
  std::size_t i = 0;
  while (i < word.size()) {
    const char letter = word[i++];
    std::size_t j = i;
    while (j < word.size() && std::isdigit(static_cast<unsigned char>(word[j]))) ++j;
    if (j == i) throw ParseError(fmt::format("missing qubit index in '{}'", word), 0);
    unsigned q = 0;
    std::from_chars(word.data() + i, word.data() + j, q);
    i = j;
    if (q >= n_qubits) throw ParseError(fmt::format("qubit {} out of range in '{}'", q, word), 0);
    const std::uint64_t bit = std::uint64_t{1} << q;
    if (((x | z) & bit) != 0) throw ParseError(fmt::format("qubit {} repeated in '{}'", q, word), 0);
    switch (letter) {
      case 'X': x |= bit; break;
      case 'Y': x |= bit; z |= bit; break;
      case 'Z': z |= bit; break;
      default: throw ParseError(fmt::format("bad Pauli letter '{}'", letter), 0);
    }
  }
  return {n_qubits, x, z};
}

unsigned PauliString::weight() const noexcept { return std::popcount(x_ | z_); }
unsigned PauliString::y_count() const noexcept { return std::popcount(x_ & z_); }

char PauliString::at(unsigned qubit) const {
  if (qubit >= n_qubits_) throw Error(fmt::format("qubit {} out of range", qubit));
  const bool x = (x_ >> qubit) & 1U;
  const bool z = (z_ >> qubit) & 1U;
  return x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
}

std::string PauliString::to_dense() const {
  std::string s(n_qubits_, 'I');
  for (unsigned q = 0; q < n_qubits_; ++q) s[q] = at(q);
  return s;
}

std::string PauliString::to_sparse() const {
  if (is_identity()) return "I";
  std::string s;
  for (unsigned q = 0; q < n_qubits_; ++q) {
    const char c = at(q);
    if (c != 'I') s += fmt::format("{}{}", c, q);
  }
  return s;
}

bool PauliOrder::operator()(const PauliString& a, const PauliString& b) const noexcept {
  if (a.n_qubits() != b.n_qubits()) return a.n_qubits() < b.n_qubits();
  if (a.z_mask() != b.z_mask()) return a.z_mask() < b.z_mask();
  return a.x_mask() < b.x_mask();
}

PauliProduct multiply(const PauliString& p, const PauliString& q) {
  require_same_width(p, q);
  // P = i^{|x&z|} X^x Z^z; moving Z^{zp} past X^{xq} costs (-1)^{|zp & xq|}.
  const std::uint64_t x = p.x_mask() ^ q.x_mask();
  const std::uint64_t z = p.z_mask() ^ q.z_mask();
  const int yp = std::popcount(p.x_mask() & p.z_mask());
  const int yq = std::popcount(q.x_mask() & q.z_mask());
  const int yr = std::popcount(x & z);
  const int swaps = std::popcount(p.z_mask() & q.x_mask());
  const int power = ((yp + yq - yr + 2 * swaps) % 4 + 4) % 4;
  return {PauliString(p.n_qubits(), x, z), Phase{static_cast<std::uint8_t>(power)}};
}

bool commutes(const PauliString& p, const PauliString& q) {
  require_same_width(p, q);
  const int s = std::popcount(p.x_mask() & q.z_mask()) + std::popcount(p.z_mask() & q.x_mask());
  return s % 2 == 0;
}

YParity y_parity(const PauliString& p) {
  return p.y_count() % 2 == 0 ? YParity::even : YParity::odd;
}

QubitOperator::QubitOperator(unsigned n_qubits, std::vector<Term> terms)
    : n_qubits_(n_qubits), terms_(std::move(terms)) {
  for (const auto& [p, c] : terms_) {
    if (p.n_qubits() != n_qubits_) throw Error("term width differs from operator width");
  }
}

QubitOperator QubitOperator::constant(unsigned n_qubits, cplx value) {
  QubitOperator op(n_qubits);
  op.add(PauliString::identity(n_qubits), value);
  return op;
}

void QubitOperator::add(const PauliString& p, cplx coeff) {
  if (p.n_qubits() != n_qubits_) {
    throw Error(fmt::format("term width {} differs from operator width {}", p.n_qubits(), n_qubits_));
  }
  terms_.emplace_back(p, coeff);
}

void QubitOperator::add(const QubitOperator& other, cplx scale) {
  require_same_width(*this, other);
  terms_.reserve(terms_.size() + other.terms_.size());
  for (const auto& [p, c] : other.terms_) terms_.emplace_back(p, scale * c);
}

QubitOperator QubitOperator::simplify() const {
  std::vector<Term> sorted = terms_;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Term& a, const Term& b) { return PauliOrder{}(a.first, b.first); });
  std::vector<Term> merged;
  merged.reserve(sorted.size());
  for (const auto& t : sorted) {
    if (!merged.empty() && merged.back().first == t.first) {
      merged.back().second += t.second;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const Term& t) { return std::abs(t.second) < kPruneThreshold; });
  return QubitOperator(n_qubits_, std::move(merged));
}

cplx QubitOperator::constant_term() const {
  cplx c = 0.0;
  for (const auto& [p, v] : terms_) {
    if (p.is_identity()) c += v;
  }
  return c;
}

bool QubitOperator::is_hermitian(double tol) const {
  const QubitOperator s = simplify();
  return std::all_of(s.terms_.begin(), s.terms_.end(),
                     [tol](const Term& t) { return std::abs(t.second.imag()) <= tol; });
}

QubitOperator QubitOperator::adjoint() const {
  QubitOperator out(n_qubits_);
  out.terms_.reserve(terms_.size());
  for (const auto& [p, c] : terms_) out.terms_.emplace_back(p, std::conj(c));
  return out;
}

QubitOperator operator+(const QubitOperator& a, const QubitOperator& b) {
  QubitOperator out = a;
  out.add(b);
  return out.simplify();
}

QubitOperator operator-(const QubitOperator& a, const QubitOperator& b) {
  QubitOperator out = a;
  out.add(b, -1.0);
  return out.simplify();
}

QubitOperator operator*(const QubitOperator& a, const QubitOperator& b) {
  require_same_width(a, b);
  QubitOperator out(a.n_qubits_);
  out.terms_.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [pa, ca] : a.terms_) {
    for (const auto& [pb, cb] : b.terms_) {
      const auto [r, phase] = multiply(pa, pb);
      out.terms_.emplace_back(r, ca * cb * phase.value());
    }
  }
  return out.simplify();
}

QubitOperator operator*(cplx s, const QubitOperator& a) {
  QubitOperator out(a.n_qubits_);
  out.add(a, s);
  return out;
}

std::string QubitOperator::to_string() const {
  std::string out;
  for (const auto& [p, c] : terms_) {
    out += format_coeff(c);
    out += " * ";
    out += p.to_dense();
    out += '\n';
  }
  return out;
}

QubitOperator QubitOperator::parse(std::string_view text) {
  std::vector<Term> terms;
  std::optional<unsigned> width;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view sv = trim(line);
    if (sv.empty() || sv.front() == '#') continue;
    const auto star = sv.find('*');
    if (star == std::string_view::npos) throw ParseError("expected '<coeff> * <word>'", line_no);
    const std::string_view coeff_text = trim(sv.substr(0, star));
    const std::string_view word = trim(sv.substr(star + 1));
    cplx coeff;
    if (!coeff_text.empty() && coeff_text.front() == '(') {
      const auto comma = coeff_text.find(',');
      if (comma == std::string_view::npos || coeff_text.back() != ')') {
        throw ParseError("bad complex coefficient", line_no);
      }
      coeff = {parse_double(trim(coeff_text.substr(1, comma - 1)), line_no),
               parse_double(trim(coeff_text.substr(comma + 1, coeff_text.size() - comma - 2)), line_no)};
    } else {
      coeff = parse_double(coeff_text, line_no);
    }
    PauliString p;
    try {
      p = PauliString::from_dense(word);
    } catch (const ParseError& e) {
      throw ParseError(e.detail(), line_no);
    }
    if (width && *width != p.n_qubits()) throw ParseError("inconsistent word length", line_no);
    width = p.n_qubits();
    terms.emplace_back(p, coeff);
  }
  return QubitOperator(width.value_or(0), std::move(terms));
}

QubitOperator anticommutator(const QubitOperator& a, const QubitOperator& b) {
  return a * b + b * a;
}

QubitOperator commutator(const QubitOperator& a, const QubitOperator& b) {
  return a * b - b * a;
}

Eigen::MatrixXcd to_matrix(const PauliString& p) {
  QubitOperator op(p.n_qubits());
  op.add(p, 1.0);
  return to_matrix(op);
}

Eigen::MatrixXcd to_matrix(const QubitOperator& op) {
  const unsigned n = op.n_qubits();
  if (n > kMaxDenseQubits) {
    throw SizeError(fmt::format("dense matrix requested for {} qubits (limit {})", n, kMaxDenseQubits));
  }
  const std::size_t dim = std::size_t{1} << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [p, c] : op.terms()) {
    const cplx base = c * Phase{static_cast<std::uint8_t>(p.y_count() & 3)}.value();
    for (std::size_t b = 0; b < dim; ++b) {
      const double sign = (std::popcount(b & p.z_mask()) & 1) ? -1.0 : 1.0;
      m(b ^ p.x_mask(), b) += sign * base;
    }
  }
  return m;
}

}  // namespace vqepes
