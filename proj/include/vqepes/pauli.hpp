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

#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace vqepes {

using cplx = std::complex<double>;

/// Maximum register width representable by the 64-bit symplectic masks.
inline constexpr unsigned kMaxPauliQubits = 64;

/// Dense-matrix conversions refuse operators wider than this.
inline constexpr unsigned kMaxDenseQubits = 12;

/// Coefficients below this magnitude are dropped by QubitOperator::simplify().
inline constexpr double kPruneThreshold = 1e-12;

/// Power of i: the phase i^k for k in {0,1,2,3}.
struct Phase {
  std::uint8_t power = 0;

  cplx value() const;
  friend bool operator==(Phase, Phase) = default;
};

/// Tensor product of single-qubit Paulis in symplectic form.
///
/// Qubit i carries (x_i, z_i): (1,0) = X, (0,1) = Z, (1,1) = Y, (0,0) = I.
/// The string is phase free; as an operator it is X^x Z^z times i^{|x&z|}.
class PauliString {
 public:
  PauliString() = default;
  PauliString(unsigned n_qubits, std::uint64_t x_mask, std::uint64_t z_mask);

  static PauliString identity(unsigned n_qubits);
  static PauliString single(unsigned n_qubits, unsigned qubit, char pauli);

  /// Dense word, one letter per qubit starting at qubit 0: "XIYZ".
  static PauliString from_dense(std::string_view word);
  /// Sparse word: "X0Y1Z5"; "I" or "" is the identity.
  static PauliString from_sparse(std::string_view word, unsigned n_qubits);

  unsigned n_qubits() const noexcept { return n_qubits_; }
  std::uint64_t x_mask() const noexcept { return x_; }
  std::uint64_t z_mask() const noexcept { return z_; }
  std::uint64_t support() const noexcept { return x_ | z_; }
  unsigned weight() const noexcept;
  unsigned y_count() const noexcept;
  bool is_identity() const noexcept { return (x_ | z_) == 0; }

  /// 'I', 'X', 'Y' or 'Z'.
  char at(unsigned qubit) const;

  std::string to_dense() const;
  std::string to_sparse() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  unsigned n_qubits_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
};

/// Canonical order: (n_qubits, z_mask, x_mask) compared as unsigned integers.
struct PauliOrder {
  bool operator()(const PauliString& a, const PauliString& b) const noexcept;
};

struct PauliProduct {
  PauliString string;
  Phase phase;
};

/// p * q = phase * r as matrices.
PauliProduct multiply(const PauliString& p, const PauliString& q);

bool commutes(const PauliString& p, const PauliString& q);

enum class YParity { even, odd };
YParity y_parity(const PauliString& p);

/// Complex-weighted sum of Pauli strings.
///
/// Terms are kept in insertion order until simplify() merges duplicates,
/// prunes |c| < kPruneThreshold and sorts canonically.
class QubitOperator {
 public:
  using Term = std::pair<PauliString, cplx>;

  QubitOperator() = default;
  explicit QubitOperator(unsigned n_qubits) : n_qubits_(n_qubits) {}
  QubitOperator(unsigned n_qubits, std::vector<Term> terms);

  static QubitOperator constant(unsigned n_qubits, cplx value);

  unsigned n_qubits() const noexcept { return n_qubits_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

  void add(const PauliString& p, cplx coeff);
  void add(const QubitOperator& other, cplx scale = 1.0);

  QubitOperator simplify() const;

  /// Coefficient of the identity string after merging duplicates.
  cplx constant_term() const;

  /// Hermitian for a Pauli sum iff every merged coefficient is real.
  bool is_hermitian(double tol = 1e-10) const;

  QubitOperator adjoint() const;

  friend QubitOperator operator+(const QubitOperator& a, const QubitOperator& b);
  friend QubitOperator operator-(const QubitOperator& a, const QubitOperator& b);
  friend QubitOperator operator*(const QubitOperator& a, const QubitOperator& b);
  friend QubitOperator operator*(cplx s, const QubitOperator& a);

  /// One term per line: "1.5 * XIYZ" or "(0.5,-1) * XX".
  std::string to_string() const;
  static QubitOperator parse(std::string_view text);

 private:
  unsigned n_qubits_ = 0;
  std::vector<Term> terms_;
};

/// {A, B} = AB + BA, simplified.
QubitOperator anticommutator(const QubitOperator& a, const QubitOperator& b);
/// [A, B] = AB - BA, simplified.
QubitOperator commutator(const QubitOperator& a, const QubitOperator& b);

/// Little-endian basis (bit i of the row/column index is qubit i).
Eigen::MatrixXcd to_matrix(const PauliString& p);
Eigen::MatrixXcd to_matrix(const QubitOperator& op);

}  // namespace vqepes
