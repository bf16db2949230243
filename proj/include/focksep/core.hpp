// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace focksep {

using Complex = std::complex<double>;

/// Particle statistics of a mode algebra: commuting (Bose) or
/// anticommuting (Fermi) creation/annihilation pairs.
enum class Statistics { Bose, Fermi };

inline const char* to_string(Statistics s) {
  return s == Statistics::Bose ? "bose" : "fermi";
}

/// Per-mode particle counts. Index 0 holds mode 1; modes are 1-based
/// throughout the public API.
using Occupation = std::vector<int>;

inline int total_occupation(const Occupation& occ) {
  return std::accumulate(occ.begin(), occ.end(), 0);
}

/// Amplitudes below this magnitude are dropped after operator
/// applications; far below every decision tolerance in the library.
inline constexpr double kAmplitudePruneCutoff = 1e-14;

/// Default relative tolerance for rank/verdict decisions.
inline constexpr double kDefaultTol = 1e-9;

/// Syntax error in expression or state input; `offset` is the byte
/// position in the source text.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t offset)
      : std::runtime_error(message + " (at byte " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Raised when a fermionic state lacks definite particle-number parity
/// inside block 1 of a bipartition. The mode-separability criteria are
/// only formulated for states that stay pure on the even subalgebras,
/// which this parity guarantees.
class FermiParityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a combinatorial search exceeds its configured cap.
class BudgetExceededError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when applying an operator would push a state beyond a
/// configured particle-number ceiling.
class SectorOverflowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace focksep
