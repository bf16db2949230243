// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>

#include "focksep/core.hpp"

namespace focksep {

/// Sparse state vector over the occupation-number basis of M modes.
///
/// Basis convention: |n1,...,nM> = (ad_1)^n1 ... (ad_M)^nM |0> / sqrt(prod nj!),
/// creators written in ascending mode order. All fermionic phases in the
/// library derive from this ordering.
///
/// Values are immutable in spirit: every operation returns a new vector.
/// Amplitudes below kAmplitudePruneCutoff are dropped on insertion.
class FockVector {
 public:
  // Descending lexicographic key order; matches sector enumeration.
  using AmplitudeMap = std::map<Occupation, Complex, std::greater<Occupation>>;

  FockVector(Statistics stats, int num_modes)
      : stats_(stats), num_modes_(num_modes) {
    if (num_modes < 1) throw std::invalid_argument("FockVector: need at least one mode");
  }

  Statistics statistics() const { return stats_; }
  int num_modes() const { return num_modes_; }
  const AmplitudeMap& amplitudes() const { return amps_; }
  bool is_zero() const { return amps_.empty(); }

  Complex amplitude(const Occupation& occ) const {
    auto it = amps_.find(occ);
    return it == amps_.end() ? Complex(0.0, 0.0) : it->second;
  }

  void add_amplitude(const Occupation& occ, Complex value) {
    validate_occupation(occ);
    auto [it, inserted] = amps_.try_emplace(occ, value);
    if (!inserted) it->second += value;
    if (std::abs(it->second) < kAmplitudePruneCutoff) amps_.erase(it);
  }

  void set_amplitude(const Occupation& occ, Complex value) {
    validate_occupation(occ);
    if (std::abs(value) < kAmplitudePruneCutoff) {
      amps_.erase(occ);
    } else {
      amps_[occ] = value;
    }
  }

  FockVector& operator+=(const FockVector& other) {
    require_compatible(other);
    for (const auto& [occ, amp] : other.amps_) add_amplitude(occ, amp);
    return *this;
  }

  FockVector& operator-=(const FockVector& other) {
    require_compatible(other);
    for (const auto& [occ, amp] : other.amps_) add_amplitude(occ, -amp);
    return *this;
  }

  FockVector& operator*=(Complex scale) {
    if (std::abs(scale) < kAmplitudePruneCutoff) {
      amps_.clear();
      return *this;
    }
    for (auto& [occ, amp] : amps_) amp *= scale;
    return *this;
  }

  friend FockVector operator+(FockVector a, const FockVector& b) { return a += b; }
  friend FockVector operator-(FockVector a, const FockVector& b) { return a -= b; }
  friend FockVector operator*(Complex s, FockVector v) { return v *= s; }
  friend FockVector operator*(FockVector v, Complex s) { return v *= s; }

  double norm_squared() const {
    double acc = 0.0;
    for (const auto& [occ, amp] : amps_) acc += std::norm(amp);
    return acc;
  }

  double norm() const { return std::sqrt(norm_squared()); }

  FockVector normalized() const {
    double n = norm();
    if (n == 0.0) throw std::invalid_argument("cannot normalize the zero vector");
    FockVector out = *this;
    out *= Complex(1.0 / n, 0.0);
    return out;
  }

  /// Total particle numbers present in the support.
  std::set<int> sectors() const {
    std::set<int> out;
    for (const auto& [occ, amp] : amps_) out.insert(total_occupation(occ));
    return out;
  }

  int max_total_occupation() const {
    int best = 0;
    for (const auto& [occ, amp] : amps_) best = std::max(best, total_occupation(occ));
    return best;
  }

  void require_compatible(const FockVector& other) const {
    if (stats_ != other.stats_) throw std::invalid_argument("statistics mismatch");
    if (num_modes_ != other.num_modes_) throw std::invalid_argument("mode count mismatch");
  }

 private:
  void validate_occupation(const Occupation& occ) const {
    if (static_cast<int>(occ.size()) != num_modes_)
      throw std::invalid_argument("occupation length does not match mode count");
    for (int n : occ) {
      if (n < 0) throw std::invalid_argument("negative occupation");
      if (stats_ == Statistics::Fermi && n > 1)
        throw std::invalid_argument("fermionic occupation exceeds 1");
    }
  }

  Statistics stats_;
  int num_modes_;
  AmplitudeMap amps_;
};

inline FockVector vacuum(int num_modes, Statistics stats) {
  FockVector v(stats, num_modes);
  v.set_amplitude(Occupation(static_cast<std::size_t>(num_modes), 0), Complex(1.0, 0.0));
  return v;
}

namespace detail {

inline void check_mode(int mode, const FockVector& v) {
  if (mode < 1 || mode > v.num_modes()) throw std::out_of_range("mode index out of range");
}

inline int jordan_wigner_sign(const Occupation& occ, int mode_index0) {
  int count = 0;
  for (int j = 0; j < mode_index0; ++j) count += occ[static_cast<std::size_t>(j)];
  return (count % 2 == 0) ? 1 : -1;
}

}  // namespace detail

/// ad_i |...n_i...>: bosons gain sqrt(n_i+1), fermions pick up the
/// ordering phase (-1)^(sum_{j<i} n_j) and vanish on doubly filled modes.
inline FockVector create(int mode, const FockVector& v) {
  detail::check_mode(mode, v);
  const int i = mode - 1;
  FockVector out(v.statistics(), v.num_modes());
  for (const auto& [occ, amp] : v.amplitudes()) {
    Occupation next = occ;
    if (v.statistics() == Statistics::Fermi) {
      if (occ[static_cast<std::size_t>(i)] == 1) continue;
      next[static_cast<std::size_t>(i)] = 1;
      out.add_amplitude(next, amp * static_cast<double>(detail::jordan_wigner_sign(occ, i)));
    } else {
      const int n = occ[static_cast<std::size_t>(i)];
      next[static_cast<std::size_t>(i)] = n + 1;
      out.add_amplitude(next, amp * std::sqrt(static_cast<double>(n + 1)));
    }
  }
  return out;
}

/// a_i, the adjoint of create(i, .).
inline FockVector annihilate(int mode, const FockVector& v) {
  detail::check_mode(mode, v);
  const int i = mode - 1;
  FockVector out(v.statistics(), v.num_modes());
  for (const auto& [occ, amp] : v.amplitudes()) {
    const int n = occ[static_cast<std::size_t>(i)];
    if (n == 0) continue;
    Occupation next = occ;
    next[static_cast<std::size_t>(i)] = n - 1;
    if (v.statistics() == Statistics::Fermi) {
      out.add_amplitude(next, amp * static_cast<double>(detail::jordan_wigner_sign(occ, i)));
    } else {
      out.add_amplitude(next, amp * std::sqrt(static_cast<double>(n)));
    }
  }
  return out;
}

/// sum_{j in modes} ad_j a_j; occupation basis states are eigenstates.
inline FockVector number_operator(const FockVector& v, const std::vector<int>& modes) {
  for (int m : modes) detail::check_mode(m, v);
  FockVector out(v.statistics(), v.num_modes());
  for (const auto& [occ, amp] : v.amplitudes()) {
    int count = 0;
    for (int m : modes) count += occ[static_cast<std::size_t>(m - 1)];
    if (count != 0) out.add_amplitude(occ, amp * static_cast<double>(count));
  }
  return out;
}

/// <v|w>, conjugate-linear in the first argument.
inline Complex inner_product(const FockVector& v, const FockVector& w) {
  v.require_compatible(w);
  const auto& a = v.amplitudes();
  const auto& b = w.amplitudes();
  Complex acc(0.0, 0.0);
  if (a.size() <= b.size()) {
    for (const auto& [occ, amp] : a) {
      auto it = b.find(occ);
      if (it != b.end()) acc += std::conj(amp) * it->second;
    }
  } else {
    for (const auto& [occ, amp] : b) {
      auto it = a.find(occ);
      if (it != a.end()) acc += std::conj(it->second) * amp;
    }
  }
  return acc;
}

namespace detail {

inline void enumerate_rec(int modes_left, int particles_left, int cap, Occupation& prefix,
                          std::vector<Occupation>& out) {
  if (modes_left == 0) {
    if (particles_left == 0) out.push_back(prefix);
    return;
  }
  const int top = std::min(particles_left, cap);
  for (int n = top; n >= 0; --n) {
    prefix.push_back(n);
    enumerate_rec(modes_left - 1, particles_left - n, cap, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace detail

/// Complete, duplicate-free listing of the N-particle occupation vectors
/// on M modes, highest-first lexicographic: (2,0) before (1,1) before (0,2).
inline std::vector<Occupation> enumerate_sector(int num_modes, int num_particles, Statistics stats) {
  if (num_modes < 1) throw std::invalid_argument("enumerate_sector: need at least one mode");
  if (num_particles < 0) throw std::invalid_argument("enumerate_sector: negative particle number");
  if (stats == Statistics::Fermi && num_particles > num_modes)
    throw std::invalid_argument("enumerate_sector: more fermions than modes");
  std::vector<Occupation> out;
  Occupation prefix;
  prefix.reserve(static_cast<std::size_t>(num_modes));
  const int cap = stats == Statistics::Fermi ? 1 : num_particles;
  detail::enumerate_rec(num_modes, num_particles, cap, prefix, out);
  return out;
}

}  // namespace focksep
