// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "focksep/core.hpp"
#include "focksep/op_expr.hpp"

namespace focksep {

/// One normal-ordered monomial: coeff * ad(c1)ad(c2)... * a(a1)a(a2)...
/// with both mode lists sorted ascending and written left-to-right.
struct NormalTerm {
  Complex coeff{0.0, 0.0};
  std::vector<int> creators;
  std::vector<int> annihilators;

  int degree() const { return static_cast<int>(creators.size() + annihilators.size()); }
};

/// Sum of normal-ordered monomials, sorted by (creators, annihilators).
struct NormalForm {
  Statistics stats;
  std::vector<NormalTerm> terms;
};

namespace detail {

struct OpSymbol {
  bool dagger;
  int mode;
};

using Word = std::vector<OpSymbol>;
using MonomialKey = std::pair<std::vector<int>, std::vector<int>>;
using TermMap = std::map<MonomialKey, Complex>;

inline constexpr std::size_t kMaxExpandedWords = 1u << 22;

/// Expand an AST into a flat list of (coefficient, operator word) pairs.
inline void expand_words(const OpExprPtr& e, std::vector<std::pair<Complex, Word>>& out) {
  switch (e->kind) {
    case OpExpr::Kind::Scalar:
      out.push_back({e->scalar, {}});
      return;
    case OpExpr::Kind::Create:
      out.push_back({Complex(1.0, 0.0), {OpSymbol{true, e->mode}}});
      return;
    case OpExpr::Kind::Annihilate:
      out.push_back({Complex(1.0, 0.0), {OpSymbol{false, e->mode}}});
      return;
    case OpExpr::Kind::Sum: {
      for (const auto& c : e->children) {
        std::vector<std::pair<Complex, Word>> part;
        expand_words(c, part);
        out.insert(out.end(), part.begin(), part.end());
        if (out.size() > kMaxExpandedWords) throw std::runtime_error("expression expansion too large");
      }
      return;
    }
    case OpExpr::Kind::Product: {
      std::vector<std::pair<Complex, Word>> acc{{Complex(1.0, 0.0), {}}};
      for (const auto& c : e->children) {
        std::vector<std::pair<Complex, Word>> part;
        expand_words(c, part);
        std::vector<std::pair<Complex, Word>> next;
        next.reserve(acc.size() * part.size());
        for (const auto& [ca, wa] : acc) {
          for (const auto& [cb, wb] : part) {
            Word w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            next.push_back({ca * cb, std::move(w)});
          }
        }
        acc = std::move(next);
        if (acc.size() > kMaxExpandedWords) throw std::runtime_error("expression expansion too large");
      }
      out.insert(out.end(), acc.begin(), acc.end());
      return;
    }
    case OpExpr::Kind::Power: {
      std::vector<OpExprPtr> copies(static_cast<std::size_t>(e->exponent), e->children[0]);
      if (copies.empty()) {
        out.push_back({Complex(1.0, 0.0), {}});
        return;
      }
      expand_words(ops::product(std::move(copies)), out);
      return;
    }
  }
}

/// Insertion sort that reports permutation parity; detects repeats.
inline bool sort_with_parity(std::vector<int>& modes, int& sign_flips) {
  for (std::size_t i = 1; i < modes.size(); ++i) {
    for (std::size_t j = i; j > 0 && modes[j] < modes[j - 1]; --j) {
      std::swap(modes[j], modes[j - 1]);
      ++sign_flips;
    }
  }
  for (std::size_t i = 1; i < modes.size(); ++i)
    if (modes[i] == modes[i - 1]) return false;
  return true;
}

inline void add_term(TermMap& map, MonomialKey key, Complex coeff) {
  auto [it, inserted] = map.try_emplace(std::move(key), coeff);
  if (!inserted) it->second += coeff;
  if (std::abs(it->second) < kAmplitudePruneCutoff) map.erase(it);
}

/// Canonicalize a word whose annihilators already sit right of all
/// creators: sort each group ascending (tracking fermionic parity).
inline void canonicalize_word(Complex coeff, const Word& word, Statistics stats, TermMap& out) {
  std::vector<int> creators, annihilators;
  for (const auto& s : word) (s.dagger ? creators : annihilators).push_back(s.mode);
  if (stats == Statistics::Fermi) {
    int flips = 0;
    if (!sort_with_parity(creators, flips)) return;      // ad_i^2 = 0
    if (!sort_with_parity(annihilators, flips)) return;  // a_i^2 = 0
    if (flips % 2 == 1) coeff = -coeff;
  } else {
    std::sort(creators.begin(), creators.end());
    std::sort(annihilators.begin(), annihilators.end());
  }
  add_term(out, {std::move(creators), std::move(annihilators)}, coeff);
}

/// Rewrite a_i ad_j -> (+/-) ad_j a_i + delta_ij until normal ordered.
/// Terminates: each step lowers (degree, annihilator-creator inversions).
inline void reorder_word(Complex coeff, Word word, Statistics stats, TermMap& out) {
  const double sign = stats == Statistics::Fermi ? -1.0 : 1.0;
  std::vector<std::pair<Complex, Word>> stack;
  stack.push_back({coeff, std::move(word)});
  while (!stack.empty()) {
    auto [c, w] = std::move(stack.back());
    stack.pop_back();
    bool reduced = false;
    for (std::size_t p = 0; p + 1 < w.size(); ++p) {
      if (!w[p].dagger && w[p + 1].dagger) {
        if (w[p].mode == w[p + 1].mode) {
          Word contracted;
          contracted.reserve(w.size() - 2);
          contracted.insert(contracted.end(), w.begin(), w.begin() + static_cast<long>(p));
          contracted.insert(contracted.end(), w.begin() + static_cast<long>(p) + 2, w.end());
          stack.push_back({c, std::move(contracted)});
        }
        std::swap(w[p], w[p + 1]);
        stack.push_back({c * sign, std::move(w)});
        reduced = true;
        break;
      }
    }
    if (!reduced) canonicalize_word(c, w, stats, out);
  }
}

}  // namespace detail

/// Normal-order an expression. The result equals the input as an operator
/// on every particle-number sector.
inline NormalForm normal_order(const OpExprPtr& e, Statistics stats) {
  std::vector<std::pair<Complex, detail::Word>> words;
  detail::expand_words(e, words);
  detail::TermMap map;
  for (auto& [coeff, word] : words) detail::reorder_word(coeff, std::move(word), stats, map);
  NormalForm nf;
  nf.stats = stats;
  nf.terms.reserve(map.size());
  for (auto& [key, coeff] : map) nf.terms.push_back({coeff, key.first, key.second});
  return nf;
}

/// Re-express a normal form as an AST (used for round trips and printing).
inline OpExprPtr to_expression(const NormalForm& nf) {
  std::vector<OpExprPtr> terms;
  for (const auto& t : nf.terms) {
    std::vector<OpExprPtr> factors{ops::scalar(t.coeff)};
    for (int m : t.creators) factors.push_back(ops::create(m));
    for (int m : t.annihilators) factors.push_back(ops::annihilate(m));
    terms.push_back(ops::product(std::move(factors)));
  }
  if (terms.empty()) return ops::scalar(0.0);
  return terms.size() == 1 ? terms.front() : ops::sum(std::move(terms));
}

namespace detail {

/// "ad(1)^2*a(3)" with repeated modes collapsed into powers; "1" if empty.
inline std::string mode_product_string(const std::vector<int>& creators,
                                       const std::vector<int>& annihilators) {
  std::string s;
  auto emit = [&s](const char* name, const std::vector<int>& modes) {
    std::size_t i = 0;
    while (i < modes.size()) {
      std::size_t j = i;
      while (j < modes.size() && modes[j] == modes[i]) ++j;
      if (!s.empty()) s += "*";
      s += name;
      s += "(" + std::to_string(modes[i]) + ")";
      if (j - i > 1) s += "^" + std::to_string(j - i);
      i = j;
    }
  };
  emit("ad", creators);
  emit("a", annihilators);
  return s.empty() ? "1" : s;
}

}  // namespace detail

/// Coefficient-free monomial in grammar syntax, e.g. "ad(1)*a(1)".
inline std::string monomial_string(const NormalTerm& t) {
  return detail::mode_product_string(t.creators, t.annihilators);
}

/// Full normal form in grammar syntax; coefficients carry 17 significant
/// digits so output reparses to the same values.
inline std::string to_grammar_string(const NormalForm& nf) {
  if (nf.terms.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < nf.terms.size(); ++i) {
    const auto& t = nf.terms[i];
    if (i) s += " + ";
    s += detail::format_complex_literal(t.coeff);
    const std::string mono = detail::mode_product_string(t.creators, t.annihilators);
    if (mono != "1") s += "*" + mono;
  }
  return s;
}

/// Termwise comparison within a coefficient tolerance.
inline bool approx_equal(const NormalForm& a, const NormalForm& b, double tol = 1e-12) {
  if (a.stats != b.stats) return false;
  std::map<detail::MonomialKey, Complex> diff;
  for (const auto& t : a.terms) detail::add_term(diff, {t.creators, t.annihilators}, t.coeff);
  for (const auto& t : b.terms) detail::add_term(diff, {t.creators, t.annihilators}, -t.coeff);
  for (const auto& [key, coeff] : diff)
    if (std::abs(coeff) > tol) return false;
  return true;
}

}  // namespace focksep
