// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>

#include "focksep/fock_vector.hpp"
#include "focksep/normal_order.hpp"
#include "focksep/op_expr.hpp"

namespace focksep {

namespace detail {

inline void check_sector_ceiling(const FockVector& v, const std::optional<int>& max_total) {
  if (!max_total) return;
  if (v.max_total_occupation() > *max_total)
    throw SectorOverflowError("state left the configured particle-number ceiling");
}

}  // namespace detail

/// Evaluate an expression on a state by direct AST traversal (products
/// apply right factors first). `max_total` optionally caps the particle
/// number reachable during evaluation.
inline FockVector apply(const OpExprPtr& e, const FockVector& v,
                        const std::optional<int>& max_total = std::nullopt) {
  switch (e->kind) {
    case OpExpr::Kind::Scalar:
      return v * e->scalar;
    case OpExpr::Kind::Create: {
      FockVector out = create(e->mode, v);
      detail::check_sector_ceiling(out, max_total);
      return out;
    }
    case OpExpr::Kind::Annihilate:
      return annihilate(e->mode, v);
    case OpExpr::Kind::Sum: {
      FockVector out(v.statistics(), v.num_modes());
      for (const auto& c : e->children) out += apply(c, v, max_total);
      return out;
    }
    case OpExpr::Kind::Product: {
      FockVector cur = v;
      for (auto it = e->children.rbegin(); it != e->children.rend(); ++it)
        cur = apply(*it, cur, max_total);
      return cur;
    }
    case OpExpr::Kind::Power: {
      FockVector cur = v;
      for (int k = 0; k < e->exponent; ++k) cur = apply(e->children[0], cur, max_total);
      return cur;
    }
  }
  return FockVector(v.statistics(), v.num_modes());
}

/// Apply one normal-ordered monomial: annihilators first (rightmost, i.e.
/// largest mode, acts first), then creators.
inline FockVector apply(const NormalTerm& t, const FockVector& v) {
  FockVector cur = v;
  for (auto it = t.annihilators.rbegin(); it != t.annihilators.rend(); ++it)
    cur = annihilate(*it, cur);
  for (auto it = t.creators.rbegin(); it != t.creators.rend(); ++it) cur = create(*it, cur);
  return cur * t.coeff;
}

inline FockVector apply(const NormalForm& nf, const FockVector& v) {
  if (nf.stats != v.statistics()) throw std::invalid_argument("statistics mismatch");
  FockVector out(v.statistics(), v.num_modes());
  for (const auto& t : nf.terms) out += apply(t, v);
  return out;
}

/// <v|e|v>.
inline Complex expectation(const OpExprPtr& e, const FockVector& v) {
  return inner_product(v, apply(e, v));
}

inline Complex expectation(const NormalForm& nf, const FockVector& v) {
  return inner_product(v, apply(nf, v));
}

}  // namespace focksep
