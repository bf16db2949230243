// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cctype>
#include <cstdio>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "focksep/core.hpp"

namespace focksep {

struct OpExpr;
using OpExprPtr = std::shared_ptr<const OpExpr>;

/// AST for polynomials in creation/annihilation operators with complex
/// scalars. Immutable; shared subtrees are fine.
struct OpExpr {
  enum class Kind { Scalar, Create, Annihilate, Sum, Product, Power };

  Kind kind;
  Complex scalar{0.0, 0.0};         // Scalar
  int mode = 0;                     // Create / Annihilate, 1-based
  std::vector<OpExprPtr> children;  // Sum / Product; Power uses children[0]
  int exponent = 0;                 // Power, >= 0
};

namespace ops {

inline OpExprPtr scalar(Complex c) {
  auto e = std::make_shared<OpExpr>();
  e->kind = OpExpr::Kind::Scalar;
  e->scalar = c;
  return e;
}

inline OpExprPtr scalar(double c) { return scalar(Complex(c, 0.0)); }

inline OpExprPtr create(int mode) {
  if (mode < 1) throw std::invalid_argument("mode index must be positive");
  auto e = std::make_shared<OpExpr>();
  e->kind = OpExpr::Kind::Create;
  e->mode = mode;
  return e;
}

inline OpExprPtr annihilate(int mode) {
  if (mode < 1) throw std::invalid_argument("mode index must be positive");
  auto e = std::make_shared<OpExpr>();
  e->kind = OpExpr::Kind::Annihilate;
  e->mode = mode;
  return e;
}

inline OpExprPtr sum(std::vector<OpExprPtr> terms) {
  auto e = std::make_shared<OpExpr>();
  e->kind = OpExpr::Kind::Sum;
  e->children = std::move(terms);
  return e;
}

inline OpExprPtr product(std::vector<OpExprPtr> factors) {
  auto e = std::make_shared<OpExpr>();
  e->kind = OpExpr::Kind::Product;
  e->children = std::move(factors);
  return e;
}

inline OpExprPtr power(OpExprPtr base, int exponent) {
  if (exponent < 0) throw std::invalid_argument("exponent must be non-negative");
  auto e = std::make_shared<OpExpr>();
  e->kind = OpExpr::Kind::Power;
  e->children = {std::move(base)};
  e->exponent = exponent;
  return e;
}

/// N(i..j) sugar: sum_{k=i..j} ad(k)*a(k). Expanded eagerly.
inline OpExprPtr number(int first_mode, int last_mode) {
  if (first_mode < 1 || last_mode < first_mode)
    throw std::invalid_argument("bad number-operator mode range");
  std::vector<OpExprPtr> terms;
  for (int k = first_mode; k <= last_mode; ++k)
    terms.push_back(product({create(k), annihilate(k)}));
  return terms.size() == 1 ? terms.front() : sum(std::move(terms));
}

}  // namespace ops

namespace detail {

struct Token {
  enum class Type { Ident, Number, LParen, RParen, Comma, Plus, Minus, Star, Caret, DotDot, End };
  Type type;
  std::string text;
  double value = 0.0;
  bool integral = false;
  std::size_t offset = 0;
};

inline std::vector<Token> tokenize(const std::string& src) {
  std::vector<Token> out;
  std::size_t i = 0;
  const auto n = src.size();
  while (i < n) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    Token t;
    t.offset = i;
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < n && std::isalpha(static_cast<unsigned char>(src[j]))) ++j;
      t.type = Token::Type::Ident;
      t.text = src.substr(i, j - i);
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      bool integral = true;
      while (j < n && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      // Guard against ".." (range) after an integer.
      if (j < n && src[j] == '.' && !(j + 1 < n && src[j + 1] == '.')) {
        integral = false;
        ++j;
        while (j < n && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      }
      if (j < n && (src[j] == 'e' || src[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < n && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < n && std::isdigit(static_cast<unsigned char>(src[k]))) {
          integral = false;
          while (k < n && std::isdigit(static_cast<unsigned char>(src[k]))) ++k;
          j = k;
        }
      }
      t.type = Token::Type::Number;
      t.text = src.substr(i, j - i);
      t.value = std::strtod(t.text.c_str(), nullptr);
      t.integral = integral;
      i = j;
    } else {
      switch (c) {
        case '(': t.type = Token::Type::LParen; ++i; break;
        case ')': t.type = Token::Type::RParen; ++i; break;
        case ',': t.type = Token::Type::Comma; ++i; break;
        case '+': t.type = Token::Type::Plus; ++i; break;
        case '-': t.type = Token::Type::Minus; ++i; break;
        case '*': t.type = Token::Type::Star; ++i; break;
        case '^': t.type = Token::Type::Caret; ++i; break;
        case '.':
          if (i + 1 < n && src[i + 1] == '.') {
            t.type = Token::Type::DotDot;
            i += 2;
            break;
          }
          throw ParseError("unexpected character '.'", i);
        default:
          throw ParseError(std::string("unexpected character '") + c + "'", i);
      }
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.type = Token::Type::End;
  end.offset = n;
  out.push_back(end);
  return out;
}

class ExprParser {
 public:
  explicit ExprParser(const std::string& src) : tokens_(tokenize(src)) {}

  OpExprPtr run() {
    OpExprPtr e = parse_sum();
    expect(Token::Type::End, "trailing input");
    return e;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
    return tokens_[i];
  }

  const Token& advance() { return tokens_[pos_++]; }

  bool match(Token::Type t) {
    if (peek().type == t) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(Token::Type t, const char* what) {
    if (!match(t)) throw ParseError(std::string("expected ") + what, peek().offset);
  }

  OpExprPtr parse_sum() {
    std::vector<OpExprPtr> terms;
    bool negate = false;
    if (match(Token::Type::Minus)) negate = true;
    else match(Token::Type::Plus);
    terms.push_back(maybe_negate(parse_term(), negate));
    while (true) {
      if (match(Token::Type::Plus)) {
        terms.push_back(parse_term());
      } else if (match(Token::Type::Minus)) {
        terms.push_back(maybe_negate(parse_term(), true));
      } else {
        break;
      }
    }
    return terms.size() == 1 ? terms.front() : ops::sum(std::move(terms));
  }

  static OpExprPtr maybe_negate(OpExprPtr e, bool negate) {
    if (!negate) return e;
    return ops::product({ops::scalar(-1.0), std::move(e)});
  }

  OpExprPtr parse_term() {
    std::vector<OpExprPtr> factors;
    factors.push_back(parse_factor());
    while (match(Token::Type::Star)) factors.push_back(parse_factor());
    return factors.size() == 1 ? factors.front() : ops::product(std::move(factors));
  }

  OpExprPtr parse_factor() {
    OpExprPtr base = parse_primary();
    if (match(Token::Type::Caret)) {
      const Token& t = peek();
      if (t.type != Token::Type::Number || !t.integral || t.value < 0)
        throw ParseError("expected non-negative integer exponent", t.offset);
      advance();
      return ops::power(std::move(base), static_cast<int>(t.value));
    }
    return base;
  }

  int parse_mode_index() {
    const Token& t = peek();
    if (t.type != Token::Type::Number || !t.integral)
      throw ParseError("expected mode index", t.offset);
    if (t.value < 1) throw ParseError("mode index must be positive", t.offset);
    advance();
    return static_cast<int>(t.value);
  }

  OpExprPtr parse_primary() {
    const Token& t = peek();
    switch (t.type) {
      case Token::Type::Ident: {
        advance();
        if (t.text == "ad" || t.text == "a") {
          expect(Token::Type::LParen, "'('");
          const int mode = parse_mode_index();
          expect(Token::Type::RParen, "')'");
          return t.text == "ad" ? ops::create(mode) : ops::annihilate(mode);
        }
        if (t.text == "N") {
          expect(Token::Type::LParen, "'('");
          const int first = parse_mode_index();
          int last = first;
          if (match(Token::Type::DotDot)) last = parse_mode_index();
          expect(Token::Type::RParen, "')'");
          if (last < first) throw ParseError("empty mode range", t.offset);
          return ops::number(first, last);
        }
        throw ParseError("unknown identifier '" + t.text + "'", t.offset);
      }
      case Token::Type::Number:
        advance();
        return ops::scalar(t.value);
      case Token::Type::LParen: {
        // Either a complex literal "(re,im)" or a parenthesized expression.
        if (auto lit = try_complex_literal()) return lit;
        advance();
        OpExprPtr inner = parse_sum();
        expect(Token::Type::RParen, "')'");
        return inner;
      }
      default:
        throw ParseError("expected operator, number, or '('", t.offset);
    }
  }

  OpExprPtr try_complex_literal() {
    std::size_t i = pos_;
    auto at = [&](std::size_t k) -> const Token& { return tokens_[std::min(i + k, tokens_.size() - 1)]; };
    std::size_t k = 1;  // past '('
    double re_sign = 1.0;
    if (at(k).type == Token::Type::Minus) { re_sign = -1.0; ++k; }
    else if (at(k).type == Token::Type::Plus) { ++k; }
    if (at(k).type != Token::Type::Number) return nullptr;
    const double re = re_sign * at(k).value;
    ++k;
    if (at(k).type != Token::Type::Comma) return nullptr;
    ++k;
    double im_sign = 1.0;
    if (at(k).type == Token::Type::Minus) { im_sign = -1.0; ++k; }
    else if (at(k).type == Token::Type::Plus) { ++k; }
    if (at(k).type != Token::Type::Number) return nullptr;
    const double im = im_sign * at(k).value;
    ++k;
    if (at(k).type != Token::Type::RParen) return nullptr;
    pos_ = i + k + 1;
    return ops::scalar(Complex(re, im));
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

inline std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline std::string format_complex_literal(Complex c) {
  return "(" + format_double(c.real()) + "," + format_double(c.imag()) + ")";
}

}  // namespace detail

/// Parse the operator grammar: ad(i), a(i), N(i..j), '*', '+', '-', '^k',
/// real and "(re,im)" complex literals, parentheses. Whitespace-insensitive.
inline OpExprPtr parse_expression(const std::string& text) {
  return detail::ExprParser(text).run();
}

inline std::string to_string(const OpExprPtr& e);

namespace detail {

inline std::string child_string(const OpExprPtr& c, bool parenthesize_sums_only) {
  std::string s = focksep::to_string(c);
  const bool needs_parens = parenthesize_sums_only
                                ? c->kind == OpExpr::Kind::Sum
                                : (c->kind == OpExpr::Kind::Sum || c->kind == OpExpr::Kind::Product);
  return needs_parens ? "(" + s + ")" : s;
}

}  // namespace detail

inline std::string to_string(const OpExprPtr& e) {
  switch (e->kind) {
    case OpExpr::Kind::Scalar:
      if (e->scalar.imag() == 0.0 && e->scalar.real() >= 0.0)
        return detail::format_double(e->scalar.real());
      return detail::format_complex_literal(e->scalar);
    case OpExpr::Kind::Create:
      return "ad(" + std::to_string(e->mode) + ")";
    case OpExpr::Kind::Annihilate:
      return "a(" + std::to_string(e->mode) + ")";
    case OpExpr::Kind::Sum: {
      std::string s;
      for (std::size_t i = 0; i < e->children.size(); ++i) {
        if (i) s += " + ";
        s += to_string(e->children[i]);
      }
      return s;
    }
    case OpExpr::Kind::Product: {
      std::string s;
      for (std::size_t i = 0; i < e->children.size(); ++i) {
        if (i) s += "*";
        s += detail::child_string(e->children[i], /*parenthesize_sums_only=*/true);
      }
      return s;
    }
    case OpExpr::Kind::Power:
      return detail::child_string(e->children[0], /*parenthesize_sums_only=*/false) + "^" +
             std::to_string(e->exponent);
  }
  return {};
}

/// Largest mode index mentioned anywhere in the tree; 0 for pure scalars.
inline int max_mode(const OpExprPtr& e) {
  int best = e->mode;
  for (const auto& c : e->children) best = std::max(best, max_mode(c));
  return best;
}

}  // namespace focksep
