#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "freerack/rack.hpp"

namespace freerack {

struct RackExpr;
using ExprPtr = std::shared_ptr<const RackExpr>;

/// Abstract syntax of rack expressions: left-associative chains of `|>` and
/// `|>-` over atoms, with integer self-power `^k` binding tighter. A bare
/// generator g denotes the element (g; e).
struct RackExpr {
  struct Atom {
    GeneratorId gen;
  };
  struct Literal {
    RackElement element;
  };
  struct Power {
    ExprPtr child;
    std::int64_t exponent = 0;
  };
  struct Binary {
    ExprPtr left;
    Sign sign = Sign::Pos;
    ExprPtr right;
  };

  std::variant<Atom, Literal, Power, Binary> node;
};

inline ExprPtr make_atom(GeneratorId gen) {
  return std::make_shared<RackExpr>(RackExpr{RackExpr::Atom{std::move(gen)}});
}

inline ExprPtr make_literal(RackElement element) {
  return std::make_shared<RackExpr>(
      RackExpr{RackExpr::Literal{std::move(element)}});
}

inline ExprPtr make_power(ExprPtr child, std::int64_t exponent) {
  return std::make_shared<RackExpr>(
      RackExpr{RackExpr::Power{std::move(child), exponent}});
}

inline ExprPtr make_binary(ExprPtr left, Sign sign, ExprPtr right) {
  return std::make_shared<RackExpr>(
      RackExpr{RackExpr::Binary{std::move(left), sign, std::move(right)}});
}

/// Atom when the element has the identity word, literal otherwise; this is
/// how basis members and generators appear inside witness expressions.
inline ExprPtr element_expr(const RackElement& e) {
  if (is_identity(e.word)) return make_atom(e.base);
  return make_literal(e);
}

inline bool expr_equal(const RackExpr& a, const RackExpr& b) {
  if (a.node.index() != b.node.index()) return false;
  if (const auto* atom = std::get_if<RackExpr::Atom>(&a.node)) {
    return atom->gen == std::get<RackExpr::Atom>(b.node).gen;
  }
  if (const auto* lit = std::get_if<RackExpr::Literal>(&a.node)) {
    return lit->element == std::get<RackExpr::Literal>(b.node).element;
  }
  if (const auto* pow = std::get_if<RackExpr::Power>(&a.node)) {
    const auto& other = std::get<RackExpr::Power>(b.node);
    return pow->exponent == other.exponent &&
           expr_equal(*pow->child, *other.child);
  }
  const auto& bin = std::get<RackExpr::Binary>(a.node);
  const auto& other = std::get<RackExpr::Binary>(b.node);
  return bin.sign == other.sign && expr_equal(*bin.left, *other.left) &&
         expr_equal(*bin.right, *other.right);
}

namespace detail {

/// Folds the tree through rack_op / rack_power. Atoms need only the mode;
/// alphabet validation belongs to parsing.
inline RackElement evaluate_expr(const RackExpr& expr, WordMode mode) {
  if (const auto* atom = std::get_if<RackExpr::Atom>(&expr.node)) {
    return RackElement{atom->gen, GroupWord::identity(mode)};
  }
  if (const auto* lit = std::get_if<RackExpr::Literal>(&expr.node)) {
    return lit->element;
  }
  if (const auto* pow = std::get_if<RackExpr::Power>(&expr.node)) {
    return rack_power(evaluate_expr(*pow->child, mode), pow->exponent);
  }
  const auto& bin = std::get<RackExpr::Binary>(expr.node);
  return rack_op(evaluate_expr(*bin.left, mode),
                 evaluate_expr(*bin.right, mode), bin.sign);
}

}  // namespace detail

inline RackElement evaluate(const Context& ctx, const RackExpr& expr) {
  return detail::evaluate_expr(expr, ctx.mode);
}

/// Canonical text under left-associativity: parentheses appear only around a
/// chain used as a right operand or under a power.
inline std::string format(const RackExpr& expr) {
  std::string out;
  auto is_binary = [](const RackExpr& e) {
    return std::holds_alternative<RackExpr::Binary>(e.node);
  };
  auto walk = [&](auto&& self, const RackExpr& e, bool wrap_chain) -> void {
    if (const auto* atom = std::get_if<RackExpr::Atom>(&e.node)) {
      out += atom->gen.name;
      return;
    }
    if (const auto* lit = std::get_if<RackExpr::Literal>(&e.node)) {
      out += to_string(lit->element);
      return;
    }
    if (const auto* pow = std::get_if<RackExpr::Power>(&e.node)) {
      self(self, *pow->child, true);
      out += '^';
      out += std::to_string(pow->exponent);
      return;
    }
    const auto& bin = std::get<RackExpr::Binary>(e.node);
    if (wrap_chain) out += '(';
    self(self, *bin.left, false);
    out += bin.sign == Sign::Pos ? " |> " : " |>- ";
    self(self, *bin.right, is_binary(*bin.right));
    if (wrap_chain) out += ')';
  };
  walk(walk, expr, false);
  return out;
}

namespace detail {

enum class TokKind { LParen, RParen, Semi, Caret, OpPos, OpNeg, Ident, Int, End };

struct Token {
  TokKind kind = TokKind::End;
  std::string text;
  std::int64_t value = 0;
  std::size_t pos = 0;
};

inline std::vector<Token> lex_expr(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (is_space(c)) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (c == '(') {
      tokens.push_back({TokKind::LParen, "(", 0, start});
      ++i;
    } else if (c == ')') {
      tokens.push_back({TokKind::RParen, ")", 0, start});
      ++i;
    } else if (c == ';') {
      tokens.push_back({TokKind::Semi, ";", 0, start});
      ++i;
    } else if (c == '^') {
      tokens.push_back({TokKind::Caret, "^", 0, start});
      ++i;
    } else if (c == '|') {
      if (i + 1 >= text.size() || text[i + 1] != '>') {
        throw SyntaxError("expected '|>'", start);
      }
      i += 2;
      if (i < text.size() && text[i] == '-') {
        ++i;
        tokens.push_back({TokKind::OpNeg, "|>-", 0, start});
      } else {
        tokens.push_back({TokKind::OpPos, "|>", 0, start});
      }
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
      std::int64_t sign = 1;
      if (c == '-') {
        sign = -1;
        ++i;
        if (i >= text.size() ||
            !std::isdigit(static_cast<unsigned char>(text[i]))) {
          throw SyntaxError("expected digits after '-'", start);
        }
      }
      std::int64_t value = 0;
      while (i < text.size() &&
             std::isdigit(static_cast<unsigned char>(text[i]))) {
        value = value * 10 + (text[i] - '0');
        ++i;
      }
      tokens.push_back({TokKind::Int, std::string(text.substr(start, i - start)),
                        sign * value, start});
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) ||
              text[i] == '_')) {
        ++i;
      }
      tokens.push_back({TokKind::Ident,
                        std::string(text.substr(start, i - start)), 0, start});
    } else {
      throw SyntaxError(std::string("unexpected character '") + c + "'",
                        start);
    }
  }
  tokens.push_back({TokKind::End, "", 0, text.size()});
  return tokens;
}

class ExprParser {
 public:
  ExprParser(const Context& ctx, std::string_view text)
      : ctx_(ctx), tokens_(lex_expr(text)) {}

  ExprPtr parse() {
    ExprPtr e = parse_expression();
    expect(TokKind::End, "trailing input after expression");
    return e;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }

  const Token& advance() { return tokens_[pos_++]; }

  const Token& expect(TokKind kind, const char* message) {
    if (peek().kind != kind) throw SyntaxError(message, peek().pos);
    return advance();
  }

  ExprPtr parse_expression() {
    ExprPtr left = parse_primary();
    while (peek().kind == TokKind::OpPos || peek().kind == TokKind::OpNeg) {
      Sign sign = advance().kind == TokKind::OpPos ? Sign::Pos : Sign::Neg;
      left = make_binary(std::move(left), sign, parse_primary());
    }
    return left;
  }

  ExprPtr parse_primary() {
    ExprPtr unit = parse_unit();
    while (peek().kind == TokKind::Caret) {
      advance();
      if (peek().kind != TokKind::Int) {
        throw SyntaxError("expected integer exponent after '^'", peek().pos);
      }
      unit = make_power(std::move(unit), advance().value);
    }
    return unit;
  }

  ExprPtr parse_unit() {
    const Token& tok = peek();
    if (tok.kind == TokKind::Ident) {
      advance();
      if (!ctx_.alphabet.contains(tok.text)) {
        throw UnknownGeneratorError(tok.text);
      }
      return make_atom(GeneratorId{tok.text});
    }
    if (tok.kind == TokKind::LParen) {
      // A ';' after the inner identifier separates an element literal from
      // a parenthesized expression.
      if (peek(1).kind == TokKind::Ident && peek(2).kind == TokKind::Semi) {
        return parse_literal();
      }
      advance();
      ExprPtr inner = parse_expression();
      expect(TokKind::RParen, "expected ')'");
      return inner;
    }
    throw SyntaxError("expected generator, element literal or '('", tok.pos);
  }

  ExprPtr parse_literal() {
    expect(TokKind::LParen, "expected '('");
    const Token& name = expect(TokKind::Ident, "expected generator name");
    if (!ctx_.alphabet.contains(name.text)) {
      throw UnknownGeneratorError(name.text);
    }
    expect(TokKind::Semi, "expected ';'");
    std::vector<Syllable> raw;
    bool saw_identity = false;
    while (peek().kind != TokKind::RParen) {
      const Token& g = expect(TokKind::Ident, "expected word inside literal");
      if (g.text == "e") {
        saw_identity = true;
        continue;
      }
      std::int64_t exp = 1;
      if (peek().kind == TokKind::Caret) {
        advance();
        if (peek().kind != TokKind::Int) {
          throw SyntaxError("expected integer exponent after '^'", peek().pos);
        }
        exp = advance().value;
        if (exp == 0) throw SyntaxError("zero exponent in word", g.pos);
      }
      raw.push_back(Syllable{GeneratorId{g.text}, exp});
    }
    if (raw.empty() && !saw_identity) {
      throw SyntaxError("empty word in element literal; write e", peek().pos);
    }
    if (saw_identity && !raw.empty()) {
      throw SyntaxError("identity token 'e' mixed with generators", peek().pos);
    }
    expect(TokKind::RParen, "expected ')'");
    GroupWord word = reduce(ctx_, raw);
    return make_literal(RackElement{GeneratorId{name.text}, word});
  }

  const Context& ctx_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses the expression grammar:
///   expr    := primary (op primary)*        op := "|>" | "|>-"
///   primary := unit ("^" int)*
///   unit    := ident | "(" ident ";" word ")" | "(" expr ")"
inline ExprPtr parse_expr(const Context& ctx, std::string_view text) {
  return detail::ExprParser(ctx, text).parse();
}

/// A normal form over a basis: head^exponent acted on by the tail atoms.
/// A zero head exponent denotes the bare head element; when the tail is
/// nonempty its first atom differs from the head.
struct NormalForm {
  struct Factor {
    Sign sign = Sign::Pos;
    std::size_t atom = 0;

    bool operator==(const Factor&) const = default;
  };

  std::size_t head = 0;
  std::int64_t head_exponent = 0;
  std::vector<Factor> tail;

  bool operator==(const NormalForm&) const = default;
};

}  // namespace freerack
