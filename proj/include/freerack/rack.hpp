#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "freerack/word.hpp"

namespace freerack {

/// Which of the two rack operations: Pos for the action, Neg for its inverse.
/// In Involutory mode the two act identically (a tested fact, not an API
/// collapse).
enum class Sign { Pos, Neg };

inline Sign opposite(Sign s) { return s == Sign::Pos ? Sign::Neg : Sign::Pos; }

/// An element (base, word) of the free rack on the alphabet: any pair is
/// valid, no canonicity is required.
struct RackElement {
  GeneratorId base;
  GroupWord word;

  WordMode mode() const { return word.mode(); }

  bool operator==(const RackElement&) const = default;
};

/// The canonical representative of the conjugacy class base^word: the stored
/// word never begins with a power of the base. Construction canonicalizes.
class QuandleElement {
 public:
  QuandleElement(GeneratorId base, const GroupWord& word)
      : base_(std::move(base)),
        word_(strip_leading_power(word, base_).tail) {}

  const GeneratorId& base() const { return base_; }
  const GroupWord& word() const { return word_; }
  WordMode mode() const { return word_.mode(); }

  /// The fiber-canonical rack element mapping onto this class.
  RackElement lift() const { return RackElement{base_, word_}; }

  bool operator==(const QuandleElement&) const = default;

 private:
  GeneratorId base_;
  GroupWord word_;
};

/// (a, u) acted on by (b, v): the base is preserved and the word picks up the
/// conjugation factor v^-1 b^{+-1} v.
inline RackElement rack_op(const RackElement& e1, const RackElement& e2,
                           Sign sign) {
  detail::require_same_mode(e1.word, e2.word);
  GroupWord letter =
      generator_word(e2.base, sign == Sign::Pos ? 1 : -1, e2.mode());
  return RackElement{e1.base, concat(e1.word, conjugate(letter, e2.word))};
}

/// |k| self-applications with the sign of k; k = 0 leaves e unchanged.
/// Closed form: (x, w) -> (x, x^k w).
inline RackElement rack_power(const RackElement& e, std::int64_t k) {
  return RackElement{e.base,
                     concat(generator_word(e.base, k, e.mode()), e.word)};
}

/// The projection homomorphism onto the free quandle: (x, w) -> x^w.
inline QuandleElement project(const RackElement& e) {
  return QuandleElement(e.base, e.word);
}

/// Conjugation of classes: x^w acted on by y^v is x^(w v^-1 y^{+-1} v).
inline QuandleElement quandle_op(const QuandleElement& q1,
                                 const QuandleElement& q2, Sign sign) {
  return project(rack_op(q1.lift(), q2.lift(), sign));
}

/// Fiber coordinates of e: the exponent n and class q with
/// e = (x, x^n * q.word()).
struct Decomposition {
  std::int64_t exponent = 0;
  QuandleElement rep;
};

inline Decomposition decompose(const RackElement& e) {
  auto split = strip_leading_power(e.word, e.base);
  return Decomposition{split.exponent, QuandleElement(e.base, split.tail)};
}

inline std::string to_string(const RackElement& e) {
  return "(" + e.base.name + "; " + to_string(e.word) + ")";
}

inline std::string to_string(const QuandleElement& q) {
  return to_string(q.lift());
}

/// Parses the element literal format `(a; w)`.
inline RackElement parse_element(const Context& ctx, std::string_view text) {
  std::size_t i = 0;
  auto skip_space = [&] {
    while (i < text.size() && detail::is_space(text[i])) ++i;
  };
  skip_space();
  if (i == text.size() || text[i] != '(') {
    throw SyntaxError("expected '(' starting an element literal", i);
  }
  ++i;
  skip_space();
  std::size_t name_start = i;
  while (i < text.size() && text[i] != ';' && text[i] != ')' &&
         !detail::is_space(text[i])) {
    ++i;
  }
  std::string name(text.substr(name_start, i - name_start));
  if (!is_valid_generator_name(name)) {
    throw SyntaxError("bad generator name '" + name + "'", name_start);
  }
  if (!ctx.alphabet.contains(name)) throw UnknownGeneratorError(name);
  skip_space();
  if (i == text.size() || text[i] != ';') {
    throw SyntaxError("expected ';' inside element literal", i);
  }
  ++i;
  std::size_t word_start = i;
  std::size_t close = text.find(')', i);
  if (close == std::string_view::npos) {
    throw SyntaxError("unterminated element literal", text.size());
  }
  GroupWord word =
      parse_word(ctx, text.substr(word_start, close - word_start));
  i = close + 1;
  skip_space();
  if (i != text.size()) throw SyntaxError("trailing input after ')'", i);
  return RackElement{GeneratorId{std::move(name)}, word};
}

using RackTriple = std::array<RackElement, 3>;

/// Outcome of evaluating the rack identities over a sample.
struct AxiomReport {
  std::size_t triples_checked = 0;
  std::size_t pairs_checked = 0;
  std::vector<std::string> counterexamples;

  bool ok() const { return counterexamples.empty(); }
};

/// Evaluates both self-distributivity identities on every triple and both
/// cancellation identities on every pair drawn from the sample, recording any
/// counterexample verbatim.
inline AxiomReport check_axioms(std::span<const RackTriple> sample) {
  AxiomReport report;
  auto record = [&](const char* law, const RackElement& lhs,
                    const RackElement& rhs, const RackTriple& t) {
    report.counterexamples.push_back(
        std::string(law) + ": " + to_string(lhs) + " != " + to_string(rhs) +
        " on (" + to_string(t[0]) + ", " + to_string(t[1]) + ", " +
        to_string(t[2]) + ")");
  };
  for (const auto& t : sample) {
    const auto& [x, y, z] = t;
    ++report.triples_checked;
    RackElement d1l = rack_op(rack_op(x, y, Sign::Pos), z, Sign::Pos);
    RackElement d1r = rack_op(rack_op(x, z, Sign::Pos),
                              rack_op(y, z, Sign::Pos), Sign::Pos);
    if (!(d1l == d1r)) record("R1", d1l, d1r, t);
    RackElement d2l = rack_op(rack_op(x, y, Sign::Neg), z, Sign::Neg);
    RackElement d2r = rack_op(rack_op(x, z, Sign::Neg),
                              rack_op(y, z, Sign::Neg), Sign::Neg);
    if (!(d2l == d2r)) record("R1 inverse", d2l, d2r, t);
    const std::array<std::pair<const RackElement*, const RackElement*>, 3>
        pairs{{{&x, &y}, {&y, &z}, {&x, &z}}};
    for (auto [a, b] : pairs) {
      ++report.pairs_checked;
      RackElement u1 = rack_op(rack_op(*a, *b, Sign::Pos), *b, Sign::Neg);
      if (!(u1 == *a)) record("R2 undo-pos", u1, *a, t);
      RackElement u2 = rack_op(rack_op(*a, *b, Sign::Neg), *b, Sign::Pos);
      if (!(u2 == *a)) record("R2 undo-neg", u2, *a, t);
    }
  }
  return report;
}

}  // namespace freerack
