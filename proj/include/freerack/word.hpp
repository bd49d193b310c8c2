#pragma once

#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "freerack/errors.hpp"

namespace freerack {

/// Ambient group of the conjugator words: the free group F(X) or the
/// involutory quotient <X | x^2 = 1>.
enum class WordMode { Free, Involutory };

inline const char* to_string(WordMode mode) {
  return mode == WordMode::Free ? "free" : "involutory";
}

/// A named generator. Comparison is by name.
struct GeneratorId {
  std::string name;

  auto operator<=>(const GeneratorId&) const = default;
};

inline bool is_valid_generator_name(std::string_view name) {
  if (name.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(name.front()))) return false;
  for (char c : name) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  // "e" denotes the identity word and cannot name a generator.
  return name != "e";
}

/// A finite, ordered set of distinct generator names declared up front.
class Alphabet {
 public:
  Alphabet() = default;

  explicit Alphabet(std::vector<std::string> names) {
    generators_.reserve(names.size());
    for (auto& name : names) {
      if (!is_valid_generator_name(name)) {
        throw Error("invalid generator name '" + name + "'");
      }
      if (contains(name)) {
        throw Error("generator '" + name + "' declared twice");
      }
      generators_.push_back(GeneratorId{std::move(name)});
    }
  }

  bool contains(std::string_view name) const {
    for (const auto& g : generators_) {
      if (g.name == name) return true;
    }
    return false;
  }

  const std::vector<GeneratorId>& generators() const { return generators_; }
  std::size_t size() const { return generators_.size(); }

 private:
  std::vector<GeneratorId> generators_;
};

/// One computation context: the declared alphabet plus the word mode.
struct Context {
  Alphabet alphabet;
  WordMode mode = WordMode::Free;

  void require(const GeneratorId& gen) const {
    if (!alphabet.contains(gen.name)) throw UnknownGeneratorError(gen.name);
  }
};

/// A maximal run g^k of one generator inside a reduced word.
struct Syllable {
  GeneratorId gen;
  std::int64_t exp = 1;

  auto operator<=>(const Syllable&) const = default;
};

class GroupWord;

namespace detail {

// mod 2 into {0, 1}; involutory generators are self-inverse.
inline std::int64_t involutory_exp(std::int64_t e) { return ((e % 2) + 2) % 2; }

/// Accumulates syllables while keeping the word reduced in its mode.
class WordBuilder {
 public:
  explicit WordBuilder(WordMode mode) : mode_(mode) {}

  void push(const GeneratorId& gen, std::int64_t exp) {
    if (mode_ == WordMode::Involutory) exp = involutory_exp(exp);
    if (exp == 0) return;
    if (!syllables_.empty() && syllables_.back().gen == gen) {
      std::int64_t merged = syllables_.back().exp + exp;
      if (mode_ == WordMode::Involutory) merged = involutory_exp(merged);
      syllables_.pop_back();
      if (merged != 0) syllables_.push_back(Syllable{gen, merged});
      return;
    }
    syllables_.push_back(Syllable{gen, exp});
  }

  void push(const Syllable& s) { push(s.gen, s.exp); }

  GroupWord take();

 private:
  WordMode mode_;
  std::vector<Syllable> syllables_;
};

}  // namespace detail

/// A reduced word over the alphabet: adjacent syllables have distinct
/// generators, no exponent is zero, and in Involutory mode every exponent
/// is exactly 1. The empty word is the group identity. Immutable.
class GroupWord {
 public:
  explicit GroupWord(WordMode mode) : mode_(mode) {}

  static GroupWord identity(WordMode mode) { return GroupWord(mode); }

  WordMode mode() const { return mode_; }
  const std::vector<Syllable>& syllables() const { return syllables_; }

  /// Letter length: the sum of |exponent| over all syllables.
  std::int64_t length() const {
    std::int64_t n = 0;
    for (const auto& s : syllables_) n += s.exp < 0 ? -s.exp : s.exp;
    return n;
  }

  bool operator==(const GroupWord&) const = default;

 private:
  friend class detail::WordBuilder;

  GroupWord(WordMode mode, std::vector<Syllable> syllables)
      : mode_(mode), syllables_(std::move(syllables)) {}

  WordMode mode_;
  std::vector<Syllable> syllables_;
};

namespace detail {

inline GroupWord WordBuilder::take() {
  return GroupWord(mode_, std::move(syllables_));
}

inline void require_same_mode(const GroupWord& a, const GroupWord& b) {
  if (a.mode() != b.mode()) throw ModeMismatchError();
}

}  // namespace detail

/// Reduces a raw syllable list to the unique normal form in the mode's group.
/// Idempotent. Throws UnknownGeneratorError for generators outside ctx.
inline GroupWord reduce(const Context& ctx, std::span<const Syllable> raw) {
  detail::WordBuilder b(ctx.mode);
  for (const auto& s : raw) {
    ctx.require(s.gen);
    b.push(s);
  }
  return b.take();
}

inline bool is_identity(const GroupWord& w) { return w.syllables().empty(); }

/// Reduced product w1 * w2. Throws ModeMismatchError.
inline GroupWord concat(const GroupWord& w1, const GroupWord& w2) {
  detail::require_same_mode(w1, w2);
  detail::WordBuilder b(w1.mode());
  for (const auto& s : w1.syllables()) b.push(s);
  for (const auto& s : w2.syllables()) b.push(s);
  return b.take();
}

/// Group inverse. In Involutory mode every generator is self-inverse, so the
/// inverse is just the reversed word.
inline GroupWord invert(const GroupWord& w) {
  detail::WordBuilder b(w.mode());
  const auto& syls = w.syllables();
  for (auto it = syls.rbegin(); it != syls.rend(); ++it) {
    b.push(it->gen, -it->exp);
  }
  return b.take();
}

/// by^-1 * w * by, reduced.
inline GroupWord conjugate(const GroupWord& w, const GroupWord& by) {
  return concat(concat(invert(by), w), by);
}

struct LeadingPower {
  std::int64_t exponent = 0;
  GroupWord tail;
};

/// Splits w = x^n * tail with tail not starting with a power of x.
inline LeadingPower strip_leading_power(const GroupWord& w,
                                        const GeneratorId& x) {
  const auto& syls = w.syllables();
  if (syls.empty() || syls.front().gen != x) return LeadingPower{0, w};
  detail::WordBuilder b(w.mode());
  for (std::size_t i = 1; i < syls.size(); ++i) b.push(syls[i]);
  return LeadingPower{syls.front().exp, b.take()};
}

/// The single-syllable word g^exp (identity when exp reduces to zero).
inline GroupWord generator_word(const GeneratorId& gen, std::int64_t exp,
                                WordMode mode) {
  detail::WordBuilder b(mode);
  b.push(gen, exp);
  return b.take();
}

/// Serializes to the line format: `e` for the identity, otherwise
/// space-separated `g` / `g^k` tokens.
inline std::string to_string(const GroupWord& w) {
  if (is_identity(w)) return "e";
  std::string out;
  for (const auto& s : w.syllables()) {
    if (!out.empty()) out += ' ';
    out += s.gen.name;
    if (s.exp != 1) {
      out += '^';
      out += std::to_string(s.exp);
    }
  }
  return out;
}

namespace detail {

inline bool is_space(char c) { return c == ' ' || c == '\t'; }

// One `g` or `g^k` token; offset is the token start within the source line.
inline Syllable parse_word_token(std::string_view token, std::size_t offset) {
  std::size_t caret = token.find('^');
  std::string_view name = token.substr(0, caret);
  if (!is_valid_generator_name(name) && name != "e") {
    throw SyntaxError("bad generator token '" + std::string(token) + "'",
                      offset);
  }
  std::int64_t exp = 1;
  if (caret != std::string_view::npos) {
    std::string_view digits = token.substr(caret + 1);
    if (digits.empty()) throw SyntaxError("missing exponent", offset + caret);
    std::size_t i = digits.front() == '-' ? 1 : 0;
    if (i == digits.size()) throw SyntaxError("missing exponent", offset + caret);
    std::int64_t value = 0;
    for (; i < digits.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(digits[i]))) {
        throw SyntaxError("bad exponent '" + std::string(digits) + "'",
                          offset + caret);
      }
      value = value * 10 + (digits[i] - '0');
    }
    exp = digits.front() == '-' ? -value : value;
    if (exp == 0) throw SyntaxError("zero exponent", offset + caret);
  }
  return Syllable{GeneratorId{std::string(name)}, exp};
}

}  // namespace detail

/// Parses the word line format and reduces the result. `e` is the identity.
inline GroupWord parse_word(const Context& ctx, std::string_view text) {
  std::vector<Syllable> raw;
  std::size_t i = 0;
  bool saw_identity = false;
  while (i < text.size()) {
    if (detail::is_space(text[i])) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < text.size() && !detail::is_space(text[i])) ++i;
    std::string_view token = text.substr(start, i - start);
    if (token == "e") {
      saw_identity = true;
      continue;
    }
    raw.push_back(detail::parse_word_token(token, start));
  }
  if (saw_identity && !raw.empty()) {
    throw SyntaxError("identity token 'e' mixed with generators", 0);
  }
  return reduce(ctx, raw);
}

}  // namespace freerack
