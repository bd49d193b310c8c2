#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "freerack/expr.hpp"
#include "freerack/rack.hpp"

namespace freerack {

namespace detail {

inline std::span<const Sign> signs_for(WordMode mode) {
  static constexpr Sign both[] = {Sign::Pos, Sign::Neg};
  // The two operations coincide in Involutory mode; enumerating one sign
  // yields the same sets.
  return mode == WordMode::Involutory ? std::span<const Sign>(both, 1)
                                      : std::span<const Sign>(both, 2);
}

}  // namespace detail

/// An ordered free-generating candidate: fiber-canonical elements with
/// pairwise distinct projections, all in one mode. Construction validates.
class Basis {
 public:
  explicit Basis(std::vector<RackElement> elements)
      : elements_(std::move(elements)) {
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      const RackElement& e = elements_[i];
      if (e.mode() != elements_.front().mode()) throw ModeMismatchError();
      if (decompose(e).exponent != 0) {
        throw Error("basis element " + freerack::to_string(e) +
                    " is not fiber-canonical");
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (project(elements_[j]) == project(e)) {
          throw DuplicateClassError(freerack::to_string(project(e)));
        }
      }
    }
  }

  const std::vector<RackElement>& elements() const { return elements_; }
  const RackElement& operator[](std::size_t i) const { return elements_[i]; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }

 private:
  std::vector<RackElement> elements_;
};

/// Chooses, from each class x^w, the preimage element (x, w') whose word
/// carries no leading power of x. Order-preserving; throws DuplicateClassError
/// when two inputs name the same class.
inline Basis lift_basis(std::span<const QuandleElement> classes) {
  std::vector<RackElement> elements;
  elements.reserve(classes.size());
  for (const auto& q : classes) elements.push_back(q.lift());
  return Basis(std::move(elements));
}

inline ExprPtr to_expr(const NormalForm& nf, const Basis& basis) {
  ExprPtr e = element_expr(basis[nf.head]);
  if (nf.head_exponent != 0) e = make_power(std::move(e), nf.head_exponent);
  for (const auto& f : nf.tail) {
    e = make_binary(std::move(e), f.sign, element_expr(basis[f.atom]));
  }
  return e;
}

inline std::string format(const NormalForm& nf, const Basis& basis) {
  return format(*to_expr(nf, basis));
}

inline RackElement evaluate(const NormalForm& nf, const Basis& basis) {
  RackElement e = rack_power(basis[nf.head], nf.head_exponent);
  for (const auto& f : nf.tail) e = rack_op(e, basis[f.atom], f.sign);
  return e;
}

/// Saturation of a generating set under both operations, truncated at a word
/// length bound. `truncated` records whether any product was discarded for
/// exceeding the bound; an untruncated set is the entire subrack.
struct ClosureSet {
  std::vector<RackElement> elements;  // sorted by serialization
  std::int64_t bound = 0;
  std::vector<RackElement> generators;
  bool truncated = false;

  bool contains(const RackElement& e) const {
    return std::binary_search(elements.begin(), elements.end(), e,
                              [](const RackElement& a, const RackElement& b) {
                                return freerack::to_string(a) <
                                       freerack::to_string(b);
                              });
  }
};

/// Fixed point of acting with every element currently in the set (not only
/// the generators), discarding results whose word exceeds the length bound.
/// Deterministic: the result is sorted by serialization.
inline ClosureSet closure(std::span<const RackElement> generators,
                          std::int64_t length_bound) {
  for (const auto& g : generators) {
    if (g.word.length() > length_bound) {
      throw BoundTooSmallError(length_bound, g.word.length());
    }
  }
  ClosureSet result;
  result.bound = length_bound;
  result.generators.assign(generators.begin(), generators.end());

  std::vector<RackElement> members;
  std::unordered_set<std::string> seen;
  auto add = [&](const RackElement& e) {
    if (seen.insert(freerack::to_string(e)).second) members.push_back(e);
  };
  for (const auto& g : generators) add(g);

  for (std::size_t i = 0; i < members.size(); ++i) {
    const std::size_t frontier = members.size();
    for (std::size_t j = 0; j < frontier; ++j) {
      for (Sign s : detail::signs_for(members[i].mode())) {
        for (const auto& candidate :
             {rack_op(members[i], members[j], s),
              rack_op(members[j], members[i], s)}) {
          if (candidate.word.length() > length_bound) {
            result.truncated = true;
          } else {
            add(candidate);
          }
        }
      }
    }
  }

  std::sort(members.begin(), members.end(),
            [](const RackElement& a, const RackElement& b) {
              return freerack::to_string(a) < freerack::to_string(b);
            });
  result.elements = std::move(members);
  return result;
}

namespace detail {

/// Quandle-side saturation with optional witness expressions. Witnesses
/// evaluate (on the rack side) into the fiber of the class they index.
struct QuandleClosure {
  std::vector<QuandleElement> elements;  // insertion order
  std::vector<ExprPtr> witnesses;        // parallel; empty when not tracked
  std::unordered_map<std::string, std::size_t> index;
  bool truncated = false;

  const QuandleElement* find(const QuandleElement& q) const {
    auto it = index.find(freerack::to_string(q));
    return it == index.end() ? nullptr : &elements[it->second];
  }
};

inline QuandleClosure quandle_closure(std::span<const QuandleElement> classes,
                                      std::span<const ExprPtr> class_witnesses,
                                      std::int64_t length_bound) {
  QuandleClosure result;
  const bool track = !class_witnesses.empty();
  auto add = [&](const QuandleElement& q, ExprPtr witness) {
    auto [it, inserted] =
        result.index.emplace(freerack::to_string(q), result.elements.size());
    if (!inserted) return;
    result.elements.push_back(q);
    if (track) result.witnesses.push_back(std::move(witness));
  };
  // Callers guarantee the input classes fit under the bound.
  for (std::size_t i = 0; i < classes.size(); ++i) {
    add(classes[i], track ? class_witnesses[i] : nullptr);
  }
  auto& els = result.elements;
  for (std::size_t i = 0; i < els.size(); ++i) {
    const std::size_t frontier = els.size();
    for (std::size_t j = 0; j < frontier; ++j) {
      for (Sign s : signs_for(els[i].mode())) {
        const std::pair<std::size_t, std::size_t> orders[] = {{i, j}, {j, i}};
        for (auto [l, r] : orders) {
          QuandleElement q = quandle_op(els[l], els[r], s);
          if (q.word().length() > length_bound) {
            result.truncated = true;
            continue;
          }
          add(q, track ? make_binary(result.witnesses[l], s,
                                     result.witnesses[r])
                       : nullptr);
        }
      }
    }
  }
  return result;
}

}  // namespace detail

/// Three-valued bounded membership: a Member carries an expression over the
/// generators that evaluates exactly to the queried element; NonMember is
/// certified; Unknown records search exhaustion.
struct MembershipAnswer {
  enum class Kind { Member, NonMember, Unknown };

  Kind kind = Kind::Unknown;
  ExprPtr witness;     // set for Member
  std::string reason;  // set for NonMember / Unknown
};

/// Membership of e in the subrack generated by `generators`, decided through
/// the quandle image: e lies in the subrack iff its class lies in the image
/// subquandle, and then the whole fiber does, so a found class witness is
/// corrected by a head power.
inline MembershipAnswer rack_member(const RackElement& e,
                                    std::span<const RackElement> generators,
                                    std::int64_t bound) {
  if (generators.empty()) {
    return {MembershipAnswer::Kind::NonMember, nullptr,
            "empty generating set"};
  }
  bool base_hit = false;
  for (const auto& g : generators) base_hit |= g.base == e.base;
  if (!base_hit) {
    return {MembershipAnswer::Kind::NonMember, nullptr,
            "no generator lies in a conjugacy class of '" + e.base.name +
                "'"};
  }

  std::vector<QuandleElement> classes;
  std::vector<ExprPtr> witnesses;
  classes.reserve(generators.size());
  for (const auto& g : generators) {
    classes.push_back(project(g));
    witnesses.push_back(element_expr(g));
  }
  for (const auto& q : classes) {
    if (q.word().length() > bound) {
      return {MembershipAnswer::Kind::Unknown, nullptr,
              "length bound " + std::to_string(bound) +
                  " is smaller than a generator class"};
    }
  }
  auto closure = detail::quandle_closure(classes, witnesses, bound);

  QuandleElement target = project(e);
  auto it = closure.index.find(to_string(target));
  if (it == closure.index.end()) {
    if (closure.truncated) {
      return {MembershipAnswer::Kind::Unknown, nullptr,
              "length bound " + std::to_string(bound) + " exhausted"};
    }
    return {MembershipAnswer::Kind::NonMember, nullptr,
            "image subquandle saturated at bound " + std::to_string(bound) +
                " does not contain the class"};
  }

  ExprPtr witness = closure.witnesses[it->second];
  RackElement landed = detail::evaluate_expr(*witness, e.mode());
  std::int64_t shift = decompose(e).exponent - decompose(landed).exponent;
  if (e.mode() == WordMode::Involutory) {
    shift = detail::involutory_exp(shift);
  }
  if (shift != 0) witness = make_power(std::move(witness), shift);
  if (!(detail::evaluate_expr(*witness, e.mode()) == e)) {
    throw Error("internal: membership witness failed to evaluate back");
  }
  return {MembershipAnswer::Kind::Member, std::move(witness), ""};
}

/// Result of normal-form extraction: Found carries the form; NotInSpan is a
/// certificate; Unknown means a search bound was exhausted.
struct ExpressResult {
  enum class Kind { Found, NotInSpan, Unknown };

  Kind kind = Kind::Unknown;
  NormalForm form;     // set for Found
  std::string detail;  // set for NotInSpan / Unknown
};

namespace detail {

struct PeelSearch {
  const RackElement& target;
  const Basis& basis;
  std::int64_t depth_bound;

  GeneratorId base;
  std::int64_t target_exponent = 0;
  GroupWord target_class_word;
  WordMode mode;

  // factor(Pos/Neg) per basis element: u^-1 x^{+-1} u, always length 2|u|+1.
  std::vector<GroupWord> factor_pos;
  std::vector<GroupWord> factor_neg;
  std::vector<GroupWord> factor_pos_inv;
  std::vector<GroupWord> factor_neg_inv;
  std::int64_t max_factor_length = 1;
  std::int64_t max_head_length = 0;

  std::unordered_map<std::string, std::int64_t> failed;  // state -> budget
  std::int64_t expansions = 0;
  bool truncated = false;

  static constexpr std::int64_t kExpansionCap = 500000;

  explicit PeelSearch(const RackElement& e, const Basis& b, std::int64_t bound)
      : target(e), basis(b), depth_bound(bound), base(e.base),
        target_class_word(GroupWord::identity(e.mode())), mode(e.mode()) {
    auto dec = decompose(e);
    target_exponent = dec.exponent;
    target_class_word = dec.rep.word();
    for (const auto& r : basis.elements()) {
      GroupWord pos = conjugate(generator_word(r.base, 1, mode), r.word);
      GroupWord neg = conjugate(generator_word(r.base, -1, mode), r.word);
      max_factor_length = std::max(max_factor_length, pos.length());
      if (r.base == base) {
        max_head_length = std::max(max_head_length, r.word.length());
      }
      factor_pos_inv.push_back(invert(pos));
      factor_neg_inv.push_back(invert(neg));
      factor_pos.push_back(std::move(pos));
      factor_neg.push_back(std::move(neg));
    }
  }

  const GroupWord& factor(Sign s, std::size_t i) const {
    return s == Sign::Pos ? factor_pos[i] : factor_neg[i];
  }

  const GroupWord& factor_inverse(Sign s, std::size_t i) const {
    return s == Sign::Pos ? factor_pos_inv[i] : factor_neg_inv[i];
  }

  // Solves the head exponent exactly: target.word = x^k * u_head * c with c
  // the tail conjugator, then verifies the whole form by evaluation.
  std::optional<NormalForm> assemble(std::size_t head,
                                     std::span<const NormalForm::Factor> tail) {
    GroupWord conjugator = GroupWord::identity(mode);
    for (const auto& f : tail) {
      conjugator = concat(conjugator, factor(f.sign, f.atom));
    }
    GroupWord stem = concat(basis[head].word, conjugator);
    GroupWord power_part = concat(target.word, invert(stem));
    auto split = strip_leading_power(power_part, base);
    if (!is_identity(split.tail)) return std::nullopt;
    NormalForm nf;
    nf.head = head;
    nf.head_exponent = split.exponent;
    nf.tail.assign(tail.begin(), tail.end());
    if (!(evaluate(nf, basis) == target)) return std::nullopt;
    return nf;
  }

  // Depth-first right-peeling over canonical class words. `peeled` holds the
  // factors removed so far, last tail factor first.
  std::optional<NormalForm> dfs(const GroupWord& class_word,
                                std::int64_t depth_left,
                                std::vector<NormalForm::Factor>& peeled) {
    // Acceptance and branch legality below depend on the most recent peel,
    // so it is part of the memo key.
    std::string key = freerack::to_string(class_word) + '#';
    if (peeled.empty()) {
      key += '-';
    } else {
      key += std::to_string(peeled.back().atom);
      key += peeled.back().sign == Sign::Pos ? '+' : '-';
    }
    if (auto it = failed.find(key);
        it != failed.end() && it->second >= depth_left) {
      return std::nullopt;
    }
    if (++expansions > kExpansionCap) {
      truncated = true;
      return std::nullopt;
    }

    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (basis[i].base != base || !(basis[i].word == class_word)) continue;
      // The first tail atom must differ from the head; such a factor merges
      // into the head exponent instead of standing in the tail.
      if (!peeled.empty() && peeled.back().atom == i) continue;
      std::vector<NormalForm::Factor> tail(peeled.rbegin(), peeled.rend());
      if (auto nf = assemble(i, tail)) return nf;
    }

    if (depth_left == 0) {
      if (!basis.empty()) truncated = true;
      failed[key] = std::max(failed[key], depth_left);
      return std::nullopt;
    }

    // A peel shrinks the word by at most one factor length (once the word is
    // longer than any factor), so a state too far above every head word is
    // dead within the remaining budget.
    std::int64_t floor_base = std::max(max_head_length, max_factor_length);
    if (class_word.length() > floor_base + depth_left * max_factor_length) {
      auto [floor_it, floor_inserted] = failed.emplace(key, depth_left);
      if (!floor_inserted) {
        floor_it->second = std::max(floor_it->second, depth_left);
      }
      return std::nullopt;
    }

    // Un-peel candidates ordered by how much of the factor cancels against
    // the right end of the current word; ties follow basis order, Pos first.
    struct Branch {
      std::int64_t score;
      std::size_t order;
      Sign sign;
      std::size_t atom;
      GroupWord next_word;
    };
    std::vector<Branch> branches;
    // Any word reachable by a genuine peel path of this depth stays under
    // this cap, so pruning by it loses nothing.
    std::int64_t steps_taken =
        static_cast<std::int64_t>(peeled.size()) + 1;
    std::int64_t length_cap =
        target_class_word.length() + steps_taken * max_factor_length;
    std::size_t order = 0;
    for (std::size_t j = 0; j < basis.size(); ++j) {
      for (Sign s : signs_for(mode)) {
        // Keep the tail reduced: a factor may not undo the one that follows
        // it in the forward order.
        if (!peeled.empty() && peeled.back().atom == j &&
            (mode == WordMode::Involutory ||
             peeled.back().sign == opposite(s))) {
          ++order;
          continue;
        }
        const GroupWord& f = factor(s, j);
        GroupWord raw = concat(class_word, factor_inverse(s, j));
        std::int64_t score = class_word.length() + f.length() - raw.length();
        auto split = strip_leading_power(raw, base);
        if (split.tail.length() > length_cap) {
          ++order;
          continue;
        }
        branches.push_back(Branch{score, order++, s, j, split.tail});
      }
    }
    std::sort(branches.begin(), branches.end(),
              [](const Branch& a, const Branch& b) {
                return a.score != b.score ? a.score > b.score
                                          : a.order < b.order;
              });
    for (const auto& br : branches) {
      peeled.push_back(NormalForm::Factor{br.sign, br.atom});
      auto nf = dfs(br.next_word, depth_left - 1, peeled);
      peeled.pop_back();
      if (nf) return nf;
    }
    auto [it, inserted] = failed.emplace(key, depth_left);
    if (!inserted) it->second = std::max(it->second, depth_left);
    return std::nullopt;
  }
};

}  // namespace detail

/// Extracts the normal form of e over the basis by right-peeling conjugation
/// factors from the quandle image, then solving the head exponent exactly.
/// `bound` limits the peel depth (and the certificate closure length). The
/// peel recursion depth is additionally capped at 1024.
inline ExpressResult express_over_basis(const RackElement& e,
                                        const Basis& basis,
                                        std::int64_t bound) {
  bool base_found = false;
  for (const auto& r : basis.elements()) base_found |= r.base == e.base;
  if (!base_found) {
    return {ExpressResult::Kind::NotInSpan, NormalForm{},
            "no basis element lies in a conjugacy class of '" + e.base.name +
                "'"};
  }

  // Iterative deepening: short forms are found without exploring the deep
  // misordered branches first. The budget-aware memo carries over between
  // rounds (a failure at budget d never prunes a visit with a larger budget).
  std::int64_t depth = std::min<std::int64_t>(bound, 1024);
  detail::PeelSearch search(e, basis, depth);
  for (std::int64_t round = 0; round <= depth; ++round) {
    std::vector<NormalForm::Factor> peeled;
    if (auto nf = search.dfs(search.target_class_word, round, peeled)) {
      return {ExpressResult::Kind::Found, std::move(*nf), ""};
    }
    if (search.expansions > detail::PeelSearch::kExpansionCap) break;
  }

  std::vector<QuandleElement> classes;
  classes.reserve(basis.size());
  for (const auto& r : basis.elements()) classes.push_back(project(r));
  for (const auto& q : classes) {
    if (q.word().length() > bound) {
      return {ExpressResult::Kind::Unknown, NormalForm{},
              "length bound " + std::to_string(bound) +
                  " is smaller than a basis class"};
    }
  }
  auto closure = detail::quandle_closure(classes, {}, bound);
  if (!closure.truncated && closure.find(project(e)) == nullptr) {
    return {ExpressResult::Kind::NotInSpan, NormalForm{},
            "image subquandle saturated at bound " + std::to_string(bound) +
                " does not contain the class"};
  }
  return {ExpressResult::Kind::Unknown, NormalForm{},
          "peel bound " + std::to_string(bound) + " exhausted"};
}

/// Verdict of the bounded freeness check.
struct FreeBasisResult {
  enum class Kind { Free, NotFree, Unknown };

  Kind kind = Kind::Unknown;
  std::string witness;  // violated identity for NotFree, note for Unknown
};

namespace detail {

struct NormalFormSampler {
  const Basis& basis;
  std::int64_t max_tail;
  std::int64_t max_exponent;
  std::mt19937_64 rng;

  NormalForm sample() {
    WordMode mode = basis[0].mode();
    NormalForm nf;
    nf.head = rng() % basis.size();
    if (mode == WordMode::Involutory) {
      nf.head_exponent = static_cast<std::int64_t>(rng() % 2);
    } else {
      nf.head_exponent =
          static_cast<std::int64_t>(rng() % (2 * max_exponent + 1)) -
          max_exponent;
    }
    std::int64_t len = basis.size() > 1
                           ? static_cast<std::int64_t>(rng() % (max_tail + 1))
                           : 0;
    std::size_t previous = nf.head;
    Sign previous_sign = Sign::Pos;
    for (std::int64_t t = 0; t < len; ++t) {
      // Keep the form reduced: the first atom differs from the head and no
      // factor undoes its predecessor.
      while (true) {
        std::size_t atom = rng() % basis.size();
        Sign sign = mode == WordMode::Involutory
                        ? Sign::Pos
                        : (rng() % 2 == 0 ? Sign::Pos : Sign::Neg);
        bool cancels_previous =
            !nf.tail.empty() && atom == previous &&
            (mode == WordMode::Involutory || sign == opposite(previous_sign));
        bool repeats_head = nf.tail.empty() && atom == nf.head;
        if (cancels_previous || repeats_head) continue;
        nf.tail.push_back(NormalForm::Factor{sign, atom});
        previous = atom;
        previous_sign = sign;
        break;
      }
    }
    return nf;
  }
};

inline std::string structural_key(const NormalForm& nf) {
  std::string key = std::to_string(nf.head) + '^' +
                    std::to_string(nf.head_exponent);
  for (const auto& f : nf.tail) {
    key += f.sign == Sign::Pos ? '+' : '-';
    key += std::to_string(f.atom);
  }
  return key;
}

}  // namespace detail

/// Bounded freeness check: basis invariants, pairwise non-expressibility
/// within the bound, and random distinct normal forms evaluating to distinct
/// elements. False verdicts carry a witness identity.
inline FreeBasisResult is_free_basis(std::span<const RackElement> candidate,
                                     std::int64_t bound) {
  if (candidate.empty()) return {FreeBasisResult::Kind::Free, ""};
  for (const auto& e : candidate) {
    if (e.mode() != candidate.front().mode()) throw ModeMismatchError();
  }

  // Same-fiber pairs are dependent: the later element is a self-power of the
  // earlier one.
  for (std::size_t i = 0; i < candidate.size(); ++i) {
    for (std::size_t j = i + 1; j < candidate.size(); ++j) {
      if (!(project(candidate[i]) == project(candidate[j]))) continue;
      std::int64_t shift =
          decompose(candidate[j]).exponent - decompose(candidate[i]).exponent;
      if (shift == 0) {
        return {FreeBasisResult::Kind::NotFree,
                "duplicate element " + to_string(candidate[i])};
      }
      return {FreeBasisResult::Kind::NotFree,
              to_string(candidate[j]) + " = " +
                  format(*make_power(element_expr(candidate[i]), shift))};
    }
  }
  for (const auto& e : candidate) {
    if (std::int64_t n = decompose(e).exponent; n != 0) {
      return {FreeBasisResult::Kind::NotFree,
              to_string(e) + " is not fiber-canonical (leading exponent " +
                  std::to_string(n) + ")"};
    }
  }

  bool inconclusive = false;
  std::string note;
  for (std::size_t i = 0; i < candidate.size(); ++i) {
    std::vector<RackElement> rest;
    rest.reserve(candidate.size() - 1);
    for (std::size_t j = 0; j < candidate.size(); ++j) {
      if (j != i) rest.push_back(candidate[j]);
    }
    if (rest.empty()) continue;
    Basis others(std::move(rest));
    ExpressResult r = express_over_basis(candidate[i], others, bound);
    if (r.kind == ExpressResult::Kind::Found) {
      return {FreeBasisResult::Kind::NotFree,
              to_string(candidate[i]) + " = " + format(r.form, others)};
    }
    if (r.kind == ExpressResult::Kind::Unknown) {
      inconclusive = true;
      note = "independence of " + to_string(candidate[i]) +
             " undecided: " + r.detail;
    }
  }

  // Distinct reduced forms must evaluate to distinct elements.
  Basis basis(std::vector<RackElement>(candidate.begin(), candidate.end()));
  detail::NormalFormSampler sampler{
      basis, std::min<std::int64_t>(bound, 4), 3,
      std::mt19937_64(0x5EED5EEDULL)};
  std::unordered_map<std::string, NormalForm> by_value;
  std::unordered_set<std::string> sampled;
  for (int trial = 0; trial < 300; ++trial) {
    NormalForm nf = sampler.sample();
    if (!sampled.insert(detail::structural_key(nf)).second) continue;
    std::string value = to_string(evaluate(nf, basis));
    auto [it, inserted] = by_value.emplace(value, nf);
    if (!inserted) {
      return {FreeBasisResult::Kind::NotFree,
              format(it->second, basis) + " = " + format(nf, basis)};
    }
  }

  if (inconclusive) return {FreeBasisResult::Kind::Unknown, note};
  return {FreeBasisResult::Kind::Free, ""};
}

/// Outcome of the bounded basis heuristic.
struct NielsenResult {
  enum class Kind { Reduced, Unknown };

  Kind kind = Kind::Unknown;
  std::optional<Basis> basis;  // set for Reduced
  std::string detail;
};

/// Desk-scale generating-set simplification: canonicalize each generator to
/// its fiber representative, drop any generator expressible over the others
/// within the bound, repeat until stable, then confirm freeness. Heuristic:
/// never claims completeness.
inline NielsenResult nielsen_reduce(std::span<const RackElement> generators,
                                    std::int64_t bound) {
  std::vector<RackElement> elements;
  std::unordered_set<std::string> seen;
  for (const auto& g : generators) {
    RackElement canonical = project(g).lift();
    if (seen.insert(to_string(canonical)).second) {
      elements.push_back(std::move(canonical));
    }
  }

  bool changed = true;
  while (changed && elements.size() > 1) {
    changed = false;
    for (std::size_t i = 0; i < elements.size(); ++i) {
      std::vector<RackElement> rest;
      rest.reserve(elements.size() - 1);
      for (std::size_t j = 0; j < elements.size(); ++j) {
        if (j != i) rest.push_back(elements[j]);
      }
      ExpressResult r = express_over_basis(elements[i], Basis(std::move(rest)),
                                           bound);
      if (r.kind == ExpressResult::Kind::Found) {
        elements.erase(elements.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }

  FreeBasisResult verdict = is_free_basis(elements, bound);
  if (verdict.kind == FreeBasisResult::Kind::Free) {
    return {NielsenResult::Kind::Reduced, Basis(std::move(elements)), ""};
  }
  std::string why = verdict.kind == FreeBasisResult::Kind::NotFree
                        ? "reduced set is still dependent: " + verdict.witness
                        : verdict.witness;
  return {NielsenResult::Kind::Unknown, std::nullopt, why};
}

}  // namespace freerack
