// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Usage:
//   acceptance <cli-binary> <golden-transcript> [--record]
// --record rewrites the golden transcript from the current CLI output.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "test_support.hpp"

namespace {

using namespace freerack;
using namespace testsupport;

struct Outcome {
  bool pass = false;
  std::string note;
};

std::string plural(std::size_t n, const char* unit) {
  return std::to_string(n) + " " + unit;
}

// ---------------------------------------------------------------- criterion 1

Outcome axiom_suite() {
  auto start = std::chrono::steady_clock::now();
  std::size_t triples = 0;
  std::size_t pairs = 0;
  for (WordMode mode : {WordMode::Free, WordMode::Involutory}) {
    Context ctx = make_context(mode, 4);
    std::mt19937_64 rng(mode == WordMode::Free ? 101 : 102);
    std::vector<RackTriple> sample;
    sample.reserve(10000);
    for (int i = 0; i < 10000; ++i) {
      sample.push_back(random_triple(ctx, rng, 8));
    }
    AxiomReport report = check_axioms(sample);
    if (!report.ok()) {
      return {false, std::string(to_string(mode)) + ": " +
                         report.counterexamples.front()};
    }
    triples += report.triples_checked;
    pairs += report.pairs_checked;
  }
  double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (seconds >= 10.0) {
    return {false, "took " + std::to_string(seconds) + "s (limit 10s)"};
  }
  std::ostringstream note;
  note.precision(2);
  note << std::fixed << plural(triples, "triples") << ", "
       << plural(pairs, "pairs") << ", " << seconds << "s";
  return {true, note.str()};
}

// ---------------------------------------------------------------- criterion 2

Outcome homomorphism(WordMode mode) {
  Context ctx = make_context(mode, 4);
  std::mt19937_64 rng(mode == WordMode::Free ? 201 : 202);
  for (int i = 0; i < 10000; ++i) {
    RackElement e1 = random_element(ctx, rng, 8);
    RackElement e2 = random_element(ctx, rng, 8);
    for (Sign s : {Sign::Pos, Sign::Neg}) {
      if (!(project(rack_op(e1, e2, s)) ==
            quandle_op(project(e1), project(e2), s))) {
        return {false, "projection failed on " + to_string(e1) + ", " +
                           to_string(e2)};
      }
    }
  }
  return {true, "10000 pairs, both signs"};
}

// ---------------------------------------------------------------- criterion 3

RackElement power_by_iteration(const RackElement& e, std::int64_t k) {
  Sign sign = k >= 0 ? Sign::Pos : Sign::Neg;
  RackElement current = e;
  for (std::int64_t i = 0; i < (k < 0 ? -k : k); ++i) {
    current = rack_op(current, e, sign);
  }
  return current;
}

Outcome push_power(WordMode mode) {
  Context ctx = make_context(mode, 4);
  std::mt19937_64 rng(mode == WordMode::Free ? 301 : 302);
  for (int i = 0; i < 1000; ++i) {
    RackElement r = random_element(ctx, rng, 6);
    RackElement t = random_element(ctx, rng, 6);
    for (Sign s : {Sign::Pos, Sign::Neg}) {
      for (std::int64_t k = -6; k <= 6; ++k) {
        if (!(rack_power(rack_op(r, t, s), k) ==
              rack_op(rack_power(r, k), t, s))) {
          return {false, "push-power failed on " + to_string(r) + ", " +
                             to_string(t) + ", k=" + std::to_string(k)};
        }
      }
    }
  }
  for (int i = 0; i < 1000; ++i) {
    RackElement e = random_element(ctx, rng, 6);
    for (std::int64_t k = -10; k <= 10; ++k) {
      if (!(rack_power(e, k) == power_by_iteration(e, k))) {
        return {false, "closed form failed on " + to_string(e) +
                           ", k=" + std::to_string(k)};
      }
    }
  }
  return {true, "1000 pairs |k|<=6, 1000 elements |k|<=10"};
}

// ---------------------------------------------------------------- criterion 4

Outcome fiber_law(WordMode mode) {
  Context ctx = make_context(mode, 4);
  std::mt19937_64 rng(mode == WordMode::Free ? 401 : 402);
  for (int i = 0; i < 100; ++i) {
    RackElement e = random_element(ctx, rng, 4);
    std::int64_t bound = e.word.length() + 1 + static_cast<std::int64_t>(
                                                   rng() % 4);
    ClosureSet cs = closure(std::vector<RackElement>{e}, bound);
    std::set<std::string> expected;
    for (std::int64_t n = -2 * bound - 2; n <= 2 * bound + 2; ++n) {
      RackElement fiber_mate = rack_power(e, n);
      if (fiber_mate.word.length() <= bound) {
        expected.insert(to_string(fiber_mate));
      }
    }
    std::vector<std::string> got;
    for (const auto& m : cs.elements) got.push_back(to_string(m));
    if (std::vector<std::string>(expected.begin(), expected.end()) != got) {
      return {false, "fiber mismatch for " + to_string(e) + " at bound " +
                         std::to_string(bound)};
    }
    if (mode == WordMode::Involutory && cs.elements.size() > 2) {
      return {false, "involutory fiber larger than 2 for " + to_string(e)};
    }
  }
  return {true, "100 fibers saturate exactly"};
}

// ---------------------------------------------------------------- criterion 5

Outcome uniqueness_roundtrip(WordMode mode) {
  Context ctx = make_context(mode, 4);
  std::mt19937_64 rng(mode == WordMode::Free ? 501 : 502);
  std::size_t forms_checked = 0;
  for (int instance = 0; instance < 200; ++instance) {
    Basis basis = random_distinct_base_basis(ctx, rng, 4, 3);
    std::map<std::string, std::string> value_to_key;  // element -> form key
    for (int f = 0; f < 5; ++f) {
      NormalForm nf = random_normal_form(basis, rng, 5, 4);
      RackElement value = evaluate(nf, basis);
      ExpressResult r = express_over_basis(value, basis, 8);
      if (r.kind != ExpressResult::Kind::Found) {
        return {false, "no form recovered for " + to_string(value) +
                           " (expected " + format(nf, basis) + ")"};
      }
      if (!(r.form == nf)) {
        return {false, "round-trip mismatch: sampled " + format(nf, basis) +
                           ", recovered " + format(r.form, basis)};
      }
      ++forms_checked;
      std::string key = format(nf, basis);
      auto [it, inserted] = value_to_key.emplace(to_string(value), key);
      if (!inserted && it->second != key) {
        return {false, "collision: " + it->second + " = " + key};
      }
    }
  }
  return {true, plural(forms_checked, "normal forms round-tripped")};
}

// ---------------------------------------------------------------- criterion 6

Outcome membership_reduction(WordMode mode) {
  Context ctx = make_context(mode, 3);
  std::mt19937_64 rng(mode == WordMode::Free ? 601 : 602);
  std::size_t instances = 0;
  std::size_t probes_checked = 0;
  while (instances < 220) {
    std::size_t count = 1 + rng() % 3;
    std::int64_t bound = count == 1 ? 4 + static_cast<std::int64_t>(rng() % 5)
                        : count == 2
                            ? 3 + static_cast<std::int64_t>(rng() % 3)
                            : 2 + static_cast<std::int64_t>(rng() % 2);
    std::vector<RackElement> gens;
    for (std::size_t i = 0; i < count; ++i) {
      gens.push_back(random_element(ctx, rng, 2));
    }
    bool fits = true;
    for (const auto& g : gens) fits &= g.word.length() <= bound;
    if (!fits) continue;
    ++instances;

    auto rack_oracle = oracle_rack_closure(gens, bound);
    std::vector<QuandleElement> classes;
    for (const auto& g : gens) classes.push_back(project(g));
    auto quandle_oracle = oracle_quandle_closure(classes, bound);

    std::vector<RackElement> probes;
    for (const auto& [key, value] : rack_oracle.elements) {
      probes.push_back(value);
      if (probes.size() >= 12) break;
    }
    for (int i = 0; i < 12; ++i) {
      probes.push_back(random_element(ctx, rng, bound));
    }

    for (const auto& e : probes) {
      ++probes_checked;
      MembershipAnswer answer = rack_member(e, gens, bound);
      bool in_rack = rack_oracle.contains(e);
      bool in_quandle = quandle_oracle.contains(project(e));
      bool base_covered = false;
      for (const auto& g : gens) base_covered |= g.base == e.base;
      switch (answer.kind) {
        case MembershipAnswer::Kind::Member:
          if (!in_quandle) {
            return {false, "member verdict disagrees with quandle oracle on " +
                               to_string(e)};
          }
          if (!(detail::evaluate_expr(*answer.witness, mode) == e)) {
            return {false, "witness does not evaluate back to " +
                               to_string(e)};
          }
          break;
        case MembershipAnswer::Kind::NonMember:
          // Base disjointness certifies on its own; the saturated-closure
          // certificate additionally requires an untruncated oracle closure.
          if (in_rack || in_quandle ||
              (base_covered && quandle_oracle.truncated)) {
            return {false, "non-member certificate wrong for " + to_string(e)};
          }
          break;
        case MembershipAnswer::Kind::Unknown:
          if (in_rack) {
            return {false,
                    "unknown despite rack-side witness for " + to_string(e)};
          }
          if (!quandle_oracle.truncated) {
            return {false, "unknown despite saturated closure for " +
                               to_string(e)};
          }
          break;
      }
      if (in_rack && answer.kind != MembershipAnswer::Kind::Member) {
        return {false, "missed member " + to_string(e)};
      }
    }
  }
  return {true, plural(instances, "instances") + ", " +
                    plural(probes_checked, "probes")};
}

// ---------------------------------------------------------------- criterion 7

Outcome involutory_suite() {
  Context ctx = make_context(WordMode::Involutory, 4);
  std::mt19937_64 rng(701);
  for (int i = 0; i < 5000; ++i) {
    RackElement e = random_element(ctx, rng, 8);
    RackElement t = random_element(ctx, rng, 8);
    if (!(rack_op(rack_op(e, t, Sign::Pos), t, Sign::Pos) == e)) {
      return {false, "e |> t |> t != e on " + to_string(e) + ", " +
                         to_string(t)};
    }
    if (!(rack_op(e, t, Sign::Pos) == rack_op(e, t, Sign::Neg))) {
      return {false, "signs differ on " + to_string(e) + ", " + to_string(t)};
    }
  }
  struct Step {
    const char* label;
    Outcome outcome;
  };
  const Step steps[] = {
      {"homomorphism", homomorphism(WordMode::Involutory)},
      {"push-power", push_power(WordMode::Involutory)},
      {"fiber law", fiber_law(WordMode::Involutory)},
      {"uniqueness", uniqueness_roundtrip(WordMode::Involutory)},
      {"membership", membership_reduction(WordMode::Involutory)},
  };
  for (const auto& step : steps) {
    if (!step.outcome.pass) {
      return {false, std::string(step.label) + ": " + step.outcome.note};
    }
  }
  return {true, "5000 sign-identity pairs; criteria 2-6 rerun involutory"};
}

// ---------------------------------------------------------------- criterion 8

std::string shell_quote(const std::string& arg) {
  const std::string plain =
      "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_-=,./";
  if (!arg.empty() && arg.find_first_not_of(plain) == std::string::npos) {
    return arg;
  }
  return "'" + arg + "'";
}

std::pair<std::string, int> run_command(const std::string& command) {
  FILE* pipe = popen((command + " 2>&1").c_str(), "r");
  if (pipe == nullptr) return {"<popen failed>", -1};
  std::string output;
  char buffer[4096];
  std::size_t n = 0;
  while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0) {
    output.append(buffer, n);
  }
  int status = pclose(pipe);
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {output, code};
}

std::string build_transcript(const std::string& cli) {
  const std::vector<std::vector<std::string>> calls = {
      {"eval", "--alphabet", "a,b", "a |> b"},
      {"eval", "--alphabet", "a,b", "a^2 |> b"},
      {"eval", "--alphabet", "a,b", "a |>- a"},
      {"eval", "--alphabet", "a,b,c", "(a; b^-1) |> c"},
      {"eval", "--alphabet", "a,b", "--mode", "involutory", "a |> b |> b"},
      {"eq", "--alphabet", "a,b", "(a |> b)^3", "a^3 |> b"},
      {"eq", "--alphabet", "a,b", "a |> a", "a"},
      {"eq", "--alphabet", "a,b", "a |> b |>- b", "a"},
      {"eq", "--alphabet", "a,b", "--mode", "involutory", "a |> b", "a |>- b"},
      {"canon", "--alphabet", "a,b", "(a; a^2 b)"},
      {"canon", "--alphabet", "a,b", "(a; b)"},
      {"canon", "--alphabet", "a,b", "--mode", "involutory", "(a; a b)"},
      {"member", "--alphabet", "a", "(a; a^5)", "--gens", "(a; e)"},
      {"member", "--alphabet", "a,b", "(b; e)", "--gens", "(a; e)"},
      {"member", "--alphabet", "a,b", "(a; b)", "--gens", "(a; e)"},
      {"member", "--alphabet", "a,b,c", "(a; c)", "--gens", "(a; e),(b; e)",
       "--bound", "2"},
      {"member", "--alphabet", "a,b", "--mode", "involutory", "(a; a)",
       "--gens", "(a; e)"},
      {"closure", "--alphabet", "a", "--gens", "(a; e)", "--bound", "3"},
      {"closure", "--alphabet", "a,b", "--mode", "involutory", "--gens",
       "(a; b)", "--bound", "3"},
      {"closure", "--alphabet", "a", "--bound", "3"},
      {"basis-lift", "--alphabet", "a,b", "--classes", "(a; a^2 b),(b; e)"},
      {"basis-lift", "--alphabet", "a,b", "--classes", "(a; b),(a; a^3 b)"},
      {"express", "--alphabet", "a,b", "(a; a^2 b)", "--basis",
       "(a; e),(b; e)"},
      {"express", "--alphabet", "a,b", "(a; b a)", "--basis", "(a; e),(b; e)"},
      {"express", "--alphabet", "a,b", "(a; b)", "--basis", "(a; e)"},
      {"express", "--alphabet", "a,b,c", "(a; c)", "--basis", "(a; e),(b; e)",
       "--bound", "2"},
      {"express", "--alphabet", "a,b", "--mode", "involutory", "(a; a b)",
       "--basis", "(a; e),(b; e)"},
      {"axioms-check", "--alphabet", "a,b,c", "--samples", "200", "--seed",
       "7"},
      {"axioms-check", "--alphabet", "a,b,c", "--mode", "involutory",
       "--samples", "200", "--seed", "7"},
      {"eval", "--alphabet", "a,b", "a |>"},
      {"eval", "--alphabet", "a,b", "a |> z"},
      {"closure", "--alphabet", "a,b", "--gens", "(a; b^4)", "--bound", "2"},
  };
  std::string transcript;
  for (const auto& args : calls) {
    std::string display = "freerack";
    std::string command = shell_quote(cli);
    for (const auto& a : args) {
      display += " " + shell_quote(a);
      command += " " + shell_quote(a);
    }
    auto [output, code] = run_command(command);
    transcript += "$ " + display + "\n" + output +
                  "exit=" + std::to_string(code) + "\n\n";
  }
  return transcript;
}

Outcome cli_golden(const std::string& cli, const std::string& golden_path,
                   bool record) {
  std::string transcript = build_transcript(cli);
  if (record) {
    std::ofstream out(golden_path, std::ios::binary);
    out << transcript;
    return {true, "recorded " + golden_path};
  }
  std::ifstream in(golden_path, std::ios::binary);
  if (!in) return {false, "cannot open " + golden_path};
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::string expected = buffer.str();
  if (expected != transcript) {
    std::size_t at = 0;
    while (at < expected.size() && at < transcript.size() &&
           expected[at] == transcript[at]) {
      ++at;
    }
    return {false, "transcript differs from golden at byte " +
                       std::to_string(at)};
  }
  std::size_t invocations = 0;
  for (std::size_t pos = transcript.find("$ "); pos != std::string::npos;
       pos = transcript.find("\n$ ", pos + 1)) {
    ++invocations;
  }
  return {true, plural(invocations, "invocations byte-identical")};
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  std::string golden;
  bool record = false;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "--record") {
      record = true;
    } else if (cli.empty()) {
      cli = arg;
    } else if (golden.empty()) {
      golden = arg;
    }
  }

  struct Criterion {
    const char* label;
    Outcome outcome;
  };
  std::vector<Criterion> criteria;
  criteria.push_back({"1 axiom suite", axiom_suite()});
  criteria.push_back({"2 projection homomorphism",
                      homomorphism(WordMode::Free)});
  criteria.push_back({"3 push-power and closed form",
                      push_power(WordMode::Free)});
  criteria.push_back({"4 fiber law", fiber_law(WordMode::Free)});
  criteria.push_back({"5 normal-form uniqueness / round-trip",
                      uniqueness_roundtrip(WordMode::Free)});
  criteria.push_back({"6 membership reduction",
                      membership_reduction(WordMode::Free)});
  criteria.push_back({"7 involutory suite", involutory_suite()});
  if (cli.empty() || golden.empty()) {
    criteria.push_back(
        {"8 CLI golden transcript",
         {false, "usage: acceptance <cli> <golden> [--record]"}});
  } else {
    criteria.push_back({"8 CLI golden transcript",
                        cli_golden(cli, golden, record)});
  }

  bool all_pass = true;
  for (const auto& c : criteria) {
    all_pass &= c.outcome.pass;
    std::cout << "criterion " << c.label << ": "
              << (c.outcome.pass ? "PASS" : "FAIL");
    if (!c.outcome.note.empty()) std::cout << " (" << c.outcome.note << ")";
    std::cout << "\n";
  }
  std::cout << (all_pass ? "ACCEPTANCE: all criteria passed"
                         : "ACCEPTANCE: FAILURES PRESENT")
            << "\n";
  return all_pass ? 0 : 1;
}
