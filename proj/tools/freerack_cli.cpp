#include <cstdint>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "freerack/freerack.hpp"

namespace {

using namespace freerack;

constexpr int kExitSyntax = 2;
constexpr int kExitSemantic = 3;
constexpr int kExitUnknown = 4;

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> parts;
  if (text.empty()) return parts;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = text.find(',', start);
    parts.push_back(text.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return parts;
}

struct CliConfig {
  std::string alphabet_csv;
  std::string mode_name = "free";
  std::int64_t bound = 8;

  Context context() const {
    if (mode_name != "free" && mode_name != "involutory") {
      throw Error("mode must be 'free' or 'involutory'");
    }
    std::vector<std::string> names = split_csv(alphabet_csv);
    if (names.empty()) throw Error("alphabet must declare a generator");
    if (bound <= 0) throw Error("bound must be positive");
    return Context{Alphabet(names),
                   mode_name == "free" ? WordMode::Free
                                       : WordMode::Involutory};
  }
};

void add_config_options(CLI::App* cmd, CliConfig& config) {
  cmd->add_option("--alphabet", config.alphabet_csv,
                  "comma-separated generator names")
      ->required();
  cmd->add_option("--mode", config.mode_name, "free | involutory");
  cmd->add_option("--bound", config.bound,
                  "length / search depth bound (default 8)");
}

std::vector<RackElement> parse_element_list(const Context& ctx,
                                            const std::string& csv) {
  std::vector<RackElement> elements;
  for (const auto& part : split_csv(csv)) {
    elements.push_back(parse_element(ctx, part));
  }
  return elements;
}

int cmd_eval(const CliConfig& config, const std::string& text) {
  Context ctx = config.context();
  std::cout << to_string(evaluate(ctx, *parse_expr(ctx, text))) << "\n";
  return 0;
}

int cmd_eq(const CliConfig& config, const std::string& lhs,
           const std::string& rhs) {
  Context ctx = config.context();
  RackElement a = evaluate(ctx, *parse_expr(ctx, lhs));
  RackElement b = evaluate(ctx, *parse_expr(ctx, rhs));
  std::cout << (a == b ? "equal" : "distinct") << "\n";
  return 0;
}

int cmd_canon(const CliConfig& config, const std::string& text) {
  Context ctx = config.context();
  Decomposition d = decompose(parse_element(ctx, text));
  std::cout << "n=" << d.exponent << ", class=" << to_string(d.rep) << "\n";
  return 0;
}

int cmd_member(const CliConfig& config, const std::string& element_text,
               const std::string& gens_csv) {
  Context ctx = config.context();
  RackElement e = parse_element(ctx, element_text);
  std::vector<RackElement> gens = parse_element_list(ctx, gens_csv);
  MembershipAnswer answer = rack_member(e, gens, config.bound);
  switch (answer.kind) {
    case MembershipAnswer::Kind::Member:
      std::cout << "member: " << format(*answer.witness) << "\n";
      return 0;
    case MembershipAnswer::Kind::NonMember:
      std::cout << "non-member: " << answer.reason << "\n";
      return 0;
    case MembershipAnswer::Kind::Unknown:
      std::cout << "unknown: " << answer.reason << "\n";
      return kExitUnknown;
  }
  return kExitSemantic;
}

int cmd_closure(const CliConfig& config, const std::string& gens_csv) {
  Context ctx = config.context();
  std::vector<RackElement> gens = parse_element_list(ctx, gens_csv);
  ClosureSet cs = closure(gens, config.bound);
  for (const auto& e : cs.elements) std::cout << to_string(e) << "\n";
  return 0;
}

int cmd_basis_lift(const CliConfig& config, const std::string& classes_csv) {
  Context ctx = config.context();
  std::vector<QuandleElement> classes;
  for (const auto& e : parse_element_list(ctx, classes_csv)) {
    classes.push_back(project(e));
  }
  Basis basis = lift_basis(classes);
  for (const auto& e : basis.elements()) std::cout << to_string(e) << "\n";
  return 0;
}

int cmd_express(const CliConfig& config, const std::string& element_text,
                const std::string& basis_csv) {
  Context ctx = config.context();
  RackElement e = parse_element(ctx, element_text);
  Basis basis(parse_element_list(ctx, basis_csv));
  ExpressResult result = express_over_basis(e, basis, config.bound);
  switch (result.kind) {
    case ExpressResult::Kind::Found:
      std::cout << format(result.form, basis) << "\n";
      return 0;
    case ExpressResult::Kind::NotInSpan:
      std::cout << "not-in-span: " << result.detail << "\n";
      return 0;
    case ExpressResult::Kind::Unknown:
      std::cout << "unknown: " << result.detail << "\n";
      return kExitUnknown;
  }
  return kExitSemantic;
}

int cmd_axioms_check(const CliConfig& config, std::int64_t samples,
                     std::uint64_t seed) {
  Context ctx = config.context();
  std::mt19937_64 rng(seed);
  const auto& gens = ctx.alphabet.generators();
  auto random_element = [&] {
    std::vector<Syllable> raw;
    std::size_t letters = rng() % 7;
    for (std::size_t i = 0; i < letters; ++i) {
      raw.push_back(Syllable{gens[rng() % gens.size()],
                             rng() % 2 == 0 ? 1 : -1});
    }
    return RackElement{gens[rng() % gens.size()], reduce(ctx, raw)};
  };
  std::vector<RackTriple> sample;
  sample.reserve(static_cast<std::size_t>(samples));
  for (std::int64_t i = 0; i < samples; ++i) {
    sample.push_back(RackTriple{random_element(), random_element(),
                                random_element()});
  }
  AxiomReport report = check_axioms(sample);
  if (report.ok()) {
    std::cout << "ok\n";
    return 0;
  }
  std::cout << "counterexample: " << report.counterexamples.front() << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"free rack and free quandle calculator"};
  app.require_subcommand(1);

  CliConfig config;
  std::string expr_text;
  std::string expr_rhs;
  std::string element_text;
  std::string gens_csv;
  std::string classes_csv;
  std::string basis_csv;
  std::int64_t samples = 250;
  std::uint64_t seed = 42;

  CLI::App* eval = app.add_subcommand("eval", "evaluate an expression");
  add_config_options(eval, config);
  eval->add_option("expr", expr_text, "rack expression")->required();

  CLI::App* eq = app.add_subcommand("eq", "compare two expressions");
  add_config_options(eq, config);
  eq->add_option("lhs", expr_text, "left expression")->required();
  eq->add_option("rhs", expr_rhs, "right expression")->required();

  CLI::App* canon = app.add_subcommand(
      "canon", "fiber decomposition of an element literal");
  add_config_options(canon, config);
  canon->add_option("element", element_text, "element literal")->required();

  CLI::App* member = app.add_subcommand(
      "member", "bounded membership in a generated subrack");
  add_config_options(member, config);
  member->add_option("element", element_text, "element literal")->required();
  member->add_option("--gens", gens_csv, "comma-separated element literals");

  CLI::App* clo = app.add_subcommand(
      "closure", "bounded closure of a generating set");
  add_config_options(clo, config);
  clo->add_option("--gens", gens_csv, "comma-separated element literals");

  CLI::App* lift = app.add_subcommand(
      "basis-lift", "canonical preimages of quandle classes");
  add_config_options(lift, config);
  lift->add_option("--classes", classes_csv,
                   "comma-separated class literals");

  CLI::App* express = app.add_subcommand(
      "express", "normal form of an element over a basis");
  add_config_options(express, config);
  express->add_option("element", element_text, "element literal")->required();
  express->add_option("--basis", basis_csv,
                      "comma-separated basis element literals");

  CLI::App* axioms = app.add_subcommand(
      "axioms-check", "sample the rack identities");
  add_config_options(axioms, config);
  axioms->add_option("--samples", samples, "number of random triples");
  axioms->add_option("--seed", seed, "sampler seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (eval->parsed()) return cmd_eval(config, expr_text);
    if (eq->parsed()) return cmd_eq(config, expr_text, expr_rhs);
    if (canon->parsed()) return cmd_canon(config, element_text);
    if (member->parsed()) return cmd_member(config, element_text, gens_csv);
    if (clo->parsed()) return cmd_closure(config, gens_csv);
    if (lift->parsed()) return cmd_basis_lift(config, classes_csv);
    if (express->parsed()) return cmd_express(config, element_text, basis_csv);
    if (axioms->parsed()) return cmd_axioms_check(config, samples, seed);
  } catch (const SyntaxError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSyntax;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSemantic;
  }
  return kExitSemantic;
}
