// Command-line front end: parse, decompose, revert, eq, vote, eval,
// fixtures and dot. Exit codes: 0 success or "true", 1 negative verdict,
// 2 usage or data error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "infere/infere.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kFailure = 2;

enum class Form { Plain, Functional, Chain };

struct CliConfig {
  Form form = Form::Plain;
  std::string text;
  std::string other_text;
  std::string queries_path;
  std::string regexes_path;
  std::string candidates_path;
  std::string out;
  std::string mode = "self_consistency";
  std::vector<std::size_t> m_values;
  std::size_t id = 0;
  std::size_t k_cap = 40;
  std::uint32_t unroll_cap = infere::kDefaultUnrollCap;
  std::uint64_t seed = 0;
  std::size_t count = 10;
  std::size_t depth = 4;
  std::size_t jobs = 1;
  bool per_example = false;
  bool dot = false;
  bool to_functional = false;
  int verbosity = 0;
};

infere::RegexAst read_tree(Form form, const std::string& text) {
  switch (form) {
    case Form::Plain: return infere::parse_plain(text);
    case Form::Functional: return infere::parse_functional(text);
    case Form::Chain: return infere::revert(infere::parse_chain(text));
  }
  return infere::parse_plain(text);
}

/// Applies `fn` to the argument, or to every stdin line when it is "-".
template <typename Fn>
void for_each_input(const std::string& text, Fn fn) {
  if (text != "-") {
    fn(text);
    return;
  }
  std::string line;
  while (std::getline(std::cin, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    fn(line);
  }
}

infere::CompileOptions compile_options(const CliConfig& cfg) { return {cfg.unroll_cap}; }

infere::VoteOptions vote_options(const CliConfig& cfg) { return {compile_options(cfg), cfg.k_cap}; }

int run_parse(const CliConfig& cfg) {
  const auto tree = read_tree(cfg.form, cfg.text);
  std::cout << "functional: " << infere::render_functional(tree) << '\n';
  std::cout << "plain: " << infere::render_plain(tree) << '\n';
  std::cout << "chain: " << infere::render_chain(infere::decompose(tree)) << '\n';
  return kOk;
}

int run_decompose(const CliConfig& cfg) {
  for_each_input(cfg.text, [&](const std::string& line) {
    std::cout << infere::render_chain(infere::decompose(read_tree(cfg.form, line))) << '\n';
  });
  return kOk;
}

int run_revert(const CliConfig& cfg) {
  for_each_input(cfg.text, [&](const std::string& line) {
    const auto tree = infere::revert(infere::parse_chain(line));
    std::cout << (cfg.to_functional ? infere::render_functional(tree) : infere::render_plain(tree)) << '\n';
  });
  return kOk;
}

int run_eq(const CliConfig& cfg) {
  const auto a = read_tree(cfg.form, cfg.text);
  const auto b = read_tree(cfg.form, cfg.other_text);
  const auto alphabet = infere::derive_alphabet({a, b});
  const auto da = infere::compile(a, alphabet, compile_options(cfg));
  const auto db = infere::compile(b, alphabet, compile_options(cfg));
  const bool same = da == db;
  std::cout << (same ? "true" : "false") << '\n';
  if (cfg.dot) {
    std::cout << infere::to_dot(da, alphabet, "a") << infere::to_dot(db, alphabet, "b");
  }
  return same ? kOk : kNegative;
}

int run_dot(const CliConfig& cfg) {
  const auto tree = read_tree(cfg.form, cfg.text);
  const auto alphabet = infere::derive_alphabet({tree});
  std::cout << infere::to_dot(infere::compile(tree, alphabet, compile_options(cfg)), alphabet);
  return kOk;
}

int run_vote(const CliConfig& cfg) {
  const auto sets = infere::load_candidates(cfg.candidates_path);
  const infere::CandidateSet* chosen = nullptr;
  for (const auto& set : sets) {
    if (set.id == cfg.id) chosen = &set;
  }
  if (chosen == nullptr) {
    std::cerr << "error: no candidate set with id " << cfg.id << " in " << cfg.candidates_path << '\n';
    return kFailure;
  }
  const auto candidates = infere::cap_per_source(chosen->candidates, cfg.k_cap);
  try {
    const auto outcome = infere::vote(candidates, vote_options(cfg));
    std::cout << "winner: " << infere::render_plain(outcome.winner) << '\n';
    std::cout << "votes: " << outcome.winner_votes << '\n';
    for (std::size_t i = 0; i < outcome.classes.size(); ++i) {
      const auto& cls = outcome.classes[i];
      std::cout << "class " << i + 1 << ": votes=" << cls.votes << " members=";
      for (std::size_t j = 0; j < cls.member_orders.size(); ++j) std::cout << (j ? "," : "") << cls.member_orders[j];
      std::cout << " representative=" << infere::render_plain(cls.representative) << '\n';
    }
    std::cout << "invalid: " << outcome.invalid_count << '\n';
  } catch (const infere::Error& e) {
    if (e.kind() != infere::ErrorKind::NoValidCandidates) throw;
    std::cout << "invalid: " << candidates.size() << '\n';
    std::cerr << "error: " << e.what() << '\n';
    return kNegative;
  }
  return kOk;
}

int run_eval(const CliConfig& cfg) {
  const auto records = infere::load_dataset(cfg.queries_path, cfg.regexes_path);
  const auto sets = infere::load_candidates(cfg.candidates_path);
  infere::EvalOptions options;
  if (!cfg.m_values.empty()) options.m_values = cfg.m_values;
  options.mode = (cfg.mode == "ranked") ? infere::EvalMode::Ranked : infere::EvalMode::SelfConsistency;
  options.vote = vote_options(cfg);
  options.jobs = cfg.jobs == 0 ? std::max(1U, std::thread::hardware_concurrency()) : cfg.jobs;
  const auto report = infere::evaluate(records, sets, options);
  if (!cfg.out.empty()) {
    std::ofstream out(cfg.out, std::ios::binary);
    if (!out) throw infere::Error(infere::ErrorKind::Io, "cannot write " + cfg.out);
    out << infere::report_json(report, cfg.per_example);
  }
  std::cout << infere::report_table(report);
  if (cfg.verbosity > 0) {
    std::cerr << "records: " << report.n << ", invalid candidates: " << report.invalid_candidates
              << ", missing candidate sets: " << report.missing_sets << '\n';
  }
  return kOk;
}

int run_fixtures(const CliConfig& cfg) {
  if (cfg.out.empty()) {
    std::cerr << "error: fixtures requires --out DIR\n";
    return kFailure;
  }
  const auto fixture = infere::generate_fixture(cfg.seed, cfg.count, cfg.depth);
  const auto paths = infere::write_fixture(fixture, cfg.out);
  std::cout << paths.queries.string() << '\n' << paths.regexes.string() << '\n' << paths.candidates.string() << '\n';
  return kOk;
}

std::uint32_t default_unroll_cap() {
  if (const char* env = std::getenv("INFERE_UNROLL_CAP"); env != nullptr && *env != '\0') {
    try {
      unsigned long value = std::stoul(env);
      if (value >= 1 && value <= UINT32_MAX) return static_cast<std::uint32_t>(value);
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring invalid INFERE_UNROLL_CAP='" << env << "'\n";
  }
  return infere::kDefaultUnrollCap;
}

}  // namespace

int main(int argc, char** argv) {
  CliConfig cfg;
  cfg.unroll_cap = default_unroll_cap();

  CLI::App app{"Regex DSL toolkit: representations, chains of inference, DFA equivalence and evaluation"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--unroll-cap", cfg.unroll_cap, "Largest repetition count unrolled during compilation")
      ->check(CLI::Range(1U, UINT32_MAX));
  app.add_option("--k-cap", cfg.k_cap, "Samples kept per source when voting")->check(CLI::PositiveNumber);
  app.add_flag("-v,--verbose", cfg.verbosity, "More diagnostics on stderr");

  const std::map<std::string, Form> forms{{"plain", Form::Plain}, {"functional", Form::Functional}, {"chain", Form::Chain}};
  auto add_form = [&](CLI::App* sub, const std::string& help) {
    sub->add_option("--form", cfg.form, help)->transform(CLI::CheckedTransformer(forms));
  };

  auto* parse = app.add_subcommand("parse", "Print a regex in functional, plain and chain form");
  add_form(parse, "Input notation (plain, functional, chain)");
  parse->add_option("text", cfg.text, "Regex text")->required();

  auto* decompose = app.add_subcommand("decompose", "Convert regexes to chains of inference");
  add_form(decompose, "Input notation (plain, functional)");
  decompose->add_option("text", cfg.text, "Regex text, or - to read one per line from stdin")->required();

  auto* revert = app.add_subcommand("revert", "Convert chains of inference back to regexes");
  revert->add_option("chain", cfg.text, "Chain text, or - to read one per line from stdin")->required();
  revert->add_flag("--functional", cfg.to_functional, "Print tree notation instead of plain");

  auto* eq = app.add_subcommand("eq", "Decide DFA equivalence of two regexes");
  add_form(eq, "Notation of both inputs");
  eq->add_option("a", cfg.text, "First regex")->required();
  eq->add_option("b", cfg.other_text, "Second regex")->required();
  eq->add_flag("--dot", cfg.dot, "Also print both minimal DFAs as DOT");

  auto* dot = app.add_subcommand("dot", "Print the minimal DFA of a regex as DOT");
  add_form(dot, "Input notation");
  dot->add_option("text", cfg.text, "Regex text")->required();

  auto* vote = app.add_subcommand("vote", "Plurality vote over one record of a candidate file");
  vote->add_option("candidates", cfg.candidates_path, "Candidate file (JSON lines)")->required();
  vote->add_option("--id", cfg.id, "Record id")->required();

  auto* eval = app.add_subcommand("eval", "Score candidates against a dataset");
  eval->add_option("--queries", cfg.queries_path, "Query file, one per line")->required();
  eval->add_option("--regexes", cfg.regexes_path, "Gold regex file, one per line")->required();
  eval->add_option("--candidates", cfg.candidates_path, "Candidate file (JSON lines)")->required();
  eval->add_option("--mode", cfg.mode, "self_consistency (sc) or ranked")
      ->transform(CLI::CheckedTransformer(std::map<std::string, std::string>{
          {"self_consistency", "self_consistency"}, {"sc", "self_consistency"}, {"ranked", "ranked"}}));
  eval->add_option("--m", cfg.m_values, "Cutoffs for DFA-EQ@m (repeatable; default 1 and 5)")
      ->check(CLI::PositiveNumber);
  eval->add_option("--out", cfg.out, "Write the JSON report here");
  eval->add_flag("--per-example", cfg.per_example, "Include per-example verdicts in the report");
  eval->add_option("--jobs", cfg.jobs, "Worker threads (0 = all cores)");

  auto* fixtures = app.add_subcommand("fixtures", "Write a synthetic dataset and candidate file");
  fixtures->add_option("--seed", cfg.seed, "Random seed");
  fixtures->add_option("--count", cfg.count, "Number of records");
  fixtures->add_option("--depth", cfg.depth, "Maximum gold tree height")->check(CLI::Range(1, 8));
  fixtures->add_option("--out", cfg.out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kFailure;
  }

  try {
    if (*parse) return run_parse(cfg);
    if (*decompose) return run_decompose(cfg);
    if (*revert) return run_revert(cfg);
    if (*eq) return run_eq(cfg);
    if (*dot) return run_dot(cfg);
    if (*vote) return run_vote(cfg);
    if (*eval) return run_eval(cfg);
    if (*fixtures) return run_fixtures(cfg);
  } catch (const infere::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}
