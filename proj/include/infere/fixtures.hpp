#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "infere/chain.hpp"
#include "infere/dsl.hpp"
#include "infere/evaluation.hpp"
#include "infere/random.hpp"

namespace infere {

inline constexpr std::size_t kMaxFixtureDepth = 8;

/// Synthetic benchmark: parallel query/gold lines plus sampled candidates.
struct Fixture {
  std::vector<std::string> queries;
  std::vector<std::string> golds;
  std::vector<CandidateSet> candidate_sets;
};

namespace detail {

inline std::string corrupt(std::string text, Rng& rng) {
  if (text.empty()) return ")";
  switch (rng.below(3)) {
    case 0: text.erase(text.find_last_of(')') == std::string::npos ? 0 : text.find_last_of(')'), 1); break;
    case 1: text.insert(rng.below(text.size()), "~)"); break;
    default: text = "step1=" + text; break;
  }
  return text;
}

inline Candidate sample_candidate(const RegexAst& gold, Source source, Rng& rng, const AstGenConfig& config) {
  RegexAst tree = gold;
  const std::size_t roll = rng.below(100);
  bool broken = false;
  if (roll < 35) {
    // verbatim gold
  } else if (roll < 60) {
    tree = equivalent_rewrite(gold, rng);
  } else if (roll < 80) {
    tree = mutate(gold, rng, config);
  } else if (roll < 92) {
    tree = random_ast(rng, config);
  } else {
    broken = true;
  }
  std::string text;
  switch (source) {
    case Source::Chain: text = render_chain(decompose(tree)); break;
    case Source::Tree: text = render_functional(tree); break;
    case Source::Plain: text = render_plain(tree); break;
  }
  if (broken) text = corrupt(std::move(text), rng);
  return Candidate{source, std::move(text), 0};
}

}  // namespace detail

/// Deterministic in `seed`. Gold trees have height at most `depth`; every
/// 25th record gets no candidate set so missing-output handling is covered.
inline Fixture generate_fixture(std::uint64_t seed, std::size_t count, std::size_t depth) {
  if (depth == 0 || depth > kMaxFixtureDepth) {
    throw std::invalid_argument("fixture depth must be between 1 and " + std::to_string(kMaxFixtureDepth));
  }
  Rng rng(seed);
  AstGenConfig config;
  config.max_depth = depth;
  config.max_count = 3;

  Fixture fx;
  for (std::size_t i = 0; i < count; ++i) {
    RegexAst gold = random_ast(rng, config);
    fx.queries.push_back("synthetic query " + std::to_string(i) + ": " + render_functional(gold));
    fx.golds.push_back(render_plain(gold));
    if (i % 25 == 24) continue;

    CandidateSet set;
    set.id = i;
    set.query = fx.queries.back();
    const std::size_t chains = 1 + rng.below(4);
    const std::size_t trees = 1 + rng.below(4);
    for (std::size_t s = 0; s < chains; ++s) set.candidates.push_back(detail::sample_candidate(gold, Source::Chain, rng, config));
    for (std::size_t s = 0; s < trees; ++s) set.candidates.push_back(detail::sample_candidate(gold, Source::Tree, rng, config));
    if (rng.chance(1, 10)) set.candidates.push_back(detail::sample_candidate(gold, Source::Plain, rng, config));
    for (std::size_t o = 0; o < set.candidates.size(); ++o) set.candidates[o].order = o;
    fx.candidate_sets.push_back(std::move(set));
  }
  return fx;
}

struct FixturePaths {
  std::filesystem::path queries;
  std::filesystem::path regexes;
  std::filesystem::path candidates;
};

inline FixturePaths fixture_paths(const std::filesystem::path& dir) {
  return {dir / "queries.txt", dir / "regexes.txt", dir / "candidates.jsonl"};
}

inline FixturePaths write_fixture(const Fixture& fx, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto paths = fixture_paths(dir);
  auto write_lines = [](const std::filesystem::path& path, const std::vector<std::string>& lines) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
    for (const auto& line : lines) out << line << '\n';
  };
  write_lines(paths.queries, fx.queries);
  write_lines(paths.regexes, fx.golds);
  std::ofstream out(paths.candidates, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + paths.candidates.string());
  write_candidates(out, fx.candidate_sets);
  return paths;
}

}  // namespace infere
