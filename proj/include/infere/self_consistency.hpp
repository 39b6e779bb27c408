#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "infere/chain.hpp"
#include "infere/compile.hpp"
#include "infere/dsl.hpp"
#include "infere/error.hpp"

namespace infere {

enum class Source : std::uint8_t { Chain, Tree, Plain };

constexpr std::string_view to_string(Source s) noexcept {
  switch (s) {
    case Source::Chain: return "chain";
    case Source::Tree: return "tree";
    case Source::Plain: return "plain";
  }
  return "";
}

constexpr std::optional<Source> source_from_string(std::string_view name) noexcept {
  if (name == "chain") return Source::Chain;
  if (name == "tree") return Source::Tree;
  if (name == "plain") return Source::Plain;
  return std::nullopt;
}

/// One sampled model output.
struct Candidate {
  Source source;
  std::string text;
  std::size_t order = 0;
  friend bool operator==(const Candidate&, const Candidate&) = default;
};

/// Converts a raw output to a tree with the parser matching its source;
/// chains are reverted to a tree first.
inline RegexAst normalize_candidate(const Candidate& c) {
  switch (c.source) {
    case Source::Chain: return revert(parse_chain(c.text));
    case Source::Tree: return parse_functional(c.text);
    case Source::Plain: return parse_plain(c.text);
  }
  throw Error(ErrorKind::MalformedRecord, "unknown candidate source");
}

/// A group of mutually equivalent candidates. The representative is the
/// earliest-ordered member.
struct VoteClass {
  RegexAst representative;
  std::size_t representative_order;
  std::size_t votes;
  std::vector<std::size_t> member_orders;
};

struct VoteOutcome {
  RegexAst winner;
  std::size_t winner_votes;
  /// Ranked by votes, ties broken by the earliest member's order.
  std::vector<VoteClass> classes;
  std::size_t invalid_count;
  std::vector<std::size_t> invalid_orders;
};

struct VoteOptions {
  CompileOptions compile{};
  /// Samples kept per source, in order; the rest are ignored.
  std::size_t k_cap = 40;
};

/// Plurality vote over semantic equivalence classes. Candidates that fail to
/// parse, revert or compile get no vote and are tallied as invalid.
///
/// Every valid candidate is compiled once over the alphabet of all of them.
/// Refining the minterms or adding placeholders that neither side mentions
/// does not change whether two regexes denote the same language (a fresh
/// placeholder behaves like any printable character outside every class),
/// so grouping by table identity here agrees with pairwise `equivalent`.
inline VoteOutcome vote(std::span<const Candidate> candidates, const VoteOptions& options = {}) {
  if (candidates.empty()) throw Error(ErrorKind::NoValidCandidates, "no candidates to vote on");

  std::vector<const Candidate*> ordered;
  ordered.reserve(candidates.size());
  for (const auto& c : candidates) ordered.push_back(&c);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const Candidate* a, const Candidate* b) { return a->order < b->order; });

  std::vector<std::size_t> invalid_orders;
  std::vector<RegexAst> trees;
  std::vector<std::size_t> tree_orders;
  for (const Candidate* c : ordered) {
    try {
      trees.push_back(normalize_candidate(*c));
      tree_orders.push_back(c->order);
    } catch (const Error&) {
      invalid_orders.push_back(c->order);
    }
  }

  const Alphabet alphabet = derive_alphabet(trees);
  std::vector<VoteClass> classes;
  std::map<Dfa, std::size_t> class_of;
  for (std::size_t i = 0; i < trees.size(); ++i) {
    std::optional<Dfa> automaton;
    try {
      automaton = compile(trees[i], alphabet, options.compile);
    } catch (const Error&) {
      invalid_orders.push_back(tree_orders[i]);
      continue;
    }
    auto [it, fresh] = class_of.emplace(std::move(*automaton), classes.size());
    if (fresh) {
      classes.push_back(VoteClass{trees[i], tree_orders[i], 0, {}});
    }
    auto& cls = classes[it->second];
    ++cls.votes;
    cls.member_orders.push_back(tree_orders[i]);
  }

  if (classes.empty()) {
    throw Error(ErrorKind::NoValidCandidates, "all " + std::to_string(candidates.size()) + " candidates are invalid");
  }
  // Classes were opened in candidate order, so a stable sort on votes keeps
  // the first-encountered class ahead on ties.
  std::stable_sort(classes.begin(), classes.end(),
                   [](const VoteClass& a, const VoteClass& b) { return a.votes > b.votes; });
  std::sort(invalid_orders.begin(), invalid_orders.end());

  VoteOutcome outcome{classes.front().representative, classes.front().votes, std::move(classes),
                      invalid_orders.size(), std::move(invalid_orders)};
  return outcome;
}

/// Keeps at most `k_cap` candidates per source (in order) and renumbers the
/// survivors densely.
inline std::vector<Candidate> cap_per_source(std::span<const Candidate> candidates, std::size_t k_cap) {
  std::map<Source, std::size_t> seen;
  std::vector<Candidate> kept;
  for (const auto& c : candidates) {
    if (seen[c.source]++ < k_cap) {
      kept.push_back(c);
      kept.back().order = kept.size() - 1;
    }
  }
  return kept;
}

/// Chain samples first, then tree samples, then a plurality vote.
inline VoteOutcome self_consistency_decode(std::span<const std::string> chain_samples,
                                           std::span<const std::string> tree_samples,
                                           const VoteOptions& options = {}) {
  std::vector<Candidate> candidates;
  for (const auto& text : chain_samples) candidates.push_back({Source::Chain, text, candidates.size()});
  for (const auto& text : tree_samples) candidates.push_back({Source::Tree, text, candidates.size()});
  return vote(cap_per_source(candidates, options.k_cap), options);
}

}  // namespace infere
