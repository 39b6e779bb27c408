#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <json.hpp>

#include "infere/compile.hpp"
#include "infere/dsl.hpp"
#include "infere/error.hpp"
#include "infere/self_consistency.hpp"

namespace infere {

// ---------------------------------------------------------------------------
// Dataset and candidate files
// ---------------------------------------------------------------------------

struct DatasetRecord {
  std::size_t id;
  std::string query;
  std::string gold;
  RegexAst gold_tree;
};

struct CandidateSet {
  std::size_t id = 0;
  std::optional<std::string> query;
  std::vector<Candidate> candidates;
  friend bool operator==(const CandidateSet&, const CandidateSet&) = default;
};

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

inline std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(trim(line));
  return lines;
}

}  // namespace detail

/// Two line-aligned files: line i of each forms record i.
inline std::vector<DatasetRecord> load_dataset(const std::filesystem::path& queries_path,
                                               const std::filesystem::path& regexes_path) {
  const auto queries = detail::read_lines(queries_path);
  const auto regexes = detail::read_lines(regexes_path);
  if (queries.size() != regexes.size()) {
    throw Error(ErrorKind::LineCountMismatch, queries_path.string() + " has " + std::to_string(queries.size()) +
                                                  " lines but " + regexes_path.string() + " has " +
                                                  std::to_string(regexes.size()));
  }
  std::vector<DatasetRecord> records;
  records.reserve(queries.size());
  for (std::size_t i = 0; i < queries.size(); ++i) {
    try {
      records.push_back(DatasetRecord{i, queries[i], regexes[i], parse_plain(regexes[i])});
    } catch (const Error& e) {
      throw Error(ErrorKind::UnparseableGold,
                  regexes_path.string() + ":" + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return records;
}

inline CandidateSet parse_candidate_record(std::string_view line, std::size_t line_number) {
  const std::string where = "line " + std::to_string(line_number) + ": ";
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::MalformedRecord, where + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorKind::MalformedRecord, where + "record is not an object");
  if (!doc.contains("id") || !doc["id"].is_number_unsigned()) {
    throw Error(ErrorKind::MalformedRecord, where + "missing non-negative integer 'id'");
  }
  if (!doc.contains("candidates") || !doc["candidates"].is_array()) {
    throw Error(ErrorKind::MalformedRecord, where + "missing 'candidates' array");
  }
  CandidateSet set;
  set.id = doc["id"].get<std::size_t>();
  if (doc.contains("query")) {
    if (!doc["query"].is_string()) throw Error(ErrorKind::MalformedRecord, where + "'query' must be a string");
    set.query = doc["query"].get<std::string>();
  }
  for (const auto& entry : doc["candidates"]) {
    if (!entry.is_object() || !entry.contains("source") || !entry.contains("text") || !entry["source"].is_string() ||
        !entry["text"].is_string()) {
      throw Error(ErrorKind::MalformedRecord, where + "candidates need string 'source' and 'text'");
    }
    auto source = source_from_string(entry["source"].get<std::string>());
    if (!source) {
      throw Error(ErrorKind::MalformedRecord, where + "unknown source '" + entry["source"].get<std::string>() + "'");
    }
    set.candidates.push_back(Candidate{*source, entry["text"].get<std::string>(), set.candidates.size()});
  }
  return set;
}

/// One JSON object per line. Blank lines are skipped.
inline std::vector<CandidateSet> read_candidates(std::istream& in) {
  std::vector<CandidateSet> sets;
  std::set<std::size_t> ids;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (detail::trim(line).empty()) continue;
    CandidateSet set = parse_candidate_record(line, line_number);
    if (!ids.insert(set.id).second) {
      throw Error(ErrorKind::DuplicateId, "line " + std::to_string(line_number) + ": id " + std::to_string(set.id) +
                                              " appears more than once");
    }
    sets.push_back(std::move(set));
  }
  return sets;
}

inline std::vector<CandidateSet> load_candidates(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  return read_candidates(in);
}

inline void write_candidates(std::ostream& out, std::span<const CandidateSet> sets) {
  for (const auto& set : sets) {
    nlohmann::ordered_json doc;
    doc["id"] = set.id;
    if (set.query) doc["query"] = *set.query;
    doc["candidates"] = nlohmann::ordered_json::array();
    for (const auto& c : set.candidates) {
      doc["candidates"].push_back({{"source", to_string(c.source)}, {"text", c.text}});
    }
    out << doc.dump() << '\n';
  }
}

// ---------------------------------------------------------------------------
// Metrics
// ---------------------------------------------------------------------------

/// True iff any of the first `m` ranked trees is equivalent to `gold`.
/// Entries that fail to compile never match. `m == 0` matches nothing.
inline bool dfa_eq_at_m(const RegexAst& gold, std::span<const RegexAst> ranked, std::size_t m,
                        CompileOptions options = {}) {
  const std::size_t top = std::min(m, ranked.size());
  if (top == 0) return false;
  std::vector<RegexAst> all{gold};
  all.insert(all.end(), ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(top));
  const Alphabet alphabet = derive_alphabet(all);
  const Dfa target = compile(gold, alphabet, options);
  for (std::size_t i = 0; i < top; ++i) {
    try {
      if (compile(ranked[i], alphabet, options) == target) return true;
    } catch (const Error&) {
    }
  }
  return false;
}

/// Textual identity after deleting all whitespace.
inline bool exact_match(std::string_view gold, std::string_view candidate) {
  auto squeeze = [](std::string_view s) {
    std::string out;
    for (char ch : s) {
      if (!detail::is_space(ch)) out.push_back(ch);
    }
    return out;
  };
  return squeeze(gold) == squeeze(candidate);
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

enum class EvalMode : std::uint8_t { SelfConsistency, Ranked };

constexpr std::string_view to_string(EvalMode mode) noexcept {
  return mode == EvalMode::SelfConsistency ? "self_consistency" : "ranked";
}

struct EvalOptions {
  std::vector<std::size_t> m_values{1, 5};
  EvalMode mode = EvalMode::SelfConsistency;
  VoteOptions vote{};
  /// Worker threads for per-record scoring; the report does not depend on it.
  std::size_t jobs = 1;
};

struct ExampleVerdict {
  std::size_t id = 0;
  std::vector<bool> dfa_eq;  // aligned with EvalReport::m_values
  bool em = false;
  bool missing = false;
  std::size_t invalid = 0;
  std::optional<std::string> winner;
};

struct EvalReport {
  std::size_t n = 0;
  EvalMode mode = EvalMode::SelfConsistency;
  std::vector<std::size_t> m_values;
  std::vector<double> dfa_eq_at;  // aligned with m_values
  double em = 0.0;
  std::size_t invalid_candidates = 0;
  std::size_t missing_sets = 0;
  std::size_t unscorable_gold = 0;
  std::vector<ExampleVerdict> per_example;

  [[nodiscard]] double dfa_eq(std::size_t m) const {
    for (std::size_t i = 0; i < m_values.size(); ++i) {
      if (m_values[i] == m) return dfa_eq_at[i];
    }
    throw std::out_of_range("m=" + std::to_string(m) + " was not evaluated");
  }
};

namespace detail {

struct ScoredRecord {
  ExampleVerdict verdict;
  bool gold_failed = false;
};

inline ScoredRecord score_record(const DatasetRecord& record, const CandidateSet* set, const EvalOptions& options) {
  ScoredRecord out;
  auto& v = out.verdict;
  v.id = record.id;
  v.dfa_eq.assign(options.m_values.size(), false);
  if (set == nullptr) {
    v.missing = true;
    return out;
  }
  try {
    (void)compile(record.gold_tree, derive_alphabet({record.gold_tree}), options.vote.compile);
  } catch (const Error&) {
    // Nothing can match a gold we cannot compile; still count its candidates.
    out.gold_failed = true;
  }
  const auto candidates = cap_per_source(set->candidates, options.vote.k_cap);
  if (candidates.empty()) return out;

  std::vector<RegexAst> ranked;
  if (options.mode == EvalMode::SelfConsistency) {
    try {
      VoteOutcome outcome = vote(candidates, options.vote);
      v.invalid = outcome.invalid_count;
      v.winner = render_plain(outcome.winner);
      for (auto& cls : outcome.classes) ranked.push_back(std::move(cls.representative));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NoValidCandidates) throw;
      v.invalid = candidates.size();
      return out;
    }
  } else {
    for (const auto& c : candidates) {
      try {
        RegexAst tree = normalize_candidate(c);
        (void)compile(tree, derive_alphabet({tree}), options.vote.compile);
        ranked.push_back(std::move(tree));
      } catch (const Error&) {
        ++v.invalid;
      }
    }
    if (ranked.empty()) return out;
    v.winner = render_plain(ranked.front());
  }

  if (out.gold_failed) return out;
  v.em = exact_match(record.gold, *v.winner);
  // Verdicts for growing m share one pass over the ranked list.
  std::optional<std::size_t> first_hit;
  const std::size_t deepest = *std::max_element(options.m_values.begin(), options.m_values.end());
  for (std::size_t i = 0; i < std::min(deepest, ranked.size()); ++i) {
    if (dfa_eq_at_m(record.gold_tree, std::span(ranked).subspan(i, 1), 1, options.vote.compile)) {
      first_hit = i;
      break;
    }
  }
  for (std::size_t j = 0; j < options.m_values.size(); ++j) v.dfa_eq[j] = first_hit && *first_hit < options.m_values[j];
  return out;
}

}  // namespace detail

/// Scores every record against its candidate set. Records without a set
/// score false on every metric and are counted in `missing_sets`.
inline EvalReport evaluate(std::span<const DatasetRecord> records, std::span<const CandidateSet> sets,
                           const EvalOptions& options = {}) {
  if (options.m_values.empty()) throw std::invalid_argument("at least one m value is required");
  for (auto m : options.m_values) {
    if (m == 0) throw std::invalid_argument("m values must be positive");
  }
  std::map<std::size_t, const CandidateSet*> by_id;
  for (const auto& set : sets) by_id.emplace(set.id, &set);

  std::vector<detail::ScoredRecord> scored(records.size());
  std::vector<std::exception_ptr> failures(records.size());
  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    for (std::size_t i = cursor++; i < records.size(); i = cursor++) {
      try {
        auto it = by_id.find(records[i].id);
        scored[i] = detail::score_record(records[i], it == by_id.end() ? nullptr : it->second, options);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  const std::size_t jobs = std::max<std::size_t>(1, std::min(options.jobs, records.size()));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }

  EvalReport report;
  report.n = records.size();
  report.mode = options.mode;
  report.m_values = options.m_values;
  std::vector<std::size_t> hits(options.m_values.size(), 0);
  std::size_t em_hits = 0;
  for (auto& s : scored) {
    for (std::size_t j = 0; j < hits.size(); ++j) hits[j] += s.verdict.dfa_eq[j] ? 1 : 0;
    em_hits += s.verdict.em ? 1 : 0;
    report.invalid_candidates += s.verdict.invalid;
    report.missing_sets += s.verdict.missing ? 1 : 0;
    report.unscorable_gold += s.gold_failed ? 1 : 0;
    report.per_example.push_back(std::move(s.verdict));
  }
  auto ratio = [&](std::size_t count) { return report.n == 0 ? 0.0 : static_cast<double>(count) / report.n; };
  for (auto h : hits) report.dfa_eq_at.push_back(ratio(h));
  report.em = ratio(em_hits);
  return report;
}

// ---------------------------------------------------------------------------
// Report output
// ---------------------------------------------------------------------------

inline std::string format_ratio(double value) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(4) << value;
  return os.str();
}

/// JSON report with accuracies printed to four decimals. Key order and
/// formatting are fixed, so equal reports are byte-identical.
inline std::string report_json(const EvalReport& r, bool per_example) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"mode\": \"" << to_string(r.mode) << "\",\n";
  os << "  \"n\": " << r.n << ",\n";
  os << "  \"dfa_eq_at\": {";
  for (std::size_t j = 0; j < r.m_values.size(); ++j) {
    os << (j ? ", " : "") << '"' << r.m_values[j] << "\": " << format_ratio(r.dfa_eq_at[j]);
  }
  os << "},\n";
  os << "  \"em\": " << format_ratio(r.em) << ",\n";
  os << "  \"invalid_candidates\": " << r.invalid_candidates << ",\n";
  os << "  \"missing_candidate_sets\": " << r.missing_sets << ",\n";
  os << "  \"unscorable_gold\": " << r.unscorable_gold;
  if (per_example) {
    os << ",\n  \"per_example\": [";
    for (std::size_t i = 0; i < r.per_example.size(); ++i) {
      const auto& v = r.per_example[i];
      os << (i ? ",\n" : "\n") << "    {\"id\": " << v.id << ", \"dfa_eq_at\": {";
      for (std::size_t j = 0; j < r.m_values.size(); ++j) {
        os << (j ? ", " : "") << '"' << r.m_values[j] << "\": " << (v.dfa_eq[j] ? "true" : "false");
      }
      os << "}, \"em\": " << (v.em ? "true" : "false") << ", \"invalid\": " << v.invalid
         << ", \"winner\": " << (v.winner ? nlohmann::json(*v.winner).dump() : "null") << "}";
    }
    os << (r.per_example.empty() ? "]" : "\n  ]");
  }
  os << "\n}\n";
  return os.str();
}

/// Percentages in the usual results-table layout.
inline std::string report_table(const EvalReport& r, std::string_view method = {}) {
  const std::string name = method.empty() ? std::string(to_string(r.mode)) : std::string(method);
  auto pct = [](double v) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(2) << v * 100.0;
    return os.str();
  };
  std::ostringstream os;
  const int width = static_cast<int>(std::max<std::size_t>(name.size(), 6));
  os << std::left << std::setw(width) << "Method";
  for (auto m : r.m_values) os << "  " << std::right << std::setw(12) << ("DFA-EQ@" + std::to_string(m) + "(%)");
  os << "  " << std::setw(6) << "EM(%)" << '\n';
  os << std::left << std::setw(width) << name;
  for (double v : r.dfa_eq_at) os << "  " << std::right << std::setw(12) << pct(v);
  os << "  " << std::setw(6) << pct(r.em) << '\n';
  return os.str();
}

}  // namespace infere
