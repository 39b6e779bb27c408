#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "infere/alphabet.hpp"

namespace infere {

using StateId = std::uint32_t;

/// Complete deterministic automaton over minterm ids `0..symbols-1`.
/// Transitions are stored row-major: `next[state * symbols + minterm]`.
struct Dfa {
  std::size_t symbols = 0;
  StateId initial = 0;
  std::vector<bool> accepting;
  std::vector<StateId> next;

  [[nodiscard]] std::size_t states() const noexcept { return accepting.size(); }
  [[nodiscard]] StateId step(StateId from, std::size_t minterm) const { return next[from * symbols + minterm]; }

  [[nodiscard]] bool accepts(std::span<const std::size_t> word) const {
    StateId q = initial;
    for (std::size_t m : word) q = step(q, m);
    return accepting[q];
  }

  friend bool operator==(const Dfa&, const Dfa&) = default;
  friend bool operator<(const Dfa& a, const Dfa& b) {
    return std::tie(a.symbols, a.initial, a.accepting, a.next) < std::tie(b.symbols, b.initial, b.accepting, b.next);
  }
};

namespace dfa {

inline Dfa empty_language(std::size_t symbols) { return Dfa{symbols, 0, {false}, std::vector<StateId>(symbols, 0)}; }

inline Dfa universal(std::size_t symbols) { return Dfa{symbols, 0, {true}, std::vector<StateId>(symbols, 0)}; }

/// Accepts only the empty string.
inline Dfa epsilon(std::size_t symbols) {
  Dfa d{symbols, 0, {true, false}, std::vector<StateId>(2 * symbols, 1)};
  return d;
}

/// Accepts exactly the one-symbol strings whose minterm is set in `mask`.
inline Dfa single(const std::vector<bool>& mask) {
  const std::size_t k = mask.size();
  Dfa d{k, 0, {false, true, false}, std::vector<StateId>(3 * k, 2)};
  for (std::size_t m = 0; m < k; ++m) d.next[m] = mask[m] ? 1 : 2;
  return d;
}

inline Dfa complement(Dfa d) {
  d.accepting.flip();
  return d;
}

/// Synchronous product over reachable pairs; `keep` combines acceptance.
template <typename Combine>
Dfa product(const Dfa& a, const Dfa& b, Combine keep) {
  const std::size_t k = a.symbols;
  const std::size_t nb = b.states();
  std::vector<StateId> id(a.states() * nb, std::numeric_limits<StateId>::max());
  std::vector<std::pair<StateId, StateId>> pairs;
  Dfa out{k, 0, {}, {}};

  auto intern = [&](StateId qa, StateId qb) {
    StateId& slot = id[qa * nb + qb];
    if (slot == std::numeric_limits<StateId>::max()) {
      slot = static_cast<StateId>(pairs.size());
      pairs.emplace_back(qa, qb);
      out.accepting.push_back(keep(a.accepting[qa], b.accepting[qb]));
    }
    return slot;
  };

  intern(a.initial, b.initial);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [qa, qb] = pairs[i];
    for (std::size_t m = 0; m < k; ++m) out.next.push_back(intern(a.step(qa, m), b.step(qb, m)));
  }
  return out;
}

inline Dfa intersect(const Dfa& a, const Dfa& b) {
  return product(a, b, [](bool x, bool y) { return x && y; });
}

inline Dfa unite(const Dfa& a, const Dfa& b) {
  return product(a, b, [](bool x, bool y) { return x || y; });
}

namespace detail {

/// Interns subset-construction keys and queues newly seen ones.
class SubsetTable {
 public:
  StateId intern(std::vector<StateId> key, bool accept) {
    auto [it, fresh] = ids_.emplace(std::move(key), static_cast<StateId>(order_.size()));
    if (fresh) {
      order_.push_back(&it->first);
      accepting_.push_back(accept);
    }
    return it->second;
  }
  [[nodiscard]] std::size_t size() const noexcept { return order_.size(); }
  [[nodiscard]] const std::vector<StateId>& key(std::size_t i) const { return *order_[i]; }
  std::vector<bool> take_accepting() { return std::move(accepting_); }

 private:
  std::map<std::vector<StateId>, StateId> ids_;
  std::vector<const std::vector<StateId>*> order_;
  std::vector<bool> accepting_;
};

inline void normalize(std::vector<StateId>& set) {
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
}

}  // namespace detail

/// L(a)·L(b). States are (state of a, set of states of b).
inline Dfa concatenate(const Dfa& a, const Dfa& b) {
  const std::size_t k = a.symbols;
  detail::SubsetTable table;
  auto accept_of = [&](const std::vector<StateId>& key) {
    for (std::size_t i = 1; i < key.size(); ++i) {
      if (b.accepting[key[i]]) return true;
    }
    return false;
  };
  auto make_key = [&](StateId qa, std::vector<StateId> tail) {
    if (a.accepting[qa]) tail.push_back(b.initial);
    detail::normalize(tail);
    tail.insert(tail.begin(), qa);
    return tail;
  };

  auto start = make_key(a.initial, {});
  table.intern(start, accept_of(start));
  std::vector<StateId> next;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const std::vector<StateId> key = table.key(i);
    for (std::size_t m = 0; m < k; ++m) {
      std::vector<StateId> tail;
      tail.reserve(key.size());
      for (std::size_t j = 1; j < key.size(); ++j) tail.push_back(b.step(key[j], m));
      auto target = make_key(a.step(key[0], m), std::move(tail));
      bool acc = accept_of(target);
      next.push_back(table.intern(std::move(target), acc));
    }
  }
  return Dfa{k, 0, table.take_accepting(), std::move(next)};
}

/// L(a)*. The start state is kept apart from the plain subset {a.initial}
/// because it alone must accept the empty string.
inline Dfa kleene_star(const Dfa& a) {
  const std::size_t k = a.symbols;
  constexpr StateId kStartMarker = std::numeric_limits<StateId>::max();
  detail::SubsetTable table;
  table.intern({kStartMarker}, true);
  std::vector<StateId> next;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const std::vector<StateId> key = table.key(i);
    const std::vector<StateId> from = key.front() == kStartMarker ? std::vector<StateId>{a.initial} : key;
    for (std::size_t m = 0; m < k; ++m) {
      std::vector<StateId> target;
      target.reserve(from.size() + 1);
      bool acc = false;
      for (StateId q : from) {
        StateId r = a.step(q, m);
        target.push_back(r);
        acc = acc || a.accepting[r];
      }
      if (acc) target.push_back(a.initial);
      detail::normalize(target);
      next.push_back(table.intern(std::move(target), acc));
    }
  }
  return Dfa{k, 0, table.take_accepting(), std::move(next)};
}

/// Renumbers reachable states breadth-first from the initial state, trying
/// minterms in order, and drops the rest.
inline Dfa canonical_order(const Dfa& d) {
  constexpr StateId kUnseen = std::numeric_limits<StateId>::max();
  std::vector<StateId> rename(d.states(), kUnseen);
  std::vector<StateId> order{d.initial};
  rename[d.initial] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t m = 0; m < d.symbols; ++m) {
      StateId t = d.step(order[i], m);
      if (rename[t] == kUnseen) {
        rename[t] = static_cast<StateId>(order.size());
        order.push_back(t);
      }
    }
  }
  Dfa out{d.symbols, 0, std::vector<bool>(order.size()), std::vector<StateId>(order.size() * d.symbols)};
  for (std::size_t i = 0; i < order.size(); ++i) {
    out.accepting[i] = d.accepting[order[i]];
    for (std::size_t m = 0; m < d.symbols; ++m) out.next[i * d.symbols + m] = rename[d.step(order[i], m)];
  }
  return out;
}

/// Hopcroft partition refinement followed by canonical renumbering, so two
/// automata for the same language come out with identical tables.
inline Dfa minimize(const Dfa& input) {
  const Dfa d = canonical_order(input);
  const std::size_t n = d.states();
  const std::size_t k = d.symbols;

  // Predecessor lists per (minterm, target), compressed.
  std::vector<std::size_t> pred_start(k * n + 1, 0);
  for (std::size_t q = 0; q < n; ++q) {
    for (std::size_t m = 0; m < k; ++m) ++pred_start[m * n + d.step(static_cast<StateId>(q), m) + 1];
  }
  for (std::size_t i = 1; i < pred_start.size(); ++i) pred_start[i] += pred_start[i - 1];
  std::vector<StateId> preds(pred_start.back());
  {
    std::vector<std::size_t> fill(pred_start.begin(), pred_start.end() - 1);
    for (std::size_t q = 0; q < n; ++q) {
      for (std::size_t m = 0; m < k; ++m) preds[fill[m * n + d.step(static_cast<StateId>(q), m)]++] = static_cast<StateId>(q);
    }
  }

  std::vector<std::vector<StateId>> blocks;
  std::vector<std::size_t> block_of(n);
  {
    std::vector<StateId> finals;
    std::vector<StateId> others;
    for (std::size_t q = 0; q < n; ++q) (d.accepting[q] ? finals : others).push_back(static_cast<StateId>(q));
    for (auto* part : {&others, &finals}) {
      if (part->empty()) continue;
      for (StateId q : *part) block_of[q] = blocks.size();
      blocks.push_back(std::move(*part));
    }
  }

  std::deque<std::pair<std::size_t, std::size_t>> work;
  std::vector<bool> queued(blocks.size() * k, false);
  auto enqueue = [&](std::size_t block, std::size_t m) {
    if (queued.size() < (block + 1) * k) queued.resize((block + 1) * k, false);
    if (!queued[block * k + m]) {
      queued[block * k + m] = true;
      work.emplace_back(block, m);
    }
  };
  if (blocks.size() == 2) {
    std::size_t smaller = blocks[0].size() <= blocks[1].size() ? 0 : 1;
    for (std::size_t m = 0; m < k; ++m) enqueue(smaller, m);
  }

  std::vector<bool> marked(n, false);
  std::vector<std::size_t> marked_in(blocks.size(), 0);
  std::vector<std::size_t> touched;
  std::vector<StateId> marked_list;
  while (!work.empty()) {
    auto [splitter, m] = work.front();
    work.pop_front();
    queued[splitter * k + m] = false;

    touched.clear();
    marked_list.clear();
    for (StateId t : blocks[splitter]) {
      for (std::size_t i = pred_start[m * n + t]; i < pred_start[m * n + t + 1]; ++i) {
        StateId p = preds[i];
        if (marked[p]) continue;
        marked[p] = true;
        marked_list.push_back(p);
        std::size_t b = block_of[p];
        if (marked_in[b]++ == 0) touched.push_back(b);
      }
    }

    for (std::size_t y : touched) {
      if (marked_in[y] < blocks[y].size()) {
        std::vector<StateId> moved;
        std::vector<StateId> kept;
        for (StateId q : blocks[y]) (marked[q] ? moved : kept).push_back(q);
        const std::size_t z = blocks.size();
        for (StateId q : moved) block_of[q] = z;
        blocks[y] = std::move(kept);
        blocks.push_back(std::move(moved));
        marked_in.push_back(0);
        for (std::size_t c = 0; c < k; ++c) {
          if (queued.size() > y * k + c && queued[y * k + c]) {
            enqueue(z, c);
          } else {
            enqueue(blocks[y].size() <= blocks[z].size() ? y : z, c);
          }
        }
      }
      marked_in[y] = 0;
    }
    for (StateId p : marked_list) marked[p] = false;
  }

  Dfa quotient{k, static_cast<StateId>(block_of[d.initial]), std::vector<bool>(blocks.size()),
               std::vector<StateId>(blocks.size() * k)};
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    StateId rep = blocks[b].front();
    quotient.accepting[b] = d.accepting[rep];
    for (std::size_t m = 0; m < k; ++m) quotient.next[b * k + m] = static_cast<StateId>(block_of[d.step(rep, m)]);
  }
  return canonical_order(quotient);
}

}  // namespace dfa

/// Graphviz rendering, one edge line per (source, target) pair with the
/// minterms between them merged into a compressed character list.
inline std::string to_dot(const Dfa& d, const Alphabet& alphabet, std::string_view name = "dfa") {
  auto quote = [](const std::string& label) {
    std::string out = "\"";
    for (char ch : label) {
      if (ch == '"' || ch == '\\') out.push_back('\\');
      out.push_back(ch);
    }
    return out + "\"";
  };
  std::ostringstream os;
  os << "digraph " << name << " {\n  rankdir=LR;\n  __start [shape=point];\n";
  for (std::size_t q = 0; q < d.states(); ++q) {
    os << "  q" << q << " [shape=" << (d.accepting[q] ? "doublecircle" : "circle") << "];\n";
  }
  os << "  __start -> q" << d.initial << ";\n";
  for (std::size_t q = 0; q < d.states(); ++q) {
    std::map<StateId, std::vector<Symbol>> edges;
    for (std::size_t m = 0; m < d.symbols; ++m) {
      auto& syms = edges[d.step(static_cast<StateId>(q), m)];
      const auto& mem = alphabet.members_of(m);
      syms.insert(syms.end(), mem.begin(), mem.end());
    }
    for (auto& [target, syms] : edges) {
      std::sort(syms.begin(), syms.end());
      os << "  q" << q << " -> q" << target << " [label=" << quote(Alphabet::describe_symbols(syms)) << "];\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace infere
