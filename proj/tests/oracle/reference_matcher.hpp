#pragma once

// Test-only oracles. Nothing here goes through the automaton code: the
// matcher decides membership directly from the operator semantics by
// trying every split of the input.

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <tuple>
#include <vector>

#include "infere/alphabet.hpp"
#include "infere/regex_ast.hpp"

namespace oracle {

using infere::CharClass;
using infere::Op;
using infere::RegexAst;
using infere::Symbol;

class ReferenceMatcher {
 public:
  explicit ReferenceMatcher(std::span<const Symbol> word) : word_(word.begin(), word.end()) {}

  bool matches(const RegexAst& t) { return match(t, 0, word_.size()); }

 private:
  bool symbol_in(const infere::Leaf& leaf, Symbol s) const {
    if (leaf.is_placeholder()) return s == infere::placeholder_symbol(leaf.placeholder_index());
    if (leaf.char_class() == CharClass::Any) return true;
    if (infere::is_placeholder_symbol(s)) return false;
    return infere::members(leaf.char_class()).test(s - infere::kFirstPrintable);
  }

  // rep(r, k) over [i, j)
  bool power(const RegexAst& r, std::uint32_t k, std::size_t i, std::size_t j) {
    if (k == 0) return i == j;
    auto key = std::make_tuple(static_cast<const void*>(&r), static_cast<int>(k) + 1000, i, j);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool ok = false;
    for (std::size_t mid = i; mid <= j && !ok; ++mid) ok = match(r, i, mid) && power(r, k - 1, mid, j);
    return memo_[key] = ok;
  }

  bool kleene(const RegexAst& r, std::size_t i, std::size_t j) {
    if (i == j) return true;
    auto key = std::make_tuple(static_cast<const void*>(&r), -1, i, j);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool ok = false;
    for (std::size_t mid = i + 1; mid <= j && !ok; ++mid) ok = match(r, i, mid) && kleene(r, mid, j);
    return memo_[key] = ok;
  }

  bool match(const RegexAst& t, std::size_t i, std::size_t j) {
    if (t.is_leaf()) return j == i + 1 && symbol_in(t.leaf(), word_[i]);
    auto key = std::make_tuple(static_cast<const void*>(&t), 0, i, j);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const auto& kids = t.children();
    const auto& ints = t.params();
    bool ok = false;
    switch (t.op()) {
      case Op::StartWith:
        for (std::size_t mid = i; mid <= j && !ok; ++mid) ok = match(kids[0], i, mid);
        break;
      case Op::EndWith:
        for (std::size_t mid = i; mid <= j && !ok; ++mid) ok = match(kids[0], mid, j);
        break;
      case Op::Contain:
        for (std::size_t a = i; a <= j && !ok; ++a) {
          for (std::size_t b = a; b <= j && !ok; ++b) ok = match(kids[0], a, b);
        }
        break;
      case Op::Not: ok = !match(kids[0], i, j); break;
      case Op::Optional: ok = i == j || match(kids[0], i, j); break;
      case Op::Star: ok = kleene(kids[0], i, j); break;
      case Op::Concat:
        for (std::size_t mid = i; mid <= j && !ok; ++mid) ok = match(kids[0], i, mid) && match(kids[1], mid, j);
        break;
      case Op::And: ok = match(kids[0], i, j) && match(kids[1], i, j); break;
      case Op::Or: ok = match(kids[0], i, j) || match(kids[1], i, j); break;
      case Op::Rep: ok = power(kids[0], ints[0], i, j); break;
      case Op::RepeatLeast:
        for (std::size_t mid = i; mid <= j && !ok; ++mid) ok = power(kids[0], ints[0], i, mid) && kleene(kids[0], mid, j);
        break;
      case Op::RepRange:
        for (std::uint32_t k = ints[0]; k <= ints[1] && !ok; ++k) ok = power(kids[0], k, i, j);
        break;
    }
    return memo_[key] = ok;
  }

  std::vector<Symbol> word_;
  std::map<std::tuple<const void*, int, std::size_t, std::size_t>, bool> memo_;
};

inline bool reference_matches(const RegexAst& t, std::span<const Symbol> word) {
  return ReferenceMatcher(word).matches(t);
}

/// Calls `fn` on every word over `letters` with length in [0, max_len],
/// shortest first.
inline void for_each_word(std::span<const Symbol> letters, std::size_t max_len,
                          const std::function<void(const std::vector<Symbol>&)>& fn) {
  std::vector<Symbol> word;
  std::function<void(std::size_t)> extend = [&](std::size_t remaining) {
    if (remaining == 0) {
      fn(word);
      return;
    }
    for (Symbol s : letters) {
      word.push_back(s);
      extend(remaining - 1);
      word.pop_back();
    }
  };
  for (std::size_t len = 0; len <= max_len; ++len) extend(len);
}

/// One symbol per minterm of `alphabet`; enough to enumerate its language.
inline std::vector<Symbol> representatives(const infere::Alphabet& alphabet) {
  std::vector<Symbol> out;
  for (std::size_t m = 0; m < alphabet.size(); ++m) out.push_back(alphabet.representative(m));
  return out;
}

}  // namespace oracle
