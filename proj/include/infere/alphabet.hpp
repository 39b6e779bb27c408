#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "infere/error.hpp"
#include "infere/regex_ast.hpp"

namespace infere {

/// A universe symbol: printable ASCII characters keep their code point,
/// placeholder <mK> is `kPlaceholderBase + K`.
using Symbol = std::uint64_t;

inline constexpr Symbol kPlaceholderBase = 0x100;

constexpr Symbol placeholder_symbol(std::uint32_t k) noexcept { return kPlaceholderBase + k; }
constexpr bool is_placeholder_symbol(Symbol s) noexcept { return s >= kPlaceholderBase; }

/// Partition of the universe (printable ASCII plus one atom per placeholder
/// in play) into minterms: maximal groups of symbols that no class in use
/// can tell apart. Minterms are numbered by their smallest symbol.
class Alphabet {
 public:
  static Alphabet derive(std::span<const RegexAst> trees) {
    std::set<CharClass> classes;
    std::set<std::uint32_t> placeholders;
    for (const auto& tree : trees) {
      for_each_leaf(tree, [&](const Leaf& leaf) {
        if (leaf.is_placeholder()) {
          placeholders.insert(leaf.placeholder_index());
        } else if (leaf.char_class() != CharClass::Any) {
          classes.insert(leaf.char_class());
        }
      });
    }

    Alphabet alphabet;
    std::map<std::uint32_t, std::size_t> by_signature;
    for (std::size_t i = 0; i < kPrintableCount; ++i) {
      std::uint32_t signature = 0;
      for (CharClass c : classes) {
        if (members(c).test(i)) signature |= 1U << static_cast<unsigned>(c);
      }
      auto [it, fresh] = by_signature.emplace(signature, alphabet.members_.size());
      if (fresh) alphabet.members_.emplace_back();
      alphabet.ascii_minterm_[i] = it->second;
      alphabet.members_[it->second].push_back(static_cast<Symbol>(kFirstPrintable + i));
    }
    for (std::uint32_t k : placeholders) {
      alphabet.placeholder_minterm_.emplace(k, alphabet.members_.size());
      alphabet.members_.push_back({placeholder_symbol(k)});
    }
    return alphabet;
  }

  [[nodiscard]] std::size_t size() const noexcept { return members_.size(); }

  [[nodiscard]] std::optional<std::size_t> minterm_of(Symbol s) const {
    if (is_placeholder_symbol(s)) {
      auto it = placeholder_minterm_.find(static_cast<std::uint32_t>(s - kPlaceholderBase));
      if (it == placeholder_minterm_.end()) return std::nullopt;
      return it->second;
    }
    if (s < static_cast<Symbol>(kFirstPrintable) || s > static_cast<Symbol>(kLastPrintable)) return std::nullopt;
    return ascii_minterm_[s - kFirstPrintable];
  }

  [[nodiscard]] const std::vector<Symbol>& members_of(std::size_t minterm) const { return members_.at(minterm); }
  [[nodiscard]] Symbol representative(std::size_t minterm) const { return members_.at(minterm).front(); }

  /// Which minterms a leaf matches. Throws if the leaf's class would cut a
  /// minterm or names a placeholder outside this alphabet.
  [[nodiscard]] std::vector<bool> leaf_mask(const Leaf& leaf) const {
    std::vector<bool> mask(size(), false);
    if (leaf.is_placeholder()) {
      auto id = minterm_of(placeholder_symbol(leaf.placeholder_index()));
      if (!id) throw Error(ErrorKind::LeafNotInAlphabet, leaf.token() + " is not part of the alphabet");
      mask[*id] = true;
      return mask;
    }
    if (leaf.char_class() == CharClass::Any) return std::vector<bool>(size(), true);
    const AsciiSet set = members(leaf.char_class());
    for (std::size_t m = 0; m < size(); ++m) {
      const auto& syms = members_[m];
      if (is_placeholder_symbol(syms.front())) continue;
      std::size_t inside = 0;
      for (Symbol s : syms) inside += set.test(s - kFirstPrintable) ? 1 : 0;
      if (inside != 0 && inside != syms.size()) {
        throw Error(ErrorKind::LeafNotInAlphabet, leaf.token() + " splits a minterm of this alphabet");
      }
      mask[m] = inside != 0;
    }
    return mask;
  }

  /// Maps a symbol string to minterm ids; nullopt if a symbol lies outside
  /// the universe.
  [[nodiscard]] std::optional<std::vector<std::size_t>> to_minterms(std::span<const Symbol> word) const {
    std::vector<std::size_t> out;
    out.reserve(word.size());
    for (Symbol s : word) {
      auto id = minterm_of(s);
      if (!id) return std::nullopt;
      out.push_back(*id);
    }
    return out;
  }

  /// Compressed description such as `0-9` or `!#-&,<m0>`.
  [[nodiscard]] std::string describe(std::size_t minterm) const { return describe_symbols(members_of(minterm)); }

  static std::string describe_symbols(std::span<const Symbol> sorted) {
    std::string out;
    std::size_t i = 0;
    while (i < sorted.size()) {
      if (!out.empty()) out.push_back(',');
      Symbol s = sorted[i];
      if (is_placeholder_symbol(s)) {
        out += "<m" + std::to_string(s - kPlaceholderBase) + ">";
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j + 1 < sorted.size() && !is_placeholder_symbol(sorted[j + 1]) && sorted[j + 1] == sorted[j] + 1) ++j;
      out.push_back(static_cast<char>(s));
      if (j > i) {
        if (j > i + 1) out.push_back('-');
        else out.push_back(',');
        out.push_back(static_cast<char>(sorted[j]));
      }
      i = j + 1;
    }
    return out;
  }

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  Alphabet() = default;

  std::array<std::size_t, kPrintableCount> ascii_minterm_{};
  std::map<std::uint32_t, std::size_t> placeholder_minterm_;
  std::vector<std::vector<Symbol>> members_;
};

inline Alphabet derive_alphabet(std::span<const RegexAst> trees) { return Alphabet::derive(trees); }

inline Alphabet derive_alphabet(std::initializer_list<RegexAst> trees) {
  std::vector<RegexAst> list(trees);
  return Alphabet::derive(list);
}

/// Splits text into symbols, reading `<mK>` as one placeholder symbol.
/// Characters outside printable ASCII are kept and later rejected by the
/// alphabet.
inline std::vector<Symbol> tokenize_word(std::string_view text) {
  std::vector<Symbol> out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '<' && i + 2 < text.size() && text[i + 1] == 'm') {
      std::size_t j = i + 2;
      std::uint64_t k = 0;
      while (j < text.size() && text[j] >= '0' && text[j] <= '9' && k < (1ULL << 32)) k = k * 10 + (text[j++] - '0');
      if (j > i + 2 && j < text.size() && text[j] == '>' && k < (1ULL << 32)) {
        out.push_back(placeholder_symbol(static_cast<std::uint32_t>(k)));
        i = j;
        continue;
      }
    }
    out.push_back(static_cast<unsigned char>(text[i]));
  }
  return out;
}

}  // namespace infere
