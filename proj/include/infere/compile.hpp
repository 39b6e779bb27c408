#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "infere/alphabet.hpp"
#include "infere/dfa.hpp"
#include "infere/error.hpp"
#include "infere/regex_ast.hpp"

namespace infere {

inline constexpr std::uint32_t kDefaultUnrollCap = 100;

struct CompileOptions {
  /// Largest count rep/repeat_least/rep_range may unroll to.
  std::uint32_t unroll_cap = kDefaultUnrollCap;
};

namespace detail {

class Compiler {
 public:
  Compiler(const Alphabet& alphabet, CompileOptions options) : alphabet_(alphabet), options_(options) {}

  Dfa build(const RegexAst& t) {
    const std::size_t k = alphabet_.size();
    if (t.is_leaf()) return dfa::minimize(dfa::single(alphabet_.leaf_mask(t.leaf())));
    const auto& kids = t.children();
    const auto& ints = t.params();
    switch (t.op()) {
      case Op::StartWith: return dfa::minimize(dfa::concatenate(build(kids[0]), dfa::universal(k)));
      case Op::EndWith: return dfa::minimize(dfa::concatenate(dfa::universal(k), build(kids[0])));
      case Op::Contain: {
        Dfa tail = dfa::minimize(dfa::concatenate(build(kids[0]), dfa::universal(k)));
        return dfa::minimize(dfa::concatenate(dfa::universal(k), tail));
      }
      case Op::Not: return dfa::minimize(dfa::complement(build(kids[0])));
      case Op::Optional: return dfa::minimize(dfa::unite(build(kids[0]), dfa::epsilon(k)));
      case Op::Star: return dfa::minimize(dfa::kleene_star(build(kids[0])));
      case Op::Concat: return dfa::minimize(dfa::concatenate(build(kids[0]), build(kids[1])));
      case Op::And: return dfa::minimize(dfa::intersect(build(kids[0]), build(kids[1])));
      case Op::Or: return dfa::minimize(dfa::unite(build(kids[0]), build(kids[1])));
      case Op::Rep: {
        check_cap(ints[0]);
        return power(build(kids[0]), ints[0]);
      }
      case Op::RepeatLeast: {
        check_cap(ints[0]);
        Dfa body = build(kids[0]);
        return dfa::minimize(dfa::concatenate(power(body, ints[0]), dfa::kleene_star(body)));
      }
      case Op::RepRange: {
        check_cap(ints[1]);
        Dfa body = build(kids[0]);
        Dfa current = power(body, ints[0]);
        Dfa total = current;
        for (std::uint32_t n = ints[0]; n < ints[1]; ++n) {
          current = dfa::minimize(dfa::concatenate(current, body));
          total = dfa::minimize(dfa::unite(total, current));
        }
        return total;
      }
    }
    throw Error(ErrorKind::UnknownOperator, "unhandled operator");
  }

 private:
  void check_cap(std::uint32_t count) const {
    if (count > options_.unroll_cap) {
      throw Error(ErrorKind::RepetitionTooLarge, "repetition count " + std::to_string(count) +
                                                     " exceeds the unrolling cap of " +
                                                     std::to_string(options_.unroll_cap));
    }
  }

  Dfa power(const Dfa& body, std::uint32_t count) const {
    Dfa out = dfa::epsilon(alphabet_.size());
    for (std::uint32_t i = 0; i < count; ++i) out = dfa::minimize(dfa::concatenate(out, body));
    return dfa::minimize(out);
  }

  const Alphabet& alphabet_;
  CompileOptions options_;
};

}  // namespace detail

/// Minimal, canonically numbered DFA of `tree` over `alphabet`. Negation
/// complements relative to the alphabet's universe.
inline Dfa compile(const RegexAst& tree, const Alphabet& alphabet, CompileOptions options = {}) {
  return detail::Compiler(alphabet, options).build(tree);
}

/// Language equality: both trees are compiled over their joint alphabet and
/// the canonical minimal tables compared.
inline bool equivalent(const RegexAst& a, const RegexAst& b, CompileOptions options = {}) {
  const Alphabet alphabet = derive_alphabet({a, b});
  return compile(a, alphabet, options) == compile(b, alphabet, options);
}

/// Membership of a concrete symbol string; false for symbols outside the
/// alphabet's universe.
inline bool accepts(const Dfa& d, const Alphabet& alphabet, std::span<const Symbol> word) {
  auto ids = alphabet.to_minterms(word);
  return ids && d.accepts(*ids);
}

}  // namespace infere
