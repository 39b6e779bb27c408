#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "infere/regex_ast.hpp"

namespace infere {

/// Seeded generator whose draws depend only on the mt19937_64 stream, which
/// the standard pins down exactly; distributions are avoided because their
/// output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform-enough integer in [0, n).
  std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(engine_() % n); }
  bool chance(std::size_t num, std::size_t den) { return below(den) < num; }

  template <typename T>
  const T& pick(const std::vector<T>& items) {
    return items[below(items.size())];
  }

 private:
  std::mt19937_64 engine_;
};

struct AstGenConfig {
  /// Maximum tree height; a lone leaf has height 1.
  std::size_t max_depth = 4;
  std::vector<Leaf> leaves = default_leaves();
  std::vector<Op> ops = all_ops();
  std::uint32_t max_count = 3;
  /// Probability (out of 100) that an inner position becomes a leaf.
  std::size_t leaf_percent = 30;

  static std::vector<Leaf> default_leaves() {
    std::vector<Leaf> out;
    for (CharClass c : kCharClasses) out.push_back(Leaf::of(c));
    for (std::uint32_t k = 0; k < 3; ++k) out.push_back(Leaf::placeholder(k));
    return out;
  }
  static std::vector<Op> all_ops() {
    std::vector<Op> out;
    for (const auto& entry : kOperators) out.push_back(entry.op);
    return out;
  }
  static std::vector<Op> core_ops() {
    std::vector<Op> out;
    for (const auto& entry : kOperators) {
      if (!is_sugar(entry.op)) out.push_back(entry.op);
    }
    return out;
  }
};

inline RegexAst random_ast(Rng& rng, const AstGenConfig& config, std::size_t depth_left) {
  if (depth_left <= 1 || config.ops.empty() || rng.chance(config.leaf_percent, 100)) {
    return rng.pick(config.leaves);
  }
  const Op op = rng.pick(config.ops);
  const auto& meta = info(op);
  std::vector<RegexAst> kids;
  for (std::size_t i = 0; i < meta.arity; ++i) kids.push_back(random_ast(rng, config, depth_left - 1));
  std::vector<std::uint32_t> params;
  if (op == Op::RepRange) {
    auto lo = static_cast<std::uint32_t>(rng.below(config.max_count + 1));
    auto hi = lo + static_cast<std::uint32_t>(rng.below(config.max_count - lo + 1));
    params = {lo, hi};
  } else {
    for (std::size_t i = 0; i < meta.numeric_params; ++i) {
      params.push_back(static_cast<std::uint32_t>(rng.below(config.max_count + 1)));
    }
  }
  return RegexAst::make(op, std::move(kids), std::move(params));
}

inline RegexAst random_ast(Rng& rng, const AstGenConfig& config = {}) {
  return random_ast(rng, config, config.max_depth);
}

/// Applies language-preserving identities at random positions. Used to
/// build candidates that differ in surface form but not in meaning.
inline RegexAst equivalent_rewrite(const RegexAst& t, Rng& rng) {
  if (t.is_leaf()) {
    switch (rng.below(8)) {
      case 0: return ast::disj(t, t);
      case 1: return ast::negate(ast::negate(t));
      default: return t;
    }
  }
  std::vector<RegexAst> kids;
  for (const auto& child : t.children()) kids.push_back(equivalent_rewrite(child, rng));
  RegexAst rebuilt = RegexAst::make(t.op(), kids, t.params());
  if (!rng.chance(1, 2)) return rebuilt;
  const RegexAst any_star = ast::star(CharClass::Any);
  switch (t.op()) {
    case Op::And: return ast::conj(kids[1], kids[0]);
    case Op::Or: return ast::disj(kids[1], kids[0]);
    case Op::Star: return ast::star(rebuilt);
    case Op::Optional: return ast::disj(kids[0], ast::rep(kids[0], 0));
    case Op::StartWith: return ast::concat(kids[0], any_star);
    case Op::EndWith: return ast::concat(any_star, kids[0]);
    case Op::Contain: return ast::concat(any_star, ast::concat(kids[0], any_star));
    case Op::Concat: return ast::concat(ast::rep(kids[0], 1), kids[1]);
    case Op::RepeatLeast:
      if (t.params()[0] == 0) return ast::star(kids[0]);
      return rebuilt;
    case Op::Rep:
      if (t.params()[0] == 1) return kids[0];
      return ast::rep_range(kids[0], t.params()[0], t.params()[0]);
    default: return rebuilt;
  }
}

/// Small random edit: swaps one leaf or flips and/or. The result may or may
/// not still be equivalent to the input.
inline RegexAst mutate(const RegexAst& t, Rng& rng, const AstGenConfig& config = {}) {
  if (t.is_leaf()) return rng.pick(config.leaves);
  std::vector<RegexAst> kids = t.children();
  Op op = t.op();
  if (rng.chance(1, 4) && (op == Op::And || op == Op::Or)) {
    op = op == Op::And ? Op::Or : Op::And;
  } else {
    std::size_t which = rng.below(kids.size());
    kids[which] = mutate(kids[which], rng, config);
  }
  return RegexAst::make(op, std::move(kids), t.params());
}

}  // namespace infere
