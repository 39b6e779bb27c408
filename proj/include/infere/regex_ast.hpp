#pragma once

#include <algorithm>
#include <array>
#include <bitset>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "infere/error.hpp"

namespace infere {

// ---------------------------------------------------------------------------
// Operators
// ---------------------------------------------------------------------------

enum class Op : std::uint8_t {
  StartWith,
  EndWith,
  Contain,
  Not,
  Optional,
  Star,
  Concat,
  And,
  Or,
  Rep,
  RepeatLeast,
  RepRange,
};

struct OpInfo {
  Op op;
  std::string_view name;
  std::size_t arity;           // language-valued children
  std::size_t numeric_params;  // trailing integer arguments
};

inline constexpr std::array<OpInfo, 12> kOperators{{
    {Op::StartWith, "startwith", 1, 0},
    {Op::EndWith, "endwith", 1, 0},
    {Op::Contain, "contain", 1, 0},
    {Op::Not, "not", 1, 0},
    {Op::Optional, "optional", 1, 0},
    {Op::Star, "star", 1, 0},
    {Op::Concat, "concat", 2, 0},
    {Op::And, "and", 2, 0},
    {Op::Or, "or", 2, 0},
    {Op::Rep, "rep", 1, 1},
    {Op::RepeatLeast, "repeat_least", 1, 1},
    {Op::RepRange, "rep_range", 1, 2},
}};

constexpr const OpInfo& info(Op op) noexcept { return kOperators[static_cast<std::size_t>(op)]; }

constexpr std::optional<Op> op_from_name(std::string_view name) noexcept {
  for (const auto& entry : kOperators) {
    if (entry.name == name) return entry.op;
  }
  return std::nullopt;
}

/// startwith/endwith/contain only exist in tree and chain form.
constexpr bool is_sugar(Op op) noexcept {
  return op == Op::StartWith || op == Op::EndWith || op == Op::Contain;
}

// ---------------------------------------------------------------------------
// Operands
// ---------------------------------------------------------------------------

enum class CharClass : std::uint8_t { Let, Cap, Low, Num, Any, Spec, Vow };

inline constexpr std::array<CharClass, 7> kCharClasses{
    CharClass::Let, CharClass::Cap, CharClass::Low, CharClass::Num,
    CharClass::Any, CharClass::Spec, CharClass::Vow};

constexpr std::string_view token(CharClass c) noexcept {
  switch (c) {
    case CharClass::Let: return "<let>";
    case CharClass::Cap: return "<cap>";
    case CharClass::Low: return "<low>";
    case CharClass::Num: return "<num>";
    case CharClass::Any: return "<any>";
    case CharClass::Spec: return "<spec>";
    case CharClass::Vow: return "<vow>";
  }
  return "";
}

/// Surface literal used by plain regexes.
constexpr std::string_view literal(CharClass c) noexcept {
  switch (c) {
    case CharClass::Let: return "[A-Za-z]";
    case CharClass::Cap: return "[A-Z]";
    case CharClass::Low: return "[a-z]";
    case CharClass::Num: return "[0-9]";
    case CharClass::Any: return ".";
    case CharClass::Spec: return "[-,;+:!@#_$%&*=^]";
    case CharClass::Vow: return "[AEIOUaeiou]";
  }
  return "";
}

inline constexpr char kFirstPrintable = 0x20;
inline constexpr char kLastPrintable = 0x7E;
inline constexpr std::size_t kPrintableCount = kLastPrintable - kFirstPrintable + 1;

/// Membership of printable ASCII characters, indexed by `ch - 0x20`.
using AsciiSet = std::bitset<kPrintableCount>;

inline AsciiSet ascii_range(char lo, char hi) {
  AsciiSet set;
  for (int ch = lo; ch <= hi; ++ch) set.set(static_cast<std::size_t>(ch - kFirstPrintable));
  return set;
}

inline AsciiSet ascii_of(std::string_view chars) {
  AsciiSet set;
  for (char ch : chars) set.set(static_cast<std::size_t>(ch - kFirstPrintable));
  return set;
}

/// ASCII members of a class. <any> additionally matches every placeholder,
/// which is handled by the alphabet, not here.
inline AsciiSet members(CharClass c) {
  switch (c) {
    case CharClass::Let: return ascii_range('A', 'Z') | ascii_range('a', 'z');
    case CharClass::Cap: return ascii_range('A', 'Z');
    case CharClass::Low: return ascii_range('a', 'z');
    case CharClass::Num: return ascii_range('0', '9');
    case CharClass::Any: return AsciiSet{}.set();
    case CharClass::Spec: return ascii_of("-,;+:!@#_$%&*=^");
    case CharClass::Vow: return ascii_of("AEIOUaeiou");
  }
  return {};
}

/// A leaf: either a character class or an opaque placeholder constant <mK>.
struct Leaf {
  std::variant<CharClass, std::uint32_t> value;

  static Leaf of(CharClass c) { return Leaf{c}; }
  static Leaf placeholder(std::uint32_t k) { return Leaf{k}; }

  [[nodiscard]] bool is_placeholder() const noexcept {
    return std::holds_alternative<std::uint32_t>(value);
  }
  [[nodiscard]] CharClass char_class() const { return std::get<CharClass>(value); }
  [[nodiscard]] std::uint32_t placeholder_index() const { return std::get<std::uint32_t>(value); }

  [[nodiscard]] std::string token() const {
    if (is_placeholder()) return "<m" + std::to_string(placeholder_index()) + ">";
    return std::string(infere::token(char_class()));
  }

  friend bool operator==(const Leaf&, const Leaf&) = default;
};

// ---------------------------------------------------------------------------
// Tree
// ---------------------------------------------------------------------------

class RegexAst;

struct OpNode {
  Op op;
  std::vector<RegexAst> children;
  std::vector<std::uint32_t> params;

  friend bool operator==(const OpNode&, const OpNode&) = default;
};

/// Operator tree of a regex. Construction through `make` checks arity and
/// repetition bounds, so every `RegexAst` in circulation is well formed.
class RegexAst {
 public:
  RegexAst(Leaf leaf) : node_(std::move(leaf)) {}  // NOLINT(google-explicit-constructor)
  RegexAst(CharClass c) : node_(Leaf::of(c)) {}    // NOLINT(google-explicit-constructor)

  static RegexAst make(Op op, std::vector<RegexAst> children, std::vector<std::uint32_t> params = {}) {
    const auto& meta = info(op);
    if (children.size() != meta.arity || params.size() != meta.numeric_params) {
      throw Error(ErrorKind::ArityMismatch,
                  std::string(meta.name) + " takes " + std::to_string(meta.arity) + " operand(s) and " +
                      std::to_string(meta.numeric_params) + " integer(s), got " +
                      std::to_string(children.size()) + " and " + std::to_string(params.size()));
    }
    if (op == Op::RepRange && params[0] > params[1]) {
      throw Error(ErrorKind::BadRepetitionBounds,
                  "rep_range lower bound " + std::to_string(params[0]) + " exceeds upper bound " +
                      std::to_string(params[1]));
    }
    return RegexAst(OpNode{op, std::move(children), std::move(params)});
  }

  [[nodiscard]] bool is_leaf() const noexcept { return std::holds_alternative<Leaf>(node_); }
  [[nodiscard]] const Leaf& leaf() const { return std::get<Leaf>(node_); }
  [[nodiscard]] const OpNode& node() const { return std::get<OpNode>(node_); }
  [[nodiscard]] Op op() const { return node().op; }
  [[nodiscard]] const std::vector<RegexAst>& children() const { return node().children; }
  [[nodiscard]] const std::vector<std::uint32_t>& params() const { return node().params; }

  friend bool operator==(const RegexAst&, const RegexAst&) = default;

 private:
  explicit RegexAst(OpNode node) : node_(std::move(node)) {}

  std::variant<Leaf, OpNode> node_;
};

// Shorthand constructors. Mostly used by tests and fixture generation.
namespace ast {

inline RegexAst placeholder(std::uint32_t k) { return Leaf::placeholder(k); }
inline RegexAst startwith(RegexAst r) { return RegexAst::make(Op::StartWith, {std::move(r)}); }
inline RegexAst endwith(RegexAst r) { return RegexAst::make(Op::EndWith, {std::move(r)}); }
inline RegexAst contain(RegexAst r) { return RegexAst::make(Op::Contain, {std::move(r)}); }
inline RegexAst negate(RegexAst r) { return RegexAst::make(Op::Not, {std::move(r)}); }
inline RegexAst optional(RegexAst r) { return RegexAst::make(Op::Optional, {std::move(r)}); }
inline RegexAst star(RegexAst r) { return RegexAst::make(Op::Star, {std::move(r)}); }
inline RegexAst concat(RegexAst a, RegexAst b) { return RegexAst::make(Op::Concat, {std::move(a), std::move(b)}); }
inline RegexAst conj(RegexAst a, RegexAst b) { return RegexAst::make(Op::And, {std::move(a), std::move(b)}); }
inline RegexAst disj(RegexAst a, RegexAst b) { return RegexAst::make(Op::Or, {std::move(a), std::move(b)}); }
inline RegexAst rep(RegexAst r, std::uint32_t k) { return RegexAst::make(Op::Rep, {std::move(r)}, {k}); }
inline RegexAst repeat_least(RegexAst r, std::uint32_t k) {
  return RegexAst::make(Op::RepeatLeast, {std::move(r)}, {k});
}
inline RegexAst rep_range(RegexAst r, std::uint32_t lo, std::uint32_t hi) {
  return RegexAst::make(Op::RepRange, {std::move(r)}, {lo, hi});
}

}  // namespace ast

/// Replaces startwith/endwith/contain by their concat/star expansions.
inline RegexAst desugar(const RegexAst& t) {
  if (t.is_leaf()) return t;
  std::vector<RegexAst> kids;
  kids.reserve(t.children().size());
  for (const auto& child : t.children()) kids.push_back(desugar(child));
  const RegexAst any_star = ast::star(CharClass::Any);
  switch (t.op()) {
    case Op::StartWith: return ast::concat(std::move(kids[0]), any_star);
    case Op::EndWith: return ast::concat(any_star, std::move(kids[0]));
    case Op::Contain: return ast::concat(any_star, ast::concat(std::move(kids[0]), any_star));
    default: return RegexAst::make(t.op(), std::move(kids), t.params());
  }
}

/// Height of the tree; a lone leaf has depth 1.
inline std::size_t depth(const RegexAst& t) {
  if (t.is_leaf()) return 1;
  std::size_t deepest = 0;
  for (const auto& child : t.children()) deepest = std::max(deepest, depth(child));
  return deepest + 1;
}

inline std::size_t node_count(const RegexAst& t) {
  if (t.is_leaf()) return 1;
  std::size_t n = 1;
  for (const auto& child : t.children()) n += node_count(child);
  return n;
}

/// Visits every leaf left to right.
template <typename Fn>
void for_each_leaf(const RegexAst& t, Fn&& fn) {
  if (t.is_leaf()) {
    fn(t.leaf());
    return;
  }
  for (const auto& child : t.children()) for_each_leaf(child, fn);
}

}  // namespace infere
