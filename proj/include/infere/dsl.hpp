#pragma once

#include <cctype>
#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "infere/error.hpp"
#include "infere/regex_ast.hpp"

namespace infere {

namespace detail {

inline bool is_space(char ch) noexcept { return std::isspace(static_cast<unsigned char>(ch)) != 0; }
inline bool is_digit(char ch) noexcept { return ch >= '0' && ch <= '9'; }
inline bool is_ident(char ch) noexcept {
  return (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || ch == '_';
}

/// Character cursor shared by the three text grammars. Whitespace is
/// insignificant everywhere, so every peek skips it first.
class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
  }
  [[nodiscard]] bool eof() {
    skip_ws();
    return pos_ >= text_.size();
  }
  [[nodiscard]] char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool consume(char ch) {
    if (peek() != ch) return false;
    ++pos_;
    return true;
  }
  char take() { return text_[pos_++]; }
  [[nodiscard]] std::size_t pos() const noexcept { return pos_; }
  [[nodiscard]] std::string_view text() const noexcept { return text_; }

  /// Raw text up to and including `close`, starting at the current char.
  /// Interior whitespace is dropped.
  std::string delimited(char close) {
    std::string out;
    out.push_back(take());
    while (pos_ < text_.size()) {
      char ch = text_[pos_++];
      if (is_space(ch)) continue;
      out.push_back(ch);
      if (ch == close) return out;
    }
    throw Error(ErrorKind::UnknownToken, "unterminated '" + out + "' at offset " + std::to_string(pos_));
  }

  /// Maximal run of identifier-or-digit characters (used for names and ints).
  std::string word() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char ch = text_[pos_];
      if (!(is_ident(ch) || is_digit(ch) || ch == '-')) break;
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  [[nodiscard]] std::string where() const { return " at offset " + std::to_string(pos_); }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

inline std::uint32_t parse_uint(std::string_view digits) {
  std::uint32_t value = 0;
  if (digits.empty() || !is_digit(digits.front())) {
    throw Error(ErrorKind::MalformedInteger, "'" + std::string(digits) + "' is not a non-negative integer");
  }
  auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc{} || end != digits.data() + digits.size()) {
    throw Error(ErrorKind::MalformedInteger, "'" + std::string(digits) + "' is not a non-negative integer");
  }
  return value;
}

/// Resolves the interior of a bracket expression (without the brackets) to
/// one of the known classes by comparing member sets, so `[a-zA-Z]` and
/// `[A-Za-z]` both mean <let>.
inline CharClass class_from_bracket(std::string_view inner) {
  std::string_view body = inner;
  // Some corpora spell classes as `[<A-Z>]`.
  if (body.size() > 2 && body.front() == '<' && body.back() == '>') body = body.substr(1, body.size() - 2);
  AsciiSet set;
  for (std::size_t i = 0; i < body.size(); ++i) {
    char lo = body[i];
    if (lo < kFirstPrintable || lo > kLastPrintable) {
      throw Error(ErrorKind::UnknownCharClass, "non-printable character in class [" + std::string(inner) + "]");
    }
    if (i + 2 < body.size() && body[i + 1] == '-') {
      char hi = body[i + 2];
      if (hi < lo) throw Error(ErrorKind::UnknownCharClass, "reversed range in [" + std::string(inner) + "]");
      set |= ascii_range(lo, hi);
      i += 2;
    } else {
      set |= ascii_of(std::string_view(&body[i], 1));
    }
  }
  for (CharClass c : kCharClasses) {
    if (c != CharClass::Any && members(c) == set) return c;
  }
  throw Error(ErrorKind::UnknownCharClass, "[" + std::string(inner) + "] is not a supported character class");
}

/// `<let>`, `<m3>` and friends, including the angle brackets.
inline Leaf leaf_from_token(std::string_view tok) {
  for (CharClass c : kCharClasses) {
    if (token(c) == tok) return Leaf::of(c);
  }
  if (tok.size() > 3 && tok.substr(0, 2) == "<m" && tok.back() == '>') {
    std::string_view digits = tok.substr(2, tok.size() - 3);
    bool all_digits = !digits.empty();
    for (char ch : digits) all_digits = all_digits && is_digit(ch);
    if (all_digits) {
      try {
        return Leaf::placeholder(parse_uint(digits));
      } catch (const Error&) {
        // fall through to the class diagnostic
      }
    }
  }
  throw Error(ErrorKind::UnknownCharClass, "unknown operand " + std::string(tok));
}

/// Reads one operand at the cursor: a token, a bracket class, or `.`.
inline Leaf scan_leaf(Scanner& in) {
  char ch = in.peek();
  if (ch == '.') {
    in.take();
    return Leaf::of(CharClass::Any);
  }
  if (ch == '<') return leaf_from_token(in.delimited('>'));
  if (ch == '[') {
    std::string lit = in.delimited(']');
    return Leaf::of(class_from_bracket(std::string_view(lit).substr(1, lit.size() - 2)));
  }
  throw Error(ErrorKind::UnknownToken, std::string("expected an operand") + in.where());
}

inline bool starts_leaf(char ch) noexcept { return ch == '.' || ch == '<' || ch == '['; }

// Precedence, loosest first: '|', '&', concatenation, postfix, prefix '~'.
class PlainParser {
 public:
  explicit PlainParser(std::string_view text) : in_(text) {}

  RegexAst parse() {
    if (in_.eof()) throw Error(ErrorKind::EmptyInput, "empty regex");
    RegexAst result = parse_or();
    if (!in_.eof()) {
      if (in_.peek() == ')') throw Error(ErrorKind::UnbalancedParens, "unmatched ')'" + in_.where());
      throw Error(ErrorKind::UnknownToken, std::string("unexpected '") + in_.peek() + "'" + in_.where());
    }
    return result;
  }

 private:
  RegexAst parse_or() {
    RegexAst lhs = parse_and();
    while (in_.consume('|')) lhs = ast::disj(std::move(lhs), parse_and());
    return lhs;
  }

  RegexAst parse_and() {
    RegexAst lhs = parse_concat();
    while (in_.consume('&')) lhs = ast::conj(std::move(lhs), parse_concat());
    return lhs;
  }

  RegexAst parse_concat() {
    RegexAst lhs = parse_postfix();
    while (starts_atom(in_.peek())) lhs = ast::concat(std::move(lhs), parse_postfix());
    return lhs;
  }

  static bool starts_atom(char ch) noexcept { return ch == '(' || ch == '~' || starts_leaf(ch); }

  RegexAst parse_postfix() {
    RegexAst operand = parse_prefix();
    for (;;) {
      if (in_.consume('?')) {
        operand = ast::optional(std::move(operand));
      } else if (in_.consume('*')) {
        operand = ast::star(std::move(operand));
      } else if (in_.peek() == '{') {
        operand = parse_bounds(std::move(operand));
      } else {
        return operand;
      }
    }
  }

  RegexAst parse_bounds(RegexAst operand) {
    std::string braced = in_.delimited('}');
    std::string_view body = std::string_view(braced).substr(1, braced.size() - 2);
    auto comma = body.find(',');
    if (comma == std::string_view::npos) return ast::rep(std::move(operand), parse_uint(body));
    std::uint32_t lo = parse_uint(body.substr(0, comma));
    std::string_view rest = body.substr(comma + 1);
    if (rest.empty()) return ast::repeat_least(std::move(operand), lo);
    std::uint32_t hi = parse_uint(rest);
    if (lo > hi) {
      throw Error(ErrorKind::BadRepetitionBounds, "{" + std::string(body) + "} has lower bound above upper");
    }
    return ast::rep_range(std::move(operand), lo, hi);
  }

  RegexAst parse_prefix() {
    if (in_.consume('~')) return ast::negate(parse_prefix());
    return parse_atom();
  }

  RegexAst parse_atom() {
    char ch = in_.peek();
    if (ch == '(') {
      in_.take();
      ++depth_;
      if (in_.peek() == ')') throw Error(ErrorKind::UnknownToken, "empty group" + in_.where());
      RegexAst inner = parse_or();
      if (!in_.consume(')')) {
        if (in_.eof()) throw Error(ErrorKind::UnbalancedParens, "missing ')' at end of input");
        throw Error(ErrorKind::UnknownToken, std::string("unexpected '") + in_.peek() + "'" + in_.where());
      }
      --depth_;
      return inner;
    }
    if (starts_leaf(ch)) return scan_leaf(in_);
    if (in_.eof()) {
      if (depth_ > 0) throw Error(ErrorKind::UnbalancedParens, "missing ')' at end of input");
      throw Error(ErrorKind::UnknownToken, "expected an operand at end of input");
    }
    if (ch == ')') throw Error(ErrorKind::UnbalancedParens, "unexpected ')'" + in_.where());
    throw Error(ErrorKind::UnknownToken, std::string("unexpected '") + ch + "'" + in_.where());
  }

  Scanner in_;
  int depth_ = 0;
};

/// One argument of a functional call: either a sub-tree or an integer.
using FunctionalArg = std::variant<RegexAst, std::uint32_t>;

inline RegexAst build_call(Op op, std::vector<FunctionalArg> args) {
  const auto& meta = info(op);
  std::vector<RegexAst> kids;
  std::vector<std::uint32_t> ints;
  for (auto& arg : args) {
    bool want_tree = kids.size() < meta.arity;
    if (auto* tree = std::get_if<RegexAst>(&arg); tree && want_tree && ints.empty()) {
      kids.push_back(std::move(*tree));
    } else if (auto* n = std::get_if<std::uint32_t>(&arg); n && !want_tree) {
      ints.push_back(*n);
    } else {
      throw Error(ErrorKind::ArityMismatch, std::string(meta.name) + " received arguments in the wrong shape");
    }
  }
  return RegexAst::make(op, std::move(kids), std::move(ints));
}

class FunctionalParser {
 public:
  explicit FunctionalParser(std::string_view text) : in_(text) {}

  RegexAst parse() {
    if (in_.eof()) throw Error(ErrorKind::EmptyInput, "empty tree");
    RegexAst result = parse_expr();
    if (!in_.eof()) {
      if (in_.peek() == ')') throw Error(ErrorKind::UnbalancedParens, "unmatched ')'" + in_.where());
      throw Error(ErrorKind::UnknownToken, std::string("trailing '") + in_.peek() + "'" + in_.where());
    }
    return result;
  }

 private:
  RegexAst parse_expr() {
    char ch = in_.peek();
    if (starts_leaf(ch)) return scan_leaf(in_);
    if (!is_ident(ch)) {
      if (in_.eof()) throw Error(ErrorKind::UnbalancedParens, "input ended inside an operator call");
      throw Error(ErrorKind::UnknownToken, std::string("unexpected '") + ch + "'" + in_.where());
    }
    std::string name = in_.word();
    auto op = op_from_name(name);
    if (!op) throw Error(ErrorKind::UnknownOperator, "'" + name + "' is not an operator");
    if (!in_.consume('(')) throw Error(ErrorKind::ArityMismatch, name + " requires an argument list" + in_.where());

    std::vector<FunctionalArg> args;
    do {
      char next = in_.peek();
      if (is_digit(next) || next == '-') {
        args.emplace_back(parse_uint(in_.word()));
      } else {
        args.emplace_back(parse_expr());
      }
    } while (in_.consume(','));
    if (!in_.consume(')')) {
      if (in_.eof()) throw Error(ErrorKind::UnbalancedParens, "missing ')' after " + name + " arguments");
      throw Error(ErrorKind::UnknownToken, std::string("unexpected '") + in_.peek() + "'" + in_.where());
    }
    return build_call(*op, std::move(args));
  }

  Scanner in_;
};

inline std::string render_leaf_plain(const Leaf& leaf) {
  if (leaf.is_placeholder()) return leaf.token();
  return std::string(literal(leaf.char_class()));
}

inline void render_plain_into(const RegexAst& t, std::string& out);

inline void wrapped(const RegexAst& t, std::string& out) {
  out.push_back('(');
  render_plain_into(t, out);
  out.push_back(')');
}

// A bare `.` needs no parentheses before a postfix operator: `.*`.
inline void postfix_operand(const RegexAst& t, std::string& out) {
  if (t.is_leaf() && t.leaf() == Leaf::of(CharClass::Any)) {
    out.push_back('.');
  } else {
    wrapped(t, out);
  }
}

inline void render_plain_into(const RegexAst& t, std::string& out) {
  if (t.is_leaf()) {
    out += render_leaf_plain(t.leaf());
    return;
  }
  const auto& kids = t.children();
  const auto& ints = t.params();
  switch (t.op()) {
    case Op::StartWith:
    case Op::EndWith:
    case Op::Contain:
      render_plain_into(desugar(t), out);
      return;
    case Op::Not:
      out.push_back('~');
      wrapped(kids[0], out);
      return;
    case Op::Optional:
      postfix_operand(kids[0], out);
      out.push_back('?');
      return;
    case Op::Star:
      postfix_operand(kids[0], out);
      out.push_back('*');
      return;
    case Op::Concat:
      wrapped(kids[0], out);
      wrapped(kids[1], out);
      return;
    case Op::And:
    case Op::Or:
      wrapped(kids[0], out);
      out.push_back(t.op() == Op::And ? '&' : '|');
      wrapped(kids[1], out);
      return;
    case Op::Rep:
      postfix_operand(kids[0], out);
      out += "{" + std::to_string(ints[0]) + "}";
      return;
    case Op::RepeatLeast:
      postfix_operand(kids[0], out);
      out += "{" + std::to_string(ints[0]) + ",}";
      return;
    case Op::RepRange:
      postfix_operand(kids[0], out);
      out += "{" + std::to_string(ints[0]) + "," + std::to_string(ints[1]) + "}";
      return;
  }
}

inline void render_functional_into(const RegexAst& t, std::string& out) {
  if (t.is_leaf()) {
    out += t.leaf().token();
    return;
  }
  out += info(t.op()).name;
  out.push_back('(');
  bool first = true;
  for (const auto& child : t.children()) {
    if (!first) out.push_back(',');
    first = false;
    render_functional_into(child, out);
  }
  for (auto n : t.params()) {
    out.push_back(',');
    out += std::to_string(n);
  }
  out.push_back(')');
}

}  // namespace detail

/// Parses surface regex text such as `((.*)([0-9]))|((<m0>)(.*))`.
/// The result never contains startwith/endwith/contain.
inline RegexAst parse_plain(std::string_view text) { return detail::PlainParser(text).parse(); }

/// Parses parenthetical tree notation such as `and(startwith(<low>),endwith(<vow>))`.
inline RegexAst parse_functional(std::string_view text) { return detail::FunctionalParser(text).parse(); }

/// Canonical, fully parenthesized plain rendering. Sugar operators are
/// rendered through their concat/star expansion.
inline std::string render_plain(const RegexAst& t) {
  std::string out;
  detail::render_plain_into(t, out);
  return out;
}

inline std::string render_functional(const RegexAst& t) {
  std::string out;
  detail::render_functional_into(t, out);
  return out;
}

}  // namespace infere
