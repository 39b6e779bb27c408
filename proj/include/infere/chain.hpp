#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "infere/dsl.hpp"
#include "infere/error.hpp"
#include "infere/regex_ast.hpp"

namespace infere {

/// Reference to the result of an earlier step (`stepJ`), 1-based.
struct StepRef {
  std::size_t index;
  friend bool operator==(const StepRef&, const StepRef&) = default;
};

using StepArg = std::variant<StepRef, Leaf, std::uint32_t>;

/// A one-operator expression whose operands are earlier steps, inline
/// leaves, or integers.
struct StepCall {
  Op op;
  std::vector<StepArg> args;
  friend bool operator==(const StepCall&, const StepCall&) = default;
};

struct ChainStep {
  std::size_t index;
  std::variant<Leaf, StepCall> expr;
  friend bool operator==(const ChainStep&, const ChainStep&) = default;
};

/// Ordered inference steps; the last step denotes the whole regex.
struct Chain {
  std::vector<ChainStep> steps;
  friend bool operator==(const Chain&, const Chain&) = default;
};

namespace detail {

inline void check_call_shape(const StepCall& call, std::size_t step) {
  const auto& meta = info(call.op);
  std::size_t operands = 0;
  std::size_t ints = 0;
  for (const auto& arg : call.args) {
    bool is_int = std::holds_alternative<std::uint32_t>(arg);
    if (is_int) {
      ++ints;
    } else if (ints > 0) {
      throw Error(ErrorKind::ArityMismatch, "step" + std::to_string(step) + ": operand after integer argument");
    } else {
      ++operands;
    }
  }
  if (operands != meta.arity || ints != meta.numeric_params) {
    throw Error(ErrorKind::ArityMismatch, "step" + std::to_string(step) + ": " + std::string(meta.name) +
                                              " takes " + std::to_string(meta.arity) + " operand(s) and " +
                                              std::to_string(meta.numeric_params) + " integer(s)");
  }
  if (call.op == Op::RepRange) {
    auto lo = std::get<std::uint32_t>(call.args[1]);
    auto hi = std::get<std::uint32_t>(call.args[2]);
    if (lo > hi) throw Error(ErrorKind::BadRepetitionBounds, "step" + std::to_string(step) + ": rep_range bounds");
  }
}

/// Index ordering and reference direction. Shared by parse_chain and revert.
inline void check_references(const Chain& chain) {
  const std::size_t count = chain.steps.size();
  for (std::size_t pos = 0; pos < count; ++pos) {
    const auto& step = chain.steps[pos];
    if (step.index != pos + 1) {
      throw Error(ErrorKind::NonConsecutiveIndices, "expected step" + std::to_string(pos + 1) + ", found step" +
                                                        std::to_string(step.index));
    }
    const auto* call = std::get_if<StepCall>(&step.expr);
    if (!call) continue;
    check_call_shape(*call, step.index);
    for (const auto& arg : call->args) {
      const auto* ref = std::get_if<StepRef>(&arg);
      if (!ref) continue;
      if (ref->index == 0) {
        throw Error(ErrorKind::DanglingStepRef, "step" + std::to_string(step.index) + " references step0");
      }
      if (ref->index >= step.index) {
        throw Error(ErrorKind::ForwardReference, "step" + std::to_string(step.index) + " references later step" +
                                                     std::to_string(ref->index));
      }
    }
  }
}

inline std::string render_arg(const StepArg& arg) {
  if (const auto* ref = std::get_if<StepRef>(&arg)) return "step" + std::to_string(ref->index);
  if (const auto* leaf = std::get_if<Leaf>(&arg)) return leaf->token();
  return std::to_string(std::get<std::uint32_t>(arg));
}

/// "step12" -> 12; anything else is not a step name.
inline std::optional<std::size_t> step_number(std::string_view word) {
  if (word.size() <= 4 || word.substr(0, 4) != "step") return std::nullopt;
  std::string_view digits = word.substr(4);
  for (char ch : digits) {
    if (!is_digit(ch)) return std::nullopt;
  }
  try {
    return parse_uint(digits);
  } catch (const Error&) {
    return std::nullopt;
  }
}

inline StepCall parse_step_call(Scanner& in, std::size_t step) {
  const std::string at = "step" + std::to_string(step) + ": ";
  std::string name = in.word();
  auto op = op_from_name(name);
  if (!op) throw Error(ErrorKind::UnknownOperator, at + "'" + name + "' is not an operator");
  if (!in.consume('(')) throw Error(ErrorKind::MalformedStep, at + "expected '(' after " + name);
  StepCall call{*op, {}};
  do {
    char ch = in.peek();
    if (is_digit(ch) || ch == '-') {
      call.args.emplace_back(parse_uint(in.word()));
    } else if (starts_leaf(ch)) {
      call.args.emplace_back(scan_leaf(in));
    } else if (is_ident(ch)) {
      std::string word = in.word();
      auto ref = step_number(word);
      if (!ref) throw Error(ErrorKind::MalformedStep, at + "argument '" + word + "' is not a step reference");
      call.args.emplace_back(StepRef{*ref});
    } else {
      throw Error(ErrorKind::MalformedStep, at + "malformed argument list" + in.where());
    }
  } while (in.consume(','));
  if (!in.consume(')')) throw Error(ErrorKind::MalformedStep, at + "expected ')'" + in.where());
  return call;
}

}  // namespace detail

/// Post-order decomposition of a tree into inference steps. Every leaf and
/// every operator node becomes one step, numbered in visiting order;
/// integer parameters stay inline.
inline Chain decompose(const RegexAst& tree) {
  struct Frame {
    const RegexAst* node;
    bool expanded;
  };
  Chain chain;
  std::vector<Frame> nodes{{&tree, false}};
  std::vector<StepRef> operands;

  auto emit = [&](std::variant<Leaf, StepCall> expr) {
    const std::size_t index = chain.steps.size() + 1;
    chain.steps.push_back(ChainStep{index, std::move(expr)});
    operands.push_back(StepRef{index});
  };

  while (!nodes.empty()) {
    Frame frame = nodes.back();
    nodes.pop_back();
    const RegexAst& node = *frame.node;
    if (node.is_leaf()) {
      emit(node.leaf());
      continue;
    }
    if (!frame.expanded) {
      nodes.push_back({&node, true});
      const auto& kids = node.children();
      for (auto it = kids.rbegin(); it != kids.rend(); ++it) nodes.push_back({&*it, false});
      continue;
    }
    // Operands come off the stack right to left; restore source order.
    const std::size_t arity = node.children().size();
    StepCall call{node.op(), {}};
    call.args.reserve(arity + node.params().size());
    for (std::size_t i = operands.size() - arity; i < operands.size(); ++i) call.args.emplace_back(operands[i]);
    operands.resize(operands.size() - arity);
    for (auto n : node.params()) call.args.emplace_back(n);
    emit(std::move(call));
  }
  return chain;
}

/// Rebuilds the tree by substituting every step reference, starting from
/// the last step. Steps the last one never reaches are rejected.
inline RegexAst revert(const Chain& chain) {
  if (chain.steps.empty()) throw Error(ErrorKind::EmptyInput, "empty chain");
  detail::check_references(chain);

  const std::size_t count = chain.steps.size();
  std::vector<bool> reached(count, false);
  std::vector<std::size_t> pending{count};
  reached[count - 1] = true;
  while (!pending.empty()) {
    std::size_t index = pending.back();
    pending.pop_back();
    const auto* call = std::get_if<StepCall>(&chain.steps[index - 1].expr);
    if (!call) continue;
    for (const auto& arg : call->args) {
      if (const auto* ref = std::get_if<StepRef>(&arg); ref && !reached[ref->index - 1]) {
        reached[ref->index - 1] = true;
        pending.push_back(ref->index);
      }
    }
  }
  for (std::size_t i = 0; i < count; ++i) {
    if (!reached[i]) {
      throw Error(ErrorKind::UnusedStep, "step" + std::to_string(i + 1) + " is not used by step" +
                                             std::to_string(count));
    }
  }

  // References only point backwards, so one forward pass resolves them all.
  std::vector<RegexAst> built;
  built.reserve(count);
  for (const auto& step : chain.steps) {
    if (const auto* leaf = std::get_if<Leaf>(&step.expr)) {
      built.emplace_back(*leaf);
      continue;
    }
    const auto& call = std::get<StepCall>(step.expr);
    std::vector<detail::FunctionalArg> args;
    args.reserve(call.args.size());
    for (const auto& arg : call.args) {
      if (const auto* ref = std::get_if<StepRef>(&arg)) {
        args.emplace_back(built[ref->index - 1]);
      } else if (const auto* leaf = std::get_if<Leaf>(&arg)) {
        args.emplace_back(RegexAst(*leaf));
      } else {
        args.emplace_back(std::get<std::uint32_t>(arg));
      }
    }
    built.push_back(detail::build_call(call.op, std::move(args)));
  }
  return std::move(built.back());
}

/// `step1=<let> step2=repeat_least(step1,3) ...`
inline std::string render_chain(const Chain& chain) {
  std::string out;
  for (const auto& step : chain.steps) {
    if (!out.empty()) out.push_back(' ');
    out += "step" + std::to_string(step.index) + "=";
    if (const auto* leaf = std::get_if<Leaf>(&step.expr)) {
      out += leaf->token();
      continue;
    }
    const auto& call = std::get<StepCall>(step.expr);
    out += info(call.op).name;
    out.push_back('(');
    for (std::size_t i = 0; i < call.args.size(); ++i) {
      if (i > 0) out.push_back(',');
      out += detail::render_arg(call.args[i]);
    }
    out.push_back(')');
  }
  return out;
}

/// Inverse of render_chain. Leaf steps may also be written as class
/// literals (`step1=[A-Za-z]`).
inline Chain parse_chain(std::string_view text) {
  detail::Scanner in(text);
  if (in.eof()) throw Error(ErrorKind::EmptyInput, "empty chain");
  Chain chain;
  while (!in.eof()) {
    std::string head = in.word();
    auto index = detail::step_number(head);
    if (!index) {
      throw Error(ErrorKind::MalformedStep, "expected 'stepN=' but found '" + (head.empty() ? std::string(1, in.peek()) : head) +
                                                "'" + in.where());
    }
    if (!in.consume('=')) throw Error(ErrorKind::MalformedStep, "expected '=' after " + head);
    char ch = in.peek();
    if (detail::starts_leaf(ch)) {
      chain.steps.push_back(ChainStep{*index, detail::scan_leaf(in)});
    } else if (detail::is_ident(ch)) {
      chain.steps.push_back(ChainStep{*index, detail::parse_step_call(in, *index)});
    } else {
      throw Error(ErrorKind::MalformedStep, head + " has no expression" + in.where());
    }
  }

  std::set<std::size_t> seen;
  for (const auto& step : chain.steps) {
    if (!seen.insert(step.index).second) {
      throw Error(ErrorKind::DuplicateIndex, "step" + std::to_string(step.index) + " defined twice");
    }
  }
  detail::check_references(chain);
  return chain;
}

}  // namespace infere
