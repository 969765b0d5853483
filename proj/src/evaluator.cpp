#include "msfmf/evaluator.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>

#include "msfmf/errors.hpp"

namespace msfmf {

InterpretationShape::InterpretationShape(const Signature& signature,
                                         const DomainAssignment& domains) {
  if (domains.sizes.size() != signature.sort_count())
    throw ShapeError("domain assignment does not match the signature");
  auto build = [&](const std::vector<SortId>& args, std::uint32_t range) {
    Symbol symbol;
    symbol.range = range;
    for (SortId s : args) {
      symbol.arg_sizes.push_back(domains.size(s));
      symbol.cells *= domains.size(s);
    }
    return symbol;
  };
  for (const auto& f : signature.funcs()) funcs_.push_back(build(f.args, domains.size(f.result)));
  for (const auto& p : signature.preds()) preds_.push_back(build(p.args, 2));
}

std::uint64_t InterpretationShape::cell_of(const Symbol& symbol,
                                           std::span<const std::uint32_t> args) {
  std::uint64_t cell = 0;
  for (std::size_t i = 0; i < args.size(); ++i) cell = cell * symbol.arg_sizes[i] + args[i];
  return cell;
}

std::vector<std::uint32_t> InterpretationShape::args_of(const Symbol& symbol,
                                                        std::uint64_t cell) {
  std::vector<std::uint32_t> args(symbol.arg_sizes.size());
  for (std::size_t i = args.size(); i-- > 0;) {
    args[i] = static_cast<std::uint32_t>(cell % symbol.arg_sizes[i]);
    cell /= symbol.arg_sizes[i];
  }
  return args;
}

bool InterpretationShape::fits(const Interpretation& interp) const {
  if (interp.functions.size() != funcs_.size() || interp.predicates.size() != preds_.size())
    return false;
  for (std::size_t f = 0; f < funcs_.size(); ++f) {
    const auto& table = interp.functions[f];
    if (table.size() != funcs_[f].cells) return false;
    for (auto v : table)
      if (v >= funcs_[f].range) return false;
  }
  for (std::size_t p = 0; p < preds_.size(); ++p) {
    const auto& table = interp.predicates[p];
    if (table.size() != preds_[p].cells) return false;
    for (auto v : table)
      if (v > 1) return false;
  }
  return true;
}

void InterpretationShape::require_fit(const Interpretation& interp) const {
  if (!fits(interp)) throw ShapeError("interpretation does not fit the problem's signature");
}

Interpretation InterpretationShape::blank() const {
  Interpretation interp;
  for (const auto& f : funcs_) interp.functions.emplace_back(f.cells, 0);
  for (const auto& p : preds_) interp.predicates.emplace_back(p.cells, 0);
  return interp;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::uint64_t> strides_of(const InterpretationShape::Symbol& symbol) {
  std::vector<std::uint64_t> strides(symbol.arg_sizes.size());
  std::uint64_t s = 1;
  for (std::size_t i = strides.size(); i-- > 0;) {
    strides[i] = s;
    s *= symbol.arg_sizes[i];
  }
  return strides;
}

}  // namespace

Evaluator::Evaluator(const Problem& problem) : Evaluator(problem, problem.formulas) {}

Evaluator::Evaluator(const Problem& problem, std::span<const Formula> formulas)
    : shape_(problem.signature, problem.domains), sort_sizes_(problem.domains.sizes) {
  for (const auto& f : shape_.funcs()) func_strides_.push_back(strides_of(f));
  for (const auto& p : shape_.preds()) pred_strides_.push_back(strides_of(p));
  for (const auto& f : formulas) {
    std::vector<std::string> scope;
    roots_.push_back(compile_formula(f, scope));
  }
}

Evaluator::Evaluator(const Problem& problem, const Formula& formula,
                     std::span<const std::pair<std::string, SortId>> free_variables)
    : shape_(problem.signature, problem.domains), sort_sizes_(problem.domains.sizes) {
  for (const auto& f : shape_.funcs()) func_strides_.push_back(strides_of(f));
  for (const auto& p : shape_.preds()) pred_strides_.push_back(strides_of(p));
  std::vector<std::string> scope;
  for (const auto& [name, sort] : free_variables) scope.push_back(name);
  free_count_ = scope.size();
  max_depth_ = scope.size();
  roots_.push_back(compile_formula(formula, scope));
}

std::uint32_t Evaluator::compile_term(const Term& term, std::vector<std::string>& scope) {
  Node node;
  switch (term.kind()) {
    case TermKind::Variable: {
      auto it = std::find(scope.rbegin(), scope.rend(), term.name());
      if (it == scope.rend()) throw std::invalid_argument("unbound variable " + term.name());
      node.op = Op::Var;
      node.a = static_cast<std::uint32_t>(scope.rend() - it - 1);
      break;
    }
    case TermKind::Element:
      node.op = Op::Elem;
      node.a = term.value().index;
      break;
    case TermKind::Apply: {
      std::vector<std::uint32_t> args;
      for (const auto& a : term.args()) args.push_back(compile_term(a, scope));
      node.op = Op::Apply;
      node.a = static_cast<std::uint32_t>(to_index(term.func()));
      node.first = static_cast<std::uint32_t>(arg_pool_.size());
      node.count = static_cast<std::uint32_t>(args.size());
      arg_pool_.insert(arg_pool_.end(), args.begin(), args.end());
      break;
    }
  }
  terms_.push_back(node);
  return static_cast<std::uint32_t>(terms_.size() - 1);
}

std::uint32_t Evaluator::compile_formula(const Formula& formula, std::vector<std::string>& scope) {
  Node node;
  switch (formula.kind()) {
    case FormulaKind::True:
      node.op = Op::True;
      break;
    case FormulaKind::False:
      node.op = Op::False;
      break;
    case FormulaKind::Equal:
      node.op = Op::Equal;
      node.a = compile_term(formula.terms()[0], scope);
      node.b = compile_term(formula.terms()[1], scope);
      break;
    case FormulaKind::Predicate: {
      std::vector<std::uint32_t> args;
      for (const auto& a : formula.terms()) args.push_back(compile_term(a, scope));
      node.op = Op::Pred;
      node.a = static_cast<std::uint32_t>(to_index(formula.pred()));
      node.first = static_cast<std::uint32_t>(arg_pool_.size());
      node.count = static_cast<std::uint32_t>(args.size());
      arg_pool_.insert(arg_pool_.end(), args.begin(), args.end());
      break;
    }
    case FormulaKind::Not:
      node.op = Op::Not;
      node.a = compile_formula(formula.child(0), scope);
      break;
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
    case FormulaKind::Iff:
      node.op = formula.kind() == FormulaKind::And       ? Op::And
                : formula.kind() == FormulaKind::Or      ? Op::Or
                : formula.kind() == FormulaKind::Implies ? Op::Implies
                                                         : Op::Iff;
      node.a = compile_formula(formula.child(0), scope);
      node.b = compile_formula(formula.child(1), scope);
      break;
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      node.op = formula.kind() == FormulaKind::Forall ? Op::Forall : Op::Exists;
      auto sort = to_index(formula.variable_sort());
      if (sort >= sort_sizes_.size()) throw std::invalid_argument("quantifier over unknown sort");
      node.a = static_cast<std::uint32_t>(scope.size());
      node.b = sort_sizes_.at(sort);
      scope.push_back(formula.variable());
      max_depth_ = std::max(max_depth_, scope.size());
      node.c = compile_formula(formula.body(), scope);
      scope.pop_back();
      break;
    }
  }
  formulas_.push_back(node);
  return static_cast<std::uint32_t>(formulas_.size() - 1);
}

template <bool Partial>
std::uint32_t Evaluator::eval_term(std::uint32_t index, const Interpretation& interp,
                                   std::uint32_t* env) const {
  const Node& node = terms_[index];
  switch (node.op) {
    case Op::Var:
      return env[node.a];
    case Op::Elem:
      return node.a;
    default: {
      const auto& strides = func_strides_[node.a];
      std::uint64_t cell = 0;
      for (std::uint32_t i = 0; i < node.count; ++i) {
        std::uint32_t v = eval_term<Partial>(arg_pool_[node.first + i], interp, env);
        if constexpr (Partial) {
          if (v == kUnassignedValue) return kUnassignedValue;
        }
        cell += strides[i] * v;
      }
      return interp.functions[node.a][cell];
    }
  }
}

template <bool Partial>
Truth Evaluator::eval_formula(std::uint32_t index, const Interpretation& interp,
                              std::uint32_t* env) const {
  const Node& node = formulas_[index];
  switch (node.op) {
    case Op::True:
      return Truth::True;
    case Op::False:
      return Truth::False;
    case Op::Equal: {
      std::uint32_t l = eval_term<Partial>(node.a, interp, env);
      std::uint32_t r = eval_term<Partial>(node.b, interp, env);
      if constexpr (Partial) {
        if (l == kUnassignedValue || r == kUnassignedValue) return Truth::Unknown;
      }
      return l == r ? Truth::True : Truth::False;
    }
    case Op::Pred: {
      const auto& strides = pred_strides_[node.a];
      std::uint64_t cell = 0;
      for (std::uint32_t i = 0; i < node.count; ++i) {
        std::uint32_t v = eval_term<Partial>(arg_pool_[node.first + i], interp, env);
        if constexpr (Partial) {
          if (v == kUnassignedValue) return Truth::Unknown;
        }
        cell += strides[i] * v;
      }
      std::uint8_t t = interp.predicates[node.a][cell];
      if constexpr (Partial) {
        if (t == kUnassignedTruth) return Truth::Unknown;
      }
      return t ? Truth::True : Truth::False;
    }
    case Op::Not: {
      Truth t = eval_formula<Partial>(node.a, interp, env);
      if (t == Truth::Unknown) return t;
      return t == Truth::True ? Truth::False : Truth::True;
    }
    case Op::And: {
      Truth l = eval_formula<Partial>(node.a, interp, env);
      if (l == Truth::False) return l;
      Truth r = eval_formula<Partial>(node.b, interp, env);
      if (r == Truth::False) return r;
      return l == Truth::True && r == Truth::True ? Truth::True : Truth::Unknown;
    }
    case Op::Or: {
      Truth l = eval_formula<Partial>(node.a, interp, env);
      if (l == Truth::True) return l;
      Truth r = eval_formula<Partial>(node.b, interp, env);
      if (r == Truth::True) return r;
      return l == Truth::False && r == Truth::False ? Truth::False : Truth::Unknown;
    }
    case Op::Implies: {
      Truth l = eval_formula<Partial>(node.a, interp, env);
      if (l == Truth::False) return Truth::True;
      Truth r = eval_formula<Partial>(node.b, interp, env);
      if (r == Truth::True) return r;
      return l == Truth::True && r == Truth::False ? Truth::False : Truth::Unknown;
    }
    case Op::Iff: {
      Truth l = eval_formula<Partial>(node.a, interp, env);
      if (l == Truth::Unknown) return l;
      Truth r = eval_formula<Partial>(node.b, interp, env);
      if (r == Truth::Unknown) return r;
      return l == r ? Truth::True : Truth::False;
    }
    case Op::Forall:
    case Op::Exists: {
      const Truth stop = node.op == Op::Forall ? Truth::False : Truth::True;
      const Truth pass = node.op == Op::Forall ? Truth::True : Truth::False;
      Truth result = pass;
      for (std::uint32_t v = 0; v < node.b; ++v) {
        env[node.a] = v;
        Truth t = eval_formula<Partial>(node.c, interp, env);
        if (t == stop) return stop;
        if (t == Truth::Unknown) result = Truth::Unknown;
      }
      return result;
    }
    default:
      return Truth::Unknown;
  }
}

namespace {

constexpr std::size_t kInlineSlots = 32;

}  // namespace

bool Evaluator::holds(std::size_t i, const Interpretation& interp,
                      std::span<const std::uint32_t> free_values) const {
  if (free_values.size() != free_count_)
    throw std::invalid_argument("expected " + std::to_string(free_count_) + " free values");
  std::array<std::uint32_t, kInlineSlots> inline_env{};
  std::vector<std::uint32_t> heap_env;
  std::uint32_t* env = inline_env.data();
  if (max_depth_ > kInlineSlots) {
    heap_env.resize(max_depth_);
    env = heap_env.data();
  }
  std::copy(free_values.begin(), free_values.end(), env);
  return eval_formula<false>(roots_.at(i), interp, env) == Truth::True;
}

bool Evaluator::holds_all(const Interpretation& interp) const {
  for (std::size_t i = 0; i < roots_.size(); ++i)
    if (!holds(i, interp)) return false;
  return true;
}

Truth Evaluator::holds_partial(std::size_t i, const Interpretation& partial) const {
  std::array<std::uint32_t, kInlineSlots> inline_env{};
  std::vector<std::uint32_t> heap_env;
  std::uint32_t* env = inline_env.data();
  if (max_depth_ > kInlineSlots) {
    heap_env.resize(max_depth_);
    env = heap_env.data();
  }
  return eval_formula<true>(roots_.at(i), partial, env);
}

}  // namespace msfmf
