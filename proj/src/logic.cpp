#include "msfmf/logic.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "msfmf/errors.hpp"
#include "msfmf/evaluator.hpp"
#include "msfmf/problem_io.hpp"

namespace msfmf {

// ---------------------------------------------------------------------------
// Signature

SortId Signature::add_sort(std::string name) {
  if (sort_index_.contains(name)) throw std::invalid_argument("duplicate sort " + name);
  auto id = static_cast<SortId>(sorts_.size());
  sort_index_.emplace(name, id);
  sorts_.push_back(std::move(name));
  return id;
}

FuncId Signature::add_func(std::string name, std::vector<SortId> args, SortId result) {
  if (has_symbol(name)) throw std::invalid_argument("duplicate symbol " + name);
  for (SortId s : args)
    if (to_index(s) >= sorts_.size()) throw std::invalid_argument("unknown sort in " + name);
  if (to_index(result) >= sorts_.size()) throw std::invalid_argument("unknown sort in " + name);
  auto id = static_cast<FuncId>(funcs_.size());
  func_index_.emplace(name, id);
  funcs_.push_back(FuncDecl{std::move(name), std::move(args), result});
  return id;
}

PredId Signature::add_pred(std::string name, std::vector<SortId> args) {
  if (has_symbol(name)) throw std::invalid_argument("duplicate symbol " + name);
  if (args.empty()) throw std::invalid_argument("predicate " + name + " needs arguments");
  for (SortId s : args)
    if (to_index(s) >= sorts_.size()) throw std::invalid_argument("unknown sort in " + name);
  auto id = static_cast<PredId>(preds_.size());
  pred_index_.emplace(name, id);
  preds_.push_back(PredDecl{std::move(name), std::move(args)});
  return id;
}

std::optional<SortId> Signature::find_sort(std::string_view name) const {
  auto it = sort_index_.find(name);
  if (it == sort_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<FuncId> Signature::find_func(std::string_view name) const {
  auto it = func_index_.find(name);
  if (it == func_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<PredId> Signature::find_pred(std::string_view name) const {
  auto it = pred_index_.find(name);
  if (it == pred_index_.end()) return std::nullopt;
  return it->second;
}

bool Signature::has_symbol(std::string_view name) const {
  return func_index_.contains(name) || pred_index_.contains(name);
}

// ---------------------------------------------------------------------------
// Term

struct Term::Node {
  TermKind kind{};
  std::string name;
  SortId sort{};
  FuncId func{};
  std::uint32_t index = 0;
  std::vector<Term> args;
};

Term Term::variable(std::string name, SortId sort) {
  auto node = std::make_shared<Node>();
  node->kind = TermKind::Variable;
  node->name = std::move(name);
  node->sort = sort;
  return Term(std::move(node));
}

Term Term::apply(FuncId func, std::vector<Term> args) {
  auto node = std::make_shared<Node>();
  node->kind = TermKind::Apply;
  node->func = func;
  node->args = std::move(args);
  return Term(std::move(node));
}

Term Term::element(Value value) {
  auto node = std::make_shared<Node>();
  node->kind = TermKind::Element;
  node->sort = value.sort;
  node->index = value.index;
  return Term(std::move(node));
}

TermKind Term::kind() const { return node_->kind; }
const std::string& Term::name() const { return node_->name; }
SortId Term::annotated_sort() const { return node_->sort; }
FuncId Term::func() const { return node_->func; }
const std::vector<Term>& Term::args() const { return node_->args; }
Value Term::value() const { return Value{node_->sort, node_->index}; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case TermKind::Variable:
      return x.name == y.name && x.sort == y.sort;
    case TermKind::Element:
      return x.sort == y.sort && x.index == y.index;
    case TermKind::Apply:
      return x.func == y.func && x.args == y.args;
  }
  return false;
}

SortId sort_of(const Term& term, const Signature& signature) {
  if (term.kind() == TermKind::Apply) return signature.func(term.func()).result;
  return term.annotated_sort();
}

// ---------------------------------------------------------------------------
// Formula

struct Formula::Node {
  FormulaKind kind{};
  std::vector<Term> terms;
  PredId pred{};
  std::vector<Formula> children;
  std::string variable;
  SortId sort{};
};

Formula Formula::truth(bool value) {
  auto node = std::make_shared<Node>();
  node->kind = value ? FormulaKind::True : FormulaKind::False;
  return Formula(std::move(node));
}

Formula Formula::equal(Term lhs, Term rhs) {
  auto node = std::make_shared<Node>();
  node->kind = FormulaKind::Equal;
  node->terms = {std::move(lhs), std::move(rhs)};
  return Formula(std::move(node));
}

Formula Formula::predicate(PredId pred, std::vector<Term> args) {
  auto node = std::make_shared<Node>();
  node->kind = FormulaKind::Predicate;
  node->pred = pred;
  node->terms = std::move(args);
  return Formula(std::move(node));
}

Formula Formula::negation(Formula operand) {
  auto node = std::make_shared<Node>();
  node->kind = FormulaKind::Not;
  node->children = {std::move(operand)};
  return Formula(std::move(node));
}

Formula Formula::conjunction(Formula lhs, Formula rhs) {
  auto node = std::make_shared<Node>();
  node->kind = FormulaKind::And;
  node->children = {std::move(lhs), std::move(rhs)};
  return Formula(std::move(node));
}

Formula Formula::disjunction(Formula lhs, Formula rhs) {
  auto node = std::make_shared<Node>();
  node->kind = FormulaKind::Or;
  node->children = {std::move(lhs), std::move(rhs)};
  return Formula(std::move(node));
}

Formula Formula::implication(Formula lhs, Formula rhs) {
  auto node = std::make_shared<Node>();
  node->kind = FormulaKind::Implies;
  node->children = {std::move(lhs), std::move(rhs)};
  return Formula(std::move(node));
}

Formula Formula::equivalence(Formula lhs, Formula rhs) {
  auto node = std::make_shared<Node>();
  node->kind = FormulaKind::Iff;
  node->children = {std::move(lhs), std::move(rhs)};
  return Formula(std::move(node));
}

Formula Formula::forall(std::string variable, SortId sort, Formula body) {
  auto node = std::make_shared<Node>();
  node->kind = FormulaKind::Forall;
  node->variable = std::move(variable);
  node->sort = sort;
  node->children = {std::move(body)};
  return Formula(std::move(node));
}

Formula Formula::exists(std::string variable, SortId sort, Formula body) {
  auto node = std::make_shared<Node>();
  node->kind = FormulaKind::Exists;
  node->variable = std::move(variable);
  node->sort = sort;
  node->children = {std::move(body)};
  return Formula(std::move(node));
}

Formula Formula::conjunction_of(std::vector<Formula> operands) {
  if (operands.empty()) throw std::invalid_argument("empty conjunction");
  Formula acc = operands.back();
  for (auto it = operands.rbegin() + 1; it != operands.rend(); ++it)
    acc = conjunction(*it, std::move(acc));
  return acc;
}

Formula Formula::disjunction_of(std::vector<Formula> operands) {
  if (operands.empty()) throw std::invalid_argument("empty disjunction");
  Formula acc = operands.back();
  for (auto it = operands.rbegin() + 1; it != operands.rend(); ++it)
    acc = disjunction(*it, std::move(acc));
  return acc;
}

FormulaKind Formula::kind() const { return node_->kind; }
const std::vector<Term>& Formula::terms() const { return node_->terms; }
PredId Formula::pred() const { return node_->pred; }
const std::vector<Formula>& Formula::children() const { return node_->children; }
const std::string& Formula::variable() const { return node_->variable; }
SortId Formula::variable_sort() const { return node_->sort; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case FormulaKind::True:
    case FormulaKind::False:
      return true;
    case FormulaKind::Equal:
      return x.terms == y.terms;
    case FormulaKind::Predicate:
      return x.pred == y.pred && x.terms == y.terms;
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      return x.variable == y.variable && x.sort == y.sort && x.children == y.children;
    default:
      return x.children == y.children;
  }
}

// ---------------------------------------------------------------------------
// Problem-level operations

namespace {

void collect_term_values(const Term& term, OccurringValues& out) {
  switch (term.kind()) {
    case TermKind::Element:
      out.at(to_index(term.annotated_sort())).insert(term.value().index);
      break;
    case TermKind::Apply:
      for (const auto& arg : term.args()) collect_term_values(arg, out);
      break;
    case TermKind::Variable:
      break;
  }
}

void collect_formula_values(const Formula& formula, OccurringValues& out) {
  for (const auto& t : formula.terms()) collect_term_values(t, out);
  for (const auto& c : formula.children()) collect_formula_values(c, out);
}

class WellSortedChecker {
 public:
  WellSortedChecker(const Problem& problem, std::vector<SortError>& errors)
      : problem_(problem), sig_(problem.signature), errors_(errors) {}

  void check(const Formula& formula) {
    scope_.clear();
    check_formula(formula);
  }

 private:
  void error(std::string subterm, std::string message) {
    errors_.push_back(SortError{std::move(subterm), std::move(message)});
  }

  bool valid_sort(SortId s) const { return to_index(s) < sig_.sort_count(); }

  std::string sort_name(SortId s) const {
    return valid_sort(s) ? sig_.sort_name(s) : "<sort #" + std::to_string(to_index(s)) + ">";
  }

  // Returns the sort of the term if it could be determined.
  std::optional<SortId> check_term(const Term& term) {
    switch (term.kind()) {
      case TermKind::Variable: {
        auto it = std::find_if(scope_.rbegin(), scope_.rend(),
                               [&](const auto& b) { return b.first == term.name(); });
        if (it == scope_.rend()) {
          error(term.name(), "free variable " + term.name());
          return std::nullopt;
        }
        if (it->second != term.annotated_sort()) {
          error(term.name(), "variable " + term.name() + " used at sort " +
                                 sort_name(term.annotated_sort()) + " but bound at sort " +
                                 sort_name(it->second));
        }
        return it->second;
      }
      case TermKind::Element: {
        Value v = term.value();
        if (!valid_sort(v.sort)) {
          error("<element>", "element of undeclared sort");
          return std::nullopt;
        }
        if (v.index >= problem_.domain_size(v.sort)) {
          error(sig_.sort_name(v.sort) + "!" + std::to_string(v.index + 1),
                "index out of range for sort " + sig_.sort_name(v.sort) + " of size " +
                    std::to_string(problem_.domain_size(v.sort)));
        }
        return v.sort;
      }
      case TermKind::Apply: {
        if (to_index(term.func()) >= sig_.func_count()) {
          error("<apply>", "undeclared function symbol");
          return std::nullopt;
        }
        const FuncDecl& decl = sig_.func(term.func());
        std::string text = format_term(sig_, term);
        if (term.args().size() != decl.arity()) {
          error(text, "arity mismatch: " + decl.name + " expects " +
                          std::to_string(decl.arity()) + " arguments, got " +
                          std::to_string(term.args().size()));
        }
        check_args(text, decl.name, decl.args, term.args());
        return decl.result;
      }
    }
    return std::nullopt;
  }

  void check_args(const std::string& text, const std::string& symbol,
                  const std::vector<SortId>& expected, const std::vector<Term>& args) {
    for (std::size_t i = 0; i < args.size(); ++i) {
      auto actual = check_term(args[i]);
      if (i < expected.size() && actual && *actual != expected[i]) {
        error(text, "argument " + std::to_string(i + 1) + " of " + symbol + " has sort " +
                        sort_name(*actual) + ", expected " + sort_name(expected[i]));
      }
    }
  }

  void check_formula(const Formula& formula) {
    switch (formula.kind()) {
      case FormulaKind::True:
      case FormulaKind::False:
        return;
      case FormulaKind::Equal: {
        auto l = check_term(formula.terms()[0]);
        auto r = check_term(formula.terms()[1]);
        if (l && r && *l != *r) {
          error(format_formula(sig_, formula),
                "equality between sorts " + sort_name(*l) + " and " + sort_name(*r));
        }
        return;
      }
      case FormulaKind::Predicate: {
        if (to_index(formula.pred()) >= sig_.pred_count()) {
          error("<predicate>", "undeclared predicate symbol");
          return;
        }
        const PredDecl& decl = sig_.pred(formula.pred());
        std::string text = format_formula(sig_, formula);
        if (formula.terms().size() != decl.arity()) {
          error(text, "arity mismatch: " + decl.name + " expects " +
                          std::to_string(decl.arity()) + " arguments, got " +
                          std::to_string(formula.terms().size()));
        }
        check_args(text, decl.name, decl.args, formula.terms());
        return;
      }
      case FormulaKind::Forall:
      case FormulaKind::Exists:
        if (!valid_sort(formula.variable_sort())) {
          error(formula.variable(), "quantifier over undeclared sort");
        }
        scope_.emplace_back(formula.variable(), formula.variable_sort());
        check_formula(formula.body());
        scope_.pop_back();
        return;
      default:
        for (const auto& c : formula.children()) check_formula(c);
        return;
    }
  }

  const Problem& problem_;
  const Signature& sig_;
  std::vector<SortError>& errors_;
  std::vector<std::pair<std::string, SortId>> scope_;
};

Term substitute_term(const Term& term, std::string_view variable, const Term& value) {
  switch (term.kind()) {
    case TermKind::Variable:
      return term.name() == variable ? value : term;
    case TermKind::Element:
      return term;
    case TermKind::Apply: {
      std::vector<Term> args;
      args.reserve(term.args().size());
      for (const auto& a : term.args()) args.push_back(substitute_term(a, variable, value));
      return Term::apply(term.func(), std::move(args));
    }
  }
  return term;
}

Formula rebuild(const Formula& f, std::vector<Term> terms, std::vector<Formula> children) {
  switch (f.kind()) {
    case FormulaKind::True:
    case FormulaKind::False:
      return f;
    case FormulaKind::Equal:
      return Formula::equal(std::move(terms[0]), std::move(terms[1]));
    case FormulaKind::Predicate:
      return Formula::predicate(f.pred(), std::move(terms));
    case FormulaKind::Not:
      return Formula::negation(std::move(children[0]));
    case FormulaKind::And:
      return Formula::conjunction(std::move(children[0]), std::move(children[1]));
    case FormulaKind::Or:
      return Formula::disjunction(std::move(children[0]), std::move(children[1]));
    case FormulaKind::Implies:
      return Formula::implication(std::move(children[0]), std::move(children[1]));
    case FormulaKind::Iff:
      return Formula::equivalence(std::move(children[0]), std::move(children[1]));
    case FormulaKind::Forall:
      return Formula::forall(f.variable(), f.variable_sort(), std::move(children[0]));
    case FormulaKind::Exists:
      return Formula::exists(f.variable(), f.variable_sort(), std::move(children[0]));
  }
  return f;
}

class Grounder {
 public:
  Grounder(const Problem& problem, std::size_t max_nodes)
      : problem_(problem), max_nodes_(max_nodes) {}

  Formula run(const Formula& formula) {
    if (formula.is_quantifier()) {
      std::uint32_t n = problem_.domain_size(formula.variable_sort());
      std::vector<Formula> instances;
      instances.reserve(n);
      for (std::uint32_t k = 0; k < n; ++k) {
        Term element = Term::element(Value{formula.variable_sort(), k});
        instances.push_back(run(substitute(formula.body(), formula.variable(), element)));
      }
      // The n instances are joined by n - 1 binary connectives.
      charge(n - 1);
      return formula.kind() == FormulaKind::Forall
                 ? Formula::conjunction_of(std::move(instances))
                 : Formula::disjunction_of(std::move(instances));
    }
    charge(1);
    if (formula.children().empty()) return formula;
    std::vector<Formula> children;
    for (const auto& c : formula.children()) children.push_back(run(c));
    return rebuild(formula, formula.terms(), std::move(children));
  }

 private:
  void charge(std::size_t nodes) {
    produced_ += nodes;
    if (produced_ > max_nodes_)
      throw std::length_error("grounded output exceeds " + std::to_string(max_nodes_) + " nodes");
  }

  const Problem& problem_;
  std::size_t max_nodes_;
  std::size_t produced_ = 0;
};

}  // namespace

bool Problem::is_pure() const {
  auto occurring = collect_occurring_values(*this);
  return std::all_of(occurring.begin(), occurring.end(),
                     [](const auto& values) { return values.empty(); });
}

std::vector<SortError> check_well_sorted(const Problem& problem) {
  std::vector<SortError> errors;
  if (problem.domains.sizes.size() != problem.signature.sort_count()) {
    errors.push_back({"<domains>", "domain assignment does not cover every sort"});
    return errors;
  }
  for (std::size_t s = 0; s < problem.domains.sizes.size(); ++s) {
    if (problem.domains.sizes[s] == 0)
      errors.push_back({problem.signature.sorts()[s], "empty domain"});
  }
  WellSortedChecker checker(problem, errors);
  for (const auto& f : problem.formulas) checker.check(f);
  return errors;
}

bool evaluate(const Problem& problem, const Formula& formula, const Interpretation& interp,
              const Environment& env) {
  std::vector<std::pair<std::string, SortId>> free;
  std::vector<std::uint32_t> values;
  for (const auto& [name, value] : env) {
    free.emplace_back(name, value.sort);
    values.push_back(value.index);
  }
  InterpretationShape(problem.signature, problem.domains).require_fit(interp);
  Evaluator evaluator(problem, formula, free);
  return evaluator.holds(0, interp, values);
}

bool satisfies(const Problem& problem, const Interpretation& interp) {
  InterpretationShape(problem.signature, problem.domains).require_fit(interp);
  return Evaluator(problem).holds_all(interp);
}

OccurringValues collect_occurring_values(const Problem& problem) {
  return collect_occurring_values(problem.signature, problem.formulas);
}

OccurringValues collect_occurring_values(const Signature& signature,
                                         std::span<const Formula> formulas) {
  OccurringValues out(signature.sort_count());
  for (const auto& f : formulas) collect_formula_values(f, out);
  return out;
}

Formula substitute(const Formula& formula, std::string_view variable, const Term& value) {
  if (formula.is_quantifier() && formula.variable() == variable) return formula;  // shadowed
  std::vector<Term> terms;
  terms.reserve(formula.terms().size());
  for (const auto& t : formula.terms()) terms.push_back(substitute_term(t, variable, value));
  std::vector<Formula> children;
  children.reserve(formula.children().size());
  for (const auto& c : formula.children()) children.push_back(substitute(c, variable, value));
  return rebuild(formula, std::move(terms), std::move(children));
}

Problem ground(const Problem& problem, std::size_t max_nodes) {
  Problem out = problem;
  Grounder grounder(problem, max_nodes);
  for (auto& f : out.formulas) f = grounder.run(f);
  return out;
}

std::size_t formula_size(const Formula& formula) {
  std::size_t n = 1;
  for (const auto& c : formula.children()) n += formula_size(c);
  return n;
}

}  // namespace msfmf
