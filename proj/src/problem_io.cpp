#include "msfmf/problem_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>
#include <set>
#include <sstream>

#include "msfmf/errors.hpp"
#include "msfmf/evaluator.hpp"

namespace msfmf {

namespace {

// ---------------------------------------------------------------------------
// Reader: text -> S-expression tree with source positions.

enum class AtomKind : std::uint8_t { Ident, Int, DomLit, Operator };

struct SExpr {
  bool is_list = false;
  AtomKind atom{};
  std::string text;
  // DomLit parts.
  std::string sort;
  std::uint64_t number = 0;
  std::size_t line = 0;
  std::size_t column = 0;
  std::vector<SExpr> items;

  bool is_atom(AtomKind kind) const { return !is_list && atom == kind; }
  bool is_ident(std::string_view word) const { return is_atom(AtomKind::Ident) && text == word; }
};

[[noreturn]] void fail(const SExpr& at, const std::string& message) {
  throw ParseError(at.line, at.column, message);
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  std::vector<SExpr> read_all() {
    std::vector<SExpr> out;
    for (;;) {
      skip_space();
      if (pos_ >= text_.size()) return out;
      out.push_back(read());
    }
  }

 private:
  [[noreturn]] void error(const std::string& message) {
    throw ParseError(line_, column_, message);
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  SExpr read() {
    SExpr e;
    e.line = line_;
    e.column = column_;
    char c = text_[pos_];
    if (c == '(') {
      advance();
      e.is_list = true;
      for (;;) {
        skip_space();
        if (pos_ >= text_.size()) throw ParseError(e.line, e.column, "unbalanced '('");
        if (text_[pos_] == ')') {
          advance();
          return e;
        }
        e.items.push_back(read());
      }
    }
    if (c == ')') error("unexpected ')'");
    if (c == '=') {
      advance();
      if (pos_ < text_.size() && text_[pos_] == '>') {
        advance();
        e.text = "=>";
      } else {
        e.text = "=";
      }
      e.atom = AtomKind::Operator;
      return finish_atom(e);
    }
    if (c == '<') {
      if (text_.substr(pos_, 3) != "<=>") error("unexpected character '<'");
      for (int i = 0; i < 3; ++i) advance();
      e.atom = AtomKind::Operator;
      e.text = "<=>";
      return finish_atom(e);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance();
      e.atom = AtomKind::Int;
      e.text = std::string(text_.substr(start, pos_ - start));
      e.number = parse_number(e);
      return finish_atom(e);
    }
    if (ident_start(c)) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && ident_char(text_[pos_])) advance();
      e.atom = AtomKind::Ident;
      e.text = std::string(text_.substr(start, pos_ - start));
      if (pos_ < text_.size() && text_[pos_] == '!') {
        advance();
        std::size_t digits = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
          advance();
        if (digits == pos_) error("expected an index after '!'");
        e.atom = AtomKind::DomLit;
        e.sort = e.text;
        SExpr num = e;
        num.text = std::string(text_.substr(digits, pos_ - digits));
        e.number = parse_number(num);
        e.text = std::string(text_.substr(start, pos_ - start));
      }
      return finish_atom(e);
    }
    error(std::string("unexpected character '") + c + "'");
  }

  SExpr finish_atom(SExpr e) {
    if (pos_ < text_.size()) {
      char c = text_[pos_];
      if (!std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')' && c != ';')
        error(std::string("unexpected character '") + c + "'");
    }
    return e;
  }

  static std::uint64_t parse_number(const SExpr& e) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(e.text.data(), e.text.data() + e.text.size(), value);
    if (ec != std::errc() || value > UINT32_MAX) fail(e, "integer out of range: " + e.text);
    return value;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

// ---------------------------------------------------------------------------
// Problem builder.

const std::set<std::string, std::less<>> kReserved = {
    "sort", "const", "func", "pred", "assert", "not", "and", "or", "forall", "exists",
    "true", "false",
};

class ProblemBuilder {
 public:
  Problem build(const std::vector<SExpr>& document) {
    for (const auto& decl : document) declaration(decl);
    return std::move(problem_);
  }

 private:
  Signature& sig() { return problem_.signature; }

  const std::string& ident(const SExpr& e, const char* what) {
    if (!e.is_atom(AtomKind::Ident)) fail(e, std::string("expected ") + what);
    return e.text;
  }

  const std::string& fresh_name(const SExpr& e, const char* what) {
    const std::string& name = ident(e, what);
    if (kReserved.contains(name)) fail(e, "reserved word '" + name + "' cannot be declared");
    return name;
  }

  SortId sort_ref(const SExpr& e) {
    const std::string& name = ident(e, "a sort name");
    auto id = sig().find_sort(name);
    if (!id) fail(e, "undeclared sort " + name);
    return *id;
  }

  std::vector<SortId> sort_list(const SExpr& e) {
    if (!e.is_list || e.items.empty()) fail(e, "expected a non-empty list of sorts");
    std::vector<SortId> out;
    for (const auto& item : e.items) out.push_back(sort_ref(item));
    return out;
  }

  void declaration(const SExpr& decl) {
    if (!decl.is_list || decl.items.empty() || !decl.items[0].is_atom(AtomKind::Ident))
      fail(decl, "expected a declaration");
    const auto& items = decl.items;
    const std::string& keyword = items[0].text;
    if (keyword == "sort") {
      if (items.size() != 3) fail(decl, "expected (sort NAME SIZE)");
      const std::string& name = fresh_name(items[1], "a sort name");
      if (sig().find_sort(name)) fail(items[1], "duplicate declaration of sort " + name);
      if (!items[2].is_atom(AtomKind::Int)) fail(items[2], "expected a domain size");
      if (items[2].number == 0) fail(items[2], "domain size must be at least 1");
      sig().add_sort(name);
      problem_.domains.sizes.push_back(static_cast<std::uint32_t>(items[2].number));
    } else if (keyword == "const") {
      if (items.size() != 3) fail(decl, "expected (const NAME SORT)");
      const std::string& name = symbol_name(items[1]);
      sig().add_func(name, {}, sort_ref(items[2]));
    } else if (keyword == "func") {
      if (items.size() != 4) fail(decl, "expected (func NAME (SORT+) SORT)");
      const std::string& name = symbol_name(items[1]);
      auto args = sort_list(items[2]);
      sig().add_func(name, std::move(args), sort_ref(items[3]));
    } else if (keyword == "pred") {
      if (items.size() != 3) fail(decl, "expected (pred NAME (SORT+))");
      const std::string& name = symbol_name(items[1]);
      sig().add_pred(name, sort_list(items[2]));
    } else if (keyword == "assert") {
      if (items.size() != 2) fail(decl, "expected (assert FORMULA)");
      scope_.clear();
      problem_.formulas.push_back(formula(items[1]));
    } else {
      fail(items[0], "unknown declaration '" + keyword + "'");
    }
  }

  const std::string& symbol_name(const SExpr& e) {
    const std::string& name = fresh_name(e, "a symbol name");
    if (sig().has_symbol(name)) fail(e, "duplicate declaration of symbol " + name);
    return name;
  }

  std::string sort_name(SortId s) { return sig().sort_name(s); }

  Formula formula(const SExpr& e) {
    if (!e.is_list) {
      if (e.is_ident("true")) return Formula::truth(true);
      if (e.is_ident("false")) return Formula::truth(false);
      fail(e, "expected a formula");
    }
    if (e.items.empty()) fail(e, "expected a formula");
    const SExpr& head = e.items[0];
    const auto& items = e.items;
    auto arity = [&](std::size_t n) {
      if (items.size() != n + 1)
        fail(e, "'" + head.text + "' expects " + std::to_string(n) + " operands");
    };
    if (head.is_atom(AtomKind::Operator)) {
      if (head.text == "=") {
        arity(2);
        auto [lhs, ls] = term(items[1]);
        auto [rhs, rs] = term(items[2]);
        if (ls != rs)
          fail(e, "sort mismatch: equality between " + sort_name(ls) + " and " + sort_name(rs));
        return Formula::equal(std::move(lhs), std::move(rhs));
      }
      arity(2);
      Formula lhs = formula(items[1]);
      Formula rhs = formula(items[2]);
      return head.text == "=>" ? Formula::implication(std::move(lhs), std::move(rhs))
                               : Formula::equivalence(std::move(lhs), std::move(rhs));
    }
    if (!head.is_atom(AtomKind::Ident)) fail(head, "expected a connective or predicate");
    const std::string& word = head.text;
    if (word == "not") {
      arity(1);
      return Formula::negation(formula(items[1]));
    }
    if (word == "and" || word == "or") {
      if (items.size() < 2) fail(e, "'" + word + "' needs at least one operand");
      std::vector<Formula> operands;
      for (std::size_t i = 1; i < items.size(); ++i) operands.push_back(formula(items[i]));
      return word == "and" ? Formula::conjunction_of(std::move(operands))
                           : Formula::disjunction_of(std::move(operands));
    }
    if (word == "forall" || word == "exists") {
      arity(2);
      const SExpr& binders = items[1];
      if (!binders.is_list || binders.items.empty()) fail(binders, "expected binders");
      std::vector<std::pair<std::string, SortId>> bound;
      for (const auto& b : binders.items) {
        if (!b.is_list || b.items.size() != 2) fail(b, "expected a binder (NAME SORT)");
        const std::string& name = fresh_name(b.items[0], "a variable name");
        bound.emplace_back(name, sort_ref(b.items[1]));
      }
      for (const auto& v : bound) scope_.push_back(v);
      Formula body = formula(items[2]);
      scope_.resize(scope_.size() - bound.size());
      for (auto it = bound.rbegin(); it != bound.rend(); ++it) {
        body = word == "forall" ? Formula::forall(it->first, it->second, std::move(body))
                                : Formula::exists(it->first, it->second, std::move(body));
      }
      return body;
    }
    if (word == "true" || word == "false") fail(head, "'" + word + "' takes no operands");
    auto pred = sig().find_pred(word);
    if (!pred) {
      if (sig().find_func(word)) fail(head, word + " is a function, not a predicate");
      fail(head, "undeclared predicate " + word);
    }
    const PredDecl& decl = sig().pred(*pred);
    auto args = arguments(e, decl.name, decl.args);
    return Formula::predicate(*pred, std::move(args));
  }

  std::vector<Term> arguments(const SExpr& e, const std::string& name,
                              const std::vector<SortId>& expected) {
    const auto& items = e.items;
    if (items.size() - 1 != expected.size()) {
      fail(e, "arity mismatch: " + name + " expects " + std::to_string(expected.size()) +
                  " arguments, got " + std::to_string(items.size() - 1));
    }
    std::vector<Term> args;
    for (std::size_t i = 1; i < items.size(); ++i) {
      auto [t, s] = term(items[i]);
      if (s != expected[i - 1]) {
        fail(items[i], "sort mismatch: argument " + std::to_string(i) + " of " + name +
                           " has sort " + sort_name(s) + ", expected " +
                           sort_name(expected[i - 1]));
      }
      args.push_back(std::move(t));
    }
    return args;
  }

  std::pair<Term, SortId> term(const SExpr& e) {
    if (e.is_atom(AtomKind::DomLit)) {
      Value v = domain_literal(e);
      return {Term::element(v), v.sort};
    }
    if (e.is_atom(AtomKind::Ident)) {
      for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
        if (it->first == e.text) return {Term::variable(e.text, it->second), it->second};
      auto f = sig().find_func(e.text);
      if (!f) {
        if (sig().find_pred(e.text)) fail(e, e.text + " is a predicate, not a term");
        fail(e, "undeclared symbol " + e.text);
      }
      const FuncDecl& decl = sig().func(*f);
      if (!decl.is_constant()) {
        fail(e, "arity mismatch: " + decl.name + " expects " + std::to_string(decl.arity()) +
                    " arguments, got 0");
      }
      return {Term::apply(*f), decl.result};
    }
    if (!e.is_list || e.items.empty()) fail(e, "expected a term");
    const SExpr& head = e.items[0];
    if (!head.is_atom(AtomKind::Ident)) fail(head, "expected a function symbol");
    auto f = sig().find_func(head.text);
    if (!f) fail(head, "undeclared function " + head.text);
    const FuncDecl& decl = sig().func(*f);
    if (decl.is_constant()) fail(e, "arity mismatch: constant " + decl.name + " takes no arguments");
    auto args = arguments(e, decl.name, decl.args);
    return {Term::apply(*f, std::move(args)), decl.result};
  }

  Value domain_literal(const SExpr& e) {
    auto s = sig().find_sort(e.sort);
    if (!s) fail(e, "undeclared sort " + e.sort + " in literal " + e.text);
    std::uint32_t size = problem_.domains.size(*s);
    if (e.number < 1 || e.number > size)
      fail(e, "index out of range: " + e.text + " (sort " + e.sort + " has size " +
                  std::to_string(size) + ")");
    return Value{*s, static_cast<std::uint32_t>(e.number - 1)};
  }

  Problem problem_;
  std::vector<std::pair<std::string, SortId>> scope_;
};

Value literal_against(const Signature& sig, const DomainAssignment& domains, const SExpr& e) {
  if (!e.is_atom(AtomKind::DomLit)) fail(e, "expected a domain literal Sort!k");
  auto s = sig.find_sort(e.sort);
  if (!s) fail(e, "undeclared sort " + e.sort);
  std::uint32_t size = domains.size(*s);
  if (e.number < 1 || e.number > size) fail(e, "index out of range: " + e.text);
  return Value{*s, static_cast<std::uint32_t>(e.number - 1)};
}

// ---------------------------------------------------------------------------
// Printer.

void print_term(std::ostream& out, const Signature& sig, const Term& term) {
  switch (term.kind()) {
    case TermKind::Variable:
      out << term.name();
      return;
    case TermKind::Element:
      out << format_value(sig, term.value());
      return;
    case TermKind::Apply:
      if (term.args().empty()) {
        out << sig.func(term.func()).name;
        return;
      }
      out << '(' << sig.func(term.func()).name;
      for (const auto& a : term.args()) {
        out << ' ';
        print_term(out, sig, a);
      }
      out << ')';
      return;
  }
}

void print_formula(std::ostream& out, const Signature& sig, const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::True:
      out << "true";
      return;
    case FormulaKind::False:
      out << "false";
      return;
    case FormulaKind::Equal:
      out << "(= ";
      print_term(out, sig, f.terms()[0]);
      out << ' ';
      print_term(out, sig, f.terms()[1]);
      out << ')';
      return;
    case FormulaKind::Predicate:
      out << '(' << sig.pred(f.pred()).name;
      for (const auto& a : f.terms()) {
        out << ' ';
        print_term(out, sig, a);
      }
      out << ')';
      return;
    case FormulaKind::Not:
      out << "(not ";
      print_formula(out, sig, f.child(0));
      out << ')';
      return;
    case FormulaKind::And:
    case FormulaKind::Or: {
      out << (f.kind() == FormulaKind::And ? "(and" : "(or");
      const Formula* cur = &f;
      while (cur->kind() == f.kind()) {
        out << ' ';
        print_formula(out, sig, cur->child(0));
        cur = &cur->child(1);
      }
      out << ' ';
      print_formula(out, sig, *cur);
      out << ')';
      return;
    }
    case FormulaKind::Implies:
    case FormulaKind::Iff:
      out << (f.kind() == FormulaKind::Implies ? "(=> " : "(<=> ");
      print_formula(out, sig, f.child(0));
      out << ' ';
      print_formula(out, sig, f.child(1));
      out << ')';
      return;
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      out << (f.kind() == FormulaKind::Forall ? "(forall (" : "(exists (");
      const Formula* cur = &f;
      bool first = true;
      while (cur->kind() == f.kind()) {
        if (!first) out << ' ';
        first = false;
        out << '(' << cur->variable() << ' ' << sig.sort_name(cur->variable_sort()) << ')';
        cur = &cur->body();
      }
      out << ") ";
      print_formula(out, sig, *cur);
      out << ')';
      return;
    }
  }
}

}  // namespace

Problem parse_problem(std::string_view text) {
  auto document = Reader(text).read_all();
  return ProblemBuilder().build(document);
}

std::string print_problem(const Problem& problem) {
  const Signature& sig = problem.signature;
  std::ostringstream out;
  for (std::size_t s = 0; s < sig.sort_count(); ++s)
    out << "(sort " << sig.sorts()[s] << ' ' << problem.domains.sizes[s] << ")\n";
  for (const auto& f : sig.funcs()) {
    if (f.is_constant()) {
      out << "(const " << f.name << ' ' << sig.sort_name(f.result) << ")\n";
      continue;
    }
    out << "(func " << f.name << " (";
    for (std::size_t i = 0; i < f.args.size(); ++i)
      out << (i ? " " : "") << sig.sort_name(f.args[i]);
    out << ") " << sig.sort_name(f.result) << ")\n";
  }
  for (const auto& p : sig.preds()) {
    out << "(pred " << p.name << " (";
    for (std::size_t i = 0; i < p.args.size(); ++i)
      out << (i ? " " : "") << sig.sort_name(p.args[i]);
    out << "))\n";
  }
  for (const auto& f : problem.formulas) {
    out << "(assert ";
    print_formula(out, sig, f);
    out << ")\n";
  }
  return out.str();
}

Interpretation parse_interpretation(const Problem& problem, std::string_view text) {
  const Signature& sig = problem.signature;
  InterpretationShape shape(sig, problem.domains);
  Interpretation interp;
  std::vector<std::vector<bool>> seen_func;
  std::vector<std::vector<bool>> seen_pred;
  for (const auto& f : shape.funcs()) {
    interp.functions.emplace_back(f.cells, 0);
    seen_func.emplace_back(f.cells, false);
  }
  for (const auto& p : shape.preds()) {
    interp.predicates.emplace_back(p.cells, 0);
    seen_pred.emplace_back(p.cells, false);
  }

  auto read_args = [&](const SExpr& e, const std::vector<SortId>& sorts, std::size_t first,
                       const std::string& name) {
    std::vector<std::uint32_t> args;
    for (std::size_t i = 0; i < sorts.size(); ++i) {
      const SExpr& item = e.items[first + i];
      Value v = literal_against(sig, problem.domains, item);
      if (v.sort != sorts[i]) {
        fail(item, "value of wrong sort: argument " + std::to_string(i + 1) + " of " + name +
                       " must be of sort " + sig.sort_name(sorts[i]));
      }
      args.push_back(v.index);
    }
    return args;
  };

  for (const auto& e : Reader(text).read_all()) {
    if (!e.is_list || e.items.empty() || !e.items[0].is_atom(AtomKind::Ident))
      fail(e, "expected (value ...) or (holds ...)");
    const std::string& keyword = e.items[0].text;
    if (e.items.size() < 2) fail(e, "missing symbol name");
    const SExpr& name = e.items[1];
    if (!name.is_atom(AtomKind::Ident)) fail(name, "expected a symbol name");
    if (keyword == "value") {
      auto f = sig.find_func(name.text);
      if (!f) fail(name, "undeclared function " + name.text);
      const FuncDecl& decl = sig.func(*f);
      if (e.items.size() != decl.arity() + 3) {
        fail(e, "arity mismatch: " + decl.name + " expects " + std::to_string(decl.arity()) +
                    " arguments and a result");
      }
      auto args = read_args(e, decl.args, 2, decl.name);
      const SExpr& result_expr = e.items.back();
      Value result = literal_against(sig, problem.domains, result_expr);
      if (result.sort != decl.result)
        fail(result_expr, "value of wrong sort: result of " + decl.name + " must be of sort " +
                              sig.sort_name(decl.result));
      auto cell = InterpretationShape::cell_of(shape.func(*f), args);
      if (seen_func[to_index(*f)][cell]) fail(e, "duplicate cell for " + decl.name);
      seen_func[to_index(*f)][cell] = true;
      interp.functions[to_index(*f)][cell] = result.index;
    } else if (keyword == "holds") {
      auto p = sig.find_pred(name.text);
      if (!p) fail(name, "undeclared predicate " + name.text);
      const PredDecl& decl = sig.pred(*p);
      if (e.items.size() != decl.arity() + 2) {
        fail(e, "arity mismatch: " + decl.name + " expects " + std::to_string(decl.arity()) +
                    " arguments");
      }
      auto args = read_args(e, decl.args, 2, decl.name);
      auto cell = InterpretationShape::cell_of(shape.pred(*p), args);
      if (seen_pred[to_index(*p)][cell]) fail(e, "duplicate tuple for " + decl.name);
      seen_pred[to_index(*p)][cell] = true;
      interp.predicates[to_index(*p)][cell] = 1;
    } else {
      fail(e.items[0], "unknown entry '" + keyword + "'");
    }
  }

  for (std::size_t f = 0; f < seen_func.size(); ++f) {
    auto it = std::find(seen_func[f].begin(), seen_func[f].end(), false);
    if (it == seen_func[f].end()) continue;
    const FuncDecl& decl = sig.funcs()[f];
    auto args = InterpretationShape::args_of(shape.funcs()[f], it - seen_func[f].begin());
    std::string cell = decl.name;
    for (std::size_t i = 0; i < args.size(); ++i)
      cell += " " + format_value(sig, Value{decl.args[i], args[i]});
    // Position the diagnostic at the end of the document.
    std::size_t line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
    throw ParseError(line, 1, "missing cell (" + cell + ")");
  }
  return interp;
}

std::string print_interpretation(const Problem& problem, const Interpretation& interp) {
  const Signature& sig = problem.signature;
  InterpretationShape shape(sig, problem.domains);
  shape.require_fit(interp);
  std::ostringstream out;
  for (std::size_t f = 0; f < sig.func_count(); ++f) {
    const FuncDecl& decl = sig.funcs()[f];
    for (std::uint64_t cell = 0; cell < shape.funcs()[f].cells; ++cell) {
      out << "(value " << decl.name;
      auto args = InterpretationShape::args_of(shape.funcs()[f], cell);
      for (std::size_t i = 0; i < args.size(); ++i)
        out << ' ' << format_value(sig, Value{decl.args[i], args[i]});
      out << ' ' << format_value(sig, Value{decl.result, interp.functions[f][cell]}) << ")\n";
    }
  }
  for (std::size_t p = 0; p < sig.pred_count(); ++p) {
    const PredDecl& decl = sig.preds()[p];
    for (std::uint64_t cell = 0; cell < shape.preds()[p].cells; ++cell) {
      if (!interp.predicates[p][cell]) continue;
      out << "(holds " << decl.name;
      auto args = InterpretationShape::args_of(shape.preds()[p], cell);
      for (std::size_t i = 0; i < args.size(); ++i)
        out << ' ' << format_value(sig, Value{decl.args[i], args[i]});
      out << ")\n";
    }
  }
  return out.str();
}

std::string format_value(const Signature& signature, Value value) {
  return signature.sort_name(value.sort) + "!" + std::to_string(value.index + 1);
}

std::string format_term(const Signature& signature, const Term& term) {
  std::ostringstream out;
  print_term(out, signature, term);
  return out.str();
}

std::string format_formula(const Signature& signature, const Formula& formula) {
  std::ostringstream out;
  print_formula(out, signature, formula);
  return out.str();
}

Value parse_value(const Problem& problem, std::string_view literal) {
  auto exprs = Reader(literal).read_all();
  if (exprs.size() != 1) throw ParseError(1, 1, "expected a single domain literal");
  return literal_against(problem.signature, problem.domains, exprs[0]);
}

}  // namespace msfmf
