#include "msfmf/symbreak.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "msfmf/evaluator.hpp"
#include "msfmf/problem_io.hpp"

namespace msfmf {

std::string_view scheme_name(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::Constants:
      return "constants";
    case SchemeKind::UnaryRange:
      return "unary-range";
    case SchemeKind::DrdRange:
      return "drd-range";
    case SchemeKind::UnaryPredicate:
      return "unary-pred";
    case SchemeKind::BinaryPredicate:
      return "binary-pred";
  }
  return "?";
}

std::optional<SchemeKind> parse_scheme_kind(std::string_view name) {
  for (auto kind : {SchemeKind::Constants, SchemeKind::UnaryRange, SchemeKind::DrdRange,
                    SchemeKind::UnaryPredicate, SchemeKind::BinaryPredicate})
    if (scheme_name(kind) == name) return kind;
  return std::nullopt;
}

void InterchangeabilityLedger::remove(const OccurringValues& occurring) {
  for (std::size_t s = 0; s < values.size() && s < occurring.size(); ++s) {
    auto& list = values[s];
    list.erase(std::remove_if(list.begin(), list.end(),
                              [&](std::uint32_t v) { return occurring[s].contains(v); }),
               list.end());
  }
}

std::string format_ledger(const Signature& signature, const InterchangeabilityLedger& ledger) {
  std::string out;
  for (std::size_t s = 0; s < ledger.values.size(); ++s) {
    if (s) out += "; ";
    out += signature.sorts()[s] + ": [";
    for (std::size_t i = 0; i < ledger.values[s].size(); ++i) {
      if (i) out += ' ';
      out += format_value(signature, Value{static_cast<SortId>(s), ledger.values[s][i]});
    }
    out += "]";
  }
  return out;
}

InterchangeabilityLedger initial_ledger(const Problem& problem) {
  InterchangeabilityLedger ledger;
  for (auto n : problem.domains.sizes) {
    auto& list = ledger.values.emplace_back(n);
    for (std::uint32_t i = 0; i < n; ++i) list[i] = i;
  }
  ledger.remove(collect_occurring_values(problem));
  return ledger;
}

namespace {

Formula equals_value(const Term& term, SortId sort, std::uint32_t value) {
  return Formula::equal(term, Term::element(Value{sort, value}));
}

/// Values of `sort` outside the ledger, ascending.
std::vector<std::uint32_t> outside(const Problem& problem, SortId sort,
                                   const InterchangeabilityLedger& ledger) {
  std::vector<std::uint32_t> out;
  const auto& in = ledger.of(sort);
  for (std::uint32_t v = 0; v < problem.domain_size(sort); ++v)
    if (std::find(in.begin(), in.end(), v) == in.end()) out.push_back(v);
  return out;
}

/// (term = x_1 ∨ … ∨ term = x_k) ∨ (term = y for every y outside the ledger),
/// as one flat disjunction.
Formula ranged(const Term& term, SortId sort, const std::vector<std::uint32_t>& ledger_prefix,
               const std::vector<std::uint32_t>& rest) {
  std::vector<Formula> disjuncts;
  for (auto v : ledger_prefix) disjuncts.push_back(equals_value(term, sort, v));
  for (auto v : rest) disjuncts.push_back(equals_value(term, sort, v));
  return Formula::disjunction_of(std::move(disjuncts));
}

SchemeApplication start(SchemeKind kind, std::vector<std::string> targets,
                        const InterchangeabilityLedger& ledger) {
  SchemeApplication app;
  app.kind = kind;
  app.targets = std::move(targets);
  app.before = ledger;
  return app;
}

SchemeApplication finish(SchemeApplication app, const Problem& problem) {
  app.after = app.before;
  app.after.remove(collect_occurring_values(problem.signature, app.formulas));
  return app;
}

std::vector<Term> tuple_terms(const std::vector<SortId>& sorts,
                              const std::vector<std::uint32_t>& values) {
  std::vector<Term> out;
  for (std::size_t i = 0; i < sorts.size(); ++i)
    out.push_back(Term::element(Value{sorts[i], values[i]}));
  return out;
}

}  // namespace

SchemeApplication constants_scheme(const Problem& problem, SortId sort,
                                   const std::vector<FuncId>& constants,
                                   const InterchangeabilityLedger& ledger) {
  const Signature& sig = problem.signature;
  if (constants.empty()) throw SchemeError("constants scheme needs at least one constant", ledger);
  std::vector<std::string> names;
  for (FuncId c : constants) {
    const FuncDecl& decl = sig.func(c);
    if (!decl.is_constant()) throw SchemeError(decl.name + " is not a constant", ledger);
    if (decl.result != sort)
      throw SchemeError("sort mismatch: " + decl.name + " is not of sort " + sig.sort_name(sort),
                        ledger);
    names.push_back(decl.name);
  }
  const auto& xs = ledger.of(sort);
  if (xs.empty())
    throw SchemeError("no interchangeable values left for sort " + sig.sort_name(sort), ledger);

  SchemeApplication app = start(SchemeKind::Constants, names, ledger);
  auto rest = outside(problem, sort, ledger);
  std::size_t r = std::min(xs.size(), constants.size());
  std::vector<Term> c;
  for (FuncId id : constants) c.push_back(Term::apply(id));
  for (std::size_t k = 1; k <= r; ++k) {
    std::vector<std::uint32_t> prefix(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(k));
    app.formulas.push_back(ranged(c[k - 1], sort, prefix, rest));
  }
  if (rest.empty()) {
    for (std::size_t k = 2; k <= r; ++k) {
      for (std::size_t d = 2; d <= k; ++d) {
        std::vector<Formula> earlier;
        for (std::size_t i = 1; i < k; ++i) earlier.push_back(equals_value(c[i - 1], sort, xs[d - 2]));
        app.formulas.push_back(Formula::implication(equals_value(c[k - 1], sort, xs[d - 1]),
                                                    Formula::disjunction_of(std::move(earlier))));
      }
    }
  }
  if (constants.size() > xs.size()) {
    app.warnings.push_back("only " + std::to_string(xs.size()) + " of " +
                           std::to_string(constants.size()) + " constants constrained");
  }
  return finish(std::move(app), problem);
}

SchemeApplication unary_range_scheme(const Problem& problem, FuncId f,
                                     const InterchangeabilityLedger& ledger) {
  const Signature& sig = problem.signature;
  const FuncDecl& decl = sig.func(f);
  if (decl.arity() != 1 || decl.args[0] != decl.result)
    throw SchemeError(decl.name + " is not a unary function A -> A", ledger);
  SortId a = decl.result;
  if (!ledger.is_full(a, problem.domains)) {
    throw SchemeError("scheme inapplicable: no extended soundness theorem, ledger of " +
                          sig.sort_name(a) + " no longer covers its domain",
                      ledger);
  }
  SchemeApplication app = start(SchemeKind::UnaryRange, {decl.name}, ledger);
  const auto& xs = ledger.of(a);
  std::uint32_t m = problem.domain_size(a);
  for (std::uint32_t i = 1; i < m; ++i) {
    Term image = Term::apply(f, {Term::element(Value{a, xs[i - 1]})});
    std::vector<std::uint32_t> prefix(xs.begin(), xs.begin() + i + 1);
    app.formulas.push_back(ranged(image, a, prefix, {}));
  }
  return finish(std::move(app), problem);
}

SchemeApplication drd_range_scheme(const Problem& problem, FuncId f,
                                   const InterchangeabilityLedger& ledger) {
  const Signature& sig = problem.signature;
  const FuncDecl& decl = sig.func(f);
  if (decl.is_constant()) throw SchemeError(decl.name + " is a constant, not a DRD function", ledger);
  if (std::find(decl.args.begin(), decl.args.end(), decl.result) != decl.args.end())
    throw SchemeError(decl.name + " is not DRD: its result sort is also an argument sort", ledger);
  SortId b = decl.result;
  const auto& xs = ledger.of(b);
  if (xs.empty())
    throw SchemeError("no interchangeable values left for sort " + sig.sort_name(b), ledger);

  SchemeApplication app = start(SchemeKind::DrdRange, {decl.name}, ledger);
  InterpretationShape shape(sig, problem.domains);
  const auto& symbol = shape.func(f);
  auto rest = outside(problem, b, ledger);
  std::uint64_t r = std::min<std::uint64_t>(symbol.cells, xs.size());
  for (std::uint64_t i = 1; i <= r; ++i) {
    Term image = Term::apply(f, tuple_terms(decl.args, InterpretationShape::args_of(symbol, i - 1)));
    std::vector<std::uint32_t> prefix(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(i));
    app.formulas.push_back(ranged(image, b, prefix, rest));
  }
  return finish(std::move(app), problem);
}

SchemeApplication unary_predicate_scheme(const Problem& problem, PredId q,
                                         const InterchangeabilityLedger& ledger) {
  const Signature& sig = problem.signature;
  const PredDecl& decl = sig.pred(q);
  if (decl.arity() != 1) throw SchemeError(decl.name + " is not a unary predicate", ledger);
  SortId a = decl.args[0];
  SchemeApplication app = start(SchemeKind::UnaryPredicate, {decl.name}, ledger);
  const auto& xs = ledger.of(a);
  if (xs.size() < 2) {
    app.warnings.push_back("fewer than 2 interchangeable values of " + sig.sort_name(a) +
                           "; nothing emitted");
  }
  auto holds = [&](std::uint32_t v) {
    return Formula::predicate(q, {Term::element(Value{a, v})});
  };
  for (std::size_t i = 1; i < xs.size(); ++i)
    app.formulas.push_back(Formula::implication(holds(xs[i]), holds(xs[i - 1])));
  return finish(std::move(app), problem);
}

SchemeApplication binary_predicate_scheme(const Problem& problem, PredId q, std::uint32_t pivot,
                                          const InterchangeabilityLedger& ledger) {
  const Signature& sig = problem.signature;
  const PredDecl& decl = sig.pred(q);
  if (decl.arity() != 2) throw SchemeError(decl.name + " is not a binary predicate", ledger);
  SortId a = decl.args[0];
  SortId b = decl.args[1];
  if (a == b) {
    throw SchemeError(decl.name + " has both arguments of sort " + sig.sort_name(a) +
                          "; the pivot scheme needs distinct sorts",
                      ledger);
  }
  if (pivot >= problem.domain_size(a))
    throw SchemeError("pivot outside the domain of " + sig.sort_name(a), ledger);
  if (auto it = ledger.pivots.find(to_index(q)); it != ledger.pivots.end()) {
    throw SchemeError(decl.name + " already broken at pivot " +
                          format_value(sig, Value{a, it->second}) +
                          "; a second pivot is unsound",
                      ledger);
  }
  if (!ledger.is_full(b, problem.domains)) {
    throw SchemeError("scheme inapplicable: no extended soundness theorem, ledger of " +
                          sig.sort_name(b) + " no longer covers its domain",
                      ledger);
  }
  SchemeApplication app = start(SchemeKind::BinaryPredicate, {decl.name}, ledger);
  auto holds = [&](std::uint32_t v) {
    return Formula::predicate(q, {Term::element(Value{a, pivot}), Term::element(Value{b, v})});
  };
  const auto& xs = ledger.of(b);
  for (std::size_t j = 1; j < xs.size(); ++j)
    app.formulas.push_back(Formula::implication(holds(xs[j]), holds(xs[j - 1])));
  app = finish(std::move(app), problem);
  app.after.pivots.emplace(to_index(q), pivot);
  return app;
}

// ---------------------------------------------------------------------------
// Plans.

namespace {

struct PlanToken {
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::vector<std::vector<PlanToken>> plan_forms(std::string_view text) {
  std::vector<std::vector<PlanToken>> forms;
  std::size_t line = 1, column = 1, pos = 0;
  auto advance = [&] {
    if (text[pos] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
    ++pos;
  };
  std::vector<PlanToken>* current = nullptr;
  while (pos < text.size()) {
    char c = text[pos];
    if (c == ';') {
      while (pos < text.size() && text[pos] != '\n') advance();
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
    } else if (c == '(') {
      if (current) throw ParseError(line, column, "nested list in plan");
      current = &forms.emplace_back();
      advance();
    } else if (c == ')') {
      if (!current) throw ParseError(line, column, "unexpected ')'");
      if (current->empty()) throw ParseError(line, column, "empty plan entry");
      current = nullptr;
      advance();
    } else {
      if (!current) throw ParseError(line, column, "plan entries must be parenthesized");
      PlanToken token{{}, line, column};
      while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
             text[pos] != '(' && text[pos] != ')' && text[pos] != ';') {
        token.text += text[pos];
        advance();
      }
      current->push_back(std::move(token));
    }
  }
  if (current) throw ParseError(line, column, "unbalanced '(' in plan");
  return forms;
}

}  // namespace

std::vector<SchemeRequest> parse_plan(std::string_view text) {
  std::vector<SchemeRequest> plan;
  for (const auto& form : plan_forms(text)) {
    const PlanToken& head = form.front();
    auto kind = parse_scheme_kind(head.text);
    if (!kind) throw ParseError(head.line, head.column, "unknown scheme '" + head.text + "'");
    SchemeRequest request;
    request.kind = *kind;
    std::vector<const PlanToken*> args;
    for (std::size_t i = 1; i < form.size(); ++i) {
      if (form[i].text == ":full")
        request.full_domain = true;
      else
        args.push_back(&form[i]);
    }
    auto need = [&](std::size_t n) {
      if (args.size() != n) {
        throw ParseError(head.line, head.column,
                         head.text + " expects " + std::to_string(n) + " argument(s)");
      }
    };
    switch (*kind) {
      case SchemeKind::Constants:
        if (args.size() < 2)
          throw ParseError(head.line, head.column, "constants expects a sort and constants");
        request.sort = args[0]->text;
        for (std::size_t i = 1; i < args.size(); ++i) request.symbols.push_back(args[i]->text);
        break;
      case SchemeKind::BinaryPredicate:
        if (args.size() != 1 && args.size() != 2)
          throw ParseError(head.line, head.column, "binary-pred expects a predicate and a pivot");
        request.symbols.push_back(args[0]->text);
        if (args.size() == 2) request.pivot = args[1]->text;
        break;
      default:
        need(1);
        request.symbols.push_back(args[0]->text);
        break;
    }
    plan.push_back(std::move(request));
  }
  return plan;
}

std::string format_request(const SchemeRequest& request) {
  std::string out = "(" + std::string(scheme_name(request.kind));
  if (request.kind == SchemeKind::Constants && !request.sort.empty()) out += " " + request.sort;
  for (const auto& s : request.symbols) out += " " + s;
  if (!request.pivot.empty()) out += " " + request.pivot;
  if (request.full_domain) out += " :full";
  return out + ")";
}

namespace {

FuncId need_func(const Signature& sig, const std::string& name,
                 const InterchangeabilityLedger& ledger) {
  auto f = sig.find_func(name);
  if (!f) throw SchemeError("unknown function " + name, ledger);
  return *f;
}

PredId need_pred(const Signature& sig, const std::string& name,
                 const InterchangeabilityLedger& ledger) {
  auto p = sig.find_pred(name);
  if (!p) throw SchemeError("unknown predicate " + name, ledger);
  return *p;
}

SchemeApplication run_request(const Problem& problem, const SchemeRequest& request,
                              const InterchangeabilityLedger& ledger) {
  const Signature& sig = problem.signature;
  auto require_full = [&](SortId sort) {
    if (request.full_domain && !ledger.is_full(sort, problem.domains)) {
      throw SchemeError("scheme inapplicable: ledger of " + sig.sort_name(sort) + " is " +
                            format_ledger(sig, ledger) + ", not the full domain",
                        ledger);
    }
  };
  if (request.symbols.empty()) throw SchemeError("scheme request without symbols", ledger);
  switch (request.kind) {
    case SchemeKind::Constants: {
      std::vector<FuncId> constants;
      for (const auto& name : request.symbols) constants.push_back(need_func(sig, name, ledger));
      SortId sort = sig.func(constants.front()).result;
      if (!request.sort.empty()) {
        auto s = sig.find_sort(request.sort);
        if (!s) throw SchemeError("unknown sort " + request.sort, ledger);
        sort = *s;
      }
      require_full(sort);
      return constants_scheme(problem, sort, constants, ledger);
    }
    case SchemeKind::UnaryRange: {
      FuncId f = need_func(sig, request.symbols.front(), ledger);
      require_full(sig.func(f).result);
      return unary_range_scheme(problem, f, ledger);
    }
    case SchemeKind::DrdRange: {
      FuncId f = need_func(sig, request.symbols.front(), ledger);
      require_full(sig.func(f).result);
      return drd_range_scheme(problem, f, ledger);
    }
    case SchemeKind::UnaryPredicate: {
      PredId q = need_pred(sig, request.symbols.front(), ledger);
      if (sig.pred(q).arity() == 1) require_full(sig.pred(q).args[0]);
      return unary_predicate_scheme(problem, q, ledger);
    }
    case SchemeKind::BinaryPredicate: {
      PredId q = need_pred(sig, request.symbols.front(), ledger);
      const PredDecl& decl = sig.pred(q);
      std::uint32_t pivot = 0;
      if (!request.pivot.empty()) {
        Value v;
        try {
          v = parse_value(problem, request.pivot);
        } catch (const ParseError& e) {
          throw SchemeError("bad pivot " + request.pivot + ": " + e.detail(), ledger);
        }
        if (decl.arity() != 2 || v.sort != decl.args[0])
          throw SchemeError("pivot " + request.pivot + " is not of " + decl.name +
                                "'s first argument sort",
                            ledger);
        pivot = v.index;
      }
      if (decl.arity() == 2) require_full(decl.args[1]);
      return binary_predicate_scheme(problem, q, pivot, ledger);
    }
  }
  throw SchemeError("unknown scheme", ledger);
}

}  // namespace

CombineResult combine(const Problem& problem, const std::vector<SchemeRequest>& plan) {
  CombineResult result;
  result.problem = problem;
  result.ledger = initial_ledger(problem);
  for (const auto& request : plan) {
    SchemeApplication app = run_request(result.problem, request, result.ledger);
    for (const auto& f : app.formulas) result.problem.formulas.push_back(f);
    result.ledger = app.after;
    result.trail.push_back(std::move(app));
  }
  return result;
}

std::vector<SchemeRequest> default_plan(const Problem& problem) {
  const Signature& sig = problem.signature;
  std::vector<SchemeRequest> plan;
  Problem current = problem;
  InterchangeabilityLedger ledger = initial_ledger(problem);
  auto take = [&](SchemeRequest request) {
    SchemeApplication app = run_request(current, request, ledger);
    for (const auto& f : app.formulas) current.formulas.push_back(f);
    ledger = app.after;
    plan.push_back(std::move(request));
  };

  for (std::size_t s = 0; s < sig.sort_count(); ++s) {
    SortId sort = static_cast<SortId>(s);
    SchemeRequest request{SchemeKind::Constants, sig.sorts()[s], {}, {}, false};
    for (const auto& f : sig.funcs())
      if (f.is_constant() && f.result == sort) request.symbols.push_back(f.name);
    if (!request.symbols.empty() && !ledger.of(sort).empty()) take(std::move(request));
  }

  InterpretationShape shape(sig, problem.domains);
  std::vector<std::size_t> drd;
  for (std::size_t f = 0; f < sig.func_count(); ++f) {
    const FuncDecl& decl = sig.funcs()[f];
    if (decl.is_constant()) continue;
    if (std::find(decl.args.begin(), decl.args.end(), decl.result) == decl.args.end())
      drd.push_back(f);
  }
  std::stable_sort(drd.begin(), drd.end(), [&](std::size_t x, std::size_t y) {
    return shape.funcs()[x].cells > shape.funcs()[y].cells;
  });
  for (auto f : drd) {
    if (ledger.of(sig.funcs()[f].result).empty()) continue;
    take(SchemeRequest{SchemeKind::DrdRange, {}, {sig.funcs()[f].name}, {}, false});
  }

  for (const auto& p : sig.preds()) {
    if (p.arity() != 1 || ledger.of(p.args[0]).size() < 2) continue;
    take(SchemeRequest{SchemeKind::UnaryPredicate, {}, {p.name}, {}, false});
  }
  for (const auto& p : sig.preds()) {
    if (p.arity() != 2 || p.args[0] == p.args[1]) continue;
    if (!ledger.is_full(p.args[1], problem.domains) || problem.domain_size(p.args[1]) < 2) continue;
    take(SchemeRequest{SchemeKind::BinaryPredicate, {}, {p.name},
                       format_value(sig, Value{p.args[0], 0}), false});
  }
  for (const auto& f : sig.funcs()) {
    if (f.arity() != 1 || f.args[0] != f.result) continue;
    if (problem.domain_size(f.result) < 2 || !ledger.is_full(f.result, problem.domains)) continue;
    take(SchemeRequest{SchemeKind::UnaryRange, {}, {f.name}, {}, false});
  }
  return plan;
}

std::string audit_line(const Signature& signature, const SchemeApplication& application) {
  std::string out = "; scheme " + std::string(scheme_name(application.kind));
  for (const auto& t : application.targets) out += " " + t;
  out += " consumed";
  bool any = false;
  for (std::size_t s = 0; s < application.before.values.size(); ++s) {
    for (auto v : application.before.values[s]) {
      const auto& after = application.after.values[s];
      if (std::find(after.begin(), after.end(), v) != after.end()) continue;
      out += " " + format_value(signature, Value{static_cast<SortId>(s), v});
      any = true;
    }
  }
  if (!any) out += " none";
  return out;
}

}  // namespace msfmf
