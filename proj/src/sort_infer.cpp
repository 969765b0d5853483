#include "msfmf/sort_infer.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "msfmf/problem_io.hpp"

namespace msfmf {

bool SortSubstitution::is_identity() const {
  return std::all_of(mapping.begin(), mapping.end(),
                     [](const auto& kv) { return kv.first == kv.second; });
}

// ---------------------------------------------------------------------------
// Rewriting sorts through a per-sort map.

namespace {

Term remap_term(const Term& term, const std::vector<SortId>& map) {
  switch (term.kind()) {
    case TermKind::Variable:
      return Term::variable(term.name(), map[to_index(term.annotated_sort())]);
    case TermKind::Element:
      return Term::element(Value{map[to_index(term.value().sort)], term.value().index});
    case TermKind::Apply: {
      std::vector<Term> args;
      for (const auto& a : term.args()) args.push_back(remap_term(a, map));
      return Term::apply(term.func(), std::move(args));
    }
  }
  return term;
}

Formula remap_formula(const Formula& f, const std::vector<SortId>& map) {
  auto kid = [&](std::size_t i) { return remap_formula(f.child(i), map); };
  switch (f.kind()) {
    case FormulaKind::True:
    case FormulaKind::False:
      return f;
    case FormulaKind::Equal:
      return Formula::equal(remap_term(f.terms()[0], map), remap_term(f.terms()[1], map));
    case FormulaKind::Predicate: {
      std::vector<Term> args;
      for (const auto& a : f.terms()) args.push_back(remap_term(a, map));
      return Formula::predicate(f.pred(), std::move(args));
    }
    case FormulaKind::Not:
      return Formula::negation(kid(0));
    case FormulaKind::And:
      return Formula::conjunction(kid(0), kid(1));
    case FormulaKind::Or:
      return Formula::disjunction(kid(0), kid(1));
    case FormulaKind::Implies:
      return Formula::implication(kid(0), kid(1));
    case FormulaKind::Iff:
      return Formula::equivalence(kid(0), kid(1));
    case FormulaKind::Forall:
      return Formula::forall(f.variable(), map[to_index(f.variable_sort())], kid(0));
    case FormulaKind::Exists:
      return Formula::exists(f.variable(), map[to_index(f.variable_sort())], kid(0));
  }
  return f;
}

}  // namespace

Problem apply_substitution(const SortSubstitution& eta, const Problem& problem) {
  const Signature& sig = problem.signature;
  Problem out;
  std::vector<SortId> map(sig.sort_count());
  for (std::size_t s = 0; s < sig.sort_count(); ++s) {
    const std::string& target = eta(sig.sorts()[s]);
    std::uint32_t size = problem.domains.sizes[s];
    if (auto existing = out.signature.find_sort(target)) {
      if (out.domains.size(*existing) != size) {
        throw std::invalid_argument("sort size conflict: " + sig.sorts()[s] + " and the other " +
                                    "sorts mapped to " + target + " differ in size");
      }
      map[s] = *existing;
      continue;
    }
    map[s] = out.signature.add_sort(target);
    out.domains.sizes.push_back(size);
  }
  for (const auto& f : sig.funcs()) {
    std::vector<SortId> args;
    for (SortId a : f.args) args.push_back(map[to_index(a)]);
    out.signature.add_func(f.name, std::move(args), map[to_index(f.result)]);
  }
  for (const auto& p : sig.preds()) {
    std::vector<SortId> args;
    for (SortId a : p.args) args.push_back(map[to_index(a)]);
    out.signature.add_pred(p.name, std::move(args));
  }
  for (const auto& f : problem.formulas) out.formulas.push_back(remap_formula(f, map));
  auto errors = check_well_sorted(out);
  if (!errors.empty())
    throw std::invalid_argument("substitution yields an ill-sorted problem: " +
                                errors.front().subterm + ": " + errors.front().message);
  return out;
}

// ---------------------------------------------------------------------------
// Inference.

namespace {

class SlotUnifier {
 public:
  explicit SlotUnifier(const Problem& problem) {
    const Signature& sig = problem.signature;
    for (const auto& f : sig.funcs()) {
      auto& slots = func_slots_.emplace_back();
      for (SortId a : f.args) slots.push_back(fresh(a));
      slots.push_back(fresh(f.result));
    }
    for (const auto& p : sig.preds()) {
      auto& slots = pred_slots_.emplace_back();
      for (SortId a : p.args) slots.push_back(fresh(a));
    }
    for (const auto& f : problem.formulas) {
      scope_.clear();
      formula(f);
    }
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }

  std::size_t slot_count() const { return parent_.size(); }
  SortId original(std::size_t slot) const { return origin_[slot]; }
  std::size_t func_slot(std::size_t f, std::size_t i) const { return func_slots_[f][i]; }
  std::size_t pred_slot(std::size_t p, std::size_t i) const { return pred_slots_[p][i]; }
  /// Slots of quantifier bindings and element occurrences in traversal order.
  const std::vector<std::size_t>& occurrence_slots() const { return occurrences_; }

 private:
  std::size_t fresh(SortId original) {
    parent_.push_back(parent_.size());
    origin_.push_back(original);
    return parent_.size() - 1;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
  }

  std::size_t term(const Term& t) {
    switch (t.kind()) {
      case TermKind::Variable:
        for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
          if (it->first == t.name()) return it->second;
        throw std::invalid_argument("unbound variable " + t.name());
      case TermKind::Element: {
        std::size_t slot = fresh(t.value().sort);
        occurrences_.push_back(slot);
        return slot;
      }
      case TermKind::Apply: {
        const auto& slots = func_slots_[to_index(t.func())];
        for (std::size_t i = 0; i < t.args().size(); ++i) unite(term(t.args()[i]), slots[i]);
        return slots.back();
      }
    }
    return 0;
  }

  void formula(const Formula& f) {
    switch (f.kind()) {
      case FormulaKind::Equal: {
        std::size_t lhs = term(f.terms()[0]);
        std::size_t rhs = term(f.terms()[1]);
        unite(lhs, rhs);
        return;
      }
      case FormulaKind::Predicate: {
        const auto& slots = pred_slots_[to_index(f.pred())];
        for (std::size_t i = 0; i < f.terms().size(); ++i) unite(term(f.terms()[i]), slots[i]);
        return;
      }
      case FormulaKind::Forall:
      case FormulaKind::Exists: {
        std::size_t slot = fresh(f.variable_sort());
        occurrences_.push_back(slot);
        scope_.emplace_back(f.variable(), slot);
        formula(f.body());
        scope_.pop_back();
        return;
      }
      default:
        for (const auto& c : f.children()) formula(c);
        return;
    }
  }

  std::vector<std::size_t> parent_;
  std::vector<SortId> origin_;
  std::vector<std::vector<std::size_t>> func_slots_;
  std::vector<std::vector<std::size_t>> pred_slots_;
  std::vector<std::size_t> occurrences_;
  std::vector<std::pair<std::string, std::size_t>> scope_;
};

/// Rebuilds formulas, replaying the traversal order of SlotUnifier to pick up
/// the new sort of each binding and element occurrence.
class Resorter {
 public:
  explicit Resorter(const std::vector<SortId>& occurrence_sorts) : sorts_(occurrence_sorts) {}

  Formula formula(const Formula& f) {
    switch (f.kind()) {
      case FormulaKind::True:
      case FormulaKind::False:
        return f;
      case FormulaKind::Equal: {
        Term l = term(f.terms()[0]);
        Term r = term(f.terms()[1]);
        return Formula::equal(std::move(l), std::move(r));
      }
      case FormulaKind::Predicate: {
        std::vector<Term> args;
        for (const auto& a : f.terms()) args.push_back(term(a));
        return Formula::predicate(f.pred(), std::move(args));
      }
      case FormulaKind::Not:
        return Formula::negation(formula(f.child(0)));
      case FormulaKind::Forall:
      case FormulaKind::Exists: {
        SortId sort = sorts_.at(next_++);
        scope_.emplace_back(f.variable(), sort);
        Formula body = formula(f.body());
        scope_.pop_back();
        return f.kind() == FormulaKind::Forall ? Formula::forall(f.variable(), sort, std::move(body))
                                               : Formula::exists(f.variable(), sort, std::move(body));
      }
      default: {
        Formula l = formula(f.child(0));
        Formula r = formula(f.child(1));
        switch (f.kind()) {
          case FormulaKind::And:
            return Formula::conjunction(std::move(l), std::move(r));
          case FormulaKind::Or:
            return Formula::disjunction(std::move(l), std::move(r));
          case FormulaKind::Implies:
            return Formula::implication(std::move(l), std::move(r));
          default:
            return Formula::equivalence(std::move(l), std::move(r));
        }
      }
    }
  }

 private:
  Term term(const Term& t) {
    switch (t.kind()) {
      case TermKind::Variable:
        for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
          if (it->first == t.name()) return Term::variable(t.name(), it->second);
        throw std::invalid_argument("unbound variable " + t.name());
      case TermKind::Element:
        return Term::element(Value{sorts_.at(next_++), t.value().index});
      case TermKind::Apply: {
        std::vector<Term> args;
        for (const auto& a : t.args()) args.push_back(term(a));
        return Term::apply(t.func(), std::move(args));
      }
    }
    return t;
  }

  const std::vector<SortId>& sorts_;
  std::size_t next_ = 0;
  std::vector<std::pair<std::string, SortId>> scope_;
};

}  // namespace

GeneralizationWitness infer_sorts(const Problem& problem) {
  const Signature& sig = problem.signature;
  SlotUnifier unifier(problem);

  // Classes per original sort, in order of their smallest slot.
  std::vector<std::vector<std::size_t>> classes(sig.sort_count());
  for (std::size_t slot = 0; slot < unifier.slot_count(); ++slot) {
    std::size_t root = unifier.find(slot);
    auto& list = classes[to_index(unifier.original(root))];
    if (std::find(list.begin(), list.end(), root) == list.end()) list.push_back(root);
  }

  std::set<std::string> taken(sig.sorts().begin(), sig.sorts().end());
  GeneralizationWitness witness;
  Problem& out = witness.generalized;
  std::vector<SortId> class_sort(unifier.slot_count());
  for (std::size_t s = 0; s < sig.sort_count(); ++s) {
    const std::string& name = sig.sorts()[s];
    std::uint32_t size = problem.domains.sizes[s];
    if (classes[s].size() <= 1) {
      SortId id = out.signature.add_sort(name);
      out.domains.sizes.push_back(size);
      for (auto root : classes[s]) class_sort[root] = id;
      continue;
    }
    auto& split = witness.splits[name];
    std::size_t suffix = 0;
    for (auto root : classes[s]) {
      std::string fresh;
      do {
        fresh = name + "_" + std::to_string(++suffix);
      } while (taken.contains(fresh));
      taken.insert(fresh);
      split.push_back(fresh);
      class_sort[root] = out.signature.add_sort(fresh);
      out.domains.sizes.push_back(size);
      witness.eta.mapping.emplace(fresh, name);
    }
  }

  auto sort_of_slot = [&](std::size_t slot) { return class_sort[unifier.find(slot)]; };
  for (std::size_t f = 0; f < sig.func_count(); ++f) {
    const FuncDecl& decl = sig.funcs()[f];
    std::vector<SortId> args;
    for (std::size_t i = 0; i < decl.arity(); ++i) args.push_back(sort_of_slot(unifier.func_slot(f, i)));
    out.signature.add_func(decl.name, std::move(args), sort_of_slot(unifier.func_slot(f, decl.arity())));
  }
  for (std::size_t p = 0; p < sig.pred_count(); ++p) {
    const PredDecl& decl = sig.preds()[p];
    std::vector<SortId> args;
    for (std::size_t i = 0; i < decl.arity(); ++i) args.push_back(sort_of_slot(unifier.pred_slot(p, i)));
    out.signature.add_pred(decl.name, std::move(args));
  }

  std::vector<SortId> occurrence_sorts;
  for (auto slot : unifier.occurrence_slots()) occurrence_sorts.push_back(sort_of_slot(slot));
  Resorter resorter(occurrence_sorts);
  for (const auto& f : problem.formulas) out.formulas.push_back(resorter.formula(f));
  return witness;
}

WitnessCheck verify_witness(const Problem& original, const GeneralizationWitness& witness) {
  WitnessCheck check;
  auto report = [&](std::string message) {
    check.ok = false;
    check.diagnostics.push_back(std::move(message));
  };
  const Problem& general = witness.generalized;
  for (std::size_t s = 0; s < general.signature.sort_count(); ++s) {
    const std::string& name = general.signature.sorts()[s];
    const std::string& target = witness.eta(name);
    auto orig = original.signature.find_sort(target);
    if (!orig) {
      report("sort " + name + " maps to " + target + ", which the original does not declare");
      continue;
    }
    if (general.domains.sizes[s] != original.domain_size(*orig)) {
      report("sort " + name + " has size " + std::to_string(general.domains.sizes[s]) +
             " but " + target + " has size " + std::to_string(original.domain_size(*orig)));
    }
  }
  if (!check_well_sorted(general).empty()) report("generalized problem is not well-sorted");
  if (!check.ok) return check;

  Problem image;
  try {
    image = apply_substitution(witness.eta, general);
  } catch (const std::invalid_argument& e) {
    report(e.what());
    return check;
  }
  if (!(image.signature == original.signature)) report("eta applied to the signature differs");
  if (image.domains != original.domains) report("domain sizes differ after substitution");
  if (image.formulas.size() != original.formulas.size()) {
    report("formula counts differ");
  } else {
    for (std::size_t i = 0; i < image.formulas.size(); ++i) {
      if (!(image.formulas[i] == original.formulas[i]))
        report("formula " + std::to_string(i + 1) + " differs after substitution: " +
               format_formula(image.signature, image.formulas[i]));
    }
  }
  return check;
}

std::string format_substitution(const SortSubstitution& eta) {
  std::string out = "(subst";
  for (const auto& [from, to] : eta.mapping)
    if (from != to) out += " (" + from + " " + to + ")";
  return out + ")";
}

}  // namespace msfmf
