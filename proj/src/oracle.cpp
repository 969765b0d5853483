#include "msfmf/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

#include "msfmf/errors.hpp"

namespace msfmf {

// ---------------------------------------------------------------------------
// DomainPermutation

DomainPermutation::DomainPermutation(std::vector<std::vector<std::uint32_t>> images)
    : images_(std::move(images)) {
  for (const auto& perm : images_) {
    std::vector<bool> seen(perm.size(), false);
    for (auto v : perm) {
      if (v >= perm.size() || seen[v]) throw std::invalid_argument("not a permutation");
      seen[v] = true;
    }
  }
}

DomainPermutation DomainPermutation::identity(const DomainAssignment& domains) {
  std::vector<std::vector<std::uint32_t>> images;
  for (auto n : domains.sizes) {
    images.emplace_back(n);
    std::iota(images.back().begin(), images.back().end(), 0u);
  }
  return DomainPermutation(std::move(images));
}

DomainPermutation DomainPermutation::on_sort(const DomainAssignment& domains, SortId sort,
                                             std::vector<std::uint32_t> images) {
  DomainPermutation sigma = identity(domains);
  if (images.size() != domains.size(sort)) throw std::invalid_argument("permutation size");
  sigma.images_[to_index(sort)] = std::move(images);
  return DomainPermutation(std::move(sigma.images_));
}

bool DomainPermutation::fits(const DomainAssignment& domains) const {
  if (images_.size() != domains.sizes.size()) return false;
  for (std::size_t s = 0; s < images_.size(); ++s)
    if (images_[s].size() != domains.sizes[s]) return false;
  return true;
}

bool DomainPermutation::is_identity() const {
  for (const auto& perm : images_)
    for (std::uint32_t i = 0; i < perm.size(); ++i)
      if (perm[i] != i) return false;
  return true;
}

DomainPermutation DomainPermutation::inverse() const {
  DomainPermutation out = *this;
  for (std::size_t s = 0; s < images_.size(); ++s)
    for (std::uint32_t i = 0; i < images_[s].size(); ++i) out.images_[s][images_[s][i]] = i;
  return out;
}

DomainPermutation DomainPermutation::compose(const DomainPermutation& outer,
                                             const DomainPermutation& inner) {
  if (outer.images_.size() != inner.images_.size())
    throw std::invalid_argument("composing permutations of different shapes");
  DomainPermutation out = inner;
  for (std::size_t s = 0; s < inner.images_.size(); ++s) {
    if (outer.images_[s].size() != inner.images_[s].size())
      throw std::invalid_argument("composing permutations of different shapes");
    for (std::size_t i = 0; i < inner.images_[s].size(); ++i)
      out.images_[s][i] = outer.images_[s][inner.images_[s][i]];
  }
  return out;
}

std::string format_permutation(const Signature& signature, const DomainPermutation& sigma) {
  std::string out;
  for (std::size_t s = 0; s < sigma.images().size(); ++s) {
    const auto& perm = sigma.images()[s];
    std::vector<bool> done(perm.size(), false);
    std::string cycles;
    for (std::uint32_t start = 0; start < perm.size(); ++start) {
      if (done[start] || perm[start] == start) continue;
      cycles += "(";
      std::uint32_t i = start;
      do {
        done[i] = true;
        if (cycles.back() != '(') cycles += ' ';
        cycles += std::to_string(i + 1);
        i = perm[i];
      } while (i != start);
      cycles += ")";
    }
    if (cycles.empty()) continue;
    if (!out.empty()) out += ' ';
    out += signature.sorts().at(s) + ":" + cycles;
  }
  return out.empty() ? "id" : out;
}

std::vector<DomainPermutation> all_domain_permutations(const DomainAssignment& domains,
                                                       std::uint64_t cap) {
  boost::multiprecision::cpp_int count = 1;
  for (auto n : domains.sizes)
    for (std::uint32_t k = 2; k <= n; ++k) count *= k;
  if (count > cap) throw CapExceeded(count.str(), std::to_string(cap));

  std::vector<std::vector<std::vector<std::uint32_t>>> per_sort;
  for (auto n : domains.sizes) {
    std::vector<std::uint32_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0u);
    auto& all = per_sort.emplace_back();
    do {
      all.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  std::vector<DomainPermutation> out;
  std::vector<std::size_t> choice(per_sort.size(), 0);
  for (;;) {
    std::vector<std::vector<std::uint32_t>> images;
    for (std::size_t s = 0; s < per_sort.size(); ++s) images.push_back(per_sort[s][choice[s]]);
    out.emplace_back(std::move(images));
    std::size_t s = per_sort.size();
    while (s > 0) {
      --s;
      if (++choice[s] < per_sort[s].size()) break;
      choice[s] = 0;
      if (s == 0) return out;
    }
    if (per_sort.empty()) return out;
  }
}

std::vector<DomainPermutation> domain_permutation_generators(const DomainAssignment& domains) {
  std::vector<DomainPermutation> out;
  for (std::size_t s = 0; s < domains.sizes.size(); ++s) {
    std::uint32_t n = domains.sizes[s];
    if (n < 2) continue;
    std::vector<std::uint32_t> swap(n);
    std::iota(swap.begin(), swap.end(), 0u);
    std::swap(swap[0], swap[1]);
    out.push_back(DomainPermutation::on_sort(domains, static_cast<SortId>(s), swap));
    if (n >= 3) {
      std::vector<std::uint32_t> cycle(n);
      for (std::uint32_t i = 0; i < n; ++i) cycle[i] = (i + 1) % n;
      out.push_back(DomainPermutation::on_sort(domains, static_cast<SortId>(s), cycle));
    }
  }
  return out;
}

std::vector<DomainPermutation> permutations_solely_on(const DomainAssignment& domains, SortId sort,
                                                      std::span<const std::uint32_t> values) {
  std::vector<std::uint32_t> xs(values.begin(), values.end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  for (auto v : xs)
    if (v >= domains.size(sort)) throw std::invalid_argument("value outside the sort's domain");
  std::vector<DomainPermutation> out;
  std::vector<std::uint32_t> order = xs;
  do {
    std::vector<std::uint32_t> images(domains.size(sort));
    std::iota(images.begin(), images.end(), 0u);
    for (std::size_t i = 0; i < xs.size(); ++i) images[xs[i]] = order[i];
    out.push_back(DomainPermutation::on_sort(domains, sort, std::move(images)));
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

// ---------------------------------------------------------------------------
// InterpretationSpace

InterpretationSpace::InterpretationSpace(const Signature& signature,
                                         const DomainAssignment& domains)
    : shape_(signature, domains) {
  boost::multiprecision::cpp_int total = 1;
  for (std::size_t f = 0; f < shape_.funcs().size(); ++f) {
    const auto& sym = shape_.funcs()[f];
    for (std::uint64_t c = 0; c < sym.cells; ++c) {
      cells_.push_back(Cell{false, static_cast<std::uint32_t>(f), c, sym.range});
      total *= sym.range;
    }
  }
  for (std::size_t p = 0; p < shape_.preds().size(); ++p) {
    const auto& sym = shape_.preds()[p];
    for (std::uint64_t c = 0; c < sym.cells; ++c) {
      cells_.push_back(Cell{true, static_cast<std::uint32_t>(p), c, 2});
      total *= 2;
    }
  }
  exact_size_ = total.str();
  if (total <= std::numeric_limits<std::uint64_t>::max())
    size_ = static_cast<std::uint64_t>(total);
}

std::uint64_t InterpretationSpace::require_within(std::uint64_t cap) const {
  if (!size_ || *size_ > cap) throw CapExceeded(exact_size_, std::to_string(cap));
  return *size_;
}

Interpretation InterpretationSpace::at(std::uint64_t index) const {
  if (!size_ || index >= *size_) throw std::out_of_range("interpretation rank out of range");
  Interpretation interp = shape_.blank();
  for (std::size_t i = cells_.size(); i-- > 0;) {
    const Cell& cell = cells_[i];
    auto digit = static_cast<std::uint32_t>(index % cell.radix);
    index /= cell.radix;
    if (cell.predicate)
      interp.predicates[cell.symbol][cell.cell] = static_cast<std::uint8_t>(digit);
    else
      interp.functions[cell.symbol][cell.cell] = digit;
  }
  return interp;
}

std::uint64_t InterpretationSpace::index_of(const Interpretation& interp) const {
  shape_.require_fit(interp);
  if (!size_) throw std::out_of_range("interpretation space exceeds 64-bit ranks");
  std::uint64_t index = 0;
  for (const Cell& cell : cells_) {
    std::uint32_t digit = cell.predicate ? interp.predicates[cell.symbol][cell.cell]
                                         : interp.functions[cell.symbol][cell.cell];
    index = index * cell.radix + digit;
  }
  return index;
}

void InterpretationSpace::for_each(
    std::uint64_t cap, const std::function<bool(std::uint64_t, const Interpretation&)>& fn) const {
  std::uint64_t total = require_within(cap);
  Interpretation interp = shape_.blank();
  // Raw digit slots so the odometer does not branch on cell kind.
  std::vector<std::uint32_t*> func_slots(cells_.size(), nullptr);
  std::vector<std::uint8_t*> pred_slots(cells_.size(), nullptr);
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    const Cell& cell = cells_[i];
    if (cell.predicate)
      pred_slots[i] = &interp.predicates[cell.symbol][cell.cell];
    else
      func_slots[i] = &interp.functions[cell.symbol][cell.cell];
  }
  for (std::uint64_t index = 0; index < total; ++index) {
    if (!fn(index, interp)) return;
    for (std::size_t i = cells_.size(); i-- > 0;) {
      if (pred_slots[i]) {
        if (*pred_slots[i] == 0) {
          *pred_slots[i] = 1;
          break;
        }
        *pred_slots[i] = 0;
      } else {
        if (++*func_slots[i] < cells_[i].radix) break;
        *func_slots[i] = 0;
      }
    }
  }
}

std::vector<Interpretation> enumerate_interpretations(const Problem& problem, std::uint64_t cap) {
  std::vector<Interpretation> out;
  InterpretationSpace space(problem);
  space.for_each(cap, [&](std::uint64_t, const Interpretation& interp) {
    out.push_back(interp);
    return true;
  });
  return out;
}

SatResult is_satisfiable(const Problem& problem, std::uint64_t cap) {
  InterpretationSpace space(problem);
  Evaluator evaluator(problem);
  SatResult result;
  space.for_each(cap, [&](std::uint64_t, const Interpretation& interp) {
    ++result.examined;
    if (!evaluator.holds_all(interp)) return true;
    result.satisfiable = true;
    result.witness = interp;
    return false;
  });
  return result;
}

// ---------------------------------------------------------------------------
// Actions

Interpretation apply_to_interpretation(const DomainPermutation& sigma, const Problem& problem,
                                       const Interpretation& interp) {
  if (!sigma.fits(problem.domains)) throw ShapeError("permutation does not fit the domains");
  InterpretationShape shape(problem.signature, problem.domains);
  shape.require_fit(interp);
  const Signature& sig = problem.signature;
  Interpretation out = interp;
  std::vector<std::uint32_t> args;
  for (std::size_t f = 0; f < sig.func_count(); ++f) {
    const FuncDecl& decl = sig.funcs()[f];
    const auto& sym = shape.funcs()[f];
    for (std::uint64_t c = 0; c < sym.cells; ++c) {
      args = InterpretationShape::args_of(sym, c);
      for (std::size_t i = 0; i < args.size(); ++i) args[i] = sigma.apply(decl.args[i], args[i]);
      out.functions[f][InterpretationShape::cell_of(sym, args)] =
          sigma.apply(decl.result, interp.functions[f][c]);
    }
  }
  for (std::size_t p = 0; p < sig.pred_count(); ++p) {
    const PredDecl& decl = sig.preds()[p];
    const auto& sym = shape.preds()[p];
    for (std::uint64_t c = 0; c < sym.cells; ++c) {
      args = InterpretationShape::args_of(sym, c);
      for (std::size_t i = 0; i < args.size(); ++i) args[i] = sigma.apply(decl.args[i], args[i]);
      out.predicates[p][InterpretationShape::cell_of(sym, args)] = interp.predicates[p][c];
    }
  }
  return out;
}

namespace {

Term permute_term(const DomainPermutation& sigma, const Term& term) {
  switch (term.kind()) {
    case TermKind::Element:
      return Term::element(sigma.apply(term.value()));
    case TermKind::Apply: {
      std::vector<Term> args;
      for (const auto& a : term.args()) args.push_back(permute_term(sigma, a));
      return Term::apply(term.func(), std::move(args));
    }
    case TermKind::Variable:
      break;
  }
  return term;
}

}  // namespace

Formula apply_to_formula(const DomainPermutation& sigma, const Formula& f) {
  auto kid = [&](std::size_t i) { return apply_to_formula(sigma, f.child(i)); };
  switch (f.kind()) {
    case FormulaKind::True:
    case FormulaKind::False:
      return f;
    case FormulaKind::Equal:
      return Formula::equal(permute_term(sigma, f.terms()[0]), permute_term(sigma, f.terms()[1]));
    case FormulaKind::Predicate: {
      std::vector<Term> args;
      for (const auto& a : f.terms()) args.push_back(permute_term(sigma, a));
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
      return Formula::forall(f.variable(), f.variable_sort(), kid(0));
    case FormulaKind::Exists:
      return Formula::exists(f.variable(), f.variable_sort(), kid(0));
  }
  return f;
}

std::vector<Formula> apply_to_formulas(const DomainPermutation& sigma,
                                       std::span<const Formula> formulas) {
  std::vector<Formula> out;
  out.reserve(formulas.size());
  for (const auto& f : formulas) out.push_back(apply_to_formula(sigma, f));
  return out;
}

bool is_constraint_domain_symmetry(const DomainPermutation& sigma, const Problem& problem) {
  if (!sigma.fits(problem.domains)) throw ShapeError("permutation does not fit the domains");
  auto image = apply_to_formulas(sigma, problem.formulas);
  auto contains = [](const std::vector<Formula>& set, const Formula& f) {
    return std::find(set.begin(), set.end(), f) != set.end();
  };
  for (const auto& f : image)
    if (!contains(problem.formulas, f)) return false;
  for (const auto& f : problem.formulas)
    if (!contains(image, f)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Rank-level machinery shared by the exhaustive checks.

namespace {

/// Flat cell layout matching InterpretationSpace ranks, with the permutation
/// action precomputed as a position map plus a value map per position.
class RankAction {
 public:
  RankAction(const Problem& problem, const InterpretationShape& shape) : problem_(problem) {
    const Signature& sig = problem.signature;
    for (std::size_t f = 0; f < sig.func_count(); ++f) {
      func_offset_.push_back(radix_.size());
      for (std::uint64_t c = 0; c < shape.funcs()[f].cells; ++c) {
        radix_.push_back(shape.funcs()[f].range);
      }
    }
    for (std::size_t p = 0; p < sig.pred_count(); ++p) {
      pred_offset_.push_back(radix_.size());
      for (std::uint64_t c = 0; c < shape.preds()[p].cells; ++c) {
        radix_.push_back(2);
      }
    }
    shape_ = &shape;
  }

  struct Compiled {
    std::vector<std::uint32_t> target;
    std::vector<const std::vector<std::uint32_t>*> values;
  };

  Compiled compile(const DomainPermutation& sigma) const {
    const Signature& sig = problem_.signature;
    Compiled out;
    out.target.resize(radix_.size());
    out.values.resize(radix_.size(), nullptr);
    std::vector<std::uint32_t> args;
    auto place = [&](const std::vector<SortId>& arg_sorts, const InterpretationShape::Symbol& sym,
                     std::size_t offset) {
      for (std::uint64_t c = 0; c < sym.cells; ++c) {
        args = InterpretationShape::args_of(sym, c);
        for (std::size_t i = 0; i < args.size(); ++i) args[i] = sigma.apply(arg_sorts[i], args[i]);
        out.target[offset + c] =
            static_cast<std::uint32_t>(offset + InterpretationShape::cell_of(sym, args));
      }
    };
    for (std::size_t f = 0; f < sig.func_count(); ++f) {
      place(sig.funcs()[f].args, shape_->funcs()[f], func_offset_[f]);
      for (std::uint64_t c = 0; c < shape_->funcs()[f].cells; ++c)
        out.values[func_offset_[f] + c] = &sigma.on(sig.funcs()[f].result);
    }
    for (std::size_t p = 0; p < sig.pred_count(); ++p)
      place(sig.preds()[p].args, shape_->preds()[p], pred_offset_[p]);
    return out;
  }

  std::uint64_t apply(const Compiled& action, std::uint64_t rank, std::vector<std::uint32_t>& in,
                      std::vector<std::uint32_t>& out) const {
    std::size_t n = radix_.size();
    for (std::size_t i = n; i-- > 0;) {
      in[i] = static_cast<std::uint32_t>(rank % radix_[i]);
      rank /= radix_[i];
    }
    for (std::size_t i = 0; i < n; ++i)
      out[action.target[i]] = action.values[i] ? (*action.values[i])[in[i]] : in[i];
    std::uint64_t result = 0;
    for (std::size_t i = 0; i < n; ++i) result = result * radix_[i] + out[i];
    return result;
  }

  std::size_t positions() const { return radix_.size(); }

 private:
  const Problem& problem_;
  const InterpretationShape* shape_ = nullptr;
  std::vector<std::uint32_t> radix_;
  std::vector<std::size_t> func_offset_;
  std::vector<std::size_t> pred_offset_;
};

std::vector<std::uint8_t> truth_table(const InterpretationSpace& space, const Evaluator& evaluator,
                                      std::uint64_t cap) {
  std::vector<std::uint8_t> table(space.require_within(cap));
  space.for_each(cap, [&](std::uint64_t index, const Interpretation& interp) {
    table[index] = evaluator.holds_all(interp) ? 1 : 0;
    return true;
  });
  return table;
}

bool preserves(const RankAction& ranks, const RankAction::Compiled& action,
               const std::vector<std::uint8_t>& models) {
  std::vector<std::uint32_t> in(ranks.positions()), out(ranks.positions());
  for (std::uint64_t i = 0; i < models.size(); ++i)
    if (models[ranks.apply(action, i, in, out)] != models[i]) return false;
  return true;
}

/// Shared exhaustive context: the space, its model table and rank action.
struct Exhaustive {
  Exhaustive(const Problem& problem, std::uint64_t cap)
      : space(problem), evaluator(problem), ranks(problem, space.shape()) {
    models = truth_table(space, evaluator, cap);
  }

  bool symmetric(const DomainPermutation& sigma) const {
    return preserves(ranks, ranks.compile(sigma), models);
  }

  InterpretationSpace space;
  Evaluator evaluator;
  RankAction ranks;
  std::vector<std::uint8_t> models;
};

std::vector<DomainPermutation> symmetries_of(const Exhaustive& ex, const Problem& problem,
                                             std::uint64_t cap) {
  std::vector<DomainPermutation> out;
  for (auto& sigma : all_domain_permutations(problem.domains, cap))
    if (ex.symmetric(sigma)) out.push_back(std::move(sigma));
  return out;
}

/// A subset of `group` generating it.
std::vector<DomainPermutation> generating_subset(const std::vector<DomainPermutation>& group) {
  std::vector<DomainPermutation> gens;
  std::set<DomainPermutation> closure;
  for (const auto& g : group) {
    if (g.is_identity()) closure.insert(g);
  }
  for (const auto& g : group) {
    if (closure.contains(g)) continue;
    gens.push_back(g);
    // Rebuild the generated subgroup by breadth-first multiplication.
    std::vector<DomainPermutation> frontier(closure.begin(), closure.end());
    if (frontier.empty()) frontier.push_back(g);
    while (!frontier.empty()) {
      std::vector<DomainPermutation> next;
      for (const auto& x : frontier) {
        for (const auto& h : gens) {
          auto y = DomainPermutation::compose(h, x);
          if (closure.insert(y).second) next.push_back(std::move(y));
        }
      }
      frontier = std::move(next);
    }
  }
  return gens;
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::uint64_t find(std::uint64_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::uint64_t a, std::uint64_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;  // smallest rank becomes the root
  }

 private:
  std::vector<std::uint64_t> parent_;
};

UnionFind orbits_of(const Exhaustive& ex, const std::vector<DomainPermutation>& group) {
  UnionFind uf(ex.models.size());
  std::vector<std::uint32_t> in(ex.ranks.positions()), out(ex.ranks.positions());
  for (const auto& g : generating_subset(group)) {
    auto action = ex.ranks.compile(g);
    for (std::uint64_t i = 0; i < ex.models.size(); ++i)
      uf.unite(i, ex.ranks.apply(action, i, in, out));
  }
  return uf;
}

Orbit collect_orbit(UnionFind& uf, std::uint64_t root, const std::vector<std::uint8_t>& models) {
  Orbit orbit;
  orbit.satisfies = models[root] != 0;
  for (std::uint64_t i = root; i < models.size(); ++i)
    if (uf.find(i) == root) orbit.members.push_back(i);
  return orbit;
}

}  // namespace

bool is_domain_symmetry(const DomainPermutation& sigma, const Problem& problem,
                        std::uint64_t cap) {
  if (!sigma.fits(problem.domains)) throw ShapeError("permutation does not fit the domains");
  Exhaustive ex(problem, cap);
  return ex.symmetric(sigma);
}

std::vector<DomainPermutation> domain_symmetries(const Problem& problem, std::uint64_t cap) {
  all_domain_permutations(problem.domains, cap);  // cap check before the table is built
  Exhaustive ex(problem, cap);
  return symmetries_of(ex, problem, cap);
}

std::uint64_t domain_symmetry_group_size(const Problem& problem, std::uint64_t cap) {
  return domain_symmetries(problem, cap).size();
}

OrbitPartition orbit_partition(const Problem& problem, std::uint64_t cap) {
  all_domain_permutations(problem.domains, cap);
  Exhaustive ex(problem, cap);
  auto group = symmetries_of(ex, problem, cap);
  UnionFind uf = orbits_of(ex, group);
  OrbitPartition out;
  out.group_order = group.size();
  out.space = ex.models.size();
  std::map<std::uint64_t, std::size_t> slot;
  for (std::uint64_t i = 0; i < ex.models.size(); ++i) {
    std::uint64_t root = uf.find(i);
    auto [it, fresh] = slot.emplace(root, out.orbits.size());
    if (fresh) out.orbits.push_back(Orbit{{}, ex.models[root] != 0});
    out.orbits[it->second].members.push_back(i);
  }
  return out;
}

CompletenessResult check_symmetry_breaking_completeness(const Problem& problem,
                                                        std::span<const Formula> constraints,
                                                        std::uint64_t cap,
                                                        CompletenessMode mode) {
  all_domain_permutations(problem.domains, cap);
  Exhaustive ex(problem, cap);
  auto group = symmetries_of(ex, problem, cap);
  UnionFind uf = orbits_of(ex, group);

  Evaluator extra(problem, constraints);
  std::vector<std::uint8_t> covered(ex.models.size(), 0);
  std::vector<std::uint8_t> is_root(ex.models.size(), 0);
  ex.space.for_each(cap, [&](std::uint64_t i, const Interpretation& interp) {
    std::uint64_t root = uf.find(i);
    is_root[root] = 1;
    if (covered[root]) return true;
    bool wanted = mode == CompletenessMode::AllOrbits || ex.models[i];
    if (wanted && extra.holds_all(interp)) covered[root] = 1;
    return true;
  });

  CompletenessResult result;
  std::optional<std::uint64_t> bad_model_orbit;
  std::optional<std::uint64_t> bad_orbit;
  for (std::uint64_t r = 0; r < ex.models.size(); ++r) {
    if (!is_root[r]) continue;
    ++result.orbits;
    bool model = ex.models[r] != 0;
    if (model) ++result.model_orbits;
    bool required = model || mode == CompletenessMode::AllOrbits;
    if (!required || covered[r]) continue;
    if (model && !bad_model_orbit) bad_model_orbit = r;
    if (!bad_orbit) bad_orbit = r;
  }
  auto bad = bad_model_orbit ? bad_model_orbit : bad_orbit;
  if (bad) {
    result.complete = false;
    result.counterexample = collect_orbit(uf, *bad, ex.models);
  }
  return result;
}

bool interchangeable_set_oracle(const Problem& problem, SortId sort,
                                std::span<const std::uint32_t> values, std::uint64_t cap) {
  auto perms = permutations_solely_on(problem.domains, sort, values);
  if (perms.size() > cap)
    throw CapExceeded(std::to_string(perms.size()), std::to_string(cap));
  Exhaustive ex(problem, cap);
  return std::all_of(perms.begin(), perms.end(),
                     [&](const DomainPermutation& sigma) { return ex.symmetric(sigma); });
}

}  // namespace msfmf
