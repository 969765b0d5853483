#include "msfmf/csp.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

#include "msfmf/errors.hpp"
#include "msfmf/evaluator.hpp"
#include "msfmf/problem_io.hpp"

namespace msfmf {

using boost::multiprecision::cpp_int;

CspConstraint::CspConstraint(std::string name, std::vector<std::size_t> scope,
                             std::set<std::vector<std::uint32_t>> allowed)
    : name_(std::move(name)), scope_(std::move(scope)), allowed_(std::move(allowed)) {}

CspConstraint::CspConstraint(std::string name, std::vector<std::size_t> scope, Test test)
    : name_(std::move(name)), scope_(std::move(scope)), test_(std::move(test)) {
  if (!test_) throw std::invalid_argument("constraint " + name_ + " without a test");
}

bool CspConstraint::allows(std::span<const std::uint32_t> values) const {
  if (test_) return test_(values);
  return allowed_.contains(std::vector<std::uint32_t>(values.begin(), values.end()));
}

std::size_t Csp::add_variable(std::string name, std::uint64_t size,
                              std::vector<std::string> labels) {
  if (!labels.empty() && labels.size() != size)
    throw std::invalid_argument("variable " + name + ": label count differs from domain size");
  variables_.push_back(CspVariable{std::move(name), size, std::move(labels)});
  offsets_.push_back(offsets_.back() + size);
  return variables_.size() - 1;
}

void Csp::add_constraint(CspConstraint constraint) {
  for (auto x : constraint.scope()) {
    if (x >= variables_.size())
      throw std::invalid_argument("constraint " + constraint.name() + ": unknown variable");
  }
  for (const auto& tuple : constraint.allowed()) {
    if (tuple.size() != constraint.scope().size())
      throw std::invalid_argument("constraint " + constraint.name() + ": tuple arity");
    for (std::size_t i = 0; i < tuple.size(); ++i) {
      if (tuple[i] >= variables_[constraint.scope()[i]].size)
        throw std::invalid_argument("constraint " + constraint.name() +
                                    ": tuple outside the scope's domains");
    }
  }
  constraints_.push_back(std::move(constraint));
}

std::string Csp::value_label(std::size_t variable, std::uint32_t value) const {
  const auto& v = variables_.at(variable);
  return v.labels.empty() ? std::to_string(value) : v.labels.at(value);
}

std::size_t Csp::binding(std::size_t variable, std::uint32_t value) const {
  if (value >= variables_.at(variable).size) throw std::out_of_range("value outside domain");
  return offsets_[variable] + value;
}

std::pair<std::size_t, std::uint32_t> Csp::binding_at(std::size_t id) const {
  if (id >= binding_count()) throw std::out_of_range("binding id");
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), id);
  std::size_t x = static_cast<std::size_t>(it - offsets_.begin()) - 1;
  return {x, static_cast<std::uint32_t>(id - offsets_[x])};
}

bool Csp::is_solution(const Assignment& assignment) const {
  if (assignment.size() != variables_.size()) return false;
  for (std::size_t x = 0; x < assignment.size(); ++x)
    if (assignment[x] >= variables_[x].size) return false;
  std::vector<std::uint32_t> values;
  for (const auto& c : constraints_) {
    values.clear();
    for (auto x : c.scope()) values.push_back(assignment[x]);
    if (!c.allows(values)) return false;
  }
  return true;
}

namespace {

cpp_int product_of_sizes(const std::vector<CspVariable>& variables,
                         std::span<const std::size_t> which) {
  cpp_int total = 1;
  for (auto x : which) total *= variables[x].size;
  return total;
}

void require_space(const cpp_int& space, std::uint64_t cap) {
  if (space > cap) throw CapExceeded(space.str(), std::to_string(cap));
}

/// Calls fn on every tuple over `sizes`, last position fastest.
template <typename Fn>
void for_each_tuple(const std::vector<std::uint64_t>& sizes, Fn&& fn) {
  for (auto s : sizes)
    if (s == 0) return;
  std::vector<std::uint32_t> tuple(sizes.size(), 0);
  while (true) {
    fn(tuple);
    std::size_t i = sizes.size();
    while (i > 0) {
      --i;
      if (++tuple[i] < sizes[i]) break;
      tuple[i] = 0;
      if (i == 0) return;
    }
    if (sizes.empty()) return;
  }
}

}  // namespace

std::vector<Assignment> csp_solutions(const Csp& csp, std::uint64_t cap) {
  std::vector<std::size_t> all(csp.variables().size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  require_space(product_of_sizes(csp.variables(), all), cap);
  std::vector<std::uint64_t> sizes;
  for (const auto& v : csp.variables()) sizes.push_back(v.size);
  std::vector<Assignment> out;
  for_each_tuple(sizes, [&](const std::vector<std::uint32_t>& a) {
    if (csp.is_solution(a)) out.push_back(a);
  });
  return out;
}

BindingPermutation::BindingPermutation(std::vector<std::size_t> images)
    : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (auto i : images_) {
    if (i >= images_.size() || seen[i]) throw std::invalid_argument("not a binding bijection");
    seen[i] = true;
  }
}

BindingPermutation BindingPermutation::identity(std::size_t bindings) {
  std::vector<std::size_t> images(bindings);
  for (std::size_t i = 0; i < bindings; ++i) images[i] = i;
  return BindingPermutation(std::move(images));
}

bool BindingPermutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

BindingPermutation BindingPermutation::compose(const BindingPermutation& outer,
                                               const BindingPermutation& inner) {
  if (outer.images_.size() != inner.images_.size())
    throw std::invalid_argument("composing permutations of different binding sets");
  std::vector<std::size_t> images(inner.images_.size());
  for (std::size_t i = 0; i < images.size(); ++i) images[i] = outer.images_[inner.images_[i]];
  return BindingPermutation(std::move(images));
}

std::vector<std::size_t> bindings_of(const Csp& csp, const Assignment& assignment) {
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < assignment.size(); ++x) out.push_back(csp.binding(x, assignment[x]));
  return out;
}

std::optional<Assignment> apply_to_assignment(const Csp& csp, const BindingPermutation& perm,
                                              const Assignment& assignment) {
  if (perm.images().size() != csp.binding_count())
    throw std::invalid_argument("binding permutation does not fit the CSP");
  Assignment image(csp.variables().size(), 0);
  std::vector<bool> assigned(image.size(), false);
  for (auto b : bindings_of(csp, assignment)) {
    auto [x, v] = csp.binding_at(perm(b));
    if (assigned[x]) return std::nullopt;
    assigned[x] = true;
    image[x] = v;
  }
  return image;
}

bool MicrostructureComplement::has_edge(const std::vector<std::size_t>& sorted_bindings) const {
  return index_.contains(sorted_bindings);
}

bool MicrostructureComplement::is_independent(std::span<const std::size_t> bindings) const {
  std::set<std::size_t> inside(bindings.begin(), bindings.end());
  for (const auto& e : edges) {
    if (std::all_of(e.bindings.begin(), e.bindings.end(),
                    [&](std::size_t b) { return inside.contains(b); }))
      return false;
  }
  return true;
}

MicrostructureComplement microstructure_complement(const Csp& csp, std::uint64_t cap) {
  MicrostructureComplement ms;
  ms.vertices = csp.binding_count();
  auto add = [&](EdgeKind kind, std::vector<std::size_t> bindings) {
    std::sort(bindings.begin(), bindings.end());
    bindings.erase(std::unique(bindings.begin(), bindings.end()), bindings.end());
    if (ms.index_.insert(bindings).second) ms.edges.push_back(Hyperedge{kind, std::move(bindings)});
  };
  for (std::size_t x = 0; x < csp.variables().size(); ++x) {
    auto n = csp.variables()[x].size;
    for (std::uint32_t a = 0; a < n; ++a)
      for (std::uint32_t b = a + 1; b < n; ++b)
        add(EdgeKind::Consistency, {csp.binding(x, a), csp.binding(x, b)});
  }
  cpp_int visited = 0;
  for (const auto& c : csp.constraints()) {
    visited += product_of_sizes(csp.variables(), c.scope());
    require_space(visited, cap);
    std::vector<std::uint64_t> sizes;
    for (auto x : c.scope()) sizes.push_back(csp.variables()[x].size);
    for_each_tuple(sizes, [&](const std::vector<std::uint32_t>& tuple) {
      if (c.allows(tuple)) return;
      std::vector<std::size_t> bindings;
      for (std::size_t i = 0; i < tuple.size(); ++i)
        bindings.push_back(csp.binding(c.scope()[i], tuple[i]));
      add(EdgeKind::Constraint, std::move(bindings));
    });
  }
  return ms;
}

bool is_solution_symmetry(const Csp& csp, const BindingPermutation& perm, std::uint64_t cap) {
  for (const auto& s : csp_solutions(csp, cap)) {
    auto image = apply_to_assignment(csp, perm, s);
    if (!image || !csp.is_solution(*image)) return false;
  }
  return true;
}

bool is_constraint_symmetry(const Csp& csp, const BindingPermutation& perm, std::uint64_t cap) {
  if (perm.images().size() != csp.binding_count())
    throw std::invalid_argument("binding permutation does not fit the CSP");
  auto ms = microstructure_complement(csp, cap);
  // perm is injective and the edge set finite, so edges onto edges also
  // sends non-edges onto non-edges.
  for (const auto& e : ms.edges) {
    std::vector<std::size_t> image;
    for (auto b : e.bindings) image.push_back(perm(b));
    std::sort(image.begin(), image.end());
    if (!ms.has_edge(image)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Problems as CSPs.

namespace {

struct Mentioned {
  std::vector<bool> funcs;
  std::vector<bool> preds;
};

void mention_term(const Term& t, Mentioned& m) {
  if (t.kind() != TermKind::Apply) return;
  m.funcs[to_index(t.func())] = true;
  for (const auto& a : t.args()) mention_term(a, m);
}

void mention_formula(const Formula& f, Mentioned& m) {
  if (f.kind() == FormulaKind::Predicate) m.preds[to_index(f.pred())] = true;
  for (const auto& t : f.terms()) mention_term(t, m);
  for (const auto& c : f.children()) mention_formula(c, m);
}

Mentioned mentioned_in(const Signature& sig, const Formula& f) {
  Mentioned m{std::vector<bool>(sig.func_count(), false),
              std::vector<bool>(sig.pred_count(), false)};
  mention_formula(f, m);
  return m;
}

std::string cell_name(const Signature& sig, const std::string& symbol,
                      const std::vector<SortId>& arg_sorts, const std::vector<std::uint32_t>& args) {
  if (args.empty()) return symbol;
  std::string out = symbol + "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ',';
    out += format_value(sig, Value{arg_sorts[i], args[i]});
  }
  return out + ")";
}

std::vector<std::string> value_labels(const Signature& sig, SortId sort, std::uint32_t n) {
  std::vector<std::string> out;
  for (std::uint32_t v = 0; v < n; ++v) out.push_back(format_value(sig, Value{sort, v}));
  return out;
}

/// Where each symbol's cells live among the flat CSP's variables.
struct FlatLayout {
  std::vector<std::size_t> func_first;
  std::vector<std::size_t> pred_first;
};

}  // namespace

Csp flat_csp(const Problem& problem) {
  const Signature& sig = problem.signature;
  InterpretationShape shape(sig, problem.domains);
  Csp csp;
  FlatLayout layout;
  for (std::size_t f = 0; f < sig.func_count(); ++f) {
    const auto& decl = sig.funcs()[f];
    const auto& symbol = shape.funcs()[f];
    layout.func_first.push_back(csp.variables().size());
    for (std::uint64_t cell = 0; cell < symbol.cells; ++cell) {
      csp.add_variable(cell_name(sig, decl.name, decl.args, InterpretationShape::args_of(symbol, cell)),
                       symbol.range, value_labels(sig, decl.result, symbol.range));
    }
  }
  for (std::size_t p = 0; p < sig.pred_count(); ++p) {
    const auto& decl = sig.preds()[p];
    const auto& symbol = shape.preds()[p];
    layout.pred_first.push_back(csp.variables().size());
    for (std::uint64_t cell = 0; cell < symbol.cells; ++cell) {
      csp.add_variable(cell_name(sig, decl.name, decl.args, InterpretationShape::args_of(symbol, cell)),
                       2, {"F", "T"});
    }
  }

  auto evaluator = std::make_shared<const Evaluator>(problem);
  auto blank = std::make_shared<const Interpretation>(shape.blank());
  for (std::size_t i = 0; i < problem.formulas.size(); ++i) {
    Mentioned m = mentioned_in(sig, problem.formulas[i]);
    std::vector<std::size_t> scope;
    // (predicate?, symbol, cell) per scope position.
    std::vector<std::tuple<bool, std::size_t, std::uint64_t>> cells;
    for (std::size_t f = 0; f < sig.func_count(); ++f) {
      if (!m.funcs[f]) continue;
      for (std::uint64_t c = 0; c < shape.funcs()[f].cells; ++c) {
        scope.push_back(layout.func_first[f] + c);
        cells.emplace_back(false, f, c);
      }
    }
    for (std::size_t p = 0; p < sig.pred_count(); ++p) {
      if (!m.preds[p]) continue;
      for (std::uint64_t c = 0; c < shape.preds()[p].cells; ++c) {
        scope.push_back(layout.pred_first[p] + c);
        cells.emplace_back(true, p, c);
      }
    }
    auto test = [evaluator, blank, cells = std::move(cells), i](std::span<const std::uint32_t> v) {
      Interpretation interp = *blank;
      for (std::size_t k = 0; k < cells.size(); ++k) {
        auto [pred, symbol, cell] = cells[k];
        if (pred)
          interp.predicates[symbol][cell] = static_cast<std::uint8_t>(v[k]);
        else
          interp.functions[symbol][cell] = v[k];
      }
      return evaluator->holds(i, interp);
    };
    csp.add_constraint(CspConstraint("formula " + std::to_string(i + 1), std::move(scope), test));
  }
  return csp;
}

namespace {

std::uint64_t table_space(const InterpretationShape::Symbol& symbol, std::uint64_t cap) {
  cpp_int space = boost::multiprecision::pow(cpp_int(symbol.range),
                                             static_cast<unsigned>(symbol.cells));
  require_space(space, cap);
  return static_cast<std::uint64_t>(space);
}

template <typename Cell>
std::uint64_t encode_table(const std::vector<Cell>& table, std::uint32_t range) {
  std::uint64_t code = 0;
  for (auto v : table) code = code * range + v;
  return code;
}

template <typename Cell>
void decode_table(std::uint64_t code, std::uint32_t range, std::vector<Cell>& table) {
  for (std::size_t i = table.size(); i > 0; --i) {
    table[i - 1] = static_cast<Cell>(code % range);
    code /= range;
  }
}

void set_symbol(Interpretation& interp, const InterpretationShape& shape, std::size_t x,
                std::uint64_t code) {
  std::size_t funcs = shape.funcs().size();
  if (x < funcs)
    decode_table(code, shape.funcs()[x].range, interp.functions[x]);
  else
    decode_table(code, 2, interp.predicates[x - funcs]);
}

}  // namespace

Csp functional_csp(const Problem& problem, std::uint64_t cap) {
  const Signature& sig = problem.signature;
  InterpretationShape shape(sig, problem.domains);
  Csp csp;
  for (std::size_t f = 0; f < sig.func_count(); ++f) {
    const auto& decl = sig.funcs()[f];
    std::uint64_t size = table_space(shape.funcs()[f], cap);
    if (decl.is_constant())
      csp.add_variable(decl.name, size, value_labels(sig, decl.result, shape.funcs()[f].range));
    else
      csp.add_variable(decl.name, size);
  }
  for (std::size_t p = 0; p < sig.pred_count(); ++p)
    csp.add_variable(sig.preds()[p].name, table_space(shape.preds()[p], cap));

  auto evaluator = std::make_shared<const Evaluator>(problem);
  auto geometry = std::make_shared<const InterpretationShape>(shape);
  for (std::size_t i = 0; i < problem.formulas.size(); ++i) {
    Mentioned m = mentioned_in(sig, problem.formulas[i]);
    std::vector<std::size_t> scope;
    for (std::size_t f = 0; f < sig.func_count(); ++f)
      if (m.funcs[f]) scope.push_back(f);
    for (std::size_t p = 0; p < sig.pred_count(); ++p)
      if (m.preds[p]) scope.push_back(sig.func_count() + p);
    auto test = [evaluator, geometry, scope, i](std::span<const std::uint32_t> v) {
      Interpretation interp = geometry->blank();
      for (std::size_t k = 0; k < scope.size(); ++k) set_symbol(interp, *geometry, scope[k], v[k]);
      return evaluator->holds(i, interp);
    };
    csp.add_constraint(CspConstraint("formula " + std::to_string(i + 1), scope, test));
  }
  return csp;
}

Assignment functional_assignment(const Problem& problem, const Interpretation& interp) {
  InterpretationShape shape(problem.signature, problem.domains);
  shape.require_fit(interp);
  Assignment out;
  for (std::size_t f = 0; f < interp.functions.size(); ++f)
    out.push_back(static_cast<std::uint32_t>(encode_table(interp.functions[f], shape.funcs()[f].range)));
  for (const auto& p : interp.predicates)
    out.push_back(static_cast<std::uint32_t>(encode_table(p, 2)));
  return out;
}

Interpretation interpretation_of(const Problem& problem, const Assignment& assignment) {
  InterpretationShape shape(problem.signature, problem.domains);
  if (assignment.size() != shape.funcs().size() + shape.preds().size())
    throw ShapeError("assignment does not cover every symbol");
  Interpretation interp = shape.blank();
  for (std::size_t x = 0; x < assignment.size(); ++x) set_symbol(interp, shape, x, assignment[x]);
  return interp;
}

BindingPermutation functional_extension(const Problem& problem, const DomainPermutation& sigma,
                                        std::uint64_t cap) {
  if (!sigma.fits(problem.domains)) throw ShapeError("permutation does not fit the domains");
  InterpretationShape shape(problem.signature, problem.domains);
  std::vector<std::uint64_t> sizes;
  std::uint64_t total = 0;
  for (const auto& s : shape.funcs()) total += sizes.emplace_back(table_space(s, cap));
  for (const auto& s : shape.preds()) total += sizes.emplace_back(table_space(s, cap));
  require_space(total, cap);

  std::vector<std::size_t> images;
  images.reserve(total);
  std::size_t offset = 0;
  Interpretation interp = shape.blank();
  for (std::size_t x = 0; x < sizes.size(); ++x) {
    for (std::uint64_t code = 0; code < sizes[x]; ++code) {
      set_symbol(interp, shape, x, code);
      Interpretation image = apply_to_interpretation(sigma, problem, interp);
      std::size_t funcs = shape.funcs().size();
      std::uint64_t image_code = x < funcs
                                     ? encode_table(image.functions[x], shape.funcs()[x].range)
                                     : encode_table(image.predicates[x - funcs], 2);
      images.push_back(offset + image_code);
    }
    offset += sizes[x];
  }
  return BindingPermutation(std::move(images));
}

}  // namespace msfmf
