#include <map>
#include <numeric>
#include <stdexcept>

#include "msfmf/oracle.hpp"

namespace msfmf {

namespace {

class Backtracker {
 public:
  Backtracker(const Problem& problem, std::uint64_t max_models, std::uint64_t node_cap)
      : evaluator_(problem), max_models_(max_models), node_cap_(node_cap) {
    InterpretationShape shape(problem.signature, problem.domains);
    for (const auto& f : shape.funcs()) partial_.functions.emplace_back(f.cells, kUnassignedValue);
    for (const auto& p : shape.preds()) partial_.predicates.emplace_back(p.cells, kUnassignedTruth);
    for (std::size_t f = 0; f < shape.funcs().size(); ++f)
      for (std::uint64_t c = 0; c < shape.funcs()[f].cells; ++c)
        cells_.push_back({false, f, c, shape.funcs()[f].range});
    for (std::size_t p = 0; p < shape.preds().size(); ++p)
      for (std::uint64_t c = 0; c < shape.preds()[p].cells; ++c)
        cells_.push_back({true, p, c, 2});
  }

  SearchResult run() {
    if (viable()) descend(0);
    return std::move(result_);
  }

 private:
  struct Cell {
    bool predicate;
    std::size_t symbol;
    std::uint64_t cell;
    std::uint32_t radix;
  };

  bool viable() const {
    for (std::size_t i = 0; i < evaluator_.size(); ++i)
      if (evaluator_.holds_partial(i, partial_) == Truth::False) return false;
    return true;
  }

  bool stopped() const { return !result_.complete || result_.models.size() >= max_models_; }

  void descend(std::size_t depth) {
    if (depth == cells_.size()) {
      result_.models.push_back(partial_);
      return;
    }
    const Cell& cell = cells_[depth];
    for (std::uint32_t v = 0; v < cell.radix; ++v) {
      if (++result_.nodes > node_cap_) {
        result_.complete = false;
        break;
      }
      if (cell.predicate)
        partial_.predicates[cell.symbol][cell.cell] = static_cast<std::uint8_t>(v);
      else
        partial_.functions[cell.symbol][cell.cell] = v;
      if (viable()) descend(depth + 1);
      if (stopped()) break;
    }
    if (cell.predicate)
      partial_.predicates[cell.symbol][cell.cell] = kUnassignedTruth;
    else
      partial_.functions[cell.symbol][cell.cell] = kUnassignedValue;
  }

  Evaluator evaluator_;
  std::uint64_t max_models_;
  std::uint64_t node_cap_;
  Interpretation partial_;
  std::vector<Cell> cells_;
  SearchResult result_;
};

}  // namespace

SearchResult search_models(const Problem& problem, std::uint64_t max_models,
                           std::uint64_t node_cap) {
  if (max_models == 0) return {};
  return Backtracker(problem, max_models, node_cap).run();
}

std::vector<std::vector<std::size_t>> orbits_among(const Problem& problem,
                                                   std::span<const Interpretation> models,
                                                   std::span<const DomainPermutation> generators) {
  std::map<Interpretation, std::size_t> index;
  for (std::size_t i = 0; i < models.size(); ++i) index.emplace(models[i], i);
  std::vector<std::size_t> parent(models.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < models.size(); ++i) {
    for (const auto& g : generators) {
      auto it = index.find(apply_to_interpretation(g, problem, models[i]));
      if (it == index.end())
        throw std::invalid_argument("model set is not closed under the generators");
      std::size_t a = find(i), b = find(it->second);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::map<std::size_t, std::size_t> slot;
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < models.size(); ++i) {
    auto [it, fresh] = slot.emplace(find(i), out.size());
    if (fresh) out.emplace_back();
    out[it->second].push_back(i);
  }
  return out;
}

}  // namespace msfmf
