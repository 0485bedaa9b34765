#include "hardy/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <sstream>

namespace hardy {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::AsymmetricInput: return "AsymmetricInput";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::NonpositiveWeight: return "NonpositiveWeight";
    case ErrorCode::NonpositiveFunction: return "NonpositiveFunction";
    case ErrorCode::NonpositiveInput: return "NonpositiveInput";
    case ErrorCode::NonpositiveGroundState: return "NonpositiveGroundState";
    case ErrorCode::NonpositiveSupersolution: return "NonpositiveSupersolution";
    case ErrorCode::NotSuperharmonic: return "NotSuperharmonic";
    case ErrorCode::OrderViolation: return "OrderViolation";
    case ErrorCode::InfiniteSupport: return "InfiniteSupport";
    case ErrorCode::ConstantFunction: return "ConstantFunction";
    case ErrorCode::LevelSetTouchesBoundary: return "LevelSetTouchesBoundary";
    case ErrorCode::NegativeF: return "NegativeF";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::SolverDivergence: return "SolverDivergence";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::ZeroWeightRegion: return "ZeroWeightRegion";
    case ErrorCode::EigSolverFailure: return "EigSolverFailure";
    case ErrorCode::UnsupportedFamily: return "UnsupportedFamily";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "UnknownError";
}

struct WeightedGraph::Impl {
  GraphKind kind;
  Vertex root = 0;
  OracleMetadata metadata;

  // finite
  std::vector<Vertex> bfs_order;
  std::unordered_map<Vertex, std::vector<Neighbor>> adjacency;
  std::unordered_map<Vertex, double> potential;

  // procedural
  NeighborFn neighbor_fn;
  PotentialFn potential_fn;
};

WeightedGraph WeightedGraph::oracle(NeighborFn neighbors, PotentialFn potential, Vertex root,
                                    OracleMetadata metadata) {
  auto impl = std::make_shared<Impl>();
  impl->kind = GraphKind::ProceduralOracle;
  impl->root = root;
  impl->metadata = std::move(metadata);
  impl->neighbor_fn = std::move(neighbors);
  impl->potential_fn = std::move(potential);
  return WeightedGraph(std::move(impl));
}

GraphKind WeightedGraph::kind() const { return impl_->kind; }
Vertex WeightedGraph::root() const { return impl_->root; }
const OracleMetadata& WeightedGraph::metadata() const { return impl_->metadata; }

std::vector<Neighbor> WeightedGraph::neighbors(Vertex x) const {
  if (impl_->kind == GraphKind::FiniteExplicit) {
    auto it = impl_->adjacency.find(x);
    if (it == impl_->adjacency.end()) return {};
    return it->second;
  }
  auto list = impl_->neighbor_fn(x);
  std::sort(list.begin(), list.end(), [](const Neighbor& a, const Neighbor& b) { return a.to < b.to; });
  return list;
}

double WeightedGraph::edge_weight(Vertex x, Vertex y) const {
  for (const auto& n : neighbors(x))
    if (n.to == y) return n.weight;
  return 0.0;
}

double WeightedGraph::weighted_degree(Vertex x) const {
  double s = 0.0;
  for (const auto& n : neighbors(x)) s += n.weight;
  return s;
}

double WeightedGraph::potential(Vertex x) const {
  if (impl_->kind == GraphKind::FiniteExplicit) {
    auto it = impl_->potential.find(x);
    return it == impl_->potential.end() ? 0.0 : it->second;
  }
  return impl_->potential_fn ? impl_->potential_fn(x) : 0.0;
}

std::size_t WeightedGraph::vertex_count() const {
  if (impl_->kind != GraphKind::FiniteExplicit)
    raise(ErrorCode::InvalidInput, "vertex_count requires a finite graph");
  return impl_->bfs_order.size();
}

const std::vector<Vertex>& WeightedGraph::vertices() const {
  if (impl_->kind != GraphKind::FiniteExplicit)
    raise(ErrorCode::InvalidInput, "vertices() requires a finite graph");
  return impl_->bfs_order;
}

bool WeightedGraph::contains(Vertex x) const {
  if (impl_->kind != GraphKind::FiniteExplicit) return true;
  return impl_->adjacency.count(x) > 0;
}

WeightedGraph build_finite_graph(const std::vector<std::tuple<Vertex, Vertex, double>>& edges,
                                 const std::map<Vertex, double>& potential,
                                 std::optional<Vertex> root,
                                 const std::vector<Vertex>& extra_vertices) {
  std::map<std::pair<Vertex, Vertex>, double> canonical;
  std::set<Vertex> vertex_set(extra_vertices.begin(), extra_vertices.end());
  for (const auto& [k, q] : potential) {
    (void)q;
    vertex_set.insert(k);
  }

  for (const auto& [x, y, w] : edges) {
    if (x == y) raise(ErrorCode::InvalidInput, "self-loop at vertex " + std::to_string(x));
    if (!(w > 0.0)) {
      std::ostringstream os;
      os << "edge (" << x << "," << y << ") has weight " << w;
      raise(ErrorCode::NonpositiveWeight, os.str());
    }
    auto key = std::minmax(x, y);
    auto [it, inserted] = canonical.emplace(key, w);
    if (!inserted && it->second != w) {
      std::ostringstream os;
      os << "edge {" << x << "," << y << "} given with weights " << it->second << " and " << w;
      raise(ErrorCode::AsymmetricInput, os.str());
    }
    vertex_set.insert(x);
    vertex_set.insert(y);
  }
  if (vertex_set.empty()) raise(ErrorCode::InvalidInput, "graph has no vertices");

  auto impl = std::make_shared<WeightedGraph::Impl>();
  impl->kind = GraphKind::FiniteExplicit;
  for (Vertex v : vertex_set) impl->adjacency[v];  // ensure isolated vertices exist
  for (const auto& [key, w] : canonical) {
    impl->adjacency[key.first].push_back({key.second, w});
    impl->adjacency[key.second].push_back({key.first, w});
  }
  for (auto& [v, list] : impl->adjacency)
    std::sort(list.begin(), list.end(), [](const Neighbor& a, const Neighbor& b) { return a.to < b.to; });
  for (const auto& [v, q] : potential) {
    if (!vertex_set.count(v))
      raise(ErrorCode::InvalidInput, "potential given at unknown vertex " + std::to_string(v));
    if (q != 0.0) impl->potential[v] = q;
  }
  impl->root = root.value_or(*vertex_set.begin());
  if (!vertex_set.count(impl->root))
    raise(ErrorCode::InvalidInput, "root vertex not in graph");

  // connectivity + BFS vertex order
  std::vector<Vertex> order;
  std::set<Vertex> seen{impl->root};
  std::vector<Vertex> level{impl->root};
  while (!level.empty()) {
    std::sort(level.begin(), level.end());
    std::vector<Vertex> next;
    for (Vertex v : level) {
      order.push_back(v);
      for (const auto& n : impl->adjacency[v])
        if (seen.insert(n.to).second) next.push_back(n.to);
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    level = std::move(next);
  }
  if (order.size() != vertex_set.size()) {
    std::ostringstream os;
    os << "reached " << order.size() << " of " << vertex_set.size() << " vertices from root "
       << impl->root;
    raise(ErrorCode::Disconnected, os.str());
  }
  impl->bfs_order = std::move(order);
  return WeightedGraph(std::move(impl));
}

std::vector<Vertex> ball(const WeightedGraph& graph, Vertex root, int radius) {
  if (radius < 0) raise(ErrorCode::InvalidInput, "negative ball radius");
  std::vector<Vertex> order;
  std::set<Vertex> seen{root};
  std::vector<Vertex> level{root};
  for (int r = 0; r <= radius && !level.empty(); ++r) {
    std::sort(level.begin(), level.end());
    order.insert(order.end(), level.begin(), level.end());
    if (r == radius) break;
    std::vector<Vertex> next;
    for (Vertex v : level)
      for (const auto& n : graph.neighbors(v))
        if (seen.insert(n.to).second) next.push_back(n.to);
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    level = std::move(next);
  }
  return order;
}

Exhaustion::Exhaustion(WeightedGraph graph, Vertex root) : graph_(std::move(graph)), root_(root) {}
Exhaustion::Exhaustion(WeightedGraph graph) : graph_(std::move(graph)), root_(graph_.root()) {}

std::vector<Vertex> Exhaustion::ball(int radius) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = cache_.find(radius);
  if (it == cache_.end()) it = cache_.emplace(radius, hardy::ball(graph_, root_, radius)).first;
  return it->second;
}

struct GraphFunction::Impl {
  bool is_map = false;
  std::unordered_map<Vertex, double> values;
  std::function<double(Vertex)> fn;
  std::optional<std::vector<Vertex>> support;  // sorted
};

GraphFunction::GraphFunction() {
  auto impl = std::make_shared<Impl>();
  impl->is_map = true;
  impl->support = std::vector<Vertex>{};
  impl_ = std::move(impl);
}

GraphFunction GraphFunction::zero() { return GraphFunction(); }

GraphFunction GraphFunction::constant(double c) {
  return from_fn([c](Vertex) { return c; });
}

GraphFunction GraphFunction::from_map(std::unordered_map<Vertex, double> values) {
  GraphFunction f;
  auto impl = std::make_shared<Impl>();
  impl->is_map = true;
  std::vector<Vertex> supp;
  supp.reserve(values.size());
  for (const auto& [v, val] : values) {
    (void)val;
    supp.push_back(v);
  }
  std::sort(supp.begin(), supp.end());
  impl->values = std::move(values);
  impl->support = std::move(supp);
  f.impl_ = std::move(impl);
  return f;
}

GraphFunction GraphFunction::from_fn(std::function<double(Vertex)> fn,
                                     std::optional<std::vector<Vertex>> support_hint) {
  GraphFunction f;
  auto impl = std::make_shared<Impl>();
  impl->is_map = false;
  impl->fn = std::move(fn);
  if (support_hint) {
    std::sort(support_hint->begin(), support_hint->end());
    impl->support = std::move(support_hint);
  }
  f.impl_ = std::move(impl);
  return f;
}

double GraphFunction::operator()(Vertex x) const {
  if (impl_->is_map) {
    auto it = impl_->values.find(x);
    return it == impl_->values.end() ? 0.0 : it->second;
  }
  return impl_->fn(x);
}

bool GraphFunction::finitely_supported() const { return impl_->support.has_value(); }

const std::vector<Vertex>& GraphFunction::support() const {
  if (!impl_->support)
    raise(ErrorCode::InfiniteSupport, "no finite support declared or derivable");
  return *impl_->support;
}

GraphFunction GraphFunction::scaled(double c) const {
  if (impl_->is_map) {
    auto values = impl_->values;
    for (auto& [v, val] : values) val *= c;
    return from_map(std::move(values));
  }
  auto fn = impl_->fn;
  auto f = from_fn([fn, c](Vertex x) { return c * fn(x); },
                   impl_->support ? std::optional(*impl_->support) : std::nullopt);
  return f;
}

GraphFunction compose(std::function<double(double)> profile, const GraphFunction& u0) {
  return GraphFunction::from_fn([profile, u0](Vertex x) { return profile(u0(x)); });
}

AssumptionReport check_assumptions(const GraphFunction& u0, const WeightedGraph& graph,
                                   int sample_radius) {
  AssumptionReport report;
  auto region = ball(graph, graph.root(), sample_radius);
  std::set<Vertex> in_region(region.begin(), region.end());
  for (Vertex x : region) {
    double ux = u0(x);
    if (!(ux > 0.0))
      raise(ErrorCode::NonpositiveFunction,
            "u0(" + std::to_string(x) + ") = " + std::to_string(ux));
    report.level_multiplicity[ux] += 1;
  }
  for (const auto& [value, count] : report.level_multiplicity)
    report.max_level_multiplicity = std::max(report.max_level_multiplicity, count);
  for (Vertex x : region) {
    for (const auto& n : graph.neighbors(x)) {
      if (!in_region.count(n.to)) continue;
      double r = u0(x) / u0(n.to);
      if (r > report.edge_ratio_sup) {
        report.edge_ratio_sup = r;
        report.ratio_argmax_hi = x;
        report.ratio_argmax_lo = n.to;
      }
    }
  }
  return report;
}

WeightedGraph materialize(const WeightedGraph& graph, int radius) {
  auto region = ball(graph, graph.root(), radius);
  std::set<Vertex> in_region(region.begin(), region.end());
  std::vector<std::tuple<Vertex, Vertex, double>> edges;
  std::map<Vertex, double> potential;
  for (Vertex x : region) {
    double q = graph.potential(x);
    if (q != 0.0) potential[x] = q;
    for (const auto& n : graph.neighbors(x))
      if (in_region.count(n.to) && x < n.to) edges.emplace_back(x, n.to, n.weight);
  }
  return build_finite_graph(edges, potential, graph.root(), region);
}

}  // namespace hardy
