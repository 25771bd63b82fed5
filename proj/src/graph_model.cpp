#include "tubeband/graph_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "json.hpp"
#include "tubeband/error.hpp"

namespace tubeband {

FundamentalGraph::FundamentalGraph(std::vector<VertexId> vertices, std::vector<Edge> edges,
                                   int lattice_dim)
    : vertices_(std::move(vertices)), edges_(std::move(edges)), lattice_dim_(lattice_dim) {
  if (vertices_.empty()) throw Error(ErrorCode::invalid_argument, "graph needs at least one vertex");
  if (lattice_dim_ < 1) throw Error(ErrorCode::invalid_argument, "lattice_dim must be >= 1");
  std::unordered_set<VertexId> seen;
  for (VertexId v : vertices_) {
    if (!seen.insert(v).second)
      throw Error(ErrorCode::invalid_argument, "duplicate vertex id " + std::to_string(v));
  }
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const Edge& edge = edges_[e];
    if (!seen.count(edge.tail) || !seen.count(edge.head))
      throw Error(ErrorCode::invalid_argument,
                  "edge " + std::to_string(e) + " references an unknown vertex");
    if (!(edge.length > 0.0) || !std::isfinite(edge.length))
      throw Error(ErrorCode::invalid_argument,
                  "edge " + std::to_string(e) + " must have positive finite length");
    if (!(edge.weight > 0.0))
      throw Error(ErrorCode::invalid_argument, "edge weights must be positive");
    if (!std::isfinite(edge.potential))
      throw Error(ErrorCode::invalid_argument, "edge potentials must be finite");
    if (static_cast<int>(edge.offset.size()) != lattice_dim_)
      throw Error(ErrorCode::invalid_argument,
                  "edge " + std::to_string(e) + " offset does not match lattice_dim");
  }
  if (!is_connected(*this)) throw Error(ErrorCode::invalid_argument, "graph is not connected");
}

std::size_t FundamentalGraph::index_of(VertexId id) const {
  auto it = std::find(vertices_.begin(), vertices_.end(), id);
  if (it == vertices_.end())
    throw Error(ErrorCode::invalid_argument, "unknown vertex id " + std::to_string(id));
  return static_cast<std::size_t>(it - vertices_.begin());
}

int FundamentalGraph::degree(std::size_t index) const {
  const VertexId id = vertices_.at(index);
  int d = 0;
  for (const Edge& e : edges_) d += (e.tail == id) + (e.head == id);
  return d;
}

void FundamentalGraph::require_one_dimensional() const {
  if (lattice_dim_ != 1)
    throw Error(ErrorCode::unsupported,
                "lattice dimension " + std::to_string(lattice_dim_) + " (only d = 1 is implemented)");
}

double FundamentalGraph::edge_phase(std::size_t e, double t, double period,
                                    double length_scale) const {
  require_one_dimensional();
  const Edge& edge = edges_.at(e);
  return edge.offset[0] * period * t + edge.potential * edge.length * length_scale;
}

ScaledGraph::ScaledGraph(FundamentalGraph base, double epsilon)
    : base_(std::move(base)), epsilon_(epsilon) {
  if (!(epsilon_ > 0.0) || !std::isfinite(epsilon_))
    throw Error(ErrorCode::invalid_argument, "epsilon must be positive");
}

FundamentalGraph build_g1(double A) {
  if (!std::isfinite(A)) throw Error(ErrorCode::invalid_argument, "potential must be finite");
  std::vector<Edge> edges{
      {.tail = 1, .head = 1, .length = 1.0, .potential = A, .offset = {1}},
      {.tail = 2, .head = 2, .length = 1.0, .potential = -A, .offset = {1}},
      {.tail = 1, .head = 2, .length = 1.0, .potential = 0.0, .offset = {0}},
      {.tail = 1, .head = 2, .length = 1.0, .potential = 0.0, .offset = {0}},
  };
  return FundamentalGraph({1, 2}, std::move(edges), 1);
}

ScaledGraph rescale(const FundamentalGraph& g, double eps) { return ScaledGraph(g, eps); }

ScaledGraph rescale(const ScaledGraph& g, double eps) {
  if (!(eps > 0.0)) throw Error(ErrorCode::invalid_argument, "epsilon must be positive");
  return ScaledGraph(g.base(), g.epsilon() * eps);
}

bool is_connected(const FundamentalGraph& g) {
  const std::size_t p = g.vertex_count();
  std::vector<std::size_t> parent(p);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Edge& e : g.edges()) {
    auto it = std::find(g.vertices().begin(), g.vertices().end(), e.tail);
    auto ih = std::find(g.vertices().begin(), g.vertices().end(), e.head);
    if (it == g.vertices().end() || ih == g.vertices().end()) return false;
    parent[find(it - g.vertices().begin())] = find(ih - g.vertices().begin());
  }
  const std::size_t root = find(0);
  for (std::size_t v = 1; v < p; ++v)
    if (find(v) != root) return false;
  return true;
}

std::string graph_to_json(const FundamentalGraph& g) {
  nlohmann::ordered_json doc;
  doc["vertices"] = g.vertices();
  auto edges = nlohmann::ordered_json::array();
  for (const Edge& e : g.edges()) {
    nlohmann::ordered_json item;
    item["tail"] = e.tail;
    item["head"] = e.head;
    item["length"] = e.length;
    item["potential"] = e.potential;
    item["offset"] = e.offset;
    edges.push_back(std::move(item));
  }
  doc["edges"] = std::move(edges);
  doc["lattice_dim"] = g.lattice_dim();
  return doc.dump();
}

FundamentalGraph graph_from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::invalid_argument, std::string("graph JSON: ") + e.what());
  }
  try {
    auto vertices = doc.at("vertices").get<std::vector<VertexId>>();
    const int dim = doc.value("lattice_dim", 1);
    std::vector<Edge> edges;
    for (const auto& item : doc.at("edges")) {
      Edge e;
      e.tail = item.at("tail").get<VertexId>();
      e.head = item.at("head").get<VertexId>();
      e.length = item.at("length").get<double>();
      e.potential = item.at("potential").get<double>();
      const auto& off = item.at("offset");
      e.offset = off.is_array() ? off.get<std::vector<int>>() : std::vector<int>{off.get<int>()};
      edges.push_back(std::move(e));
    }
    return FundamentalGraph(std::move(vertices), std::move(edges), dim);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::invalid_argument, std::string("graph JSON: ") + e.what());
  }
}

}  // namespace tubeband
