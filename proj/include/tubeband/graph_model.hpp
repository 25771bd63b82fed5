#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace tubeband {

using VertexId = long long;

// One edge of a fundamental (quotient) graph. The edge is the segment [0, length]
// oriented tail -> head; `offset` is the lattice vector g_e in lattice coordinates
// and `potential` the constant magnetic potential A_e (phase per unit length).
struct Edge {
  VertexId tail = 0;
  VertexId head = 0;
  double length = 1.0;
  double potential = 0.0;
  std::vector<int> offset{0};
  double weight = 1.0;

  bool is_loop() const noexcept { return tail == head; }
};

// Finite quotient graph of a periodic metric graph. Immutable after construction.
class FundamentalGraph {
 public:
  FundamentalGraph(std::vector<VertexId> vertices, std::vector<Edge> edges, int lattice_dim = 1);

  const std::vector<VertexId>& vertices() const noexcept { return vertices_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  int lattice_dim() const noexcept { return lattice_dim_; }
  std::size_t vertex_count() const noexcept { return vertices_.size(); }

  // Position of a vertex id in vertices(); throws for unknown ids.
  std::size_t index_of(VertexId id) const;

  // Number of edge endpoints at the vertex with the given index (loops count twice).
  int degree(std::size_t index) const;

  // Every shipped algorithm works on one-dimensional lattices only.
  void require_one_dimensional() const;

  // Phase accumulated along edge e at quasimomentum t when the lattice period is
  // `period` and lengths are multiplied by `length_scale`:
  //   offset * period * t + potential * length * length_scale.
  double edge_phase(std::size_t e, double t, double period = 1.0, double length_scale = 1.0) const;

 private:
  std::vector<VertexId> vertices_;
  std::vector<Edge> edges_;
  int lattice_dim_;
};

// epsilon-rescaled copy of a fundamental graph. Lengths scale by epsilon; stored
// potentials are physical and are never rescaled here.
class ScaledGraph {
 public:
  ScaledGraph(FundamentalGraph base, double epsilon);

  const FundamentalGraph& base() const noexcept { return base_; }
  double epsilon() const noexcept { return epsilon_; }
  double edge_length(std::size_t e) const { return epsilon_ * base_.edges().at(e).length; }

 private:
  FundamentalGraph base_;
  double epsilon_;
};

// Two vertices, four unit edges: a loop at v1 (offset +1, potential +A), a loop at
// v2 (offset +1, potential -A) and two parallel edges v1 -> v2 with zero potential.
FundamentalGraph build_g1(double A);

ScaledGraph rescale(const FundamentalGraph& g, double eps);
ScaledGraph rescale(const ScaledGraph& g, double eps);

bool is_connected(const FundamentalGraph& g);

std::string graph_to_json(const FundamentalGraph& g);
FundamentalGraph graph_from_json(std::string_view text);

}  // namespace tubeband
