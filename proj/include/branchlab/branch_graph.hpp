#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "branchlab/collapse.hpp"
#include "branchlab/tolerances.hpp"

namespace branchlab {

// Vertex of a branching graph: one eigen-branch of one measurement, or the
// root state the first measurement acted on. Rendered as "<mid>:<label>".
struct VertexId {
  std::string measurement_id;
  std::string label;

  [[nodiscard]] std::string text() const { return measurement_id + ":" + label; }

  friend bool operator==(const VertexId&, const VertexId&) = default;
};

// Oriented forward in measurement order; every vertex after the root has
// exactly one parent, so directed paths are unique.
struct BranchGraph {
  struct Vertex {
    VertexId id;
    bool realized = false;
    int parent = -1;         // index into vertices, -1 for roots
    double in_weight = 1.0;  // edge weight from the parent
  };

  struct Edge {
    int from = -1;
    int to = -1;
    double weight = 0.0;
  };

  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::vector<int> roots;

  [[nodiscard]] bool empty() const { return vertices.empty(); }
  // -1 when absent.
  [[nodiscard]] int find(const VertexId& id) const;
};

// Adds one layer: a vertex per branch of the record's source state, with
// edges from attach_at weighted by Born probabilities. On an empty graph
// attach_at must be absent and a root vertex for the source state is seeded.
// Throws Error(kUnknownVertex) for a missing attach point and
// Error(kCycleAttempt) if a new vertex id already exists (defensive; fresh
// measurement ids never collide).
[[nodiscard]] BranchGraph extend(const BranchGraph& graph, const CollapseRecord& record,
                                 const std::optional<VertexId>& attach_at = std::nullopt);

// Path composition of independent edge probabilities.
[[nodiscard]] double compose(double r, double s);

// Product of edge weights along the unique directed path, read as the
// conditional probability of reaching `to` given each intermediate realized
// state. nullopt when no directed path exists, which is distinct from a
// reachable vertex at probability zero. distance(v, v) is the empty
// product, 1. Throws Error(kUnknownVertex).
[[nodiscard]] std::optional<double> distance(const BranchGraph& graph, const VertexId& from,
                                             const VertexId& to);

// True iff a directed path of strictly positive weight edges (above
// tol.zero) leads from `from` to `to`. Same vertex is never related to
// itself. Throws Error(kUnknownVertex).
[[nodiscard]] bool transitive_possibility(const BranchGraph& graph, const VertexId& from,
                                          const VertexId& to, const Tolerances& tol = {});

// Stable edge-list JSON text (vertices, edges, roots in insertion order).
[[nodiscard]] std::string to_edge_list_json(const BranchGraph& graph);

// Graphviz DOT for visualization tooling.
[[nodiscard]] std::string to_dot(const BranchGraph& graph);

}  // namespace branchlab
