#include "branchlab/branch_graph.hpp"

#include <json.hpp>

#include "branchlab/errors.hpp"
#include "branchlab/format.hpp"

namespace branchlab {

namespace {

int vertex_or_throw(const BranchGraph& graph, const VertexId& id) {
  const int index = graph.find(id);
  if (index < 0) {
    throw Error(ErrorCode::kUnknownVertex, "UnknownVertex: '" + id.text() + "'");
  }
  return index;
}

}  // namespace

int BranchGraph::find(const VertexId& id) const {
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i].id == id) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

BranchGraph extend(const BranchGraph& graph, const CollapseRecord& record,
                   const std::optional<VertexId>& attach_at) {
  BranchGraph out = graph;

  int attach_index;
  if (out.empty()) {
    // First measurement: seed a root vertex for the measured state itself.
    const VertexId root_id{record.measurement_id, record.observable_name};
    if (record.source.find(root_id.label) != nullptr) {
      throw Error(ErrorCode::kInvalidState,
                  "InvalidState: state name '" + root_id.label +
                      "' collides with one of its branch labels");
    }
    out.vertices.push_back(BranchGraph::Vertex{root_id, true, -1, 1.0});
    out.roots.push_back(0);
    attach_index = 0;
  } else {
    if (!attach_at.has_value()) {
      throw Error(ErrorCode::kUnknownVertex,
                  "UnknownVertex: attach point required on a non-empty graph");
    }
    attach_index = vertex_or_throw(out, *attach_at);
  }

  for (const auto& branch : record.source.branches) {
    const VertexId id{record.measurement_id, branch.label};
    if (out.find(id) >= 0) {
      throw Error(ErrorCode::kCycleAttempt,
                  "CycleAttempt: vertex '" + id.text() + "' already exists");
    }
    const double weight = branch.born_probability();
    const int vertex_index = static_cast<int>(out.vertices.size());
    out.vertices.push_back(BranchGraph::Vertex{
        id, branch.label == record.realized_label, attach_index, weight});
    out.edges.push_back(BranchGraph::Edge{attach_index, vertex_index, weight});
  }
  return out;
}

double compose(double r, double s) {
  return r * s;
}

std::optional<double> distance(const BranchGraph& graph, const VertexId& from,
                               const VertexId& to) {
  const int from_index = vertex_or_throw(graph, from);
  int cursor = vertex_or_throw(graph, to);

  // Walk parents upward, collecting the chain, then multiply top-down so
  // the product associates the same way as stepwise composition.
  std::vector<double> weights;
  while (cursor != from_index && cursor >= 0) {
    weights.push_back(graph.vertices[static_cast<std::size_t>(cursor)].in_weight);
    cursor = graph.vertices[static_cast<std::size_t>(cursor)].parent;
  }
  if (cursor != from_index) {
    return std::nullopt;
  }
  double product = 1.0;
  for (auto it = weights.rbegin(); it != weights.rend(); ++it) {
    product = compose(product, *it);
  }
  return product;
}

bool transitive_possibility(const BranchGraph& graph, const VertexId& from,
                            const VertexId& to, const Tolerances& tol) {
  const int from_index = vertex_or_throw(graph, from);
  const int to_index = vertex_or_throw(graph, to);
  if (from_index == to_index) {
    return false;
  }
  int cursor = to_index;
  while (cursor >= 0 && cursor != from_index) {
    if (graph.vertices[static_cast<std::size_t>(cursor)].in_weight <= tol.zero) {
      return false;
    }
    cursor = graph.vertices[static_cast<std::size_t>(cursor)].parent;
  }
  return cursor == from_index;
}

std::string to_edge_list_json(const BranchGraph& graph) {
  nlohmann::ordered_json doc;
  doc["vertices"] = nlohmann::ordered_json::array();
  for (const auto& vertex : graph.vertices) {
    nlohmann::ordered_json v;
    v["id"] = vertex.id.text();
    v["realized"] = vertex.realized;
    doc["vertices"].push_back(v);
  }
  doc["edges"] = nlohmann::ordered_json::array();
  for (const auto& edge : graph.edges) {
    nlohmann::ordered_json e;
    e["from"] = graph.vertices[static_cast<std::size_t>(edge.from)].id.text();
    e["to"] = graph.vertices[static_cast<std::size_t>(edge.to)].id.text();
    e["weight"] = edge.weight;
    doc["edges"].push_back(e);
  }
  doc["roots"] = nlohmann::ordered_json::array();
  for (const int root : graph.roots) {
    doc["roots"].push_back(graph.vertices[static_cast<std::size_t>(root)].id.text());
  }
  return doc.dump(2) + "\n";
}

std::string to_dot(const BranchGraph& graph) {
  std::string out = "digraph branches {\n  rankdir=LR;\n";
  for (const auto& vertex : graph.vertices) {
    out += "  \"" + vertex.id.text() + "\"";
    if (vertex.realized) {
      out += " [style=bold]";
    }
    out += ";\n";
  }
  for (const auto& edge : graph.edges) {
    out += "  \"" + graph.vertices[static_cast<std::size_t>(edge.from)].id.text() +
           "\" -> \"" + graph.vertices[static_cast<std::size_t>(edge.to)].id.text() +
           "\" [label=\"" + format_double(edge.weight) + "\"];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace branchlab
