#pragma once

#include "quiverforge/scalar.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace qf {

// Plumbing graph: vertices carry an Euler characteristic (default: spheres),
// edges carry intersection data (default: transverse points in dimension two).
struct GraphVertex {
    int id = 0;
    int component_euler = 2;
};
struct GraphEdge {
    int end_a = 0, end_b = 0;
    int intersection_euler = 1;
    int jump_degree = 1;
    int codim = 2;
};
struct Graph {
    std::vector<GraphVertex> vertices;
    std::vector<GraphEdge> edges;

    void validate() const; // throws std::invalid_argument on dangling edges / dup ids
    bool default_euler_data() const;
    bool has_vertex(int id) const;
};

// Directed quiver.  Arrow degree is cohomological (0 for ordinary arrows,
// -1 for the shifted loops of the extended dg algebra).
struct QuiverVertex {
    int id = 0;
    bool framing = false;
    std::string name; // optional label for reports
};
struct Arrow {
    int id = 0;
    int tail = 0, head = 0; // tail --arrow--> head
    int degree = 0;
    std::string name;
};
struct Quiver {
    std::vector<QuiverVertex> vertices;
    std::vector<Arrow> arrows;

    void validate() const;
    bool has_vertex(int id) const;
    const QuiverVertex& vertex(int id) const;
    const Arrow& arrow(int id) const;
    const Arrow* arrow_by_name(const std::string& name) const;
    int max_vertex_id() const;
    int max_arrow_id() const;
    // arrow ids in declaration order with the given endpoint
    std::vector<int> arrows_from(int tail) const;
    std::vector<int> arrows_into(int head) const;
};

// vertexId -> multiplicity / rational weight
using DimensionVector = std::map<int, long>;
using Weight = std::map<int, Rat>;

// Double quiver: each edge becomes a pair of opposite arrows a, ā with
// ε(a) = +1 on the chosen orientation Ω and ε(ā) = -1.  ε is data, not a
// canonical choice.  `reverse` pairs each arrow with its double.
struct DoubleQuiver {
    Quiver quiver;
    std::map<int, int> epsilon; // arrowId -> +1 / -1
    std::map<int, int> reverse; // arrowId -> opposite arrowId
};
// orientation[k] = true: edge k's positive arrow runs end_a -> end_b.
// Default (empty): lower id -> higher id; self-edges take the first copy.
DoubleQuiver double_quiver(const Graph& g, const std::vector<bool>& orientation = {});

// Framing: for each selected vertex v, add a framing vertex f_v and arrows
// i_v: f_v -> v, j_v: v -> f_v.
struct FramedQuiver {
    Quiver quiver;
    std::map<int, int> framing_vertex; // v -> f_v
    std::map<int, int> i_arrow;        // v -> id of i_v
    std::map<int, int> j_arrow;        // v -> id of j_v
};
FramedQuiver frame_quiver(const Quiver& q, const std::set<int>& framed_vertices);

// Framed double quiver: the shared context for moment maps, preprojective
// relations and monads.  epsilon/reverse cover the doubled (non-framing)
// arrows; i_arrow/j_arrow the framing pairs per framed base vertex.
struct FramedDoubleQuiver {
    Quiver quiver;
    std::map<int, int> epsilon;
    std::map<int, int> reverse;
    std::map<int, int> i_arrow;
    std::map<int, int> j_arrow;
};
FramedDoubleQuiver frame_double_quiver(const DoubleQuiver& dq,
                                       const std::set<int>& framed_vertices);

} // namespace qf
