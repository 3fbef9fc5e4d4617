#include "quiverforge/quiver.hpp"

#include <algorithm>
#include <stdexcept>

namespace qf {

void Graph::validate() const {
    std::set<int> ids;
    for (const auto& v : vertices)
        if (!ids.insert(v.id).second)
            throw std::invalid_argument("duplicate graph vertex id " + std::to_string(v.id));
    for (const auto& e : edges)
        if (!ids.count(e.end_a) || !ids.count(e.end_b))
            throw std::invalid_argument("edge endpoint references missing vertex");
}

bool Graph::default_euler_data() const {
    for (const auto& v : vertices)
        if (v.component_euler != 2) return false;
    for (const auto& e : edges)
        if (e.intersection_euler != 1 || e.jump_degree != 1 || e.codim != 2) return false;
    return true;
}

bool Graph::has_vertex(int id) const {
    for (const auto& v : vertices)
        if (v.id == id) return true;
    return false;
}

void Quiver::validate() const {
    std::set<int> vids;
    for (const auto& v : vertices)
        if (!vids.insert(v.id).second)
            throw std::invalid_argument("duplicate quiver vertex id " + std::to_string(v.id));
    std::set<int> aids;
    for (const auto& a : arrows) {
        if (!aids.insert(a.id).second)
            throw std::invalid_argument("duplicate arrow id " + std::to_string(a.id));
        if (!vids.count(a.tail) || !vids.count(a.head))
            throw std::invalid_argument("arrow endpoint references missing vertex");
    }
}

bool Quiver::has_vertex(int id) const {
    for (const auto& v : vertices)
        if (v.id == id) return true;
    return false;
}

const QuiverVertex& Quiver::vertex(int id) const {
    for (const auto& v : vertices)
        if (v.id == id) return v;
    throw std::out_of_range("no quiver vertex with id " + std::to_string(id));
}

const Arrow& Quiver::arrow(int id) const {
    for (const auto& a : arrows)
        if (a.id == id) return a;
    throw std::out_of_range("no arrow with id " + std::to_string(id));
}

const Arrow* Quiver::arrow_by_name(const std::string& name) const {
    for (const auto& a : arrows)
        if (a.name == name) return &a;
    return nullptr;
}

int Quiver::max_vertex_id() const {
    int m = -1;
    for (const auto& v : vertices) m = std::max(m, v.id);
    return m;
}

int Quiver::max_arrow_id() const {
    int m = -1;
    for (const auto& a : arrows) m = std::max(m, a.id);
    return m;
}

std::vector<int> Quiver::arrows_from(int tail) const {
    std::vector<int> out;
    for (const auto& a : arrows)
        if (a.tail == tail) out.push_back(a.id);
    return out;
}

std::vector<int> Quiver::arrows_into(int head) const {
    std::vector<int> out;
    for (const auto& a : arrows)
        if (a.head == head) out.push_back(a.id);
    return out;
}

DoubleQuiver double_quiver(const Graph& g, const std::vector<bool>& orientation) {
    g.validate();
    if (!orientation.empty() && orientation.size() != g.edges.size())
        throw std::invalid_argument("orientation must choose a direction per edge");
    DoubleQuiver out;
    for (const auto& v : g.vertices) out.quiver.vertices.push_back({v.id, false, ""});
    int next = 0;
    for (std::size_t k = 0; k < g.edges.size(); ++k) {
        const auto& e = g.edges[k];
        // positive arrow direction: explicit choice, else lower id -> higher id
        bool a_to_b = orientation.empty() ? (e.end_a <= e.end_b) : orientation[k];
        int tail = a_to_b ? e.end_a : e.end_b;
        int head = a_to_b ? e.end_b : e.end_a;
        int plus = next++, minus = next++;
        out.quiver.arrows.push_back({plus, tail, head, 0, "e" + std::to_string(k)});
        out.quiver.arrows.push_back({minus, head, tail, 0, "e" + std::to_string(k) + "*"});
        out.epsilon[plus] = +1;
        out.epsilon[minus] = -1;
        out.reverse[plus] = minus;
        out.reverse[minus] = plus;
    }
    return out;
}

FramedQuiver frame_quiver(const Quiver& q, const std::set<int>& framed_vertices) {
    q.validate();
    FramedQuiver out;
    out.quiver = q;
    int nv = q.max_vertex_id() + 1;
    int na = q.max_arrow_id() + 1;
    for (int v : framed_vertices) {
        if (q.vertex(v).framing)
            throw std::invalid_argument("cannot frame a framing vertex");
        int fv = nv++;
        out.quiver.vertices.push_back({fv, true, "f" + std::to_string(v)});
        int iv = na++, jv = na++;
        out.quiver.arrows.push_back({iv, fv, v, 0, "i" + std::to_string(v)});
        out.quiver.arrows.push_back({jv, v, fv, 0, "j" + std::to_string(v)});
        out.framing_vertex[v] = fv;
        out.i_arrow[v] = iv;
        out.j_arrow[v] = jv;
    }
    return out;
}

FramedDoubleQuiver frame_double_quiver(const DoubleQuiver& dq,
                                       const std::set<int>& framed_vertices) {
    FramedQuiver fq = frame_quiver(dq.quiver, framed_vertices);
    return {std::move(fq.quiver), dq.epsilon, dq.reverse, std::move(fq.i_arrow),
            std::move(fq.j_arrow)};
}

} // namespace qf
