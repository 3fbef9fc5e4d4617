#include "quiverforge/stack.hpp"

#include "quiverforge/rewrite.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qf {

namespace {

OpenSet normalized_open(OpenSet o) {
    std::sort(o.begin(), o.end());
    o.erase(std::unique(o.begin(), o.end()), o.end());
    return o;
}

bool open_subset(const OpenSet& a, const OpenSet& b) { // a contained in b, both sorted
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::string open_str(const OpenSet& o) {
    std::ostringstream os;
    os << '{';
    for (std::size_t k = 0; k < o.size(); ++k) os << (k ? "," : "") << o[k];
    os << '}';
    return os.str();
}

std::string arrow_name(const Quiver& q, int id) {
    const Arrow& a = q.arrow(id);
    return a.name.empty() ? "#" + std::to_string(id) : a.name;
}

// ------------------------------------------------------------ materialization

struct LocUnit {
    bool matrix = false;
    LocalizedMatrix mat;
    LocalizedElement scalar;
    std::string key;                  // dedupe key within the chart
    std::vector<OpenSet> declared_on;
    std::vector<int> arrows;          // inverse arrows this unit adjoins
    std::size_t rel_begin = 0, rel_end = 0;   // slice of full.relations()
    std::size_t pair_begin = 0, pair_end = 0; // slice of full.inverse_pairs()
};

struct ChartLocal {
    QuiverAlgebra full; // every designation adjoined, in canonical order
    std::vector<LocUnit> units;
};

std::string matrix_unit_key(const LocalizedMatrix& m, const Quiver& q) {
    std::ostringstream os;
    os << "m:" << m.name_prefix << '|';
    for (const auto& row : m.entries) {
        for (const auto& e : row) os << to_string(e, q) << ',';
        os << ';';
    }
    return os.str();
}

// Collect the distinct designations of one chart in declaration order and
// adjoin them all: matrix blocks first, then one scalar pass.  Arrow ids and
// relation slices are therefore identical for every open of the chart.
ChartLocal build_chart_local(const StackDescriptor& s, int chart) {
    const QuiverAlgebra& base = s.charts.at(chart);
    std::vector<LocUnit> units;
    std::map<std::string, std::size_t> seen;
    for (const auto& [key, des] : s.localizations) {
        if (key.first != chart) continue;
        const OpenSet open = normalized_open(key.second);
        auto note = [&](LocUnit u) {
            auto it = seen.find(u.key);
            if (it == seen.end()) {
                seen.emplace(u.key, units.size());
                u.declared_on.push_back(open);
                units.push_back(std::move(u));
            } else {
                units[it->second].declared_on.push_back(open);
            }
        };
        for (const auto& m : des.matrices) {
            LocUnit u;
            u.matrix = true;
            u.mat = m;
            u.key = matrix_unit_key(m, base.quiver());
            note(std::move(u));
        }
        for (const auto& e : des.scalars) {
            LocUnit u;
            u.scalar = e;
            u.key = "s:" + to_string(e.element, base.quiver());
            note(std::move(u));
        }
    }
    std::stable_partition(units.begin(), units.end(), [](const LocUnit& u) { return u.matrix; });

    ChartLocal out;
    QuiverAlgebra cur = base;
    std::size_t k = 0;
    for (; k < units.size() && units[k].matrix; ++k) {
        LocUnit& u = units[k];
        u.rel_begin = cur.relations().size();
        u.pair_begin = cur.inverse_pairs().size();
        Localization loc = localize_matrix(cur, u.mat.entries, u.mat.name_prefix);
        for (const auto& row : loc.gamma) u.arrows.insert(u.arrows.end(), row.begin(), row.end());
        u.rel_end = loc.algebra.relations().size();
        u.pair_end = loc.algebra.inverse_pairs().size();
        cur = std::move(loc.algebra);
    }
    if (k < units.size()) {
        std::vector<LocalizedElement> batch;
        for (std::size_t j = k; j < units.size(); ++j) batch.push_back(units[j].scalar);
        const std::size_t rel0 = cur.relations().size();
        const std::size_t pair0 = cur.inverse_pairs().size();
        Localization loc = localize_scalar(cur, batch);
        for (std::size_t j = k; j < units.size(); ++j) {
            LocUnit& u = units[j];
            u.arrows = {loc.inverse_arrows[j - k]};
            u.rel_begin = rel0 + 2 * (j - k);
            u.rel_end = u.rel_begin + 2;
            u.pair_begin = pair0 + (j - k);
            u.pair_end = u.pair_begin + 1;
        }
        cur = std::move(loc.algebra);
    }
    out.full = std::move(cur);
    out.units = std::move(units);
    return out;
}

QuiverAlgebra subset_algebra(const QuiverAlgebra& base, const ChartLocal& cl,
                             const std::vector<bool>& active) {
    if (std::all_of(active.begin(), active.end(), [](bool b) { return b; })) return cl.full;
    std::set<int> allowed;
    for (const auto& ar : base.quiver().arrows) allowed.insert(ar.id);
    for (std::size_t k = 0; k < cl.units.size(); ++k)
        if (active[k]) allowed.insert(cl.units[k].arrows.begin(), cl.units[k].arrows.end());
    Quiver q;
    q.vertices = cl.full.quiver().vertices;
    for (const auto& ar : cl.full.quiver().arrows)
        if (allowed.count(ar.id)) q.arrows.push_back(ar);
    std::vector<AlgebraElement> rels(base.relations());
    std::vector<std::pair<int, int>> pairs(base.inverse_pairs());
    const auto& frels = cl.full.relations();
    const auto& fpairs = cl.full.inverse_pairs();
    for (std::size_t k = 0; k < cl.units.size(); ++k) {
        if (!active[k]) continue;
        const LocUnit& u = cl.units[k];
        rels.insert(rels.end(), frels.begin() + u.rel_begin, frels.begin() + u.rel_end);
        pairs.insert(pairs.end(), fpairs.begin() + u.pair_begin, fpairs.begin() + u.pair_end);
    }
    std::map<int, int> weights;
    for (const auto& ar : q.arrows)
        if (cl.full.arrow_weight(ar.id) != 1) weights[ar.id] = int(cl.full.arrow_weight(ar.id));
    return QuiverAlgebra(std::move(q), std::move(rels), std::move(pairs), std::move(weights));
}

struct Instance {
    const StackDescriptor* d;
    std::vector<ChartLocal> chart_local;
    std::map<std::pair<int, std::vector<bool>>, QuiverAlgebra> cache;

    explicit Instance(const StackDescriptor& s) : d(&s) {
        chart_local.reserve(s.charts.size());
        for (std::size_t c = 0; c < s.charts.size(); ++c)
            chart_local.push_back(build_chart_local(s, int(c)));
    }

    std::vector<bool> active_mask(int chart, const OpenSet& open) const {
        const ChartLocal& cl = chart_local.at(chart);
        std::vector<bool> mask(cl.units.size(), false);
        for (std::size_t k = 0; k < cl.units.size(); ++k)
            for (const OpenSet& o : cl.units[k].declared_on)
                if (open_subset(o, open)) {
                    mask[k] = true;
                    break;
                }
        return mask;
    }

    // not thread safe: materialize everything before parallel sections
    const QuiverAlgebra& local(int chart, const OpenSet& open) {
        auto key = std::make_pair(chart, active_mask(chart, open));
        auto it = cache.find(key);
        if (it == cache.end())
            it = cache
                     .emplace(key, subset_algebra(d->charts.at(chart), chart_local.at(chart),
                                                  key.second))
                     .first;
        return it->second;
    }
};

SymbolicRep identity_rep(const QuiverAlgebra& a) {
    SymbolicRep g;
    for (const auto& vx : a.quiver().vertices) {
        g.vertex_map[vx.id] = vx.id;
        g.rank[vx.id] = 1;
    }
    for (const auto& ar : a.quiver().arrows)
        g.arrow_map[ar.id] = {{AlgebraElement::term(PathMonomial::word({ar.id}), Scalar::one())}};
    return g;
}

// ------------------------------------------------------------- gerbe plumbing

long rank_of(const SymbolicRep* g, int v) { return g ? g->rank.at(v) : 1; }
int vmap_of(const SymbolicRep* g, int v) { return g ? g->vertex_map.at(v) : v; }

struct GerbeSlot {
    ElementMatrix value, inverse;
};

std::string gerbe_name(int i, int j, int k, int v) {
    std::ostringstream os;
    os << "c[" << i << ',' << j << ',' << k << "] at v" << v;
    return os.str();
}

// c_ijk at vertex v of chart k.  Null reps stand for identity transitions
// (equal chart indices).  Missing terms default to the identity when the
// composite and direct images agree in vertex and rank.
GerbeSlot gerbe_slot(const StackDescriptor& d, int i, int j, int k, int v,
                     const SymbolicRep* gij, const SymbolicRep* gjk, const SymbolicRep* gik,
                     std::string& err) {
    const int w = vmap_of(gjk, v);
    const long rows = rank_of(gjk, v) * rank_of(gij, w);
    const long cols = rank_of(gik, v);
    const int w_comp = vmap_of(gij, w);
    const int w_dir = vmap_of(gik, v);
    auto it = d.gerbes.find({i, j, k, v});
    if (it != d.gerbes.end()) {
        const GerbeTerm& g = it->second;
        if (long(g.value.size()) != rows || (rows > 0 && long(g.value.front().size()) != cols)) {
            err = "gerbe " + gerbe_name(i, j, k, v) + " has the wrong shape";
            return {};
        }
        if (long(g.inverse.size()) != cols || (cols > 0 && long(g.inverse.front().size()) != rows)) {
            err = "gerbe " + gerbe_name(i, j, k, v) + " inverse has the wrong shape";
            return {};
        }
        return {g.value, g.inverse};
    }
    if (rows != cols || w_comp != w_dir) {
        err = "missing gerbe " + gerbe_name(i, j, k, v) + " (composite and direct images differ)";
        return {};
    }
    ElementMatrix id = el_identity(rows, w_comp);
    return {id, id};
}

ElementMatrix blow_up(const ElementMatrix& m, long r) {
    if (r == 1) return m;
    const long R = long(m.size()), C = R ? long(m.front().size()) : 0;
    ElementMatrix out(static_cast<std::size_t>(r * R),
                      std::vector<AlgebraElement>(static_cast<std::size_t>(r * C)));
    for (long b = 0; b < r; ++b)
        for (long p = 0; p < R; ++p)
            for (long q = 0; q < C; ++q) out[b * R + p][b * C + q] = m[p][q];
    return out;
}

// Entrywise image of a matrix of source elements, assembled blockwise.
ElementMatrix apply_matrix(const SymbolicRep& g, const ElementMatrix& m, const Quiver& src,
                           const Quiver& tgt, std::string& err) {
    const long R = long(m.size()), C = R ? long(m.front().size()) : 0;
    std::vector<long> row_rank(R, -1), col_rank(C, -1);
    std::vector<ElementMatrix> blocks(std::size_t(R * C));
    for (long p = 0; p < R; ++p)
        for (long q = 0; q < C; ++q) {
            const AlgebraElement& e = m[p][q];
            if (e.is_zero()) continue;
            auto t = homogeneous_type(e, src);
            if (!t) {
                err = "matrix entry is not vertex-homogeneous";
                return {};
            }
            blocks[std::size_t(p * C + q)] = apply_symbolic(g, e, src, tgt);
            row_rank[p] = g.rank.at(t->head);
            col_rank[q] = g.rank.at(t->tail);
        }
    for (long p = 0; p < R; ++p)
        if (row_rank[p] < 0) {
            err = "cannot type a zero matrix row";
            return {};
        }
    for (long q = 0; q < C; ++q)
        if (col_rank[q] < 0) {
            err = "cannot type a zero matrix column";
            return {};
        }
    std::vector<long> roff(R + 1, 0), coff(C + 1, 0);
    for (long p = 0; p < R; ++p) roff[p + 1] = roff[p] + row_rank[p];
    for (long q = 0; q < C; ++q) coff[q + 1] = coff[q] + col_rank[q];
    ElementMatrix out(static_cast<std::size_t>(roff[R]),
                      std::vector<AlgebraElement>(static_cast<std::size_t>(coff[C])));
    for (long p = 0; p < R; ++p)
        for (long q = 0; q < C; ++q) {
            const ElementMatrix& blk = blocks[std::size_t(p * C + q)];
            if (blk.empty()) continue;
            for (long r = 0; r < row_rank[p]; ++r)
                for (long c = 0; c < col_rank[q]; ++c) out[roff[p] + r][coff[q] + c] = blk[r][c];
        }
    return out;
}

bool matrix_shape_eq(const ElementMatrix& a, const ElementMatrix& b) {
    if (a.size() != b.size()) return false;
    if (!a.empty() && a.front().size() != b.front().size()) return false;
    return true;
}

// first entry of a - b that does not reduce to zero; nullopt when all do
std::optional<std::pair<int, int>> first_unreduced(const ElementMatrix& a, const ElementMatrix& b,
                                                   const RuleSet& rules) {
    for (std::size_t r = 0; r < a.size(); ++r)
        for (std::size_t c = 0; c < a[r].size(); ++c)
            if (!rules.reduce(a[r][c] - b[r][c]).is_zero()) return std::make_pair(int(r), int(c));
    return std::nullopt;
}

// --------------------------------------------------------------------- tasks

struct Task {
    enum Kind { Pair, Triple, Tetra, GerbeInv, FramedTrivial } kind = Pair;
    std::string open_name;
    int i = -1, j = -1, k = -1, l = -1, vertex = -1;
    const QuiverAlgebra* src = nullptr; // source chart algebra on the open
    const QuiverAlgebra* mid = nullptr; // middle chart algebra (triple, tetra)
    const QuiverAlgebra* tgt = nullptr; // target chart algebra
    const SymbolicRep* gij = nullptr;
    const SymbolicRep* gjk = nullptr;
    const SymbolicRep* gik = nullptr;
    const SymbolicRep* gkl = nullptr;
    const SymbolicRep* gil = nullptr;
    const SymbolicRep* gjl = nullptr;
    std::shared_ptr<SymbolicRep> owned; // identity reps live here
    std::shared_ptr<const RuleSet> rules;
    const GerbeTerm* gerbe = nullptr;
};

std::vector<StackCheck> run_pair(const Task& t, const StackDescriptor&, int effort) {
    StackCheck c;
    c.label = "transition[" + std::to_string(t.j) + "->" + std::to_string(t.i) + "] open" +
              t.open_name;
    try {
        SymbolicCheck sc = check_symbolic_rep(*t.gij, *t.src, *t.tgt, effort);
        c.proved = sc.all_proved;
        if (!sc.all_proved) {
            std::ostringstream os;
            os << "unresolved relation images:";
            for (std::size_t k = 0; k < sc.unresolved.size() && k < 3; ++k)
                os << " rel#" << sc.unresolved[k][0] << "@(" << sc.unresolved[k][1] << ','
                   << sc.unresolved[k][2] << ')';
            if (sc.unresolved.size() > 3) os << " ...";
            c.detail = os.str();
        }
    } catch (const std::exception& e) {
        c.proved = false;
        c.detail = std::string("error: ") + e.what();
    }
    return {c};
}

std::vector<StackCheck> run_triple(const Task& t, const StackDescriptor& d, int) {
    std::vector<StackCheck> out;
    const Quiver& qs = t.src->quiver();
    const Quiver& qi = t.tgt->quiver();
    std::ostringstream pre;
    pre << "cocycle[" << t.i << ',' << t.j << ',' << t.k << "] ";
    SymbolicRep composite;
    try {
        composite = compose_symbolic(*t.gij, *t.gjk, qs, t.mid->quiver(), qi);
    } catch (const std::exception& e) {
        out.push_back({pre.str() + "compose open" + t.open_name, false,
                       std::string("error: ") + e.what()});
        return out;
    }
    for (const auto& ar : qs.arrows) {
        StackCheck c;
        const std::string name = arrow_name(qs, ar.id);
        c.label = pre.str() + name + " open" + t.open_name;
        try {
            const ElementMatrix& lhs = composite.arrow_map.at(ar.id);
            std::string err;
            GerbeSlot ch = gerbe_slot(d, t.i, t.j, t.k, ar.head, t.gij, t.gjk, t.gik, err);
            GerbeSlot ct;
            if (err.empty()) ct = gerbe_slot(d, t.i, t.j, t.k, ar.tail, t.gij, t.gjk, t.gik, err);
            if (!err.empty()) {
                c.detail = err;
                out.push_back(c);
                continue;
            }
            const ElementMatrix& dir = t.gik->arrow_map.at(ar.id);
            ElementMatrix rhs = el_mul(qi, el_mul(qi, ch.value, dir), ct.inverse);
            if (!matrix_shape_eq(lhs, rhs)) {
                c.detail = "shape mismatch between composite and conjugated images";
                out.push_back(c);
                continue;
            }
            auto bad = first_unreduced(lhs, rhs, *t.rules);
            c.proved = !bad.has_value();
            if (bad) {
                std::ostringstream os;
                os << "G(" << t.i << ',' << t.j << ")∘G(" << t.j << ',' << t.k << ")(" << name
                   << ") differs from c·G(" << t.i << ',' << t.k << ")(" << name
                   << ")·c^-1 at entry (" << bad->first << ',' << bad->second << ')';
                c.detail = os.str();
            }
        } catch (const std::exception& e) {
            c.proved = false;
            c.detail = std::string("error: ") + e.what();
        }
        out.push_back(c);
    }
    return out;
}

std::vector<StackCheck> run_tetra(const Task& t, const StackDescriptor& d, int) {
    std::vector<StackCheck> out;
    const Quiver& ql = t.src->quiver();
    const Quiver& qi = t.tgt->quiver();
    for (const auto& vx : ql.vertices) {
        StackCheck c;
        std::ostringstream lab;
        lab << "tetrahedron[" << t.i << ',' << t.j << ',' << t.k << ',' << t.l << "] v" << vx.id
            << " open" << t.open_name;
        c.label = lab.str();
        try {
            std::string err;
            const int w = vmap_of(t.gkl, vx.id);
            const long r = rank_of(t.gkl, vx.id);
            GerbeSlot c1 = gerbe_slot(d, t.i, t.j, t.k, w, t.gij, t.gjk, t.gik, err);
            GerbeSlot c2, c3, c4;
            if (err.empty()) c2 = gerbe_slot(d, t.i, t.k, t.l, vx.id, t.gik, t.gkl, t.gil, err);
            if (err.empty()) c3 = gerbe_slot(d, t.j, t.k, t.l, vx.id, t.gjk, t.gkl, t.gjl, err);
            if (err.empty()) c4 = gerbe_slot(d, t.i, t.j, t.l, vx.id, t.gij, t.gjl, t.gil, err);
            ElementMatrix lhs, rhs;
            if (err.empty()) {
                lhs = el_mul(qi, blow_up(c1.value, r), c2.value);
                ElementMatrix gc3 = apply_matrix(*t.gij, c3.value, t.mid->quiver(), qi, err);
                if (err.empty()) rhs = el_mul(qi, gc3, c4.value);
            }
            if (!err.empty()) {
                c.detail = err;
                out.push_back(c);
                continue;
            }
            if (!matrix_shape_eq(lhs, rhs)) {
                c.detail = "shape mismatch between the two gerbe products";
                out.push_back(c);
                continue;
            }
            auto bad = first_unreduced(lhs, rhs, *t.rules);
            c.proved = !bad.has_value();
            if (bad) {
                std::ostringstream os;
                os << "c(" << t.i << ',' << t.j << ',' << t.k << ")(G(" << t.k << ',' << t.l
                   << ")(v" << vx.id << "))·c(" << t.i << ',' << t.k << ',' << t.l << ") != G("
                   << t.i << ',' << t.j << ")(c(" << t.j << ',' << t.k << ',' << t.l << "))·c("
                   << t.i << ',' << t.j << ',' << t.l << ") at entry (" << bad->first << ','
                   << bad->second << ')';
                c.detail = os.str();
            }
        } catch (const std::exception& e) {
            c.proved = false;
            c.detail = std::string("error: ") + e.what();
        }
        out.push_back(c);
    }
    return out;
}

// row/column anchor vertices of a typed element matrix; -1 when untypeable
std::vector<int> row_vertices(const ElementMatrix& m, const Quiver& q) {
    std::vector<int> out(m.size(), -1);
    for (std::size_t r = 0; r < m.size(); ++r)
        for (const auto& e : m[r]) {
            if (e.is_zero()) continue;
            if (auto t = homogeneous_type(e, q)) out[r] = t->head;
            break;
        }
    return out;
}

std::vector<int> col_vertices(const ElementMatrix& m, const Quiver& q) {
    std::vector<int> out(m.empty() ? 0 : m.front().size(), -1);
    for (std::size_t c = 0; c < out.size(); ++c)
        for (std::size_t r = 0; r < m.size(); ++r) {
            const AlgebraElement& e = m[r][c];
            if (e.is_zero()) continue;
            if (auto t = homogeneous_type(e, q)) out[c] = t->tail;
            break;
        }
    return out;
}

bool product_is_identity(const ElementMatrix& a, const ElementMatrix& b,
                         const std::vector<int>& diag_vertices, const Quiver& q,
                         const RuleSet& rules, std::string& err) {
    ElementMatrix prod = el_mul(q, a, b);
    for (std::size_t r = 0; r < prod.size(); ++r)
        for (std::size_t c = 0; c < prod[r].size(); ++c) {
            AlgebraElement want;
            if (r == c) {
                if (diag_vertices[r] < 0) {
                    err = "cannot type the witness diagonal";
                    return false;
                }
                want = AlgebraElement::unit(diag_vertices[r]);
            }
            if (!rules.reduce(prod[r][c] - want).is_zero()) {
                std::ostringstream os;
                os << "entry (" << r << ',' << c << ") does not reduce to "
                   << (r == c ? "the unit" : "zero");
                err = os.str();
                return false;
            }
        }
    return true;
}

std::vector<StackCheck> run_gerbe_inv(const Task& t, const StackDescriptor&, int) {
    StackCheck c;
    std::ostringstream lab;
    lab << "gerbe[" << t.i << ',' << t.j << ',' << t.k << "] v" << t.vertex << " invertible";
    c.label = lab.str();
    try {
        const Quiver& q = t.tgt->quiver();
        const ElementMatrix& v = t.gerbe->value;
        const ElementMatrix& w = t.gerbe->inverse;
        std::string err;
        bool ok = product_is_identity(v, w, row_vertices(v, q), q, *t.rules, err);
        if (ok) ok = product_is_identity(w, v, col_vertices(v, q), q, *t.rules, err);
        c.proved = ok;
        if (!ok) c.detail = err;
    } catch (const std::exception& e) {
        c.proved = false;
        c.detail = std::string("error: ") + e.what();
    }
    return {c};
}

std::vector<StackCheck> run_framed_trivial(const Task& t, const StackDescriptor&, int) {
    StackCheck c;
    std::ostringstream lab;
    lab << "gerbe[" << t.i << ',' << t.j << ',' << t.k << "] v" << t.vertex << " framing-trivial";
    c.label = lab.str();
    try {
        const Quiver& q = t.tgt->quiver();
        const ElementMatrix& v = t.gerbe->value;
        if (v.size() != (v.empty() ? 0 : v.front().size())) {
            c.detail = "framing gerbe is not square";
            return {c};
        }
        for (std::size_t r = 0; r < v.size(); ++r)
            for (std::size_t s = 0; s < v[r].size(); ++s) {
                AlgebraElement want;
                if (r == s) {
                    auto ty = homogeneous_type(v[r][s], q);
                    if (!ty || ty->head != ty->tail) {
                        c.detail = "framing gerbe diagonal is not a loop element";
                        return {c};
                    }
                    want = AlgebraElement::unit(ty->head);
                }
                if (!t.rules->reduce(v[r][s] - want).is_zero()) {
                    c.detail = "framing vertex carries a nontrivial gerbe";
                    return {c};
                }
            }
        c.proved = true;
    } catch (const std::exception& e) {
        c.proved = false;
        c.detail = std::string("error: ") + e.what();
    }
    return {c};
}

} // namespace

QuiverAlgebra localized_chart(const StackDescriptor& s, int chart, const OpenSet& open) {
    ChartLocal cl = build_chart_local(s, chart);
    std::vector<bool> mask(cl.units.size(), false);
    const OpenSet o = normalized_open(open);
    for (std::size_t k = 0; k < cl.units.size(); ++k)
        for (const OpenSet& u : cl.units[k].declared_on)
            if (open_subset(u, o)) {
                mask[k] = true;
                break;
            }
    return subset_algebra(s.charts.at(chart), cl, mask);
}

std::size_t StackReport::proved_count() const {
    std::size_t n = 0;
    for (const auto& c : checks)
        if (c.proved) ++n;
    return n;
}

std::string StackReport::summary() const {
    std::ostringstream os;
    os << (all_proved ? "PASS" : "FAIL") << ": " << proved_count() << '/' << checks.size()
       << " checks proved, " << errors.size() << " errors\n";
    for (const auto& e : errors) os << "ERROR " << e << '\n';
    for (const auto& c : checks)
        if (!c.proved) os << "FAIL " << c.label << (c.detail.empty() ? "" : ": " + c.detail) << '\n';
    return os.str();
}

StackReport verify_stack(const StackDescriptor& s, int effort_degree) {
    StackReport rep;
    Instance inst(s);

    // normalized declared opens, deduplicated, declaration order
    std::vector<OpenSet> opens;
    for (const OpenSet& raw : s.opens) {
        OpenSet o = normalized_open(raw);
        bool bad = false;
        for (int c : o)
            if (c < 0 || c >= int(s.charts.size())) {
                rep.errors.push_back("open " + open_str(o) + " names a missing chart");
                bad = true;
                break;
            }
        if (!bad && std::find(opens.begin(), opens.end(), o) == opens.end()) opens.push_back(o);
    }

    auto find_rep = [&](int i, int j) -> const SymbolicRep* {
        auto it = s.transitions.find({i, j});
        return it == s.transitions.end() ? nullptr : &it->second;
    };
    for (const auto& [key, g] : s.transitions)
        if (key.first == key.second)
            rep.errors.push_back("transition G(" + std::to_string(key.first) + ',' +
                                 std::to_string(key.second) + ") must stay the implicit identity");

    std::vector<Task> tasks;
    std::set<std::pair<int, int>> missing_noted;
    for (const OpenSet& open : opens) {
        if (open.size() < 2) continue;
        const std::string oname = open_str(open);
        // ordered pairs
        for (int i : open)
            for (int j : open) {
                if (i == j) continue;
                const SymbolicRep* g = find_rep(i, j);
                if (!g) {
                    if (missing_noted.insert({i, j}).second)
                        rep.errors.push_back("missing transition G(" + std::to_string(i) + ',' +
                                             std::to_string(j) + ") on open " + oname);
                    continue;
                }
                Task t;
                t.kind = Task::Pair;
                t.open_name = oname;
                t.i = i;
                t.j = j;
                t.gij = g;
                t.src = &inst.local(j, open);
                t.tgt = &inst.local(i, open);
                tasks.push_back(std::move(t));
            }
        // ordered triples (i,j,k), i != j, j != k; k == i closes a loop
        for (int i : open)
            for (int j : open)
                for (int k : open) {
                    if (i == j || j == k) continue;
                    const SymbolicRep* gij = find_rep(i, j);
                    const SymbolicRep* gjk = find_rep(j, k);
                    if (!gij || !gjk) continue;
                    Task t;
                    t.kind = Task::Triple;
                    t.open_name = oname;
                    t.i = i;
                    t.j = j;
                    t.k = k;
                    t.gij = gij;
                    t.gjk = gjk;
                    t.src = &inst.local(k, open);
                    t.mid = &inst.local(j, open);
                    t.tgt = &inst.local(i, open);
                    if (k == i) {
                        t.owned = std::make_shared<SymbolicRep>(identity_rep(*t.src));
                        t.gik = t.owned.get();
                    } else {
                        t.gik = find_rep(i, k);
                        if (!t.gik) continue;
                    }
                    tasks.push_back(std::move(t));
                }
        // ordered quadruples with distinct neighbours
        for (int i : open)
            for (int j : open)
                for (int k : open)
                    for (int l : open) {
                        if (i == j || j == k || k == l) continue;
                        Task t;
                        t.kind = Task::Tetra;
                        t.open_name = oname;
                        t.i = i;
                        t.j = j;
                        t.k = k;
                        t.l = l;
                        t.gij = find_rep(i, j);
                        t.gjk = (j == k) ? nullptr : find_rep(j, k);
                        t.gkl = find_rep(k, l);
                        t.gik = (i == k) ? nullptr : find_rep(i, k);
                        t.gil = (i == l) ? nullptr : find_rep(i, l);
                        t.gjl = (j == l) ? nullptr : find_rep(j, l);
                        if (!t.gij || !t.gkl) continue;
                        if (j != k && !t.gjk) continue;
                        if (i != k && !t.gik) continue;
                        if (i != l && !t.gil) continue;
                        if (j != l && !t.gjl) continue;
                        t.src = &inst.local(l, open);
                        t.mid = &inst.local(j, open);
                        t.tgt = &inst.local(i, open);
                        tasks.push_back(std::move(t));
                    }
    }

    // declared gerbe witnesses, checked on the first open seeing all three charts
    for (const auto& [key, term] : s.gerbes) {
        const auto [i, j, k, v] = key;
        const OpenSet* home = nullptr;
        for (const OpenSet& open : opens) {
            OpenSet need = normalized_open({i, j, k});
            if (open_subset(need, open)) {
                home = &open;
                break;
            }
        }
        if (!home) {
            rep.errors.push_back("gerbe " + gerbe_name(i, j, k, v) +
                                 " has no declared open containing its three charts");
            continue;
        }
        Task t;
        t.kind = Task::GerbeInv;
        t.open_name = open_str(*home);
        t.i = i;
        t.j = j;
        t.k = k;
        t.vertex = v;
        t.gerbe = &term;
        t.tgt = &inst.local(i, *home);
        tasks.push_back(std::move(t));
        if (s.framed) {
            const Quiver& qk = s.charts.at(k).quiver();
            if (qk.has_vertex(v) && qk.vertex(v).framing) {
                Task f = tasks.back();
                f.kind = Task::FramedTrivial;
                tasks.push_back(std::move(f));
            }
        }
    }

    // completions, serial and deterministic, then the parallel check pass
    for (Task& t : tasks)
        if (t.tgt) t.rules = t.tgt->completion(effort_degree);

    std::vector<std::vector<StackCheck>> results(tasks.size());
#pragma omp parallel for schedule(dynamic)
    for (long n = 0; n < long(tasks.size()); ++n) {
        const Task& t = tasks[std::size_t(n)];
        switch (t.kind) {
        case Task::Pair: results[std::size_t(n)] = run_pair(t, s, effort_degree); break;
        case Task::Triple: results[std::size_t(n)] = run_triple(t, s, effort_degree); break;
        case Task::Tetra: results[std::size_t(n)] = run_tetra(t, s, effort_degree); break;
        case Task::GerbeInv: results[std::size_t(n)] = run_gerbe_inv(t, s, effort_degree); break;
        case Task::FramedTrivial:
            results[std::size_t(n)] = run_framed_trivial(t, s, effort_degree);
            break;
        }
    }
    for (auto& r : results)
        for (auto& c : r) rep.checks.push_back(std::move(c));
    rep.all_proved = rep.errors.empty() &&
                     std::all_of(rep.checks.begin(), rep.checks.end(),
                                 [](const StackCheck& c) { return c.proved; });
    return rep;
}

// ------------------------------------------------------------------- unframe

namespace {

AlgebraElement strip_terms(const AlgebraElement& e, const std::set<int>& dead_arrows,
                           const std::set<int>& dead_vertices, const std::map<int, int>& id_map) {
    AlgebraElement out;
    for (const auto& [m, c] : e.terms()) {
        if (m.is_trivial()) {
            if (!dead_vertices.count(m.vertex)) out.add_term(m, c);
            continue;
        }
        bool keep = true;
        for (int a : m.arrows)
            if (dead_arrows.count(a)) {
                keep = false;
                break;
            }
        if (!keep) continue;
        PathMonomial n = m;
        for (int& a : n.arrows) {
            auto it = id_map.find(a);
            if (it != id_map.end()) a = it->second;
        }
        out.add_term(n, c);
    }
    return out;
}

ElementMatrix strip_matrix(const ElementMatrix& m, const std::set<int>& dead_arrows,
                           const std::set<int>& dead_vertices, const std::map<int, int>& id_map) {
    ElementMatrix out = m;
    for (auto& row : out)
        for (auto& e : row) e = strip_terms(e, dead_arrows, dead_vertices, id_map);
    return out;
}

} // namespace

StackDescriptor unframe(const StackDescriptor& s) {
    StackDescriptor out;
    out.labels = s.labels;
    out.opens = s.opens;
    out.framed = false;

    const std::size_t nc = s.charts.size();
    std::vector<std::set<int>> dead_arrows(nc), dead_vertices(nc);
    std::map<int, int> no_remap;
    for (std::size_t c = 0; c < nc; ++c) {
        const Quiver& q = s.charts[c].quiver();
        Quiver nq;
        for (const auto& vx : q.vertices)
            if (vx.framing)
                dead_vertices[c].insert(vx.id);
            else
                nq.vertices.push_back(vx);
        for (const auto& ar : q.arrows)
            if (dead_vertices[c].count(ar.tail) || dead_vertices[c].count(ar.head))
                dead_arrows[c].insert(ar.id);
            else
                nq.arrows.push_back(ar);
        std::vector<AlgebraElement> rels;
        for (const auto& r : s.charts[c].relations()) {
            AlgebraElement x = strip_terms(r, dead_arrows[c], dead_vertices[c], no_remap);
            if (!x.is_zero()) rels.push_back(x);
        }
        std::vector<std::pair<int, int>> pairs;
        for (auto [inv, orig] : s.charts[c].inverse_pairs())
            if (!dead_arrows[c].count(inv) && (orig < 0 || !dead_arrows[c].count(orig)))
                pairs.emplace_back(inv, orig);
        std::map<int, int> weights;
        for (const auto& ar : nq.arrows)
            if (s.charts[c].arrow_weight(ar.id) != 1)
                weights[ar.id] = int(s.charts[c].arrow_weight(ar.id));
        out.charts.emplace_back(std::move(nq), std::move(rels), std::move(pairs),
                                std::move(weights));
    }

    // designations survive when framing arrows never enter them
    for (const auto& [key, des] : s.localizations) {
        const int c = key.first;
        LocDesignation nd;
        for (const auto& m : des.matrices) {
            bool intact = true;
            for (const auto& row : m.entries)
                for (const auto& e : row)
                    if (strip_terms(e, dead_arrows[c], dead_vertices[c], no_remap) != e)
                        intact = false;
            if (intact) nd.matrices.push_back(m);
        }
        for (const auto& e : des.scalars) {
            AlgebraElement x = strip_terms(e.element, dead_arrows[c], dead_vertices[c], no_remap);
            if (!x.is_zero() && x == e.element) nd.scalars.push_back(e);
        }
        if (!nd.matrices.empty() || !nd.scalars.empty()) out.localizations[key] = std::move(nd);
    }

    // localized arrow ids shift when framing arrows vanish: match designation
    // units between the framed and unframed materializations, key by key
    std::vector<std::map<int, int>> id_map(nc);
    for (std::size_t c = 0; c < nc; ++c) {
        ChartLocal before = build_chart_local(s, int(c));
        ChartLocal after = build_chart_local(out, int(c));
        std::map<std::string, const LocUnit*> by_key;
        for (const auto& u : after.units) by_key[u.key] = &u;
        for (const auto& u : before.units) {
            auto it = by_key.find(u.key);
            if (it == by_key.end()) continue;
            for (std::size_t a = 0; a < u.arrows.size() && a < it->second->arrows.size(); ++a)
                id_map[c][u.arrows[a]] = it->second->arrows[a];
        }
    }

    for (const auto& [key, g] : s.transitions) {
        const int i = key.first, j = key.second;
        SymbolicRep ng;
        for (const auto& [v, w] : g.vertex_map) {
            if (dead_vertices[j].count(v)) continue;
            ng.vertex_map[v] = w;
            ng.rank[v] = g.rank.at(v);
        }
        for (const auto& [a, m] : g.arrow_map) {
            if (dead_arrows[j].count(a)) continue;
            int na = a;
            auto it = id_map[j].find(a);
            if (it != id_map[j].end()) na = it->second;
            ng.arrow_map[na] = strip_matrix(m, dead_arrows[i], dead_vertices[i], id_map[i]);
        }
        out.transitions[key] = std::move(ng);
    }

    for (const auto& [key, term] : s.gerbes) {
        const auto [i, j, k, v] = key;
        if (dead_vertices[k].count(v)) continue;
        GerbeTerm ng;
        ng.value = strip_matrix(term.value, dead_arrows[i], dead_vertices[i], id_map[i]);
        ng.inverse = strip_matrix(term.inverse, dead_arrows[i], dead_vertices[i], id_map[i]);
        out.gerbes[key] = std::move(ng);
    }
    return out;
}

// ------------------------------------------------------------- commutativity

CommutativityReport commutativity_check(const ChartTriple& c, int effort_degree) {
    const Quiver& q = c.chart.quiver();
    int main_vertex = -1;
    for (const auto& vx : q.vertices) {
        if (vx.framing) continue;
        if (main_vertex != -1)
            throw std::invalid_argument("commutativity_check: chart must have one unframed vertex");
        main_vertex = vx.id;
    }
    if (main_vertex == -1)
        throw std::invalid_argument("commutativity_check: chart has no unframed vertex");
    std::vector<int> loops;
    for (const auto& ar : q.arrows)
        if (ar.tail == main_vertex && ar.head == main_vertex && !c.chart.is_inverse_arrow(ar.id))
            loops.push_back(ar.id);

    CommutativityReport rep;
    auto chart_rules = c.chart.completion(effort_degree);
    auto big_rules = c.big.completion(effort_degree);
    for (std::size_t a = 0; a < loops.size(); ++a)
        for (std::size_t b = a + 1; b < loops.size(); ++b) {
            AlgebraElement u = AlgebraElement::term(PathMonomial::word({loops[a]}), Scalar::one());
            AlgebraElement w = AlgebraElement::term(PathMonomial::word({loops[b]}), Scalar::one());
            AlgebraElement comm = multiply(q, u, w) - multiply(q, w, u);
            CommutativityPair p;
            p.arrow_a = loops[a];
            p.arrow_b = loops[b];
            if (chart_rules->reduce(comm).is_zero()) {
                p.proved = true;
            } else {
                ElementMatrix img = apply_symbolic(c.g0i, comm, q, c.big.quiver());
                if (img.size() == 1 && img.front().size() == 1 &&
                    big_rules->reduce(img[0][0]).is_zero()) {
                    p.proved = true;
                    p.via_transfer = true;
                }
            }
            rep.all_proved = rep.all_proved && p.proved;
            rep.pairs.push_back(p);
        }
    return rep;
}

} // namespace qf
