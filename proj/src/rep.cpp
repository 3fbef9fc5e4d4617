#include "quiverforge/rep.hpp"

#include "quiverforge/rewrite.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace qf {

// ---------------------------------------------------------------- matrix reps

static long dim_at(const DimensionVector& dims, int v) {
    auto it = dims.find(v);
    if (it == dims.end())
        throw std::invalid_argument("representation has no dimension at vertex " +
                                    std::to_string(v));
    if (it->second < 0) throw std::invalid_argument("negative dimension vector entry");
    return it->second;
}

static Matrix<Scalar> arrow_matrix(const MatrixRep& rho, const Quiver& q, int arrow) {
    const Arrow& a = q.arrow(arrow);
    std::size_t r = dim_at(rho.dims, a.head), c = dim_at(rho.dims, a.tail);
    auto it = rho.matrices.find(arrow);
    if (it == rho.matrices.end()) return Matrix<Scalar>(r, c);
    if (it->second.rows() != r || it->second.cols() != c)
        throw std::invalid_argument("matrix for arrow " +
                                    (a.name.empty() ? std::to_string(a.id) : a.name) +
                                    " has the wrong shape");
    return it->second;
}

Matrix<Scalar> evaluate_rep(const MatrixRep& rho, const Quiver& q, const AlgebraElement& f) {
    auto t = homogeneous_type(f, q);
    if (!t) throw std::invalid_argument("evaluate_rep: element is not vertex-homogeneous");
    std::size_t r = dim_at(rho.dims, t->head), c = dim_at(rho.dims, t->tail);
    Matrix<Scalar> out(r, c);
    for (const auto& [m, coef] : f.terms()) {
        Matrix<Scalar> acc = Matrix<Scalar>::identity(r);
        if (!m.is_trivial()) {
            acc = arrow_matrix(rho, q, m.arrows.front());
            for (std::size_t k = 1; k < m.arrows.size(); ++k)
                acc = acc * arrow_matrix(rho, q, m.arrows[k]);
        }
        out = out + acc.scaled(coef);
    }
    return out;
}

RepCheck check_matrix_rep(const MatrixRep& rho, const QuiverAlgebra& a) {
    const auto& rels = a.relations();
    for (std::size_t k = 0; k < rels.size(); ++k) {
        Matrix<Scalar> m = evaluate_rep(rho, a.quiver(), rels[k]);
        if (!m.is_zero()) return {false, static_cast<int>(k), m};
    }
    return {};
}

std::map<int, Matrix<Scalar>> moment_map(const MatrixRep& rho, const FramedDoubleQuiver& fd) {
    const Quiver& q = fd.quiver;
    std::map<int, Matrix<Scalar>> out;
    for (const auto& vx : q.vertices) {
        if (vx.framing) continue;
        long n = dim_at(rho.dims, vx.id);
        Matrix<Scalar> mu(n, n);
        for (const auto& ar : q.arrows) {
            if (ar.tail != vx.id || q.vertex(ar.head).framing) continue;
            auto eps = fd.epsilon.find(ar.id);
            auto rev = fd.reverse.find(ar.id);
            if (eps == fd.epsilon.end() || rev == fd.reverse.end())
                throw std::invalid_argument("moment_map: doubled arrow " +
                                            std::to_string(ar.id) + " lacks epsilon data");
            Matrix<Scalar> prod =
                arrow_matrix(rho, q, rev->second) * arrow_matrix(rho, q, ar.id);
            mu = eps->second > 0 ? mu + prod : mu - prod;
        }
        auto iv = fd.i_arrow.find(vx.id);
        auto jv = fd.j_arrow.find(vx.id);
        if (iv != fd.i_arrow.end() && jv != fd.j_arrow.end())
            mu = mu + arrow_matrix(rho, q, iv->second) * arrow_matrix(rho, q, jv->second);
        out[vx.id] = mu;
    }
    return out;
}

AlgebraElement preprojective_element(const FramedDoubleQuiver& fd, int v) {
    const Quiver& q = fd.quiver;
    AlgebraElement mu;
    for (const auto& ar : q.arrows) {
        if (ar.tail != v || q.vertex(ar.head).framing) continue;
        auto eps = fd.epsilon.find(ar.id);
        auto rev = fd.reverse.find(ar.id);
        if (eps == fd.epsilon.end() || rev == fd.reverse.end())
            throw std::invalid_argument("preprojective_element: doubled arrow " +
                                        std::to_string(ar.id) + " lacks epsilon data");
        mu += AlgebraElement::term(PathMonomial::word({rev->second, ar.id}),
                                   Scalar(static_cast<long>(eps->second)));
    }
    auto iv = fd.i_arrow.find(v);
    auto jv = fd.j_arrow.find(v);
    if (iv != fd.i_arrow.end() && jv != fd.j_arrow.end())
        mu += AlgebraElement::term(PathMonomial::word({iv->second, jv->second}), Scalar::one());
    return mu;
}

// -------------------------------------------------------------- symbolic reps

ElementMatrix el_identity(long n, int vertex) {
    ElementMatrix m(n, std::vector<AlgebraElement>(n));
    for (long i = 0; i < n; ++i) m[i][i] = AlgebraElement::unit(vertex);
    return m;
}

ElementMatrix el_mul(const Quiver& q, const ElementMatrix& a, const ElementMatrix& b) {
    if (a.empty() || b.empty()) return {};
    const std::size_t n = a.size(), k = a.front().size(), m = b.front().size();
    if (b.size() != k) throw std::invalid_argument("element matrix product shape mismatch");
    ElementMatrix out(n, std::vector<AlgebraElement>(m));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (a[i][l].is_zero()) continue;
            for (std::size_t j = 0; j < m; ++j) out[i][j] += multiply(q, a[i][l], b[l][j]);
        }
    return out;
}

ElementMatrix el_sub(const ElementMatrix& a, const ElementMatrix& b) {
    if (a.size() != b.size() || (!a.empty() && a.front().size() != b.front().size()))
        throw std::invalid_argument("element matrix difference shape mismatch");
    ElementMatrix out = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) out[i][j] -= b[i][j];
    return out;
}

static std::string arrow_label(const Quiver& q, int id) {
    const Arrow& a = q.arrow(id);
    return a.name.empty() ? std::to_string(a.id) : a.name;
}

void validate_symbolic_rep(const SymbolicRep& g, const Quiver& source, const Quiver& target) {
    for (const auto& vx : source.vertices) {
        auto vm = g.vertex_map.find(vx.id);
        auto rk = g.rank.find(vx.id);
        if (vm == g.vertex_map.end() || rk == g.rank.end())
            throw std::invalid_argument("symbolic rep misses vertex " + std::to_string(vx.id));
        if (!target.has_vertex(vm->second))
            throw std::invalid_argument("symbolic rep maps to a missing target vertex");
        if (rk->second <= 0) throw std::invalid_argument("symbolic rep rank must be positive");
        if (vx.framing) {
            if (rk->second != 1)
                throw std::invalid_argument("framing vertex blocks are rigid: rank must be one");
            if (!target.vertex(vm->second).framing)
                throw std::invalid_argument("framing vertices must map to framing vertices");
        }
    }
    for (const auto& ar : source.arrows) {
        auto it = g.arrow_map.find(ar.id);
        if (it == g.arrow_map.end())
            throw std::invalid_argument("symbolic rep misses arrow " + arrow_label(source, ar.id));
        const long rh = g.rank.at(ar.head), rt = g.rank.at(ar.tail);
        const ElementMatrix& m = it->second;
        if (static_cast<long>(m.size()) != rh)
            throw std::invalid_argument("arrow matrix row count mismatch at " +
                                        arrow_label(source, ar.id));
        const int th = g.vertex_map.at(ar.head), tt = g.vertex_map.at(ar.tail);
        for (const auto& row : m) {
            if (static_cast<long>(row.size()) != rt)
                throw std::invalid_argument("arrow matrix column count mismatch at " +
                                            arrow_label(source, ar.id));
            for (const auto& e : row) {
                if (e.is_zero()) continue;
                auto ty = homogeneous_type(e, target);
                if (!ty || ty->head != th || ty->tail != tt)
                    throw std::invalid_argument("arrow matrix entry type mismatch at " +
                                                arrow_label(source, ar.id));
            }
        }
    }
}

ElementMatrix apply_symbolic(const SymbolicRep& g, const AlgebraElement& f,
                             const Quiver& source, const Quiver& target) {
    auto t = homogeneous_type(f, source);
    if (!t) throw std::invalid_argument("apply_symbolic: element is not vertex-homogeneous");
    const long rh = g.rank.at(t->head), rt = g.rank.at(t->tail);
    ElementMatrix out(rh, std::vector<AlgebraElement>(rt));
    for (const auto& [m, c] : f.terms()) {
        ElementMatrix acc;
        if (m.is_trivial()) {
            acc = el_identity(rh, g.vertex_map.at(m.vertex));
        } else {
            acc = g.arrow_map.at(m.arrows.front());
            for (std::size_t k = 1; k < m.arrows.size(); ++k)
                acc = el_mul(target, acc, g.arrow_map.at(m.arrows[k]));
        }
        for (long i = 0; i < rh; ++i)
            for (long j = 0; j < rt; ++j) out[i][j] += acc[i][j].scaled(c);
    }
    return out;
}

SymbolicRep compose_symbolic(const SymbolicRep& g, const SymbolicRep& h, const Quiver& h_source,
                             const Quiver& mid, const Quiver& target) {
    SymbolicRep out;
    for (const auto& vx : h_source.vertices) {
        const int w = h.vertex_map.at(vx.id);
        out.vertex_map[vx.id] = g.vertex_map.at(w);
        out.rank[vx.id] = h.rank.at(vx.id) * g.rank.at(w);
    }
    for (const auto& ar : h_source.arrows) {
        const ElementMatrix& m = h.arrow_map.at(ar.id);
        const int mh = h.vertex_map.at(ar.head), mt = h.vertex_map.at(ar.tail);
        const long gh = g.rank.at(mh), gt = g.rank.at(mt);
        const long hh = h.rank.at(ar.head), ht = h.rank.at(ar.tail);
        ElementMatrix big(hh * gh, std::vector<AlgebraElement>(ht * gt));
        for (long p = 0; p < hh; ++p)
            for (long s = 0; s < ht; ++s) {
                const AlgebraElement& entry = m[p][s];
                if (entry.is_zero()) continue;
                ElementMatrix blk = apply_symbolic(g, entry, mid, target);
                for (long r = 0; r < gh; ++r)
                    for (long c = 0; c < gt; ++c) big[p * gh + r][s * gt + c] = blk[r][c];
            }
        out.arrow_map[ar.id] = std::move(big);
    }
    return out;
}

SymbolicCheck check_symbolic_rep(const SymbolicRep& g, const QuiverAlgebra& source,
                                 const QuiverAlgebra& target, int effort_degree) {
    validate_symbolic_rep(g, source.quiver(), target.quiver());
    SymbolicCheck rep;
    auto rules = target.completion(effort_degree);
    const auto& rels = source.relations();
    for (std::size_t k = 0; k < rels.size(); ++k) {
        ElementMatrix m = apply_symbolic(g, rels[k], source.quiver(), target.quiver());
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::size_t j = 0; j < m[i].size(); ++j) {
                if (m[i][j].is_zero() || rules->reduce(m[i][j]).is_zero()) continue;
                rep.all_proved = false;
                rep.unresolved.push_back(
                    {static_cast<int>(k), static_cast<int>(i), static_cast<int>(j)});
            }
    }
    return rep;
}

// --------------------------------------------------------------------- charts

ChartReport verify_chart(const ChartTriple& c, int effort_degree) {
    const Quiver& bq = c.big.quiver();
    const Quiver& cq = c.chart.quiver();
    validate_symbolic_rep(c.g0i, cq, bq);
    validate_symbolic_rep(c.gi0, bq, cq);
    for (const auto& [v, r] : c.g0i.rank)
        if (r != 1)
            throw std::invalid_argument("chart-to-big representation must have rank one");
    for (const auto& [v, w] : c.g0i.vertex_map)
        if (c.gi0.rank.at(w) != 1)
            throw std::invalid_argument("chart center must have rank one");

    ChartReport rep;
    auto note = [&](bool ok, std::string label) {
        if (ok) return;
        rep.all_proved = false;
        rep.unresolved.push_back(std::move(label));
    };
    auto chart_rules = c.chart.completion(effort_degree);
    auto big_rules = c.big.completion(effort_degree);

    // (1) round trip fixes every chart arrow mod the chart ideal
    SymbolicRep round = compose_symbolic(c.gi0, c.g0i, cq, bq, cq);
    for (const auto& ar : cq.arrows) {
        AlgebraElement diff = round.arrow_map.at(ar.id)[0][0] -
                              AlgebraElement::term(PathMonomial::word({ar.id}), Scalar::one());
        note(chart_rules->reduce(diff).is_zero(), "roundtrip:" + arrow_label(cq, ar.id));
    }

    // anchors: where the big-side composite lands per vertex
    SymbolicRep conj = compose_symbolic(c.g0i, c.gi0, bq, cq, bq);
    auto gerbe_col = [&](int v) -> ElementMatrix {
        auto it = c.gerbe.find(v);
        const long r = c.gi0.rank.at(v);
        if (it != c.gerbe.end()) {
            if (static_cast<long>(it->second.size()) != r || it->second.front().size() != 1)
                throw std::invalid_argument("gerbe at vertex " + std::to_string(v) +
                                            " must be a rank x 1 column");
            return it->second;
        }
        if (conj.vertex_map.at(v) == v && r == 1) return {{AlgebraElement::unit(v)}};
        throw std::invalid_argument("missing gerbe entry at vertex " + std::to_string(v));
    };
    auto gerbe_row = [&](int v) -> ElementMatrix {
        auto it = c.gerbe_inv.find(v);
        const long r = c.gi0.rank.at(v);
        if (it != c.gerbe_inv.end()) {
            if (it->second.size() != 1 || static_cast<long>(it->second.front().size()) != r)
                throw std::invalid_argument("gerbe inverse at vertex " + std::to_string(v) +
                                            " must be a 1 x rank row");
            return it->second;
        }
        if (conj.vertex_map.at(v) == v && r == 1) return {{AlgebraElement::unit(v)}};
        throw std::invalid_argument("missing gerbe inverse at vertex " + std::to_string(v));
    };

    // (2) the other composite conjugates every big arrow by the gerbe
    for (const auto& ar : bq.arrows) {
        const ElementMatrix& m = conj.arrow_map.at(ar.id);
        ElementMatrix a1{{AlgebraElement::term(PathMonomial::word({ar.id}), Scalar::one())}};
        ElementMatrix rhs = el_mul(bq, el_mul(bq, gerbe_col(ar.head), a1), gerbe_row(ar.tail));
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::size_t j = 0; j < m[i].size(); ++j)
                note(big_rules->reduce(m[i][j] - rhs[i][j]).is_zero(),
                     "conjugation:" + arrow_label(bq, ar.id) + "[" + std::to_string(i) + "][" +
                         std::to_string(j) + "]");
    }

    // (3) gerbe witnesses are two-sided inverses
    for (const auto& vx : bq.vertices) {
        ElementMatrix col = gerbe_col(vx.id), row = gerbe_row(vx.id);
        const int anchor = conj.vertex_map.at(vx.id);
        ElementMatrix cc = el_mul(bq, col, row);
        for (std::size_t i = 0; i < cc.size(); ++i)
            for (std::size_t j = 0; j < cc[i].size(); ++j) {
                AlgebraElement want =
                    i == j ? AlgebraElement::unit(anchor) : AlgebraElement::zero();
                note(big_rules->reduce(cc[i][j] - want).is_zero(),
                     "witness:v" + std::to_string(vx.id) + "[" + std::to_string(i) + "][" +
                         std::to_string(j) + "]");
            }
        ElementMatrix rc = el_mul(bq, row, col);
        note(big_rules->reduce(rc[0][0] - AlgebraElement::unit(vx.id)).is_zero(),
             "witness:v" + std::to_string(vx.id) + ":counit");
    }
    return rep;
}

// --------------------------------------------------- coordinate standardizing

using Series = std::vector<Rat>;

static Rat series_at(const Series& s, std::size_t i) { return i < s.size() ? s[i] : Rat(0); }

static Series series_mul(const Series& a, const Series& b, std::size_t ord) {
    Series out(ord + 1, Rat(0));
    for (std::size_t i = 0; i <= ord && i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; i + j <= ord && j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

static Series series_reciprocal(const Series& f, std::size_t ord) {
    Series out(ord + 1, Rat(0));
    Rat c0 = series_at(f, 0);
    if (c0 == 0) throw std::invalid_argument("series reciprocal needs a unit constant term");
    out[0] = 1 / c0;
    for (std::size_t k = 1; k <= ord; ++k) {
        Rat s(0);
        for (std::size_t i = 1; i <= k; ++i) s += series_at(f, i) * out[k - i];
        out[k] = -s / c0;
    }
    return out;
}

static Series series_compose(const Series& f, const Series& g, std::size_t ord) {
    if (series_at(g, 0) != 0)
        throw std::invalid_argument("series composition needs a zero constant term");
    Series out(ord + 1, Rat(0)), pw(ord + 1, Rat(0));
    pw[0] = 1;
    for (std::size_t k = 0; k <= ord; ++k) {
        Rat fk = series_at(f, k);
        if (fk != 0)
            for (std::size_t i = 0; i <= ord; ++i) out[i] += fk * pw[i];
        pw = series_mul(pw, g, ord);
    }
    return out;
}

static Series series_comp_inverse(const Series& g, std::size_t ord) {
    if (series_at(g, 0) != 0 || series_at(g, 1) != 1)
        throw std::invalid_argument("series inversion needs g = t + O(t^2)");
    Series h(ord + 1, Rat(0));
    if (ord >= 1) h[1] = 1;
    for (std::size_t k = 2; k <= ord; ++k) {
        Series e = series_compose(g, h, k);
        h[k] = -e[k];
    }
    return h;
}

// sum_k coef[k] * (word: lead (r lead)^k), the tail-series decoration of an arrow
static AlgebraElement tail_series_elem(int lead, int r, const Series& coef) {
    AlgebraElement e;
    for (std::size_t k = 0; k < coef.size(); ++k) {
        if (coef[k] == 0) continue;
        std::vector<int> w{lead};
        for (std::size_t t = 0; t < k; ++t) {
            w.push_back(r);
            w.push_back(lead);
        }
        e += AlgebraElement::term(PathMonomial::word(std::move(w)), Scalar(coef[k]));
    }
    return e;
}

Standardization coordinate_standardize(const std::vector<AlgebraElement>& raw,
                                       const FramedDoubleQuiver& fd, const std::set<int>& deformed,
                                       const std::vector<Rat>& a_series,
                                       const std::vector<Rat>& b_series, int effort_degree) {
    const Quiver& q = fd.quiver;
    std::vector<int> verts;
    std::set<int> seen;
    for (const auto& f : raw) {
        auto t = f.is_zero() ? std::nullopt : homogeneous_type(f, q);
        if (!t || t->head != t->tail || q.vertex(t->head).framing)
            throw std::invalid_argument(
                "coordinate_standardize: obstruction entries must be loops at unframed vertices");
        if (!seen.insert(t->head).second)
            throw std::invalid_argument("coordinate_standardize: duplicate obstruction vertex");
        verts.push_back(t->head);
    }
    for (int a : deformed) {
        if (!fd.epsilon.count(a))
            throw std::invalid_argument("coordinate_standardize: deformed arrows must be doubled");
        if (deformed.count(fd.reverse.at(a)))
            throw std::invalid_argument(
                "coordinate_standardize: both orientations of a pair deformed");
    }

    const std::size_t ord = static_cast<std::size_t>(std::max(effort_degree, 1));
    auto pack = [&](const std::vector<Rat>& coeffs) {
        Series f(ord + 1, Rat(0));
        f[0] = 1;
        for (std::size_t j = 0; j < coeffs.size() && j + 1 <= ord; ++j) f[j + 1] = coeffs[j];
        return f;
    };
    auto invert_decoration = [&](const Series& f) {
        Series g(ord + 1, Rat(0)); // g(t) = t f(t)
        for (std::size_t k = 0; k + 1 <= ord; ++k) g[k + 1] = series_at(f, k);
        return series_compose(series_reciprocal(f, ord), series_comp_inverse(g, ord), ord);
    };
    const Series fa = pack(a_series), ha = invert_decoration(fa);
    const Series fb = pack(b_series), hb = invert_decoration(fb);

    Standardization out;
    for (int a : deformed) {
        const int r = fd.reverse.at(a);
        out.sigma[a] = tail_series_elem(a, r, fa);
        out.sigma_inverse[a] = tail_series_elem(a, r, ha);
    }
    for (const auto& [v, iv] : fd.i_arrow) {
        auto jv = fd.j_arrow.find(v);
        if (jv == fd.j_arrow.end()) continue;
        out.sigma[iv] = tail_series_elem(iv, jv->second, fb);
        out.sigma_inverse[iv] = tail_series_elem(iv, jv->second, hb);
    }

    out.verified = true;
    for (std::size_t k = 0; k < raw.size(); ++k) {
        AlgebraElement std_gen = preprojective_element(fd, verts[k]);
        out.standard.push_back(std_gen);
        AlgebraElement expect = substitute(std_gen, out.sigma, q, effort_degree);
        if (truncate_length(raw[k], effort_degree) != expect) out.verified = false;
    }
    for (const auto& [a, img] : out.sigma) {
        AlgebraElement unit_a = AlgebraElement::term(PathMonomial::word({a}), Scalar::one());
        if (substitute(img, out.sigma_inverse, q, effort_degree) != unit_a) out.verified = false;
        if (substitute(out.sigma_inverse.at(a), out.sigma, q, effort_degree) != unit_a)
            out.verified = false;
    }
    return out;
}

// -------------------------------------------------------------- stable family

static AlgebraElement el_det(const Quiver& q, const std::vector<std::vector<AlgebraElement>>& m,
                             std::vector<int>& cols_left, std::size_t row) {
    if (row == m.size()) return AlgebraElement::zero();
    if (cols_left.size() == 1) return m[row][cols_left.front()];
    AlgebraElement det;
    for (std::size_t k = 0; k < cols_left.size(); ++k) {
        const AlgebraElement& pivot = m[row][cols_left[k]];
        if (pivot.is_zero()) continue;
        int col = cols_left[k];
        cols_left.erase(cols_left.begin() + k);
        AlgebraElement minor = el_det(q, m, cols_left, row + 1);
        cols_left.insert(cols_left.begin() + k, col);
        AlgebraElement t = multiply(q, pivot, minor);
        det += (k % 2 == 0) ? t : -t;
    }
    return det;
}

FamilyVerdict stable_family_check(const SymbolicRep& g, const QuiverAlgebra& big,
                                  const QuiverAlgebra& chart, int reference_vertex,
                                  int effort_degree, int word_cap) {
    const Quiver& bq = big.quiver();
    const Quiver& cq = chart.quiver();
    validate_symbolic_rep(g, bq, cq);
    auto ref_rank = g.rank.find(reference_vertex);
    if (ref_rank == g.rank.end() || ref_rank->second != 1)
        throw std::invalid_argument("stable_family_check: reference vertex must have rank one");
    if (word_cap <= 0) word_cap = static_cast<int>(bq.vertices.size()) + 1;
    auto rules = chart.completion(effort_degree);

    // breadth-first columns generated from the reference coordinate line
    using Column = std::vector<AlgebraElement>;
    const std::size_t max_cols = 8;
    std::map<int, std::vector<Column>> cols;
    struct Node {
        int v;
        Column col;
    };
    std::vector<Node> frontier{
        {reference_vertex, {AlgebraElement::unit(g.vertex_map.at(reference_vertex))}}};
    cols[reference_vertex].push_back(frontier.front().col);
    for (int depth = 0; depth < word_cap && !frontier.empty(); ++depth) {
        std::vector<Node> next;
        for (const auto& node : frontier)
            for (const auto& ar : bq.arrows) {
                if (ar.tail != node.v) continue;
                const ElementMatrix& m = g.arrow_map.at(ar.id);
                Column col(g.rank.at(ar.head));
                for (std::size_t i = 0; i < col.size(); ++i)
                    for (std::size_t l = 0; l < node.col.size(); ++l)
                        col[i] += multiply(cq, m[i][l], node.col[l]);
                bool zero = true;
                for (const auto& e : col) zero = zero && e.is_zero();
                if (zero) continue;
                auto& list = cols[ar.head];
                if (list.size() >= max_cols) continue;
                list.push_back(col);
                next.push_back({ar.head, std::move(col)});
            }
        frontier = std::move(next);
    }

    // a vertex is certified by a square submatrix of columns whose determinant
    // reduces to a nonzero scalar
    auto is_unit = [&](const AlgebraElement& e) {
        AlgebraElement nf = rules->reduce(e);
        return nf.term_count() == 1 && nf.terms().begin()->first.is_trivial();
    };
    for (const auto& vx : bq.vertices) {
        const long r = g.rank.at(vx.id);
        const auto it = cols.find(vx.id);
        if (it == cols.end() || static_cast<long>(it->second.size()) < r)
            return FamilyVerdict::NotProved;
        const auto& list = it->second;
        // rows = block coordinates, columns = chosen reachable columns
        std::vector<int> pick(r);
        bool certified = false;
        std::function<void(std::size_t, std::size_t)> search = [&](std::size_t from,
                                                                   std::size_t got) {
            if (certified) return;
            if (got == static_cast<std::size_t>(r)) {
                std::vector<std::vector<AlgebraElement>> m(r, std::vector<AlgebraElement>(r));
                for (long i = 0; i < r; ++i)
                    for (long j = 0; j < r; ++j) m[i][j] = list[pick[j]][i];
                std::vector<int> cl(r);
                for (long j = 0; j < r; ++j) cl[j] = static_cast<int>(j);
                if (is_unit(el_det(cq, m, cl, 0))) certified = true;
                return;
            }
            for (std::size_t c = from; c < list.size(); ++c) {
                pick[got] = static_cast<int>(c);
                search(c + 1, got + 1);
                if (certified) return;
            }
        };
        search(0, 0);
        if (!certified) return FamilyVerdict::NotProved;
    }
    return FamilyVerdict::Stable;
}

} // namespace qf
