#include "quiverforge/stack.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qf {
namespace {

std::string num(int k) { return std::to_string(k); }

int arrow_id(const Quiver& q, const std::string& name) {
    const Arrow* a = q.arrow_by_name(name);
    if (!a)
        throw std::logic_error("builtin stack: no arrow named " + name);
    return a->id;
}

// Product of named arrows in display order; the rightmost name acts first.
AlgebraElement dw(const Quiver& q, const std::vector<std::string>& display,
                  Scalar coeff = Scalar::one()) {
    std::vector<int> ids;
    ids.reserve(display.size());
    for (const auto& n : display)
        ids.push_back(arrow_id(q, n));
    return AlgebraElement::term(PathMonomial::word(std::move(ids)), std::move(coeff));
}

bool all_arrows_exist(const Quiver& q, const std::vector<std::string>& display) {
    for (const auto& n : display)
        if (!q.arrow_by_name(n))
            return false;
    return true;
}

void set_entry(SymbolicRep& g, const Quiver& src, const std::string& arrow,
               AlgebraElement image) {
    g.arrow_map[arrow_id(src, arrow)] = {{std::move(image)}};
}

// Optional image: skipped when either side names an arrow that was never
// materialized (small ranks drop some inverse arrows).
void set_entry_if(SymbolicRep& g, const Quiver& src, const std::string& arrow,
                  const Quiver& tgt, const std::vector<std::string>& display) {
    if (!src.arrow_by_name(arrow) || !all_arrows_exist(tgt, display))
        return;
    set_entry(g, src, arrow, dw(tgt, display));
}

void set_unit_if(SymbolicRep& g, const Quiver& src, const std::string& arrow, int vertex) {
    if (src.arrow_by_name(arrow))
        set_entry(g, src, arrow, AlgebraElement::unit(vertex));
}

std::vector<std::string> cat(std::vector<std::string> a, const std::vector<std::string>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

AlgebraElement comm(const Quiver& q, const std::string& a, const std::string& b) {
    return dw(q, {a, b}) - dw(q, {b, a});
}

// ------------------------------------------------------------------ cyclic A_n

// Displayed path fragments in the cyclic chart.  p_word(j) is the product
// v_1 ... v_j (a path j+1 -> 1), r_word(j) is u_{n+1} ... u_j (a path j -> 1).
std::vector<std::string> p_word(int j) {
    std::vector<std::string> w;
    for (int t = 1; t <= j; ++t)
        w.push_back("v" + num(t));
    return w;
}

std::vector<std::string> p_inv_word(int j) {
    std::vector<std::string> w;
    for (int t = j; t >= 1; --t)
        w.push_back("v" + num(t) + "_inv");
    return w;
}

std::vector<std::string> r_word(int n, int j) {
    std::vector<std::string> w;
    for (int t = n + 1; t >= j; --t)
        w.push_back("u" + num(t));
    return w;
}

std::vector<std::string> r_inv_word(int n, int j) {
    std::vector<std::string> w;
    for (int t = j; t <= n + 1; ++t)
        w.push_back("u" + num(t) + "_inv");
    return w;
}

QuiverAlgebra an_cycle_chart(int n) {
    Quiver q;
    for (int v = 1; v <= n + 1; ++v)
        q.vertices.push_back({v, false, num(v)});
    for (int j = 1; j <= n + 1; ++j) {
        int head = (j == n + 1) ? 1 : j + 1;
        q.arrows.push_back({j - 1, j, head, 0, "u" + num(j)});
    }
    for (int j = 1; j <= n + 1; ++j) {
        int tail = (j == n + 1) ? 1 : j + 1;
        q.arrows.push_back({n + j, tail, j, 0, "v" + num(j)});
    }
    std::vector<AlgebraElement> rels;
    for (int j = 1; j <= n + 1; ++j) {
        int prev = (j == 1) ? n + 1 : j - 1;
        rels.push_back(dw(q, {"v" + num(j), "u" + num(j)}) -
                       dw(q, {"u" + num(prev), "v" + num(prev)}));
    }
    return QuiverAlgebra(std::move(q), std::move(rels), {}, {});
}

QuiverAlgebra two_loop_chart(const std::string& u, const std::string& v) {
    Quiver q;
    q.vertices.push_back({0, false, "0"});
    q.arrows.push_back({0, 0, 0, 0, u});
    q.arrows.push_back({1, 0, 0, 0, v});
    std::vector<AlgebraElement> rels{comm(q, u, v)};
    return QuiverAlgebra(std::move(q), std::move(rels), {}, {});
}

} // namespace

StackDescriptor builtin_an_stack(int n, bool include_torus_charts) {
    if (n < 1)
        throw std::invalid_argument("builtin_an_stack: n must be at least 1");

    StackDescriptor s;
    s.charts.push_back(an_cycle_chart(n));
    s.labels.push_back("A0");
    for (int i = 1; i <= n + 1; ++i) {
        s.charts.push_back(two_loop_chart("u" + num(i), "v" + num(i)));
        s.labels.push_back("A" + num(i));
    }
    if (include_torus_charts)
        for (int i = 1; i <= n; ++i) {
            s.charts.push_back(two_loop_chart("x" + num(i), "y" + num(i)));
            s.labels.push_back("T" + num(i));
        }

    for (int i = 1; i <= n + 1; ++i)
        s.opens.push_back({0, i});
    for (int i = 1; i <= n; ++i)
        s.opens.push_back({i, i + 1});
    for (int i = 1; i <= n; ++i)
        s.opens.push_back({0, i, i + 1});
    for (int i = 1; i <= n + 1; ++i)
        for (int k = i + 2; k <= n + 1; ++k)
            s.opens.push_back({i, k});
    if (include_torus_charts)
        for (int i = 1; i <= n; ++i)
            s.opens.push_back({0, n + 1 + i});

    const Quiver& cq = s.charts[0].quiver();
    auto scalar = [&](const Quiver& q, const std::string& name) {
        return LocalizedElement{dw(q, {name}), name + "_inv"};
    };

    // On {0,i} every cycle arrow except u_i and v_i becomes invertible.
    for (int i = 1; i <= n + 1; ++i) {
        LocDesignation d;
        for (int j = 1; j < i; ++j)
            d.scalars.push_back(scalar(cq, "v" + num(j)));
        for (int j = i + 1; j <= n + 1; ++j)
            d.scalars.push_back(scalar(cq, "u" + num(j)));
        s.localizations[{0, {0, i}}] = std::move(d);
    }
    for (int i = 1; i <= n; ++i) {
        s.localizations[{i, {i, i + 1}}] = {{}, {scalar(s.charts[i].quiver(), "v" + num(i))}};
        s.localizations[{i + 1, {i, i + 1}}] = {
            {}, {scalar(s.charts[i + 1].quiver(), "u" + num(i + 1))}};
    }
    for (int i = 1; i <= n + 1; ++i)
        for (int k = i + 2; k <= n + 1; ++k) {
            s.localizations[{i, {i, k}}] = {{},
                                            {scalar(s.charts[i].quiver(), "u" + num(i)),
                                             scalar(s.charts[i].quiver(), "v" + num(i))}};
            s.localizations[{k, {i, k}}] = {{},
                                            {scalar(s.charts[k].quiver(), "u" + num(k)),
                                             scalar(s.charts[k].quiver(), "v" + num(k))}};
        }
    if (include_torus_charts)
        for (int i = 1; i <= n; ++i) {
            LocDesignation d;
            for (int j = 1; j <= i; ++j)
                d.scalars.push_back(scalar(cq, "v" + num(j)));
            for (int j = i + 1; j <= n + 1; ++j)
                d.scalars.push_back(scalar(cq, "u" + num(j)));
            s.localizations[{0, {0, n + 1 + i}}] = std::move(d);
            s.localizations[{n + 1 + i, {0, n + 1 + i}}] = {
                {}, {scalar(s.charts[n + 1 + i].quiver(), "y" + num(i))}};
        }

    // Fully localized copies carry every inverse arrow a transition may name.
    OpenSet all;
    for (int c = 0; c < static_cast<int>(s.charts.size()); ++c)
        all.push_back(c);
    std::vector<Quiver> loc;
    for (int c = 0; c < static_cast<int>(s.charts.size()); ++c)
        loc.push_back(localized_chart(s, c, all).quiver());

    for (int i = 1; i <= n + 1; ++i) {
        const Quiver& ci = loc[i];
        std::string ui = "u" + num(i), vi = "v" + num(i);

        SymbolicRep gi0; // target chart i, source chart 0
        for (int v = 1; v <= n + 1; ++v) {
            gi0.vertex_map[v] = 0;
            gi0.rank[v] = 1;
        }
        for (int j = 1; j <= n + 1; ++j) {
            std::string uj = "u" + num(j), vj = "v" + num(j);
            if (j < i) {
                set_entry(gi0, loc[0], uj, dw(ci, {vi, ui}));
                set_entry(gi0, loc[0], vj, AlgebraElement::unit(0));
                set_unit_if(gi0, loc[0], vj + "_inv", 0);
                set_entry_if(gi0, loc[0], uj + "_inv", ci, {ui + "_inv", vi + "_inv"});
            } else if (j == i) {
                set_entry(gi0, loc[0], ui, dw(ci, {ui}));
                set_entry(gi0, loc[0], vi, dw(ci, {vi}));
                set_entry_if(gi0, loc[0], vi + "_inv", ci, {vi + "_inv"});
                set_entry_if(gi0, loc[0], ui + "_inv", ci, {ui + "_inv"});
            } else {
                set_entry(gi0, loc[0], uj, AlgebraElement::unit(0));
                set_entry(gi0, loc[0], vj, dw(ci, {ui, vi}));
                set_entry_if(gi0, loc[0], vj + "_inv", ci, {vi + "_inv", ui + "_inv"});
                set_unit_if(gi0, loc[0], uj + "_inv", 0);
            }
        }
        s.transitions[{i, 0}] = std::move(gi0);

        SymbolicRep g0i; // target chart 0, source chart i
        g0i.vertex_map[0] = 1;
        g0i.rank[0] = 1;
        set_entry(g0i, ci, ui, dw(loc[0], cat(r_word(n, i + 1), cat({ui}, p_inv_word(i - 1)))));
        set_entry(g0i, ci, vi, dw(loc[0], cat(p_word(i - 1), cat({vi}, r_inv_word(n, i + 1)))));
        set_entry_if(g0i, ci, ui + "_inv", loc[0],
                     cat(p_word(i - 1), cat({ui + "_inv"}, r_inv_word(n, i + 1))));
        set_entry_if(g0i, ci, vi + "_inv", loc[0],
                     cat(r_word(n, i + 1), cat({vi + "_inv"}, p_inv_word(i - 1))));
        s.transitions[{0, i}] = std::move(g0i);
    }

    // Affine-to-affine transitions in closed monomial form.
    for (int i = 1; i <= n + 1; ++i)
        for (int k = 1; k <= n + 1; ++k) {
            if (i == k)
                continue;
            const Quiver& ci = loc[i];
            const Quiver& ck = loc[k];
            std::string ui = "u" + num(i), vi = "v" + num(i);
            std::string uk = "u" + num(k), vk = "v" + num(k);
            SymbolicRep g;
            g.vertex_map[0] = 0;
            g.rank[0] = 1;
            if (k > i) {
                int p = k - i;
                std::vector<std::string> wu, wv, wui, wvi;
                for (int t = 0; t < p - 1; ++t) {
                    wu.push_back(vi + "_inv");
                    wu.push_back(ui + "_inv");
                }
                wu.push_back(vi + "_inv");
                for (int t = 0; t < p; ++t)
                    wv.push_back(ui);
                for (int t = 0; t < p + 1; ++t)
                    wv.push_back(vi);
                wui.push_back(vi);
                for (int t = 0; t < p - 1; ++t) {
                    wui.push_back(ui);
                    wui.push_back(vi);
                }
                for (int t = 0; t < p + 1; ++t)
                    wvi.push_back(vi + "_inv");
                for (int t = 0; t < p; ++t)
                    wvi.push_back(ui + "_inv");
                set_entry(g, ck, uk, dw(ci, wu));
                set_entry(g, ck, vk, dw(ci, wv));
                set_entry_if(g, ck, uk + "_inv", ci, wui);
                set_entry_if(g, ck, vk + "_inv", ci, wvi);
            } else {
                int p = i - k;
                std::vector<std::string> wu, wv, wui, wvi;
                for (int t = 0; t < p + 1; ++t)
                    wu.push_back(ui);
                for (int t = 0; t < p; ++t)
                    wu.push_back(vi);
                for (int t = 0; t < p - 1; ++t) {
                    wv.push_back(ui + "_inv");
                    wv.push_back(vi + "_inv");
                }
                wv.push_back(ui + "_inv");
                for (int t = 0; t < p; ++t)
                    wui.push_back(vi + "_inv");
                for (int t = 0; t < p + 1; ++t)
                    wui.push_back(ui + "_inv");
                wvi.push_back(ui);
                for (int t = 0; t < p - 1; ++t) {
                    wvi.push_back(vi);
                    wvi.push_back(ui);
                }
                set_entry(g, ck, uk, dw(ci, wu));
                set_entry(g, ck, vk, dw(ci, wv));
                set_entry_if(g, ck, uk + "_inv", ci, wui);
                set_entry_if(g, ck, vk + "_inv", ci, wvi);
            }
            s.transitions[{i, k}] = std::move(g);
        }

    if (include_torus_charts)
        for (int i = 1; i <= n; ++i) {
            int t = n + 1 + i;
            const Quiver& tq = loc[t];
            std::string xi = "x" + num(i), yi = "y" + num(i);
            AlgebraElement xm1 = dw(tq, {xi}) - AlgebraElement::unit(0);

            SymbolicRep gt0; // target torus chart, source chart 0
            for (int v = 1; v <= n + 1; ++v) {
                gt0.vertex_map[v] = 0;
                gt0.rank[v] = 1;
            }
            for (int j = 1; j <= n + 1; ++j) {
                std::string uj = "u" + num(j), vj = "v" + num(j);
                if (j <= i) {
                    set_entry(gt0, loc[0], uj, xm1);
                    set_entry(gt0, loc[0], vj, AlgebraElement::unit(0));
                    set_unit_if(gt0, loc[0], vj + "_inv", 0);
                } else if (j == i + 1) {
                    set_entry(gt0, loc[0], uj, dw(tq, {yi + "_inv"}));
                    set_entry(gt0, loc[0], vj, multiply(tq, xm1, dw(tq, {yi})));
                    if (loc[0].arrow_by_name(uj + "_inv"))
                        set_entry(gt0, loc[0], uj + "_inv", dw(tq, {yi}));
                } else {
                    set_entry(gt0, loc[0], uj, AlgebraElement::unit(0));
                    set_entry(gt0, loc[0], vj, xm1);
                    set_unit_if(gt0, loc[0], uj + "_inv", 0);
                }
            }
            s.transitions[{t, 0}] = std::move(gt0);

            SymbolicRep g0t; // target chart 0, source torus chart
            g0t.vertex_map[0] = 1;
            g0t.rank[0] = 1;
            set_entry(g0t, tq, xi, dw(loc[0], {"v1", "u1"}) + AlgebraElement::unit(1));
            set_entry(g0t, tq, yi, dw(loc[0], cat(p_word(i), r_inv_word(n, i + 1))));
            set_entry(g0t, tq, yi + "_inv", dw(loc[0], cat(r_word(n, i + 1), p_inv_word(i))));
            s.transitions[{0, t}] = std::move(g0t);
        }

    // Gerbe witnesses: paths from each cycle vertex to the anchor vertex 1.
    auto cycle_path = [&](int bound, int v) {
        return (v == 1) ? AlgebraElement::unit(1)
                        : dw(loc[0], v <= bound ? p_word(v - 1) : r_word(n, v));
    };
    QuiverAlgebra big_loc = localized_chart(s, 0, all);
    for (int i = 1; i <= n + 1; ++i)
        for (int v = 1; v <= n + 1; ++v) {
            AlgebraElement val = cycle_path(i, v);
            s.gerbes[{0, i, 0, v}] = {{{val}}, {{invert_monomial(val, big_loc)}}};
        }
    for (int i = 1; i <= n; ++i) {
        s.gerbes[{i, i + 1, 0, i + 1}] = {{{dw(loc[i], {"v" + num(i)})}},
                                          {{dw(loc[i], {"v" + num(i) + "_inv"})}}};
        s.gerbes[{i + 1, i, 0, i + 1}] = {{{dw(loc[i + 1], {"u" + num(i + 1)})}},
                                          {{dw(loc[i + 1], {"u" + num(i + 1) + "_inv"})}}};
    }
    if (include_torus_charts)
        for (int i = 1; i <= n; ++i)
            for (int v = 1; v <= n + 1; ++v) {
                AlgebraElement val = cycle_path(i + 1, v);
                s.gerbes[{0, n + 1 + i, 0, v}] = {{{val}}, {{invert_monomial(val, big_loc)}}};
            }

    return s;
}

// --------------------------------------------------------------- framed A_1

StackDescriptor builtin_framed_a1_stack() {
    StackDescriptor s;
    s.framed = true;

    Quiver b;
    b.vertices = {{1, false, "1"}, {2, false, "2"}, {3, true, "f1"}, {4, true, "f2"}};
    b.arrows = {{0, 1, 2, 0, "u1"}, {1, 2, 1, 0, "v1"}, {2, 2, 1, 0, "u2"}, {3, 1, 2, 0, "v2"},
                {4, 3, 1, 0, "i1"}, {5, 1, 3, 0, "j1"}, {6, 4, 2, 0, "i2"}, {7, 2, 4, 0, "j2"}};
    std::vector<AlgebraElement> brels;
    brels.push_back(dw(b, {"u2", "v2"}) - dw(b, {"v1", "u1"}) - dw(b, {"i1", "j1"}));
    brels.push_back(dw(b, {"u1", "v1"}) - dw(b, {"v2", "u2"}) - dw(b, {"i2", "j2"}));
    s.charts.push_back(QuiverAlgebra(std::move(b), std::move(brels), {}, {}));
    s.labels.push_back("A0");

    auto framed_chart = [&](int m) {
        Quiver q;
        q.vertices = {{0, false, "0"}, {3, true, "f1"}, {4, true, "f2"}};
        std::string ms = num(m);
        q.arrows = {{0, 0, 0, 0, "u" + ms},       {1, 0, 0, 0, "v" + ms},
                    {2, 3, 0, 0, "i" + ms + "1"}, {3, 0, 3, 0, "j" + ms + "1"},
                    {4, 4, 0, 0, "i" + ms + "2"}, {5, 0, 4, 0, "j" + ms + "2"}};
        std::vector<AlgebraElement> rels;
        rels.push_back(comm(q, "u" + ms, "v" + ms) - dw(q, {"i" + ms + "1", "j" + ms + "1"}) -
                       dw(q, {"i" + ms + "2", "j" + ms + "2"}));
        return QuiverAlgebra(std::move(q), std::move(rels), {}, {});
    };
    s.charts.push_back(framed_chart(1));
    s.labels.push_back("C1");
    s.charts.push_back(framed_chart(2));
    s.labels.push_back("C2");

    s.opens = {{0, 1}, {0, 2}, {1, 2}, {0, 1, 2}};
    s.localizations[{0, {0, 1}}] = {{}, {{dw(s.charts[0].quiver(), {"u2"}), "u2_inv"}}};
    s.localizations[{0, {0, 2}}] = {{}, {{dw(s.charts[0].quiver(), {"v1"}), "v1_inv"}}};
    s.localizations[{1, {1, 2}}] = {{}, {{dw(s.charts[1].quiver(), {"v1"}), "v1_inv"}}};
    s.localizations[{2, {1, 2}}] = {{}, {{dw(s.charts[2].quiver(), {"u2"}), "u2_inv"}}};

    OpenSet all{0, 1, 2};
    Quiver lb = localized_chart(s, 0, all).quiver();
    Quiver c1 = localized_chart(s, 1, all).quiver();
    Quiver c2 = localized_chart(s, 2, all).quiver();

    SymbolicRep g10;
    g10.vertex_map = {{1, 0}, {2, 0}, {3, 3}, {4, 4}};
    g10.rank = {{1, 1}, {2, 1}, {3, 1}, {4, 1}};
    set_entry(g10, lb, "u1", dw(c1, {"u1"}));
    set_entry(g10, lb, "v1", dw(c1, {"v1"}));
    set_entry(g10, lb, "u2", AlgebraElement::unit(0));
    set_entry(g10, lb, "v2", dw(c1, {"v1", "u1"}) + dw(c1, {"i11", "j11"}));
    set_entry(g10, lb, "i1", dw(c1, {"i11"}));
    set_entry(g10, lb, "j1", dw(c1, {"j11"}));
    set_entry(g10, lb, "i2", dw(c1, {"i12"}));
    set_entry(g10, lb, "j2", dw(c1, {"j12"}));
    set_entry(g10, lb, "u2_inv", AlgebraElement::unit(0));
    set_entry(g10, lb, "v1_inv", dw(c1, {"v1_inv"}));
    s.transitions[{1, 0}] = g10;

    SymbolicRep g01;
    g01.vertex_map = {{0, 1}, {3, 3}, {4, 4}};
    g01.rank = {{0, 1}, {3, 1}, {4, 1}};
    set_entry(g01, c1, "u1", dw(lb, {"u2", "u1"}));
    set_entry(g01, c1, "v1", dw(lb, {"v1", "u2_inv"}));
    set_entry(g01, c1, "i11", dw(lb, {"i1"}));
    set_entry(g01, c1, "j11", dw(lb, {"j1"}));
    set_entry(g01, c1, "i12", dw(lb, {"u2", "i2"}));
    set_entry(g01, c1, "j12", dw(lb, {"j2", "u2_inv"}));
    set_entry(g01, c1, "v1_inv", dw(lb, {"u2", "v1_inv"}));
    s.transitions[{0, 1}] = g01;

    SymbolicRep g20;
    g20.vertex_map = {{1, 0}, {2, 0}, {3, 3}, {4, 4}};
    g20.rank = {{1, 1}, {2, 1}, {3, 1}, {4, 1}};
    set_entry(g20, lb, "u2", dw(c2, {"u2"}));
    set_entry(g20, lb, "v2", dw(c2, {"v2"}));
    set_entry(g20, lb, "u1", dw(c2, {"u2", "v2"}) - dw(c2, {"i21", "j21"}));
    set_entry(g20, lb, "v1", AlgebraElement::unit(0));
    set_entry(g20, lb, "i1", dw(c2, {"i21"}));
    set_entry(g20, lb, "j1", dw(c2, {"j21"}));
    set_entry(g20, lb, "i2", dw(c2, {"i22"}));
    set_entry(g20, lb, "j2", dw(c2, {"j22"}));
    set_entry(g20, lb, "v1_inv", AlgebraElement::unit(0));
    set_entry(g20, lb, "u2_inv", dw(c2, {"u2_inv"}));
    s.transitions[{2, 0}] = g20;

    SymbolicRep g02;
    g02.vertex_map = {{0, 1}, {3, 3}, {4, 4}};
    g02.rank = {{0, 1}, {3, 1}, {4, 1}};
    set_entry(g02, c2, "u2", dw(lb, {"u2", "v1_inv"}));
    set_entry(g02, c2, "v2", dw(lb, {"v1", "v2"}));
    set_entry(g02, c2, "i21", dw(lb, {"i1"}));
    set_entry(g02, c2, "j21", dw(lb, {"j1"}));
    set_entry(g02, c2, "i22", dw(lb, {"v1", "i2"}));
    set_entry(g02, c2, "j22", dw(lb, {"j2", "v1_inv"}));
    set_entry(g02, c2, "u2_inv", dw(lb, {"v1", "u2_inv"}));
    s.transitions[{0, 2}] = g02;

    s.transitions[{2, 1}] = compose_symbolic(g20, g01, c1, lb, c2);
    s.transitions[{1, 2}] = compose_symbolic(g10, g02, c2, lb, c1);

    s.gerbes[{0, 1, 0, 1}] = {{{AlgebraElement::unit(1)}}, {{AlgebraElement::unit(1)}}};
    s.gerbes[{0, 1, 0, 2}] = {{{dw(lb, {"u2"})}}, {{dw(lb, {"u2_inv"})}}};
    s.gerbes[{0, 2, 0, 1}] = {{{AlgebraElement::unit(1)}}, {{AlgebraElement::unit(1)}}};
    s.gerbes[{0, 2, 0, 2}] = {{{dw(lb, {"v1"})}}, {{dw(lb, {"v1_inv"})}}};
    s.gerbes[{1, 2, 0, 2}] = {{{dw(c1, {"v1"})}}, {{dw(c1, {"v1_inv"})}}};
    s.gerbes[{2, 1, 0, 2}] = {{{dw(c2, {"u2"})}}, {{dw(c2, {"u2_inv"})}}};

    return s;
}

// ----------------------------------------------------------------------- D4

namespace {

// Shared shape of the six affine D4 resolution charts: three commuting loops
// plus one chart-specific relation among them.
QuiverAlgebra three_loop_chart(const std::string& x, const std::string& y, const std::string& z,
                               const AlgebraElement& special) {
    Quiver q;
    q.vertices.push_back({0, false, "0"});
    q.arrows.push_back({0, 0, 0, 0, x});
    q.arrows.push_back({1, 0, 0, 0, y});
    q.arrows.push_back({2, 0, 0, 0, z});
    std::vector<AlgebraElement> rels{comm(q, x, y), comm(q, x, z), comm(q, y, z), special};
    return QuiverAlgebra(std::move(q), std::move(rels), {}, {});
}

Quiver three_loop_quiver(const std::string& x, const std::string& y, const std::string& z) {
    Quiver q;
    q.vertices.push_back({0, false, "0"});
    q.arrows.push_back({0, 0, 0, 0, x});
    q.arrows.push_back({1, 0, 0, 0, y});
    q.arrows.push_back({2, 0, 0, 0, z});
    return q;
}

// 2x1 column over the central vertex of the star chart.
ElementMatrix col2(AlgebraElement top, AlgebraElement bottom) {
    return {{std::move(top)}, {std::move(bottom)}};
}

ElementMatrix row2(AlgebraElement left, AlgebraElement right) {
    return {{std::move(left), std::move(right)}};
}

} // namespace

StackDescriptor builtin_d4_stack() {
    StackDescriptor s;

    Quiver b;
    b.vertices.push_back({0, false, "0"});
    for (int v = 1; v <= 4; ++v)
        b.vertices.push_back({v, false, num(v)});
    for (int v = 1; v <= 4; ++v)
        b.arrows.push_back({v - 1, v, 0, 0, "a" + num(v)});
    for (int v = 1; v <= 4; ++v)
        b.arrows.push_back({3 + v, 0, v, 0, "b" + num(v)});
    std::vector<AlgebraElement> brels;
    AlgebraElement moment;
    for (int v = 1; v <= 4; ++v)
        moment = moment + dw(b, {"a" + num(v), "b" + num(v)});
    brels.push_back(moment);
    for (int v = 1; v <= 4; ++v)
        brels.push_back(dw(b, {"b" + num(v), "a" + num(v)}));
    s.charts.push_back(QuiverAlgebra(std::move(b), std::move(brels), {}, {}));
    s.labels = {"A0", "A2", "A2p", "A3", "A3p", "A4", "A4p"};

    {
        Quiver q = three_loop_quiver("X2", "Y2", "Z2");
        AlgebraElement special = dw(q, {"Z2", "X2"}) + dw(q, {"Z2"}) - dw(q, {"X2", "Y2"});
        s.charts.push_back(three_loop_chart("X2", "Y2", "Z2", special));
    }
    {
        Quiver q = three_loop_quiver("X2p", "Y2p", "Z2p");
        AlgebraElement special =
            dw(q, {"X2p", "Y2p"}) - dw(q, {"X2p", "Y2p", "Y2p", "Z2p"}) + dw(q, {"Z2p"});
        s.charts.push_back(three_loop_chart("X2p", "Y2p", "Z2p", special));
    }
    {
        Quiver q = three_loop_quiver("X3", "Y3", "Z3");
        AlgebraElement special = dw(q, {"X3", "Z3"}) - dw(q, {"X3", "Y3"}) - dw(q, {"Y3"});
        s.charts.push_back(three_loop_chart("X3", "Y3", "Z3", special));
    }
    {
        Quiver q = three_loop_quiver("X3p", "Y3p", "Z3p");
        AlgebraElement special =
            dw(q, {"X3p", "Z3p"}) - dw(q, {"X3p", "Z3p", "Z3p", "Y3p"}) + dw(q, {"Y3p"});
        s.charts.push_back(three_loop_chart("X3p", "Y3p", "Z3p", special));
    }
    {
        Quiver q = three_loop_quiver("X4", "Y4", "Z4");
        AlgebraElement special = dw(q, {"X4", "Y4"}) - dw(q, {"X4", "Z4"}) - dw(q, {"Z4"});
        s.charts.push_back(three_loop_chart("X4", "Y4", "Z4", special));
    }
    {
        Quiver q = three_loop_quiver("X4p", "Y4p", "Z4p");
        AlgebraElement special =
            dw(q, {"X4p", "Y4p"}) - dw(q, {"X4p", "Y4p", "Y4p", "Z4p"}) + dw(q, {"Z4p"});
        s.charts.push_back(three_loop_chart("X4p", "Y4p", "Z4p", special));
    }

    s.opens = {{0, 1}, {0, 3}, {0, 5}, {1, 2}, {3, 4}, {5, 6}, {1, 3}};

    const Quiver& bq = s.charts[0].quiver();
    auto b_scalars = [&]() {
        std::vector<LocalizedElement> v;
        for (int j = 2; j <= 4; ++j)
            v.push_back({dw(bq, {"b" + num(j), "a1"}), "b" + num(j) + "a1_inv"});
        return v;
    };
    s.localizations[{0, {0, 1}}] = {{{{{dw(bq, {"a1"}), dw(bq, {"a2"})}}, "alpha"}}, b_scalars()};
    s.localizations[{0, {0, 3}}] = {{{{{dw(bq, {"a1"}), dw(bq, {"a3"})}}, "beta"}}, b_scalars()};
    s.localizations[{0, {0, 5}}] = {{{{{dw(bq, {"a1"}), dw(bq, {"a4"})}}, "kappa"}}, b_scalars()};
    auto loop_scalar = [&](int chart, const std::string& name) {
        return LocDesignation{{}, {{dw(s.charts[chart].quiver(), {name}), name + "_inv"}}};
    };
    s.localizations[{1, {1, 2}}] = loop_scalar(1, "Y2");
    s.localizations[{2, {1, 2}}] = loop_scalar(2, "Y2p");
    s.localizations[{3, {3, 4}}] = loop_scalar(3, "Z3");
    s.localizations[{4, {3, 4}}] = loop_scalar(4, "Z3p");
    s.localizations[{5, {5, 6}}] = loop_scalar(5, "Y4");
    s.localizations[{6, {5, 6}}] = loop_scalar(6, "Y4p");
    s.localizations[{1, {1, 3}}] = loop_scalar(1, "X2");
    s.localizations[{3, {1, 3}}] = {
        {}, {{dw(s.charts[3].quiver(), {"X3"}) + AlgebraElement::unit(0), "X3p1_inv"}}};

    OpenSet all{0, 1, 2, 3, 4, 5, 6};
    std::vector<Quiver> loc;
    for (int c = 0; c <= 6; ++c)
        loc.push_back(localized_chart(s, c, all).quiver());
    const Quiver& lb = loc[0];

    // Transitions between the central chart and each unprimed resolution
    // chart.  The star chart keeps rank two over the central vertex; each
    // resolution chart inverts a1 together with one more leg (the 1x2 matrix
    // designation), and the two remaining legs map through the commutator
    // columns listed per chart below.
    struct StarLeg {
        std::string a;                     // leg arrow name
        AlgebraElement top, bottom;        // column over the rank-two vertex
    };
    struct Star {
        int chart;              // resolution chart id
        int leg;                // second inverted leg
        std::string x, y, z;    // loop names
        std::string prefix;     // gamma prefix of the 1x2 inversion
        std::vector<StarLeg> cols;
        AlgebraElement b1_tail; // second entry of the b1 row
        int via;                // leg conjugating the X image
        int y_leg, z_leg;       // legs conjugating the Y and Z images
    };
    std::vector<Star> stars;
    {
        const Quiver& c = loc[1];
        stars.push_back({1,
                         2,
                         "X2",
                         "Y2",
                         "Z2",
                         "alpha",
                         {{"a3", -dw(c, {"Y2", "X2"}), dw(c, {"X2"})},
                          {"a4", dw(c, {"Y2", "X2"}), -dw(c, {"X2"}) - AlgebraElement::unit(0)}},
                         dw(c, {"Y2", "X2", "Y2"}) - dw(c, {"Z2", "X2", "Y2"}),
                         3,
                         3,
                         4});
    }
    {
        const Quiver& c = loc[3];
        stars.push_back({3,
                         3,
                         "X3",
                         "Y3",
                         "Z3",
                         "beta",
                         {{"a2", dw(c, {"X3", "Z3"}), -dw(c, {"X3"}) - AlgebraElement::unit(0)},
                          {"a4", -dw(c, {"Z3", "X3"}), dw(c, {"X3"})}},
                         dw(c, {"X3", "Z3", "Z3"}) - dw(c, {"X3", "Y3", "Z3"}),
                         4,
                         2,
                         4});
    }
    {
        const Quiver& c = loc[5];
        stars.push_back({5,
                         4,
                         "X4",
                         "Y4",
                         "Z4",
                         "kappa",
                         {{"a2", -dw(c, {"Y4", "X4"}), dw(c, {"X4"})},
                          {"a3", dw(c, {"X4", "Y4"}), -dw(c, {"X4"}) - AlgebraElement::unit(0)}},
                         dw(c, {"X4", "Y4", "Y4"}) - dw(c, {"X4", "Y4", "Z4"}),
                         2,
                         2,
                         3});
    }
    for (const Star& st : stars) {
        const Quiver& cq = loc[st.chart];
        int l = st.leg;

        SymbolicRep gi0;
        for (int v = 0; v <= 4; ++v)
            gi0.vertex_map[v] = 0;
        gi0.rank = {{0, 2}, {1, 1}, {2, 1}, {3, 1}, {4, 1}};
        gi0.arrow_map[arrow_id(lb, "a1")] = col2(AlgebraElement::unit(0), AlgebraElement());
        gi0.arrow_map[arrow_id(lb, "a" + num(l))] =
            col2(AlgebraElement(), AlgebraElement::unit(0));
        for (const StarLeg& leg : st.cols)
            gi0.arrow_map[arrow_id(lb, leg.a)] = col2(leg.top, leg.bottom);
        gi0.arrow_map[arrow_id(lb, "b1")] = row2(AlgebraElement(), st.b1_tail);
        gi0.arrow_map[arrow_id(lb, "b" + num(l))] =
            row2(AlgebraElement::unit(0), AlgebraElement());
        gi0.arrow_map[arrow_id(lb, "b" + num(st.y_leg))] =
            row2(AlgebraElement::unit(0), dw(cq, {st.y}));
        gi0.arrow_map[arrow_id(lb, "b" + num(st.z_leg))] =
            row2(AlgebraElement::unit(0), dw(cq, {st.z}));
        gi0.arrow_map[arrow_id(lb, st.prefix + "11")] =
            row2(AlgebraElement::unit(0), AlgebraElement());
        gi0.arrow_map[arrow_id(lb, st.prefix + "21")] =
            row2(AlgebraElement(), AlgebraElement::unit(0));
        for (int j = 2; j <= 4; ++j)
            set_entry(gi0, lb, "b" + num(j) + "a1_inv", AlgebraElement::unit(0));
        s.transitions[{st.chart, 0}] = std::move(gi0);

        SymbolicRep g0i;
        g0i.vertex_map[0] = 1;
        g0i.rank[0] = 1;
        set_entry(g0i, cq, st.x,
                  dw(lb, {"b" + num(l) + "a1_inv", st.prefix + "21", "a" + num(st.via),
                          "b" + num(st.via), "a1"}));
        set_entry(g0i, cq, st.y,
                  dw(lb, {"b" + num(st.y_leg) + "a1_inv", "b" + num(st.y_leg), "a" + num(l),
                          "b" + num(l), "a1"}));
        set_entry(g0i, cq, st.z,
                  dw(lb, {"b" + num(st.z_leg) + "a1_inv", "b" + num(st.z_leg), "a" + num(l),
                          "b" + num(l), "a1"}));
        s.transitions[{0, st.chart}] = std::move(g0i);
    }

    // Blow-down/blow-up flop transitions between each chart and its prime.
    auto flop = [&](int i, int ip, const std::string& x, const std::string& y,
                    const std::string& z, const std::string& xp, const std::string& yp,
                    const std::string& zp) {
        const Quiver& ci = loc[i];
        const Quiver& cp = loc[ip];
        SymbolicRep gpi; // target prime chart, source unprimed
        gpi.vertex_map[0] = 0;
        gpi.rank[0] = 1;
        set_entry(gpi, ci, x, -dw(cp, {xp, yp, yp}));
        set_entry(gpi, ci, y, dw(cp, {yp + "_inv"}));
        set_entry(gpi, ci, z, dw(cp, {zp}));
        set_entry(gpi, ci, y + "_inv", dw(cp, {yp}));
        s.transitions[{ip, i}] = std::move(gpi);
        SymbolicRep gip;
        gip.vertex_map[0] = 0;
        gip.rank[0] = 1;
        set_entry(gip, cp, xp, -dw(ci, {x, y, y}));
        set_entry(gip, cp, yp, dw(ci, {y + "_inv"}));
        set_entry(gip, cp, zp, dw(ci, {z}));
        set_entry(gip, cp, yp + "_inv", dw(ci, {y}));
        s.transitions[{i, ip}] = std::move(gip);
    };
    flop(1, 2, "X2", "Y2", "Z2", "X2p", "Y2p", "Z2p");
    flop(3, 4, "X3", "Z3", "Y3", "X3p", "Z3p", "Y3p");
    flop(5, 6, "X4", "Y4", "Z4", "X4p", "Y4p", "Z4p");

    // Cross transition between the two charts meeting along {1,3}.
    {
        const Quiver& c1 = loc[1];
        const Quiver& c3 = loc[3];
        SymbolicRep g23; // target chart 1 (A2), source chart 3 (A3)
        g23.vertex_map[0] = 0;
        g23.rank[0] = 1;
        set_entry(g23, c3, "X3", -dw(c1, {"X2_inv"}) - AlgebraElement::unit(0));
        set_entry(g23, c3, "Y3", -dw(c1, {"X2", "Y2"}));
        set_entry(g23, c3, "Z3", -dw(c1, {"Z2"}));
        set_entry(g23, c3, "X3p1_inv", -dw(c1, {"X2"}));
        s.transitions[{1, 3}] = std::move(g23);
        SymbolicRep g32;
        g32.vertex_map[0] = 0;
        g32.rank[0] = 1;
        set_entry(g32, c1, "X2", -dw(c3, {"X3p1_inv"}));
        set_entry(g32, c1, "Y2", dw(c3, {"X3", "Y3"}) + dw(c3, {"Y3"}));
        set_entry(g32, c1, "Z2", -dw(c3, {"Z3"}));
        set_entry(g32, c1, "X2_inv", -dw(c3, {"X3"}) - AlgebraElement::unit(0));
        s.transitions[{3, 1}] = std::move(g32);
    }

    // Gerbe witnesses for the star-chart double overlaps.
    for (const Star& st : stars) {
        int l = st.leg;
        s.gerbes[{0, st.chart, 0, 1}] = {{{AlgebraElement::unit(1)}},
                                         {{AlgebraElement::unit(1)}}};
        for (int j = 2; j <= 4; ++j)
            s.gerbes[{0, st.chart, 0, j}] = {{{dw(lb, {"b" + num(j) + "a1_inv"})}},
                                             {{dw(lb, {"b" + num(j), "a1"})}}};
        s.gerbes[{0, st.chart, 0, 0}] = {
            col2(dw(lb, {st.prefix + "11"}), dw(lb, {"b" + num(l) + "a1_inv", st.prefix + "21"})),
            row2(dw(lb, {"a1"}), dw(lb, {"a" + num(l), "b" + num(l), "a1"}))};
    }

    return s;
}

// ------------------------------------------------------------- chart triples

ChartTriple an_chart_triple(int n, int i, bool free_chart) {
    if (i < 1 || i > n + 1)
        throw std::invalid_argument("an_chart_triple: chart index out of range");
    StackDescriptor s = builtin_an_stack(n);
    ChartTriple c;
    c.chart = free_chart ? QuiverAlgebra(s.charts[i].quiver(), {}, {}, {}) : s.charts[i];
    c.big = localized_chart(s, 0, {0, i});
    c.g0i = s.transitions.at({0, i});
    c.gi0 = s.transitions.at({i, 0});
    for (int v = 1; v <= n + 1; ++v) {
        const GerbeTerm& g = s.gerbes.at({0, i, 0, v});
        c.gerbe[v] = g.value;
        c.gerbe_inv[v] = g.inverse;
    }
    return c;
}

ChartTriple d4_chart_triple(int k) {
    if (k < 2 || k > 4)
        throw std::invalid_argument("d4_chart_triple: leg must be 2, 3 or 4");
    StackDescriptor s = builtin_d4_stack();
    int m = 2 * (k - 2) + 1;
    ChartTriple c;
    c.chart = s.charts[m];
    c.big = localized_chart(s, 0, {0, m});
    c.g0i = s.transitions.at({0, m});
    c.gi0 = s.transitions.at({m, 0});
    for (int v = 0; v <= 4; ++v) {
        const GerbeTerm& g = s.gerbes.at({0, m, 0, v});
        c.gerbe[v] = g.value;
        c.gerbe_inv[v] = g.inverse;
    }
    return c;
}

// ------------------------------------------------------------- extended dga

ExtendedDga extended_dga(const FramedDoubleQuiver& fd) {
    ExtendedDga e;
    Quiver q = fd.quiver;
    int next = q.max_arrow_id() + 1;
    std::vector<std::pair<int, int>> loops; // (vertex, arrow id)
    for (const QuiverVertex& v : q.vertices) {
        if (v.framing)
            continue;
        std::string nm = "t" + (v.name.empty() ? num(v.id) : v.name);
        loops.push_back({v.id, next});
        q.arrows.push_back({next, v.id, v.id, -1, nm});
        ++next;
    }
    e.algebra = QuiverAlgebra(std::move(q), {}, {}, {});
    for (const auto& [vertex, id] : loops) {
        e.differential[id] = preprojective_element(fd, vertex);
        e.shifted_loop[vertex] = id;
    }
    return e;
}

} // namespace qf
