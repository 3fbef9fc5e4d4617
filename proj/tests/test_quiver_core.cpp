#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "quiverforge/graph_forms.hpp"
#include "quiverforge/quiver.hpp"
#include "support/oracles.hpp"

#include <random>

using namespace qf;
using namespace qf::testing;

TEST_CASE("double quiver doubles every edge with balanced signs") {
    Graph one = path_graph(2);
    DoubleQuiver d = double_quiver(one);
    CHECK(d.quiver.arrows.size() == 2);
    CHECK(d.epsilon.at(0) == +1);
    CHECK(d.epsilon.at(1) == -1);
    CHECK(d.quiver.arrow(0).tail == 0);
    CHECK(d.quiver.arrow(0).head == 1);
    CHECK(d.quiver.arrow(1).tail == 1);

    DoubleQuiver a1 = double_quiver(affine_a_graph(1));
    CHECK(a1.quiver.arrows.size() == 4);

    DoubleQuiver d4 = double_quiver(star_graph(4));
    CHECK(d4.quiver.arrows.size() == 8);
    int plus = 0, minus = 0;
    for (auto& [a, e] : d4.epsilon) (e > 0 ? plus : minus)++;
    CHECK(plus == 4);
    CHECK(minus == 4);
    for (auto& [a, b] : d4.reverse) {
        CHECK(d4.reverse.at(b) == a);
        CHECK(d4.epsilon.at(a) == -d4.epsilon.at(b));
        CHECK(d4.quiver.arrow(a).tail == d4.quiver.arrow(b).head);
        CHECK(d4.quiver.arrow(a).head == d4.quiver.arrow(b).tail);
    }
}

TEST_CASE("double quiver of a self-edge gives two loops") {
    Graph g;
    g.vertices.push_back({0, 2});
    g.edges.push_back({0, 0, 1, 1, 2});
    DoubleQuiver d = double_quiver(g);
    REQUIRE(d.quiver.arrows.size() == 2);
    for (const auto& a : d.quiver.arrows) {
        CHECK(a.tail == 0);
        CHECK(a.head == 0);
    }
    CHECK(d.epsilon.at(0) == +1);
}

TEST_CASE("framing adds one vertex and an i/j pair per selection") {
    // Jordan quiver: one vertex, two loops
    Quiver jordan;
    jordan.vertices.push_back({0, false, ""});
    jordan.arrows.push_back({0, 0, 0, 0, "x"});
    jordan.arrows.push_back({1, 0, 0, 0, "y"});
    FramedQuiver adhm = frame_quiver(jordan, {0});
    CHECK(adhm.quiver.vertices.size() == 2);
    CHECK(adhm.quiver.arrows.size() == 4);
    CHECK(adhm.quiver.vertex(adhm.framing_vertex.at(0)).framing);
    const Arrow& i0 = adhm.quiver.arrow(adhm.i_arrow.at(0));
    const Arrow& j0 = adhm.quiver.arrow(adhm.j_arrow.at(0));
    CHECK(i0.tail == adhm.framing_vertex.at(0));
    CHECK(i0.head == 0);
    CHECK(j0.tail == 0);
    CHECK(j0.head == adhm.framing_vertex.at(0));

    FramedQuiver same = frame_quiver(jordan, {});
    CHECK(same.quiver.vertices.size() == jordan.vertices.size());
    CHECK(same.quiver.arrows.size() == jordan.arrows.size());

    DoubleQuiver a1 = double_quiver(affine_a_graph(1));
    FramedQuiver fa1 = frame_quiver(a1.quiver, {0, 1});
    CHECK(fa1.quiver.vertices.size() == 4);
    CHECK(fa1.quiver.arrows.size() == 8);
    CHECK_THROWS_AS(frame_quiver(fa1.quiver, {fa1.framing_vertex.at(0)}), std::invalid_argument);
}

TEST_CASE("euler form values and bilinearity") {
    Graph dot = path_graph(1);
    CHECK(floer_euler_form(dot, {{0, 1}}) == 2);
    CHECK(floer_euler_form(affine_a_graph(1), {{0, 1}, {1, 1}}) == 0);
    CHECK(floer_euler_form(star_graph(4), {{0, 2}, {1, 1}, {2, 1}, {3, 1}, {4, 1}}) == 0);
    CHECK_THROWS_AS(floer_euler_form(dot, DimensionVector{}), std::invalid_argument);

    // q(r+s) + q(r-s) = 2q(r) + 2q(s), and q(-r) = q(r)
    std::mt19937 rng(41);
    std::uniform_int_distribution<int> val(-4, 4);
    Graph g = affine_a_graph(3);
    for (int trial = 0; trial < 50; ++trial) {
        DimensionVector r, s, rps, rms, mr;
        for (const auto& v : g.vertices) {
            r[v.id] = val(rng);
            s[v.id] = val(rng);
            rps[v.id] = r[v.id] + s[v.id];
            rms[v.id] = r[v.id] - s[v.id];
            mr[v.id] = -r[v.id];
        }
        CHECK(floer_euler_form(g, rps) + floer_euler_form(g, rms) ==
              2 * floer_euler_form(g, r) + 2 * floer_euler_form(g, s));
        CHECK(floer_euler_form(g, mr) == floer_euler_form(g, r));
    }
}

TEST_CASE("form classification: pinned examples") {
    CHECK(classify_form(path_graph(3)) == FormClass::PositiveDefinite);
    CHECK(classify_form(star_graph(4)) == FormClass::StrictlySemiPositive);
    Graph triple;
    triple.vertices = {{0, 2}, {1, 2}};
    for (int k = 0; k < 3; ++k) triple.edges.push_back({0, 1, 1, 1, 2});
    CHECK(classify_form(triple) == FormClass::Indefinite);
    // the Jordan loop already kills definiteness: C = (0)
    Graph loop;
    loop.vertices = {{0, 2}};
    loop.edges = {{0, 0, 1, 1, 2}};
    CHECK(classify_form(loop) == FormClass::StrictlySemiPositive);
    Graph bad = path_graph(2);
    bad.vertices[0].component_euler = 0;
    CHECK_THROWS_AS(classify_form(bad), std::invalid_argument);
}

TEST_CASE("form classification matches the eigen-sign oracle (<= 5 vertices)") {
    int count = 0;
    for (int n = 1; n <= 5; ++n)
        for_each_connected_simple_graph(n, [&](const Graph& g) {
            ++count;
            CHECK(classify_form(g) == classify_by_eigen_signs(g));
        });
    CHECK(count == 1 + 1 + 4 + 38 + 728); // known connected labeled graph counts
}

TEST_CASE("affine kernel vectors") {
    for (int n = 1; n <= 6; ++n) {
        auto d = affine_delta(affine_a_graph(n));
        REQUIRE(d.has_value());
        for (auto& [v, e] : *d) CHECK(e == 1);
        // C delta = 0 exactly
        Graph g = affine_a_graph(n);
        Matrix<Scalar> c = cartan_matrix(g);
        for (std::size_t i = 0; i < c.rows(); ++i) {
            Scalar s = Scalar::zero();
            for (std::size_t j = 0; j < c.cols(); ++j)
                s += c.at(i, j) * Scalar(long(d->at(g.vertices[j].id)));
            CHECK(s.is_zero());
        }
    }
    auto d4 = affine_delta(star_graph(4));
    REQUIRE(d4.has_value());
    CHECK(d4->at(0) == 2);
    for (int v = 1; v <= 4; ++v) CHECK(d4->at(v) == 1);
    CHECK(!affine_delta(path_graph(3)).has_value());
}

TEST_CASE("positive roots in a box") {
    Graph dot = path_graph(1);
    auto r1 = positive_roots(dot, {{0, 1}});
    REQUIRE(r1.size() == 1);
    CHECK(r1[0].at(0) == 1);

    auto ra1 = positive_roots(affine_a_graph(1), {{0, 1}, {1, 1}});
    CHECK(ra1.size() == 3); // (1,0), (0,1), (1,1)

    CHECK(positive_roots(affine_a_graph(1), {{0, 0}, {1, 0}}).empty());

    // wall test: zeta = (1,-1) annihilates exactly the delta direction
    Weight zeta{{0, Rat(1)}, {1, Rat(-1)}};
    int on = 0;
    for (const auto& th : ra1)
        if (on_wall(zeta, th)) ++on;
    CHECK(on == 1);
}
