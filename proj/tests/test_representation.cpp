#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "quiverforge/rep.hpp"

#include <random>

using namespace qf;

static AlgebraElement w(std::vector<int> ids, Scalar c = Scalar::one()) {
    return AlgebraElement::term(PathMonomial::word(std::move(ids)), c);
}

// one framed vertex with loops x (id 0, eps -1) and y (id 1, eps +1),
// framing arrows i (id 2) and j (id 3); mu = xy - yx + ij
static FramedDoubleQuiver framed_jordan() {
    Graph g;
    g.vertices = {{0}};
    g.edges = {{0, 0}};
    DoubleQuiver dq = double_quiver(g);
    dq.epsilon = {{0, -1}, {1, +1}};
    return frame_double_quiver(dq, {0});
}

static Matrix<Scalar> mat2(long a, long b, long c, long d) {
    Matrix<Scalar> m(2, 2);
    m.at(0, 0) = Scalar(a);
    m.at(0, 1) = Scalar(b);
    m.at(1, 0) = Scalar(c);
    m.at(1, 1) = Scalar(d);
    return m;
}

TEST_CASE("preprojective element of the framed one-loop quiver is xy - yx + ij") {
    FramedDoubleQuiver fd = framed_jordan();
    AlgebraElement mu = preprojective_element(fd, 0);
    AlgebraElement want = w({0, 1}) - w({1, 0}) + w({2, 3});
    CHECK(mu == want);

    FramedDoubleQuiver broken = fd;
    broken.epsilon.erase(0);
    CHECK_THROWS_AS(preprojective_element(broken, 0), std::invalid_argument);
}

TEST_CASE("evaluate_rep: word order, absent arrows, input validation") {
    FramedDoubleQuiver fd = framed_jordan();
    const Quiver& q = fd.quiver;
    MatrixRep rho;
    rho.dims = {{0, 2}, {1, 1}};
    rho.matrices[0] = mat2(0, 1, 0, 0);
    rho.matrices[1] = mat2(0, 0, 1, 0);

    // word({0,1}) applies arrow 1 first: matrix product M0 * M1
    CHECK(evaluate_rep(rho, q, w({0, 1})) == mat2(0, 1, 0, 0) * mat2(0, 0, 1, 0));
    CHECK(evaluate_rep(rho, q, AlgebraElement::unit(0)) == Matrix<Scalar>::identity(2));

    // arrows without a matrix act by zero (here i: f0 -> 0 is a 2 x 1 zero)
    Matrix<Scalar> zi = evaluate_rep(rho, q, w({2}));
    CHECK(zi.rows() == 2);
    CHECK(zi.cols() == 1);
    CHECK(zi.is_zero());

    CHECK_THROWS_AS(evaluate_rep(rho, q, AlgebraElement::unit(0) + AlgebraElement::unit(1)),
                    std::invalid_argument);
    MatrixRep bad = rho;
    bad.matrices[0] = Matrix<Scalar>(1, 2);
    CHECK_THROWS_AS(evaluate_rep(bad, q, w({0})), std::invalid_argument);
    MatrixRep nodim;
    nodim.dims = {{0, 2}};
    CHECK_THROWS_AS(evaluate_rep(nodim, q, w({2})), std::invalid_argument);
}

TEST_CASE("check_matrix_rep and moment_map on hand-picked framed data") {
    FramedDoubleQuiver fd = framed_jordan();
    QuiverAlgebra alg(fd.quiver, {preprojective_element(fd, 0)});

    MatrixRep zero;
    zero.dims = {{0, 2}, {1, 1}};
    CHECK(check_matrix_rep(zero, alg).pass);
    CHECK(moment_map(zero, fd).at(0).is_zero());

    // commuting diagonal pair with j = 0 satisfies the relation
    MatrixRep good;
    good.dims = {{0, 2}, {1, 1}};
    good.matrices[0] = mat2(0, 0, 0, 1);
    good.matrices[1] = mat2(0, 0, 0, 2);
    Matrix<Scalar> iv(2, 1);
    iv.at(0, 0) = Scalar(1);
    iv.at(1, 0) = Scalar(1);
    good.matrices[2] = iv;
    CHECK(check_matrix_rep(good, alg).pass);
    CHECK(moment_map(good, fd).at(0).is_zero());

    // nilpotent pair with nonzero commutator fails, residual = diag(1,-1)
    MatrixRep bad;
    bad.dims = {{0, 2}, {1, 1}};
    bad.matrices[0] = mat2(0, 1, 0, 0);
    bad.matrices[1] = mat2(0, 0, 1, 0);
    RepCheck rc = check_matrix_rep(bad, alg);
    CHECK_FALSE(rc.pass);
    CHECK(rc.relation == 0);
    CHECK(rc.residual == mat2(1, 0, 0, -1));
    CHECK(moment_map(bad, fd).at(0) == mat2(1, 0, 0, -1));
}

TEST_CASE("moment map vanishes exactly when the preprojective relation holds") {
    FramedDoubleQuiver fd = framed_jordan();
    QuiverAlgebra alg(fd.quiver, {preprojective_element(fd, 0)});
    std::mt19937 rng(23);
    std::uniform_int_distribution<int> d(-2, 2);
    auto rnd = [&](std::size_t r, std::size_t c) {
        Matrix<Scalar> m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m.at(i, j) = Scalar(long(d(rng)));
        return m;
    };
    for (int trial = 0; trial < 40; ++trial) {
        MatrixRep rho;
        rho.dims = {{0, 2}, {1, 1}};
        rho.matrices[0] = rnd(2, 2);
        rho.matrices[1] = rnd(2, 2);
        rho.matrices[2] = rnd(2, 1);
        rho.matrices[3] = rnd(1, 2);
        Matrix<Scalar> mu = moment_map(rho, fd).at(0);
        CHECK(mu == evaluate_rep(rho, fd.quiver, preprojective_element(fd, 0)));
        CHECK(mu.is_zero() == check_matrix_rep(rho, alg).pass);
    }
}

// ------------------------------------------------------------- symbolic reps

static Quiver one_loop() {
    Quiver q;
    q.vertices = {{0}};
    q.arrows = {{0, 0, 0, 0, "u"}};
    return q;
}

TEST_CASE("el helpers: identity, product shapes, subtraction") {
    Quiver q = one_loop();
    ElementMatrix id2 = el_identity(2, 0);
    CHECK(id2[0][0] == AlgebraElement::unit(0));
    CHECK(id2[0][1].is_zero());
    ElementMatrix a{{w({0}), AlgebraElement::unit(0)}, {AlgebraElement::zero(), w({0})}};
    ElementMatrix p = el_mul(q, a, id2);
    CHECK(p == a);
    CHECK(el_sub(p, a)[0][0].is_zero());
    ElementMatrix col{{w({0})}, {AlgebraElement::unit(0)}};
    CHECK_THROWS_AS(el_mul(q, col, a), std::invalid_argument);
}

TEST_CASE("apply_symbolic is the multiplicative extension of the arrow data") {
    Quiver q = one_loop();
    SymbolicRep g;
    g.vertex_map = {{0, 0}};
    g.rank = {{0, 2}};
    g.arrow_map[0] = {{w({0}), AlgebraElement::unit(0)}, {AlgebraElement::zero(), w({0})}};
    validate_symbolic_rep(g, q, q);

    ElementMatrix u2 = apply_symbolic(g, w({0, 0}), q, q);
    CHECK(u2[0][0] == w({0, 0}));
    CHECK(u2[0][1] == w({0}, Scalar(2))); // u.e + e.u = 2u
    CHECK(u2[1][0].is_zero());
    CHECK(u2[1][1] == w({0, 0}));

    ElementMatrix triv = apply_symbolic(g, AlgebraElement::unit(0), q, q);
    CHECK(triv == el_identity(2, 0));
    CHECK_THROWS_AS(apply_symbolic(g, AlgebraElement::zero(), q, q), std::invalid_argument);
}

TEST_CASE("compose_symbolic: identity neutral, block substitution, associativity") {
    Quiver q = one_loop();
    SymbolicRep id;
    id.vertex_map = {{0, 0}};
    id.rank = {{0, 1}};
    id.arrow_map[0] = {{w({0})}};

    SymbolicRep f;
    f.vertex_map = {{0, 0}};
    f.rank = {{0, 2}};
    f.arrow_map[0] = {{w({0}), AlgebraElement::unit(0)}, {AlgebraElement::zero(), w({0})}};

    SymbolicRep g;
    g.vertex_map = {{0, 0}};
    g.rank = {{0, 1}};
    g.arrow_map[0] = {{w({0, 0})}};

    SymbolicRep h;
    h.vertex_map = {{0, 0}};
    h.rank = {{0, 2}};
    h.arrow_map[0] = {{AlgebraElement::zero(), w({0})}, {AlgebraElement::unit(0),
                                                         AlgebraElement::zero()}};

    SymbolicRep lf = compose_symbolic(id, f, q, q, q);
    SymbolicRep rf = compose_symbolic(f, id, q, q, q);
    CHECK(lf.arrow_map.at(0) == f.arrow_map.at(0));
    CHECK(rf.arrow_map.at(0) == f.arrow_map.at(0));

    // u under g then f: substitute f into u^2
    SymbolicRep fg = compose_symbolic(f, g, q, q, q);
    CHECK(fg.rank.at(0) == 2);
    CHECK(fg.arrow_map.at(0) == apply_symbolic(f, w({0, 0}), q, q));

    SymbolicRep a1 = compose_symbolic(f, compose_symbolic(g, h, q, q, q), q, q, q);
    SymbolicRep a2 = compose_symbolic(compose_symbolic(f, g, q, q, q), h, q, q, q);
    CHECK(a1.rank.at(0) == 4);
    CHECK(a1.vertex_map == a2.vertex_map);
    CHECK(a1.rank == a2.rank);
    CHECK(a1.arrow_map.at(0) == a2.arrow_map.at(0));
}

TEST_CASE("validate_symbolic_rep enforces shapes, typing and framing rigidity") {
    Quiver q = one_loop();
    SymbolicRep g;
    g.vertex_map = {{0, 0}};
    g.rank = {{0, 2}};
    g.arrow_map[0] = {{w({0})}}; // wrong shape: 1 x 1 for rank 2
    CHECK_THROWS_AS(validate_symbolic_rep(g, q, q), std::invalid_argument);

    SymbolicRep missing;
    missing.vertex_map = {{0, 0}};
    missing.rank = {{0, 1}};
    CHECK_THROWS_AS(validate_symbolic_rep(missing, q, q), std::invalid_argument);

    // framing vertices are rigid: rank one and framing image required
    FramedDoubleQuiver fd = framed_jordan();
    const Quiver& fq = fd.quiver;
    SymbolicRep r;
    for (const auto& vx : fq.vertices) {
        r.vertex_map[vx.id] = vx.id;
        r.rank[vx.id] = 1;
    }
    for (const auto& ar : fq.arrows) r.arrow_map[ar.id] = {{w({ar.id})}};
    validate_symbolic_rep(r, fq, fq); // identity passes

    SymbolicRep fat = r;
    fat.rank[1] = 2;
    fat.arrow_map[2] = {{w({2})}, {AlgebraElement::zero()}};
    fat.arrow_map[3] = {{w({3}), AlgebraElement::zero()}};
    CHECK_THROWS_AS(validate_symbolic_rep(fat, fq, fq), std::invalid_argument);

    SymbolicRep unframed = r;
    unframed.vertex_map[1] = 0; // framing vertex sent to an ordinary vertex
    CHECK_THROWS_AS(validate_symbolic_rep(unframed, fq, fq), std::invalid_argument);

    // a mistyped entry: loop arrow mapped to the framing arrow i
    SymbolicRep mistyped = r;
    mistyped.arrow_map[0] = {{w({2})}};
    CHECK_THROWS_AS(validate_symbolic_rep(mistyped, fq, fq), std::invalid_argument);
}

TEST_CASE("check_symbolic_rep reduces relation images against the target ideal") {
    // source: k[u]/(u^2); target: two-step nilpotent k[z]/(z^3) with u -> z^2
    Quiver qu = one_loop();
    QuiverAlgebra source(qu, {w({0, 0})});
    Quiver qz;
    qz.vertices = {{0}};
    qz.arrows = {{0, 0, 0, 0, "z"}};
    QuiverAlgebra target3(qz, {w({0, 0, 0})});

    SymbolicRep g;
    g.vertex_map = {{0, 0}};
    g.rank = {{0, 1}};
    g.arrow_map[0] = {{w({0, 0})}};
    SymbolicCheck ok = check_symbolic_rep(g, source, target3, 6);
    CHECK(ok.all_proved);
    CHECK(ok.unresolved.empty());

    // u -> z does not kill u^2 in k[z]/(z^3)
    SymbolicRep badrep;
    badrep.vertex_map = {{0, 0}};
    badrep.rank = {{0, 1}};
    badrep.arrow_map[0] = {{w({0})}};
    SymbolicCheck bad = check_symbolic_rep(badrep, source, target3, 6);
    CHECK_FALSE(bad.all_proved);
    REQUIRE(bad.unresolved.size() == 1);
    CHECK(bad.unresolved[0] == std::array<int, 3>{0, 0, 0});
}

// ------------------------------------------------------------------- charts

// two-object groupoid: a: 0 -> 1 and b: 1 -> 0 mutually inverse
static QuiverAlgebra groupoid() {
    Quiver q;
    q.vertices = {{0}, {1}};
    q.arrows = {{0, 0, 1, 0, "a"}, {1, 1, 0, 0, "b"}};
    std::vector<AlgebraElement> rels = {w({0, 1}) - AlgebraElement::unit(1),
                                        w({1, 0}) - AlgebraElement::unit(0)};
    return QuiverAlgebra(q, rels);
}

static QuiverAlgebra point_algebra() {
    Quiver q;
    q.vertices = {{0}};
    return QuiverAlgebra(q, {});
}

static ChartTriple groupoid_chart() {
    ChartTriple c;
    c.big = groupoid();
    c.chart = point_algebra();
    c.g0i.vertex_map = {{0, 0}};
    c.g0i.rank = {{0, 1}};
    c.gi0.vertex_map = {{0, 0}, {1, 0}};
    c.gi0.rank = {{0, 1}, {1, 1}};
    c.gi0.arrow_map[0] = {{AlgebraElement::unit(0)}};
    c.gi0.arrow_map[1] = {{AlgebraElement::unit(0)}};
    c.gerbe[1] = {{w({1})}};     // path 1 -> 0
    c.gerbe_inv[1] = {{w({0})}}; // path 0 -> 1
    return c;
}

TEST_CASE("verify_chart accepts the two-object groupoid chart") {
    ChartTriple c = groupoid_chart();
    ChartReport rep = verify_chart(c, 4);
    CHECK(rep.all_proved);
    CHECK(rep.unresolved.empty());
}

TEST_CASE("verify_chart pinpoints a wrong gerbe and a missing one") {
    ChartTriple c = groupoid_chart();
    c.gerbe[1] = {{w({1}, Scalar(2))}};
    ChartReport rep = verify_chart(c, 4);
    CHECK_FALSE(rep.all_proved);
    bool saw_conj = false, saw_witness = false;
    for (const auto& s : rep.unresolved) {
        if (s.rfind("conjugation:", 0) == 0) saw_conj = true;
        if (s.rfind("witness:", 0) == 0) saw_witness = true;
    }
    CHECK(saw_conj);
    CHECK(saw_witness);

    ChartTriple blank = groupoid_chart();
    blank.gerbe.erase(1);
    CHECK_THROWS_AS(verify_chart(blank, 4), std::invalid_argument);

    ChartTriple fat = groupoid_chart();
    fat.g0i.rank[0] = 2;
    fat.gi0.arrow_map[0] = {{AlgebraElement::unit(0), AlgebraElement::zero()}};
    CHECK_THROWS_AS(verify_chart(fat, 4), std::invalid_argument);
}

TEST_CASE("verify_chart trivial self-chart needs no gerbe data") {
    ChartTriple c;
    c.big = point_algebra();
    c.chart = point_algebra();
    c.g0i.vertex_map = {{0, 0}};
    c.g0i.rank = {{0, 1}};
    c.gi0 = c.g0i;
    ChartReport rep = verify_chart(c, 2);
    CHECK(rep.all_proved);
}

// ---------------------------------------------------- coordinate standardize

TEST_CASE("coordinate_standardize: empty series is the identity change") {
    FramedDoubleQuiver fd = framed_jordan();
    AlgebraElement mu = preprojective_element(fd, 0);
    Standardization s = coordinate_standardize({mu}, fd, {1}, {}, {}, 6);
    CHECK(s.verified);
    REQUIRE(s.standard.size() == 1);
    CHECK(s.standard[0] == mu);
    CHECK(s.sigma.at(1) == w({1}));
    CHECK(s.sigma_inverse.at(1) == w({1}));
}

TEST_CASE("coordinate_standardize recovers the standard form of a decorated relation") {
    FramedDoubleQuiver fd = framed_jordan();
    const Quiver& q = fd.quiver;
    AlgebraElement mu = preprojective_element(fd, 0);

    // sigma: y -> y + yxy, i -> i + (1/3) iji; raw = sigma(mu)
    std::map<int, AlgebraElement> man;
    man[1] = w({1}) + w({1, 0, 1});
    man[2] = w({2}) + w({2, 3, 2}, Scalar(Rat(1) / 3));
    AlgebraElement raw = substitute(mu, man, q, 40);
    CHECK(raw != mu);

    Standardization s =
        coordinate_standardize({raw}, fd, {1}, {Rat(1)}, {Rat(1) / 3}, 8);
    CHECK(s.verified);
    CHECK(s.standard[0] == mu);
    CHECK(s.sigma.at(1) == man[1]);
    CHECK(s.sigma.at(2) == man[2]);

    // the inverse series really inverts up to the working length
    AlgebraElement back = substitute(s.sigma.at(1), s.sigma_inverse, q, 8);
    CHECK(back == w({1}));

    // mismatched decoration is detected
    Standardization wrong = coordinate_standardize({raw}, fd, {1}, {Rat(2)}, {Rat(1) / 3}, 8);
    CHECK_FALSE(wrong.verified);
}

TEST_CASE("coordinate_standardize input validation") {
    FramedDoubleQuiver fd = framed_jordan();
    AlgebraElement mu = preprojective_element(fd, 0);
    // not a loop at an unframed vertex
    CHECK_THROWS_AS(coordinate_standardize({w({2})}, fd, {1}, {}, {}, 4),
                    std::invalid_argument);
    // duplicate vertex
    CHECK_THROWS_AS(coordinate_standardize({mu, mu}, fd, {1}, {}, {}, 4),
                    std::invalid_argument);
    // both orientations of the doubled pair deformed
    CHECK_THROWS_AS(coordinate_standardize({mu}, fd, {0, 1}, {}, {}, 4),
                    std::invalid_argument);
    // framing arrows are not doubled
    CHECK_THROWS_AS(coordinate_standardize({mu}, fd, {2}, {}, {}, 4), std::invalid_argument);
}

// ------------------------------------------------------------ stable family

TEST_CASE("stable_family_check certifies the groupoid line family") {
    QuiverAlgebra big = groupoid();
    QuiverAlgebra chart = point_algebra();
    SymbolicRep g;
    g.vertex_map = {{0, 0}, {1, 0}};
    g.rank = {{0, 1}, {1, 1}};
    g.arrow_map[0] = {{AlgebraElement::unit(0)}};
    g.arrow_map[1] = {{AlgebraElement::unit(0)}};
    CHECK(stable_family_check(g, big, chart, 0, 4) == FamilyVerdict::Stable);

    SymbolicRep dead = g;
    dead.arrow_map[0] = {{AlgebraElement::zero()}};
    dead.arrow_map[1] = {{AlgebraElement::zero()}};
    CHECK(stable_family_check(dead, big, chart, 0, 4) == FamilyVerdict::NotProved);

    CHECK_THROWS_AS(stable_family_check(g, big, chart, 7, 4), std::invalid_argument);
}

TEST_CASE("stable_family_check uses the chart ideal to certify determinants") {
    // big: two parallel arrows 0 -> 1; family over k[u] with rank (1, 2)
    Quiver bq;
    bq.vertices = {{0}, {1}};
    bq.arrows = {{0, 0, 1, 0, "p"}, {1, 0, 1, 0, "q"}};
    QuiverAlgebra big(bq, {});
    Quiver cu = one_loop();

    SymbolicRep g;
    g.vertex_map = {{0, 0}, {1, 0}};
    g.rank = {{0, 1}, {1, 2}};
    g.arrow_map[0] = {{AlgebraElement::unit(0)}, {w({0})}};
    g.arrow_map[1] = {{w({0})}, {AlgebraElement::unit(0)}};

    // free chart: det = e - u^2 is not a unit
    QuiverAlgebra free_chart(cu, {});
    CHECK(stable_family_check(g, big, free_chart, 0, 6) == FamilyVerdict::NotProved);

    // chart k[u]/(u^2): the same determinant reduces to the unit
    QuiverAlgebra nil_chart(cu, {w({0, 0})});
    CHECK(stable_family_check(g, big, nil_chart, 0, 6) == FamilyVerdict::Stable);

    // rank-two reference is rejected
    CHECK_THROWS_AS(stable_family_check(g, big, nil_chart, 1, 6), std::invalid_argument);
}
