#pragma once

#include "quiverforge/localization.hpp"
#include "quiverforge/rep.hpp"

#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace qf {

// ------------------------------------------------------------- stack descents
//
// A stack of quiver algebras: charts glued along opens by symbolic
// representations G_ij : A_j -> A_i that compose only up to conjugation by
// invertible gerbe terms c_ijk.  Opens are named by the sorted set of chart
// ids whose intersection they describe; every singleton {i} is implicitly the
// domain of chart i.  Localization is declared per (chart, open): on a larger
// open a chart is localized at the union of the designations declared on all
// of its sub-opens, so designations on {i} hold everywhere and designations
// on {i,j} hold on every open refining the pairwise overlap.

using OpenSet = std::vector<int>; // sorted, duplicate-free chart ids

// One matrix block to invert (rows share heads, columns share tails).
struct LocalizedMatrix {
    std::vector<std::vector<AlgebraElement>> entries;
    std::string name_prefix; // empty: auto-generated arrow names
};

// Invertibility designations of one chart on one open.  Matrix blocks are
// adjoined before scalar elements; repeated designations of the same element
// or block across opens share a single added inverse arrow.
struct LocDesignation {
    std::vector<LocalizedMatrix> matrices;
    std::vector<LocalizedElement> scalars;
};

// Gerbe term c_ijk at a vertex v of chart k: `value` has shape
// (rank of G_ij∘G_jk at v) x (rank of G_ik at v), `inverse` is the two-sided
// inverse witness.  Undeclared terms default to the identity whenever the
// composite and direct images agree in vertex and rank.
struct GerbeTerm {
    ElementMatrix value;
    ElementMatrix inverse;
};

struct StackDescriptor {
    std::vector<QuiverAlgebra> charts; // chart id = index
    std::vector<std::string> labels;   // display names, same indexing
    std::vector<OpenSet> opens;        // declared overlaps (non-singletons drive checks)
    std::map<std::pair<int, OpenSet>, LocDesignation> localizations;
    // (target chart i, source chart j) -> G_ij.  Arrow maps may cover inverse
    // arrows from any open's localization of chart j; checks on an open only
    // consult the arrows present there.
    std::map<std::pair<int, int>, SymbolicRep> transitions;
    // (i, j, k, vertex of chart k) -> c_ijk at that vertex
    std::map<std::tuple<int, int, int, int>, GerbeTerm> gerbes;
    bool framed = false;
};

// Chart `chart` localized at everything designated on sub-opens of `open`.
// Arrow ids are stable across opens of the same chart: the union of all
// designations is adjoined in a fixed order and each open keeps the subset
// of inverse arrows its designations produce.
QuiverAlgebra localized_chart(const StackDescriptor& s, int chart, const OpenSet& open);

// ------------------------------------------------------------- verification

struct StackCheck {
    std::string label;  // e.g. "cocycle[0,1,0] u1 open{0,1}"
    bool proved = false;
    std::string detail; // first unresolved entry / located identity on failure
};

struct StackReport {
    bool all_proved = false;
    std::vector<StackCheck> checks;   // deterministic order
    std::vector<std::string> errors;  // missing transitions, ill-typed gerbes
    std::size_t proved_count() const;
    std::string summary() const;      // one line per failed check plus totals
};

// Effort-bounded verification of the full descent package.  Per declared open
// and ordered chart pair: relation preservation of G_ij between the localized
// charts.  Per ordered triple (i,j,k) with i != j, j != k sharing an open:
// the cocycle identity G_ij∘G_jk(a) = c_ijk(h(a)) · G_ik(a) · c_ijk(t(a))^-1
// entrywise for every arrow of the localized chart k (G_ii is the identity).
// Per ordered quadruple, the tetrahedron identity
// c_ijk(G_kl(v)) · c_ikl(v) = G_ij(c_jkl(v)) · c_ijl(v) at every vertex.
// Declared gerbe witnesses are checked two-sided, and framed stacks must keep
// trivial gerbes at framing vertices.  Checks run concurrently per task with
// a deterministic report order.
StackReport verify_stack(const StackDescriptor& s, int effort_degree);

// Arrows touching framing vertices are set to zero, framing vertices are
// removed everywhere (charts, relations, transitions, gerbes), and the
// framing flag is cleared.
StackDescriptor unframe(const StackDescriptor& s);

// ------------------------------------------------------- commutativity report

struct CommutativityPair {
    int arrow_a = -1, arrow_b = -1;
    bool proved = false;
    bool via_transfer = false; // proved by pushing through g0i into the big algebra
};

struct CommutativityReport {
    bool all_proved = true;
    std::vector<CommutativityPair> pairs;
};

// For a single-vertex chart inside a verified chart triple: every generator
// pair u,w gets uw - wu proved as an ideal member, directly in the chart when
// possible and otherwise transferred through g0i (which is injective up to
// the gerbe, so membership of the image certifies the chart identity).
CommutativityReport commutativity_check(const ChartTriple& c, int effort_degree);

// ---------------------------------------------------------------- builtins

// Cyclic A_n stack: the affine chart algebra A_0 on vertices 1..n+1 with the
// weakly unobstructed relations v_j u_j = u_{j-1} v_{j-1}, one two-loop chart
// per resolution vertex i = 1..n+1, transitions G_i0 / G_0i / G_ik and the
// path-product gerbes c_0i0.  With torus charts, one Laurent chart per
// consecutive overlap joins the lattice.  Area constants are specialized to
// T = 1; Novikov coefficients reinstate them on user-supplied descriptors.
StackDescriptor builtin_an_stack(int n, bool include_torus_charts = false);

// Framed A_1 stack: two framed charts over the framed affine algebra, with
// u v - v u = i1 j1 + i2 j2 chart relations and gerbes c_010, c_020.
StackDescriptor builtin_framed_a1_stack();

// D_4 stack: the central algebra on the star quiver localized at arrow
// matrices, three commutative surface charts with their primed partners,
// transitions G_22', G_33', G_44', G_32 and the chart packages (G_0k, G_k0,
// matrix gerbes).
StackDescriptor builtin_d4_stack();

// Chart triples extracted from the builtins, for verify_chart and the
// commutativity report.  an_chart_triple: chart i of the A_n stack; with
// free_chart the chart drops its commutator relation so commutativity is
// only provable by transfer.  d4_chart_triple: k in {2, 3, 4}.
ChartTriple an_chart_triple(int n, int i, bool free_chart = false);
ChartTriple d4_chart_triple(int k);

// ---------------------------------------------------------- extended dga

// Framed preprojective dg algebra: one degree -1 loop t_v per unframed
// vertex with dt_v the framed preprojective generator at v.
struct ExtendedDga {
    QuiverAlgebra algebra;
    std::map<int, AlgebraElement> differential; // arrow id -> image
    std::map<int, int> shifted_loop;            // unframed vertex -> t_v arrow id
};
ExtendedDga extended_dga(const FramedDoubleQuiver& fd);

} // namespace qf
