#pragma once

#include "quiverforge/algebra.hpp"
#include "quiverforge/linalg.hpp"

#include <array>
#include <set>

namespace qf {

// ---------------------------------------------------------------- matrix reps

// Exact matrix representation: matrices[a] has shape dims[head] x dims[tail];
// arrows with no entry act by zero.  Trivial paths evaluate to identities.
struct MatrixRep {
    DimensionVector dims;
    std::map<int, Matrix<Scalar>> matrices;
};

// Evaluate a vertex-homogeneous element (throws on mixed or missing dims).
Matrix<Scalar> evaluate_rep(const MatrixRep& rho, const Quiver& q, const AlgebraElement& f);

struct RepCheck {
    bool pass = true;
    int relation = -1;             // index of the first failing relation
    Matrix<Scalar> residual{0, 0}; // its nonzero evaluation
};
RepCheck check_matrix_rep(const MatrixRep& rho, const QuiverAlgebra& a);

// Per-vertex moment map sum_{t(a)=v} eps(a) B_rev(a) B_a + i_v j_v on the
// unframed vertices.  Throws when a doubled arrow lacks epsilon/reverse data.
std::map<int, Matrix<Scalar>> moment_map(const MatrixRep& rho, const FramedDoubleQuiver& fd);

// Standard preprojective generator at v (framed when v carries framing data).
AlgebraElement preprojective_element(const FramedDoubleQuiver& fd, int v);

// -------------------------------------------------------------- symbolic reps

// Matrices with entries in a path algebra, row-major.
using ElementMatrix = std::vector<std::vector<AlgebraElement>>;

ElementMatrix el_identity(long n, int vertex);
ElementMatrix el_mul(const Quiver& q, const ElementMatrix& a, const ElementMatrix& b);
ElementMatrix el_sub(const ElementMatrix& a, const ElementMatrix& b);

// Representation of one quiver algebra by matrices over another: vertex v of
// the source is sent to a free rank(v) block over target vertex vertex_map[v],
// and arrow a to a rank(h(a)) x rank(t(a)) matrix of target elements.
// Framing vertices are rigid: rank one, mapped to framing vertices.
struct SymbolicRep {
    std::map<int, int> vertex_map;
    std::map<int, long> rank;
    std::map<int, ElementMatrix> arrow_map;
};

void validate_symbolic_rep(const SymbolicRep& g, const Quiver& source, const Quiver& target);

// Multiplicative extension to a vertex-homogeneous element; matrix products
// follow right-to-left path composition.
ElementMatrix apply_symbolic(const SymbolicRep& g, const AlgebraElement& f,
                             const Quiver& source, const Quiver& target);

// g after h: h maps h_source into g's source (quiver `mid`), g maps into
// `target`.  Ranks multiply; arrow matrices compose by blockwise substitution.
SymbolicRep compose_symbolic(const SymbolicRep& g, const SymbolicRep& h, const Quiver& h_source,
                             const Quiver& mid, const Quiver& target);

struct SymbolicCheck {
    bool all_proved = true;
    std::vector<std::array<int, 3>> unresolved; // (relation index, row, col)
};
SymbolicCheck check_symbolic_rep(const SymbolicRep& g, const QuiverAlgebra& source,
                                 const QuiverAlgebra& target, int effort_degree);

// --------------------------------------------------------------------- charts

// Affine chart of `big` centered at a rank-one vertex: mutually inverse
// representations up to the gerbe.  gerbe[v] is the rank(v) x 1 column of
// paths from v to its anchor (the composite-image vertex); gerbe_inv[v] the
// 1 x rank(v) row of inverse witnesses.  Missing entries default to the
// trivial e_v column when the anchor is v itself.
struct ChartTriple {
    QuiverAlgebra chart;
    QuiverAlgebra big;
    SymbolicRep g0i; // chart arrows -> big elements (all ranks one)
    SymbolicRep gi0; // big arrows -> chart matrices
    std::map<int, ElementMatrix> gerbe;
    std::map<int, ElementMatrix> gerbe_inv;
};

struct ChartReport {
    bool all_proved = true;
    std::vector<std::string> unresolved; // labels of failed sub-checks
};

// (1) gi0 after g0i fixes every chart arrow mod the chart ideal; (2) g0i after
// gi0 conjugates every big arrow by the gerbe; (3) gerbe witnesses invert.
ChartReport verify_chart(const ChartTriple& c, int effort_degree);

// --------------------------------------------------- coordinate standardizing

// Result of rewriting a deformed obstruction into the standard preprojective
// form: sigma deforms each chosen arrow x_a by the series 1 + sum a_j (x_rev
// x_a)^j (and i_v by the b-series); sigma_inverse undoes it up to truncation.
struct Standardization {
    std::map<int, AlgebraElement> sigma;
    std::map<int, AlgebraElement> sigma_inverse;
    std::vector<AlgebraElement> standard; // standard generator per raw entry
    bool verified = false;
};

// raw[k] must be a vertex-homogeneous loop; `deformed` picks one arrow per
// doubled pair to carry the series.  Verification: substituting sigma into the
// standard generators reproduces raw, and sigma_inverse is a two-sided inverse
// of sigma on every deformed arrow, all modulo path length effort_degree.
Standardization coordinate_standardize(const std::vector<AlgebraElement>& raw,
                                       const FramedDoubleQuiver& fd, const std::set<int>& deformed,
                                       const std::vector<Rat>& a_series,
                                       const std::vector<Rat>& b_series, int effort_degree);

// -------------------------------------------------------------- stable family

enum class FamilyVerdict { Stable, NotProved };

// Generation certificate for the family g : big -> chart at a rank-one
// reference vertex: breadth-first words from the e_{v1} coordinate line must
// produce, for every big vertex, a square matrix of columns whose determinant
// has a nonzero scalar normal form mod the chart ideal.  word_cap 0 means
// one more than the number of big vertices.
FamilyVerdict stable_family_check(const SymbolicRep& g, const QuiverAlgebra& big,
                                  const QuiverAlgebra& chart, int reference_vertex,
                                  int effort_degree, int word_cap = 0);

} // namespace qf
