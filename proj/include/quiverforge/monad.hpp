#pragma once

#include "quiverforge/rep.hpp"

#include <string>
#include <vector>

namespace qf {

// ------------------------------------------------------------- preprojective

// kQ modulo the plain preprojective relation at every vertex.
QuiverAlgebra preprojective_algebra(const DoubleQuiver& dq);

// Path algebra of the framed quiver modulo the framed preprojective relation
// (moment-map word plus i_v j_v) at every unframed vertex.
QuiverAlgebra framed_preprojective_algebra(const FramedDoubleQuiver& fd);

// --------------------------------------------------------- bimodule operators

// Formal sum of maps eta |-> L * eta * m acting on a free module of column
// vectors with path-algebra entries: L a scalar matrix, m a path monomial
// (scalar coefficients are folded into L).  All monomials of one operator
// share head/tail vertices and all matrices share the shape, so an operator
// is a well-typed block of a differential.
class BimoduleOperator {
public:
    BimoduleOperator() = default;
    BimoduleOperator(long rows, long cols, int src_vertex, int tgt_vertex);

    long rows() const { return rows_; }
    long cols() const { return cols_; }
    // head of every monomial: the source term's coefficient vertex
    int src_vertex() const { return src_; }
    // tail of every monomial: the target term's coefficient vertex
    int tgt_vertex() const { return tgt_; }
    bool is_zero() const { return parts_.empty(); }
    const std::map<PathMonomial, Matrix<Scalar>>& parts() const { return parts_; }

    // accumulate L * eta * r, distributing r over its monomials
    void add(const Quiver& q, const Matrix<Scalar>& left, const AlgebraElement& right);

    BimoduleOperator operator+(const BimoduleOperator& o) const;
    bool operator==(const BimoduleOperator& o) const;

    // second(first(eta)): monomials concatenate, matrices multiply
    static BimoduleOperator compose(const Quiver& q, const BimoduleOperator& second,
                                    const BimoduleOperator& first);

    // entries of the matrix-position (row, col) slice as one algebra element
    AlgebraElement entry_element(long row, long col) const;

private:
    long rows_ = 0, cols_ = 0;
    int src_ = -1, tgt_ = -1;
    std::map<PathMonomial, Matrix<Scalar>> parts_;
};

// ---------------------------------------------------------------- free complex

// One generator block: multiplicity copies of the left module A e_vertex
// (coefficient words have tail = vertex; differentials multiply on the right).
struct FreeTerm {
    std::string label;
    int vertex = -1;
    long multiplicity = 0;
};

// Three-term complex of free modules terms[0] -> terms[1] -> terms[2] with
// differentials stored blockwise as d[target][source].
struct FreeComplex {
    std::array<std::vector<FreeTerm>, 3> terms;
    std::vector<std::vector<BimoduleOperator>> d0, d1;
    QuiverAlgebra coefficient_algebra;

    long rank(int position) const; // total multiplicity of terms[position]
    int term_index(int position, const std::string& label) const; // -1 if absent
};

// throws std::invalid_argument on block-shape or label violations
void validate_complex(const FreeComplex& c);

// ------------------------------------------------------------------- builders

// Monad of a point of the ADHM variety: <alpha_1> -> <Xt, Yt, Jt> -> <alpha_2>
// over the Jordan-quiver algebra mod xy - yx, with d0 = (B1. - .x, B2. - .y,
// j.) and d1 = (-(B2. - .y), B1. - .x, i.).  fd supplies the arrow ids (two
// loops in id order are x, y); a supplies the coefficient algebra on the same
// loop ids.  Requires B1 B2 - B2 B1 + i j = 0.
FreeComplex build_adhm_monad(const MatrixRep& rho, const FramedDoubleQuiver& fd,
                             const QuiverAlgebra& a);

// Nakajima-style monad of a framed representation over the plain preprojective
// algebra: <M_v> -> <X_c per doubled arrow, J_v per framed vertex> -> <P_v>.
// Signs follow fd.epsilon; requires moment_map(rho, fd) = 0.
FreeComplex build_nakajima_monad(const MatrixRep& rho, const FramedDoubleQuiver& fd,
                                 const QuiverAlgebra& a);

// Framed-functor complex over the framed preprojective algebra afr:
// <alpha_1 per vertex> -> <Xt_c, It_v, Jt_v> -> <alpha_2, alpha_3 per vertex>,
// assembled per vertex; on the framed Jordan quiver this is the displayed
// 1x4 / 4x2 block complex.  Requires moment_map(rho, fd) = 0.
FreeComplex build_framed_functor_complex(const MatrixRep& rho, const FramedDoubleQuiver& fd,
                                         const QuiverAlgebra& afr);

// ------------------------------------------------------------------- checking

struct DSquaredReport {
    bool proved = true;
    std::vector<std::array<int, 2>> unresolved; // (target row, source col) blocks
};

// Every matrix position of every block of d1 after d0 must reduce to zero
// against the coefficient ideal's effort-bounded completion.
DSquaredReport verify_d_squared(const FreeComplex& c, int effort_degree);

// ------------------------------------------------------------ point evaluation

struct PointProfile {
    long rank_d0 = 0;
    long rank_d1 = 0;
    long cohomology = 0; // middle rank - rank d0 - rank d1
};

// Specialize the coefficient side at a point of the plane: the two loops of
// the coefficient quiver (id order) become x and y, every other arrow acts by
// zero, and ranks are taken exactly.
PointProfile evaluate_adhm_at_point(const FreeComplex& c, const Scalar& x, const Scalar& y);

// profiles over a point grid; rows are evaluated in parallel
std::vector<PointProfile> evaluate_adhm_grid(const FreeComplex& c,
                                             const std::vector<std::pair<Scalar, Scalar>>& pts);

// ---------------------------------------------------------------- slice model

// Basis vector of the path-length filtration: unit copy `unit` of terms[pos]
// [term] tensored with the irreducible word `word`.
struct SliceBasisVector {
    int term = 0;
    long unit = 0;
    PathMonomial word{{}, -1};
};

// Irreducible coefficient words of tail = term vertex and length <= cap, per
// term, ordered by (length, word) so a smaller cap's basis is a prefix.
std::vector<SliceBasisVector> slice_basis(const FreeComplex& c, int position, int cap);

// Matrix of d0 (which = 0) or d1 (which = 1) from the cap_src filtration piece
// to the cap_tgt one.  The relations are length-homogeneous, so images of
// length <= cap_src + 1 stay inside cap_tgt >= cap_src + 1.
Matrix<Scalar> slice_matrix(const FreeComplex& c, int which, int cap_src, int cap_tgt);

struct SliceReport {
    long h0 = 0; // dim ker d0 on the level piece
    long h1 = 0; // dim ker d1 on the level piece modulo d0 of the slack piece
};

// Homology of the filtration slice: kernels at positions 0 and 1 computed on
// words of length <= level, with d0-preimages searched in length <= level +
// slack.
SliceReport slice_exactness(const FreeComplex& c, int level, int slack = 2);

} // namespace qf
