#pragma once

#include "quiverforge/algebra.hpp"

#include <string>
#include <vector>

namespace qf {

// Result of a localization.  The algebra keeps every original vertex, arrow
// id, and relation, so elements and membership certificates of the source
// algebra remain valid verbatim.
struct Localization {
    QuiverAlgebra algebra;
    // scalar form: one added arrow per localized element, in input order
    std::vector<int> inverse_arrows;
    // matrix form: gamma[j][i] is the arrow inverting entry (i,j) blockwise
    std::vector<std::vector<int>> gamma;
};

// An element to invert, with an optional display name for the added arrow.
struct LocalizedElement {
    AlgebraElement element;
    std::string name; // empty: auto-generated
};

// Universal localization at vertex-homogeneous elements: per element gamma,
// adds an arrow gamma^{-1} from head(gamma) to tail(gamma) and the relations
// gamma·gamma^{-1} - e_{head} and gamma^{-1}·gamma - e_{tail}.
Localization localize_scalar(const QuiverAlgebra& a, const std::vector<LocalizedElement>& s);

// Universal localization at an m×n matrix S of vertex-homogeneous elements
// (rows share heads, columns share tails; zero entries allowed as long as
// every row and column has one nonzero entry).  Adds the n×m arrow matrix
// gamma with tail(gamma_ji) = head(s_ij), head(gamma_ji) = tail(s_ij), and
// the entrywise relations gamma·S = diag(e_tail), S·gamma = diag(e_head).
// Solvability of S is deliberately not checked.
Localization localize_matrix(const QuiverAlgebra& a,
                             const std::vector<std::vector<AlgebraElement>>& s,
                             const std::string& name_prefix = "");

// Inverse of a single-term element c·w where every arrow of w has an inverse
// partner arrow: c^{-1} times the reversed word of partners.  Throws on sums,
// zero, and arrows inverted only as part of a matrix or composite element.
AlgebraElement invert_monomial(const AlgebraElement& f, const QuiverAlgebra& a);

} // namespace qf
