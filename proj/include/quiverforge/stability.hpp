#pragma once

#include "quiverforge/linalg.hpp"
#include "quiverforge/rep.hpp"

#include <map>
#include <string>

namespace qf {

// Per-vertex exact basis columns of a graded subspace.  Only unframed vertices
// may carry entries; a missing vertex means the zero subspace there.
template <typename K> using GradedSubspace = std::map<int, Matrix<K>>;

// Independent columns spanning the column space of m.
template <typename K> Matrix<K> column_space_basis(const Matrix<K>& m);

// Field-generic representation data (the stability layer runs over the exact
// scalar tower and over small finite fields for cross-checks).
template <typename K> struct FieldRep {
    DimensionVector dims;
    std::map<int, Matrix<K>> matrices; // absent arrows act by zero
};

FieldRep<Scalar> as_field_rep(const MatrixRep& rho);

// Smallest B-invariant graded subspace containing the seed, by exact span
// saturation.  The default seed is the image of all framing-in maps.
template <typename K>
GradedSubspace<K> min_invariant_containing(const FieldRep<K>& rho, const FramedDoubleQuiver& fd);
template <typename K>
GradedSubspace<K> min_invariant_containing(const FieldRep<K>& rho, const FramedDoubleQuiver& fd,
                                           const GradedSubspace<K>& seed);

// Largest B-invariant graded subspace inside the kernels of all framing-out
// maps, by exact kernel-intersection iteration to the fixpoint.
template <typename K>
GradedSubspace<K> max_invariant_in_kernel(const FieldRep<K>& rho, const FramedDoubleQuiver& fd);

enum class StabilityMode { Framed, Unframed };
enum class StabilityVerdict { Stable, SemistableOnly, Unstable, Unknown };

template <typename K> struct StabilityResult {
    StabilityVerdict verdict = StabilityVerdict::Unknown;
    GradedSubspace<K> witness; // a verified destabilizer when verdict == Unstable
    std::string detail;
};

// Exact verdict when every unframed dimension is at most one (full graded
// enumeration) or when zeta is sign-definite (closure criteria).  Otherwise a
// bounded structured + randomized witness search that may return Unknown.
// Unframed mode requires zeta . dim V = 0 and ignores framing conditions.
template <typename K>
StabilityResult<K> is_stable(const FieldRep<K>& rho, const Weight& zeta, StabilityMode mode,
                             const FramedDoubleQuiver& fd, unsigned seed = 0);

enum class WitnessVerdict { ValidDestabilizer, NotADestabilizer, NotInvariant };

// Exact audit of a claimed destabilizer: B-invariance, the kernel / image side
// conditions, and the strict inequality that breaks semistability.
template <typename K>
WitnessVerdict verify_witness(const FieldRep<K>& rho, const GradedSubspace<K>& s,
                              const Weight& zeta, StabilityMode mode,
                              const FramedDoubleQuiver& fd);

// Torus gauge normalization for rank-(1,...,1) representations of the affine
// cycle: u_arrows[k-1] / v_arrows[k-1] are the arrow ids of u_k: k -> k+1 and
// v_k: k+1 -> k (cyclic, 1-based k up to n+1).  Chart i designates
// v_1..v_{i-1}, u_{i+1}..u_{n+1}; the result sets them to 1 and rescales the
// rest by the induced torus action, preserving every u_k v_k.
MatrixRep gauge_normalize_an(const MatrixRep& rho, const Quiver& q,
                             const std::vector<int>& u_arrows, const std::vector<int>& v_arrows,
                             int chart_index);

enum class McRegionTag { DefS, DefT, None };

// Classifies a deformation pair against the valuation inequalities of the
// region covers.  Sphere sites (torus_site = false) take (u_j, v_j) at
// j = 1..n+1; torus sites take (x_i, y_i) at i = 1..n.  Values must lie in
// the nonnegative-valuation subring; truncation windows too small to decide a
// bound are rejected.
McRegionTag mc_region_classify(const Scalar& first, const Scalar& second, int index, int n,
                               const Rat& area, const Rat& area_prime, bool torus_site);

} // namespace qf
