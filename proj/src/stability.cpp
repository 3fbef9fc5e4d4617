#include "quiverforge/stability.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>

namespace qf {

template <typename K> Matrix<K> column_space_basis(const Matrix<K>& m) {
    Matrix<K> t = m.transpose();
    std::size_t rk = rref(t);
    Matrix<K> out(m.rows(), rk);
    for (std::size_t i = 0; i < rk; ++i)
        for (std::size_t j = 0; j < m.rows(); ++j) out.at(j, i) = t.at(i, j);
    return out;
}

FieldRep<Scalar> as_field_rep(const MatrixRep& rho) { return {rho.dims, rho.matrices}; }

static long dim_of(const DimensionVector& dims, int v) {
    auto it = dims.find(v);
    if (it == dims.end())
        throw std::invalid_argument("representation has no dimension at vertex " +
                                    std::to_string(v));
    if (it->second < 0) throw std::invalid_argument("negative dimension vector entry");
    return it->second;
}

template <typename K>
static Matrix<K> field_matrix(const FieldRep<K>& rho, const Quiver& q, int arrow) {
    const Arrow& a = q.arrow(arrow);
    std::size_t r = dim_of(rho.dims, a.head), c = dim_of(rho.dims, a.tail);
    auto it = rho.matrices.find(arrow);
    if (it == rho.matrices.end()) return Matrix<K>(r, c);
    if (it->second.rows() != r || it->second.cols() != c)
        throw std::invalid_argument("matrix for arrow " + std::to_string(arrow) +
                                    " has the wrong shape");
    return it->second;
}

template <typename K>
static Matrix<K> basis_at(const GradedSubspace<K>& s, const FieldRep<K>& rho, int v) {
    auto it = s.find(v);
    if (it != s.end()) return it->second;
    return Matrix<K>(dim_of(rho.dims, v), 0);
}

// rows annihilating the columns of b (N with N b = 0)
template <typename K> static Matrix<K> left_annihilator(const Matrix<K>& b) {
    return kernel_basis(b.transpose()).transpose();
}

template <typename K> static bool contained_in(const Matrix<K>& cols, const Matrix<K>& space) {
    if (cols.cols() == 0) return true;
    return rank(hstack(space, cols)) == rank(space);
}

template <typename K>
GradedSubspace<K> min_invariant_containing(const FieldRep<K>& rho, const FramedDoubleQuiver& fd,
                                           const GradedSubspace<K>& seed) {
    const Quiver& q = fd.quiver;
    GradedSubspace<K> s;
    for (const auto& vx : q.vertices) {
        if (vx.framing) continue;
        long d = dim_of(rho.dims, vx.id);
        auto it = seed.find(vx.id);
        Matrix<K> b = it != seed.end() ? it->second : Matrix<K>(d, 0);
        if (b.rows() != static_cast<std::size_t>(d))
            throw std::invalid_argument("seed basis row count mismatch at vertex " +
                                        std::to_string(vx.id));
        s[vx.id] = column_space_basis(b);
    }
    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto& [a, eps] : fd.epsilon) {
            const Arrow& ar = q.arrow(a);
            const Matrix<K>& tail = s.at(ar.tail);
            if (tail.cols() == 0) continue;
            Matrix<K> img = field_matrix(rho, q, a) * tail;
            Matrix<K> joined = column_space_basis(hstack(s.at(ar.head), img));
            if (joined.cols() > s.at(ar.head).cols()) {
                s[ar.head] = std::move(joined);
                grew = true;
            }
        }
    }
    return s;
}

template <typename K>
GradedSubspace<K> min_invariant_containing(const FieldRep<K>& rho, const FramedDoubleQuiver& fd) {
    GradedSubspace<K> seed;
    for (const auto& [v, ia] : fd.i_arrow) seed[v] = field_matrix(rho, fd.quiver, ia);
    return min_invariant_containing(rho, fd, seed);
}

template <typename K>
GradedSubspace<K> max_invariant_in_kernel(const FieldRep<K>& rho, const FramedDoubleQuiver& fd) {
    const Quiver& q = fd.quiver;
    GradedSubspace<K> s;
    for (const auto& vx : q.vertices) {
        if (vx.framing) continue;
        long d = dim_of(rho.dims, vx.id);
        auto jt = fd.j_arrow.find(vx.id);
        s[vx.id] = jt == fd.j_arrow.end() ? Matrix<K>::identity(d)
                                          : kernel_basis(field_matrix(rho, q, jt->second));
    }
    bool shrank = true;
    while (shrank) {
        shrank = false;
        for (auto& [v, b] : s) {
            if (b.cols() == 0) continue;
            Matrix<K> constraints(0, b.cols());
            for (const auto& [a, eps] : fd.epsilon) {
                const Arrow& ar = q.arrow(a);
                if (ar.tail != v) continue;
                Matrix<K> ann = left_annihilator(s.at(ar.head));
                if (ann.rows() == 0) continue;
                constraints = vstack(constraints, ann * (field_matrix(rho, q, a) * b));
            }
            if (constraints.rows() == 0) continue;
            Matrix<K> y = kernel_basis(constraints);
            if (y.cols() == b.cols()) continue;
            b = column_space_basis(b * y);
            shrank = true;
        }
    }
    return s;
}

static Rat zeta_at(const Weight& zeta, int v) {
    auto it = zeta.find(v);
    return it == zeta.end() ? Rat(0) : it->second;
}

template <typename K> static Rat zeta_dim(const Weight& zeta, const GradedSubspace<K>& s) {
    Rat total(0);
    for (const auto& [v, b] : s) total += zeta_at(zeta, v) * Rat(static_cast<long>(b.cols()));
    return total;
}

// ------------------------------------------------------------------ verdicts

template <typename K>
WitnessVerdict verify_witness(const FieldRep<K>& rho, const GradedSubspace<K>& s,
                              const Weight& zeta, StabilityMode mode,
                              const FramedDoubleQuiver& fd) {
    const Quiver& q = fd.quiver;
    for (const auto& [v, b] : s) {
        if (!q.has_vertex(v) || q.vertex(v).framing)
            throw std::invalid_argument("witness basis keyed by a non-representation vertex");
        if (b.rows() != static_cast<std::size_t>(dim_of(rho.dims, v)))
            throw std::invalid_argument("witness basis row count mismatch at vertex " +
                                        std::to_string(v));
        if (rank(b) != b.cols())
            throw std::invalid_argument("witness basis columns are not independent");
    }
    Rat zv(0);
    for (const auto& vx : q.vertices)
        if (!vx.framing) zv += zeta_at(zeta, vx.id) * Rat(dim_of(rho.dims, vx.id));
    if (mode == StabilityMode::Unframed && zv != 0)
        throw std::invalid_argument("unframed stability requires zeta . dim V = 0");

    for (const auto& [a, eps] : fd.epsilon) {
        const Arrow& ar = q.arrow(a);
        Matrix<K> img = field_matrix(rho, q, a) * basis_at(s, rho, ar.tail);
        if (!contained_in(img, basis_at(s, rho, ar.head))) return WitnessVerdict::NotInvariant;
    }
    Rat zs = zeta_dim(zeta, s);
    if (mode == StabilityMode::Unframed)
        return zs < 0 ? WitnessVerdict::ValidDestabilizer : WitnessVerdict::NotADestabilizer;

    bool in_kernel = true;
    for (const auto& [v, ja] : fd.j_arrow)
        if (!(field_matrix(rho, q, ja) * basis_at(s, rho, v)).is_zero()) {
            in_kernel = false;
            break;
        }
    if (in_kernel && zs > 0) return WitnessVerdict::ValidDestabilizer;

    bool contains_image = true;
    for (const auto& [v, ia] : fd.i_arrow)
        if (!contained_in(field_matrix(rho, q, ia), basis_at(s, rho, v))) {
            contains_image = false;
            break;
        }
    if (contains_image && zs > zv) return WitnessVerdict::ValidDestabilizer;
    return WitnessVerdict::NotADestabilizer;
}

template <typename K> static bool subspace_is_full(const FieldRep<K>& rho,
                                                   const GradedSubspace<K>& s) {
    for (const auto& [v, b] : s)
        if (b.cols() != static_cast<std::size_t>(dim_of(rho.dims, v))) return false;
    return true;
}

template <typename K> static bool subspace_is_zero(const GradedSubspace<K>& s) {
    for (const auto& [v, b] : s)
        if (b.cols() != 0) return false;
    return true;
}

// exact enumeration when every unframed dimension is 0 or 1: graded subspaces
// are supported subsets
template <typename K>
static StabilityResult<K> enumerate_rank_one(const FieldRep<K>& rho, const Weight& zeta,
                                             StabilityMode mode, const FramedDoubleQuiver& fd,
                                             const std::vector<int>& supp, const Rat& zv) {
    const Quiver& q = fd.quiver;
    const std::size_t m = supp.size();
    std::map<int, std::size_t> slot;
    for (std::size_t k = 0; k < m; ++k) slot[supp[k]] = k;

    auto in_mask = [&](unsigned long mask, int v) {
        auto it = slot.find(v);
        return it != slot.end() && ((mask >> it->second) & 1ul);
    };
    auto make_witness = [&](unsigned long mask) {
        GradedSubspace<K> s;
        for (std::size_t k = 0; k < m; ++k)
            if ((mask >> k) & 1ul) s[supp[k]] = Matrix<K>::identity(1);
        return s;
    };

    bool strict_violation = false;
    std::string strict_detail;
    for (unsigned long mask = 0; mask < (1ul << m); ++mask) {
        bool invariant = true;
        for (const auto& [a, eps] : fd.epsilon) {
            const Arrow& ar = q.arrow(a);
            if (!in_mask(mask, ar.tail) || in_mask(mask, ar.head)) continue;
            if (dim_of(rho.dims, ar.head) == 0) continue;
            if (!field_matrix(rho, q, a).is_zero()) {
                invariant = false;
                break;
            }
        }
        if (!invariant) continue;
        Rat zs(0);
        for (std::size_t k = 0; k < m; ++k)
            if ((mask >> k) & 1ul) zs += zeta_at(zeta, supp[k]);

        if (mode == StabilityMode::Unframed) {
            if (mask == 0 || mask + 1 == (1ul << m)) continue;
            if (zs < 0)
                return {StabilityVerdict::Unstable, make_witness(mask),
                        "invariant subspace with negative weight"};
            if (zs == 0) {
                strict_violation = true;
                strict_detail = "invariant subspace with weight zero";
            }
            continue;
        }

        // subspace side: inside every framing kernel
        bool in_kernel = true;
        for (const auto& [v, ja] : fd.j_arrow)
            if (in_mask(mask, v) && !field_matrix(rho, q, ja).is_zero()) {
                in_kernel = false;
                break;
            }
        if (in_kernel) {
            if (zs > 0)
                return {StabilityVerdict::Unstable, make_witness(mask),
                        "invariant subspace in the framing kernel with positive weight"};
            if (zs == 0 && mask != 0) {
                strict_violation = true;
                strict_detail = "nonzero invariant subspace in the framing kernel with weight zero";
            }
        }

        // quotient side: contains every framing image
        bool contains_image = true;
        for (const auto& [v, ia] : fd.i_arrow)
            if (!in_mask(mask, v) && dim_of(rho.dims, v) == 1 &&
                !field_matrix(rho, q, ia).is_zero()) {
                contains_image = false;
                break;
            }
        if (contains_image) {
            if (zs > zv)
                return {StabilityVerdict::Unstable, make_witness(mask),
                        "invariant subspace over the framing image exceeding the total weight"};
            if (zs == zv && mask + 1 != (1ul << m)) {
                strict_violation = true;
                strict_detail = "proper invariant subspace over the framing image with full weight";
            }
        }
    }
    if (strict_violation) return {StabilityVerdict::SemistableOnly, {}, strict_detail};
    return {StabilityVerdict::Stable, {}, "exhaustive graded enumeration"};
}

template <typename K>
StabilityResult<K> is_stable(const FieldRep<K>& rho, const Weight& zeta, StabilityMode mode,
                             const FramedDoubleQuiver& fd, unsigned seed) {
    const Quiver& q = fd.quiver;
    std::vector<int> verts;
    long total = 0, maxdim = 0;
    Rat zv(0);
    for (const auto& vx : q.vertices) {
        if (vx.framing) continue;
        verts.push_back(vx.id);
        long d = dim_of(rho.dims, vx.id);
        total += d;
        maxdim = std::max(maxdim, d);
        zv += zeta_at(zeta, vx.id) * Rat(d);
    }
    if (mode == StabilityMode::Unframed && zv != 0)
        throw std::invalid_argument("unframed stability requires zeta . dim V = 0");
    if (total == 0) return {StabilityVerdict::Stable, {}, "zero representation"};

    if (maxdim <= 1) {
        std::vector<int> supp;
        for (int v : verts)
            if (dim_of(rho.dims, v) == 1) supp.push_back(v);
        if (supp.size() <= 16) return enumerate_rank_one(rho, zeta, mode, fd, supp, zv);
    }

    bool all_negative = true, all_positive = true;
    for (int v : verts) {
        if (dim_of(rho.dims, v) == 0) continue;
        Rat z = zeta_at(zeta, v);
        all_negative = all_negative && z < 0;
        all_positive = all_positive && z > 0;
    }

    if (mode == StabilityMode::Framed && all_negative) {
        GradedSubspace<K> c = min_invariant_containing(rho, fd);
        if (subspace_is_full(rho, c))
            return {StabilityVerdict::Stable, {},
                    "closure of the framing image is everything; negative chamber"};
        return {StabilityVerdict::Unstable, std::move(c),
                "proper invariant subspace over the framing image; negative chamber"};
    }
    if (mode == StabilityMode::Framed && all_positive) {
        GradedSubspace<K> k = max_invariant_in_kernel(rho, fd);
        if (subspace_is_zero(k))
            return {StabilityVerdict::Stable, {},
                    "no invariant subspace in the framing kernel; positive chamber"};
        return {StabilityVerdict::Unstable, std::move(k),
                "invariant subspace in the framing kernel; positive chamber"};
    }

    // general chamber: exact shortcut, then bounded witness search
    GradedSubspace<K> kernel_space, image_closure;
    if (mode == StabilityMode::Framed) {
        kernel_space = max_invariant_in_kernel(rho, fd);
        image_closure = min_invariant_containing(rho, fd);
        if (subspace_is_zero(kernel_space) && subspace_is_full(rho, image_closure))
            return {StabilityVerdict::Stable, {},
                    "no eligible invariant subspace on either side"};
    }

    std::vector<GradedSubspace<K>> candidates;
    auto push_closure = [&](const GradedSubspace<K>& s) {
        candidates.push_back(min_invariant_containing(rho, fd, s));
    };
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> coeff(-3, 3);
    const int random_budget = 24;

    if (mode == StabilityMode::Framed) {
        candidates.push_back(kernel_space);
        for (const auto& [v, b] : kernel_space)
            for (std::size_t c = 0; c < b.cols(); ++c) {
                Matrix<K> one(b.rows(), 1);
                for (std::size_t i = 0; i < b.rows(); ++i) one.at(i, 0) = b.at(i, c);
                push_closure({{v, one}});
            }
        std::vector<int> carriers;
        for (const auto& [v, b] : kernel_space)
            if (b.cols() > 0) carriers.push_back(v);
        for (int t = 0; t < random_budget && !carriers.empty(); ++t) {
            int v = carriers[static_cast<std::size_t>(t) % carriers.size()];
            const Matrix<K>& b = kernel_space.at(v);
            Matrix<K> vec(b.rows(), 1);
            for (std::size_t c = 0; c < b.cols(); ++c) {
                K x = K(coeff(rng));
                for (std::size_t i = 0; i < b.rows(); ++i)
                    vec.at(i, 0) = vec.at(i, 0) + x * b.at(i, c);
            }
            push_closure({{v, vec}});
        }
        candidates.push_back(image_closure);
        for (int v : verts) {
            long d = dim_of(rho.dims, v);
            for (long i = 0; i < d; ++i) {
                GradedSubspace<K> s = image_closure;
                Matrix<K> e(d, 1);
                e.at(i, 0) = K::one();
                s[v] = hstack(basis_at(s, rho, v), e);
                push_closure(s);
            }
        }
    } else {
        for (int v : verts) {
            long d = dim_of(rho.dims, v);
            for (long i = 0; i < d; ++i) {
                Matrix<K> e(d, 1);
                e.at(i, 0) = K::one();
                push_closure({{v, e}});
            }
        }
        for (int t = 0; t < random_budget; ++t) {
            int v = verts[static_cast<std::size_t>(t) % verts.size()];
            long d = dim_of(rho.dims, v);
            if (d == 0) continue;
            Matrix<K> vec(d, 1);
            for (long i = 0; i < d; ++i) vec.at(i, 0) = K(coeff(rng));
            push_closure({{v, vec}});
        }
    }

    for (const auto& s : candidates)
        if (verify_witness(rho, s, zeta, mode, fd) == WitnessVerdict::ValidDestabilizer)
            return {StabilityVerdict::Unstable, s, "bounded witness search"};
    return {StabilityVerdict::Unknown, {}, "bounded witness search exhausted"};
}

// ------------------------------------------------------------ gauge + regions

MatrixRep gauge_normalize_an(const MatrixRep& rho, const Quiver& q,
                             const std::vector<int>& u_arrows, const std::vector<int>& v_arrows,
                             int chart_index) {
    const int m = static_cast<int>(u_arrows.size());
    if (m == 0 || static_cast<int>(v_arrows.size()) != m)
        throw std::invalid_argument("cycle arrow lists must have equal positive length");
    if (chart_index < 1 || chart_index > m)
        throw std::invalid_argument("chart index out of range");

    std::vector<int> vert(m);
    for (int k = 0; k < m; ++k) {
        const Arrow& ua = q.arrow(u_arrows[k]);
        const Arrow& va = q.arrow(v_arrows[k]);
        if (va.head != ua.tail || va.tail != ua.head)
            throw std::invalid_argument("u/v pair " + std::to_string(k + 1) +
                                        " is not a doubled pair");
        vert[k] = ua.tail;
        if (dim_of(rho.dims, ua.tail) != 1)
            throw std::invalid_argument("gauge normalization needs rank one at every cycle vertex");
    }
    for (int k = 0; k < m; ++k)
        if (q.arrow(u_arrows[k]).head != vert[(k + 1) % m])
            throw std::invalid_argument("u arrows do not close up into a cycle");

    auto entry = [&](int arrow) -> Scalar {
        auto it = rho.matrices.find(arrow);
        if (it == rho.matrices.end()) return Scalar::zero();
        if (it->second.rows() != 1 || it->second.cols() != 1)
            throw std::invalid_argument("cycle arrows must carry 1 x 1 matrices");
        return it->second.at(0, 0);
    };
    for (int k = 0; k < m; ++k) {
        entry(u_arrows[k]); // shape audit up front, designated or not
        entry(v_arrows[k]);
    }

    // torus gauge with g = 1 at the chart vertex; slot k (0-based) is vertex k+1
    std::vector<Scalar> g(m, Scalar::one());
    for (int k = chart_index - 1; k >= 1; --k) {
        Scalar vk = entry(v_arrows[k - 1]);
        if (vk.is_zero())
            throw std::invalid_argument("designated arrow v_" + std::to_string(k) + " is zero");
        g[k - 1] = g[k] * vk.inverse();
    }
    for (int k = m; k >= chart_index + 1; --k) {
        Scalar uk = entry(u_arrows[k - 1]);
        if (uk.is_zero())
            throw std::invalid_argument("designated arrow u_" + std::to_string(k) + " is zero");
        g[k - 1] = g[k % m] * uk;
    }

    auto gauge_at = [&](int v) -> Scalar {
        for (int k = 0; k < m; ++k)
            if (vert[k] == v) return g[k];
        return Scalar::one();
    };
    MatrixRep out;
    out.dims = rho.dims;
    for (const auto& [id, mat] : rho.matrices) {
        const Arrow& ar = q.arrow(id);
        out.matrices[id] = mat.scaled(gauge_at(ar.head) * gauge_at(ar.tail).inverse());
    }
    return out;
}

// certified valuation bounds, honest about truncation windows
static bool val_ge(const Scalar& x, const Rat& bound) {
    Novikov nv = x.to_novikov();
    if (!nv.terms.empty()) return nv.terms.front().exp >= bound;
    if (!nv.trunc || *nv.trunc >= bound) return true;
    throw std::invalid_argument("truncation window too small to certify a valuation bound");
}
static bool val_gt(const Scalar& x, const Rat& bound) {
    Novikov nv = x.to_novikov();
    if (!nv.terms.empty()) return nv.terms.front().exp > bound;
    if (!nv.trunc || *nv.trunc > bound) return true;
    throw std::invalid_argument("truncation window too small to certify a valuation bound");
}
static bool val_zero(const Scalar& x) {
    Novikov nv = x.to_novikov();
    if (!nv.terms.empty()) return nv.terms.front().exp == 0;
    if (!nv.trunc) return false; // exact zero has infinite valuation
    if (*nv.trunc > 0) return false;
    throw std::invalid_argument("truncation window too small to certify a valuation bound");
}

McRegionTag mc_region_classify(const Scalar& first, const Scalar& second, int index, int n,
                               const Rat& area, const Rat& area_prime, bool torus_site) {
    if (n < 1) throw std::invalid_argument("mc_region_classify: cycle parameter must be positive");
    const int max_index = torus_site ? n : n + 1;
    if (index < 1 || index > max_index)
        throw std::invalid_argument("mc_region_classify: site index out of range");
    if (!val_ge(first, Rat(0)) || !val_ge(second, Rat(0)))
        throw std::invalid_argument(
            "mc_region_classify: values must lie in the nonnegative-valuation subring");
    Rat gap = area - area_prime;
    if (gap < 0) gap = -gap;

    if (torus_site) {
        if (!val_zero(first) || !val_zero(second)) return McRegionTag::None;
        return val_ge(first + Scalar::one(), gap) ? McRegionTag::DefT : McRegionTag::None;
    }
    if (index == 1) return val_ge(first, area) ? McRegionTag::DefS : McRegionTag::None;
    if (index == n + 1) return val_ge(second, area_prime) ? McRegionTag::DefS : McRegionTag::None;
    bool ok = val_ge(first, gap) && val_ge(second, gap) && val_gt(first * second, Rat(0));
    return ok ? McRegionTag::DefS : McRegionTag::None;
}

// ------------------------------------------------------- instantiations

template Matrix<Scalar> column_space_basis(const Matrix<Scalar>&);
template Matrix<F2> column_space_basis(const Matrix<F2>&);
template Matrix<F3> column_space_basis(const Matrix<F3>&);

template GradedSubspace<Scalar> min_invariant_containing(const FieldRep<Scalar>&,
                                                         const FramedDoubleQuiver&);
template GradedSubspace<Scalar> min_invariant_containing(const FieldRep<Scalar>&,
                                                         const FramedDoubleQuiver&,
                                                         const GradedSubspace<Scalar>&);
template GradedSubspace<F2> min_invariant_containing(const FieldRep<F2>&,
                                                     const FramedDoubleQuiver&);
template GradedSubspace<F2> min_invariant_containing(const FieldRep<F2>&,
                                                     const FramedDoubleQuiver&,
                                                     const GradedSubspace<F2>&);
template GradedSubspace<F3> min_invariant_containing(const FieldRep<F3>&,
                                                     const FramedDoubleQuiver&);
template GradedSubspace<F3> min_invariant_containing(const FieldRep<F3>&,
                                                     const FramedDoubleQuiver&,
                                                     const GradedSubspace<F3>&);

template GradedSubspace<Scalar> max_invariant_in_kernel(const FieldRep<Scalar>&,
                                                        const FramedDoubleQuiver&);
template GradedSubspace<F2> max_invariant_in_kernel(const FieldRep<F2>&,
                                                    const FramedDoubleQuiver&);
template GradedSubspace<F3> max_invariant_in_kernel(const FieldRep<F3>&,
                                                    const FramedDoubleQuiver&);

template StabilityResult<Scalar> is_stable(const FieldRep<Scalar>&, const Weight&, StabilityMode,
                                           const FramedDoubleQuiver&, unsigned);
template StabilityResult<F2> is_stable(const FieldRep<F2>&, const Weight&, StabilityMode,
                                       const FramedDoubleQuiver&, unsigned);
template StabilityResult<F3> is_stable(const FieldRep<F3>&, const Weight&, StabilityMode,
                                       const FramedDoubleQuiver&, unsigned);

template WitnessVerdict verify_witness(const FieldRep<Scalar>&, const GradedSubspace<Scalar>&,
                                       const Weight&, StabilityMode, const FramedDoubleQuiver&);
template WitnessVerdict verify_witness(const FieldRep<F2>&, const GradedSubspace<F2>&,
                                       const Weight&, StabilityMode, const FramedDoubleQuiver&);
template WitnessVerdict verify_witness(const FieldRep<F3>&, const GradedSubspace<F3>&,
                                       const Weight&, StabilityMode, const FramedDoubleQuiver&);

} // namespace qf
