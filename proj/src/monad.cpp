#include "quiverforge/monad.hpp"

#include "quiverforge/rewrite.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <tuple>

namespace qf {

namespace {

Matrix<Scalar> rep_matrix_or_zero(const MatrixRep& rho, const Quiver& q, int arrow) {
    const Arrow& a = q.arrow(arrow);
    Matrix<Scalar> zero(rho.dims.at(a.head), rho.dims.at(a.tail));
    auto it = rho.matrices.find(arrow);
    if (it == rho.matrices.end()) return zero;
    if (it->second.rows() != zero.rows() || it->second.cols() != zero.cols())
        throw std::invalid_argument("representation matrix shape disagrees with dims");
    return it->second;
}

std::vector<int> unframed_vertices(const Quiver& q) {
    std::vector<int> out;
    for (const auto& v : q.vertices)
        if (!v.framing) out.push_back(v.id);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> doubled_arrows(const FramedDoubleQuiver& fd) {
    std::vector<int> out;
    for (const auto& [a, eps] : fd.epsilon) out.push_back(a);
    std::sort(out.begin(), out.end());
    return out;
}

void require_unobstructed(const MatrixRep& rho, const FramedDoubleQuiver& fd) {
    for (const auto& [v, m] : moment_map(rho, fd))
        if (!m.is_zero())
            throw std::invalid_argument("obstructed representation: moment map nonzero at vertex " +
                                        std::to_string(v));
}

AlgebraElement arrow_word(int arrow) {
    return AlgebraElement::term(PathMonomial::word({arrow}), Scalar::one());
}

} // namespace

// ------------------------------------------------------------- preprojective

QuiverAlgebra preprojective_algebra(const DoubleQuiver& dq) {
    FramedDoubleQuiver fd{dq.quiver, dq.epsilon, dq.reverse, {}, {}};
    std::vector<AlgebraElement> rels;
    for (const auto& v : dq.quiver.vertices) {
        AlgebraElement mu = preprojective_element(fd, v.id);
        if (!mu.is_zero()) rels.push_back(std::move(mu));
    }
    return QuiverAlgebra(dq.quiver, std::move(rels));
}

QuiverAlgebra framed_preprojective_algebra(const FramedDoubleQuiver& fd) {
    std::vector<AlgebraElement> rels;
    for (int v : unframed_vertices(fd.quiver)) {
        AlgebraElement mu = preprojective_element(fd, v);
        if (!mu.is_zero()) rels.push_back(std::move(mu));
    }
    return QuiverAlgebra(fd.quiver, std::move(rels));
}

// --------------------------------------------------------- bimodule operators

BimoduleOperator::BimoduleOperator(long rows, long cols, int src_vertex, int tgt_vertex)
    : rows_(rows), cols_(cols), src_(src_vertex), tgt_(tgt_vertex) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative operator shape");
}

void BimoduleOperator::add(const Quiver& q, const Matrix<Scalar>& left,
                           const AlgebraElement& right) {
    if (static_cast<long>(left.rows()) != rows_ || static_cast<long>(left.cols()) != cols_)
        throw std::invalid_argument("operator part shape mismatch");
    for (const auto& [m, c] : right.terms()) {
        if (monomial_head(m, q) != src_ || monomial_tail(m, q) != tgt_)
            throw std::invalid_argument("operator monomial typed at the wrong vertices");
        auto [it, fresh] = parts_.try_emplace(m, left.scaled(c));
        if (!fresh) it->second = it->second + left.scaled(c);
        if (it->second.is_zero()) parts_.erase(it);
    }
}

BimoduleOperator BimoduleOperator::operator+(const BimoduleOperator& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || src_ != o.src_ || tgt_ != o.tgt_)
        throw std::invalid_argument("operator sum shape mismatch");
    BimoduleOperator out = *this;
    for (const auto& [m, mat] : o.parts_) {
        auto [it, fresh] = out.parts_.try_emplace(m, mat);
        if (!fresh) it->second = it->second + mat;
        if (it->second.is_zero()) out.parts_.erase(it);
    }
    return out;
}

bool BimoduleOperator::operator==(const BimoduleOperator& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && src_ == o.src_ && tgt_ == o.tgt_ &&
           parts_ == o.parts_;
}

BimoduleOperator BimoduleOperator::compose(const Quiver& q, const BimoduleOperator& second,
                                           const BimoduleOperator& first) {
    if (second.cols_ != first.rows_ || second.src_ != first.tgt_)
        throw std::invalid_argument("operator composite shape mismatch");
    BimoduleOperator out(second.rows_, first.cols_, first.src_, second.tgt_);
    for (const auto& [m1, l1] : first.parts_)
        for (const auto& [m2, l2] : second.parts_) {
            if (!monomial_composable(m1, m2, q))
                throw std::logic_error("ill-typed operator parts in composite");
            PathMonomial m = monomial_concat(m1, m2);
            Matrix<Scalar> prod = l2 * l1;
            auto [it, fresh] = out.parts_.try_emplace(m, prod);
            if (!fresh) it->second = it->second + prod;
            if (it->second.is_zero()) out.parts_.erase(it);
        }
    return out;
}

AlgebraElement BimoduleOperator::entry_element(long row, long col) const {
    AlgebraElement f;
    for (const auto& [m, mat] : parts_)
        f.add_term(m, mat.at(row, col));
    return f;
}

// ---------------------------------------------------------------- free complex

long FreeComplex::rank(int position) const {
    long total = 0;
    for (const auto& t : terms.at(position)) total += t.multiplicity;
    return total;
}

int FreeComplex::term_index(int position, const std::string& label) const {
    const auto& list = terms.at(position);
    for (std::size_t k = 0; k < list.size(); ++k)
        if (list[k].label == label) return static_cast<int>(k);
    return -1;
}

void validate_complex(const FreeComplex& c) {
    std::set<std::string> labels;
    for (const auto& list : c.terms)
        for (const auto& t : list) {
            if (t.multiplicity < 0) throw std::invalid_argument("negative term multiplicity");
            if (!labels.insert(t.label).second)
                throw std::invalid_argument("duplicate term label " + t.label);
        }
    auto check_diff = [&](const std::vector<std::vector<BimoduleOperator>>& d,
                          const std::vector<FreeTerm>& src, const std::vector<FreeTerm>& tgt,
                          const char* name) {
        if (d.size() != tgt.size()) throw std::invalid_argument(std::string(name) + " row count");
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (d[i].size() != src.size())
                throw std::invalid_argument(std::string(name) + " column count");
            for (std::size_t j = 0; j < src.size(); ++j) {
                const BimoduleOperator& op = d[i][j];
                if (op.rows() != tgt[i].multiplicity || op.cols() != src[j].multiplicity ||
                    op.src_vertex() != src[j].vertex || op.tgt_vertex() != tgt[i].vertex)
                    throw std::invalid_argument(std::string(name) + " block typed incorrectly");
            }
        }
    };
    check_diff(c.d0, c.terms[0], c.terms[1], "d0");
    check_diff(c.d1, c.terms[1], c.terms[2], "d1");
}

namespace {

std::vector<std::vector<BimoduleOperator>> zero_blocks(const std::vector<FreeTerm>& tgt,
                                                       const std::vector<FreeTerm>& src) {
    std::vector<std::vector<BimoduleOperator>> d(tgt.size());
    for (std::size_t i = 0; i < tgt.size(); ++i)
        for (std::size_t j = 0; j < src.size(); ++j)
            d[i].emplace_back(tgt[i].multiplicity, src[j].multiplicity, src[j].vertex,
                              tgt[i].vertex);
    return d;
}

} // namespace

// ------------------------------------------------------------------- builders

FreeComplex build_adhm_monad(const MatrixRep& rho, const FramedDoubleQuiver& fd,
                             const QuiverAlgebra& a) {
    std::vector<int> base = unframed_vertices(fd.quiver);
    if (base.size() != 1)
        throw std::invalid_argument("the monad point needs a one-vertex framed quiver");
    int v0 = base[0];
    std::vector<int> loops;
    for (const auto& ar : a.quiver().arrows)
        if (ar.tail == v0 && ar.head == v0) loops.push_back(ar.id);
    std::sort(loops.begin(), loops.end());
    if (loops.size() != 2)
        throw std::invalid_argument("coefficient algebra must carry exactly two loops");
    int x = loops[0], y = loops[1];
    if (!fd.i_arrow.count(v0) || !fd.j_arrow.count(v0))
        throw std::invalid_argument("base vertex carries no framing");
    const Quiver& fq = fd.quiver;
    long n = rho.dims.at(v0);
    long r = rho.dims.at(fq.arrow(fd.i_arrow.at(v0)).tail);
    Matrix<Scalar> b1 = rep_matrix_or_zero(rho, fq, x);
    Matrix<Scalar> b2 = rep_matrix_or_zero(rho, fq, y);
    Matrix<Scalar> im = rep_matrix_or_zero(rho, fq, fd.i_arrow.at(v0));
    Matrix<Scalar> jm = rep_matrix_or_zero(rho, fq, fd.j_arrow.at(v0));
    if (!(b1 * b2 - b2 * b1 + im * jm).is_zero())
        throw std::invalid_argument("obstructed representation: [B1,B2] + ij is nonzero");

    FreeComplex c;
    c.coefficient_algebra = a;
    c.terms[0] = {{"alpha_1", v0, n}};
    c.terms[1] = {{"Xtilde", v0, n}, {"Ytilde", v0, n}, {"Jtilde", v0, r}};
    c.terms[2] = {{"alpha_2", v0, n}};
    c.d0 = zero_blocks(c.terms[1], c.terms[0]);
    c.d1 = zero_blocks(c.terms[2], c.terms[1]);

    const Quiver& q = a.quiver();
    Matrix<Scalar> idn = Matrix<Scalar>::identity(n);
    AlgebraElement e0 = AlgebraElement::unit(v0);
    c.d0[0][0].add(q, b1, e0);
    c.d0[0][0].add(q, idn.scaled(Scalar(-1)), arrow_word(x));
    c.d0[1][0].add(q, b2, e0);
    c.d0[1][0].add(q, idn.scaled(Scalar(-1)), arrow_word(y));
    c.d0[2][0].add(q, jm, e0);
    c.d1[0][0].add(q, b2.scaled(Scalar(-1)), e0);
    c.d1[0][0].add(q, idn, arrow_word(y));
    c.d1[0][1].add(q, b1, e0);
    c.d1[0][1].add(q, idn.scaled(Scalar(-1)), arrow_word(x));
    c.d1[0][2].add(q, im, e0);
    validate_complex(c);
    return c;
}

FreeComplex build_nakajima_monad(const MatrixRep& rho, const FramedDoubleQuiver& fd,
                                 const QuiverAlgebra& a) {
    require_unobstructed(rho, fd);
    const Quiver& fq = fd.quiver;
    const Quiver& q = a.quiver();
    std::vector<int> base = unframed_vertices(fq);
    std::vector<int> arrows = doubled_arrows(fd);

    FreeComplex c;
    c.coefficient_algebra = a;
    std::map<int, int> m_of, p_of;
    for (int v : base) {
        m_of[v] = static_cast<int>(c.terms[0].size());
        c.terms[0].push_back({"M_" + std::to_string(v), v, rho.dims.at(v)});
        p_of[v] = static_cast<int>(c.terms[2].size());
        c.terms[2].push_back({"P_" + std::to_string(v), v, rho.dims.at(v)});
    }
    std::map<int, int> x_of, j_of;
    for (int ar : arrows) {
        x_of[ar] = static_cast<int>(c.terms[1].size());
        c.terms[1].push_back({"X_" + std::to_string(ar), fq.arrow(ar).tail,
                              rho.dims.at(fq.arrow(ar).head)});
    }
    for (const auto& [v, ia] : fd.i_arrow) {
        j_of[v] = static_cast<int>(c.terms[1].size());
        c.terms[1].push_back({"J_" + std::to_string(v), v, rho.dims.at(fq.arrow(ia).tail)});
    }
    c.d0 = zero_blocks(c.terms[1], c.terms[0]);
    c.d1 = zero_blocks(c.terms[2], c.terms[1]);

    for (int ar : arrows) {
        const Arrow& arr = fq.arrow(ar);
        int rev = fd.reverse.at(ar);
        Scalar eps(fd.epsilon.at(ar));
        Matrix<Scalar> b = rep_matrix_or_zero(rho, fq, ar);
        Matrix<Scalar> brev = rep_matrix_or_zero(rho, fq, rev);
        Matrix<Scalar> idh = Matrix<Scalar>::identity(rho.dims.at(arr.head));
        c.d0[x_of[ar]][m_of[arr.tail]].add(q, b, AlgebraElement::unit(arr.tail));
        c.d0[x_of[ar]][m_of[arr.head]].add(q, idh.scaled(Scalar(-1)), arrow_word(ar));
        c.d1[p_of[arr.head]][x_of[ar]].add(q, idh.scaled(-eps), arrow_word(rev));
        c.d1[p_of[arr.tail]][x_of[ar]].add(q, brev.scaled(eps), AlgebraElement::unit(arr.tail));
    }
    for (const auto& [v, ia] : fd.i_arrow) {
        Matrix<Scalar> imat = rep_matrix_or_zero(rho, fq, ia);
        Matrix<Scalar> jmat = rep_matrix_or_zero(rho, fq, fd.j_arrow.at(v));
        AlgebraElement ev = AlgebraElement::unit(v);
        c.d0[j_of[v]][m_of[v]].add(q, jmat, ev);
        c.d1[p_of[v]][j_of[v]].add(q, imat, ev);
    }
    validate_complex(c);
    return c;
}

FreeComplex build_framed_functor_complex(const MatrixRep& rho, const FramedDoubleQuiver& fd,
                                         const QuiverAlgebra& afr) {
    require_unobstructed(rho, fd);
    const Quiver& fq = fd.quiver;
    const Quiver& q = afr.quiver();
    std::vector<int> base = unframed_vertices(fq);
    std::vector<int> arrows = doubled_arrows(fd);

    FreeComplex c;
    c.coefficient_algebra = afr;
    std::map<int, int> a1_of, a2_of, a3_of, x_of, it_of, jt_of;
    for (int v : base) {
        a1_of[v] = static_cast<int>(c.terms[0].size());
        c.terms[0].push_back({"alpha_1@" + std::to_string(v), v, rho.dims.at(v)});
        a2_of[v] = static_cast<int>(c.terms[2].size());
        c.terms[2].push_back({"alpha_2@" + std::to_string(v), v, rho.dims.at(v)});
    }
    for (int ar : arrows) {
        x_of[ar] = static_cast<int>(c.terms[1].size());
        c.terms[1].push_back({"Xt_" + std::to_string(ar), fq.arrow(ar).tail,
                              rho.dims.at(fq.arrow(ar).head)});
    }
    for (const auto& [v, ia] : fd.i_arrow) {
        int fv = fq.arrow(ia).tail;
        it_of[v] = static_cast<int>(c.terms[1].size());
        c.terms[1].push_back({"It_" + std::to_string(v), fv, rho.dims.at(v)});
        jt_of[v] = static_cast<int>(c.terms[1].size());
        c.terms[1].push_back({"Jt_" + std::to_string(v), v, rho.dims.at(fv)});
    }
    for (const auto& [v, ia] : fd.i_arrow) {
        int fv = fq.arrow(ia).tail;
        a3_of[v] = static_cast<int>(c.terms[2].size());
        c.terms[2].push_back({"alpha_3@" + std::to_string(v), fv, rho.dims.at(fv)});
    }
    c.d0 = zero_blocks(c.terms[1], c.terms[0]);
    c.d1 = zero_blocks(c.terms[2], c.terms[1]);

    for (int ar : arrows) {
        const Arrow& arr = fq.arrow(ar);
        int rev = fd.reverse.at(ar);
        Scalar eps(fd.epsilon.at(ar));
        Matrix<Scalar> b = rep_matrix_or_zero(rho, fq, ar);
        Matrix<Scalar> brev = rep_matrix_or_zero(rho, fq, rev);
        Matrix<Scalar> idh = Matrix<Scalar>::identity(rho.dims.at(arr.head));
        c.d0[x_of[ar]][a1_of[arr.tail]].add(q, b, AlgebraElement::unit(arr.tail));
        c.d0[x_of[ar]][a1_of[arr.head]].add(q, idh.scaled(Scalar(-1)), arrow_word(ar));
        c.d1[a2_of[arr.head]][x_of[ar]].add(q, idh.scaled(-eps), arrow_word(rev));
        c.d1[a2_of[arr.tail]][x_of[ar]].add(q, brev.scaled(eps), AlgebraElement::unit(arr.tail));
    }
    for (const auto& [v, ia] : fd.i_arrow) {
        int ja = fd.j_arrow.at(v);
        int fv = fq.arrow(ia).tail;
        Matrix<Scalar> imat = rep_matrix_or_zero(rho, fq, ia);
        Matrix<Scalar> jmat = rep_matrix_or_zero(rho, fq, ja);
        Matrix<Scalar> idn = Matrix<Scalar>::identity(rho.dims.at(v));
        Matrix<Scalar> idw = Matrix<Scalar>::identity(rho.dims.at(fv));
        c.d0[it_of[v]][a1_of[v]].add(q, idn, arrow_word(ia));
        c.d0[jt_of[v]][a1_of[v]].add(q, jmat, AlgebraElement::unit(v));
        c.d1[a2_of[v]][it_of[v]].add(q, idn.scaled(Scalar(-1)), arrow_word(ja));
        c.d1[a2_of[v]][jt_of[v]].add(q, imat, AlgebraElement::unit(v));
        c.d1[a3_of[v]][it_of[v]].add(q, jmat, AlgebraElement::unit(fv));
        c.d1[a3_of[v]][jt_of[v]].add(q, idw.scaled(Scalar(-1)), arrow_word(ia));
    }
    validate_complex(c);
    return c;
}

// ------------------------------------------------------------------- checking

DSquaredReport verify_d_squared(const FreeComplex& c, int effort_degree) {
    validate_complex(c);
    const Quiver& q = c.coefficient_algebra.quiver();
    auto rules = c.coefficient_algebra.completion(effort_degree);
    DSquaredReport rep;
    for (std::size_t i = 0; i < c.terms[2].size(); ++i)
        for (std::size_t j = 0; j < c.terms[0].size(); ++j) {
            BimoduleOperator acc(c.terms[2][i].multiplicity, c.terms[0][j].multiplicity,
                                 c.terms[0][j].vertex, c.terms[2][i].vertex);
            for (std::size_t k = 0; k < c.terms[1].size(); ++k)
                acc = acc + BimoduleOperator::compose(q, c.d1[i][k], c.d0[k][j]);
            bool clean = true;
            for (long row = 0; clean && row < acc.rows(); ++row)
                for (long col = 0; clean && col < acc.cols(); ++col)
                    if (!rules->reduce(acc.entry_element(row, col)).is_zero()) clean = false;
            if (!clean) {
                rep.proved = false;
                rep.unresolved.push_back({static_cast<int>(i), static_cast<int>(j)});
            }
        }
    return rep;
}

// ------------------------------------------------------------ point evaluation

namespace {

std::map<int, Scalar> plane_substitution(const FreeComplex& c, const Scalar& x, const Scalar& y) {
    const Quiver& q = c.coefficient_algebra.quiver();
    std::vector<int> loops;
    for (const auto& ar : q.arrows)
        if (ar.tail == ar.head) loops.push_back(ar.id);
    std::sort(loops.begin(), loops.end());
    if (loops.size() != 2)
        throw std::invalid_argument("point evaluation needs exactly two coefficient loops");
    return {{loops[0], x}, {loops[1], y}};
}

Scalar monomial_value(const PathMonomial& m, const std::map<int, Scalar>& val) {
    Scalar v = Scalar::one();
    for (int a : m.arrows) {
        auto it = val.find(a);
        if (it == val.end()) return Scalar::zero(); // framing action trivialized
        v = v * it->second;
    }
    return v;
}

Matrix<Scalar> specialized_matrix(const FreeComplex& c,
                                  const std::vector<std::vector<BimoduleOperator>>& d,
                                  const std::vector<FreeTerm>& src,
                                  const std::vector<FreeTerm>& tgt,
                                  const std::map<int, Scalar>& val) {
    std::vector<long> roff(tgt.size() + 1, 0), coff(src.size() + 1, 0);
    for (std::size_t i = 0; i < tgt.size(); ++i) roff[i + 1] = roff[i] + tgt[i].multiplicity;
    for (std::size_t j = 0; j < src.size(); ++j) coff[j + 1] = coff[j] + src[j].multiplicity;
    Matrix<Scalar> out(roff.back(), coff.back());
    for (std::size_t i = 0; i < tgt.size(); ++i)
        for (std::size_t j = 0; j < src.size(); ++j)
            for (const auto& [m, mat] : d[i][j].parts()) {
                Scalar v = monomial_value(m, val);
                if (v.is_zero()) continue;
                for (long r = 0; r < static_cast<long>(mat.rows()); ++r)
                    for (long cc = 0; cc < static_cast<long>(mat.cols()); ++cc)
                        out.at(roff[i] + r, coff[j] + cc) =
                            out.at(roff[i] + r, coff[j] + cc) + mat.at(r, cc) * v;
            }
    return out;
}

} // namespace

PointProfile evaluate_adhm_at_point(const FreeComplex& c, const Scalar& x, const Scalar& y) {
    validate_complex(c);
    auto val = plane_substitution(c, x, y);
    Matrix<Scalar> m0 = specialized_matrix(c, c.d0, c.terms[0], c.terms[1], val);
    Matrix<Scalar> m1 = specialized_matrix(c, c.d1, c.terms[1], c.terms[2], val);
    PointProfile p;
    p.rank_d0 = static_cast<long>(rank(m0));
    p.rank_d1 = static_cast<long>(rank(m1));
    p.cohomology = c.rank(1) - p.rank_d0 - p.rank_d1;
    return p;
}

std::vector<PointProfile> evaluate_adhm_grid(const FreeComplex& c,
                                             const std::vector<std::pair<Scalar, Scalar>>& pts) {
    std::vector<PointProfile> out(pts.size());
#pragma omp parallel for schedule(dynamic)
    for (long k = 0; k < static_cast<long>(pts.size()); ++k)
        out[k] = evaluate_adhm_at_point(c, pts[k].first, pts[k].second);
    return out;
}

// ---------------------------------------------------------------- slice model

namespace {

// irreducible words of the given tail vertex, grouped by length then ordered
std::vector<PathMonomial> irreducible_words(const Quiver& q, const RuleSet& rules, int tail,
                                            int cap) {
    std::vector<std::vector<int>> leads;
    std::size_t lead_max = 0;
    for (const auto& r : rules.rules()) {
        leads.push_back(r.lhs.arrows);
        lead_max = std::max(lead_max, r.lhs.arrows.size());
    }
    auto reducible_prefix = [&](const std::vector<int>& w) {
        for (const auto& l : leads) {
            if (l.size() > w.size()) continue;
            if (std::equal(l.begin(), l.end(), w.begin())) return true;
        }
        return false;
    };
    std::vector<PathMonomial> out{PathMonomial::trivial(tail)};
    std::vector<std::pair<std::vector<int>, int>> layer{{{}, tail}}; // (word, head)
    for (int len = 1; len <= cap; ++len) {
        std::vector<std::pair<std::vector<int>, int>> next;
        for (const auto& [w, head] : layer)
            for (int a : q.arrows_from(head)) {
                std::vector<int> nw;
                nw.reserve(w.size() + 1);
                nw.push_back(a);
                nw.insert(nw.end(), w.begin(), w.end());
                if (reducible_prefix(nw)) continue;
                next.emplace_back(std::move(nw), q.arrow(a).head);
            }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        for (const auto& [w, head] : next) out.push_back(PathMonomial::word(w));
        layer = std::move(next);
    }
    return out;
}

int slice_effort(int cap) { return cap + 2; }

using SliceIndex = std::map<std::tuple<int, long, PathMonomial>, long>;

SliceIndex index_basis(const std::vector<SliceBasisVector>& basis) {
    SliceIndex idx;
    for (std::size_t k = 0; k < basis.size(); ++k)
        idx[{basis[k].term, basis[k].unit, basis[k].word}] = static_cast<long>(k);
    return idx;
}

} // namespace

std::vector<SliceBasisVector> slice_basis(const FreeComplex& c, int position, int cap) {
    if (cap < 0) throw std::invalid_argument("negative filtration cap");
    validate_complex(c);
    const Quiver& q = c.coefficient_algebra.quiver();
    auto rules = c.coefficient_algebra.completion(slice_effort(cap));
    std::vector<SliceBasisVector> out;
    const auto& list = c.terms.at(position);
    for (std::size_t t = 0; t < list.size(); ++t) {
        if (list[t].multiplicity == 0) continue;
        for (const PathMonomial& w : irreducible_words(q, *rules, list[t].vertex, cap))
            for (long u = 0; u < list[t].multiplicity; ++u)
                out.push_back({static_cast<int>(t), u, w});
    }
    return out;
}

Matrix<Scalar> slice_matrix(const FreeComplex& c, int which, int cap_src, int cap_tgt) {
    if (which != 0 && which != 1) throw std::invalid_argument("differential index must be 0 or 1");
    if (cap_tgt < cap_src + 1)
        throw std::invalid_argument("target cap too small for the image filtration");
    const auto& d = which ? c.d1 : c.d0;
    std::vector<SliceBasisVector> src = slice_basis(c, which, cap_src);
    std::vector<SliceBasisVector> tgt = slice_basis(c, which + 1, cap_tgt);
    SliceIndex tgt_idx = index_basis(tgt);
    auto rules = c.coefficient_algebra.completion(slice_effort(cap_tgt));
    Matrix<Scalar> out(static_cast<long>(tgt.size()), static_cast<long>(src.size()));
    for (std::size_t s = 0; s < src.size(); ++s) {
        const SliceBasisVector& b = src[s];
        for (std::size_t i = 0; i < d.size(); ++i) {
            const BimoduleOperator& op = d[i][b.term];
            for (const auto& [m, mat] : op.parts()) {
                AlgebraElement img = rules->reduce(
                    AlgebraElement::term(monomial_concat(b.word, m), Scalar::one()));
                for (const auto& [w, coeff] : img.terms())
                    for (long r = 0; r < static_cast<long>(mat.rows()); ++r) {
                        Scalar entry = mat.at(r, b.unit) * coeff;
                        if (entry.is_zero()) continue;
                        auto it = tgt_idx.find({static_cast<int>(i), r, w});
                        if (it == tgt_idx.end())
                            throw std::logic_error("slice image escaped the target filtration");
                        out.at(it->second, static_cast<long>(s)) =
                            out.at(it->second, static_cast<long>(s)) + entry;
                    }
            }
        }
    }
    return out;
}

SliceReport slice_exactness(const FreeComplex& c, int level, int slack) {
    if (level < 0) throw std::invalid_argument("negative filtration level");
    if (slack < 0) throw std::invalid_argument("negative slack");
    SliceReport rep;
    Matrix<Scalar> m0 = slice_matrix(c, 0, level, level + 1);
    rep.h0 = static_cast<long>(m0.cols()) - static_cast<long>(rank(m0));

    Matrix<Scalar> m1 = slice_matrix(c, 1, level, level + 1);
    Matrix<Scalar> ker = kernel_basis(m1);
    if (ker.cols() == 0) return rep;

    // image of the slack piece intersected with the level piece: split the
    // image matrix by word length; combinations killing every long row are
    // exactly the preimages whose image stays in the level piece
    int ambient_cap = level + slack + 1;
    std::vector<SliceBasisVector> mid_small = slice_basis(c, 1, level);
    std::vector<SliceBasisVector> mid_big = slice_basis(c, 1, ambient_cap);
    SliceIndex small_idx = index_basis(mid_small);
    Matrix<Scalar> big = slice_matrix(c, 0, level + slack, ambient_cap);
    std::vector<long> long_rows;
    std::vector<std::pair<long, long>> short_rows; // (big row, level row)
    for (std::size_t rw = 0; rw < mid_big.size(); ++rw) {
        auto it = small_idx.find({mid_big[rw].term, mid_big[rw].unit, mid_big[rw].word});
        if (it == small_idx.end())
            long_rows.push_back(static_cast<long>(rw));
        else
            short_rows.emplace_back(static_cast<long>(rw), it->second);
    }
    Matrix<Scalar> mlong(long_rows.size(), big.cols());
    for (std::size_t i = 0; i < long_rows.size(); ++i)
        for (std::size_t j = 0; j < big.cols(); ++j)
            mlong.at(i, j) = big.at(long_rows[i], j);
    Matrix<Scalar> mshort(mid_small.size(), big.cols());
    for (const auto& [brow, srow] : short_rows)
        for (std::size_t j = 0; j < big.cols(); ++j)
            mshort.at(srow, j) = big.at(brow, j);
    Matrix<Scalar> pre = kernel_basis(mlong);
    Matrix<Scalar> image_small = mshort * pre;
    rep.h1 = static_cast<long>(ker.cols()) -
             static_cast<long>(intersection_dim(ker, image_small));
    return rep;
}

} // namespace qf
