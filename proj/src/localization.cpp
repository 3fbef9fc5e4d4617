#include "quiverforge/localization.hpp"

#include <stdexcept>

namespace qf {

static VertexType require_homogeneous(const AlgebraElement& f, const Quiver& q,
                                      const char* what) {
    if (f.is_zero()) throw std::invalid_argument(std::string(what) + ": zero element");
    auto t = homogeneous_type(f, q);
    if (!t)
        throw std::invalid_argument(std::string(what) +
                                    ": element is not vertex-homogeneous: " + to_string(f, q));
    return *t;
}

// single-arrow original (for inversePairs bookkeeping), else -1
static int single_arrow_of(const AlgebraElement& f) {
    if (f.term_count() != 1) return -1;
    const auto& [m, c] = *f.terms().begin();
    if (m.length() != 1 || !c.is_one()) return -1;
    return m.arrows.front();
}

Localization localize_scalar(const QuiverAlgebra& a, const std::vector<LocalizedElement>& s) {
    Quiver q = a.quiver();
    std::vector<AlgebraElement> rels = a.relations();
    std::vector<std::pair<int, int>> pairs = a.inverse_pairs();
    Localization out;
    int next = q.max_arrow_id() + 1;
    for (std::size_t k = 0; k < s.size(); ++k) {
        VertexType t = require_homogeneous(s[k].element, q, "localize_scalar");
        int inv = next++;
        std::string name =
            s[k].name.empty() ? "inv" + std::to_string(inv) : s[k].name;
        q.arrows.push_back({inv, t.head, t.tail, 0, name}); // head(gamma) -> tail(gamma)
        AlgebraElement gi = AlgebraElement::term(PathMonomial::word({inv}), Scalar::one());
        rels.push_back(multiply(q, s[k].element, gi) - AlgebraElement::unit(t.head));
        rels.push_back(multiply(q, gi, s[k].element) - AlgebraElement::unit(t.tail));
        pairs.emplace_back(inv, single_arrow_of(s[k].element));
        out.inverse_arrows.push_back(inv);
    }
    std::map<int, int> weights; // carry forward explicit weights; new arrows default to 1
    for (const auto& ar : a.quiver().arrows)
        if (a.arrow_weight(ar.id) != 1) weights[ar.id] = int(a.arrow_weight(ar.id));
    out.algebra = QuiverAlgebra(std::move(q), std::move(rels), std::move(pairs),
                                std::move(weights));
    return out;
}

Localization localize_matrix(const QuiverAlgebra& a,
                             const std::vector<std::vector<AlgebraElement>>& s,
                             const std::string& name_prefix) {
    const Quiver& q0 = a.quiver();
    const std::size_t m = s.size();
    if (m == 0) throw std::invalid_argument("localize_matrix: empty matrix");
    const std::size_t n = s.front().size();
    for (const auto& row : s)
        if (row.size() != n) throw std::invalid_argument("localize_matrix: ragged matrix");
    // row heads and column tails from the nonzero entries
    std::vector<int> row_head(m, -1), col_tail(n, -1);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (s[i][j].is_zero()) continue;
            VertexType t = require_homogeneous(s[i][j], q0, "localize_matrix");
            if (row_head[i] == -1)
                row_head[i] = t.head;
            else if (row_head[i] != t.head)
                throw std::invalid_argument("localize_matrix: row " + std::to_string(i) +
                                            " mixes heads");
            if (col_tail[j] == -1)
                col_tail[j] = t.tail;
            else if (col_tail[j] != t.tail)
                throw std::invalid_argument("localize_matrix: column " + std::to_string(j) +
                                            " mixes tails");
        }
    for (std::size_t i = 0; i < m; ++i)
        if (row_head[i] == -1)
            throw std::invalid_argument("localize_matrix: row " + std::to_string(i) +
                                        " is entirely zero");
    for (std::size_t j = 0; j < n; ++j)
        if (col_tail[j] == -1)
            throw std::invalid_argument("localize_matrix: column " + std::to_string(j) +
                                        " is entirely zero");

    Quiver q = q0;
    std::vector<AlgebraElement> rels = a.relations();
    std::vector<std::pair<int, int>> pairs = a.inverse_pairs();
    int next = q.max_arrow_id() + 1;
    Localization out;
    out.gamma.assign(n, std::vector<int>(m, -1));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < m; ++i) {
            int id = next++;
            std::string name = name_prefix.empty() ? "gam" + std::to_string(id)
                                                   : name_prefix + std::to_string(j + 1) +
                                                         std::to_string(i + 1);
            // gamma_ji : head(s_ij) -> tail(s_ij), i.e. tail = row head
            q.arrows.push_back({id, row_head[i], col_tail[j], 0, name});
            out.gamma[j][i] = id;
            pairs.emplace_back(id, (m == 1 && n == 1) ? single_arrow_of(s[0][0]) : -1);
        }
    auto gamma_elem = [&](std::size_t j, std::size_t i) {
        return AlgebraElement::term(PathMonomial::word({out.gamma[j][i]}), Scalar::one());
    };
    // gamma·S = diag(e_{col_tail}) : (j,k) entry sum_i gamma_ji s_ik
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
            AlgebraElement r;
            for (std::size_t i = 0; i < m; ++i) r += multiply(q, gamma_elem(j, i), s[i][k]);
            if (j == k) r -= AlgebraElement::unit(col_tail[j]);
            if (!r.is_zero()) rels.push_back(r);
        }
    // S·gamma = diag(e_{row_head}) : (i,k) entry sum_j s_ij gamma_jk
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < m; ++k) {
            AlgebraElement r;
            for (std::size_t j = 0; j < n; ++j) r += multiply(q, s[i][j], gamma_elem(j, k));
            if (i == k) r -= AlgebraElement::unit(row_head[i]);
            if (!r.is_zero()) rels.push_back(r);
        }
    std::map<int, int> weights;
    for (const auto& ar : q0.arrows)
        if (a.arrow_weight(ar.id) != 1) weights[ar.id] = int(a.arrow_weight(ar.id));
    out.algebra = QuiverAlgebra(std::move(q), std::move(rels), std::move(pairs),
                                std::move(weights));
    return out;
}

AlgebraElement invert_monomial(const AlgebraElement& f, const QuiverAlgebra& a) {
    if (f.term_count() != 1)
        throw std::invalid_argument("invert_monomial: not a single term");
    const auto& [m, c] = *f.terms().begin();
    if (m.is_trivial()) return AlgebraElement::term(m, c.inverse());
    std::map<int, int> partner;
    for (const auto& [inv, orig] : a.inverse_pairs()) {
        if (orig < 0) continue;
        partner[inv] = orig;
        partner[orig] = inv;
    }
    std::vector<int> rev;
    rev.reserve(m.arrows.size());
    for (auto it = m.arrows.rbegin(); it != m.arrows.rend(); ++it) {
        auto p = partner.find(*it);
        if (p == partner.end())
            throw std::invalid_argument("invert_monomial: arrow " +
                                        a.quiver().arrow(*it).name + " has no inverse arrow");
        rev.push_back(p->second);
    }
    return AlgebraElement::term(PathMonomial::word(std::move(rev)), c.inverse());
}

} // namespace qf
