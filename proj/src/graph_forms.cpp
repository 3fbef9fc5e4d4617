#include "quiverforge/graph_forms.hpp"

#include <numeric>
#include <stdexcept>

namespace qf {

const char* form_class_name(FormClass c) {
    switch (c) {
    case FormClass::PositiveDefinite: return "positive-definite";
    case FormClass::StrictlySemiPositive: return "strictly-semi-positive";
    case FormClass::Indefinite: return "indefinite";
    }
    return "?";
}

long long floer_euler_form(const Graph& g, const DimensionVector& r) {
    g.validate();
    auto rank_of = [&](int v) -> long long {
        auto it = r.find(v);
        if (it == r.end())
            throw std::invalid_argument("rank vector missing vertex " + std::to_string(v));
        return it->second;
    };
    long long total = 0;
    for (const auto& v : g.vertices) {
        long long rv = rank_of(v.id);
        total += static_cast<long long>(v.component_euler) * rv * rv;
    }
    for (const auto& e : g.edges) {
        if (e.codim % 2 != 0) continue;
        long long sign = (e.jump_degree % 2 == 0) ? 1 : -1;
        total += 2 * sign * static_cast<long long>(e.intersection_euler) * rank_of(e.end_a) *
                 rank_of(e.end_b);
    }
    return total;
}

Matrix<Scalar> cartan_matrix(const Graph& g) {
    g.validate();
    std::map<int, std::size_t> idx;
    for (const auto& v : g.vertices) idx[v.id] = idx.size();
    const std::size_t n = g.vertices.size();
    Matrix<Scalar> c(n, n);
    for (std::size_t i = 0; i < n; ++i) c.at(i, i) = Scalar(2);
    for (const auto& e : g.edges) {
        std::size_t a = idx.at(e.end_a), b = idx.at(e.end_b);
        if (a == b) {
            c.at(a, a) -= Scalar(2);
        } else {
            c.at(a, b) -= Scalar(1);
            c.at(b, a) -= Scalar(1);
        }
    }
    return c;
}

// Exact classification of a symmetric rational matrix by recursive pivoting:
// a positive diagonal entry is pivoted away (Schur complement keeps the
// signature), a negative one witnesses indefiniteness, and a zero diagonal
// entry is either a kernel direction (zero row: drop it) or produces an
// indefinite 2x2 block.
static FormClass classify_symmetric(Matrix<Scalar> m, bool saw_kernel) {
    while (true) {
        const std::size_t n = m.rows();
        if (n == 0)
            return saw_kernel ? FormClass::StrictlySemiPositive : FormClass::PositiveDefinite;
        const Scalar& d = m.at(0, 0);
        bool d_pos = !d.is_zero() && d.as_rational() > 0;
        bool d_neg = !d.is_zero() && d.as_rational() < 0;
        if (d_neg) return FormClass::Indefinite;
        if (d.is_zero()) {
            for (std::size_t j = 1; j < n; ++j)
                if (!m.at(0, j).is_zero()) return FormClass::Indefinite;
            saw_kernel = true;
            Matrix<Scalar> sub(n - 1, n - 1);
            for (std::size_t i = 1; i < n; ++i)
                for (std::size_t j = 1; j < n; ++j) sub.at(i - 1, j - 1) = m.at(i, j);
            m = std::move(sub);
            continue;
        }
        (void)d_pos;
        Scalar inv = d.inverse();
        Matrix<Scalar> sub(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = 1; j < n; ++j)
                sub.at(i - 1, j - 1) = m.at(i, j) - m.at(i, 0) * inv * m.at(0, j);
        m = std::move(sub);
    }
}

FormClass classify_form(const Graph& g) {
    g.validate();
    if (!g.default_euler_data())
        throw std::invalid_argument("classify_form: unsupported non-default euler data");
    return classify_symmetric(cartan_matrix(g), false);
}

std::optional<DimensionVector> affine_delta(const Graph& g) {
    if (classify_form(g) != FormClass::StrictlySemiPositive) return std::nullopt;
    Matrix<Scalar> ker = kernel_basis(cartan_matrix(g));
    if (ker.cols() != 1) return std::nullopt;
    // scale to the primitive integer vector
    Int lcm_den = 1, gcd_num = 0;
    std::vector<Rat> entries(ker.rows());
    for (std::size_t i = 0; i < ker.rows(); ++i) {
        entries[i] = ker.at(i, 0).as_rational();
        lcm_den = boost::multiprecision::lcm(lcm_den, denominator(entries[i]));
    }
    std::vector<Int> ints(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        ints[i] = numerator(entries[i]) * (lcm_den / denominator(entries[i]));
        gcd_num = boost::multiprecision::gcd(gcd_num, ints[i]);
    }
    if (gcd_num == 0) return std::nullopt;
    bool any_neg = false, any_pos = false;
    for (auto& x : ints) {
        x /= gcd_num;
        if (x < 0) any_neg = true;
        if (x > 0) any_pos = true;
    }
    if (any_neg && any_pos) return std::nullopt; // not a positive vector
    DimensionVector delta;
    for (std::size_t i = 0; i < ints.size(); ++i) {
        Int e = any_neg ? Int(-ints[i]) : ints[i];
        if (e <= 0) return std::nullopt;
        delta[g.vertices[i].id] = static_cast<long>(e);
    }
    return delta;
}

std::vector<DimensionVector> positive_roots(const Graph& g, const DimensionVector& bound) {
    g.validate();
    Matrix<Scalar> c = cartan_matrix(g);
    const std::size_t n = g.vertices.size();
    std::vector<long> cap(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        auto it = bound.find(g.vertices[i].id);
        if (it != bound.end()) cap[i] = std::max(0L, it->second);
    }
    std::vector<DimensionVector> roots;
    std::vector<long> theta(n, 0);
    auto tits = [&]() {
        Rat q = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (theta[i] && theta[j]) q += c.at(i, j).as_rational() * theta[i] * theta[j];
        return q;
    };
    while (true) {
        // advance odometer
        std::size_t k = 0;
        while (k < n && theta[k] == cap[k]) theta[k++] = 0;
        if (k == n) break;
        ++theta[k];
        if (tits() <= 2) {
            DimensionVector dv;
            for (std::size_t i = 0; i < n; ++i) dv[g.vertices[i].id] = theta[i];
            roots.push_back(dv);
        }
    }
    return roots;
}

bool on_wall(const Weight& zeta, const DimensionVector& theta) {
    Rat s = 0;
    for (const auto& [v, t] : theta) {
        auto it = zeta.find(v);
        if (it != zeta.end()) s += it->second * t;
    }
    return s == 0;
}

} // namespace qf
