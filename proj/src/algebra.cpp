#include "quiverforge/algebra.hpp"
#include "quiverforge/rewrite.hpp"

#include <sstream>
#include <stdexcept>

namespace qf {

int monomial_head(const PathMonomial& m, const Quiver& q) {
    return m.is_trivial() ? m.vertex : q.arrow(m.arrows.front()).head;
}

int monomial_tail(const PathMonomial& m, const Quiver& q) {
    return m.is_trivial() ? m.vertex : q.arrow(m.arrows.back()).tail;
}

bool monomial_composable(const PathMonomial& left, const PathMonomial& right, const Quiver& q) {
    return monomial_tail(left, q) == monomial_head(right, q);
}

PathMonomial monomial_concat(const PathMonomial& left, const PathMonomial& right) {
    if (left.is_trivial()) return right;
    if (right.is_trivial()) return left;
    PathMonomial m = left;
    m.arrows.insert(m.arrows.end(), right.arrows.begin(), right.arrows.end());
    return m;
}

AlgebraElement AlgebraElement::unit(int vertex) {
    return term(PathMonomial::trivial(vertex), Scalar::one());
}

AlgebraElement AlgebraElement::term(PathMonomial m, Scalar c) {
    AlgebraElement f;
    if (!c.is_zero()) f.terms_.emplace(std::move(m), std::move(c));
    return f;
}

Scalar AlgebraElement::coeff(const PathMonomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar::zero() : it->second;
}

std::size_t AlgebraElement::max_length() const {
    std::size_t n = 0;
    for (const auto& [m, c] : terms_) n = std::max(n, m.length());
    return n;
}

void AlgebraElement::add_term(const PathMonomial& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
    AlgebraElement f = *this;
    f += o;
    return f;
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
    AlgebraElement f = *this;
    f -= o;
    return f;
}

AlgebraElement AlgebraElement::operator-() const {
    AlgebraElement f;
    for (const auto& [m, c] : terms_) f.terms_.emplace(m, -c);
    return f;
}

AlgebraElement AlgebraElement::scaled(const Scalar& c) const {
    AlgebraElement f;
    if (c.is_zero()) return f;
    for (const auto& [m, x] : terms_) {
        Scalar y = x * c;
        if (!y.is_zero()) f.terms_.emplace(m, std::move(y));
    }
    return f;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

std::optional<VertexType> homogeneous_type(const AlgebraElement& f, const Quiver& q) {
    std::optional<VertexType> t;
    for (const auto& [m, c] : f.terms()) {
        VertexType mt{monomial_head(m, q), monomial_tail(m, q)};
        if (!t)
            t = mt;
        else if (t->head != mt.head || t->tail != mt.tail)
            return std::nullopt;
    }
    return t;
}

AlgebraElement multiply(const Quiver& q, const AlgebraElement& a, const AlgebraElement& b) {
    AlgebraElement f;
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            if (!monomial_composable(ma, mb, q)) continue;
            f.add_term(monomial_concat(ma, mb), ca * cb);
        }
    return f;
}

std::string to_string(const PathMonomial& m, const Quiver& q) {
    if (m.is_trivial()) return "e_" + std::to_string(m.vertex);
    std::string s;
    for (std::size_t k = 0; k < m.arrows.size(); ++k) {
        if (k) s += ".";
        const Arrow& a = q.arrow(m.arrows[k]);
        s += a.name.empty() ? "#" + std::to_string(a.id) : a.name;
    }
    return s;
}

std::string to_string(const AlgebraElement& f, const Quiver& q) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : f.terms()) {
        if (!first) os << " + ";
        first = false;
        if (!c.is_one()) os << "(" << c.str() << ")";
        os << to_string(m, q);
    }
    return os.str();
}

QuiverAlgebra::QuiverAlgebra(Quiver q, std::vector<AlgebraElement> relations,
                             std::vector<std::pair<int, int>> inverse_pairs,
                             std::map<int, int> arrow_weight)
    : q_(std::move(q)), rels_(std::move(relations)), inv_(std::move(inverse_pairs)),
      weight_(std::move(arrow_weight)) {
    q_.validate();
    for (const auto& r : rels_) {
        if (r.is_zero()) continue;
        if (!homogeneous_type(r, q_))
            throw std::invalid_argument("relation is not vertex-homogeneous: " + to_string(r, q_));
    }
    for (const auto& [w, orig] : inv_) {
        q_.arrow(w); // throws if missing
        if (orig >= 0) q_.arrow(orig);
    }
    for (const auto& [a, w] : weight_) {
        q_.arrow(a);
        if (w < 1) throw std::invalid_argument("arrow grading weight must be >= 1");
    }
}

bool QuiverAlgebra::is_inverse_arrow(int arrow_id) const {
    for (const auto& [w, orig] : inv_)
        if (w == arrow_id) return true;
    return false;
}

long long QuiverAlgebra::arrow_weight(int arrow_id) const {
    auto it = weight_.find(arrow_id);
    return it == weight_.end() ? 1 : it->second;
}

long long QuiverAlgebra::degree(const PathMonomial& m) const {
    long long d = 0;
    for (int a : m.arrows) d += arrow_weight(a);
    return d;
}

long long QuiverAlgebra::degree(const AlgebraElement& f) const {
    long long d = 0;
    for (const auto& [m, c] : f.terms()) d = std::max(d, degree(m));
    return d;
}

bool QuiverAlgebra::mono_less(const PathMonomial& a, const PathMonomial& b) const {
    long long da = degree(a), db = degree(b);
    if (da != db) return da < db;
    if (a.length() != b.length()) return a.length() < b.length();
    if (a.arrows != b.arrows) return a.arrows < b.arrows;
    return a.vertex < b.vertex;
}

std::shared_ptr<const RuleSet> QuiverAlgebra::completion(int effort_degree) const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->completions.find(effort_degree);
    if (it != cache_->completions.end()) return it->second;
    auto rs = std::make_shared<const RuleSet>(*this, effort_degree);
    cache_->completions.emplace(effort_degree, rs);
    return rs;
}

Membership ideal_membership(const AlgebraElement& f, const QuiverAlgebra& a, int effort_degree) {
    if (a.degree(f) > effort_degree)
        throw std::invalid_argument("ideal_membership: effort degree below the degree of f");
    return a.completion(effort_degree)->proves_zero(f) ? Membership::ProvedMember
                                                       : Membership::NotFound;
}

AlgebraElement normal_form(const AlgebraElement& f, const QuiverAlgebra& a, int effort_degree) {
    if (a.degree(f) > effort_degree)
        throw std::invalid_argument("normal_form: effort degree below the degree of f");
    return a.completion(effort_degree)->reduce(f);
}

AlgebraElement substitute(const AlgebraElement& f, const std::map<int, AlgebraElement>& sigma,
                          const Quiver& q, int truncation_degree) {
    for (const auto& [arrow, img] : sigma) {
        const Arrow& a = q.arrow(arrow);
        auto t = homogeneous_type(img, q);
        if (img.is_zero()) continue;
        if (!t || t->head != a.head || t->tail != a.tail)
            throw std::invalid_argument("substitute: image of " +
                                        (a.name.empty() ? std::to_string(a.id) : a.name) +
                                        " does not match its endpoints");
    }
    auto truncate = [&](const AlgebraElement& g) {
        AlgebraElement out;
        for (const auto& [m, c] : g.terms())
            if (m.length() <= static_cast<std::size_t>(truncation_degree)) out.add_term(m, c);
        return out;
    };
    AlgebraElement result;
    for (const auto& [m, c] : f.terms()) {
        if (m.is_trivial()) {
            result.add_term(m, c);
            continue;
        }
        AlgebraElement acc = AlgebraElement::unit(q.arrow(m.arrows.front()).head);
        for (int arrow : m.arrows) {
            auto it = sigma.find(arrow);
            const AlgebraElement img = it != sigma.end()
                                           ? it->second
                                           : AlgebraElement::term(PathMonomial::word({arrow}),
                                                                  Scalar::one());
            acc = truncate(multiply(q, acc, img));
            if (acc.is_zero()) break;
        }
        result += acc.scaled(c);
    }
    return result;
}

AlgebraElement truncate_length(const AlgebraElement& f, long max_length) {
    AlgebraElement out;
    for (const auto& [m, c] : f.terms())
        if (m.length() <= static_cast<std::size_t>(max_length)) out.add_term(m, c);
    return out;
}

long long cohomological_degree(const PathMonomial& m, const Quiver& q) {
    long long d = 0;
    for (int a : m.arrows) d += q.arrow(a).degree;
    return d;
}

std::optional<long long> cohomological_degree(const AlgebraElement& f, const Quiver& q) {
    std::optional<long long> d;
    for (const auto& [m, c] : f.terms()) {
        long long md = cohomological_degree(m, q);
        if (!d)
            d = md;
        else if (*d != md)
            return std::nullopt;
    }
    return d;
}

AlgebraElement apply_derivation(const QuiverAlgebra& a, const std::map<int, AlgebraElement>& d,
                                const AlgebraElement& f) {
    const Quiver& q = a.quiver();
    AlgebraElement out;
    for (const auto& [m, c] : f.terms()) {
        if (m.is_trivial()) continue; // d(e_v) = 0
        long long sign_degree = 0;    // cohomological degree of the prefix
        for (std::size_t k = 0; k < m.arrows.size(); ++k) {
            auto it = d.find(m.arrows[k]);
            if (it != d.end() && !it->second.is_zero()) {
                PathMonomial prefix = k == 0
                                          ? PathMonomial::trivial(q.arrow(m.arrows[0]).head)
                                          : PathMonomial::word({m.arrows.begin(),
                                                                m.arrows.begin() + long(k)});
                PathMonomial suffix =
                    k + 1 == m.arrows.size()
                        ? PathMonomial::trivial(q.arrow(m.arrows[k]).tail)
                        : PathMonomial::word({m.arrows.begin() + long(k) + 1, m.arrows.end()});
                AlgebraElement piece = multiply(
                    q, AlgebraElement::term(prefix, Scalar::one()),
                    multiply(q, it->second, AlgebraElement::term(suffix, Scalar::one())));
                Scalar s = (sign_degree % 2 == 0) ? c : -c;
                out += piece.scaled(s);
            }
            sign_degree += q.arrow(m.arrows[k]).degree;
        }
    }
    return out;
}

bool check_dg(const QuiverAlgebra& a, const std::map<int, AlgebraElement>& d, int effort_degree) {
    const Quiver& q = a.quiver();
    auto rules = a.completion(effort_degree);
    // structural validation: endpoints must match (throw); cohomological
    // grading must rise by exactly 1 (fail)
    for (const auto& [arrow, img] : d) {
        if (img.is_zero()) continue;
        const Arrow& ar = q.arrow(arrow);
        auto t = homogeneous_type(img, q);
        if (!t || t->head != ar.head || t->tail != ar.tail)
            throw std::invalid_argument("check_dg: d image of " +
                                        (ar.name.empty() ? std::to_string(ar.id) : ar.name) +
                                        " does not match its endpoints");
        auto cd = cohomological_degree(img, q);
        if (!cd || *cd != ar.degree + 1) return false;
    }
    for (const auto& r : a.relations())
        if (!rules->proves_zero(apply_derivation(a, d, r))) return false;
    for (const auto& ar : q.arrows) {
        AlgebraElement gen = AlgebraElement::term(PathMonomial::word({ar.id}), Scalar::one());
        if (!rules->proves_zero(apply_derivation(a, d, apply_derivation(a, d, gen))))
            return false;
    }
    return true;
}

std::optional<Rat> valuation(const AlgebraElement& f, const std::map<int, Rat>& weights) {
    std::optional<Rat> best;
    for (const auto& [m, c] : f.terms()) {
        auto sval = c.valuation();
        if (!sval) continue; // zero coefficient cannot occur, but be safe
        Rat v = *sval;
        for (int arrow : m.arrows) {
            auto it = weights.find(arrow);
            if (it != weights.end()) v += it->second;
        }
        if (!best || v < *best) best = v;
    }
    return best;
}

} // namespace qf
