#include "quiverforge/scalar.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qf {

std::string rat_str(const Rat& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

static Gauss gmul(const Gauss& a, const Gauss& b) {
    return Gauss(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
}
static Gauss gadd(const Gauss& a, const Gauss& b) { return Gauss(a.re + b.re, a.im + b.im); }
static Gauss gneg(const Gauss& a) { return Gauss(-a.re, -a.im); }
static Gauss ginv(const Gauss& a) {
    Rat n = a.re * a.re + a.im * a.im;
    if (n == 0) throw std::domain_error("inverse of zero");
    return Gauss(a.re / n, -a.im / n);
}

void Novikov::normalize() {
    std::stable_sort(terms.begin(), terms.end(),
                     [](const NovikovTerm& a, const NovikovTerm& b) { return a.exp < b.exp; });
    std::vector<NovikovTerm> out;
    for (auto& t : terms) {
        if (trunc && t.exp >= *trunc) continue;
        if (!out.empty() && out.back().exp == t.exp)
            out.back().coeff = gadd(out.back().coeff, t.coeff);
        else
            out.push_back(t);
    }
    terms.clear();
    for (auto& t : out)
        if (!t.coeff.is_zero()) terms.push_back(t);
}

Scalar Scalar::rational(Int num, Int den) {
    if (den == 0) throw std::domain_error("zero denominator");
    return Scalar(Rat(num, den));
}

Scalar Scalar::tpow(Rat exp, std::optional<Rat> trunc) {
    Novikov n;
    n.trunc = std::move(trunc);
    n.terms.push_back({std::move(exp), Gauss(Rat(1))});
    n.normalize();
    return Scalar(n);
}

bool Scalar::is_zero() const {
    if (auto* r = std::get_if<Rat>(&v_)) return *r == 0;
    if (auto* g = std::get_if<Gauss>(&v_)) return g->is_zero();
    return std::get<Novikov>(v_).terms.empty();
}

bool Scalar::is_one() const {
    if (auto* r = std::get_if<Rat>(&v_)) return *r == 1;
    if (auto* g = std::get_if<Gauss>(&v_)) return g->re == 1 && g->im == 0;
    const auto& n = std::get<Novikov>(v_);
    return n.terms.size() == 1 && n.terms[0].exp == 0 && n.terms[0].coeff.re == 1 &&
           n.terms[0].coeff.im == 0;
}

FieldMode Scalar::mode() const {
    if (std::holds_alternative<Rat>(v_)) return FieldMode::Q;
    if (std::holds_alternative<Gauss>(v_)) return FieldMode::QI;
    return FieldMode::NOVIKOV;
}

Gauss Scalar::to_gauss() const {
    if (auto* r = std::get_if<Rat>(&v_)) return Gauss(*r);
    if (auto* g = std::get_if<Gauss>(&v_)) return *g;
    throw std::domain_error("novikov scalar used where Q(i) expected");
}

Novikov Scalar::to_novikov() const {
    if (auto* n = std::get_if<Novikov>(&v_)) return *n;
    Novikov n;
    Gauss g = to_gauss();
    if (!g.is_zero()) n.terms.push_back({Rat(0), g});
    return n;
}

std::optional<Rat> Scalar::valuation() const {
    if (is_zero()) return std::nullopt;
    if (auto* n = std::get_if<Novikov>(&v_)) return n->terms.front().exp;
    return Rat(0);
}

void Scalar::demote() {
    if (auto* n = std::get_if<Novikov>(&v_)) {
        if (n->trunc) return; // window is information; keep it
        if (n->terms.empty()) { v_ = Rat(0); return; }
        if (n->terms.size() == 1 && n->terms[0].exp == 0) {
            Gauss g = n->terms[0].coeff;
            v_ = g;
        } else {
            return;
        }
    }
    if (auto* g = std::get_if<Gauss>(&v_)) {
        if (g->im == 0) v_ = g->re;
    }
}

Scalar Scalar::operator-() const {
    if (auto* r = std::get_if<Rat>(&v_)) return Scalar(Rat(-*r));
    if (auto* g = std::get_if<Gauss>(&v_)) return Scalar(gneg(*g));
    Novikov n = std::get<Novikov>(v_);
    for (auto& t : n.terms) t.coeff = gneg(t.coeff);
    return Scalar(std::move(n));
}

static std::optional<Rat> opt_min(const std::optional<Rat>& a, const std::optional<Rat>& b) {
    if (!a) return b;
    if (!b) return a;
    return std::min(*a, *b);
}
// a + b where nullopt acts as +infinity
static std::optional<Rat> opt_add(const std::optional<Rat>& a, const std::optional<Rat>& b) {
    if (!a || !b) return std::nullopt;
    return *a + *b;
}

Scalar Scalar::operator+(const Scalar& o) const {
    if (is_rational() && o.is_rational()) return Scalar(Rat(as_rational() + o.as_rational()));
    if (mode() != FieldMode::NOVIKOV && o.mode() != FieldMode::NOVIKOV) {
        Scalar s(gadd(to_gauss(), o.to_gauss()));
        s.demote();
        return s;
    }
    Novikov a = to_novikov(), b = o.to_novikov();
    Novikov out;
    out.trunc = opt_min(a.trunc, b.trunc);
    out.terms = a.terms;
    out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
    out.normalize();
    Scalar s(std::move(out));
    s.demote();
    return s;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
    if (is_rational() && o.is_rational()) return Scalar(Rat(as_rational() * o.as_rational()));
    if (mode() != FieldMode::NOVIKOV && o.mode() != FieldMode::NOVIKOV) {
        Scalar s(gmul(to_gauss(), o.to_gauss()));
        s.demote();
        return s;
    }
    Novikov a = to_novikov(), b = o.to_novikov();
    Novikov out;
    // product is known below min(trunc_a + val_b, trunc_b + val_a)
    std::optional<Rat> va = a.terms.empty() ? std::nullopt : std::optional<Rat>(a.terms[0].exp);
    std::optional<Rat> vb = b.terms.empty() ? std::nullopt : std::optional<Rat>(b.terms[0].exp);
    out.trunc = opt_min(opt_add(a.trunc, vb), opt_add(b.trunc, va));
    for (auto& ta : a.terms)
        for (auto& tb : b.terms)
            out.terms.push_back({ta.exp + tb.exp, gmul(ta.coeff, tb.coeff)});
    out.normalize();
    Scalar s(std::move(out));
    s.demote();
    return s;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero scalar");
    if (auto* r = std::get_if<Rat>(&v_)) return Scalar(Rat(1 / *r));
    if (auto* g = std::get_if<Gauss>(&v_)) {
        Scalar s(ginv(*g));
        s.demote();
        return s;
    }
    const Novikov& f = std::get<Novikov>(v_);
    // f = c0 T^e0 (1 + u) with val(u) > 0; invert by the geometric series.
    Rat e0 = f.terms[0].exp;
    Gauss c0inv = ginv(f.terms[0].coeff);
    Novikov u;
    u.trunc = f.trunc ? std::optional<Rat>(*f.trunc - e0) : std::nullopt;
    for (size_t k = 1; k < f.terms.size(); ++k)
        u.terms.push_back({f.terms[k].exp - e0, gmul(c0inv, f.terms[k].coeff)});
    u.normalize();
    // window of the result: -e0 + window(u) (untruncated input with finitely
    // many terms inverts exactly only when u = 0; otherwise pick the natural
    // window at which the geometric series stops contributing known terms)
    std::optional<Rat> window = u.trunc;
    if (!window && !u.terms.empty())
        throw std::domain_error("inverse of an untruncated multi-term novikov series");
    Scalar acc = Scalar(Rat(1));
    Scalar upow = Scalar(Rat(1));
    Scalar su(u);
    if (!u.terms.empty()) {
        Rat uval = u.terms[0].exp;
        Rat need = *window;
        Rat reached = 0;
        int sign = -1;
        while (reached < need) {
            upow = upow * su;
            if (upow.is_zero()) break;
            acc = (sign > 0) ? acc + upow : acc - upow;
            sign = -sign;
            reached += uval;
        }
    }
    Novikov pre;
    pre.trunc = window ? std::optional<Rat>(*window - e0) : std::nullopt;
    pre.terms.push_back({-e0, c0inv});
    Scalar s = Scalar(std::move(pre)) * acc;
    return s;
}

bool Scalar::operator==(const Scalar& o) const {
    if (is_rational() && o.is_rational()) return as_rational() == o.as_rational();
    if (mode() != FieldMode::NOVIKOV && o.mode() != FieldMode::NOVIKOV) {
        Gauss a = to_gauss(), b = o.to_gauss();
        return a.re == b.re && a.im == b.im;
    }
    Novikov a = to_novikov(), b = o.to_novikov();
    if (a.terms.size() != b.terms.size()) return false;
    for (size_t k = 0; k < a.terms.size(); ++k) {
        if (a.terms[k].exp != b.terms[k].exp) return false;
        if (a.terms[k].coeff.re != b.terms[k].coeff.re) return false;
        if (a.terms[k].coeff.im != b.terms[k].coeff.im) return false;
    }
    return true;
}

static std::string gauss_str(const Gauss& g) {
    if (g.im == 0) return rat_str(g.re);
    std::ostringstream os;
    if (g.re != 0) os << g.re << (g.im > 0 ? "+" : "");
    if (g.im == 1) os << "i";
    else if (g.im == -1) os << "-i";
    else os << g.im << "i";
    return os.str();
}

std::string Scalar::str() const {
    if (auto* r = std::get_if<Rat>(&v_)) return rat_str(*r);
    if (auto* g = std::get_if<Gauss>(&v_)) return gauss_str(*g);
    const auto& n = std::get<Novikov>(v_);
    if (n.terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& t : n.terms) {
        if (!first) os << " + ";
        first = false;
        os << "(" << gauss_str(t.coeff) << ")T^" << t.exp;
    }
    if (n.trunc) os << " [mod T^" << *n.trunc << "]";
    return os.str();
}

} // namespace qf
