#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace qf {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

enum class FieldMode { Q, QI, NOVIKOV };

// Element of Q(i).
struct Gauss {
    Rat re, im;
    Gauss() = default;
    Gauss(Rat r) : re(std::move(r)), im(0) {}
    Gauss(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
    bool is_zero() const { return re == 0 && im == 0; }
};

// Truncated Novikov series: sum of coeff * T^exp with strictly increasing
// rational exponents.  `trunc` is the knowledge window: the series is known
// exactly for exponents < trunc (no trunc = untruncated).  Terms at or above
// the window are dropped by every operation.
struct NovikovTerm {
    Rat exp;
    Gauss coeff;
};
struct Novikov {
    std::vector<NovikovTerm> terms;
    std::optional<Rat> trunc;
    void normalize();
};

// Dynamic exact scalar: one of Q, Q(i), truncated Novikov.  Mixed-mode
// arithmetic promotes along Q -> Q(i) -> Novikov.
class Scalar {
public:
    Scalar() : v_(Rat(0)) {}
    Scalar(long n) : v_(Rat(n)) {}
    Scalar(Rat r) : v_(std::move(r)) {}
    Scalar(Gauss g) : v_(std::move(g)) {}
    Scalar(Novikov n) : v_(std::move(n)) { std::get<Novikov>(v_).normalize(); }

    static Scalar zero() { return Scalar(); }
    static Scalar one() { return Scalar(1); }
    static Scalar rational(Int num, Int den);
    static Scalar imag_unit() { return Scalar(Gauss(Rat(0), Rat(1))); }
    // T^exp with an optional knowledge window.
    static Scalar tpow(Rat exp, std::optional<Rat> trunc = std::nullopt);

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const { return std::holds_alternative<Rat>(v_); }
    const Rat& as_rational() const { return std::get<Rat>(v_); }

    // min exponent; nullopt means +infinity (the valuation of 0).
    std::optional<Rat> valuation() const;

    Scalar operator-() const;
    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    // Multiplicative inverse; the caller must ensure *this != 0.
    Scalar inverse() const;
    Scalar operator/(const Scalar& o) const { return *this * o.inverse(); }

    Scalar& operator+=(const Scalar& o) { *this = *this + o; return *this; }
    Scalar& operator-=(const Scalar& o) { *this = *this - o; return *this; }
    Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    FieldMode mode() const;
    const Gauss& as_gauss_ref() const { return std::get<Gauss>(v_); }
    const Novikov& as_novikov_ref() const { return std::get<Novikov>(v_); }
    Gauss to_gauss() const;     // requires mode Q or QI
    Novikov to_novikov() const; // any mode

    std::string str() const;

private:
    std::variant<Rat, Gauss, Novikov> v_;
    void demote(); // collapse Novikov/Gauss back to the simplest representation
};

std::string rat_str(const Rat& r);

} // namespace qf
