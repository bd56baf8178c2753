#pragma once

// Exact arithmetic over the Gaussian rationals Q(i).
//
// Rational keeps a canonical reduced form (gcd(|num|, den) = 1, den > 0) so
// that equality and hashing are structural. Integers are unbounded
// (boost::multiprecision::cpp_int); nothing in this header rounds.

#include <complex>
#include <compare>
#include <cstddef>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "fixmult/error.hpp"

namespace fixmult {

using BigInt = boost::multiprecision::cpp_int;

inline std::size_t hash_bigint(const BigInt& value)
{
    // The limb representation is canonical for a given value.
    std::size_t h = value.sign() < 0 ? 0x9e3779b97f4a7c15ULL : 0;
    const auto& backend = value.backend();
    const auto* limbs = backend.limbs();
    for (unsigned i = 0; i < backend.size(); ++i)
        h ^= std::hash<std::uint64_t>{}(static_cast<std::uint64_t>(limbs[i])) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(BigInt n) : num_(std::move(n)), den_(1) {}
    Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

    const BigInt& num() const noexcept { return num_; }
    const BigInt& den() const noexcept { return den_; }

    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_integer() const noexcept { return den_ == 1; }
    int sign() const noexcept { return num_.sign(); }

    Rational operator-() const { return Rational(-num_, den_, Reduced{}); }

    Rational& operator+=(const Rational& o)
    {
        if (den_ == o.den_) {
            num_ += o.num_;
        } else {
            num_ = num_ * o.den_ + o.num_ * den_;
            den_ *= o.den_;
        }
        normalize();
        return *this;
    }
    Rational& operator-=(const Rational& o) { return *this += -o; }
    Rational& operator*=(const Rational& o)
    {
        num_ *= o.num_;
        den_ *= o.den_;
        normalize();
        return *this;
    }
    Rational& operator/=(const Rational& o)
    {
        if (o.is_zero())
            throw Error(ErrorCode::DivisionByZero, "rational division by zero");
        num_ *= o.den_;
        den_ *= o.num_;
        normalize();
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b)
    {
        const BigInt lhs = a.num_ * b.den_;
        const BigInt rhs = b.num_ * a.den_;
        if (lhs < rhs)
            return std::strong_ordering::less;
        if (lhs > rhs)
            return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    double to_double() const
    {
        using boost::multiprecision::cpp_rational;
        return cpp_rational(num_, den_).convert_to<double>();
    }

    std::string to_string() const
    {
        if (den_ == 1)
            return num_.str();
        return num_.str() + "/" + den_.str();
    }

    /// Parses "p" or "p/q" with an optional leading sign; q must be positive.
    static Rational parse(std::string_view text)
    {
        const auto slash = text.find('/');
        if (slash == std::string_view::npos)
            return Rational(parse_int(text, true));
        BigInt n = parse_int(text.substr(0, slash), true);
        BigInt d = parse_int(text.substr(slash + 1), false);
        if (d.is_zero())
            throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
        return Rational(std::move(n), std::move(d));
    }

    std::size_t hash() const { return hash_bigint(num_) * 31 + hash_bigint(den_); }

private:
    struct Reduced {};
    Rational(BigInt n, BigInt d, Reduced) : num_(std::move(n)), den_(std::move(d)) {}

    void normalize()
    {
        if (den_.is_zero())
            throw Error(ErrorCode::DivisionByZero, "zero denominator");
        if (den_.sign() < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        if (num_.is_zero()) {
            den_ = 1;
            return;
        }
        BigInt g = boost::multiprecision::gcd(num_, den_);
        if (g != 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    static BigInt parse_int(std::string_view text, bool allow_sign)
    {
        std::size_t pos = 0;
        bool negative = false;
        if (allow_sign && !text.empty() && (text[0] == '+' || text[0] == '-')) {
            negative = text[0] == '-';
            pos = 1;
        }
        if (pos == text.size())
            throw Error(ErrorCode::ParseError, "expected digits in '" + std::string(text) + "'");
        BigInt value = 0;
        for (; pos < text.size(); ++pos) {
            const char c = text[pos];
            if (c < '0' || c > '9')
                throw Error(ErrorCode::ParseError,
                            "unexpected character '" + std::string(1, c) + "' in '" + std::string(text) + "'");
            value *= 10;
            value += c - '0';
        }
        return negative ? BigInt(-value) : value;
    }

    BigInt num_;
    BigInt den_;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

/// Exact complex number re + im*i with rational parts.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(long long re) : re_(re) {}
    GaussianRational(Rational re) : re_(std::move(re)) {}
    GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    const Rational& re() const noexcept { return re_; }
    const Rational& im() const noexcept { return im_; }

    bool is_zero() const noexcept { return re_.is_zero() && im_.is_zero(); }
    bool is_real() const noexcept { return im_.is_zero(); }

    GaussianRational operator-() const { return {-re_, -im_}; }
    GaussianRational conj() const { return {re_, -im_}; }
    Rational norm() const { return re_ * re_ + im_ * im_; }

    GaussianRational& operator+=(const GaussianRational& o)
    {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o)
    {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o)
    {
        Rational re = re_ * o.re_ - im_ * o.im_;
        Rational im = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(re);
        im_ = std::move(im);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o)
    {
        if (o.is_zero())
            throw Error(ErrorCode::DivisionByZero, "division by zero in Q(i)");
        const Rational n = o.norm();
        *this *= o.conj();
        re_ /= n;
        im_ /= n;
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

    friend bool operator==(const GaussianRational&, const GaussianRational&) = default;

    /// Lexicographic on (re, im). Not a field order; used for canonical sorting.
    friend std::strong_ordering operator<=>(const GaussianRational& a, const GaussianRational& b)
    {
        if (auto c = a.re_ <=> b.re_; c != 0)
            return c;
        return a.im_ <=> b.im_;
    }

    std::complex<double> to_complex() const { return {re_.to_double(), im_.to_double()}; }

    /// "p/q" for real values, "p/q+r/si" otherwise.
    std::string to_string() const
    {
        if (im_.is_zero())
            return re_.to_string();
        std::string out = re_.to_string();
        if (im_.sign() > 0)
            out += '+';
        out += im_.to_string();
        out += 'i';
        return out;
    }

    /// Accepts "p", "p/q", "p/q+r/si", "p/q-r/si", "r/si", "i", "-i".
    static GaussianRational parse(std::string_view text)
    {
        if (text.empty())
            throw Error(ErrorCode::ParseError, "empty number");
        if (text.back() != 'i')
            return GaussianRational(Rational::parse(text));
        const std::string_view body = text.substr(0, text.size() - 1);
        std::size_t split = std::string_view::npos;
        for (std::size_t k = body.size(); k-- > 1;) {
            if (body[k] == '+' || body[k] == '-') {
                split = k;
                break;
            }
        }
        Rational re;
        std::string_view im_text = body;
        if (split != std::string_view::npos) {
            re = Rational::parse(body.substr(0, split));
            im_text = body.substr(split);
        }
        Rational im;
        if (im_text.empty() || im_text == "+")
            im = Rational(1);
        else if (im_text == "-")
            im = Rational(-1);
        else
            im = Rational::parse(im_text);
        return {std::move(re), std::move(im)};
    }

    std::size_t hash() const { return re_.hash() * 1000003ULL ^ im_.hash(); }

private:
    Rational re_;
    Rational im_;
};

inline std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.to_string(); }

/// mu = 1 / (1 - lambda). Rejects lambda = 1 (a multiple fixed point).
inline GaussianRational reciprocal_shift(const GaussianRational& lambda)
{
    const GaussianRational denom = GaussianRational(1) - lambda;
    if (denom.is_zero())
        throw Error(ErrorCode::MultipleFixedPoint, "multiplier equal to 1");
    return GaussianRational(1) / denom;
}

/// Inverse of reciprocal_shift: lambda = 1 - 1/mu.
inline GaussianRational inverse_reciprocal_shift(const GaussianRational& mu)
{
    if (mu.is_zero())
        throw Error(ErrorCode::ZeroMuTarget, "mu must be nonzero");
    return GaussianRational(1) - GaussianRational(1) / mu;
}

} // namespace fixmult

template <>
struct std::hash<fixmult::Rational> {
    std::size_t operator()(const fixmult::Rational& r) const { return r.hash(); }
};

template <>
struct std::hash<fixmult::GaussianRational> {
    std::size_t operator()(const fixmult::GaussianRational& z) const { return z.hash(); }
};
