#ifndef ROTORLAB_NUMBER_HPP
#define ROTORLAB_NUMBER_HPP

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>
#include <boost/math/constants/constants.hpp>

#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rotorlab {

namespace mp = boost::multiprecision;

using Integer = mp::number<mp::gmp_int, mp::et_off>;
using Exact = mp::number<mp::gmp_rational, mp::et_off>;
// ~332 bits; enough headroom for remainders scaled by λ^{-7/2} at λ = 1e-8.
using Real = mp::number<mp::mpfr_float_backend<100>, mp::et_off>;

inline Real pi_real() { return boost::math::constants::pi<Real>(); }

inline Integer numerator(const Exact& q) { return mp::numerator(q); }
inline Integer denominator(const Exact& q) { return mp::denominator(q); }

inline Integer floor_div(const Integer& a, const Integer& b)
{
    Integer r;
    mpz_fdiv_q(r.backend().data(), a.backend().data(), b.backend().data());
    return r;
}

inline Integer floor_of(const Exact& q) { return floor_div(numerator(q), denominator(q)); }

inline Integer ceil_of(const Exact& q) { return -floor_of(-q); }

inline Exact frac(const Exact& q) { return q - Exact(floor_of(q)); }

inline Real to_real(const Exact& q) { return Real(q); }

// Exact binary value of an MPFR number.
inline Exact to_exact(const Real& r) { return static_cast<Exact>(r); }

inline Exact make_exact(long p, long q = 1) { return Exact(Integer(p), Integer(q)); }

inline Exact pow_int(const Exact& x, unsigned n)
{
    Exact r(1), b = x;
    while (n) {
        if (n & 1u) r *= b;
        b *= b;
        n >>= 1;
    }
    return r;
}

inline Real pow_int(const Real& x, unsigned n) { return mp::pow(x, n); }
inline double pow_int(double x, unsigned n) { return std::pow(x, static_cast<double>(n)); }

// Parses "p/q", "p" or a plain decimal like "-0.25". Throws std::invalid_argument.
inline Exact parse_exact(std::string_view s)
{
    auto digits = [](std::string_view d) {
        if (d.empty()) return false;
        for (char c : d)
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        return true;
    };
    std::string_view body = s;
    bool neg = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        neg = body.front() == '-';
        body.remove_prefix(1);
    }
    Exact v;
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        auto p = body.substr(0, slash), q = body.substr(slash + 1);
        if (!digits(p) || !digits(q)) throw std::invalid_argument("malformed rational: " + std::string(s));
        Integer den{std::string(q)};
        if (den == 0) throw std::invalid_argument("zero denominator: " + std::string(s));
        v = Exact(Integer(std::string(p)), den);
    } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
        auto ip = body.substr(0, dot), fp = body.substr(dot + 1);
        if ((ip.empty() && fp.empty()) || (!ip.empty() && !digits(ip)) || (!fp.empty() && !digits(fp)))
            throw std::invalid_argument("malformed decimal: " + std::string(s));
        Integer scale = mp::pow(Integer(10), static_cast<unsigned>(fp.size()));
        Integer whole(std::string(ip.empty() ? "0" : ip));
        Integer part(std::string(fp.empty() ? "0" : fp));
        v = Exact(whole * scale + part, scale);
    } else {
        if (!digits(body)) throw std::invalid_argument("malformed number: " + std::string(s));
        v = Exact(Integer(std::string(body)));
    }
    return neg ? Exact(-v) : v;
}

// Always "p/q", including integers ("3/1").
inline std::string to_string(const Exact& q)
{
    return numerator(q).str() + "/" + denominator(q).str();
}

inline std::string to_string(const Real& r, int digits = 30)
{
    return r.str(digits, std::ios_base::scientific);
}

template <class T>
struct Vec2 {
    T x{}, y{};

    friend Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(const T& s, const Vec2& a) { return {s * a.x, s * a.y}; }
    friend bool operator==(const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(const Vec2& a, const Vec2& b) { return !(a == b); }
};

using Point = Vec2<Exact>;
using RPoint = Vec2<Real>;

template <class T>
T cross(const Vec2<T>& a, const Vec2<T>& b) { return a.x * b.y - a.y * b.x; }

template <class T>
T dot(const Vec2<T>& a, const Vec2<T>& b) { return a.x * b.x + a.y * b.y; }

inline RPoint to_real(const Point& p) { return {to_real(p.x), to_real(p.y)}; }

inline std::string to_string(const Point& p) { return "(" + to_string(p.x) + ", " + to_string(p.y) + ")"; }

// Lexicographic order, used to canonicalize point sets.
inline bool lex_less(const Point& a, const Point& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

} // namespace rotorlab

#endif
