#pragma once

#include <gmpxx.h>
#include <complex>
#include <string>
#include <stdexcept>

namespace toda {

using Rational = mpq_class;

inline Rational rat(long num, long den = 1) { return Rational(num, den); }

// Parses "p/q", "p", or a plain integer string. Throws on malformed input.
inline Rational parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational");
    Rational r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    r.canonicalize();
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline double to_double(const Rational& r) { return r.get_d(); }

// Gaussian rational a + b*i with exact arithmetic.
struct GaussQ {
    Rational re, im;

    GaussQ() : re(0), im(0) {}
    GaussQ(Rational r) : re(std::move(r)), im(0) {}
    GaussQ(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    GaussQ(long r) : re(r), im(0) {}
    GaussQ(long r, long i) : re(r), im(i) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GaussQ conj() const { return {re, -im}; }
    Rational norm2() const { return re * re + im * im; }

    GaussQ operator-() const { return {-re, -im}; }
    GaussQ& operator+=(const GaussQ& o) { re += o.re; im += o.im; return *this; }
    GaussQ& operator-=(const GaussQ& o) { re -= o.re; im -= o.im; return *this; }

    friend GaussQ operator+(const GaussQ& a, const GaussQ& b) { return {a.re + b.re, a.im + b.im}; }
    friend GaussQ operator-(const GaussQ& a, const GaussQ& b) { return {a.re - b.re, a.im - b.im}; }
    friend GaussQ operator*(const GaussQ& a, const GaussQ& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussQ operator*(const Rational& s, const GaussQ& a) { return {s * a.re, s * a.im}; }
    friend GaussQ operator/(const GaussQ& a, const Rational& s) { return {a.re / s, a.im / s}; }
    friend GaussQ operator/(const GaussQ& a, const GaussQ& b) {
        Rational n = b.norm2();
        if (n == 0) throw std::domain_error("division by zero GaussQ");
        GaussQ p = a * b.conj();
        return {p.re / n, p.im / n};
    }
    friend bool operator==(const GaussQ& a, const GaussQ& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const GaussQ& a, const GaussQ& b) { return !(a == b); }

    std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }
};

inline std::string to_string(const GaussQ& g) {
    if (g.im == 0) return g.re.get_str();
    return g.re.get_str() + (g.im > 0 ? "+" : "") + g.im.get_str() + "i";
}

}  // namespace toda
