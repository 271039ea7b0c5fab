#pragma once

#include "toda/rational.hpp"

#include <map>
#include <vector>
#include <complex>
#include <string>

namespace toda {

// Finite sum  sum_k c_k * e^{2*pi*i*phase_k} * z^{p_k}  with rational exponents
// p_k and coefficients c_k in Q(i).  The phase factor is only ever nonzero
// after analytic continuation around the origin; it is an exact rational
// multiple of a full turn, so the representation stays exact.
class PuiseuxPoly {
public:
    struct Term {
        GaussQ coeff;
        Rational phase;  // multiply by e^{2*pi*i*phase}, kept reduced mod 1
    };

    PuiseuxPoly() = default;
    static PuiseuxPoly constant(GaussQ c);
    static PuiseuxPoly monomial(const Rational& exponent, GaussQ c);

    bool is_zero() const { return terms_.empty(); }
    size_t num_terms() const { return terms_.size(); }
    const std::map<Rational, Term>& terms() const { return terms_; }

    void add_term(const Rational& exponent, const GaussQ& c, const Rational& phase = Rational(0));

    PuiseuxPoly& operator+=(const PuiseuxPoly& o);
    PuiseuxPoly& operator-=(const PuiseuxPoly& o);
    friend PuiseuxPoly operator+(PuiseuxPoly a, const PuiseuxPoly& b) { return a += b; }
    friend PuiseuxPoly operator-(PuiseuxPoly a, const PuiseuxPoly& b) { return a -= b; }
    friend PuiseuxPoly operator*(const PuiseuxPoly& a, const PuiseuxPoly& b);
    PuiseuxPoly scaled(const GaussQ& s) const;

    // Antiderivative with zero constant term; every exponent must exceed -1.
    PuiseuxPoly integrate() const;
    PuiseuxPoly differentiate() const;

    // z -> z*e^{-2*pi*i}: each monomial picks up e^{-2*pi*i*p}.
    PuiseuxPoly continued_around_origin() const;

    bool has_nonzero_phase() const;

    // Principal branch: z^p = exp(p Log z), valid off (-inf, 0].
    std::complex<double> eval(std::complex<double> z) const;

    // lcm of exponent denominators (1 for the zero polynomial).
    long exponent_denominator() const;

    friend bool operator==(const PuiseuxPoly& a, const PuiseuxPoly& b);

    std::string str() const;

private:
    std::map<Rational, Term> terms_;
};

class PuiseuxMatrix {
public:
    PuiseuxMatrix() : dim_(0) {}
    explicit PuiseuxMatrix(int dim) : dim_(dim), entries_(dim * dim) {}
    static PuiseuxMatrix identity(int dim);

    int dim() const { return dim_; }
    PuiseuxPoly& at(int r, int c) { return entries_[r * dim_ + c]; }
    const PuiseuxPoly& at(int r, int c) const { return entries_[r * dim_ + c]; }

    PuiseuxMatrix operator*(const PuiseuxMatrix& o) const;
    PuiseuxMatrix operator+(const PuiseuxMatrix& o) const;
    PuiseuxMatrix integrate() const;
    PuiseuxMatrix differentiate() const;
    PuiseuxMatrix continued_around_origin() const;

    bool has_nonzero_phase() const;
    bool is_unipotent_lower() const;

    std::vector<std::complex<double>> eval(std::complex<double> z) const;

    long exponent_denominator() const;

    friend bool operator==(const PuiseuxMatrix& a, const PuiseuxMatrix& b);

    // JSON schema: {"dim":d, "q":q, "entries":[[[k,re_num,re_den,im_num,im_den],...] x d*d]}
    // with exponents k/q.  Large numerators fall back to decimal strings.
    std::string to_json() const;
    static PuiseuxMatrix from_json(const std::string& text);

private:
    int dim_;
    std::vector<PuiseuxPoly> entries_;
};

}  // namespace toda
