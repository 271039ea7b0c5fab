#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "toda/puiseux.hpp"

#include <complex>
#include <random>

using namespace toda;

namespace {

PuiseuxPoly mono(long num, long den, long cnum, long cden = 1) {
    return PuiseuxPoly::monomial(Rational(num, den), GaussQ(Rational(cnum, cden)));
}

}  // namespace

TEST_CASE("terms with equal exponents merge and cancel") {
    PuiseuxPoly p = mono(1, 2, 3) + mono(1, 2, 4);
    REQUIRE(p.num_terms() == 1);
    CHECK(p.terms().begin()->second.coeff == GaussQ(7));

    PuiseuxPoly q = p - mono(1, 2, 7);
    CHECK(q.is_zero());
}

TEST_CASE("multiplication adds exponents and multiplies Q(i) coefficients") {
    PuiseuxPoly a = PuiseuxPoly::monomial(Rational(1, 3), GaussQ(1, 1));   // (1+i) z^{1/3}
    PuiseuxPoly b = PuiseuxPoly::monomial(Rational(1, 6), GaussQ(0, 1));   // i z^{1/6}
    PuiseuxPoly c = a * b;
    REQUIRE(c.num_terms() == 1);
    const auto& [p, t] = *c.terms().begin();
    CHECK(p == Rational(1, 2));
    CHECK(t.coeff == GaussQ(-1, 1));
}

TEST_CASE("distributivity on random sparse polynomials") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<long> num(-6, 6), den(1, 4);
    auto rand_rat = [&] {
        Rational r(num(rng), den(rng));
        r.canonicalize();
        return r;
    };
    auto rand_poly = [&] {
        PuiseuxPoly p;
        for (int k = 0; k < 5; k++)
            p += PuiseuxPoly::monomial(rand_rat(), GaussQ(rand_rat(), rand_rat()));
        return p;
    };
    for (int trial = 0; trial < 20; trial++) {
        PuiseuxPoly a = rand_poly(), b = rand_poly(), c = rand_poly();
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
    }
}

TEST_CASE("integrate is a right inverse of differentiate") {
    PuiseuxPoly p = mono(1, 2, 2) + mono(5, 3, -7, 4) + mono(0, 1, 1);
    CHECK(p.integrate().differentiate() == p);

    // and integrate drops no information above exponent -1
    PuiseuxPoly q = mono(-1, 2, 3);
    PuiseuxPoly iq = q.integrate();
    REQUIRE(iq.num_terms() == 1);
    CHECK(iq.terms().begin()->first == Rational(1, 2));
    CHECK(iq.terms().begin()->second.coeff == GaussQ(6));  // 3 / (1/2)
}

TEST_CASE("integrating an exponent at or below -1 throws") {
    CHECK_THROWS_AS(mono(-1, 1, 1).integrate(), std::domain_error);
    CHECK_THROWS_AS(mono(-3, 2, 1).integrate(), std::domain_error);
}

TEST_CASE("continuation around the origin flips z^{1/2}") {
    PuiseuxPoly p = mono(1, 2, 1);
    PuiseuxPoly q = p.continued_around_origin();
    REQUIRE(q.num_terms() == 1);
    CHECK(q.terms().begin()->second.phase == Rational(1, 2));  // e^{-i pi} carried as +1/2 mod 1

    std::complex<double> z(2.0, 0.5);
    std::complex<double> v = q.eval(z) + p.eval(z);
    CHECK(std::abs(v) < 1e-14);  // z^{1/2} -> -z^{1/2}
}

TEST_CASE("integer exponents are continuation-invariant") {
    PuiseuxPoly p = mono(3, 1, 2) + mono(0, 1, -1) + mono(-2, 1, 5);
    CHECK(p.continued_around_origin() == p);
}

TEST_CASE("two continuations compose: phase is additive mod 1") {
    PuiseuxPoly p = mono(1, 3, 1);
    PuiseuxPoly q = p.continued_around_origin().continued_around_origin().continued_around_origin();
    CHECK(q == p);  // full period of z^{1/3}
}

TEST_CASE("mixing distinct phases at one exponent is rejected") {
    PuiseuxPoly p = mono(1, 2, 1).continued_around_origin();
    CHECK_THROWS_AS(p += mono(1, 2, 1), std::logic_error);
}

TEST_CASE("eval agrees with direct complex arithmetic on principal branch") {
    PuiseuxPoly p = mono(1, 2, 3) + PuiseuxPoly::monomial(Rational(2), GaussQ(0, 1));
    std::complex<double> z(0.3, 1.7);
    std::complex<double> expect = 3.0 * std::sqrt(z) + std::complex<double>(0, 1) * z * z;
    CHECK(std::abs(p.eval(z) - expect) < 1e-13);
}

TEST_CASE("exponent denominator is the lcm over terms") {
    PuiseuxPoly p = mono(1, 2, 1) + mono(2, 3, 1) + mono(5, 1, 1);
    CHECK(p.exponent_denominator() == 6);
    CHECK(PuiseuxPoly().exponent_denominator() == 1);
}

TEST_CASE("matrix product matches schoolbook on a 2x2 example") {
    PuiseuxMatrix a(2), b(2);
    a.at(0, 0) = mono(0, 1, 1);
    a.at(1, 0) = mono(1, 2, 2);
    a.at(1, 1) = mono(0, 1, 1);
    b.at(0, 0) = mono(0, 1, 1);
    b.at(1, 0) = mono(3, 2, 1, 3);
    b.at(1, 1) = mono(0, 1, 1);
    PuiseuxMatrix c = a * b;
    CHECK(c.at(0, 0) == mono(0, 1, 1));
    CHECK(c.at(0, 1).is_zero());
    CHECK(c.at(1, 0) == mono(1, 2, 2) + mono(3, 2, 1, 3));
    CHECK(c.at(1, 1) == mono(0, 1, 1));
    CHECK(c.is_unipotent_lower());
}

TEST_CASE("is_unipotent_lower rejects off-pattern matrices") {
    PuiseuxMatrix m = PuiseuxMatrix::identity(3);
    CHECK(m.is_unipotent_lower());
    m.at(0, 2) = mono(1, 1, 1);
    CHECK_FALSE(m.is_unipotent_lower());
    PuiseuxMatrix d(2);
    d.at(0, 0) = mono(0, 1, 2);
    d.at(1, 1) = mono(0, 1, 1);
    CHECK_FALSE(d.is_unipotent_lower());
}

TEST_CASE("JSON round trip preserves every term exactly") {
    PuiseuxMatrix m(2);
    m.at(0, 0) = mono(0, 1, 1);
    m.at(1, 0) = mono(7, 6, -3, 5) + PuiseuxPoly::monomial(Rational(1, 3), GaussQ(Rational(1), Rational(2, 7)));
    m.at(1, 1) = mono(0, 1, 1);
    PuiseuxMatrix back = PuiseuxMatrix::from_json(m.to_json());
    CHECK(back == m);
}

TEST_CASE("JSON round trip survives numerators beyond 64 bits") {
    Rational huge("123456789012345678901234567890123456789/7");
    huge.canonicalize();
    PuiseuxMatrix m(1);
    m.at(0, 0) = PuiseuxPoly::monomial(Rational(5, 2), GaussQ(huge, Rational(-1, 3)));
    PuiseuxMatrix back = PuiseuxMatrix::from_json(m.to_json());
    CHECK(back == m);
}

TEST_CASE("continued matrices refuse serialization") {
    PuiseuxMatrix m(1);
    m.at(0, 0) = mono(1, 2, 1);
    CHECK_THROWS_AS(m.continued_around_origin().to_json(), std::logic_error);
}

TEST_CASE("from_json rejects malformed input") {
    CHECK_THROWS(PuiseuxMatrix::from_json("not json"));
    CHECK_THROWS(PuiseuxMatrix::from_json(R"({"dim":2,"q":1,"entries":[[]]})"));
}
