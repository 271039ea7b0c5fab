#include "toda/puiseux.hpp"

#include <json.hpp>

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace toda {

namespace {

Rational mod1(const Rational& p) {
    // representative in [0,1)
    mpz_class num = p.get_num(), den = p.get_den();
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    Rational r = p - Rational(q);
    r.canonicalize();
    return r;
}

}  // namespace

PuiseuxPoly PuiseuxPoly::constant(GaussQ c) {
    PuiseuxPoly p;
    p.add_term(Rational(0), c);
    return p;
}

PuiseuxPoly PuiseuxPoly::monomial(const Rational& exponent, GaussQ c) {
    PuiseuxPoly p;
    p.add_term(exponent, c);
    return p;
}

void PuiseuxPoly::add_term(const Rational& exponent, const GaussQ& c, const Rational& phase) {
    if (c.is_zero()) return;
    Rational ph = mod1(phase);
    auto it = terms_.find(exponent);
    if (it == terms_.end()) {
        terms_.emplace(exponent, Term{c, ph});
        return;
    }
    if (it->second.phase != ph)
        throw std::logic_error("PuiseuxPoly: mixing distinct phases at one exponent");
    it->second.coeff += c;
    if (it->second.coeff.is_zero()) terms_.erase(it);
}

PuiseuxPoly& PuiseuxPoly::operator+=(const PuiseuxPoly& o) {
    for (const auto& [p, t] : o.terms_) add_term(p, t.coeff, t.phase);
    return *this;
}

PuiseuxPoly& PuiseuxPoly::operator-=(const PuiseuxPoly& o) {
    for (const auto& [p, t] : o.terms_) add_term(p, -t.coeff, t.phase);
    return *this;
}

PuiseuxPoly operator*(const PuiseuxPoly& a, const PuiseuxPoly& b) {
    PuiseuxPoly r;
    for (const auto& [pa, ta] : a.terms_)
        for (const auto& [pb, tb] : b.terms_)
            r.add_term(pa + pb, ta.coeff * tb.coeff, ta.phase + tb.phase);
    return r;
}

PuiseuxPoly PuiseuxPoly::scaled(const GaussQ& s) const {
    PuiseuxPoly r;
    if (s.is_zero()) return r;
    for (const auto& [p, t] : terms_) r.add_term(p, s * t.coeff, t.phase);
    return r;
}

PuiseuxPoly PuiseuxPoly::integrate() const {
    PuiseuxPoly r;
    for (const auto& [p, t] : terms_) {
        if (p <= Rational(-1))
            throw std::domain_error("PuiseuxPoly::integrate: exponent <= -1");
        Rational p1 = p + 1;
        r.add_term(p1, t.coeff / p1, t.phase);
    }
    return r;
}

PuiseuxPoly PuiseuxPoly::differentiate() const {
    PuiseuxPoly r;
    for (const auto& [p, t] : terms_) {
        if (p == 0) continue;
        r.add_term(p - 1, p * t.coeff, t.phase);
    }
    return r;
}

PuiseuxPoly PuiseuxPoly::continued_around_origin() const {
    PuiseuxPoly r;
    for (const auto& [p, t] : terms_) r.add_term(p, t.coeff, t.phase - p);
    return r;
}

bool PuiseuxPoly::has_nonzero_phase() const {
    for (const auto& [p, t] : terms_)
        if (t.phase != 0) return true;
    return false;
}

std::complex<double> PuiseuxPoly::eval(std::complex<double> z) const {
    std::complex<double> logz = std::log(z);
    std::complex<double> sum = 0;
    constexpr double two_pi = 6.283185307179586476925;
    for (const auto& [p, t] : terms_) {
        std::complex<double> v = std::exp(p.get_d() * logz) * t.coeff.to_complex();
        if (t.phase != 0) {
            double a = two_pi * t.phase.get_d();
            v *= std::complex<double>(std::cos(a), std::sin(a));
        }
        sum += v;
    }
    return sum;
}

long PuiseuxPoly::exponent_denominator() const {
    mpz_class q(1);
    for (const auto& [p, t] : terms_) mpz_lcm(q.get_mpz_t(), q.get_mpz_t(), p.get_den().get_mpz_t());
    return q.get_si();
}

bool operator==(const PuiseuxPoly& a, const PuiseuxPoly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    auto ia = a.terms_.begin(), ib = b.terms_.begin();
    for (; ia != a.terms_.end(); ++ia, ++ib) {
        if (ia->first != ib->first) return false;
        if (ia->second.coeff != ib->second.coeff) return false;
        if (ia->second.phase != ib->second.phase) return false;
    }
    return true;
}

std::string PuiseuxPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [p, t] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << to_string(t.coeff) << ")";
        if (t.phase != 0) os << "*e(" << t.phase.get_str() << ")";
        if (p != 0) os << "*z^(" << p.get_str() << ")";
    }
    return os.str();
}

PuiseuxMatrix PuiseuxMatrix::identity(int dim) {
    PuiseuxMatrix m(dim);
    for (int i = 0; i < dim; i++) m.at(i, i) = PuiseuxPoly::constant(GaussQ(1));
    return m;
}

PuiseuxMatrix PuiseuxMatrix::operator*(const PuiseuxMatrix& o) const {
    PuiseuxMatrix r(dim_);
    for (int i = 0; i < dim_; i++)
        for (int k = 0; k < dim_; k++) {
            const PuiseuxPoly& a = at(i, k);
            if (a.is_zero()) continue;
            for (int j = 0; j < dim_; j++) {
                const PuiseuxPoly& b = o.at(k, j);
                if (b.is_zero()) continue;
                r.at(i, j) += a * b;
            }
        }
    return r;
}

PuiseuxMatrix PuiseuxMatrix::operator+(const PuiseuxMatrix& o) const {
    PuiseuxMatrix r(dim_);
    for (int i = 0; i < dim_ * dim_; i++) r.entries_[i] = entries_[i] + o.entries_[i];
    return r;
}

PuiseuxMatrix PuiseuxMatrix::integrate() const {
    PuiseuxMatrix r(dim_);
    for (int i = 0; i < dim_ * dim_; i++) r.entries_[i] = entries_[i].integrate();
    return r;
}

PuiseuxMatrix PuiseuxMatrix::differentiate() const {
    PuiseuxMatrix r(dim_);
    for (int i = 0; i < dim_ * dim_; i++) r.entries_[i] = entries_[i].differentiate();
    return r;
}

PuiseuxMatrix PuiseuxMatrix::continued_around_origin() const {
    PuiseuxMatrix r(dim_);
    for (int i = 0; i < dim_ * dim_; i++) r.entries_[i] = entries_[i].continued_around_origin();
    return r;
}

bool PuiseuxMatrix::has_nonzero_phase() const {
    for (const auto& e : entries_)
        if (e.has_nonzero_phase()) return true;
    return false;
}

bool PuiseuxMatrix::is_unipotent_lower() const {
    for (int r = 0; r < dim_; r++) {
        if (!(at(r, r) == PuiseuxPoly::constant(GaussQ(1)))) return false;
        for (int c = r + 1; c < dim_; c++)
            if (!at(r, c).is_zero()) return false;
    }
    return true;
}

std::vector<std::complex<double>> PuiseuxMatrix::eval(std::complex<double> z) const {
    std::vector<std::complex<double>> out(dim_ * dim_);
    for (int i = 0; i < dim_ * dim_; i++) out[i] = entries_[i].eval(z);
    return out;
}

long PuiseuxMatrix::exponent_denominator() const {
    mpz_class q(1);
    for (const auto& e : entries_) {
        mpz_class eq(e.exponent_denominator());
        mpz_lcm(q.get_mpz_t(), q.get_mpz_t(), eq.get_mpz_t());
    }
    return q.get_si();
}

bool operator==(const PuiseuxMatrix& a, const PuiseuxMatrix& b) {
    return a.dim_ == b.dim_ && a.entries_ == b.entries_;
}

namespace {

nlohmann::json encode_mpz(const mpz_class& v) {
    if (v.fits_slong_p()) return nlohmann::json(v.get_si());
    return nlohmann::json(v.get_str());
}

mpz_class decode_mpz(const nlohmann::json& j) {
    if (j.is_string()) return mpz_class(j.get<std::string>());
    return mpz_class((long)j.get<long long>());
}

}  // namespace

std::string PuiseuxMatrix::to_json() const {
    if (has_nonzero_phase())
        throw std::logic_error("PuiseuxMatrix::to_json: continued matrices not serializable");
    nlohmann::json j;
    long q = exponent_denominator();
    j["dim"] = dim_;
    j["q"] = q;
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : entries_) {
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& [p, t] : e.terms()) {
            Rational k = p * q;
            nlohmann::json row = nlohmann::json::array();
            row.push_back(encode_mpz(k.get_num()));
            row.push_back(encode_mpz(t.coeff.re.get_num()));
            row.push_back(encode_mpz(t.coeff.re.get_den()));
            row.push_back(encode_mpz(t.coeff.im.get_num()));
            row.push_back(encode_mpz(t.coeff.im.get_den()));
            terms.push_back(row);
        }
        entries.push_back(terms);
    }
    j["entries"] = entries;
    return j.dump();
}

PuiseuxMatrix PuiseuxMatrix::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    int dim = j.at("dim").get<int>();
    long q = j.at("q").get<long>();
    PuiseuxMatrix m(dim);
    const auto& entries = j.at("entries");
    if ((int)entries.size() != dim * dim) throw std::invalid_argument("bad entries size");
    for (int i = 0; i < dim * dim; i++) {
        for (const auto& row : entries[i]) {
            Rational p(decode_mpz(row[0]), q);
            p.canonicalize();
            Rational re(decode_mpz(row[1]), decode_mpz(row[2]));
            re.canonicalize();
            Rational im(decode_mpz(row[3]), decode_mpz(row[4]));
            im.canonicalize();
            m.entries_[i].add_term(p, GaussQ(re, im));
        }
    }
    return m;
}

}  // namespace toda
