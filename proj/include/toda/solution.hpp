#pragma once

#include "toda/kostant_phi.hpp"
#include "toda/liealg.hpp"
#include "toda/puiseux.hpp"
#include "toda/repgen.hpp"

#include <complex>
#include <map>
#include <string>
#include <vector>

namespace toda {

// One member of the solution family: gamma picks the singular source, the
// lambda_k > 0 parametrize Lambda = exp(sum tau_k h_k) via lambda_k = e^{tau_k},
// and c maps each positive root alpha to the coefficient of exp(c_alpha e_{-alpha})
// in the ordered product C (root order from liealg).
struct SolutionParams {
    LieType lie_type;
    std::vector<Rational> gamma;
    std::vector<double> lambda;
    std::map<RootCoords, std::complex<double>> c;

    static SolutionParams from_json(const std::string& text);
    std::string to_json() const;
};

// P(z, zbar) = sum over exponent pairs (p, q) of coeff * z^p * zbar^q, with
// exact rational exponents and complex coefficients.  Hermitian symmetry of
// the terms makes the value real (and positive for the norms we build).
class SesquiPoly {
public:
    using Key = std::pair<Rational, Rational>;

    bool empty() const { return terms_.empty(); }
    const std::map<Key, std::complex<double>>& terms() const { return terms_; }
    void add_term(const Rational& p, const Rational& q, std::complex<double> c);

    SesquiPoly dz() const;
    SesquiPoly dzbar() const;

    std::complex<double> eval(std::complex<double> z) const;
    // log of the (positive real) value, stable for |z| far from 1.
    double eval_log(double r, double theta) const;

private:
    std::map<Key, std::complex<double>> terms_;
};

// Fully assembled solution: the SesquiPolys P_i = <i|Phi* C* Lambda^2 C Phi|i>
// for every fundamental index, plus their analytic continuations around 0.
class Solution {
public:
    explicit Solution(SolutionParams params);

    const SolutionParams& params() const { return params_; }
    const RootSystem& rs() const { return rs_; }
    const GammaData& gdata() const { return gdata_; }
    int rank() const { return rs_.rank(); }

    bool in_n_gamma() const;

    const SesquiPoly& P(int i) const { return P_[i]; }                      // 0-based
    const SesquiPoly& P_continued(int i) const { return P_continued_[i]; }

    // U_i = -log P_i + 2 gamma^i log|z|
    std::vector<double> eval_U(std::complex<double> z) const;
    // u_i = sum_j a_{ij} U_j
    std::vector<double> eval_u(std::complex<double> z) const;
    // e^{u_i}, evaluated in log-space to survive large |z|
    std::vector<double> eval_eu(std::complex<double> z) const;
    std::vector<double> eval_log_eu(double r, double theta) const;

    // per-i max over samples of |U~_i - U_i| with U~ built from the
    // continued Phi
    std::vector<double> monodromy_defect(const std::vector<std::complex<double>>& zs) const;

private:
    SolutionParams params_;
    RootSystem rs_;
    GammaData gdata_;
    std::vector<SesquiPoly> P_, P_continued_;
};

bool in_n_gamma(const SolutionParams& p);

// Convert a group element of N given as a concrete matrix in `rep` into the
// ordered-product coordinates used by SolutionParams, by peeling one root
// height at a time.
std::map<RootCoords, std::complex<double>> product_coords_from_matrix(
    const MatrixRep& rep, const RootSystem& rs, const std::vector<std::complex<double>>& mat);

// The numeric matrix of C = prod_alpha exp(c_alpha rho(e_{-alpha})) in `rep`.
std::vector<std::complex<double>> c_matrix(const MatrixRep& rep, const RootSystem& rs,
                                           const std::map<RootCoords, std::complex<double>>& c);

}  // namespace toda
