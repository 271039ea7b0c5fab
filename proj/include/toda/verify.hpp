#pragma once

#include "toda/solution.hpp"

#include <complex>
#include <functional>
#include <map>
#include <vector>

namespace toda {

// Parallelism cap: TODA_ATLAS_THREADS, else hardware concurrency.
int max_threads();
void parallel_for(int count, const std::function<void(int)>& fn);

// Default residual grid: nr radii log-uniform in [1e-2, 1e2] x ntheta angles
// (cut and origin avoided).
std::vector<std::complex<double>> default_residual_points(int nr = 13, int ntheta = 8);

// max over points and i of |U_{i,z zbar} + exp(sum_j a_{ij} U_j)| with the
// derivative computed exactly from the SesquiPoly quotient rule
double pde_residual(const Solution& s, const std::vector<std::complex<double>>& pts);

struct QuadratureOptions {
    double abs_tol = 1e-8;
    double rel_tol = 1e-6;
    int ntheta = 64;
    double cut_delta = 1e-8;  // angular gap around the negative real axis
    int max_depth = 28;
};

struct QuantizationReport {
    std::vector<double> integrals;  // I_i = int e^{u_i} dx over the plane
    std::vector<double> combos;     // sum_j a_{ij} I_j
    std::vector<double> targets;    // pi (2 + gamma_i - kappa gamma_i)
    std::vector<double> rel_errors;
    double quad_error = 0;  // estimated quadrature error (max over i)
    bool converged = false;
};

QuantizationReport quantization(const Solution& s, const QuadratureOptions& opt = {});

// least-squares slope of u_i against log|z| over circles of the given radii
std::vector<double> asymptotic_slope(const Solution& s, const std::vector<double>& radii);
// -2(2 + gamma_k) with k the minus_kappa image of i
std::vector<double> asymptotic_targets(const Solution& s);

// Float-exponent twin of Solution for irrational gamma.
struct FloatParams {
    LieType lie_type;
    std::vector<double> gamma;  // > -1
    std::vector<double> lambda;
    std::map<RootCoords, std::complex<double>> c;
};

class FloatSolution {
public:
    explicit FloatSolution(FloatParams p);
    std::vector<double> eval_U(std::complex<double> z) const;
    std::vector<double> monodromy_defect(const std::vector<std::complex<double>>& zs) const;
    double pde_residual(const std::vector<std::complex<double>>& pts) const;

private:
    struct Sesqui {
        std::vector<std::pair<std::pair<double, double>, std::complex<double>>> terms;
        std::complex<double> eval(std::complex<double> z) const;
        Sesqui dz() const;
        Sesqui dzbar() const;
    };
    FloatParams params_;
    RootSystem rs_;
    std::vector<double> gamma_up_;
    std::vector<Sesqui> P_, P_cont_;
};

std::vector<double> float_mode_eval(const FloatParams& p, std::complex<double> z);

}  // namespace toda
