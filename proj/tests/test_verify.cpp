#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "toda/verify.hpp"

#include <atomic>
#include <cmath>
#include <complex>
#include <cstdlib>

using namespace toda;

namespace {

SolutionParams basic(const LieType& t, std::vector<Rational> gamma) {
    SolutionParams p;
    p.lie_type = t;
    p.gamma = std::move(gamma);
    p.lambda.assign(t.rank, 1.0);
    return p;
}

// five-point-stencil Laplacian, an oracle independent of the exact
// derivative formulas inside pde_residual
double fd_laplacian(const std::function<double(std::complex<double>)>& f,
                    std::complex<double> z, double h) {
    return (f(z + h) + f(z - h) + f(z + std::complex<double>(0, h)) +
            f(z - std::complex<double>(0, h)) - 4 * f(z)) /
           (h * h);
}

}  // namespace

TEST_CASE("TODA_ATLAS_THREADS caps the worker count") {
    setenv("TODA_ATLAS_THREADS", "3", 1);
    CHECK(max_threads() == 3);
    unsetenv("TODA_ATLAS_THREADS");
    CHECK(max_threads() >= 1);
}

TEST_CASE("parallel_for visits every index exactly once") {
    std::vector<std::atomic<int>> hits(257);
    parallel_for(257, [&](int i) { hits[i]++; });
    for (auto& h : hits) CHECK(h.load() == 1);
}

TEST_CASE("default residual grid avoids the cut and the origin") {
    auto pts = default_residual_points();
    CHECK(pts.size() == 13u * 8u);
    for (auto z : pts) {
        CHECK(std::abs(z) >= 1e-2 * 0.999);
        CHECK(std::abs(z) <= 1e2 * 1.001);
        bool on_cut = z.real() < 0 && std::abs(z.imag()) < 1e-12;
        CHECK_FALSE(on_cut);
    }
}

TEST_CASE("A1 with gamma = 0 satisfies the PDE to machine precision") {
    Solution s(basic({Family::A, 1}, {Rational(0)}));
    CHECK(pde_residual(s, default_residual_points()) < 1e-12);
}

TEST_CASE("exact residual agrees with a finite-difference Laplacian") {
    SolutionParams p = basic({Family::A, 2}, {Rational(1, 3), Rational(2, 5)});
    p.c[{1, 1}] = {0.3, -0.1};  // any C solves the PDE off the cut
    Solution s(p);
    CHECK(pde_residual(s, default_residual_points()) < 1e-9);

    for (std::complex<double> z : {std::complex<double>(0.9, 0.4), std::complex<double>(-1.2, 2.0)}) {
        for (int i = 0; i < 2; i++) {
            auto Ui = [&](std::complex<double> w) { return s.eval_U(w)[i]; };
            double lap = fd_laplacian(Ui, z, 1e-4);
            double eu = s.eval_eu(z)[i];
            // Delta U_i = 4 U_{i,z zbar} = -4 e^{u_i}
            CHECK(std::abs(lap / 4 + eu) < 1e-5 * (1 + eu));

            // negative control: tilting U by a smooth bump must be caught
            auto bad = [&](std::complex<double> w) { return s.eval_U(w)[i] + 0.05 * std::norm(w); };
            double lap_bad = fd_laplacian(bad, z, 1e-4);
            CHECK(std::abs(lap_bad / 4 + eu) > 1e-3);
        }
    }
}

TEST_CASE("quantization reproduces the total-mass identities") {
    Solution s(basic({Family::A, 2}, {Rational(0), Rational(0)}));
    QuantizationReport rep = quantization(s);
    REQUIRE(rep.combos.size() == 2);
    CHECK(rep.converged);
    for (int i = 0; i < 2; i++) {
        CHECK(rep.targets[i] == doctest::Approx(2 * M_PI).epsilon(1e-12));
        CHECK(rep.rel_errors[i] < 1e-3);
    }

    // refining the quadrature barely moves the answer
    QuadratureOptions fine;
    fine.ntheta = 128;
    fine.abs_tol = 1e-9;
    fine.rel_tol = 1e-7;
    QuantizationReport rep2 = quantization(s, fine);
    for (int i = 0; i < 2; i++)
        CHECK(std::abs(rep.combos[i] - rep2.combos[i]) < 1e-5 * (1 + std::abs(rep2.combos[i])));
}

TEST_CASE("asymptotic slopes match -2(2 + gamma_{sigma(i)})") {
    SolutionParams p = basic({Family::A, 2}, {Rational(1, 3), Rational(2, 5)});
    Solution s(p);
    std::vector<double> radii;
    for (double e = 3.0; e <= 5.01; e += 0.5) radii.push_back(std::pow(10.0, e));
    auto slopes = asymptotic_slope(s, radii);
    auto targets = asymptotic_targets(s);
    // sigma reverses A2: u_1 decays with gamma_2 and vice versa
    CHECK(targets[0] == doctest::Approx(-2 * (2 + 2.0 / 5.0)).epsilon(1e-12));
    CHECK(targets[1] == doctest::Approx(-2 * (2 + 1.0 / 3.0)).epsilon(1e-12));
    for (int i = 0; i < 2; i++) CHECK(std::abs(slopes[i] - targets[i]) < 0.02);
}

TEST_CASE("float mode reproduces the exact pipeline on rational data") {
    SolutionParams p = basic({Family::B, 2}, {Rational(1, 2), Rational(1, 3)});
    p.c[{0, 1}] = {0.4, 0.2};
    Solution s(p);

    FloatParams fp;
    fp.lie_type = p.lie_type;
    fp.gamma = {0.5, 1.0 / 3.0};
    fp.lambda = p.lambda;
    fp.c = p.c;

    for (std::complex<double> z : {std::complex<double>(0.8, 0.3), std::complex<double>(-2.0, 1.5),
                                   std::complex<double>(0.02, 0.07)}) {
        auto exact = s.eval_U(z);
        auto approx = float_mode_eval(fp, z);
        for (int i = 0; i < 2; i++) CHECK(std::abs(exact[i] - approx[i]) < 1e-10);
    }
}

TEST_CASE("float mode handles irrational gamma") {
    FloatParams fp;
    fp.lie_type = {Family::A, 2};
    fp.gamma = {std::sqrt(2.0) - 1.0, 0.25};
    fp.lambda = {1.0, 1.0};
    FloatSolution fs(fp);
    CHECK(fs.pde_residual(default_residual_points(9, 6)) < 1e-7);

    std::vector<std::complex<double>> zs;
    for (int k = 0; k < 8; k++) zs.push_back(std::polar(1.1, -3.0 + 0.8 * k));
    for (double d : fs.monodromy_defect(zs)) CHECK(d < 1e-8);

    // with irrational gamma, any c on a simple root leaves N_Gamma
    fp.c[{1, 0}] = {0.6, 0.0};
    FloatSolution bad(fp);
    double worst = 0;
    for (double d : bad.monodromy_defect(zs)) worst = std::max(worst, d);
    CHECK(worst > 1e-4);
}
