#pragma once

#include "toda/liealg.hpp"
#include "toda/puiseux.hpp"
#include "toda/repgen.hpp"

namespace toda {

// The unique solution of Phi^{-1} Phi_z = sum_i z^{gamma_i} rho(e_{-alpha_i})
// with Phi(0) = Id, as an exact Puiseux-polynomial matrix.  Computed by
// Picard iteration, which terminates because the lowering operators are
// nilpotent.
PuiseuxMatrix compute_phi(const MatrixRep& rep, const GammaData& g);

// z -> z e^{-2 pi i}: every monomial picks up the exact root of unity
// e^{-2 pi i p}, carried as a rational phase.
PuiseuxMatrix continue_around_origin(const PuiseuxMatrix& m);

// t_Gamma = exp(2 pi i w_0) acting diagonally on the weight basis; entry v is
// e^{2 pi i theta_v} with theta_v = -<omega - beta_v, w_0> = -sum_i m_i mu_i
// reduced mod 1 (exact for rational gamma).  Ad_{t_Gamma} scales the
// (-alpha)-root space by e^{-2 pi i alpha_Gamma}.
std::vector<Rational> t_gamma(const MatrixRep& rep, const GammaData& g);

}  // namespace toda
