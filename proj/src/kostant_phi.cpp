#include "toda/kostant_phi.hpp"

#include <stdexcept>

namespace toda {

PuiseuxMatrix compute_phi(const MatrixRep& rep, const GammaData& g) {
    int n = (int)rep.gen_lower.size();
    if ((int)g.gamma.size() != n) throw std::invalid_argument("gamma rank mismatch");
    int d = rep.dim;

    // zeta = sum_i z^{gamma_i} rho(e_{-alpha_i})
    PuiseuxMatrix zeta(d);
    for (int i = 0; i < n; i++) {
        const MatQ& f = rep.gen_lower[i];
        for (int r = 0; r < d; r++)
            for (int c = 0; c < d; c++)
                if (!f.at(r, c).is_zero()) zeta.at(r, c).add_term(g.gamma[i], f.at(r, c));
    }

    // Picard: Phi <- Id + int_0^z Phi * zeta; stabilizes within the
    // nilpotency depth of rho(n).  All integrands have exponent > -1 because
    // partial sums of the mu_i are positive.
    PuiseuxMatrix phi = PuiseuxMatrix::identity(d);
    for (int iter = 0; iter <= d + 1; iter++) {
        PuiseuxMatrix next = PuiseuxMatrix::identity(d) + (phi * zeta).integrate();
        if (next == phi) return phi;
        phi = next;
    }
    throw std::logic_error("Picard iteration failed to stabilize");
}

PuiseuxMatrix continue_around_origin(const PuiseuxMatrix& m) {
    return m.continued_around_origin();
}

std::vector<Rational> t_gamma(const MatrixRep& rep, const GammaData& g) {
    std::vector<Rational> phases;
    phases.reserve(rep.dim);
    for (int v = 0; v < rep.dim; v++) {
        Rational th(0);
        for (size_t i = 0; i < g.mu.size(); i++) th -= Rational(rep.drops[v][i]) * g.mu[i];
        // reduce mod 1 into [0,1)
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), th.get_num().get_mpz_t(), th.get_den().get_mpz_t());
        th -= Rational(q);
        th.canonicalize();
        phases.push_back(th);
    }
    return phases;
}

}  // namespace toda
