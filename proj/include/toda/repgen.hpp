#pragma once

#include "toda/liealg.hpp"
#include "toda/rational.hpp"

#include <complex>
#include <string>
#include <vector>

namespace toda {

// Dense square matrix over Q(i).
class MatQ {
public:
    MatQ() : n_(0) {}
    explicit MatQ(int n) : n_(n), a_(n * n) {}
    static MatQ identity(int n);
    static MatQ unit(int n, int r, int c, GaussQ v = GaussQ(1));  // v * E_{rc}

    int dim() const { return n_; }
    GaussQ& at(int r, int c) { return a_[r * n_ + c]; }
    const GaussQ& at(int r, int c) const { return a_[r * n_ + c]; }

    bool is_zero() const;
    MatQ conj_transpose() const;
    MatQ scaled(const GaussQ& s) const;

    friend MatQ operator+(const MatQ& x, const MatQ& y);
    friend MatQ operator-(const MatQ& x, const MatQ& y);
    friend MatQ operator*(const MatQ& x, const MatQ& y);
    friend bool operator==(const MatQ& x, const MatQ& y) { return x.n_ == y.n_ && x.a_ == y.a_; }

    std::vector<std::complex<double>> to_complex() const;

private:
    int n_;
    std::vector<GaussQ> a_;
};

inline MatQ comm(const MatQ& x, const MatQ& y) { return x * y - y * x; }

// Generators of a fundamental-weight-bearing representation in a unitary
// weight basis, ordered so that all rho(e_{-alpha}) are strictly lower
// triangular and the highest weight vector sits first.
struct MatrixRep {
    LieType lie_type;
    int dim = 0;
    std::vector<MatQ> gen_lower;   // rho(e_{-alpha_i})
    std::vector<MatQ> gen_upper;   // rho(e_{alpha_i})
    std::vector<MatQ> gen_cartan;  // rho(h_{alpha_i}), diagonal
    std::vector<std::vector<Rational>> weights;  // beta_v(h_{alpha_i}) per basis vector
    std::vector<RootCoords> drops;               // omega - beta_v in simple-root coordinates
    int hw_index = 0;

    std::string to_json() const;
};

MatrixRep standard_rep(const LieType& t);  // A/B/C/D

enum class SpinKind { spin, half_plus, half_minus };

// B_n spin (dim 2^n) or D_n half-spins (dim 2^{n-1}); half_plus carries
// highest weight omega_n, half_minus carries omega_{n-1}.
MatrixRep spin_rep(const LieType& t, SpinKind which);

MatrixRep g2_rep();  // the 7-dimensional fundamental representation

// rho(e_{-alpha}) for alpha a positive root, via the recursion
// e_{-alpha} = [e_{-alpha_i}, e_{-beta}] with i the smallest index such that
// beta = alpha - alpha_i is again a positive root.
MatQ nonsimple_root_vector(const MatrixRep& rep, const RootSystem& rs, const RootCoords& alpha);
// Same recursion on the raising side: e_{alpha} = [e_{alpha_i}, e_{beta}].
MatQ nonsimple_root_vector_upper(const MatrixRep& rep, const RootSystem& rs, const RootCoords& alpha);

// How to evaluate the highest matrix coefficient <i|g|i> of the i-th
// fundamental representation (i is 1-based).
enum class CoeffKind {
    minor,  // leading principal i x i minor of `rep` (standard or G2 7-dim)
    rep     // highest-weight column norm in the explicit `rep`
};

struct CoeffStrategy {
    CoeffKind kind;
    int minor_order = 0;  // for CoeffKind::minor
    MatrixRep rep;
};

CoeffStrategy highest_coeff_rep(const LieType& t, int i);

}  // namespace toda
