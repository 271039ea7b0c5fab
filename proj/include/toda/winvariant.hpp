#pragma once

#include "toda/liealg.hpp"
#include "toda/repgen.hpp"

#include <map>
#include <vector>

namespace toda {

// Basis of the full algebra inside a faithful matrix model, graded by the
// principal grading (e_{+-alpha} at +-height(alpha), Cartan at 0), with an
// exact coordinate solver.
class GradedAlgebra {
public:
    LieType lie_type;
    RootSystem rs;
    int mat_dim = 0;
    std::vector<MatQ> basis;   // all e_{-alpha}, then h_i, then all e_{alpha}
    std::vector<int> grading;  // per basis element
    MatQ eps;                  // sum_i e_{-alpha_i}
    MatQ eps_plus;             // sum_i c_i e_{alpha_i}, c_i = 2 sum_j a^{ij}

    int dim() const { return (int)basis.size(); }
    // exact expansion of m in the basis (throws when m is outside the span)
    std::vector<GaussQ> coords(const MatQ& m) const;
    MatQ from_coords(const std::vector<GaussQ>& x) const;

    // filled by graded_algebra()
    std::vector<int> pivot_rows;               // flattened-matrix rows
    std::vector<std::vector<GaussQ>> solver;   // inverse of the pivot submatrix
};

// Classical families and G2 (their standard / 7-dim models are faithful).
GradedAlgebra graded_algebra(const LieType& t);

// Homogeneous basis of the centralizer of eps_plus inside n_+, graded by
// d_j - 1 and canonically normalized (per-grade reduced echelon form with
// pivot coefficient -1), ordered by nondecreasing grading.
struct KostantSlice {
    std::vector<MatQ> s;
    std::vector<int> grading;
    std::vector<std::vector<GaussQ>> root_coords;  // per s_j, coordinates over positive roots
    std::vector<int> pivot;                        // positive-root index of the -1 pivot
};

KostantSlice build_slice(const GradedAlgebra& ga);

using LaurentQ = std::map<long, Rational>;  // z-exponent -> coefficient

struct WInvariant {
    int degree;  // d_j = grading(s_j) + 1
    LaurentQ w;
};

// Drinfeld-Sokolov reduction of d/dz + eps - sum_i phi_i(z) h_i to the slice
// form d/dz + eps + sum_j W_j s_j by a unique unipotent gauge, grade by grade.
std::vector<WInvariant> ds_reduce(const GradedAlgebra& ga, const KostantSlice& slice,
                                  const std::vector<LaurentQ>& phi);

// A1 calibration: with gamma = b - 1, ds_reduce on phi = gamma^1/z must
// reproduce one half of the Schwarzian derivative of f = z^b (both sides
// reported as the coefficient of z^{-2}).
struct SchwarzianCheck {
    Rational w_route;         // from ds_reduce
    Rational half_schwarzian;  // (1 - b^2)/4
};

SchwarzianCheck schwarzian_check(const Rational& b);

}  // namespace toda
