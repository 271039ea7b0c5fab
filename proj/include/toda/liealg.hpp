#pragma once

#include "toda/rational.hpp"

#include <string>
#include <vector>

namespace toda {

enum class Family { A, B, C, D, G, F, E };

struct LieType {
    Family family;
    int rank;

    std::string str() const;
    static LieType parse(const std::string& s);  // "A3", "D4", "E6", ...
};

char family_letter(Family f);

// Throws std::invalid_argument when the (family, rank) pair is not a simple
// Lie algebra: B,C need rank>=2; D needs rank>=3; G2, F4, E6/E7/E8.
void validate(const LieType& t);

int algebra_dimension(const LieType& t);

using RootCoords = std::vector<int>;  // alpha = sum m_i alpha_i

struct RootSystem {
    LieType lie_type;
    std::vector<std::vector<long>> cartan;        // a_{ij}
    std::vector<std::vector<Rational>> inv_cartan;  // a^{ij}
    std::vector<RootCoords> positive_roots;       // height-then-lex order, simple roots first
    std::vector<int> heights;                     // height of each positive root

    int rank() const { return (int)cartan.size(); }
    int root_index(const RootCoords& m) const;    // -1 when not a positive root
};

std::vector<std::vector<long>> cartan_matrix(const LieType& t);
RootSystem root_system(const LieType& t);

std::vector<int> degrees(const LieType& t);

// Diagram action of -kappa (kappa = longest Weyl element), as a permutation
// of {0..n-1}: identity except A_n reversal, D_odd tail swap, E6 (1 6)(3 5).
std::vector<int> minus_kappa(const LieType& t);

struct GammaData {
    std::vector<Rational> gamma;     // gamma_i > -1
    std::vector<Rational> mu;        // mu_i = gamma_i + 1
    std::vector<Rational> gamma_up;  // gamma^i = sum_j a^{ij} gamma_j

    // alpha_Gamma = sum m_i mu_i, the pairing of a root with w_0
    Rational w0_pairing(const RootCoords& m) const;
};

GammaData gamma_data(const RootSystem& rs, std::vector<Rational> gamma);

// Delta_Gamma = { alpha in Delta^+ : sum m_i mu_i in Z }, as indices into
// rs.positive_roots.
std::vector<int> delta_gamma(const RootSystem& rs, const GammaData& g);

std::string root_coords_key(const RootCoords& m);  // "1,0,1" serialization
RootCoords parse_root_coords(const std::string& s);

}  // namespace toda
