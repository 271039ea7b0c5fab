#include "toda/repgen.hpp"

#include <json.hpp>

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace toda {

MatQ MatQ::identity(int n) {
    MatQ m(n);
    for (int i = 0; i < n; i++) m.at(i, i) = GaussQ(1);
    return m;
}

MatQ MatQ::unit(int n, int r, int c, GaussQ v) {
    MatQ m(n);
    m.at(r, c) = std::move(v);
    return m;
}

bool MatQ::is_zero() const {
    for (const auto& v : a_)
        if (!v.is_zero()) return false;
    return true;
}

MatQ MatQ::conj_transpose() const {
    MatQ m(n_);
    for (int r = 0; r < n_; r++)
        for (int c = 0; c < n_; c++) m.at(c, r) = at(r, c).conj();
    return m;
}

MatQ MatQ::scaled(const GaussQ& s) const {
    MatQ m(n_);
    for (int i = 0; i < n_ * n_; i++) m.a_[i] = s * a_[i];
    return m;
}

MatQ operator+(const MatQ& x, const MatQ& y) {
    MatQ m(x.n_);
    for (int i = 0; i < x.n_ * x.n_; i++) m.a_[i] = x.a_[i] + y.a_[i];
    return m;
}

MatQ operator-(const MatQ& x, const MatQ& y) {
    MatQ m(x.n_);
    for (int i = 0; i < x.n_ * x.n_; i++) m.a_[i] = x.a_[i] - y.a_[i];
    return m;
}

MatQ operator*(const MatQ& x, const MatQ& y) {
    MatQ m(x.n_);
    for (int r = 0; r < x.n_; r++)
        for (int k = 0; k < x.n_; k++) {
            const GaussQ& v = x.at(r, k);
            if (v.is_zero()) continue;
            for (int c = 0; c < x.n_; c++) {
                const GaussQ& w = y.at(k, c);
                if (w.is_zero()) continue;
                m.at(r, c) += v * w;
            }
        }
    return m;
}

std::vector<std::complex<double>> MatQ::to_complex() const {
    std::vector<std::complex<double>> out(n_ * n_);
    for (int i = 0; i < n_ * n_; i++) out[i] = a_[i].to_complex();
    return out;
}

namespace {

// Given generators in an arbitrary basis order (with diagonal h's), read off
// weights and root-lattice drops, then permute the basis so that drops are
// height-ascending with the highest weight vector first.  This makes every
// rho(e_{-alpha_i}) strictly lower triangular.
MatrixRep finalize_rep(const LieType& t, std::vector<MatQ> es, std::vector<MatQ> fs,
                       std::vector<MatQ> hs) {
    int n = t.rank;
    int d = es[0].dim();
    std::vector<std::vector<Rational>> weights(d, std::vector<Rational>(n));
    for (int v = 0; v < d; v++)
        for (int i = 0; i < n; i++) {
            if (!hs[i].at(v, v).is_real()) throw std::logic_error("non-real weight");
            weights[v][i] = hs[i].at(v, v).re;
        }

    // highest weight vector: the unique one killed by every raising operator
    int hw = -1;
    for (int v = 0; v < d; v++) {
        bool killed = true;
        for (int i = 0; i < n && killed; i++)
            for (int r = 0; r < d; r++)
                if (!es[i].at(r, v).is_zero()) { killed = false; break; }
        if (killed) {
            if (hw >= 0) throw std::logic_error("representation is not irreducible");
            hw = v;
        }
    }
    if (hw < 0) throw std::logic_error("no highest weight vector found");

    // drops m solve sum_i m_i a_{ij} = omega(h_j) - beta_v(h_j)
    auto a = cartan_matrix(t);
    auto inv = root_system(t).inv_cartan;  // a^{ij}
    std::vector<RootCoords> drops(d);
    for (int v = 0; v < d; v++) {
        RootCoords m(n);
        for (int i = 0; i < n; i++) {
            Rational s(0);
            for (int j = 0; j < n; j++) s += inv[j][i] * (weights[hw][j] - weights[v][j]);
            if (s.get_den() != 1 || s < 0) throw std::logic_error("drop is not a nonneg integer");
            m[i] = (int)s.get_num().get_si();
        }
        drops[v] = m;
    }

    std::vector<int> perm(d);
    std::iota(perm.begin(), perm.end(), 0);
    auto height = [&](int v) {
        int h = 0;
        for (int x : drops[v]) h += x;
        return h;
    };
    std::stable_sort(perm.begin(), perm.end(), [&](int x, int y) {
        int hx = height(x), hy = height(y);
        if (hx != hy) return hx < hy;
        return drops[x] > drops[y];  // same tie-break as the positive-root order
    });

    auto apply = [&](const MatQ& m) {
        MatQ out(d);
        for (int r = 0; r < d; r++)
            for (int c = 0; c < d; c++) out.at(r, c) = m.at(perm[r], perm[c]);
        return out;
    };

    MatrixRep rep;
    rep.lie_type = t;
    rep.dim = d;
    for (int i = 0; i < n; i++) {
        rep.gen_upper.push_back(apply(es[i]));
        rep.gen_lower.push_back(apply(fs[i]));
        rep.gen_cartan.push_back(apply(hs[i]));
    }
    for (int v = 0; v < d; v++) {
        rep.weights.push_back(weights[perm[v]]);
        rep.drops.push_back(drops[perm[v]]);
    }
    rep.hw_index = 0;
    if (perm[0] != hw) throw std::logic_error("highest weight vector failed to sort first");
    return rep;
}

}  // namespace

MatrixRep standard_rep(const LieType& t) {
    validate(t);
    int n = t.rank;
    std::vector<MatQ> es;
    switch (t.family) {
        case Family::A: {
            int d = n + 1;
            for (int i = 0; i < n; i++) es.push_back(MatQ::unit(d, i, i + 1));
            break;
        }
        case Family::B: {
            int d = 2 * n + 1;
            for (int i = 1; i < n; i++)
                es.push_back(MatQ::unit(d, i - 1, i) - MatQ::unit(d, d - i - 1, d - i));
            es.push_back((MatQ::unit(d, n - 1, n) - MatQ::unit(d, n, n + 1)).scaled(GaussQ(1, 1)));
            break;
        }
        case Family::C: {
            int d = 2 * n;
            for (int i = 1; i < n; i++)
                es.push_back(MatQ::unit(d, i - 1, i) - MatQ::unit(d, d - i - 1, d - i));
            es.push_back(MatQ::unit(d, n - 1, n));
            break;
        }
        case Family::D: {
            int d = 2 * n;
            for (int i = 1; i < n; i++)
                es.push_back(MatQ::unit(d, i - 1, i) - MatQ::unit(d, d - i - 1, d - i));
            es.push_back(MatQ::unit(d, n - 2, n) - MatQ::unit(d, n - 1, n + 1));
            break;
        }
        default:
            throw std::invalid_argument("standard_rep: classical type required, got " + t.str());
    }
    std::vector<MatQ> fs, hs;
    for (const auto& e : es) fs.push_back(e.conj_transpose());
    for (int i = 0; i < n; i++) hs.push_back(comm(es[i], fs[i]));
    return finalize_rep(t, std::move(es), std::move(fs), std::move(hs));
}

namespace {

// Jordan-Wigner annihilation operators on n fermionic modes, dim 2^n; basis
// index b has mode k occupied when bit k is set.
std::vector<MatQ> fermion_ops(int n) {
    int d = 1 << n;
    std::vector<MatQ> psis;
    for (int k = 0; k < n; k++) {
        MatQ m(d);
        for (int b = 0; b < d; b++) {
            if (!(b & (1 << k))) continue;
            int b2 = b & ~(1 << k);
            int below = __builtin_popcount(b & ((1 << k) - 1));
            m.at(b2, b) = GaussQ(below % 2 ? -1 : 1);
        }
        psis.push_back(m);
    }
    return psis;
}

}  // namespace

MatrixRep spin_rep(const LieType& t, SpinKind which) {
    validate(t);
    int n = t.rank;
    if (t.family == Family::B && which != SpinKind::spin)
        throw std::invalid_argument("B_n has a single spin representation");
    if (t.family == Family::D && which == SpinKind::spin)
        throw std::invalid_argument("D_n has two half-spin representations");
    if (t.family != Family::B && t.family != Family::D)
        throw std::invalid_argument("spin_rep: B or D family required, got " + t.str());

    auto psis = fermion_ops(n);
    std::vector<MatQ> es;
    for (int i = 0; i + 1 < n; i++) es.push_back(psis[i].conj_transpose() * psis[i + 1]);
    if (t.family == Family::B)
        es.push_back(psis[n - 1].conj_transpose());
    else
        es.push_back(psis[n - 2].conj_transpose() * psis[n - 1].conj_transpose());
    std::vector<MatQ> fs, hs;
    for (const auto& e : es) fs.push_back(e.conj_transpose());
    for (int i = 0; i < n; i++) hs.push_back(comm(es[i], fs[i]));

    if (t.family == Family::B) return finalize_rep(t, std::move(es), std::move(fs), std::move(hs));

    // D_n: the Fock space splits by fermion parity into the two half-spins.
    // omega_n lives where the fully occupied state sits (parity n mod 2),
    // omega_{n-1} on the opposite parity.
    int want_parity = (which == SpinKind::half_plus) ? n % 2 : (n - 1) % 2;
    std::vector<int> idx;
    for (int b = 0; b < (1 << n); b++)
        if (__builtin_popcount(b) % 2 == want_parity) idx.push_back(b);
    auto restrict_to = [&](const MatQ& m) {
        MatQ out((int)idx.size());
        for (size_t r = 0; r < idx.size(); r++)
            for (size_t c = 0; c < idx.size(); c++) out.at((int)r, (int)c) = m.at(idx[r], idx[c]);
        return out;
    };
    std::vector<MatQ> es2, fs2, hs2;
    for (int i = 0; i < n; i++) {
        es2.push_back(restrict_to(es[i]));
        fs2.push_back(restrict_to(fs[i]));
        hs2.push_back(restrict_to(hs[i]));
    }
    return finalize_rep(t, std::move(es2), std::move(fs2), std::move(hs2));
}

MatrixRep g2_rep() {
    int d = 7;
    MatQ f1(d), f2(d);
    GaussQ one(1), opi(1, 1);  // 1 and 1+i (|1+i|^2 = 2 stands in for sqrt(2)^2)
    f1.at(1, 0) = one;
    f1.at(3, 2) = opi;
    f1.at(4, 3) = opi;
    f1.at(6, 5) = one;
    f2.at(2, 1) = one;
    f2.at(5, 4) = one;
    std::vector<MatQ> fs = {f1, f2};
    std::vector<MatQ> es = {f1.conj_transpose(), f2.conj_transpose()};
    std::vector<MatQ> hs = {comm(es[0], fs[0]), comm(es[1], fs[1])};
    return finalize_rep(LieType{Family::G, 2}, std::move(es), std::move(fs), std::move(hs));
}

namespace {

MatQ root_vector_impl(const std::vector<MatQ>& simple, const RootSystem& rs,
                      const RootCoords& alpha) {
    int n = rs.rank();
    int h = 0;
    for (int x : alpha) h += x;
    if (h == 1) {
        for (int i = 0; i < n; i++)
            if (alpha[i] == 1) return simple[i];
    }
    for (int i = 0; i < n; i++) {
        if (alpha[i] == 0) continue;
        RootCoords beta = alpha;
        beta[i] -= 1;
        if (rs.root_index(beta) < 0) continue;
        return comm(simple[i], root_vector_impl(simple, rs, beta));
    }
    throw std::logic_error("root vector recursion failed");
}

}  // namespace

MatQ nonsimple_root_vector(const MatrixRep& rep, const RootSystem& rs, const RootCoords& alpha) {
    int k = rs.root_index(alpha);
    if (k < 0) throw std::invalid_argument("not a positive root: " + root_coords_key(alpha));
    if (rs.heights[k] == 1)
        throw std::invalid_argument("simple root rejected: " + root_coords_key(alpha));
    return root_vector_impl(rep.gen_lower, rs, alpha);
}

MatQ nonsimple_root_vector_upper(const MatrixRep& rep, const RootSystem& rs,
                                 const RootCoords& alpha) {
    int k = rs.root_index(alpha);
    if (k < 0) throw std::invalid_argument("not a positive root: " + root_coords_key(alpha));
    if (rs.heights[k] == 1)
        throw std::invalid_argument("simple root rejected: " + root_coords_key(alpha));
    return root_vector_impl(rep.gen_upper, rs, alpha);
}

CoeffStrategy highest_coeff_rep(const LieType& t, int i) {
    validate(t);
    int n = t.rank;
    if (i < 1 || i > n) throw std::invalid_argument("fundamental index out of range");
    CoeffStrategy s;
    switch (t.family) {
        case Family::A:
        case Family::C:
            s.kind = CoeffKind::minor;
            s.minor_order = i;
            s.rep = standard_rep(t);
            return s;
        case Family::B:
            if (i < n) {
                s.kind = CoeffKind::minor;
                s.minor_order = i;
                s.rep = standard_rep(t);
            } else {
                s.kind = CoeffKind::rep;
                s.rep = spin_rep(t, SpinKind::spin);
            }
            return s;
        case Family::D:
            if (i <= n - 2) {
                s.kind = CoeffKind::minor;
                s.minor_order = i;
                s.rep = standard_rep(t);
            } else {
                s.kind = CoeffKind::rep;
                s.rep = spin_rep(t, i == n - 1 ? SpinKind::half_minus : SpinKind::half_plus);
            }
            return s;
        case Family::G:
            s.kind = CoeffKind::minor;
            s.minor_order = i;
            s.rep = g2_rep();
            return s;
        default:
            throw std::invalid_argument("highest_coeff_rep: unsupported family " + t.str());
    }
}

std::string MatrixRep::to_json() const {
    nlohmann::json j;
    j["type"] = lie_type.str();
    j["dim"] = dim;
    j["hw_index"] = hw_index;
    auto dump_mat = [&](const MatQ& m) {
        nlohmann::json rows = nlohmann::json::array();
        for (int r = 0; r < m.dim(); r++) {
            nlohmann::json row = nlohmann::json::array();
            for (int c = 0; c < m.dim(); c++) {
                const GaussQ& v = m.at(r, c);
                row.push_back({v.re.get_str(), v.im.get_str()});
            }
            rows.push_back(row);
        }
        return rows;
    };
    for (size_t i = 0; i < gen_lower.size(); i++) {
        j["e_lower"].push_back(dump_mat(gen_lower[i]));
        j["e_upper"].push_back(dump_mat(gen_upper[i]));
        j["h"].push_back(dump_mat(gen_cartan[i]));
    }
    for (const auto& w : weights) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto& x : w) row.push_back(x.get_str());
        j["weights"].push_back(row);
    }
    return j.dump();
}

}  // namespace toda
