#include "toda/solution.hpp"

#include <json.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace toda {

namespace {

constexpr double kTwoPi = 6.283185307179586476925;

using CMat = std::vector<std::complex<double>>;  // row-major square

CMat cmat_identity(int d) {
    CMat m(d * d, 0.0);
    for (int i = 0; i < d; i++) m[i * d + i] = 1.0;
    return m;
}

CMat cmat_mul(const CMat& a, const CMat& b, int d) {
    CMat r(d * d, 0.0);
    for (int i = 0; i < d; i++)
        for (int k = 0; k < d; k++) {
            std::complex<double> v = a[i * d + k];
            if (v == 0.0) continue;
            for (int j = 0; j < d; j++) r[i * d + j] += v * b[k * d + j];
        }
    return r;
}

CMat cmat_exp_nilpotent(const CMat& x, int d) {
    CMat sum = cmat_identity(d);
    CMat pw = cmat_identity(d);
    double fact = 1.0;
    for (int k = 1; k <= d; k++) {
        pw = cmat_mul(pw, x, d);
        bool zero = true;
        for (const auto& v : pw)
            if (v != 0.0) { zero = false; break; }
        if (zero) break;
        fact *= k;
        for (int i = 0; i < d * d; i++) sum[i] += pw[i] / fact;
    }
    return sum;
}

// polynomial in z alone: rational exponent -> complex coefficient (phases
// from analytic continuation folded into the coefficient)
using FPoly = std::map<Rational, std::complex<double>>;

FPoly fpoly_from_puiseux(const PuiseuxPoly& p) {
    FPoly f;
    for (const auto& [exp, term] : p.terms()) {
        std::complex<double> c = term.coeff.to_complex();
        if (term.phase != 0) {
            double a = kTwoPi * term.phase.get_d();
            c *= std::complex<double>(std::cos(a), std::sin(a));
        }
        if (c != 0.0) f[exp] += c;
    }
    return f;
}

void fpoly_axpy(FPoly& acc, std::complex<double> s, const FPoly& f) {
    if (s == 0.0) return;
    for (const auto& [e, c] : f) acc[e] += s * c;
}

FPoly fpoly_mul(const FPoly& a, const FPoly& b) {
    FPoly r;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) r[ea + eb] += ca * cb;
    return r;
}

// determinant of a k x k FPoly matrix by Laplace expansion along the first
// column (k stays small: the minor orders of the tested types)
FPoly fpoly_det(const std::vector<FPoly>& m, int k) {
    if (k == 1) return m[0];
    FPoly det;
    for (int r = 0; r < k; r++) {
        if (m[r * k].empty()) continue;
        std::vector<FPoly> sub;
        sub.reserve((k - 1) * (k - 1));
        for (int rr = 0; rr < k; rr++) {
            if (rr == r) continue;
            for (int cc = 1; cc < k; cc++) sub.push_back(m[rr * k + cc]);
        }
        FPoly cof = fpoly_mul(m[r * k], fpoly_det(sub, k - 1));
        double sgn = (r % 2 == 0) ? 1.0 : -1.0;
        for (const auto& [e, c] : cof) det[e] += sgn * c;
    }
    // drop numerically dead terms produced by cancellation
    for (auto it = det.begin(); it != det.end();) {
        if (std::abs(it->second) < 1e-300)
            it = det.erase(it);
        else
            ++it;
    }
    return det;
}

void accumulate_norm2(SesquiPoly& P, const FPoly& f) {
    for (const auto& [p, cp] : f)
        for (const auto& [q, cq] : f) P.add_term(p, q, cp * std::conj(cq));
}

MatQ lower_root_vector(const MatrixRep& rep, const RootSystem& rs, int root_idx) {
    if (rs.heights[root_idx] == 1) {
        const RootCoords& m = rs.positive_roots[root_idx];
        for (int i = 0; i < rs.rank(); i++)
            if (m[i] == 1) return rep.gen_lower[i];
    }
    return nonsimple_root_vector(rep, rs, rs.positive_roots[root_idx]);
}

}  // namespace

void SesquiPoly::add_term(const Rational& p, const Rational& q, std::complex<double> c) {
    if (c == 0.0) return;
    auto key = std::make_pair(p, q);
    auto it = terms_.find(key);
    if (it == terms_.end())
        terms_.emplace(key, c);
    else {
        it->second += c;
        if (std::abs(it->second) < 1e-300) terms_.erase(it);
    }
}

SesquiPoly SesquiPoly::dz() const {
    SesquiPoly r;
    for (const auto& [k, c] : terms_) {
        if (k.first == 0) continue;
        r.add_term(k.first - 1, k.second, c * k.first.get_d());
    }
    return r;
}

SesquiPoly SesquiPoly::dzbar() const {
    SesquiPoly r;
    for (const auto& [k, c] : terms_) {
        if (k.second == 0) continue;
        r.add_term(k.first, k.second - 1, c * k.second.get_d());
    }
    return r;
}

std::complex<double> SesquiPoly::eval(std::complex<double> z) const {
    std::complex<double> logz = std::log(z);
    std::complex<double> logzbar = std::conj(logz);
    std::complex<double> sum = 0;
    for (const auto& [k, c] : terms_)
        sum += c * std::exp(k.first.get_d() * logz + k.second.get_d() * logzbar);
    return sum;
}

double SesquiPoly::eval_log(double r, double theta) const {
    if (terms_.empty()) return -std::numeric_limits<double>::infinity();
    double logr = std::log(r);
    // factor out the dominant power of r to keep the sum in range
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& [k, c] : terms_) {
        double tot = (k.first.get_d() + k.second.get_d()) * logr;
        m = std::max(m, tot);
    }
    std::complex<double> sum = 0;
    for (const auto& [k, c] : terms_) {
        double p = k.first.get_d(), q = k.second.get_d();
        double mag = (p + q) * logr - m;
        double ang = (p - q) * theta;
        sum += c * std::exp(mag) * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    double re = sum.real();
    if (!(re > 0)) re = std::abs(sum) + 1e-300;
    return m + std::log(re);
}

SolutionParams SolutionParams::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    SolutionParams p;
    p.lie_type = LieType::parse(j.at("type").get<std::string>());
    for (const auto& g : j.at("gamma")) {
        if (g.is_string())
            p.gamma.push_back(parse_rational(g.get<std::string>()));
        else
            p.gamma.push_back(Rational((long)g.get<long long>()));
    }
    if ((int)p.gamma.size() != p.lie_type.rank)
        throw std::invalid_argument("gamma length does not match rank");
    if (j.contains("lambda"))
        for (const auto& l : j.at("lambda")) p.lambda.push_back(l.get<double>());
    else
        p.lambda.assign(p.lie_type.rank, 1.0);
    if ((int)p.lambda.size() != p.lie_type.rank)
        throw std::invalid_argument("lambda length does not match rank");
    for (double l : p.lambda)
        if (!(l > 0)) throw std::invalid_argument("lambda entries must be positive");
    if (j.contains("c")) {
        for (auto it = j.at("c").begin(); it != j.at("c").end(); ++it) {
            RootCoords m = parse_root_coords(it.key());
            const auto& v = it.value();
            p.c[m] = std::complex<double>(v.at(0).get<double>(), v.at(1).get<double>());
        }
    }
    return p;
}

std::string SolutionParams::to_json() const {
    nlohmann::json j;
    j["type"] = lie_type.str();
    for (const auto& g : gamma) j["gamma"].push_back(g.get_str());
    for (double l : lambda) j["lambda"].push_back(l);
    j["c"] = nlohmann::json::object();
    for (const auto& [m, v] : c) j["c"][root_coords_key(m)] = {v.real(), v.imag()};
    return j.dump();
}

std::vector<std::complex<double>> c_matrix(const MatrixRep& rep, const RootSystem& rs,
                                           const std::map<RootCoords, std::complex<double>>& c) {
    int d = rep.dim;
    CMat prod = cmat_identity(d);
    for (size_t k = 0; k < rs.positive_roots.size(); k++) {
        auto it = c.find(rs.positive_roots[k]);
        if (it == c.end() || it->second == 0.0) continue;
        MatQ f = lower_root_vector(rep, rs, (int)k);
        CMat x = f.to_complex();
        for (auto& v : x) v *= it->second;
        prod = cmat_mul(prod, cmat_exp_nilpotent(x, d), d);
    }
    return prod;
}

std::map<RootCoords, std::complex<double>> product_coords_from_matrix(
    const MatrixRep& rep, const RootSystem& rs, const std::vector<std::complex<double>>& mat) {
    int d = rep.dim;
    int n = rs.rank();
    std::vector<int> vheight(d);
    for (int v = 0; v < d; v++) {
        int h = 0;
        for (int x : rep.drops[v]) h += x;
        vheight[v] = h;
    }
    int max_h = *std::max_element(rs.heights.begin(), rs.heights.end());

    std::map<RootCoords, std::complex<double>> coords;
    CMat acc = cmat_identity(d);
    for (int h = 1; h <= max_h; h++) {
        // Z = acc^{-1} * mat; invert the unipotent acc via exp(-log) — cheaper:
        // solve by forward substitution since acc is unipotent lower triangular
        // in the height-ordered basis.  Here we just use Eigen.
        Eigen::MatrixXcd A(d, d), M(d, d);
        for (int r = 0; r < d; r++)
            for (int cc = 0; cc < d; cc++) {
                A(r, cc) = acc[r * d + cc];
                M(r, cc) = mat[r * d + cc];
            }
        Eigen::MatrixXcd Z = A.partialPivLu().solve(M);

        // roots of this height with nonvanishing image
        std::vector<int> idx;
        std::vector<CMat> fmats;
        for (size_t k = 0; k < rs.positive_roots.size(); k++) {
            if (rs.heights[k] != h) continue;
            MatQ f = lower_root_vector(rep, rs, (int)k);
            if (f.is_zero()) continue;
            idx.push_back((int)k);
            fmats.push_back(f.to_complex());
        }
        if (idx.empty()) continue;

        // pick out the grade-h entries of Z - I and solve the linear system
        std::vector<std::pair<int, int>> cells;
        for (int r = 0; r < d; r++)
            for (int cc = 0; cc < d; cc++)
                if (vheight[r] - vheight[cc] == h) cells.emplace_back(r, cc);
        Eigen::MatrixXcd B((int)cells.size(), (int)idx.size());
        Eigen::VectorXcd y((int)cells.size());
        for (size_t row = 0; row < cells.size(); row++) {
            auto [r, cc] = cells[row];
            y((int)row) = Z(r, cc) - (r == cc ? 1.0 : 0.0);
            for (size_t col = 0; col < idx.size(); col++)
                B((int)row, (int)col) = fmats[col][r * d + cc];
        }
        Eigen::VectorXcd x = B.colPivHouseholderQr().solve(y);

        CMat step = cmat_identity(d);
        for (size_t col = 0; col < idx.size(); col++) {
            std::complex<double> cv = x((int)col);
            if (std::abs(cv) < 1e-13) continue;
            coords[rs.positive_roots[idx[col]]] = cv;
            CMat f = fmats[col];
            for (auto& v : f) v *= cv;
            step = cmat_mul(step, cmat_exp_nilpotent(f, d), d);
        }
        acc = cmat_mul(acc, step, d);
    }
    (void)n;
    return coords;
}

bool in_n_gamma(const SolutionParams& p) {
    RootSystem rs = root_system(p.lie_type);
    GammaData g = gamma_data(rs, p.gamma);
    std::set<RootCoords> dg;
    for (int k : delta_gamma(rs, g)) dg.insert(rs.positive_roots[k]);
    for (const auto& [m, v] : p.c)
        if (v != 0.0 && !dg.count(m)) return false;
    return true;
}

bool Solution::in_n_gamma() const { return toda::in_n_gamma(params_); }

Solution::Solution(SolutionParams params)
    : params_(std::move(params)), rs_(root_system(params_.lie_type)) {
    gdata_ = gamma_data(rs_, params_.gamma);
    int n = rs_.rank();
    if ((int)params_.lambda.size() != n) {
        if (params_.lambda.empty())
            params_.lambda.assign(n, 1.0);
        else
            throw std::invalid_argument("lambda length does not match rank");
    }

    // reuse Phi and the C matrix across indices sharing a representation
    struct RepCtx {
        MatrixRep rep;
        PuiseuxMatrix phi, phi_cont;
        CMat lc;  // Lambda * C
    };
    std::map<std::string, RepCtx> cache;
    auto get_ctx = [&](const CoeffStrategy& s, const std::string& key) -> RepCtx& {
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        RepCtx ctx;
        ctx.rep = s.rep;
        ctx.phi = compute_phi(ctx.rep, gdata_);
        ctx.phi_cont = ctx.phi.continued_around_origin();
        CMat cm = c_matrix(ctx.rep, rs_, params_.c);
        int d = ctx.rep.dim;
        ctx.lc = cm;
        for (int r = 0; r < d; r++) {
            double lam = 1.0;
            for (int k = 0; k < n; k++)
                lam *= std::pow(params_.lambda[k], ctx.rep.weights[r][k].get_d());
            for (int cc = 0; cc < d; cc++) ctx.lc[r * d + cc] *= lam;
        }
        return cache.emplace(key, std::move(ctx)).first->second;
    };

    auto build = [&](const RepCtx& ctx, const CoeffStrategy& s, bool continued) {
        const PuiseuxMatrix& phi = continued ? ctx.phi_cont : ctx.phi;
        int d = ctx.rep.dim;
        int k = (s.kind == CoeffKind::minor) ? s.minor_order : 1;
        // X = Lambda C Phi, columns 0..k-1 (hw column is 0 for rep strategy)
        std::vector<FPoly> X(d * k);
        for (int cc = 0; cc < k; cc++)
            for (int kk = 0; kk < d; kk++) {
                const PuiseuxPoly& e = phi.at(kk, cc);
                if (e.is_zero()) continue;
                FPoly f = fpoly_from_puiseux(e);
                for (int r = 0; r < d; r++) fpoly_axpy(X[r * k + cc], ctx.lc[r * d + kk], f);
            }
        SesquiPoly P;
        if (s.kind == CoeffKind::rep) {
            for (int r = 0; r < d; r++) accumulate_norm2(P, X[r * k]);
            return P;
        }
        // sum over row subsets S of |det X[S, 0..k-1]|^2 (Cauchy-Binet form
        // of the highest coefficient in the i-th fundamental rep)
        std::vector<int> S(k);
        for (int i = 0; i < k; i++) S[i] = i;
        while (true) {
            std::vector<FPoly> sub(k * k);
            for (int r = 0; r < k; r++)
                for (int cc = 0; cc < k; cc++) sub[r * k + cc] = X[S[r] * k + cc];
            accumulate_norm2(P, fpoly_det(sub, k));
            int pos = k - 1;
            while (pos >= 0 && S[pos] == d - k + pos) pos--;
            if (pos < 0) break;
            S[pos]++;
            for (int i = pos + 1; i < k; i++) S[i] = S[i - 1] + 1;
        }
        return P;
    };

    for (int i = 1; i <= n; i++) {
        CoeffStrategy s = highest_coeff_rep(params_.lie_type, i);
        std::string key = (s.kind == CoeffKind::minor) ? "minor" : ("rep" + std::to_string(i));
        RepCtx& ctx = get_ctx(s, key);
        P_.push_back(build(ctx, s, false));
        P_continued_.push_back(build(ctx, s, true));
    }
}

std::vector<double> Solution::eval_U(std::complex<double> z) const {
    double r = std::abs(z), th = std::arg(z);
    std::vector<double> U(rank());
    for (int i = 0; i < rank(); i++)
        U[i] = -P_[i].eval_log(r, th) + 2.0 * gdata_.gamma_up[i].get_d() * std::log(r);
    return U;
}

std::vector<double> Solution::eval_u(std::complex<double> z) const {
    std::vector<double> U = eval_U(z);
    std::vector<double> u(rank(), 0.0);
    for (int i = 0; i < rank(); i++)
        for (int j = 0; j < rank(); j++) u[i] += (double)rs_.cartan[i][j] * U[j];
    return u;
}

std::vector<double> Solution::eval_eu(std::complex<double> z) const {
    std::vector<double> u = eval_u(z);
    for (auto& v : u) v = std::exp(v);
    return u;
}

std::vector<double> Solution::eval_log_eu(double r, double theta) const {
    std::vector<double> U(rank());
    for (int i = 0; i < rank(); i++)
        U[i] = -P_[i].eval_log(r, theta) + 2.0 * gdata_.gamma_up[i].get_d() * std::log(r);
    std::vector<double> u(rank(), 0.0);
    for (int i = 0; i < rank(); i++)
        for (int j = 0; j < rank(); j++) u[i] += (double)rs_.cartan[i][j] * U[j];
    return u;
}

std::vector<double> Solution::monodromy_defect(const std::vector<std::complex<double>>& zs) const {
    std::vector<double> defect(rank(), 0.0);
    for (const auto& z : zs) {
        double r = std::abs(z), th = std::arg(z);
        for (int i = 0; i < rank(); i++) {
            double d = std::abs(P_continued_[i].eval_log(r, th) - P_[i].eval_log(r, th));
            defect[i] = std::max(defect[i], d);
        }
    }
    return defect;
}

}  // namespace toda
