#include "toda/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace toda {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2 * kPi;
}

int max_threads() {
    if (const char* env = std::getenv("TODA_ATLAS_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? (int)hc : 1;
}

void parallel_for(int count, const std::function<void(int)>& fn) {
    int nt = std::min(max_threads(), count);
    if (nt <= 1) {
        for (int i = 0; i < count; i++) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (int t = 0; t < nt; t++)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    for (auto& th : pool) th.join();
}

std::vector<std::complex<double>> default_residual_points(int nr, int ntheta) {
    std::vector<std::complex<double>> pts;
    for (int a = 0; a < ntheta; a++) {
        // stay away from the cut at theta = pi
        double th = -kPi + (a + 0.5) * kTwoPi / ntheta;
        for (int k = 0; k < nr; k++) {
            double logr = -2.0 + 4.0 * k / std::max(1, nr - 1);
            double r = std::pow(10.0, logr);
            pts.push_back(std::polar(r, th));
        }
    }
    return pts;
}

double pde_residual(const Solution& s, const std::vector<std::complex<double>>& pts) {
    int n = s.rank();
    std::vector<SesquiPoly> Pz(n), Pzb(n), Pzzb(n);
    for (int i = 0; i < n; i++) {
        Pz[i] = s.P(i).dz();
        Pzb[i] = s.P(i).dzbar();
        Pzzb[i] = Pz[i].dzbar();
    }
    std::vector<double> worst(pts.size(), 0.0);
    parallel_for((int)pts.size(), [&](int k) {
        std::complex<double> z = pts[k];
        if (z == 0.0) throw std::invalid_argument("residual point at the singularity");
        double logr = std::log(std::abs(z));
        std::vector<double> logP(n);
        std::vector<double> uzzb(n);
        for (int i = 0; i < n; i++) {
            std::complex<double> P = s.P(i).eval(z);
            std::complex<double> num = P * Pzzb[i].eval(z) - Pz[i].eval(z) * Pzb[i].eval(z);
            uzzb[i] = -(num / (P * P)).real();
            logP[i] = std::log(P.real());
        }
        double m = 0;
        for (int i = 0; i < n; i++) {
            double u = 2.0 * s.gdata().gamma[i].get_d() * logr;
            for (int j = 0; j < n; j++) u -= (double)s.rs().cartan[i][j] * logP[j];
            m = std::max(m, std::abs(uzzb[i] + std::exp(u)));
        }
        worst[k] = m;
    });
    return *std::max_element(worst.begin(), worst.end());
}

namespace {

using VecD = std::vector<double>;

VecD vadd(const VecD& a, const VecD& b) {
    VecD r(a.size());
    for (size_t i = 0; i < a.size(); i++) r[i] = a[i] + b[i];
    return r;
}

// adaptive Simpson on a vector integrand, max-norm error control
struct SimpsonResult {
    VecD value;
    double err = 0;
    bool converged = true;
};

void adaptive_simpson(const std::function<VecD(double)>& f, double a, double b, const VecD& fa,
                      const VecD& fm, const VecD& fb, const VecD& whole, double tol, int depth,
                      SimpsonResult& out) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    VecD flm = f(lm), frm = f(rm);
    size_t n = fa.size();
    VecD left(n), right(n);
    double h = b - a;
    for (size_t i = 0; i < n; i++) {
        left[i] = h / 12.0 * (fa[i] + 4 * flm[i] + fm[i]);
        right[i] = h / 12.0 * (fm[i] + 4 * frm[i] + fb[i]);
    }
    double delta = 0;
    for (size_t i = 0; i < n; i++) delta = std::max(delta, std::abs(left[i] + right[i] - whole[i]));
    if (depth <= 0 || delta < 15 * tol) {
        for (size_t i = 0; i < n; i++) out.value[i] += left[i] + right[i] + (left[i] + right[i] - whole[i]) / 15.0;
        out.err += delta / 15.0;
        if (depth <= 0 && delta >= 15 * tol) out.converged = false;
        return;
    }
    adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2, depth - 1, out);
    adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2, depth - 1, out);
}

SimpsonResult integrate(const std::function<VecD(double)>& f, double a, double b, double tol,
                        int depth, size_t n) {
    VecD fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    VecD whole(n);
    for (size_t i = 0; i < n; i++) whole[i] = (b - a) / 6.0 * (fa[i] + 4 * fm[i] + fb[i]);
    SimpsonResult out;
    out.value.assign(n, 0.0);
    adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, depth, out);
    return out;
}

}  // namespace

QuantizationReport quantization(const Solution& s, const QuadratureOptions& opt) {
    int n = s.rank();
    double dth = (kTwoPi - 2 * opt.cut_delta) / opt.ntheta;

    // angular average of exp(u_i + shift*log r) at radius r, times 2*pi-ish arc
    auto ring = [&](double r, double shift) {
        std::vector<VecD> vals(opt.ntheta);
        parallel_for(opt.ntheta, [&](int a) {
            double th = -kPi + opt.cut_delta + (a + 0.5) * dth;
            VecD u = s.eval_log_eu(r, th);
            for (auto& v : u) v = std::exp(v + shift * std::log(r));
            vals[a] = std::move(u);
        });
        VecD sum(n, 0.0);
        for (const auto& v : vals) sum = vadd(sum, v);
        for (auto& v : sum) v *= dth;
        return sum;
    };

    // inner disc: int_0^1 r * ring(r) dr
    auto inner = [&](double r) {
        if (r < 1e-14) r = 1e-14;
        return ring(r, 1.0);
    };
    // tail via r = 1/t: int_1^inf r*ring dr = int_0^1 ring(1/t) * (1/t)^3 dt
    auto tail = [&](double t) {
        if (t < 1e-14) t = 1e-14;
        return ring(1.0 / t, 3.0);
    };

    SimpsonResult in = integrate(inner, 0.0, 1.0, opt.abs_tol, opt.max_depth, n);
    SimpsonResult tl = integrate(tail, 0.0, 1.0, opt.abs_tol, opt.max_depth, n);

    QuantizationReport rep;
    rep.integrals = vadd(in.value, tl.value);
    rep.quad_error = in.err + tl.err;
    rep.converged = in.converged && tl.converged;
    rep.combos.assign(n, 0.0);
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) rep.combos[i] += (double)s.rs().cartan[i][j] * rep.integrals[j];
    auto sigma = minus_kappa(s.params().lie_type);
    for (int i = 0; i < n; i++) {
        double target =
            kPi * (2.0 + s.gdata().gamma[i].get_d() + s.gdata().gamma[sigma[i]].get_d());
        rep.targets.push_back(target);
        rep.rel_errors.push_back(std::abs(rep.combos[i] - target) / std::abs(target));
    }
    return rep;
}

std::vector<double> asymptotic_slope(const Solution& s, const std::vector<double>& radii) {
    int n = s.rank();
    int ntheta = 8;
    size_t m = radii.size();
    std::vector<VecD> u_mean(m, VecD(n, 0.0));
    parallel_for((int)m, [&](int k) {
        for (int a = 0; a < ntheta; a++) {
            double th = -kPi + (a + 0.5) * kTwoPi / ntheta;
            VecD u = s.eval_log_eu(radii[k], th);
            for (int i = 0; i < n; i++) u_mean[k][i] += u[i] / ntheta;
        }
    });
    // least squares of u against log r
    double sx = 0, sxx = 0;
    std::vector<double> sy(n, 0.0), sxy(n, 0.0);
    for (size_t k = 0; k < m; k++) {
        double x = std::log(radii[k]);
        sx += x;
        sxx += x * x;
        for (int i = 0; i < n; i++) {
            sy[i] += u_mean[k][i];
            sxy[i] += x * u_mean[k][i];
        }
    }
    std::vector<double> slope(n);
    for (int i = 0; i < n; i++)
        slope[i] = (m * sxy[i] - sx * sy[i]) / (m * sxx - sx * sx);
    return slope;
}

std::vector<double> asymptotic_targets(const Solution& s) {
    auto sigma = minus_kappa(s.params().lie_type);
    std::vector<double> t(s.rank());
    for (int i = 0; i < s.rank(); i++)
        t[i] = -2.0 * (2.0 + s.gdata().gamma[sigma[i]].get_d());
    return t;
}

// ---------------------------------------------------------------------------
// float-exponent pipeline

namespace {

// polynomial in z with real exponents
struct FPolyD {
    std::vector<std::pair<double, std::complex<double>>> terms;  // sorted by exponent

    void add(double e, std::complex<double> c) {
        if (c == 0.0) return;
        auto it = std::lower_bound(terms.begin(), terms.end(), e,
                                   [](const auto& t, double x) { return t.first < x - 1e-11; });
        if (it != terms.end() && std::abs(it->first - e) < 1e-11) {
            it->second += c;
            return;
        }
        terms.insert(it, {e, c});
    }
    bool empty() const { return terms.empty(); }
    std::complex<double> eval(std::complex<double> z) const {
        std::complex<double> lz = std::log(z), s = 0;
        for (const auto& [e, c] : terms) s += c * std::exp(e * lz);
        return s;
    }
};

FPolyD fmul(const FPolyD& a, const FPolyD& b) {
    FPolyD r;
    for (const auto& [ea, ca] : a.terms)
        for (const auto& [eb, cb] : b.terms) r.add(ea + eb, ca * cb);
    return r;
}

FPolyD fdet(const std::vector<FPolyD>& m, int k) {
    if (k == 1) return m[0];
    FPolyD det;
    for (int r = 0; r < k; r++) {
        if (m[r * k].empty()) continue;
        std::vector<FPolyD> sub;
        for (int rr = 0; rr < k; rr++) {
            if (rr == r) continue;
            for (int cc = 1; cc < k; cc++) sub.push_back(m[rr * k + cc]);
        }
        FPolyD cof = fmul(m[r * k], fdet(sub, k - 1));
        double sgn = (r % 2 == 0) ? 1.0 : -1.0;
        for (const auto& [e, c] : cof.terms) det.add(e, sgn * c);
    }
    return det;
}

std::vector<FPolyD> float_phi(const MatrixRep& rep, const std::vector<double>& gamma) {
    int d = rep.dim;
    int n = (int)rep.gen_lower.size();
    std::vector<FPolyD> zeta(d * d), phi(d * d);
    for (int i = 0; i < n; i++) {
        auto f = rep.gen_lower[i].to_complex();
        for (int k = 0; k < d * d; k++)
            if (f[k] != 0.0) zeta[k].add(gamma[i], f[k]);
    }
    for (int v = 0; v < d; v++) phi[v * d + v].add(0.0, 1.0);
    for (int iter = 0; iter < d + 1; iter++) {
        std::vector<FPolyD> next(d * d);
        for (int v = 0; v < d; v++) next[v * d + v].add(0.0, 1.0);
        for (int r = 0; r < d; r++)
            for (int k = 0; k < d; k++) {
                if (phi[r * d + k].empty()) continue;
                for (int c = 0; c < d; c++) {
                    if (zeta[k * d + c].empty()) continue;
                    FPolyD prod = fmul(phi[r * d + k], zeta[k * d + c]);
                    for (const auto& [e, cf] : prod.terms)
                        next[r * d + c].add(e + 1.0, cf / (e + 1.0));
                }
            }
        phi = std::move(next);
    }
    return phi;
}

}  // namespace

std::complex<double> FloatSolution::Sesqui::eval(std::complex<double> z) const {
    std::complex<double> lz = std::log(z), lzb = std::conj(lz), s = 0;
    for (const auto& [pq, c] : terms) s += c * std::exp(pq.first * lz + pq.second * lzb);
    return s;
}

FloatSolution::Sesqui FloatSolution::Sesqui::dz() const {
    Sesqui r;
    for (const auto& [pq, c] : terms)
        if (pq.first != 0.0) r.terms.push_back({{pq.first - 1.0, pq.second}, c * pq.first});
    return r;
}

FloatSolution::Sesqui FloatSolution::Sesqui::dzbar() const {
    Sesqui r;
    for (const auto& [pq, c] : terms)
        if (pq.second != 0.0) r.terms.push_back({{pq.first, pq.second - 1.0}, c * pq.second});
    return r;
}

FloatSolution::FloatSolution(FloatParams p)
    : params_(std::move(p)), rs_(root_system(params_.lie_type)) {
    int n = rs_.rank();
    if ((int)params_.gamma.size() != n) throw std::invalid_argument("gamma rank mismatch");
    if (params_.lambda.empty()) params_.lambda.assign(n, 1.0);
    for (double g : params_.gamma)
        if (!(g > -1)) throw std::invalid_argument("gamma entries must exceed -1");
    gamma_up_.assign(n, 0.0);
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) gamma_up_[i] += rs_.inv_cartan[i][j].get_d() * params_.gamma[j];

    struct Ctx {
        MatrixRep rep;
        std::vector<FPolyD> phi;
        std::vector<std::complex<double>> lc;
    };
    std::map<std::string, Ctx> cache;
    auto get = [&](const CoeffStrategy& s, const std::string& key) -> Ctx& {
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        Ctx ctx;
        ctx.rep = s.rep;
        ctx.phi = float_phi(ctx.rep, params_.gamma);
        ctx.lc = c_matrix(ctx.rep, rs_, params_.c);
        int d = ctx.rep.dim;
        for (int r = 0; r < d; r++) {
            double lam = 1.0;
            for (int k = 0; k < n; k++)
                lam *= std::pow(params_.lambda[k], ctx.rep.weights[r][k].get_d());
            for (int c = 0; c < d; c++) ctx.lc[r * d + c] *= lam;
        }
        return cache.emplace(key, std::move(ctx)).first->second;
    };

    auto build = [&](const Ctx& ctx, const CoeffStrategy& s, bool continued) {
        int d = ctx.rep.dim;
        int k = (s.kind == CoeffKind::minor) ? s.minor_order : 1;
        std::vector<FPolyD> X(d * k);
        for (int cc = 0; cc < k; cc++)
            for (int kk = 0; kk < d; kk++) {
                FPolyD col = ctx.phi[kk * d + cc];
                if (col.empty()) continue;
                if (continued)
                    for (auto& [e, cf] : col.terms)
                        cf *= std::exp(std::complex<double>(0, -kTwoPi * e));
                for (int r = 0; r < d; r++) {
                    std::complex<double> m = ctx.lc[r * d + kk];
                    if (m == 0.0) continue;
                    for (const auto& [e, cf] : col.terms) X[r * k + cc].add(e, m * cf);
                }
            }
        Sesqui P;
        auto norm2 = [&](const FPolyD& f) {
            for (const auto& [e1, c1] : f.terms)
                for (const auto& [e2, c2] : f.terms)
                    P.terms.push_back({{e1, e2}, c1 * std::conj(c2)});
        };
        if (s.kind == CoeffKind::rep) {
            for (int r = 0; r < d; r++) norm2(X[r * k]);
            return P;
        }
        std::vector<int> S(k);
        for (int i = 0; i < k; i++) S[i] = i;
        while (true) {
            std::vector<FPolyD> sub(k * k);
            for (int r = 0; r < k; r++)
                for (int cc = 0; cc < k; cc++) sub[r * k + cc] = X[S[r] * k + cc];
            norm2(fdet(sub, k));
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
        Ctx& ctx = get(s, key);
        P_.push_back(build(ctx, s, false));
        P_cont_.push_back(build(ctx, s, true));
    }
}

std::vector<double> FloatSolution::eval_U(std::complex<double> z) const {
    int n = rs_.rank();
    double logr = std::log(std::abs(z));
    std::vector<double> U(n);
    for (int i = 0; i < n; i++)
        U[i] = -std::log(P_[i].eval(z).real()) + 2.0 * gamma_up_[i] * logr;
    return U;
}

std::vector<double> FloatSolution::monodromy_defect(
    const std::vector<std::complex<double>>& zs) const {
    int n = rs_.rank();
    std::vector<double> defect(n, 0.0);
    for (const auto& z : zs)
        for (int i = 0; i < n; i++) {
            double d = std::abs(std::log(P_cont_[i].eval(z).real()) - std::log(P_[i].eval(z).real()));
            defect[i] = std::max(defect[i], d);
        }
    return defect;
}

double FloatSolution::pde_residual(const std::vector<std::complex<double>>& pts) const {
    int n = rs_.rank();
    std::vector<Sesqui> Pz(n), Pzb(n), Pzzb(n);
    for (int i = 0; i < n; i++) {
        Pz[i] = P_[i].dz();
        Pzb[i] = P_[i].dzbar();
        Pzzb[i] = Pz[i].dzbar();
    }
    double worst = 0;
    for (const auto& z : pts) {
        double logr = std::log(std::abs(z));
        std::vector<double> logP(n), uzzb(n);
        for (int i = 0; i < n; i++) {
            std::complex<double> P = P_[i].eval(z);
            std::complex<double> num = P * Pzzb[i].eval(z) - Pz[i].eval(z) * Pzb[i].eval(z);
            uzzb[i] = -(num / (P * P)).real();
            logP[i] = std::log(P.real());
        }
        for (int i = 0; i < n; i++) {
            double u = 2.0 * params_.gamma[i] * logr;
            for (int j = 0; j < n; j++) u -= (double)rs_.cartan[i][j] * logP[j];
            worst = std::max(worst, std::abs(uzzb[i] + std::exp(u)));
        }
    }
    return worst;
}

std::vector<double> float_mode_eval(const FloatParams& p, std::complex<double> z) {
    return FloatSolution(p).eval_U(z);
}

}  // namespace toda
