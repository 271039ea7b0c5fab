#include "toda/winvariant.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace toda {

namespace {

using Vec = std::vector<GaussQ>;
using Mat = std::vector<Vec>;  // row-major, possibly rectangular

// reduced row echelon form in place; returns pivot column per pivot row
std::vector<int> rref(Mat& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    int rows = (int)m.size(), cols = (int)m[0].size();
    int r = 0;
    for (int c = 0; c < cols && r < rows; c++) {
        int p = -1;
        for (int i = r; i < rows; i++)
            if (!m[i][c].is_zero()) { p = i; break; }
        if (p < 0) continue;
        std::swap(m[r], m[p]);
        GaussQ inv = GaussQ(1) / m[r][c];
        for (int j = 0; j < cols; j++) m[r][j] = inv * m[r][j];
        for (int i = 0; i < rows; i++) {
            if (i == r || m[i][c].is_zero()) continue;
            GaussQ f = m[i][c];
            for (int j = 0; j < cols; j++) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        r++;
    }
    return pivots;
}

// solve the square system A x = b exactly
Vec solve_square(Mat a, Vec b) {
    int n = (int)a.size();
    for (int i = 0; i < n; i++) a[i].push_back(b[i]);
    auto piv = rref(a);
    if ((int)piv.size() != n) throw std::logic_error("singular exact system");
    Vec x(n);
    for (int i = 0; i < n; i++) x[piv[i]] = a[i][n];
    return x;
}

Vec nullspace_vector_free(const Mat& r, const std::vector<int>& pivots, int cols, int free_col) {
    Vec v(cols);
    v[free_col] = GaussQ(1);
    for (size_t i = 0; i < pivots.size(); i++) v[pivots[i]] = -r[i][free_col];
    return v;
}

Vec flatten(const MatQ& m) {
    int d = m.dim();
    Vec v(d * d);
    for (int r = 0; r < d; r++)
        for (int c = 0; c < d; c++) v[r * d + c] = m.at(r, c);
    return v;
}

MatQ lower_vec(const MatrixRep& rep, const RootSystem& rs, int k) {
    if (rs.heights[k] == 1) {
        for (int i = 0; i < rs.rank(); i++)
            if (rs.positive_roots[k][i] == 1) return rep.gen_lower[i];
    }
    return nonsimple_root_vector(rep, rs, rs.positive_roots[k]);
}

MatQ upper_vec(const MatrixRep& rep, const RootSystem& rs, int k) {
    if (rs.heights[k] == 1) {
        for (int i = 0; i < rs.rank(); i++)
            if (rs.positive_roots[k][i] == 1) return rep.gen_upper[i];
    }
    return nonsimple_root_vector_upper(rep, rs, rs.positive_roots[k]);
}

// Laurent polynomial with MatQ coefficients
using LaurentMat = std::map<long, MatQ>;

void lm_add(LaurentMat& a, long k, const MatQ& m) {
    auto it = a.find(k);
    if (it == a.end())
        a.emplace(k, m);
    else {
        it->second = it->second + m;
        if (it->second.is_zero()) a.erase(it);
    }
}

LaurentMat lm_mul(const LaurentMat& a, const LaurentMat& b) {
    LaurentMat r;
    for (const auto& [ka, ma] : a)
        for (const auto& [kb, mb] : b) lm_add(r, ka + kb, ma * mb);
    return r;
}

LaurentMat lm_dz(const LaurentMat& a) {
    LaurentMat r;
    for (const auto& [k, m] : a) {
        if (k == 0) continue;
        lm_add(r, k - 1, m.scaled(GaussQ(Rational(k))));
    }
    return r;
}

LaurentMat lm_exp_nilpotent(const LaurentMat& m, int d) {
    LaurentMat sum;
    lm_add(sum, 0, MatQ::identity(d));
    LaurentMat pw = sum;  // identity
    Rational fact(1);
    for (int k = 1; k <= d; k++) {
        pw = lm_mul(pw, m);
        if (pw.empty()) break;
        fact *= k;
        GaussQ s(Rational(1) / fact);
        for (const auto& [kk, mm] : pw) lm_add(sum, kk, mm.scaled(s));
    }
    return sum;
}

LaurentMat lm_neg(const LaurentMat& a) {
    LaurentMat r;
    for (const auto& [k, m] : a) r.emplace(k, m.scaled(GaussQ(-1)));
    return r;
}

}  // namespace

std::vector<GaussQ> GradedAlgebra::coords(const MatQ& m) const {
    Vec v = flatten(m);
    int g = dim();
    Vec x(g);
    for (int i = 0; i < g; i++) {
        GaussQ s;
        for (int j = 0; j < g; j++) s += solver[i][j] * v[pivot_rows[j]];
        x[i] = s;
    }
    // confirm m really lies in the span
    MatQ rec = from_coords(x);
    if (!(rec == m)) throw std::logic_error("matrix outside algebra span");
    return x;
}

MatQ GradedAlgebra::from_coords(const std::vector<GaussQ>& x) const {
    MatQ m(mat_dim);
    for (size_t k = 0; k < basis.size(); k++)
        if (!x[k].is_zero()) m = m + basis[k].scaled(x[k]);
    return m;
}

GradedAlgebra graded_algebra(const LieType& t) {
    MatrixRep rep = (t.family == Family::G) ? g2_rep() : standard_rep(t);
    GradedAlgebra ga;
    ga.lie_type = t;
    ga.rs = root_system(t);
    ga.mat_dim = rep.dim;
    int n = ga.rs.rank();
    int nroots = (int)ga.rs.positive_roots.size();

    for (int k = 0; k < nroots; k++) {
        ga.basis.push_back(lower_vec(rep, ga.rs, k));
        ga.grading.push_back(-ga.rs.heights[k]);
    }
    for (int i = 0; i < n; i++) {
        ga.basis.push_back(rep.gen_cartan[i]);
        ga.grading.push_back(0);
    }
    for (int k = 0; k < nroots; k++) {
        ga.basis.push_back(upper_vec(rep, ga.rs, k));
        ga.grading.push_back(ga.rs.heights[k]);
    }
    if ((int)ga.basis.size() != algebra_dimension(t))
        throw std::logic_error("algebra basis size mismatch");

    ga.eps = MatQ(ga.mat_dim);
    for (int i = 0; i < n; i++) ga.eps = ga.eps + rep.gen_lower[i];
    ga.eps_plus = MatQ(ga.mat_dim);
    for (int i = 0; i < n; i++) {
        Rational ci(0);
        for (int j = 0; j < n; j++) ci += ga.rs.inv_cartan[i][j];
        ci *= 2;
        ga.eps_plus = ga.eps_plus + rep.gen_upper[i].scaled(GaussQ(ci));
    }

    // find rows of the flattened basis matrix giving an invertible square
    // submatrix, then invert it once for repeated exact coordinate solves
    int g = (int)ga.basis.size();
    int rows = ga.mat_dim * ga.mat_dim;
    Mat w(rows, Vec(g));
    for (int k = 0; k < g; k++) {
        Vec f = flatten(ga.basis[k]);
        for (int r = 0; r < rows; r++) w[r][k] = f[r];
    }
    std::vector<bool> used(rows, false);
    for (int c = 0; c < g; c++) {
        int pr = -1;
        for (int r = 0; r < rows; r++)
            if (!used[r] && !w[r][c].is_zero()) { pr = r; break; }
        if (pr < 0) throw std::logic_error("matrix model is not faithful");
        used[pr] = true;
        ga.pivot_rows.push_back(pr);
        for (int r = 0; r < rows; r++) {
            if (r == pr || used[r] || w[r][c].is_zero()) continue;
            GaussQ f = w[r][c] / w[pr][c];
            for (int cc = c; cc < g; cc++) w[r][cc] -= f * w[pr][cc];
        }
    }
    // invert the g x g pivot submatrix by Gauss-Jordan
    Mat s(g, Vec(2 * g));
    for (int i = 0; i < g; i++) {
        Vec f = flatten(ga.basis[i]);  // column i of M
        for (int j = 0; j < g; j++) s[j][i] = f[ga.pivot_rows[j]];
        s[i][g + i] = GaussQ(1);
    }
    auto piv = rref(s);
    if ((int)piv.size() != g) throw std::logic_error("pivot submatrix singular");
    ga.solver.assign(g, Vec(g));
    for (int i = 0; i < g; i++)
        for (int j = 0; j < g; j++) ga.solver[i][j] = s[i][g + j];
    return ga;
}

KostantSlice build_slice(const GradedAlgebra& ga) {
    const RootSystem& rs = ga.rs;
    int n = rs.rank();
    int nroots = (int)rs.positive_roots.size();
    int max_h = *std::max_element(rs.heights.begin(), rs.heights.end());

    KostantSlice slice;
    for (int h = 1; h <= max_h; h++) {
        std::vector<int> idx;
        for (int k = 0; k < nroots; k++)
            if (rs.heights[k] == h) idx.push_back(k);
        // columns: full-algebra coordinates of [eps_plus, e_alpha]
        Mat a(ga.dim(), Vec(idx.size()));
        for (size_t c = 0; c < idx.size(); c++) {
            auto col = ga.coords(comm(ga.eps_plus, ga.basis[nroots + n + idx[c]]));
            for (int r = 0; r < ga.dim(); r++) a[r][c] = col[r];
        }
        Mat red = a;
        auto pivots = rref(red);
        std::vector<bool> is_pivot(idx.size(), false);
        for (int p : pivots) is_pivot[p] = true;
        Mat null_rows;
        for (size_t c = 0; c < idx.size(); c++)
            if (!is_pivot[c]) null_rows.push_back(nullspace_vector_free(red, pivots, (int)idx.size(), (int)c));
        if (null_rows.empty()) continue;
        // canonical per-grade basis: reduced echelon, pivot coefficient -1
        rref(null_rows);
        for (auto& row : null_rows) {
            int p = -1;
            for (size_t c = 0; c < row.size(); c++)
                if (!row[c].is_zero()) { p = (int)c; break; }
            GaussQ scale = GaussQ(-1) / row[p];
            MatQ sm(ga.mat_dim);
            std::vector<GaussQ> rc(nroots);
            for (size_t c = 0; c < row.size(); c++) {
                GaussQ v = scale * row[c];
                if (v.is_zero()) continue;
                rc[idx[c]] = v;
                sm = sm + ga.basis[nroots + n + idx[c]].scaled(v);
            }
            slice.s.push_back(sm);
            slice.grading.push_back(h);
            slice.root_coords.push_back(rc);
            slice.pivot.push_back(idx[p]);
        }
    }
    if ((int)slice.s.size() != n) throw std::logic_error("slice dimension != rank");
    return slice;
}

std::vector<WInvariant> ds_reduce(const GradedAlgebra& ga, const KostantSlice& slice,
                                  const std::vector<LaurentQ>& phi) {
    const RootSystem& rs = ga.rs;
    int n = rs.rank();
    int nroots = (int)rs.positive_roots.size();
    if ((int)phi.size() != n) throw std::invalid_argument("phi rank mismatch");
    int max_h = *std::max_element(rs.heights.begin(), rs.heights.end());

    LaurentMat A;
    lm_add(A, 0, ga.eps);
    for (int i = 0; i < n; i++)
        for (const auto& [k, c] : phi[i])
            lm_add(A, k, ga.basis[nroots + i].scaled(GaussQ(-c)));

    auto basis_indices_of_grade = [&](int gr) {
        std::vector<int> out;
        for (int k = 0; k < ga.dim(); k++)
            if (ga.grading[k] == gr) out.push_back(k);
        return out;
    };

    for (int k = 1; k <= max_h; k++) {
        auto gprev = basis_indices_of_grade(k - 1);
        auto gk = basis_indices_of_grade(k);
        std::vector<int> sl;
        for (size_t j = 0; j < slice.s.size(); j++)
            if (slice.grading[j] == k - 1) sl.push_back((int)j);
        int cols = (int)gk.size() + (int)sl.size();
        if ((int)gprev.size() != cols) throw std::logic_error("graded decomposition size mismatch");

        // columns: coords of [eps, b] for b in grade k, then the slice vectors
        Mat sys(gprev.size(), Vec(cols));
        for (size_t c = 0; c < gk.size(); c++) {
            auto col = ga.coords(comm(ga.eps, ga.basis[gk[c]]));
            for (size_t r = 0; r < gprev.size(); r++) sys[r][c] = col[gprev[r]];
        }
        for (size_t c = 0; c < sl.size(); c++) {
            auto col = ga.coords(slice.s[sl[c]]);
            for (size_t r = 0; r < gprev.size(); r++) sys[r][gk.size() + c] = col[gprev[r]];
        }

        LaurentMat residual = A;
        lm_add(residual, 0, ga.eps.scaled(GaussQ(-1)));
        LaurentMat m;
        for (const auto& [zexp, mat] : residual) {
            auto full = ga.coords(mat);
            Vec r(gprev.size());
            bool nonzero = false;
            for (size_t i = 0; i < gprev.size(); i++) {
                r[i] = full[gprev[i]];
                nonzero = nonzero || !r[i].is_zero();
            }
            if (!nonzero) continue;
            Vec x = solve_square(sys, r);
            MatQ mk(ga.mat_dim);
            for (size_t c = 0; c < gk.size(); c++)
                if (!x[c].is_zero()) mk = mk + ga.basis[gk[c]].scaled(x[c]);
            if (!mk.is_zero()) lm_add(m, zexp, mk);
        }
        if (m.empty()) continue;
        LaurentMat M = lm_exp_nilpotent(m, ga.mat_dim);
        LaurentMat Minv = lm_exp_nilpotent(lm_neg(m), ga.mat_dim);
        LaurentMat newA = lm_mul(lm_mul(M, A), Minv);
        for (const auto& [zexp, mat] : lm_mul(lm_dz(M), Minv))
            lm_add(newA, zexp, mat.scaled(GaussQ(-1)));
        A = newA;
    }

    // A should now be eps + sum_j W_j s_j; read the W_j off the pivots
    LaurentMat residual = A;
    lm_add(residual, 0, ga.eps.scaled(GaussQ(-1)));
    std::vector<WInvariant> out(slice.s.size());
    for (size_t j = 0; j < slice.s.size(); j++) out[j].degree = slice.grading[j] + 1;
    for (const auto& [zexp, mat] : residual) {
        auto full = ga.coords(mat);
        std::vector<GaussQ> w(slice.s.size());
        MatQ check(ga.mat_dim);
        for (size_t j = 0; j < slice.s.size(); j++) {
            w[j] = full[nroots + n + slice.pivot[j]] / GaussQ(-1);
            if (!w[j].is_zero()) check = check + slice.s[j].scaled(w[j]);
        }
        if (!(check == mat)) throw std::logic_error("reduced connection not on the slice");
        for (size_t j = 0; j < slice.s.size(); j++) {
            if (w[j].is_zero()) continue;
            if (!w[j].is_real()) throw std::logic_error("W coefficient is not real");
            out[j].w[zexp] = w[j].re;
        }
    }
    return out;
}

SchwarzianCheck schwarzian_check(const Rational& b) {
    LieType a1{Family::A, 1};
    GradedAlgebra ga = graded_algebra(a1);
    KostantSlice slice = build_slice(ga);
    Rational gamma = b - 1;
    LaurentQ phi0;
    if (gamma != 0) phi0[-1] = gamma / 2;  // gamma^1 = a^{11} gamma
    auto w = ds_reduce(ga, slice, {phi0});
    SchwarzianCheck out;
    out.w_route = 0;
    auto it = w[0].w.find(-2);
    if (it != w[0].w.end()) out.w_route = it->second;
    out.half_schwarzian = (Rational(1) - b * b) / 4;
    return out;
}

}  // namespace toda
