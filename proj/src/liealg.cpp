#include "toda/liealg.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace toda {

char family_letter(Family f) {
    switch (f) {
        case Family::A: return 'A';
        case Family::B: return 'B';
        case Family::C: return 'C';
        case Family::D: return 'D';
        case Family::G: return 'G';
        case Family::F: return 'F';
        case Family::E: return 'E';
    }
    return '?';
}

std::string LieType::str() const { return family_letter(family) + std::to_string(rank); }

LieType LieType::parse(const std::string& s) {
    if (s.size() < 2) throw std::invalid_argument("bad Lie type: " + s);
    Family f;
    switch (s[0]) {
        case 'A': f = Family::A; break;
        case 'B': f = Family::B; break;
        case 'C': f = Family::C; break;
        case 'D': f = Family::D; break;
        case 'G': f = Family::G; break;
        case 'F': f = Family::F; break;
        case 'E': f = Family::E; break;
        default: throw std::invalid_argument("bad Lie family: " + s);
    }
    int rank;
    try {
        size_t pos;
        rank = std::stoi(s.substr(1), &pos);
        if (pos + 1 != s.size()) throw std::invalid_argument(s);
    } catch (...) {
        throw std::invalid_argument("bad Lie rank: " + s);
    }
    LieType t{f, rank};
    validate(t);
    return t;
}

void validate(const LieType& t) {
    const std::string name = family_letter(t.family) + std::to_string(t.rank);
    switch (t.family) {
        case Family::A:
            if (t.rank < 1) throw std::invalid_argument("invalid rank: " + name);
            return;
        case Family::B:
        case Family::C:
            if (t.rank < 2) throw std::invalid_argument("invalid rank (need >= 2): " + name);
            return;
        case Family::D:
            if (t.rank < 3) throw std::invalid_argument("invalid rank (need >= 3): " + name);
            return;
        case Family::G:
            if (t.rank != 2) throw std::invalid_argument("invalid rank (G2 only): " + name);
            return;
        case Family::F:
            if (t.rank != 4) throw std::invalid_argument("invalid rank (F4 only): " + name);
            return;
        case Family::E:
            if (t.rank < 6 || t.rank > 8) throw std::invalid_argument("invalid rank (E6/E7/E8): " + name);
            return;
    }
}

int algebra_dimension(const LieType& t) {
    int n = t.rank;
    switch (t.family) {
        case Family::A: return (n + 1) * (n + 1) - 1;
        case Family::B:
        case Family::C: return n * (2 * n + 1);
        case Family::D: return n * (2 * n - 1);
        case Family::G: return 14;
        case Family::F: return 52;
        case Family::E: return n == 6 ? 78 : (n == 7 ? 133 : 248);
    }
    return 0;
}

std::vector<std::vector<long>> cartan_matrix(const LieType& t) {
    validate(t);
    int n = t.rank;
    std::vector<std::vector<long>> a(n, std::vector<long>(n, 0));
    for (int i = 0; i < n; i++) a[i][i] = 2;
    auto chain = [&](int i, int j) { a[i][j] = -1; a[j][i] = -1; };
    switch (t.family) {
        case Family::A:
            for (int i = 0; i + 1 < n; i++) chain(i, i + 1);
            break;
        case Family::B:
            for (int i = 0; i + 1 < n; i++) chain(i, i + 1);
            a[n - 2][n - 1] = -2;
            break;
        case Family::C:
            for (int i = 0; i + 1 < n; i++) chain(i, i + 1);
            a[n - 1][n - 2] = -2;
            break;
        case Family::D:
            for (int i = 0; i + 2 < n; i++) chain(i, i + 1);
            chain(n - 3, n - 1);
            break;
        case Family::G:
            a[0][1] = -1;
            a[1][0] = -3;
            break;
        case Family::F:
            chain(0, 1);
            chain(1, 2);
            chain(2, 3);
            a[1][2] = -2;
            break;
        case Family::E:
            // labeling after Knapp: chain 1-3-4-5-...-n with node 2 attached to 4
            chain(0, 2);
            chain(2, 3);
            chain(1, 3);
            for (int i = 3; i + 1 < n; i++) chain(i, i + 1);
            break;
    }
    return a;
}

namespace {

std::vector<std::vector<Rational>> invert_rational(const std::vector<std::vector<long>>& a) {
    int n = (int)a.size();
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(2 * n, Rational(0)));
    for (int i = 0; i < n; i++) {
        for (int j = 0; j < n; j++) m[i][j] = Rational(a[i][j]);
        m[i][n + i] = 1;
    }
    for (int col = 0; col < n; col++) {
        int piv = -1;
        for (int r = col; r < n; r++)
            if (m[r][col] != 0) { piv = r; break; }
        if (piv < 0) throw std::logic_error("singular Cartan matrix");
        std::swap(m[col], m[piv]);
        Rational d = m[col][col];
        for (int j = 0; j < 2 * n; j++) m[col][j] /= d;
        for (int r = 0; r < n; r++) {
            if (r == col || m[r][col] == 0) continue;
            Rational f = m[r][col];
            for (int j = 0; j < 2 * n; j++) m[r][j] -= f * m[col][j];
        }
    }
    std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n));
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) inv[i][j] = m[i][n + j];
    return inv;
}

}  // namespace

RootSystem root_system(const LieType& t) {
    RootSystem rs;
    rs.lie_type = t;
    rs.cartan = cartan_matrix(t);
    rs.inv_cartan = invert_rational(rs.cartan);
    int n = t.rank;

    std::set<RootCoords> known;
    std::vector<RootCoords> frontier;
    for (int i = 0; i < n; i++) {
        RootCoords e(n, 0);
        e[i] = 1;
        known.insert(e);
        frontier.push_back(e);
    }
    // closure by root strings: alpha + alpha_i is a root iff p_i > 0 where
    // p_i = q_i - <alpha, alpha_i^vee> and q_i counts how far the string
    // continues downward
    while (!frontier.empty()) {
        std::vector<RootCoords> next;
        for (const auto& m : frontier) {
            for (int i = 0; i < n; i++) {
                long c = 0;
                for (int j = 0; j < n; j++) c += m[j] * rs.cartan[j][i];
                long q = 0;
                RootCoords down = m;
                while (true) {
                    down[i] -= 1;
                    if (down[i] < 0 || !known.count(down)) break;
                    q++;
                }
                if (q - c <= 0) continue;
                RootCoords up = m;
                up[i] += 1;
                if (known.insert(up).second) next.push_back(up);
            }
        }
        frontier = std::move(next);
    }

    rs.positive_roots.assign(known.begin(), known.end());
    auto height = [](const RootCoords& m) {
        int h = 0;
        for (int v : m) h += v;
        return h;
    };
    std::sort(rs.positive_roots.begin(), rs.positive_roots.end(),
              [&](const RootCoords& x, const RootCoords& y) {
                  int hx = height(x), hy = height(y);
                  if (hx != hy) return hx < hy;
                  return x > y;  // lexicographically larger first within a height
              });
    for (const auto& m : rs.positive_roots) rs.heights.push_back(height(m));

    int expected = (algebra_dimension(t) - n) / 2;
    if ((int)rs.positive_roots.size() != expected)
        throw std::logic_error("root closure count mismatch for " + t.str());
    return rs;
}

int RootSystem::root_index(const RootCoords& m) const {
    for (size_t i = 0; i < positive_roots.size(); i++)
        if (positive_roots[i] == m) return (int)i;
    return -1;
}

std::vector<int> degrees(const LieType& t) {
    validate(t);
    int n = t.rank;
    std::vector<int> d;
    switch (t.family) {
        case Family::A:
            for (int k = 2; k <= n + 1; k++) d.push_back(k);
            break;
        case Family::B:
        case Family::C:
            for (int k = 2; k <= 2 * n; k += 2) d.push_back(k);
            break;
        case Family::D:
            for (int k = 2; k <= 2 * n - 2; k += 2) d.push_back(k);
            d.push_back(n);
            break;
        case Family::G: d = {2, 6}; break;
        case Family::F: d = {2, 6, 8, 12}; break;
        case Family::E:
            if (n == 6) d = {2, 5, 6, 8, 9, 12};
            else if (n == 7) d = {2, 6, 8, 10, 12, 14, 18};
            else d = {2, 8, 12, 14, 18, 20, 24, 30};
            break;
    }
    return d;
}

std::vector<int> minus_kappa(const LieType& t) {
    validate(t);
    int n = t.rank;
    std::vector<int> p(n);
    for (int i = 0; i < n; i++) p[i] = i;
    if (t.family == Family::A) {
        for (int i = 0; i < n; i++) p[i] = n - 1 - i;
    } else if (t.family == Family::D && n % 2 == 1) {
        std::swap(p[n - 2], p[n - 1]);
    } else if (t.family == Family::E && n == 6) {
        std::swap(p[0], p[5]);
        std::swap(p[2], p[4]);
    }
    return p;
}

GammaData gamma_data(const RootSystem& rs, std::vector<Rational> gamma) {
    int n = rs.rank();
    if ((int)gamma.size() != n) throw std::invalid_argument("gamma size mismatch");
    GammaData g;
    g.gamma = std::move(gamma);
    for (const auto& gi : g.gamma) {
        if (gi <= Rational(-1)) throw std::invalid_argument("gamma_i must exceed -1");
        g.mu.push_back(gi + 1);
    }
    for (int i = 0; i < n; i++) {
        Rational s(0);
        for (int j = 0; j < n; j++) s += rs.inv_cartan[i][j] * g.gamma[j];
        g.gamma_up.push_back(s);
    }
    return g;
}

Rational GammaData::w0_pairing(const RootCoords& m) const {
    Rational s(0);
    for (size_t i = 0; i < m.size(); i++) s += Rational(m[i]) * mu[i];
    return s;
}

std::vector<int> delta_gamma(const RootSystem& rs, const GammaData& g) {
    std::vector<int> out;
    for (size_t k = 0; k < rs.positive_roots.size(); k++) {
        Rational a = g.w0_pairing(rs.positive_roots[k]);
        if (a.get_den() == 1) out.push_back((int)k);
    }
    return out;
}

std::string root_coords_key(const RootCoords& m) {
    std::ostringstream os;
    for (size_t i = 0; i < m.size(); i++) {
        if (i) os << ",";
        os << m[i];
    }
    return os.str();
}

RootCoords parse_root_coords(const std::string& s) {
    RootCoords m;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) m.push_back(std::stoi(tok));
    return m;
}

}  // namespace toda
