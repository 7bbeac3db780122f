#include "gdicke/symmetry.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "gdicke/basis.hpp"
#include "gdicke/error.hpp"

namespace gdicke {

namespace {

using row = std::vector<long long>;

// Integer kernel basis of a (rows x d) matrix via unimodular column operations.
std::vector<row> integer_kernel(std::vector<row> a, int d) {
    std::vector<row> u(d, row(d, 0));
    for (int i = 0; i < d; ++i) u[i][i] = 1;
    auto col_axpy = [&](int dst, int src, long long q) {
        for (auto& r : a) r[dst] -= q * r[src];
        for (auto& r : u) r[dst] -= q * r[src];
    };
    auto col_swap = [&](int x, int y) {
        for (auto& r : a) std::swap(r[x], r[y]);
        for (auto& r : u) std::swap(r[x], r[y]);
    };
    int p = 0;
    for (std::size_t i = 0; i < a.size() && p < d; ++i) {
        while (true) {
            int best = -1;
            for (int c = p; c < d; ++c)
                if (a[i][c] != 0 && (best < 0 || std::llabs(a[i][c]) < std::llabs(a[i][best])))
                    best = c;
            if (best < 0) break;
            col_swap(p, best);
            bool done = true;
            for (int c = p + 1; c < d; ++c) {
                if (a[i][c] == 0) continue;
                col_axpy(c, p, a[i][c] / a[i][p]);
                if (a[i][c] != 0) done = false;
            }
            if (done) {
                ++p;
                break;
            }
        }
    }
    std::vector<row> ker;
    for (int c = p; c < d; ++c) {
        row v(d);
        for (int r = 0; r < d; ++r) v[r] = u[r][c];
        ker.push_back(v);
    }
    return ker;
}

// Row Hermite normal form; zero rows dropped.
std::vector<row> hermite(std::vector<row> m, int d) {
    std::size_t p = 0;
    for (int c = 0; c < d && p < m.size(); ++c) {
        while (true) {
            std::size_t best = m.size();
            for (std::size_t r = p; r < m.size(); ++r)
                if (m[r][c] != 0 && (best == m.size() || std::llabs(m[r][c]) < std::llabs(m[best][c])))
                    best = r;
            if (best == m.size()) break;
            std::swap(m[p], m[best]);
            bool done = true;
            for (std::size_t r = p + 1; r < m.size(); ++r) {
                if (m[r][c] == 0) continue;
                long long q = m[r][c] / m[p][c];
                for (int k = 0; k < d; ++k) m[r][k] -= q * m[p][k];
                if (m[r][c] != 0) done = false;
            }
            if (done) break;
        }
        if (p < m.size() && m[p][c] != 0) {
            if (m[p][c] < 0)
                for (auto& v : m[p]) v = -v;
            for (std::size_t r = 0; r < p; ++r) {
                long long q = m[r][c] / m[p][c];
                if (m[r][c] - q * m[p][c] < 0) --q;
                for (int k = 0; k < d; ++k) m[r][k] -= q * m[p][k];
            }
            ++p;
        }
    }
    m.resize(p);
    return m;
}

row to_row(const symmetry_op& op) {
    row v;
    for (int e : op.eta) v.push_back(e);
    for (int l : op.lambda) v.push_back(l);
    return v;
}

row casimir(int ell, int n) {
    row c(ell + n, 0);
    for (int k = 0; k < n; ++k) c[ell + k] = 1;
    return c;
}

}  // namespace

symmetry_set find_constants(const model& m) {
    const int ell = m.modes();
    const int n = m.levels();
    const int d = ell + n;
    std::vector<row> a;
    for (const auto& c : m.config().couplings) {
        row r(d, 0);
        r[c.s] += 1;
        r[ell + c.j] += 1;
        r[ell + c.k] -= 1;
        a.push_back(r);
    }
    auto ker = integer_kernel(a, d);
    symmetry_set out;
    out.rank = d - static_cast<int>(ker.size());

    for (auto& v : ker) {
        long long l0 = v[ell];
        for (int k = 0; k < n; ++k) v[ell + k] -= l0;
    }
    auto h = hermite(ker, d);
    // Suffix sums: the first operator then weights every coupled mode.
    for (std::size_t i = h.size(); i-- > 1;)
        for (int c = 0; c < d; ++c) h[i - 1][c] += h[i][c];
    for (auto& v : h) {
        long long lo = *std::min_element(v.begin() + ell, v.end());
        for (int k = 0; k < n; ++k) v[ell + k] -= lo;
        auto first = std::find_if(v.begin(), v.end(), [](long long e) { return e != 0; });
        if (first != v.end() && *first < 0)
            for (auto& e : v) e = -e;
        symmetry_op op;
        for (int s = 0; s < ell; ++s) op.eta.push_back(static_cast<int>(v[s]));
        for (int k = 0; k < n; ++k) op.lambda.push_back(static_cast<int>(v[ell + k]));
        out.ops.push_back(op);
    }
    return out;
}

std::vector<int> eval_k(const symmetry_set& sym, std::span<const int> state) {
    std::vector<int> k;
    k.reserve(sym.ops.size());
    for (const auto& op : sym.ops) {
        const std::size_t ell = op.eta.size();
        int v = 0;
        for (std::size_t s = 0; s < ell; ++s) v += op.eta[s] * state[s];
        for (std::size_t j = 0; j < op.lambda.size(); ++j) v += op.lambda[j] * state[ell + j];
        k.push_back(v);
    }
    return k;
}

std::vector<int> parity_of(std::span<const int> k) {
    std::vector<int> p;
    for (int v : k) p.push_back(((v % 2) + 2) % 2);
    return p;
}

std::string sigma_label(std::span<const int> sigma) {
    std::string s;
    for (int p : sigma) s += p ? 'o' : 'e';
    return s;
}

std::vector<int> parse_sigma(const std::string& label) {
    std::vector<int> s;
    for (char c : label) {
        if (c == 'e' || c == 'E' || c == '0')
            s.push_back(0);
        else if (c == 'o' || c == 'O' || c == '1')
            s.push_back(1);
        else
            throw error(errc::bad_config, "bad parity label '" + label + "'");
    }
    return s;
}

std::string parity_sector::label() const { return sigma_label(sigma); }

std::vector<parity_sector> sectors(const symmetry_set& sym, const model& m) {
    const int z = sym.zeta0();
    const int bound = 2 * z + m.atoms();
    std::vector<parity_sector> out(std::size_t(1) << z);
    for (std::size_t idx = 0; idx < out.size(); ++idx) {
        for (int b = z - 1; b >= 0; --b) out[idx].sigma.push_back((idx >> b) & 1);
        out[idx].realizable = false;
    }
    auto matter = enumerate_matter(m.atoms(), m.levels());
    std::vector<int> nu(m.modes(), 0);
    std::vector<int> state(m.width());
    // Odometer over photon vectors with total count <= bound.
    while (true) {
        for (const auto& a : matter) {
            std::copy(nu.begin(), nu.end(), state.begin());
            std::copy(a.begin(), a.end(), state.begin() + m.modes());
            auto k = eval_k(sym, state);
            std::size_t idx = 0;
            for (int v : k) idx = (idx << 1) | static_cast<std::size_t>(v & 1);
            auto& sec = out[idx];
            if (!sec.realizable) {
                sec.kappa_min = k;
                sec.realizable = true;
            } else {
                for (int i = 0; i < z; ++i) sec.kappa_min[i] = std::min(sec.kappa_min[i], k[i]);
            }
        }
        int s = 0;
        while (s < m.modes()) {
            ++nu[s];
            if (std::accumulate(nu.begin(), nu.end(), 0) <= bound) break;
            nu[s] = 0;
            ++s;
        }
        if (s == m.modes()) break;
    }
    return out;
}

bool in_span(const symmetry_set& sym, const symmetry_op& op) {
    if (sym.ops.empty()) return false;
    const int ell = static_cast<int>(op.eta.size());
    const int n = static_cast<int>(op.lambda.size());
    const int d = ell + n;
    std::vector<row> m;
    for (const auto& o : sym.ops) m.push_back(to_row(o));
    m.push_back(casimir(ell, n));
    auto h = hermite(m, d);
    row t = to_row(op);
    for (const auto& r : h) {
        int c = 0;
        while (r[c] == 0) ++c;
        if (t[c] % r[c] != 0) return false;
        long long q = t[c] / r[c];
        for (int k = 0; k < d; ++k) t[k] -= q * r[k];
    }
    return std::all_of(t.begin(), t.end(), [](long long v) { return v == 0; });
}

std::optional<int> form_parity(const symmetry_set& sym, const symmetry_op& form,
                               std::span<const int> sigma, int atoms) {
    const int ell = static_cast<int>(form.eta.size());
    const int n = static_cast<int>(form.lambda.size());
    const int d = ell + n;
    const int z = sym.zeta0();
    // Columns: ops then the particle-number operator; solve over GF(2).
    std::vector<std::vector<int>> aug(d, std::vector<int>(z + 2, 0));
    auto target = to_row(form);
    auto cas = casimir(ell, n);
    for (int r = 0; r < d; ++r) {
        for (int c = 0; c < z; ++c) aug[r][c] = ((r < ell ? sym.ops[c].eta[r] : sym.ops[c].lambda[r - ell]) % 2 + 2) % 2;
        aug[r][z] = static_cast<int>(cas[r] & 1);
        aug[r][z + 1] = static_cast<int>(((target[r] % 2) + 2) % 2);
    }
    std::vector<int> pivot_col;
    std::size_t p = 0;
    for (int c = 0; c <= z && p < aug.size(); ++c) {
        std::size_t r = p;
        while (r < aug.size() && aug[r][c] == 0) ++r;
        if (r == aug.size()) continue;
        std::swap(aug[p], aug[r]);
        for (std::size_t q = 0; q < aug.size(); ++q)
            if (q != p && aug[q][c])
                for (int k = 0; k < z + 2; ++k) aug[q][k] ^= aug[p][k];
        pivot_col.push_back(c);
        ++p;
    }
    for (std::size_t r = p; r < aug.size(); ++r)
        if (aug[r][z + 1]) return std::nullopt;
    std::vector<int> coef(z + 1, 0);
    for (std::size_t r = 0; r < p; ++r) coef[pivot_col[r]] = aug[r][z + 1];
    int parity = coef[z] * (atoms & 1);
    for (int c = 0; c < z; ++c) parity ^= coef[c] * sigma[c];
    return parity & 1;
}

}  // namespace gdicke
