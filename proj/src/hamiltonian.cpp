#include "gdicke/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "gdicke/error.hpp"

namespace gdicke {

namespace {

struct entry {
    std::uint32_t col;
    std::int32_t coupling;
    double unit;
};

// All nonzero entries of row i, sorted by column.
void row_entries(const basis& b, const model& m, model_kind kind, std::size_t i, std::vector<entry>& out,
                 std::vector<int>& img) {
    out.clear();
    const int ell = m.modes();
    auto st = b.state(i);
    out.push_back({static_cast<std::uint32_t>(i), -1, diagonal_energy(st, m)});
    const auto& subs = m.subsystems();
    for (std::size_t c = 0; c < subs.size(); ++c) {
        const int s = subs[c].s;
        const int j = ell + subs[c].j;
        const int k = ell + subs[c].k;
        const int nu = st[s];
        for (int down = 0; down < 2; ++down) {
            const int from = down ? k : j;
            const int to = down ? j : k;
            if (st[from] == 0) continue;
            const double matter = std::sqrt(static_cast<double>(st[from]) * (st[to] + 1));
            for (int emit = 0; emit < 2; ++emit) {
                const bool rotating = (down == emit);
                if (kind == model_kind::tavis_cummings && !rotating) continue;
                if (!emit && nu == 0) continue;
                const double photon = emit ? std::sqrt(nu + 1.0) : std::sqrt(static_cast<double>(nu));
                img.assign(st.begin(), st.end());
                --img[from];
                ++img[to];
                img[s] += emit ? 1 : -1;
                auto idx = b.find(img);
                if (!idx) continue;
                out.push_back({static_cast<std::uint32_t>(*idx), static_cast<std::int32_t>(c), -matter * photon});
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const entry& x, const entry& y) { return x.col < y.col; });
}

void check_basis(const basis& b, const model& m) {
    if (b.width() != m.width() || b.modes() != m.modes())
        throw error(errc::basis_mismatch, "basis layout does not match the model");
}

hamiltonian_pattern pack(const basis& b, model_kind kind, std::vector<std::vector<entry>>& rows) {
    hamiltonian_pattern p;
    p.dim = b.size();
    p.kind = kind;
    p.basis_id = b.id();
    p.row_ptr.assign(p.dim + 1, 0);
    for (std::size_t i = 0; i < p.dim; ++i) p.row_ptr[i + 1] = p.row_ptr[i] + rows[i].size();
    p.col.resize(p.row_ptr.back());
    p.coupling.resize(p.row_ptr.back());
    p.unit.resize(p.row_ptr.back());
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < p.dim; ++i) {
        std::size_t o = p.row_ptr[i];
        for (const auto& e : rows[i]) {
            p.col[o] = e.col;
            p.coupling[o] = e.coupling;
            p.unit[o] = e.unit;
            ++o;
        }
    }
    return p;
}

}  // namespace

double diagonal_energy(std::span<const int> state, const model& m) {
    const auto& cfg = m.config();
    double e = 0.0;
    for (int s = 0; s < cfg.ell; ++s) e += cfg.Omega[s] * state[s];
    for (int k = 0; k < cfg.n; ++k) e += cfg.omega[k] * state[cfg.ell + k];
    return e;
}

double transition_amplitude(std::span<const int> u, std::span<const int> v, const model& m, model_kind kind) {
    const int ell = m.modes();
    const int w = m.width();
    int photon_mode = -1;
    int photon_step = 0;
    std::vector<int> gain;
    std::vector<int> loss;
    for (int c = 0; c < w; ++c) {
        const int d = u[c] - v[c];
        if (d == 0) continue;
        if (c < ell) {
            if (photon_mode >= 0 || std::abs(d) != 1) return 0.0;
            photon_mode = c;
            photon_step = d;
        } else if (d == 1) {
            gain.push_back(c - ell);
        } else if (d == -1) {
            loss.push_back(c - ell);
        } else {
            return 0.0;
        }
    }
    if (photon_mode < 0 || gain.size() != 1 || loss.size() != 1) return 0.0;
    const int to = gain[0];
    const int from = loss[0];
    const auto& subs = m.subsystems();
    for (std::size_t c = 0; c < subs.size(); ++c) {
        const auto& sub = subs[c];
        if (sub.s != photon_mode) continue;
        if (!((sub.j == to && sub.k == from) || (sub.j == from && sub.k == to))) continue;
        const bool down = (to == sub.j);
        const bool emit = (photon_step == 1);
        if (kind == model_kind::tavis_cummings && down != emit) return 0.0;
        const double matter = std::sqrt(static_cast<double>(v[ell + from]) * (v[ell + to] + 1));
        const double photon = emit ? std::sqrt(v[photon_mode] + 1.0) : std::sqrt(static_cast<double>(v[photon_mode]));
        return -m.mu(c) / std::sqrt(static_cast<double>(m.atoms())) * matter * photon;
    }
    return 0.0;
}

hamiltonian_pattern build_pattern_serial(const basis& b, const model& m, model_kind kind) {
    check_basis(b, m);
    std::vector<std::vector<entry>> rows(b.size());
    std::vector<int> img;
    for (std::size_t i = 0; i < b.size(); ++i) row_entries(b, m, kind, i, rows[i], img);
    return pack(b, kind, rows);
}

hamiltonian_pattern build_pattern(const basis& b, const model& m, model_kind kind) {
    check_basis(b, m);
    std::vector<std::vector<entry>> rows(b.size());
#pragma omp parallel
    {
        std::vector<int> img;
#pragma omp for schedule(dynamic, 256)
        for (std::size_t i = 0; i < b.size(); ++i) row_entries(b, m, kind, i, rows[i], img);
    }
    return pack(b, kind, rows);
}

sparse_hamiltonian instantiate(const hamiltonian_pattern& p, const model& m) {
    sparse_hamiltonian h;
    h.dim = p.dim;
    h.kind = p.kind;
    h.basis_id = p.basis_id;
    h.row_ptr = p.row_ptr;
    h.col = p.col;
    h.val.resize(p.unit.size());
    const double scale = 1.0 / std::sqrt(static_cast<double>(m.atoms()));
    std::vector<double> mu(m.subsystems().size());
    for (std::size_t c = 0; c < mu.size(); ++c) mu[c] = m.mu(c) * scale;
    for (std::size_t e = 0; e < p.unit.size(); ++e)
        h.val[e] = p.coupling[e] < 0 ? p.unit[e] : mu[p.coupling[e]] * p.unit[e];
    return h;
}

sparse_hamiltonian assemble(const basis& b, const model& m, model_kind kind) {
    return instantiate(build_pattern(b, m, kind), m);
}

sparse_hamiltonian assemble_serial(const basis& b, const model& m, model_kind kind) {
    return instantiate(build_pattern_serial(b, m, kind), m);
}

std::vector<double> assemble_dense(const basis& b, const model& m, model_kind kind) {
    check_basis(b, m);
    const std::size_t n = b.size();
    std::vector<double> d(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        d[i * n + i] = diagonal_energy(b.state(i), m);
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) d[i * n + j] = transition_amplitude(b.state(i), b.state(j), m, kind);
    }
    return d;
}

double sparse_hamiltonian::at(std::size_t r, std::size_t c) const {
    auto first = col.begin() + row_ptr[r];
    auto last = col.begin() + row_ptr[r + 1];
    auto it = std::lower_bound(first, last, static_cast<std::uint32_t>(c));
    return (it != last && *it == c) ? val[it - col.begin()] : 0.0;
}

bool sparse_hamiltonian::symmetric() const {
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t e = row_ptr[r]; e < row_ptr[r + 1]; ++e)
            if (at(col[e], r) != val[e]) return false;
    return true;
}

void matvec_serial(const sparse_hamiltonian& h, const double* x, double* y) {
    for (std::size_t r = 0; r < h.dim; ++r) {
        double acc = 0.0;
        for (std::size_t e = h.row_ptr[r]; e < h.row_ptr[r + 1]; ++e) acc += h.val[e] * x[h.col[e]];
        y[r] = acc;
    }
}

void matvec(const sparse_hamiltonian& h, const double* x, double* y) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(h.dim);
#pragma omp parallel for schedule(static) if (n > 4096)
    for (std::ptrdiff_t r = 0; r < n; ++r) {
        double acc = 0.0;
        for (std::size_t e = h.row_ptr[r]; e < h.row_ptr[r + 1]; ++e) acc += h.val[e] * x[h.col[e]];
        y[r] = acc;
    }
}

void write_coo(std::ostream& os, const sparse_hamiltonian& h) {
    char buf[96];
    for (std::size_t r = 0; r < h.dim; ++r)
        for (std::size_t e = h.row_ptr[r]; e < h.row_ptr[r + 1]; ++e) {
            std::snprintf(buf, sizeof buf, "%zu %u %.17g\n", r, h.col[e], h.val[e]);
            os << buf;
        }
}

}  // namespace gdicke
