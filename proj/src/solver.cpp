#include "gdicke/solver.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "gdicke/error.hpp"

namespace gdicke {

namespace {

void fix_sign(std::vector<double>& v) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (std::abs(v[i]) > std::abs(v[best])) best = i;
    if (!v.empty() && v[best] < 0)
        for (auto& c : v) c = -c;
}

double rayleigh(const sparse_hamiltonian& h, const Eigen::VectorXd& x, Eigen::VectorXd& hx) {
    matvec(h, x.data(), hx.data());
    return x.dot(hx);
}

}  // namespace

eigenpair lowest_dense(const sparse_hamiltonian& h) {
    const auto n = static_cast<Eigen::Index>(h.dim);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
        for (std::size_t e = h.row_ptr[r]; e < h.row_ptr[r + 1]; ++e) a(r, h.col[e]) = h.val[e];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    eigenpair out;
    out.value = es.eigenvalues()(0);
    out.vector.assign(es.eigenvectors().col(0).data(), es.eigenvectors().col(0).data() + n);
    if (n > 1) out.gap = es.eigenvalues()(1) - es.eigenvalues()(0);
    Eigen::VectorXd x = es.eigenvectors().col(0);
    Eigen::VectorXd hx(n);
    matvec(h, x.data(), hx.data());
    out.residual = (hx - out.value * x).norm();
    return out;
}

eigenpair lowest_lanczos(const sparse_hamiltonian& h, const solver_options& opts) {
    const auto n = static_cast<Eigen::Index>(h.dim);
    if (n == 0) throw error(errc::bad_size, "empty Hamiltonian");
    const Eigen::Index m = std::min<Eigen::Index>(n, std::max(2, opts.krylov));
    Eigen::MatrixXd v(n, m);
    Eigen::VectorXd start = Eigen::VectorXd::Ones(n) / std::sqrt(static_cast<double>(n));
    Eigen::VectorXd w(n);
    Eigen::VectorXd hx(n);
    std::mt19937_64 rng(0x5eed);
    std::normal_distribution<double> normal;
    eigenpair out;
    double last_residual = 0.0;
    int total = 0;

    for (int cycle = 0; cycle <= opts.max_restarts; ++cycle) {
        std::vector<double> alpha;
        std::vector<double> beta;
        v.col(0) = start;
        Eigen::VectorXd y;
        double theta = 0.0;
        double theta1 = std::numeric_limits<double>::infinity();
        Eigen::Index k = 0;
        for (Eigen::Index j = 0; j < m; ++j) {
            matvec(h, v.col(j).data(), w.data());
            ++total;
            double a = 0.0;
            for (int pass = 0; pass < 2; ++pass) {
                Eigen::VectorXd c = v.leftCols(j + 1).transpose() * w;
                w.noalias() -= v.leftCols(j + 1) * c;
                a += c(j);
            }
            alpha.push_back(a);
            k = j + 1;
            const double b = w.norm();
            const double scale = std::max(1.0, std::abs(a));
            const bool breakdown = b <= 1e-14 * scale;
            const bool check = (k % 5 == 0) || k == m || breakdown;
            if (check) {
                Eigen::VectorXd d = Eigen::Map<Eigen::VectorXd>(alpha.data(), k);
                Eigen::VectorXd e = k > 1 ? Eigen::Map<Eigen::VectorXd>(beta.data(), k - 1) : Eigen::VectorXd();
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
                tri.computeFromTridiagonal(d, e, Eigen::ComputeEigenvectors);
                theta = tri.eigenvalues()(0);
                theta1 = k > 1 ? tri.eigenvalues()(1) : std::numeric_limits<double>::infinity();
                y = tri.eigenvectors().col(0);
                const double est = b * std::abs(y(k - 1));
                if (est <= 0.1 * opts.tol * std::max(1.0, std::abs(theta)) || k == n) break;
            }
            if (j + 1 == m) break;
            if (breakdown) {
                Eigen::VectorXd r(n);
                for (Eigen::Index i = 0; i < n; ++i) r(i) = normal(rng);
                for (int pass = 0; pass < 2; ++pass) r -= v.leftCols(k) * (v.leftCols(k).transpose() * r);
                v.col(j + 1) = r.normalized();
                beta.push_back(0.0);
            } else {
                v.col(j + 1) = w / b;
                beta.push_back(b);
            }
        }
        Eigen::VectorXd x = v.leftCols(k) * y;
        x.normalize();
        const double e = rayleigh(h, x, hx);
        last_residual = (hx - e * x).norm();
        if (last_residual <= opts.tol * std::max(1.0, std::abs(e))) {
            out.value = e;
            out.vector.assign(x.data(), x.data() + n);
            out.gap = theta1 - theta;
            out.residual = last_residual;
            out.iterations = total;
            return out;
        }
        start = x;
    }
    throw error(errc::no_convergence, "Lanczos stalled at residual " + std::to_string(last_residual) + " after " +
                                          std::to_string(total) + " matvecs (dim " + std::to_string(n) + ")");
}

ground_state solve_ground(const sparse_hamiltonian& h, std::shared_ptr<const basis> space,
                          const solver_options& opts) {
    if (h.dim == 0) throw error(errc::bad_size, "empty basis");
    if (space && (space->id() != h.basis_id || space->size() != h.dim))
        throw error(errc::basis_mismatch, "Hamiltonian was assembled on a different basis");
    eigenpair p = h.dim <= opts.dense_limit ? lowest_dense(h) : lowest_lanczos(h, opts);
    ground_state g;
    g.energy = p.value;
    g.coeffs = std::move(p.vector);
    fix_sign(g.coeffs);
    g.space = std::move(space);
    g.gap = p.gap;
    g.degenerate = p.gap < opts.degeneracy_gap;
    g.residual = p.residual;
    g.iterations = p.iterations;
    return g;
}

ground_state ground_state_on(std::shared_ptr<const basis> space, const model& m, model_kind kind,
                             const solver_options& opts) {
    auto h = assemble(*space, m, kind);
    return solve_ground(h, std::move(space), opts);
}

double overlap(const ground_state& a, const ground_state& b) {
    double ov = 0.0;
    if (a.space->id() == b.space->id()) {
        for (std::size_t i = 0; i < a.coeffs.size(); ++i) ov += a.coeffs[i] * b.coeffs[i];
        return ov;
    }
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        if (auto j = b.space->find(a.space->state(i))) ov += a.coeffs[i] * b.coeffs[*j];
    return ov;
}

double fidelity(const ground_state& a, const ground_state& b) {
    const double ov = overlap(a, b);
    return std::min(1.0, ov * ov);
}

double fidelity_deficit(const ground_state& a, const ground_state& b) {
    const double sign = overlap(a, b) < 0 ? -1.0 : 1.0;
    double d = 0.0;
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
        auto j = b.space->find(a.space->state(i));
        const double diff = a.coeffs[i] - (j ? sign * b.coeffs[*j] : 0.0);
        d += diff * diff;
    }
    for (std::size_t j = 0; j < b.coeffs.size(); ++j)
        if (!a.space->contains(b.space->state(j))) d += b.coeffs[j] * b.coeffs[j];
    return std::clamp(d * (1.0 - d / 4.0), 0.0, 1.0);
}

namespace {

class two_level_ladder {
public:
    two_level_ladder(int atoms, double x, double delta, int parity, const solver_options& opts)
        : model_(model::validate(presets::two_level(atoms, x, delta))),
          sym_(find_constants(model_)),
          parity_(parity),
          opts_(opts) {
        opts_.dense_limit = std::max<std::size_t>(opts_.dense_limit, 1536);
    }

    double deficit(int cutoff) { return fidelity_deficit(at(cutoff), at(cutoff + 2)); }

private:
    const ground_state& at(int cutoff) {
        auto it = cache_.find(cutoff);
        if (it != cache_.end()) return it->second;
        truncation t{{parity_}, {cutoff}, {cutoff}, cutoff_rule::excitation};
        auto b = std::make_shared<const basis>(build_truncated(t, model_, sym_));
        return cache_.emplace(cutoff, ground_state_on(b, model_, model_kind::dicke, opts_)).first->second;
    }

    model model_;
    symmetry_set sym_;
    int parity_;
    solver_options opts_;
    std::map<int, ground_state> cache_;
};

constexpr int max_cutoff = 1 << 14;

int search_cutoff(two_level_ladder& ladder, int atoms, double x, int parity, double err) {
    auto ok = [&](int c) { return ladder.deficit(c) <= err; };
    auto with_parity = [&](int c) { return (c % 2 == parity) ? c : c + 1; };
    int m0 = with_parity(std::max(4, static_cast<int>(std::ceil(atoms * x * x))));
    int lo = parity - 2;
    int hi = m0;
    if (!ok(m0)) {
        lo = m0;
        hi = with_parity(2 * m0);
        while (!ok(hi)) {
            lo = hi;
            hi = with_parity(2 * hi);
            if (hi > max_cutoff)
                throw error(errc::no_convergence, "two-level cutoff exceeds " + std::to_string(max_cutoff));
        }
    }
    while (hi - lo > 2) {
        int mid = lo + 2 * ((hi - lo) / 4);
        if (mid <= lo) mid = lo + 2;
        if (ok(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

}  // namespace

double two_level_deficit(int atoms, double x, double delta, int parity, int cutoff, const solver_options& opts) {
    two_level_ladder ladder(atoms, x, delta, parity, opts);
    return ladder.deficit(cutoff);
}

int converge_two_level(int atoms, double x, double delta, int parity, double err, const solver_options& opts) {
    if (x < 0.0 || !(err > 0.0)) throw error(errc::bad_strength, "need x >= 0 and err > 0");
    if (!(delta > -1.0)) throw error(errc::bad_strength, "detuning must exceed -1");
    two_level_ladder even(atoms, x, delta, 0, opts);
    const int m_even = search_cutoff(even, atoms, x, 0, err);
    if (parity == 0) return m_even;
    two_level_ladder odd(atoms, x, delta, 1, opts);
    int c = m_even + 1;
    while (odd.deficit(c) > err) {
        c += 2;
        if (c > max_cutoff) throw error(errc::no_convergence, "odd two-level cutoff diverged");
    }
    return c;
}

subsystem_form to_subsystem_form(const symmetry_op& op, const model& m) {
    const auto& subs = m.subsystems();
    subsystem_form f;
    f.excitation.assign(subs.size(), 0);
    f.population = op.lambda;
    for (int s = 0; s < m.modes(); ++s) {
        if (op.eta[s] == 0) continue;
        auto it = std::find_if(subs.begin(), subs.end(), [&](const two_level_subsystem& t) { return t.s == s; });
        if (it == subs.end())
            throw error(errc::bad_config, "mode " + std::to_string(s + 1) + " drives no transition");
        f.excitation[it - subs.begin()] += op.eta[s];
        f.population[it->k] -= op.eta[s];
    }
    return f;
}

std::vector<int> assemble_kappa(std::span<const int> mbar, const model& m, const symmetry_set& sym) {
    if (mbar.size() != m.subsystems().size()) throw error(errc::bad_size, "one cutoff per subsystem expected");
    std::vector<int> kappa;
    for (const auto& op : sym.ops) {
        auto f = to_subsystem_form(op, m);
        int k = m.atoms() * *std::max_element(f.population.begin(), f.population.end());
        for (std::size_t c = 0; c < mbar.size(); ++c) k += f.excitation[c] * mbar[c];
        kappa.push_back(k);
    }
    return kappa;
}

std::vector<int> subsystem_parities(const model& m, const symmetry_set& sym, std::span<const int> sigma) {
    std::vector<int> out;
    for (const auto& sub : m.subsystems()) {
        symmetry_op form{std::vector<int>(m.modes(), 0), std::vector<int>(m.levels(), 0)};
        form.eta[sub.s] = 1;
        form.lambda[sub.k] = 1;
        auto p = form_parity(sym, form, sigma, m.atoms());
        out.push_back(p ? *p : -1);
    }
    return out;
}

std::vector<int> subsystem_cutoffs(const model& m, const symmetry_set& sym, std::span<const int> sigma, double err,
                                   cutoff_policy policy, const solver_options& opts) {
    auto parity = subsystem_parities(m, sym, sigma);
    std::vector<int> mbar;
    for (std::size_t c = 0; c < parity.size(); ++c) {
        const bool free = parity[c] < 0;
        int v = converge_two_level(m.atoms(), m.x(c), m.subsystems()[c].delta, free ? 0 : parity[c], err, opts);
        if (free && policy == cutoff_policy::parity_cover) ++v;
        mbar.push_back(v);
    }
    return mbar;
}

convergence_report converge_full(const model& m, const symmetry_set& sym, std::span<const int> sigma,
                                 const convergence_options& opts) {
    convergence_report rep;
    rep.sigma.assign(sigma.begin(), sigma.end());
    rep.err = opts.err;
    rep.mbar = subsystem_cutoffs(m, sym, sigma, opts.err, opts.policy, opts.solver);
    auto solve_at = [&](const std::vector<int>& mbar) {
        truncation t{rep.sigma, assemble_kappa(mbar, m, sym), mbar, opts.rule};
        auto b = std::make_shared<const basis>(build_truncated(t, m, sym));
        return ground_state_on(b, m, opts.kind, opts.solver);
    };
    auto bumped = [](std::vector<int> v) {
        for (auto& c : v) c += 2;
        return v;
    };
    ground_state cur = solve_at(rep.mbar);
    for (int it = 1; it <= opts.max_iterations; ++it) {
        auto next_mbar = bumped(rep.mbar);
        ground_state next = solve_at(next_mbar);
        rep.iterations = it;
        rep.deficit = fidelity_deficit(cur, next);
        rep.kappa = assemble_kappa(rep.mbar, m, sym);
        rep.dim = cur.space->size();
        rep.probe_dim = next.space->size();
        if (rep.deficit <= opts.err) return rep;
        rep.mbar = next_mbar;
        cur = std::move(next);
    }
    throw error(errc::no_convergence, "global fidelity criterion not met after " +
                                          std::to_string(opts.max_iterations) + " probes");
}

bool lower_energy(double candidate, double best, double tie) {
    return candidate < best - tie * std::max(1.0, std::abs(best));
}

sector_scan ground_over_sectors(const model& m, model_kind kind, const std::vector<std::vector<int>>& labels,
                                const basis_builder& build, const solver_options& opts, double tie) {
    sector_scan scan;
    bool have = false;
    for (const auto& label : labels) {
        auto b = build(label);
        if (!b || b->empty()) continue;
        auto g = ground_state_on(b, m, kind, opts);
        scan.all.push_back({label, g.energy, b->size()});
        if (!have || lower_energy(g.energy, scan.best.energy, tie)) {
            scan.best = std::move(g);
            scan.best_label = label;
            have = true;
        }
    }
    if (!have) throw error(errc::bad_size, "no nonempty sector");
    return scan;
}

sector_scan ground_over_kappa(const model& m, const symmetry_set& sym, std::span<const int> bound,
                              const solver_options& opts, double tie) {
    auto blocks = rwa_sectors_upto(bound, m, sym);
    std::vector<std::vector<int>> labels;
    std::map<std::vector<int>, std::shared_ptr<const basis>> by_label;
    for (auto& b : blocks) {
        auto k = b.meta().kappa;
        labels.push_back(k);
        by_label.emplace(std::move(k), std::make_shared<const basis>(std::move(b)));
    }
    return ground_over_sectors(m, model_kind::tavis_cummings, labels,
                               [&](const std::vector<int>& k) { return by_label.at(k); }, opts, tie);
}

std::vector<int> tc_kappa_bound(const model& m, const symmetry_set& sym, double err, const solver_options& opts) {
    std::vector<int> even(sym.zeta0(), 0);
    auto mbar = subsystem_cutoffs(m, sym, even, err, cutoff_policy::sector_parity, opts);
    auto k = assemble_kappa(mbar, m, sym);
    for (auto& v : k) v *= 2;
    return k;
}

}  // namespace gdicke
