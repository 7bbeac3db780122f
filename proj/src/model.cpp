#include "gdicke/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>
#include <utility>

#include "gdicke/error.hpp"

namespace gdicke {

namespace {

constexpr double norm_tol = 1e-12;

void require(bool ok, errc code, const std::string& msg) {
    if (!ok) throw error(code, msg);
}

int find_root(std::vector<int>& parent, int v) {
    while (parent[v] != v) {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    return v;
}

std::vector<matter_component> mode_components(const model_config& cfg) {
    std::vector<matter_component> out;
    for (int s = 0; s < cfg.ell; ++s) {
        std::vector<int> parent(cfg.n);
        std::iota(parent.begin(), parent.end(), 0);
        std::vector<bool> touched(cfg.n, false);
        for (const auto& c : cfg.couplings) {
            if (c.s != s) continue;
            touched[c.j] = touched[c.k] = true;
            parent[find_root(parent, c.j)] = find_root(parent, c.k);
        }
        std::vector<int> roots;
        for (int v = 0; v < cfg.n; ++v) {
            if (!touched[v]) continue;
            int r = find_root(parent, v);
            auto it = std::find(roots.begin(), roots.end(), r);
            if (it == roots.end()) {
                roots.push_back(r);
                out.push_back({s, {v}});
            } else {
                out[out.size() - roots.size() + (it - roots.begin())].levels.push_back(v);
            }
        }
    }
    return out;
}

}  // namespace

double coupling_value(const coupling_spec& spec, const two_level_subsystem& sub) {
    return spec.kind == strength_kind::scaled ? spec.strength * sub.mu_bar : spec.strength;
}

model model::validate(const model_config& input) {
    model_config cfg = input;
    require(cfg.n >= 2, errc::bad_size, "level count must be at least 2");
    require(cfg.ell >= 1, errc::bad_size, "mode count must be at least 1");
    require(cfg.atoms >= 1, errc::bad_size, "particle count must be at least 1");
    require(static_cast<int>(cfg.omega.size()) == cfg.n, errc::bad_size,
            "expected " + std::to_string(cfg.n) + " level energies");
    require(static_cast<int>(cfg.Omega.size()) == cfg.ell, errc::bad_size,
            "expected " + std::to_string(cfg.ell) + " mode frequencies");

    for (int k = 1; k < cfg.n; ++k)
        require(cfg.omega[k] >= cfg.omega[k - 1], errc::non_monotone_levels,
                "level energies must be nondecreasing");

    bool normalized = std::abs(cfg.omega.front()) <= norm_tol &&
                      std::abs(cfg.omega.back() - 1.0) <= norm_tol;
    if (!normalized) {
        double span = cfg.omega.back() - cfg.omega.front();
        require(cfg.rescale && span > 0.0, errc::bad_normalization,
                "level energies must run from 0 to 1 (enable rescale to convert)");
        double base = cfg.omega.front();
        for (auto& w : cfg.omega) w = (w - base) / span;
        for (auto& w : cfg.Omega) w /= span;
        for (auto& c : cfg.couplings)
            if (c.kind == strength_kind::raw) c.strength /= span;
        cfg.omega.front() = 0.0;
        cfg.omega.back() = 1.0;
    }
    cfg.rescale = false;
    for (double w : cfg.Omega)
        require(w > 0.0 && std::isfinite(w), errc::bad_strength, "mode frequencies must be positive");

    std::set<std::pair<int, int>> pairs;
    for (auto& c : cfg.couplings) {
        require(c.j >= 0 && c.j < cfg.n && c.k >= 0 && c.k < cfg.n && c.j != c.k, errc::bad_index,
                "coupling level index out of range");
        require(c.s >= 0 && c.s < cfg.ell, errc::bad_index, "coupling mode index out of range");
        if (c.j > c.k) std::swap(c.j, c.k);
        require(c.strength >= 0.0 && std::isfinite(c.strength), errc::bad_strength,
                "coupling strength must be nonnegative");
        require(pairs.insert({c.j, c.k}).second, errc::duplicate_transition,
                "levels " + std::to_string(c.j + 1) + "," + std::to_string(c.k + 1) +
                    " are driven by more than one coupling");
        require(cfg.omega[c.k] - cfg.omega[c.j] > 0.0, errc::degenerate_pair,
                "levels " + std::to_string(c.j + 1) + "," + std::to_string(c.k + 1) +
                    " are degenerate");
    }
    if (cfg.ell0) require(*cfg.ell0 >= 1, errc::bad_size, "subsystem count must be positive");

    model m;
    m.cfg_ = cfg;
    for (const auto& c : cfg.couplings) {
        two_level_subsystem sub;
        sub.j = c.j;
        sub.k = c.k;
        sub.s = c.s;
        sub.omega_jk = cfg.omega[c.k] - cfg.omega[c.j];
        sub.mu_bar = 0.5 * std::sqrt(cfg.Omega[c.s] * sub.omega_jk);
        sub.delta = cfg.Omega[c.s] / sub.omega_jk - 1.0;
        m.subs_.push_back(sub);
        m.mu_.push_back(coupling_value(c, sub));
    }
    m.comps_ = mode_components(cfg);
    m.ell0_ = cfg.ell0 ? *cfg.ell0 : std::max<int>(1, static_cast<int>(m.comps_.size()));
    return m;
}

double model::x(std::size_t c) const {
    const auto& spec = cfg_.couplings[c];
    return spec.kind == strength_kind::scaled ? spec.strength : spec.strength / subs_[c].mu_bar;
}

model model::with_x(const std::vector<double>& x) const {
    require(x.size() == cfg_.couplings.size(), errc::bad_size, "one strength per coupling expected");
    model_config cfg = cfg_;
    for (std::size_t c = 0; c < x.size(); ++c) {
        cfg.couplings[c].strength = x[c];
        cfg.couplings[c].kind = strength_kind::scaled;
    }
    return validate(cfg);
}

std::vector<two_level_subsystem> subsystems(const model& m) { return m.subsystems(); }

namespace presets {

model_config two_level(int atoms, double x, double delta) {
    model_config cfg;
    cfg.n = 2;
    cfg.ell = 1;
    cfg.atoms = atoms;
    cfg.omega = {0.0, 1.0};
    cfg.Omega = {1.0 + delta};
    cfg.couplings = {{0, 1, 0, x, strength_kind::scaled}};
    return cfg;
}

model_config xi(int atoms, double x12, double x23, double omega2) {
    model_config cfg;
    cfg.n = 3;
    cfg.ell = 2;
    cfg.atoms = atoms;
    cfg.omega = {0.0, omega2, 1.0};
    cfg.Omega = {omega2, 1.0 - omega2};
    cfg.couplings = {{0, 1, 0, x12, strength_kind::scaled}, {1, 2, 1, x23, strength_kind::scaled}};
    return cfg;
}

model_config lambda(int atoms, double x13, double x23, double omega2) {
    model_config cfg;
    cfg.n = 3;
    cfg.ell = 2;
    cfg.atoms = atoms;
    cfg.omega = {0.0, omega2, 1.0};
    cfg.Omega = {1.0, 1.0 - omega2};
    cfg.couplings = {{0, 2, 0, x13, strength_kind::scaled}, {1, 2, 1, x23, strength_kind::scaled}};
    return cfg;
}

model_config vee(int atoms, double x12, double x13, double omega2) {
    model_config cfg;
    cfg.n = 3;
    cfg.ell = 2;
    cfg.atoms = atoms;
    cfg.omega = {0.0, omega2, 1.0};
    cfg.Omega = {omega2, 1.0};
    cfg.couplings = {{0, 1, 0, x12, strength_kind::scaled}, {0, 2, 1, x13, strength_kind::scaled}};
    return cfg;
}

}  // namespace presets

}  // namespace gdicke
