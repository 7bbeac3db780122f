#include "gdicke/basis.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <numeric>
#include <string>

#include "gdicke/error.hpp"

namespace gdicke {

namespace {

std::atomic<std::uint64_t> next_basis_id{1};

// Calls f(nu) for every photon vector with nu[s] <= ub[s], lexicographic.
template <class F>
void for_each_box(const std::vector<int>& ub, F&& f) {
    std::vector<int> nu(ub.size(), 0);
    for (int v : ub)
        if (v < 0) return;
    while (true) {
        f(nu);
        int s = static_cast<int>(nu.size()) - 1;
        while (s >= 0) {
            if (++nu[s] <= ub[s]) break;
            nu[s] = 0;
            --s;
        }
        if (s < 0) return;
    }
}

// Photon-number bounds implied by kappa (nonnegative ops) and per-subsystem cutoffs.
std::vector<int> photon_bounds(const model& m, const symmetry_set& sym, std::span<const int> kappa,
                               std::span<const int> mbar) {
    const int ell = m.modes();
    std::vector<int> ub(ell, -1);
    auto tighten = [&](int s, int v) { ub[s] = ub[s] < 0 ? v : std::min(ub[s], v); };
    if (!kappa.empty()) {
        for (std::size_t z = 0; z < sym.ops.size(); ++z) {
            const auto& op = sym.ops[z];
            bool nonneg = std::all_of(op.eta.begin(), op.eta.end(), [](int v) { return v >= 0; }) &&
                          std::all_of(op.lambda.begin(), op.lambda.end(), [](int v) { return v >= 0; });
            if (!nonneg) continue;
            for (int s = 0; s < ell; ++s)
                if (op.eta[s] > 0) tighten(s, std::max(0, kappa[z]) / op.eta[s]);
        }
    }
    const auto& subs = m.subsystems();
    for (std::size_t c = 0; c < mbar.size() && c < subs.size(); ++c) tighten(subs[c].s, mbar[c]);
    for (int s = 0; s < ell; ++s)
        if (ub[s] < 0) throw error(errc::bad_config, "photon number of mode " + std::to_string(s + 1) + " is unbounded");
    return ub;
}

template <class P>
std::vector<int> collect(const model& m, const std::vector<int>& ub, P&& keep) {
    const int ell = m.modes();
    std::vector<int> flat;
    std::vector<int> state(m.width());
    auto matter = enumerate_matter(m.atoms(), m.levels());
    for (const auto& a : matter) {
        std::copy(a.begin(), a.end(), state.begin() + ell);
        for_each_box(ub, [&](const std::vector<int>& nu) {
            std::copy(nu.begin(), nu.end(), state.begin());
            if (keep(std::span<const int>(state))) flat.insert(flat.end(), state.begin(), state.end());
        });
    }
    return flat;
}

void check_truncation(const truncation& t, const model& m, const symmetry_set& sym) {
    if (static_cast<int>(t.sigma.size()) != sym.zeta0() || static_cast<int>(t.kappa.size()) != sym.zeta0())
        throw error(errc::bad_size, "sigma and kappa need one entry per constant of motion");
    if (t.mbar.size() != m.subsystems().size())
        throw error(errc::bad_size, "one cutoff per subsystem expected");
}

long long g(long long x) { return x * (x + 1) / 2; }
long long h(long long x, long long y) { return (x + 1) * (y + 1) - g(x); }

}  // namespace

basis::basis(int ell, int n, std::vector<int> flat, basis_meta meta)
    : ell_(ell), n_(n), meta_(std::move(meta)), id_(next_basis_id++) {
    const int w = ell + n;
    const std::size_t count = flat.size() / w;
    max_.assign(w, 0);
    for (std::size_t i = 0; i < count; ++i)
        for (int c = 0; c < w; ++c) max_[c] = std::max(max_[c], flat[i * w + c]);
    radix_.assign(w, 1);
    unsigned __int128 acc = 1;
    for (int c = w - 1; c >= 0; --c) {
        radix_[c] = static_cast<std::uint64_t>(acc);
        acc *= static_cast<unsigned __int128>(max_[c] + 1);
        if (acc >> 64) throw error(errc::bad_size, "basis too large for 64-bit state keys");
    }
    std::vector<std::uint64_t> keys(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::uint64_t k = 0;
        for (int c = 0; c < w; ++c) k += radix_[c] * static_cast<std::uint64_t>(flat[i * w + c]);
        keys[i] = k;
    }
    std::vector<std::size_t> order(count);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return keys[x] < keys[y]; });
    flat_.reserve(flat.size());
    for (std::size_t i : order) {
        if (!keys_.empty() && keys_.back() == keys[i]) continue;
        keys_.push_back(keys[i]);
        flat_.insert(flat_.end(), flat.begin() + i * w, flat.begin() + (i + 1) * w);
    }
}

std::optional<std::uint64_t> basis::key(std::span<const int> s) const {
    if (static_cast<int>(s.size()) != width() || keys_.empty()) return std::nullopt;
    std::uint64_t k = 0;
    for (int c = 0; c < width(); ++c) {
        if (s[c] < 0 || s[c] > max_[c]) return std::nullopt;
        k += radix_[c] * static_cast<std::uint64_t>(s[c]);
    }
    return k;
}

std::optional<std::size_t> basis::find(std::span<const int> s) const {
    auto k = key(s);
    if (!k) return std::nullopt;
    auto it = std::lower_bound(keys_.begin(), keys_.end(), *k);
    if (it == keys_.end() || *it != *k) return std::nullopt;
    return static_cast<std::size_t>(it - keys_.begin());
}

std::vector<std::vector<int>> enumerate_matter(int atoms, int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> a(n, 0);
    auto rec = [&](auto&& self, int pos, int left) -> void {
        if (pos == n - 1) {
            a[pos] = left;
            out.push_back(a);
            return;
        }
        for (int v = left; v >= 0; --v) {
            a[pos] = v;
            self(self, pos + 1, left - v);
        }
    };
    rec(rec, 0, atoms);
    return out;
}

int subset_index(const model& m, std::span<const int> a) {
    int best = 0;
    for (const auto& comp : m.components()) {
        int held = 0;
        for (int k : comp.levels) held += a[k];
        best = std::max(best, held);
    }
    return m.atoms() - best;
}

int matter_order_max(const model& m) {
    int r = 0;
    for (const auto& a : enumerate_matter(m.atoms(), m.levels())) r = std::max(r, subset_index(m, a));
    return r;
}

std::vector<std::vector<int>> matter_subset(int r, const model& m) {
    if (r < 0 || r > matter_order_max(m))
        throw error(errc::order_out_of_range, "matter subset index " + std::to_string(r));
    std::vector<std::vector<int>> out;
    for (auto& a : enumerate_matter(m.atoms(), m.levels()))
        if (subset_index(m, a) == r) out.push_back(std::move(a));
    return out;
}

std::vector<std::vector<int>> matter_order(int o1, const model& m) {
    if (o1 < 0) throw error(errc::order_out_of_range, "negative matter order");
    o1 = std::min(o1, matter_order_max(m));
    std::vector<std::vector<int>> out;
    for (auto& a : enumerate_matter(m.atoms(), m.levels()))
        if (subset_index(m, a) <= o1) out.push_back(std::move(a));
    return out;
}

int field_order_max(int nu0) { return nu0 / 2; }

bool in_field_order(std::span<const int> nu, int o2, int nu0) {
    const int cap = 2 * o2 + 1;
    int wide = 0;
    for (int v : nu) {
        if (v > nu0) return false;
        if (v > cap) ++wide;
    }
    return wide <= 1;
}

std::vector<std::vector<int>> field_order(int o2, int nu0, int ell) {
    if (o2 < 0 || o2 > field_order_max(nu0))
        throw error(errc::order_out_of_range, "field order " + std::to_string(o2));
    std::vector<std::vector<int>> out;
    for_each_box(std::vector<int>(ell, nu0), [&](const std::vector<int>& nu) {
        if (in_field_order(nu, o2, nu0)) out.push_back(nu);
    });
    return out;
}

long long field_order_size(int o2, int nu0, int ell) {
    if (o2 < 0 || o2 > field_order_max(nu0))
        throw error(errc::order_out_of_range, "field order " + std::to_string(o2));
    long long cap = std::min<long long>(2 * o2 + 1, nu0);
    long long narrow = 1;
    for (int i = 0; i < ell - 1; ++i) narrow *= cap + 1;
    return narrow * (cap + 1) + ell * (nu0 - cap) * narrow;
}

basis enumerate_rwa_sector(std::span<const int> kappa, const model& m, const symmetry_set& sym) {
    if (static_cast<int>(kappa.size()) != sym.zeta0())
        throw error(errc::bad_size, "kappa needs one entry per constant of motion");
    std::vector<int> target(kappa.begin(), kappa.end());
    auto ub = photon_bounds(m, sym, kappa, {});
    auto flat = collect(m, ub, [&](std::span<const int> s) { return eval_k(sym, s) == target; });
    basis_meta meta;
    meta.kind = basis_kind::rwa_sector;
    meta.kappa = target;
    meta.sigma = parity_of(target);
    return basis(m.modes(), m.levels(), std::move(flat), meta);
}

std::vector<basis> rwa_sectors_upto(std::span<const int> bound, const model& m, const symmetry_set& sym) {
    if (static_cast<int>(bound.size()) != sym.zeta0())
        throw error(errc::bad_size, "bound needs one entry per constant of motion");
    auto ub = photon_bounds(m, sym, bound, {});
    std::map<std::vector<int>, std::vector<int>> groups;
    std::vector<int> state(m.width());
    for (const auto& a : enumerate_matter(m.atoms(), m.levels())) {
        std::copy(a.begin(), a.end(), state.begin() + m.modes());
        for_each_box(ub, [&](const std::vector<int>& nu) {
            std::copy(nu.begin(), nu.end(), state.begin());
            auto k = eval_k(sym, state);
            for (std::size_t z = 0; z < k.size(); ++z)
                if (k[z] > bound[z]) return;
            auto& flat = groups[k];
            flat.insert(flat.end(), state.begin(), state.end());
        });
    }
    std::vector<basis> out;
    for (auto& [k, flat] : groups) {
        basis_meta meta;
        meta.kind = basis_kind::rwa_sector;
        meta.kappa = k;
        meta.sigma = parity_of(k);
        out.emplace_back(m.modes(), m.levels(), std::move(flat), meta);
    }
    return out;
}

long long dim_lambda(int na, int k1, int k2) {
    if (k1 < 0 || k2 < 0 || k2 > k1 + na) return 0;
    if (na < k2 && k1 <= k2) return g(na + k1 - k2 + 1);
    if (k2 <= na && k1 <= k2) return g(k1 + 1);
    if (k2 <= na && k2 < k1) return g(k2 + 1);
    return g(na + 1);
}

long long dim_xi(int na, int k1, int k2) {
    if (k1 < 0 || k2 < 0 || k2 > k1) return 0;
    if (k1 - k2 <= na && k1 <= 2 * k2) return g(k1 - k2 + 1);
    if (k1 - k2 <= na && 2 * k2 < k1) return g(k1 + 1) - g(k1 - k2) - 2 * g(k2);
    if (na < k1 - k2 && k2 < na) return g(na + 1) - g(na - k2);
    return g(na + 1);
}

long long dim_v(int na, int k1, int k2) {
    if (k1 < 0 || k2 < 0 || k2 > k1) return 0;
    if (k1 <= na) return static_cast<long long>(k2 + 1) * (k1 - k2 + 1);
    bool mid = na < k1 && k1 < 2 * na;
    if ((2 * na <= k1 && k2 <= na) || (mid && na < k1 - k2)) return h(k2, na);
    if ((mid && na < k2) || (2 * na <= k1 && k1 - k2 <= na)) return h(k1 - k2, na);
    if (mid && k2 <= na && k1 - k2 <= na) return static_cast<long long>(k1 - k2) * k2 + h(na, k1) - g(k1);
    return g(na + 1);
}

bool admits(const truncation& t, const model& m, const symmetry_set& sym, std::span<const int> state) {
    auto k = eval_k(sym, state);
    for (std::size_t z = 0; z < k.size(); ++z)
        if (k[z] > t.kappa[z] || ((k[z] - t.sigma[z]) % 2 + 2) % 2 != 0) return false;
    const auto& subs = m.subsystems();
    const int ell = m.modes();
    for (std::size_t c = 0; c < subs.size(); ++c) {
        int v = state[subs[c].s];
        if (t.rule == cutoff_rule::excitation) v += state[ell + subs[c].k];
        if (v > t.mbar[c]) return false;
    }
    return true;
}

basis build_truncated(const truncation& t, const model& m, const symmetry_set& sym) {
    check_truncation(t, m, sym);
    auto ub = photon_bounds(m, sym, t.kappa, t.mbar);
    auto flat = collect(m, ub, [&](std::span<const int> s) { return admits(t, m, sym, s); });
    basis_meta meta;
    meta.kind = basis_kind::truncated;
    meta.sigma = t.sigma;
    meta.kappa = t.kappa;
    meta.mbar = t.mbar;
    meta.rule = t.rule;
    meta.nu0 = t.kappa.empty() ? 0 : *std::max_element(t.kappa.begin(), t.kappa.end());
    return basis(m.modes(), m.levels(), std::move(flat), meta);
}

basis build_reduced(const truncation& t, int o1, int o2, const model& m, const symmetry_set& sym) {
    check_truncation(t, m, sym);
    if (o1 < 0 || o2 < 0) throw error(errc::order_out_of_range, "negative reduction order");
    const int nu0 = std::max(0, *std::max_element(t.kappa.begin(), t.kappa.end()));
    o1 = std::min(o1, matter_order_max(m));
    o2 = std::min(o2, field_order_max(nu0));
    const int ell = m.modes();
    auto ub = photon_bounds(m, sym, t.kappa, t.mbar);
    auto flat = collect(m, ub, [&](std::span<const int> s) {
        return subset_index(m, s.subspan(ell)) <= o1 && in_field_order(s.first(ell), o2, nu0) &&
               admits(t, m, sym, s);
    });
    basis_meta meta;
    meta.kind = basis_kind::reduced;
    meta.sigma = t.sigma;
    meta.kappa = t.kappa;
    meta.mbar = t.mbar;
    meta.rule = t.rule;
    meta.o1 = o1;
    meta.o2 = o2;
    meta.nu0 = nu0;
    return basis(m.modes(), m.levels(), std::move(flat), meta);
}

long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

double estimate_dimension(std::span<const int> mbar, int atoms, int n, int sector_count) {
    double p = 1.0;
    for (int v : mbar) p *= v + 1.0;
    return p * static_cast<double>(binomial(atoms + n - 1, n - 1)) / sector_count;
}

}  // namespace gdicke
