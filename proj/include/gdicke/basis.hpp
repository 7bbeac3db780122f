#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gdicke/model.hpp"
#include "gdicke/symmetry.hpp"

namespace gdicke {

enum class basis_kind { rwa_sector, truncated, reduced, custom };

// Per-subsystem restriction used by truncated bases: the subsystem excitation
// nu_s + a_k (excitation) or the photon number nu_s alone (photon).
enum class cutoff_rule { excitation, photon };

struct basis_meta {
    basis_kind kind = basis_kind::custom;
    std::vector<int> sigma;
    std::vector<int> kappa;
    std::vector<int> mbar;
    cutoff_rule rule = cutoff_rule::excitation;
    int o1 = -1;
    int o2 = -1;
    int nu0 = 0;
};

class basis {
public:
    basis() = default;
    // Takes states in any order; sorts lexicographically and drops duplicates.
    basis(int ell, int n, std::vector<int> flat, basis_meta meta = {});

    std::size_t size() const { return keys_.size(); }
    bool empty() const { return keys_.empty(); }
    int modes() const { return ell_; }
    int levels() const { return n_; }
    int width() const { return ell_ + n_; }
    std::uint64_t id() const { return id_; }
    const basis_meta& meta() const { return meta_; }

    std::span<const int> state(std::size_t i) const {
        return {flat_.data() + i * width(), static_cast<std::size_t>(width())};
    }
    std::optional<std::size_t> find(std::span<const int> s) const;
    bool contains(std::span<const int> s) const { return find(s).has_value(); }

private:
    std::optional<std::uint64_t> key(std::span<const int> s) const;

    int ell_ = 0;
    int n_ = 0;
    std::vector<int> flat_;
    std::vector<std::uint64_t> keys_;
    std::vector<std::uint64_t> radix_;
    std::vector<int> max_;
    basis_meta meta_;
    std::uint64_t id_ = 0;
};

std::vector<std::vector<int>> enumerate_matter(int atoms, int n);

// Largest subset index r realised by the matter space; floor(N_a/ell0) for ell0 <= 2.
int matter_order_max(const model& m);
// r = N_a - max over subsystems of the particle number held by that subsystem.
int subset_index(const model& m, std::span<const int> a);
std::vector<std::vector<int>> matter_subset(int r, const model& m);
std::vector<std::vector<int>> matter_order(int o1, const model& m);

int field_order_max(int nu0);
bool in_field_order(std::span<const int> nu, int o2, int nu0);
std::vector<std::vector<int>> field_order(int o2, int nu0, int ell);
long long field_order_size(int o2, int nu0, int ell);

basis enumerate_rwa_sector(std::span<const int> kappa, const model& m, const symmetry_set& sym);

// All RWA sectors with kappa <= bound componentwise, in lexicographic kappa order.
std::vector<basis> rwa_sectors_upto(std::span<const int> bound, const model& m, const symmetry_set& sym);

long long dim_lambda(int atoms, int k1, int k2);
long long dim_xi(int atoms, int k1, int k2);
long long dim_v(int atoms, int k1, int k2);

struct truncation {
    std::vector<int> sigma;
    std::vector<int> kappa;
    std::vector<int> mbar;
    cutoff_rule rule = cutoff_rule::excitation;
};

bool admits(const truncation& t, const model& m, const symmetry_set& sym, std::span<const int> state);

basis build_truncated(const truncation& t, const model& m, const symmetry_set& sym);
basis build_reduced(const truncation& t, int o1, int o2, const model& m, const symmetry_set& sym);

double estimate_dimension(std::span<const int> mbar, int atoms, int n, int sector_count);

long long binomial(int n, int k);

}  // namespace gdicke
