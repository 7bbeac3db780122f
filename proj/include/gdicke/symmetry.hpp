#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gdicke/model.hpp"

namespace gdicke {

struct symmetry_op {
    std::vector<int> eta;
    std::vector<int> lambda;

    bool operator==(const symmetry_op&) const = default;
};

struct symmetry_set {
    std::vector<symmetry_op> ops;
    int rank = 0;

    int zeta0() const { return static_cast<int>(ops.size()); }
    int sector_count() const { return 1 << zeta0(); }
};

struct parity_sector {
    std::vector<int> sigma;
    std::vector<int> kappa_min;
    bool realizable = true;

    std::string label() const;
};

// States are laid out as (nu_1..nu_ell, a_1..a_n).
symmetry_set find_constants(const model& m);

std::vector<int> eval_k(const symmetry_set& sym, std::span<const int> state);
std::vector<int> parity_of(std::span<const int> k);

std::vector<parity_sector> sectors(const symmetry_set& sym, const model& m);

// True when op is an integer combination of sym.ops and the particle-number operator.
bool in_span(const symmetry_set& sym, const symmetry_op& op);

// Parity of the linear form sum eta_s nu_s + sum lambda_k a_k inside sector sigma,
// or nothing when sigma does not fix it.
std::optional<int> form_parity(const symmetry_set& sym, const symmetry_op& form,
                               std::span<const int> sigma, int atoms);

std::vector<int> parse_sigma(const std::string& label);
std::string sigma_label(std::span<const int> sigma);

}  // namespace gdicke
