#pragma once

#include <optional>
#include <vector>

namespace gdicke {

enum class strength_kind { raw, scaled };

// Levels and modes are 0-based here; config files use 1-based indices.
struct coupling_spec {
    int j = 0;
    int k = 1;
    int s = 0;
    double strength = 0.0;
    strength_kind kind = strength_kind::scaled;

    bool operator==(const coupling_spec&) const = default;
};

struct model_config {
    int n = 0;
    int ell = 0;
    int atoms = 0;
    std::vector<double> omega;
    std::vector<double> Omega;
    std::vector<coupling_spec> couplings;
    std::optional<int> ell0;
    bool rescale = false;

    bool operator==(const model_config&) const = default;
};

struct two_level_subsystem {
    int j = 0;
    int k = 1;
    int s = 0;
    double omega_jk = 0.0;
    double mu_bar = 0.0;
    double delta = 0.0;
};

// Levels joined by couplings of a single mode.
struct matter_component {
    int s = 0;
    std::vector<int> levels;
};

double coupling_value(const coupling_spec& spec, const two_level_subsystem& sub);

class model {
public:
    static model validate(const model_config& cfg);

    const model_config& config() const { return cfg_; }
    int levels() const { return cfg_.n; }
    int modes() const { return cfg_.ell; }
    int atoms() const { return cfg_.atoms; }
    int width() const { return cfg_.n + cfg_.ell; }
    int ell0() const { return ell0_; }

    const std::vector<two_level_subsystem>& subsystems() const { return subs_; }
    const std::vector<matter_component>& components() const { return comps_; }

    // Raw coupling of the c-th coupling spec.
    double mu(std::size_t c) const { return mu_[c]; }
    // Dimensionless coupling of the c-th coupling spec.
    double x(std::size_t c) const;

    // Copy with the dimensionless strength of each coupling replaced.
    model with_x(const std::vector<double>& x) const;

    bool operator==(const model& o) const { return cfg_ == o.cfg_; }

private:
    model_config cfg_;
    std::vector<two_level_subsystem> subs_;
    std::vector<matter_component> comps_;
    std::vector<double> mu_;
    int ell0_ = 0;
};

std::vector<two_level_subsystem> subsystems(const model& m);

namespace presets {

model_config two_level(int atoms, double x, double delta = 0.0);
// Ladder 1-2-3 driven by modes 1 and 2.
model_config xi(int atoms, double x12, double x23, double omega2 = 0.25);
// Upper level 3 reached from 1 (mode 1) and 2 (mode 2).
model_config lambda(int atoms, double x13, double x23, double omega2 = 0.25);
// Lower level 1 coupled to 2 (mode 1) and 3 (mode 2).
model_config vee(int atoms, double x12, double x13, double omega2 = 0.25);

}  // namespace presets

}  // namespace gdicke
