#pragma once

#include <vector>

#include "gdicke/solver.hpp"

namespace gdicke {

struct observable_set {
    double energy = 0.0;
    std::vector<double> photon_mean;
    std::vector<double> photon_var;
    std::vector<double> population;

    double photon_std(std::size_t s) const;
};

struct error_metrics {
    double delta_energy = 0.0;
    std::vector<double> delta_fluct;
};

observable_set expectations(const ground_state& g);

// Energies with magnitude at or below zero_tol count as zero, giving delta_energy = 0.
inline constexpr double default_zero_tol = 1e-10;
error_metrics compare(double ref_energy, const observable_set& ref, double red_energy, const observable_set& red,
                      double zero_tol = default_zero_tol);
error_metrics compare(const ground_state& ref, const ground_state& red, double zero_tol = default_zero_tol);

struct separatrix_options {
    double threshold = 0.99;
};

// Grid is row-major with the first axis fastest: point (i, j) sits at j * nx + i.
// Returns one flag per point.
std::vector<bool> separatrix(const std::vector<ground_state>& grid, std::size_t nx, std::size_t ny,
                             const separatrix_options& opts = {});
std::vector<bool> separatrix_from_bonds(const std::vector<double>& fx, const std::vector<double>& fy, std::size_t nx,
                                        std::size_t ny, const separatrix_options& opts = {});

// One-dimensional variant: bonds[b] is the fidelity between points b and b+1.
std::vector<bool> separatrix_line(const std::vector<double>& bonds, const separatrix_options& opts = {});

}  // namespace gdicke
