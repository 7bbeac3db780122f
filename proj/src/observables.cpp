#include "gdicke/observables.hpp"

#include <cmath>

#include "gdicke/error.hpp"

namespace gdicke {

double observable_set::photon_std(std::size_t s) const { return std::sqrt(std::max(0.0, photon_var[s])); }

observable_set expectations(const ground_state& g) {
    const auto& b = *g.space;
    const int ell = b.modes();
    const int n = b.levels();
    observable_set o;
    o.energy = g.energy;
    o.photon_mean.assign(ell, 0.0);
    o.photon_var.assign(ell, 0.0);
    o.population.assign(n, 0.0);
    std::vector<double> second(ell, 0.0);
    for (std::size_t i = 0; i < b.size(); ++i) {
        const double p = g.coeffs[i] * g.coeffs[i];
        auto st = b.state(i);
        for (int s = 0; s < ell; ++s) {
            o.photon_mean[s] += p * st[s];
            second[s] += p * st[s] * st[s];
        }
        for (int k = 0; k < n; ++k) o.population[k] += p * st[ell + k];
    }
    for (int s = 0; s < ell; ++s) o.photon_var[s] = std::max(0.0, second[s] - o.photon_mean[s] * o.photon_mean[s]);
    return o;
}

error_metrics compare(double ref_energy, const observable_set& ref, double red_energy, const observable_set& red,
                      double zero_tol) {
    error_metrics e;
    e.delta_energy = std::abs(ref_energy) <= zero_tol ? 0.0 : std::abs((ref_energy - red_energy) / ref_energy);
    for (std::size_t s = 0; s < ref.photon_var.size(); ++s)
        e.delta_fluct.push_back(std::abs(ref.photon_std(s) - red.photon_std(s)));
    return e;
}

error_metrics compare(const ground_state& ref, const ground_state& red, double zero_tol) {
    return compare(ref.energy, expectations(ref), red.energy, expectations(red), zero_tol);
}

namespace {

// Marks both ends of every bond that is a strict local minimum below threshold.
template <class Bond, class Point>
void scan_line(std::size_t len, Bond bond, Point point, double threshold, std::vector<bool>& mark) {
    const std::size_t nb = len - 1;
    for (std::size_t b = 0; b < nb; ++b) {
        const double f = bond(b);
        if (!(f < threshold)) continue;
        bool lower = true;
        if (b > 0 && !(f < bond(b - 1))) lower = false;
        if (b + 1 < nb && !(f < bond(b + 1))) lower = false;
        if (lower) {
            mark[point(b)] = true;
            mark[point(b + 1)] = true;
        }
    }
}

}  // namespace

std::vector<bool> separatrix_line(const std::vector<double>& bonds, const separatrix_options& opts) {
    if (bonds.size() < 2) throw error(errc::insufficient_grid, "separatrix needs at least 3 points");
    std::vector<bool> mark(bonds.size() + 1, false);
    scan_line(bonds.size() + 1, [&](std::size_t b) { return bonds[b]; }, [](std::size_t i) { return i; },
              opts.threshold, mark);
    return mark;
}

std::vector<bool> separatrix_from_bonds(const std::vector<double>& fx, const std::vector<double>& fy, std::size_t nx,
                                        std::size_t ny, const separatrix_options& opts) {
    if (nx < 3 || ny < 3) throw error(errc::insufficient_grid, "separatrix needs at least 3 points per axis");
    std::vector<bool> mark(nx * ny, false);
    for (std::size_t j = 0; j < ny; ++j)
        scan_line(nx, [&](std::size_t b) { return fx[j * (nx - 1) + b]; }, [&](std::size_t i) { return j * nx + i; },
                  opts.threshold, mark);
    for (std::size_t i = 0; i < nx; ++i)
        scan_line(ny, [&](std::size_t b) { return fy[i * (ny - 1) + b]; }, [&](std::size_t j) { return j * nx + i; },
                  opts.threshold, mark);
    return mark;
}

std::vector<bool> separatrix(const std::vector<ground_state>& grid, std::size_t nx, std::size_t ny,
                             const separatrix_options& opts) {
    if (nx < 3 || ny < 3) throw error(errc::insufficient_grid, "separatrix needs at least 3 points per axis");
    if (grid.size() != nx * ny) throw error(errc::bad_size, "grid size does not match its shape");
    std::vector<double> fx(ny * (nx - 1));
    std::vector<double> fy(nx * (ny - 1));
    for (std::size_t j = 0; j < ny; ++j)
        for (std::size_t i = 0; i + 1 < nx; ++i) fx[j * (nx - 1) + i] = fidelity(grid[j * nx + i], grid[j * nx + i + 1]);
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j + 1 < ny; ++j) fy[i * (ny - 1) + j] = fidelity(grid[j * nx + i], grid[(j + 1) * nx + i]);
    return separatrix_from_bonds(fx, fy, nx, ny, opts);
}

}  // namespace gdicke
