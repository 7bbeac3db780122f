#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <vector>

#include "gdicke/basis.hpp"
#include "gdicke/hamiltonian.hpp"
#include "gdicke/model.hpp"
#include "gdicke/symmetry.hpp"

namespace gdicke {

struct solver_options {
    double tol = 1e-12;              // residual bound relative to max(1, |E|)
    std::size_t dense_limit = 512;   // dense diagonalisation at or below this size
    int krylov = 160;                // Lanczos vectors per restart cycle
    int max_restarts = 200;
    double degeneracy_gap = 1e-10;
};

struct ground_state {
    double energy = 0.0;
    std::vector<double> coeffs;
    std::shared_ptr<const basis> space;
    double gap = std::numeric_limits<double>::infinity();
    bool degenerate = false;
    double residual = 0.0;
    int iterations = 0;

    const std::vector<int>& sigma() const { return space->meta().sigma; }
};

struct eigenpair {
    double value = 0.0;
    std::vector<double> vector;
    double gap = std::numeric_limits<double>::infinity();
    double residual = 0.0;
    int iterations = 0;
};

eigenpair lowest_dense(const sparse_hamiltonian& h);
eigenpair lowest_lanczos(const sparse_hamiltonian& h, const solver_options& opts = {});

ground_state solve_ground(const sparse_hamiltonian& h, std::shared_ptr<const basis> space,
                          const solver_options& opts = {});
ground_state ground_state_on(std::shared_ptr<const basis> space, const model& m, model_kind kind,
                             const solver_options& opts = {});

double overlap(const ground_state& a, const ground_state& b);
double fidelity(const ground_state& a, const ground_state& b);
// 1 - fidelity evaluated without cancellation near 1.
double fidelity_deficit(const ground_state& a, const ground_state& b);

// Two-level model in units of the transition energy: Omega = 1 + delta, mu = x * sqrt(Omega) / 2.
double two_level_deficit(int atoms, double x, double delta, int parity, int cutoff, const solver_options& opts = {});
int converge_two_level(int atoms, double x, double delta, int parity, double err, const solver_options& opts = {});

// K_zeta expressed through subsystem excitations nu_s + a_k and level populations.
struct subsystem_form {
    std::vector<int> excitation;  // one coefficient per subsystem
    std::vector<int> population;  // one coefficient per level
};
subsystem_form to_subsystem_form(const symmetry_op& op, const model& m);

std::vector<int> assemble_kappa(std::span<const int> mbar, const model& m, const symmetry_set& sym);

// How cutoffs are chosen for subsystems whose excitation parity the sector leaves free.
enum class cutoff_policy { sector_parity, parity_cover };

std::vector<int> subsystem_parities(const model& m, const symmetry_set& sym, std::span<const int> sigma);
std::vector<int> subsystem_cutoffs(const model& m, const symmetry_set& sym, std::span<const int> sigma, double err,
                                   cutoff_policy policy, const solver_options& opts = {});

struct convergence_options {
    double err = 1e-10;
    cutoff_rule rule = cutoff_rule::excitation;
    cutoff_policy policy = cutoff_policy::sector_parity;
    model_kind kind = model_kind::dicke;
    int max_iterations = 40;
    solver_options solver;
};

struct convergence_report {
    std::vector<int> mbar;
    std::vector<int> kappa;
    std::vector<int> sigma;
    int iterations = 0;
    double deficit = 0.0;
    double err = 0.0;
    std::size_t dim = 0;
    std::size_t probe_dim = 0;
};

convergence_report converge_full(const model& m, const symmetry_set& sym, std::span<const int> sigma,
                                 const convergence_options& opts);

struct sector_energy {
    std::vector<int> label;
    double energy = 0.0;
    std::size_t dim = 0;
};

struct sector_scan {
    ground_state best;
    std::vector<int> best_label;
    std::vector<sector_energy> all;
};

using basis_builder = std::function<std::shared_ptr<const basis>(const std::vector<int>&)>;

// Lowest energy over labelled blocks. Energies within tie * max(1, |E|) count as
// equal and go to the earliest label.
sector_scan ground_over_sectors(const model& m, model_kind kind, const std::vector<std::vector<int>>& labels,
                                const basis_builder& build, const solver_options& opts = {}, double tie = 1e-12);
bool lower_energy(double candidate, double best, double tie);
// Exact GTCM ground state over all RWA sectors with kappa <= bound.
sector_scan ground_over_kappa(const model& m, const symmetry_set& sym, std::span<const int> bound,
                              const solver_options& opts = {}, double tie = 1e-12);
std::vector<int> tc_kappa_bound(const model& m, const symmetry_set& sym, double err, const solver_options& opts = {});

}  // namespace gdicke
