#pragma once

#include <iosfwd>
#include <map>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "gdicke/config.hpp"
#include "gdicke/observables.hpp"
#include "gdicke/solver.hpp"

namespace gdicke {

// Two-level cutoffs keyed by (N_a, x to 1e-12, delta, err, parity).
class mbar_cache {
public:
    int get(int atoms, double x, double delta, double err, int parity, const solver_options& opts = {});
    std::size_t size() const;

private:
    using key = std::tuple<int, long long, long long, double, int>;
    mutable std::mutex mu_;
    std::map<key, int> values_;
};

struct sweep_spec {
    model_config model;
    run_params run;
    solver_options solver;
};

struct order_row {
    int o1 = 0;
    int o2 = 0;
    std::size_t dim = 0;
    double energy = 0.0;
    observable_set obs;
    error_metrics err;
};

struct sweep_point {
    std::vector<double> x;
    std::vector<int> label;  // winning sector, or kappa for the GTCM
    std::vector<int> kappa;
    double energy = 0.0;
    std::size_t dim = 0;
    observable_set obs;
    std::vector<sector_energy> sectors;
    std::vector<order_row> orders;
    bool separatrix = false;
    bool ok = true;
    std::string message;
};

struct sweep_result {
    sweep_spec spec;
    std::size_t nx = 1;
    std::size_t ny = 1;
    std::vector<double> x1;
    std::vector<double> x2;
    std::vector<sweep_point> points;  // row-major, x1 fastest
};

sweep_result run_sweep(const sweep_spec& spec);
// Writes <prefix>_full.csv, <prefix>_o<o1><o2>.csv, <prefix>_separatrix.csv, <prefix>_errors.csv, <prefix>.gp.
std::vector<std::string> write_sweep(const sweep_result& r, const std::string& prefix);

void write_point_csv(std::ostream& os, const sweep_result& r, int order_index);

struct table2_row {
    int atoms = 0;
    double err = 0.0;
    double x = 0.0;
    std::vector<int> mbar;
    std::vector<int> kappa;
    std::size_t dim = 0;
    int probes = 0;
};

std::vector<table2_row> reproduce_table2(const std::vector<double>& errs, const std::vector<double>& xs,
                                         const std::vector<int>& atoms, bool global_probe = true,
                                         const solver_options& opts = {});
void write_table2(std::ostream& os, const std::vector<table2_row>& rows);

struct dim_row {
    int atoms = 0;
    std::vector<int> mbar;
    std::vector<int> kappa;
    std::size_t full = 0;
    std::vector<std::size_t> reduced;
    double estimate = 0.0;
};

std::vector<dim_row> reproduce_dim_study(const std::vector<int>& atoms, double x, double err,
                                         const std::vector<std::pair<int, int>>& orders,
                                         cutoff_policy policy = cutoff_policy::sector_parity,
                                         const solver_options& opts = {});
void write_dim_study(std::ostream& os, const std::vector<dim_row>& rows,
                     const std::vector<std::pair<int, int>>& orders);

std::string format_number(double v);

}  // namespace gdicke
