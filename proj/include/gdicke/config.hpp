#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "gdicke/basis.hpp"
#include "gdicke/hamiltonian.hpp"
#include "gdicke/model.hpp"
#include "gdicke/solver.hpp"

namespace gdicke {

struct axis {
    int subsystem = 0;  // 0-based coupling index
    double lo = 0.0;
    double hi = 0.0;
    int points = 1;

    std::vector<double> values() const;
};

enum class basis_mode { region, point };

struct run_params {
    model_kind kind = model_kind::dicke;
    double err = 1e-10;
    std::vector<std::vector<int>> sectors;  // empty means all
    std::vector<std::pair<int, int>> orders;
    std::vector<axis> axes;
    int workers = 1;
    std::string out = "sweep";
    cutoff_rule rule = cutoff_rule::excitation;
    cutoff_policy policy = cutoff_policy::sector_parity;
    basis_mode mode = basis_mode::region;
    double threshold = 0.99;
    int max_probes = 40;  // global fidelity probes before giving up
};

struct config_file {
    model_config model;
    run_params run;
};

config_file parse_config(std::istream& is);
config_file load_config(const std::string& path);

std::vector<std::pair<int, int>> parse_orders(const std::string& text);
std::vector<std::vector<int>> parse_sectors(const std::string& text);
model_kind parse_kind(const std::string& text);

}  // namespace gdicke
