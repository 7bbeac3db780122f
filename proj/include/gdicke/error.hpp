#pragma once

#include <stdexcept>
#include <string>

namespace gdicke {

enum class errc {
    duplicate_transition,
    non_monotone_levels,
    bad_normalization,
    degenerate_pair,
    bad_index,
    bad_strength,
    bad_size,
    order_out_of_range,
    basis_mismatch,
    no_convergence,
    insufficient_grid,
    bad_config,
};

const char* errc_name(errc code);

class error : public std::runtime_error {
public:
    error(errc code, const std::string& msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}
    errc code() const { return code_; }

private:
    errc code_;
};

}  // namespace gdicke
