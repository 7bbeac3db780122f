#include "gdicke/error.hpp"

namespace gdicke {

const char* errc_name(errc code) {
    switch (code) {
    case errc::duplicate_transition: return "DuplicateTransition";
    case errc::non_monotone_levels: return "NonMonotoneLevels";
    case errc::bad_normalization: return "BadNormalization";
    case errc::degenerate_pair: return "DegeneratePair";
    case errc::bad_index: return "BadIndex";
    case errc::bad_strength: return "BadStrength";
    case errc::bad_size: return "BadSize";
    case errc::order_out_of_range: return "OrderOutOfRange";
    case errc::basis_mismatch: return "BasisMismatch";
    case errc::no_convergence: return "NoConvergence";
    case errc::insufficient_grid: return "InsufficientGrid";
    case errc::bad_config: return "BadConfig";
    }
    return "Unknown";
}

}  // namespace gdicke
