#pragma once

#include <stdexcept>
#include <string>

namespace skirental {

struct invalid_params : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// revealed_days is not a prefix of the instance passed alongside it.
struct state_mismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// The closed-form ratios only hold for integer thresholds; the caller
/// should fall back to adversary search.
struct non_integer_threshold : std::domain_error {
    using std::domain_error::domain_error;
};

/// Threshold too small to carry a distribution (T <= last revealed day,
/// or T <= 1 for the normalizing constants).
struct degenerate_threshold : std::domain_error {
    using std::domain_error::domain_error;
};

/// The first branch of the individual-rational density evaluated negative
/// for this state; the distribution is not valid there.
struct negative_mass : std::domain_error {
    using std::domain_error::domain_error;
};

struct search_space_too_large : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace skirental
