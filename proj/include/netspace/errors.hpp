#ifndef NETSPACE_ERRORS_HPP
#define NETSPACE_ERRORS_HPP

#include <stdexcept>

namespace netspace {

// Caller broke a documented precondition (wrong depth, width, argument range).
struct ContractViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The requested construction needs properties this activation does not have;
// the message names the violated condition.
struct UnsupportedActivation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A search/certification step failed to reach its target accuracy.
struct ConstructionFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input document or option string.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace netspace

#endif  // NETSPACE_ERRORS_HPP
