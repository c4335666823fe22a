#ifndef KERNELWALK_ERRORS_HPP
#define KERNELWALK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace kw {

// Malformed input: bad model files, out-of-range weights, violated
// operation preconditions that a caller could have checked.
class input_error : public std::runtime_error {
public:
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// Numeric failure: quadrature non-convergence, root isolation failure,
// pole proximity, inconsistent cross-checks. These indicate either a
// model outside the supported regime or a genuine internal defect.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace kw

#endif
