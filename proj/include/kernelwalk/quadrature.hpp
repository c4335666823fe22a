#ifndef KERNELWALK_QUADRATURE_HPP
#define KERNELWALK_QUADRATURE_HPP

#include <functional>

#include "kernelwalk/rational.hpp"

namespace kw {

struct QuadratureControl {
    Real rel_tol = 1e-16L;
    int max_level = 11;   // finest step 2^-max_level
    int min_level = 3;
};

struct QuadResult {
    Real value = 0;
    Real error = 0; // last step-halving change
    int level = 0;
};

// Tanh-sinh quadrature over an interval of the given length. The integrand
// receives its distances to the two endpoints, (off_lo, off_hi) with
// off_lo + off_hi = length; the near-endpoint offset carries full relative
// precision down to ~1e-50 of the interval, which lets integrands with
// endpoint singularities evaluate without cancellation. Non-finite samples
// are dropped (their weights are double-exponentially small). Throws
// numeric_error when the refinement limit is hit without convergence.
QuadResult tanh_sinh_offsets(const std::function<Real(Real, Real)>& f, Real length,
                             const QuadratureControl& control = {});

// Convenience wrapper for a plain integrand on [a, b].
QuadResult tanh_sinh(const std::function<Real(Real)>& f, Real a, Real b,
                     const QuadratureControl& control = {});

} // namespace kw

#endif
