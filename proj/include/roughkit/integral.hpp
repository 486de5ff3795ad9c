#pragma once

#include "roughkit/fields.hpp"
#include "roughkit/norms.hpp"
#include "roughkit/types.hpp"

namespace roughkit {

// Compensated Riemann sum on the finest grid over the range:
// sum over adjacent [u,v] of y_u x_{u,v} + y'_u X_{u,v}.
// The integrand must be matrix-valued (width == m, or scalar driver).
VectorXd rough_integrate(const ControlledGridPath& y, const RoughPathGrid& rp,
                         GridRange range = {});

// Right-hand side of the sewing estimate for the one-step defect
// || integral - y_s x_{s,t} - y'_s X_{s,t} ||.
// Holder mode: C_alpha |t-s|^{3 alpha} (|||x|||_a |||R^y|||_{2a} + |||y'|||_a |||X|||_{2a}).
// p-var mode:  C_p (|||x|||_p |||R^y|||_q + |||y'|||_p |||X|||_q).
double sewing_bound(const ControlledGridPath& y, const RoughPathGrid& rp,
                    NormMode mode, GridRange range = {});

// Lift (y, y' = g(y)) to the integrand (g(y), Dg(y)g(y)) ready for
// rough_integrate; y must be vector-valued with values on rp's grid.
ControlledGridPath compose_controlled(const Diffusion& g,
                                      const ControlledGridPath& y,
                                      const RoughPathGrid& rp);

}  // namespace roughkit
