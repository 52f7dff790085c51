#pragma once

// Lagrangian immersions into CP^n (Fubini-Study, holomorphic sectional
// curvature 4) handled through horizontal lifts to S^{2n+1} in C^{n+1}.

#include <complex>
#include <vector>

#include "whitney/geometry.hpp"
#include "whitney/immersion.hpp"

namespace whitney {

Immersion make_whitney_cpn(double theta, int n);
Immersion make_rpn(int n);

// Multiplies the homogeneous representative by exp(i * phase(x)); the
// projective immersion is unchanged.
Immersion rephase(const Immersion& imm, ModelFunction phase);

// Unit-norm representative at p.
std::vector<std::complex<double>> homogeneous_point(const Immersion& imm, const ChartPoint& p);

// Unit-norm horizontal lift as interleaved real jets of the given order.
// The phase is fixed so that the first coordinate with modulus above 1e-8
// is real and positive at p.
std::vector<Jet> lifted_components(const Immersion& imm, const ChartPoint& p, int order);

// max_a |<d_a z, i z>| of a lift.
double horizontality_residual(const std::vector<Jet>& lift);

GeometryState cpn_geometry_state(const Immersion& imm, const ChartPoint& p, Depth depth,
                                 const GeometryOptions& options = {});

}  // namespace whitney
