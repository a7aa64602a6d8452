#pragma once

#include <vector>

#include "mondeq/interpolation.hpp"
#include "mondeq/radial.hpp"

namespace mondeq {

struct QumondOptions {
    double rel_tol = 1e-6;
    int max_refine = 6;
    int threads = 1;
};

/// Direct evaluation of the QUMOND correction potential
///   U^lambda(x) = (1/4pi) int lambda(|gN(y)|) gN(y) . ((x-y)/|x-y|^3 + y/|y|^3) dy
/// by spherical-coordinate product quadrature. The azimuthal integral is a
/// factor 2 pi by symmetry; the (s, mu) integral uses radial panels split at
/// s = |x| and a sqrt substitution of the mu integral near the kernel
/// singularity at y = x. U^lambda(0) = 0 by construction (kernel cancels).
std::vector<double> qumond_direct(const RadialDensity& d, const InterpolationFunction& f,
                                  const std::vector<double>& probe_radii,
                                  const QumondOptions& opts = {});

}  // namespace mondeq
