#pragma once

#include <cstdint>
#include <string>

#include "mondeq/ansatz.hpp"
#include "mondeq/equilibrium.hpp"
#include "mondeq/interpolation.hpp"

namespace mondeq {

/// Flat key=value configuration with dotted keys; flags override file values.
struct RunConfig {
    std::string lambda_family = "sqrt";
    double lambda_a0 = 1.0;
    std::string ansatz_kind = "fluid";
    double ansatz_exponent = 1.0;
    double ansatz_coefficient = 0.5;
    int grid_resolution = 4000;
    double grid_outer_radius = 0.0;  // 0: grid ends at the solved surface
    double reference_radius = 1.0;
    double solver_rel_tol = 1e-11;
    double solver_r_max = 1e4;
    std::uint64_t dynamics_n = 100000;
    double dynamics_dt_frac = 5e-4;
    double dynamics_t_end_dyn = 50.0;
    std::uint64_t dynamics_seed = 12345;
    std::string output_dir = ".";

    /// parse `key = value` lines; '#' starts a comment
    static RunConfig from_file(const std::string& path);
    void set(const std::string& key, const std::string& value);
    void validate() const;

    InterpolationFunction lambda() const;
    AnsatzFunction ansatz() const;
    ShootOptions shoot_options() const;
};

}  // namespace mondeq
