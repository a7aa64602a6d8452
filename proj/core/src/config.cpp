#include "mondeq/config.hpp"

#include <cstdlib>
#include <fstream>

#include "mondeq/common.hpp"

namespace mondeq {

namespace {

double to_double(const std::string& key, const std::string& value) {
    char* end = nullptr;
    double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0')
        throw ValidationError("config: bad numeric value for " + key + ": '" + value + "'");
    return v;
}

std::uint64_t to_u64(const std::string& key, const std::string& value) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(value.c_str(), &end, 10);
    if (end == value.c_str() || *end != '\0')
        throw ValidationError("config: bad integer value for " + key + ": '" + value + "'");
    return v;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    std::size_t e = s.find_last_not_of(" \t");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

}  // namespace

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ValidationError("config: cannot open '" + path + "'");
    RunConfig cfg;
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError("config: line " + std::to_string(line_no) +
                                  " is not key=value: '" + line + "'");
        cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

void RunConfig::set(const std::string& key, const std::string& value) {
    if (key == "lambda.family")
        lambda_family = value;
    else if (key == "lambda.a0")
        lambda_a0 = to_double(key, value);
    else if (key == "ansatz.kind")
        ansatz_kind = value;
    else if (key == "ansatz.exponent")
        ansatz_exponent = to_double(key, value);
    else if (key == "ansatz.coefficient")
        ansatz_coefficient = to_double(key, value);
    else if (key == "grid.resolution")
        grid_resolution = static_cast<int>(to_u64(key, value));
    else if (key == "grid.outer_radius")
        grid_outer_radius = to_double(key, value);
    else if (key == "reference.radius")
        reference_radius = to_double(key, value);
    else if (key == "solver.rel_tol")
        solver_rel_tol = to_double(key, value);
    else if (key == "solver.r_max")
        solver_r_max = to_double(key, value);
    else if (key == "dynamics.n")
        dynamics_n = to_u64(key, value);
    else if (key == "dynamics.dt_frac")
        dynamics_dt_frac = to_double(key, value);
    else if (key == "dynamics.t_end_dyn")
        dynamics_t_end_dyn = to_double(key, value);
    else if (key == "dynamics.seed")
        dynamics_seed = to_u64(key, value);
    else if (key == "output.dir")
        output_dir = value;
    else
        throw ValidationError("config: unknown key '" + key + "'");
}

void RunConfig::validate() const {
    if (lambda_family != "sqrt" && lambda_family != "simple")
        throw ValidationError("config: lambda.family must be sqrt or simple");
    if (!(lambda_a0 > 0.0)) throw ValidationError("config: lambda.a0 must be positive");
    if (ansatz_kind != "fluid" && ansatz_kind != "kinetic")
        throw ValidationError("config: ansatz.kind must be fluid or kinetic");
    if (ansatz_kind == "fluid" && !(ansatz_exponent > 0.0 && ansatz_exponent < 3.0))
        throw ValidationError("config: fluid exponent must lie in (0, 3)");
    if (ansatz_kind == "kinetic" && !(ansatz_exponent > 0.0 && ansatz_exponent < 1.5))
        throw ValidationError("config: kinetic exponent must lie in (0, 3/2)");
    if (!(ansatz_coefficient > 0.0))
        throw ValidationError("config: ansatz.coefficient must be positive");
    if (grid_resolution < 64) throw ValidationError("config: grid.resolution must be >= 64");
    if (grid_outer_radius < 0.0)
        throw ValidationError("config: grid.outer_radius must be nonnegative");
    if (!(reference_radius > 0.0))
        throw ValidationError("config: reference.radius must be positive");
    if (!(solver_rel_tol > 0.0)) throw ValidationError("config: solver.rel_tol must be positive");
    if (!(solver_r_max > 0.0)) throw ValidationError("config: solver.r_max must be positive");
    if (dynamics_n < 1000) throw ValidationError("config: dynamics.n must be >= 1000");
    if (!(dynamics_dt_frac > 0.0))
        throw ValidationError("config: dynamics.dt_frac must be positive");
    if (!(dynamics_t_end_dyn > 0.0))
        throw ValidationError("config: dynamics.t_end_dyn must be positive");
}

InterpolationFunction RunConfig::lambda() const {
    return InterpolationFunction::make(
        lambda_family == "simple" ? LambdaFamily::Simple : LambdaFamily::Sqrt, lambda_a0);
}

AnsatzFunction RunConfig::ansatz() const {
    if (ansatz_kind == "kinetic")
        return AnsatzFunction::kinetic(ansatz_exponent, ansatz_coefficient);
    return AnsatzFunction::fluid(ansatz_exponent, ansatz_coefficient);
}

ShootOptions RunConfig::shoot_options() const {
    ShootOptions opts;
    opts.rel_tol = solver_rel_tol;
    opts.r_max = solver_r_max;
    opts.grid_uniform = grid_resolution;
    opts.grid_outer = grid_outer_radius;
    return opts;
}

}  // namespace mondeq
