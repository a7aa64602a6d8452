#pragma once

#include <string>
#include <vector>

#include "mondeq/config.hpp"

namespace mondeq {

struct CheckRow {
    std::string name;
    bool pass = false;
    double value = 0.0;
    double tolerance = 0.0;
};

/// machine-readable `check,status,value,tolerance` table
std::string check_table_csv(const std::vector<CheckRow>& rows);
bool all_pass(const std::vector<CheckRow>& rows);

std::vector<CheckRow> verify_potential(const RunConfig& cfg);
std::vector<CheckRow> verify_functionals(const RunConfig& cfg);
std::vector<CheckRow> verify_equilibrium(const RunConfig& cfg);
std::vector<CheckRow> verify_dynamics(const RunConfig& cfg);
std::vector<CheckRow> verify_all(const RunConfig& cfg);

}  // namespace mondeq
