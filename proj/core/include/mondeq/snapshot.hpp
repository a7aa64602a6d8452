#pragma once

#include <optional>
#include <string>

#include "mondeq/equilibrium.hpp"

namespace mondeq {

/// Versioned text snapshot: `# mond-equilib v1`, a column header, `# key: value`
/// metadata lines, then whitespace-separated rows of
/// r rho M gN gM UN Ulam UM at 17 significant digits (lossless for doubles).
void write_model_snapshot(const std::string& path, const EquilibriumModel& model,
                          const std::optional<AnsatzFunction>& phi = std::nullopt,
                          bool timestamp = false);

struct LoadedModel {
    EquilibriumModel model;
    std::optional<AnsatzFunction> phi;  // present when the model was lifted
};

LoadedModel read_model_snapshot(const std::string& path);

std::string format_full(double v);
double parse_double(const std::string& token);

}  // namespace mondeq
