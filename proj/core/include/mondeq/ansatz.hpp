#pragma once

namespace mondeq {

enum class AnsatzKind { FluidPsi, KineticPhi };

/// Polytropic ansatz function: value(w) = c w^{1 + 1/e} with e = n (fluid,
/// 0 < n < 3) or e = k (kinetic, 0 < k < 3/2). Strictly convex with
/// value(0) = derivative(0) = 0, as the variational setup requires.
struct AnsatzFunction {
    AnsatzKind kind = AnsatzKind::FluidPsi;
    double exponent = 1.0;
    double coefficient = 0.5;

    static AnsatzFunction fluid(double n, double coefficient);
    static AnsatzFunction kinetic(double k, double coefficient);

    double value(double w) const;
    double derivative(double w) const;
    double second_derivative(double w) const;
    /// (value')^{-1}(eta); clamps negative eta to 0 (the cut-off branch)
    double inverse_derivative(double eta) const;
};

}  // namespace mondeq
