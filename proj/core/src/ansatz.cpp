#include "mondeq/ansatz.hpp"

#include <cmath>

#include "mondeq/common.hpp"

namespace mondeq {

AnsatzFunction AnsatzFunction::fluid(double n, double coefficient) {
    if (!(n > 0.0 && n < 3.0))
        throw DomainError("AnsatzFunction: fluid exponent n must lie in (0, 3)");
    if (!(coefficient > 0.0)) throw DomainError("AnsatzFunction: coefficient must be positive");
    return {AnsatzKind::FluidPsi, n, coefficient};
}

AnsatzFunction AnsatzFunction::kinetic(double k, double coefficient) {
    if (!(k > 0.0 && k < 1.5))
        throw DomainError("AnsatzFunction: kinetic exponent k must lie in (0, 3/2)");
    if (!(coefficient > 0.0)) throw DomainError("AnsatzFunction: coefficient must be positive");
    return {AnsatzKind::KineticPhi, k, coefficient};
}

double AnsatzFunction::value(double w) const {
    if (w < 0.0) throw DomainError("AnsatzFunction::value: negative argument");
    if (w == 0.0) return 0.0;
    return coefficient * std::pow(w, 1.0 + 1.0 / exponent);
}

double AnsatzFunction::derivative(double w) const {
    if (w < 0.0) throw DomainError("AnsatzFunction::derivative: negative argument");
    if (w == 0.0) return 0.0;
    return coefficient * (1.0 + 1.0 / exponent) * std::pow(w, 1.0 / exponent);
}

double AnsatzFunction::second_derivative(double w) const {
    if (w <= 0.0) throw DomainError("AnsatzFunction::second_derivative: argument must be positive");
    return coefficient * (1.0 + 1.0 / exponent) / exponent * std::pow(w, 1.0 / exponent - 1.0);
}

double AnsatzFunction::inverse_derivative(double eta) const {
    if (eta <= 0.0) return 0.0;
    return std::pow(eta / (coefficient * (1.0 + 1.0 / exponent)), exponent);
}

}  // namespace mondeq
