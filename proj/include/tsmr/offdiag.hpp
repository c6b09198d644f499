#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "tsmr/semigroup.hpp"

#include "json.hpp"

namespace tsmr {

// The exponent pairs with exact finite-dimensional norm formulas.
enum class NormPair { N22, N12, N2Inf };

NormPair parse_norm_pair(const std::string& s);  // "2:2", "1:2", "2:inf"
std::string norm_pair_name(NormPair p);

// Exact L^q -> L^r norm of the dense application matrix M (f -> Mf on the
// lattice with cell measure h): 2->2 largest singular value, 1->2 max
// column norm / sqrt(h), 2->inf max row norm / sqrt(h).
double opnorm_qr(const Eigen::MatrixXcd& M, NormPair pair, double h);

// Fitted off-diagonal decay order for a (t, d) ladder.
struct DecayEstimate {
    std::string model;
    double q = 2.0, r = 2.0;
    double m = 2.0;
    double fittedM = 0.0;
    std::vector<std::pair<double, double>> fitRange;  // (t, dist) pairs used
    double residual = 0.0;  // max log-deviation from the fit
    double threshold = 4.0;  // minimum dist^m/t admitted into the fit

    nlohmann::json to_json() const;
};

// Fits M in ||1_F tLe^{-tL} 1_E||_{q->r} ~ t^{-(n/m)(1/q-1/r)} (1+d^m/t)^{-M}
// with E = B(0, ballRadius) and F the complement of B(0, d); the effective
// separation is d - ballRadius. Requires max d + ballRadius <= X/2.
DecayEstimate measure_offdiag(const SemigroupModel& S, NormPair pair,
                              const std::vector<double>& tLadder, const std::vector<double>& dLadder,
                              double ballRadius, double threshold = 4.0);

// Same for the resolvent family (1 - zL^pow)^{-1} along the ray z = e^{i theta} t,
// fitting K in (1 + d^{2m}/|z|)^{-K}.
DecayEstimate measure_resolvent_offdiag(const SemigroupModel& S, NormPair pair, double theta,
                                        const std::vector<double>& tLadder,
                                        const std::vector<double>& dLadder, double ballRadius,
                                        ResolventPower pow, double threshold = 4.0);

}  // namespace tsmr
