#include "tsmr/offdiag.hpp"

#include <cmath>
#include <limits>

namespace tsmr {

NormPair parse_norm_pair(const std::string& s) {
    if (s == "2:2") return NormPair::N22;
    if (s == "1:2") return NormPair::N12;
    if (s == "2:inf") return NormPair::N2Inf;
    throw ParameterError("norm pair must be one of 2:2, 1:2, 2:inf (got " + s + ")");
}

std::string norm_pair_name(NormPair p) {
    switch (p) {
        case NormPair::N22: return "2:2";
        case NormPair::N12: return "1:2";
        case NormPair::N2Inf: return "2:inf";
    }
    return "?";
}

double opnorm_qr(const Eigen::MatrixXcd& M, NormPair pair, double h) {
    if (M.rows() > 4096 || M.cols() > 4096)
        throw ResourceError("opnorm_qr: dense size cap exceeded");
    if (!(h > 0.0)) throw ParameterError("opnorm_qr: cell measure h must be positive");
    if (M.rows() == 0 || M.cols() == 0) return 0.0;
    switch (pair) {
        case NormPair::N22: {
            Eigen::BDCSVD<Eigen::MatrixXcd> svd(M);
            return svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
        }
        case NormPair::N12: {
            double best = 0.0;
            for (Eigen::Index j = 0; j < M.cols(); ++j) best = std::max(best, M.col(j).norm());
            return best / std::sqrt(h);
        }
        case NormPair::N2Inf: {
            double best = 0.0;
            for (Eigen::Index i = 0; i < M.rows(); ++i) best = std::max(best, M.row(i).norm());
            return best / std::sqrt(h);
        }
    }
    return 0.0;
}

nlohmann::json DecayEstimate::to_json() const {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& [t, d] : fitRange) pts.push_back({{"t", t}, {"d", d}});
    return nlohmann::json{{"model", model},     {"q", q},
                          {"r", r},             {"m", m},
                          {"fittedM", fittedM}, {"fitRange", pts},
                          {"residual", residual}, {"threshold", threshold}};
}

namespace {

struct QR {
    double q, r;
};

QR pair_exponents(NormPair p) {
    switch (p) {
        case NormPair::N22: return {2.0, 2.0};
        case NormPair::N12: return {1.0, 2.0};
        case NormPair::N2Inf: return {2.0, std::numeric_limits<double>::infinity()};
    }
    return {2.0, 2.0};
}

// Least-squares slope fit y = a + b x; returns (-b, max |y - a - b x|).
std::pair<double, double> fit_order(const std::vector<double>& x, const std::vector<double>& y) {
    const auto N = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = N * sxx - sx * sx;
    if (std::abs(denom) < 1e-14) throw NumericError("decay fit: degenerate abscissae");
    const double b = (N * sxy - sx * sy) / denom;
    const double a = (sy - b * sx) / N;
    double res = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) res = std::max(res, std::abs(y[i] - a - b * x[i]));
    return {-b, res};
}

// Flat lattice indices of the ball B(0, radius) and of the complement of
// B(0, d), on the periodic lattice.
void split_sets(const Grid& g, double ballRadius, double d, std::vector<Eigen::Index>& E,
                std::vector<Eigen::Index>& F) {
    E.clear();
    F.clear();
    const std::array<double, 3> origin{0.0, 0.0, 0.0};
    const std::size_t S = g.spec.spatial_size();
    for (std::size_t j = 0; j < S; ++j) {
        const double dist = g.dist_to(j, origin);
        if (dist <= ballRadius) E.push_back(static_cast<Eigen::Index>(j));
        if (dist >= d) F.push_back(static_cast<Eigen::Index>(j));
    }
}

DecayEstimate measure_decay(const SemigroupModel& S, NormPair pair,
                            const std::vector<double>& tLadder, const std::vector<double>& dLadder,
                            double ballRadius, double threshold, double sepPower,
                            const std::function<Complex(double mu, double t)>& symbol,
                            const std::function<double(double t)>& scaleArg, const std::string& tag) {
    if (tLadder.empty() || dLadder.empty()) throw ParameterError("measure_offdiag: empty ladder");
    const Grid g = make_grid(S.spatial());
    double dMax = 0.0;
    for (double d : dLadder) dMax = std::max(dMax, d);
    if (dMax + ballRadius > S.spatial().X / 2.0)
        throw ConfigError("measure_offdiag: ladder exceeds X/2, wrap-around risk");

    const QR qr = pair_exponents(pair);
    DecayEstimate est;
    est.model = family_name(S.family());
    est.q = qr.q;
    est.r = qr.r;
    est.m = S.m();
    est.threshold = threshold;

    std::vector<double> xs, ys;
    std::vector<Eigen::Index> E, F;
    for (double t : tLadder) {
        const double arg = scaleArg(t);  // t for semigroups, |z| for resolvents
        Eigen::MatrixXcd M = S.kernel_matrix([&](double mu) { return symbol(mu, t); });
        for (double d : dLadder) {
            const double sep = d - ballRadius;
            if (!(sep > 0.0)) continue;
            const double ratio = std::pow(sep, sepPower) / arg;
            if (ratio < threshold) continue;
            split_sets(g, ballRadius, d, E, F);
            if (E.empty() || F.empty()) continue;
            Eigen::MatrixXcd sub(static_cast<Eigen::Index>(F.size()),
                                 static_cast<Eigen::Index>(E.size()));
            for (std::size_t i = 0; i < F.size(); ++i)
                for (std::size_t j = 0; j < E.size(); ++j) sub(i, j) = M(F[i], E[j]);
            const double nrm = opnorm_qr(sub, pair, g.h);
            const double invR = std::isinf(qr.r) ? 0.0 : 1.0 / qr.r;
            const double scaled =
                nrm * std::pow(arg, (S.spatial().n / (sepPower)) * (1.0 / qr.q - invR));
            if (!(scaled > 1e-300)) continue;
            xs.push_back(std::log1p(ratio));
            ys.push_back(std::log(scaled));
            est.fitRange.emplace_back(t, sep);
        }
    }
    if (xs.size() < 4)
        throw NumericError("decay fit underdetermined: only " + std::to_string(xs.size()) +
                           " asymptotic points (need >= 4)");
    const auto [order, res] = fit_order(xs, ys);
    est.fittedM = order;
    est.residual = res;
    est.model = tag.empty() ? est.model : est.model + ":" + tag;
    return est;
}

}  // namespace

DecayEstimate measure_offdiag(const SemigroupModel& S, NormPair pair,
                              const std::vector<double>& tLadder, const std::vector<double>& dLadder,
                              double ballRadius, double threshold) {
    return measure_decay(
        S, pair, tLadder, dLadder, ballRadius, threshold, S.m(),
        [](double mu, double t) { return Complex(t * mu * std::exp(-t * mu)); },
        [](double t) { return t; }, "");
}

DecayEstimate measure_resolvent_offdiag(const SemigroupModel& S, NormPair pair, double theta,
                                        const std::vector<double>& tLadder,
                                        const std::vector<double>& dLadder, double ballRadius,
                                        ResolventPower pow, double threshold) {
    const int p = static_cast<int>(pow);
    return measure_decay(
        S, pair, tLadder, dLadder, ballRadius, threshold, 2.0 * S.m(),
        [theta, p](double mu, double t) {
            const Complex z = std::polar(t, theta);
            return 1.0 / (1.0 - z * std::pow(Complex(mu), p));
        },
        [](double t) { return t; }, p == 2 ? "resolvent-L2" : "resolvent-L");
}

}  // namespace tsmr
