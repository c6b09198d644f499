#include "tsmr/sio.hpp"

#include <algorithm>
#include <cmath>

namespace tsmr {

Part parse_part(const std::string& s) {
    if (s == "whole") return Part::Whole;
    if (s == "singular") return Part::Singular;
    if (s == "tail") return Part::Tail;
    throw ParameterError("part must be whole, singular or tail (got " + s + ")");
}

namespace {

constexpr int kSingularCells = 64;
constexpr double kSingularCutoff = 9.5367431640625e-07;  // 2^{-20}

// Evaluation point for a singular cell [eLo, eHi]: the centroid of the
// |t-s|^{Re alpha - 1} weight, which makes the incomplete power rule exact
// for integrands linear in u (plain midpoint when Re alpha = 1).
double cell_centroid(double eLo, double eHi, double reAlpha) {
    if (reAlpha == 1.0) return 0.5 * (eLo + eHi);
    const double a = reAlpha;
    const double num = std::pow(eHi, a + 1.0) - std::pow(eLo, a + 1.0);
    const double den = std::pow(eHi, a) - std::pow(eLo, a);
    if (den == 0.0) return std::sqrt(eLo * eHi);
    return a / (a + 1.0) * num / den;
}

bool is_one(Complex a) { return a.real() == 1.0 && a.imag() == 0.0; }

// mu^alpha e^{-u mu} with principal powers; the |t-s|^{alpha-1} factor is
// handled by the caller's quadrature weights (tail: explicit factor,
// singular: incomplete power rule).
Complex mu_alpha_exp(Complex alpha, double mu, double u) {
    if (mu <= 0.0) return Complex(0.0);
    if (is_one(alpha)) return Complex(mu * std::exp(-u * mu));
    return std::exp(alpha * std::log(mu) - u * mu);
}

Complex cpow(double x, Complex a) {
    if (x <= 0.0) throw NumericError("complex power of nonpositive base");
    return std::exp(a * std::log(x));
}

void check_compatible(const KernelOp& T, const Field& f) {
    if (!T.model) throw ParameterError("kernel op has no model");
    const GridSpec& ms = T.model->spatial();
    if (f.spec.n != ms.n || f.spec.Nx != ms.Nx || f.spec.X != ms.X)
        throw DomainError("apply: field grid does not match the model's spatial lattice");
}

// Linear cell edges of time node j (log-uniform cells, endpoint cells cut at
// the range boundary), used to clip tail cells against the split point so the
// tail and singular regions partition |t-s| without overlap.
void cell_edges(const Grid& g, int j, double& eLo, double& eHi) {
    const double sqrtRho = std::sqrt(g.spec.rho());
    eLo = j == 0 ? g.spec.tMin : g.t[j] / sqrtRho;
    eHi = j == g.spec.Nt - 1 ? g.spec.tMax : g.t[j] * sqrtRho;
}

// Clipped tail cell measure for node j: forward kernels integrate s in
// (0, t/2], backward s in [2t, tMax].
double tail_weight(const Grid& g, int j, double t, bool fwd) {
    double eLo, eHi;
    cell_edges(g, j, eLo, eHi);
    if (fwd)
        eHi = std::min(eHi, t / 2.0);
    else
        eLo = std::max(eLo, 2.0 * t);
    return std::max(0.0, eHi - eLo);
}

// Linear interpolation of per-time spectral slices at time s; zero outside
// [tMin, tMax].
bool interp_weights(const Grid& g, double s, int& j0, double& lam) {
    const auto& t = g.t;
    if (s < t.front() || s > t.back()) return false;
    int lo = 0, hi = g.spec.Nt - 1;
    while (hi - lo > 1) {
        const int mid = (lo + hi) / 2;
        (t[mid] <= s ? lo : hi) = mid;
    }
    j0 = lo;
    lam = (s - t[lo]) / (t[lo + 1] - t[lo]);
    return true;
}

struct Engine {
    const SemigroupModel& S;
    Orientation orientation;
    Complex alpha;
    const Field& f;
    // Optional smooth factor in s (the (s/t)^alpha weight of J_alpha).
    std::function<Complex(double t, double s)> extra;

    Field run(Part part, ApplyInfo* info) const {
        const Grid g = make_grid(f.spec);
        const std::size_t Sn = S.size();
        const int Nt = f.spec.Nt;
        const auto& mu = S.eigenvalues();

        std::vector<std::vector<Complex>> c(Nt);
        for (int j = 0; j < Nt; ++j) c[j] = S.to_spectral(f.slice(j));

        Field out(f.spec);
        std::vector<Complex> acc(Sn), ci(Sn);
        const bool fwd = orientation == Orientation::Forward;
        bool topNonzero = false;
        {
            const Complex* top = f.slice(Nt - 1);
            for (std::size_t k = 0; k < Sn; ++k)
                if (top[k] != Complex(0.0)) topNonzero = true;
        }

        for (int i = 0; i < Nt; ++i) {
            const double t = g.t[i];
            std::fill(acc.begin(), acc.end(), Complex(0.0));

            if (part == Part::Whole || part == Part::Tail) {
                for (int j = 0; j < Nt; ++j) {
                    const double s = g.t[j];
                    const double w = tail_weight(g, j, t, fwd);
                    if (w <= 0.0) continue;
                    const double u = std::abs(t - s);
                    if (u <= 0.0) continue;
                    const Complex fac =
                        w * (is_one(alpha) ? Complex(1.0) : cpow(u, alpha - Complex(1.0))) *
                        (extra ? extra(t, s) : Complex(1.0));
                    for (std::size_t k = 0; k < Sn; ++k)
                        acc[k] += fac * mu_alpha_exp(alpha, mu[k], u) * c[j][k];
                }
                if (!fwd && 2.0 * t > g.spec.tMax && topNonzero && info)
                    info->truncationWarning = true;
            }

            if (part == Part::Whole || part == Part::Singular) {
                const double uMax = fwd ? t / 2.0 : t;
                const double uMin = t * kSingularCutoff;
                // Data lives on [tMin, tMax]; clip each cell so s = t -/+ u
                // stays inside (truncation at the range boundary).
                const double uCap = fwd ? t - g.spec.tMin : g.spec.tMax - t;
                const double ratio = std::pow(uMax / uMin, 1.0 / kSingularCells);
                double eLo = uMin;
                for (int l = 0; l < kSingularCells && eLo < uCap; ++l) {
                    const double eHi = (l + 1 == kSingularCells) ? uMax : eLo * ratio;
                    const double cHi = std::min(eHi, uCap);
                    const double uMid = cell_centroid(eLo, cHi, alpha.real());
                    const double s = std::clamp(fwd ? t - uMid : t + uMid, g.spec.tMin, g.spec.tMax);
                    int j0;
                    double lam;
                    if (interp_weights(g, s, j0, lam)) {
                        for (std::size_t k = 0; k < Sn; ++k)
                            ci[k] = (1.0 - lam) * c[j0][k] + lam * c[j0 + 1][k];
                        // incomplete power rule: int_{eLo}^{cHi} u^{alpha-1} du
                        const Complex W = is_one(alpha)
                                              ? Complex(cHi - eLo)
                                              : (cpow(cHi, alpha) - cpow(eLo, alpha)) / alpha;
                        const Complex ex = extra ? extra(t, s) : Complex(1.0);
                        for (std::size_t k = 0; k < Sn; ++k)
                            acc[k] += W * ex * mu_alpha_exp(alpha, mu[k], uMid) * ci[k];
                    }
                    eLo = eHi;
                }
            }

            S.from_spectral(acc, out.slice(i));
        }
        return out;
    }
};

Field custom_apply(const KernelOp& T, const Field& f, Part part, ApplyInfo* info) {
    const Grid g = make_grid(f.spec);
    const std::size_t Sn = f.spec.spatial_size();
    const int Nt = f.spec.Nt;
    const bool fwd = T.orientation == Orientation::Forward;
    Field out(f.spec);
    std::vector<Complex> tmp(Sn), fi(Sn);
    for (int i = 0; i < Nt; ++i) {
        const double t = g.t[i];
        Complex* o = out.slice(i);
        if (part == Part::Whole || part == Part::Tail) {
            for (int j = 0; j < Nt; ++j) {
                const double s = g.t[j];
                const double w = tail_weight(g, j, t, fwd);
                if (w <= 0.0 || std::abs(t - s) <= 0.0) continue;
                T.custom(t, s, f.slice(j), tmp.data());
                for (std::size_t k = 0; k < Sn; ++k) o[k] += w * tmp[k];
            }
            if (!fwd && 2.0 * t > g.spec.tMax && info) info->truncationWarning = true;
        }
        if (part == Part::Whole || part == Part::Singular) {
            const double uMax = fwd ? t / 2.0 : t;
            const double uMin = t * kSingularCutoff;
            const double uCap = fwd ? t - g.spec.tMin : g.spec.tMax - t;
            const double ratio = std::pow(uMax / uMin, 1.0 / kSingularCells);
            double eLo = uMin;
            for (int l = 0; l < kSingularCells && eLo < uCap; ++l) {
                const double eHi = (l + 1 == kSingularCells) ? uMax : eLo * ratio;
                const double cHi = std::min(eHi, uCap);
                const double uMid = cell_centroid(eLo, cHi, 1.0);
                const double s = std::clamp(fwd ? t - uMid : t + uMid, g.spec.tMin, g.spec.tMax);
                int j0;
                double lam;
                if (interp_weights(g, s, j0, lam)) {
                    const Complex* a = f.slice(j0);
                    const Complex* b = f.slice(j0 + 1);
                    for (std::size_t k = 0; k < Sn; ++k) fi[k] = (1.0 - lam) * a[k] + lam * b[k];
                    T.custom(t, s, fi.data(), tmp.data());
                    for (std::size_t k = 0; k < Sn; ++k) o[k] += (cHi - eLo) * tmp[k];
                }
                eLo = eHi;
            }
        }
    }
    return out;
}

}  // namespace

KernelOp make_maxreg(const SemigroupModel& S, Orientation o) {
    KernelOp T;
    T.orientation = o;
    T.kind = KernelKind::MaxReg;
    T.alpha = Complex(1.0);
    T.model = &S;
    T.sizeConstant = std::exp(-1.0);  // sup_u u e^{-u}
    return T;
}

KernelOp make_maxreg_alpha(const SemigroupModel& S, Complex alpha, Orientation o) {
    if (!(alpha.real() > 0.0)) throw ParameterError("make_maxreg_alpha: Re(alpha) must be positive");
    KernelOp T;
    T.orientation = o;
    T.kind = KernelKind::MaxRegAlpha;
    T.alpha = alpha;
    T.model = &S;
    T.sizeConstant = std::pow(alpha.real(), alpha.real()) * std::exp(-alpha.real());
    return T;
}

KernelOp make_custom(const SemigroupModel& S, KernelCallback cb, Orientation o) {
    KernelOp T;
    T.orientation = o;
    T.kind = KernelKind::Custom;
    T.model = &S;
    T.custom = std::move(cb);
    return T;
}

Field apply(const KernelOp& T, const Field& f, Part part, ApplyInfo* info) {
    check_compatible(T, f);
    f.check_finite();
    if (T.kind == KernelKind::Custom) return custom_apply(T, f, part, info);
    Engine e{*T.model, T.orientation, T.alpha, f, nullptr};
    return e.run(part, info);
}

Field apply_J_alpha(const KernelOp& T, Complex alpha, const Field& f, double beta) {
    check_compatible(T, f);
    if (T.orientation != Orientation::Forward)
        throw ParameterError("apply_J_alpha: forward kernels only");
    if (!(alpha.real() > (beta - 1.0) / 2.0))
        throw ParameterError("apply_J_alpha: requires Re(alpha) > (beta-1)/2");
    f.check_finite();
    Engine e{*T.model, Orientation::Forward, T.alpha, f,
             [alpha](double t, double s) { return cpow(s / t, alpha); }};
    return e.run(Part::Tail, nullptr);
}

Field apply_M_alpha(Complex alpha, const SemigroupModel& S, const Field& f) {
    if (!(alpha.real() > 0.0)) throw ParameterError("apply_M_alpha: Re(alpha) must be positive");
    f.check_finite();
    Engine e{S, Orientation::Forward, alpha, f, nullptr};
    return e.run(Part::Whole, nullptr);
}

double check_size_bound(const KernelOp& T,
                        const std::vector<std::pair<double, double>>& samplePairs) {
    if (!T.model) throw ParameterError("kernel op has no model");
    if (T.kind == KernelKind::Custom)
        throw ParameterError("check_size_bound: needs a spectral kernel");
    double C = 0.0;
    const auto& mu = T.model->eigenvalues();
    const double re = T.alpha.real();
    for (const auto& [t, s] : samplePairs) {
        const double u = std::abs(t - s);
        if (!(u > 0.0)) throw ParameterError("check_size_bound: t = s sample");
        double best = 0.0;
        for (double m : mu)
            if (m > 0.0) best = std::max(best, std::pow(m, re) * std::exp(-u * m));
        C = std::max(C, std::pow(u, re) * best);
    }
    return C;
}

double hardy_check(double beta, const GridSpec& spec,
                   const std::vector<std::vector<double>>& samples) {
    if (beta >= 1.0) throw ParameterError("hardy_check: requires beta < 1");
    const Grid g = make_grid(spec);
    const int Nt = spec.Nt;
    double worst = 0.0;
    for (const auto& f : samples) {
        if (f.size() != static_cast<std::size_t>(Nt))
            throw ParameterError("hardy_check: profile length != Nt");
        double rhs = 0.0;
        for (int j = 0; j < Nt; ++j) rhs += f[j] * f[j] * std::pow(g.t[j], beta) * g.tw[j];
        if (!(rhs > 0.0)) continue;
        double lhs = 0.0;
        for (int i = 0; i < Nt; ++i) {
            double inner = 0.0;
            for (int j = 0; j < Nt; ++j)
                if (g.t[j] <= g.t[i] / 2.0) inner += std::abs(f[j]) * g.tw[j];
            const double avg = inner / g.t[i];
            lhs += avg * avg * std::pow(g.t[i], beta) * g.tw[i];
        }
        worst = std::max(worst, lhs / rhs);
    }
    return worst;
}

TentRatioResult tent_ratio(const KernelOp& T, const TentParams& params,
                           const std::vector<Field>& inputs) {
    TentRatioResult res;
    for (const auto& f : inputs) {
        const double nf = tent_norm(f, params);
        double ratio = 0.0;
        if (nf > 0.0) ratio = tent_norm(apply(T, f, Part::Whole), params) / nf;
        res.ratios.push_back(ratio);
        res.maxRatio = std::max(res.maxRatio, ratio);
    }
    return res;
}

}  // namespace tsmr
