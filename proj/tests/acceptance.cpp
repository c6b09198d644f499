// Acceptance gate: one line per criterion, nonzero exit iff any criterion
// fails. Tolerances are pinned here, not configurable.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "tsmr/experiments.hpp"
#include "tsmr/exponents.hpp"
#include "tsmr/offdiag.hpp"
#include "tsmr/sio.hpp"
#include "tsmr/tent.hpp"

using namespace tsmr;
using namespace tsmr::exponents;
using nlohmann::json;

namespace {

constexpr double kPi = 3.14159265358979323846;
const ExtRat kInf = ExtRat::infinity();

// Pinned tolerances.
constexpr double kGoldenSeconds = 1.0;        // criterion 1
constexpr double kSweepSeconds = 10.0;        // criterion 2
constexpr double kIdentityRel = 0.03;         // criterion 3
constexpr double kIsometryRel = 0.02;         // criterion 4
constexpr double kIsometrySlack = 1e-6 + 1e-9;
constexpr double kHeatMinM = 5.0;             // criterion 5
constexpr double kHeatMaxResidual = 0.5;
constexpr double kPoissonMinM = 0.8, kPoissonMaxM = 1.6;
constexpr double kDivformMinM = 3.0;
constexpr double kRefinementRel = 0.20;       // criterion 6
constexpr double kSchurFactor = 1.1;
constexpr double kAtomSpread = 2.0;           // criterion 7
constexpr double kDualityRel = 0.01;          // criterion 8

struct Outcome {
    bool pass;
    std::string detail;
};

double elapsed(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// ---------------------------------------------------------------- criterion 1

Outcome criterion1() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    const Rat table16[] = {Rat(1, 2), Rat(2, 3), Rat(6, 7), Rat(1), Rat(6, 5), Rat(4, 3)};
    for (int n = 1; n <= 6; ++n) {
        for (Preset tag : {Preset::Prop14Heat, Preset::Prop14Sqrt, Preset::Prop15}) {
            const auto r = preset(tag, n);
            ok = ok && r.interval.lo.value == ExtRat(Rat(n, n + 1)) && r.interval.hi.value.is_inf() &&
                 !r.interval.hi.open;
        }
        const auto p16 = preset(Preset::Prop16, n);
        ok = ok && p16.interval.lo.value == ExtRat(table16[n - 1]) && p16.interval.hi.value.is_inf() &&
             !p16.interval.hi.open;
        const auto p17 = preset(Preset::Prop17, n);
        ok = ok && p17.interval.lo.value == ExtRat(table16[n - 1]);
        if (n <= 4) ok = ok && p17.interval.hi.value.is_inf() && !p17.interval.hi.open;
    }
    ok = ok && preset(Preset::Prop17, 5).interval.hi.value == ExtRat(Rat(6)) &&
         preset(Preset::Prop17, 5).interval.hi.limit &&
         preset(Preset::Prop17, 6).interval.hi.value == ExtRat(Rat(4));
    const double sec = elapsed(t0);
    ok = ok && sec < kGoldenSeconds;
    return {ok, "exponent golden table, exact, " + fmt(sec) + "s"};
}

// ---------------------------------------------------------------- criterion 2

Outcome criterion2() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    int checked = 0;
    for (int n = 1; n <= 6; ++n)
        for (int mNum = 1; mNum <= 4; ++mNum)
            for (int bNum = -8; bNum <= 3; ++bNum)
                for (int qNum = 4; qNum <= 16; ++qNum)
                    for (int qDen = 4; qDen <= 10; ++qDen) {
                        const Rat m(mNum), beta(bNum, 4);
                        if (!(beta < Rat(1))) continue;
                        const Rat q(qNum, qDen);
                        // q = 2 makes p_c = tilde_p_c identically; the chain
                        // is asserted on q in [1, 2).
                        if (q < Rat(1) || q >= Rat(2)) continue;
                        const Rat pc = p_c(n, m, beta, ExtRat(q));
                        if (pc == Rat(0)) continue;
                        const Rat ptc = tilde_p_c(n, m, beta, ExtRat(q));
                        const bool eq1 = ptc == pc, eq2 = ptc == Rat(1), eq3 = pc == Rat(1);
                        const Rat lhs = Rat(n) / (Rat(2) * m);
                        const Rat rhs =
                            (Rat(1) - beta) / Rat(2) + (Rat(n) / m) * (q.inv() - Rat(1, 2));
                        ok = ok && eq1 == eq2 && eq2 == eq3 && eq3 == (lhs == rhs);
                        ++checked;
                    }
    ok = ok && checked >= 10000;
    // Monotonicity in q.
    for (int n = 1; n <= 4 && ok; ++n)
        for (int mNum = 1; mNum <= 3; ++mNum)
            for (int bNum = -4; bNum <= 1; ++bNum) {
                const Rat m(mNum), beta(bNum, 2);
                if (!(beta < Rat(1))) continue;
                Rat prevPc(-1), prevPtc(-1);
                for (int k = 0; k <= 16; ++k) {
                    const Rat q = Rat(1) + Rat(k, 16);
                    const Rat pc = p_c(n, m, beta, ExtRat(q));
                    const Rat ptc = tilde_p_c(n, m, beta, ExtRat(q));
                    ok = ok && pc >= prevPc && ptc >= prevPtc;
                    prevPc = pc;
                    prevPtc = ptc;
                }
            }
    const double sec = elapsed(t0);
    ok = ok && sec < kSweepSeconds;
    return {ok, std::to_string(checked) + "-point sweep, exact, " + fmt(sec) + "s"};
}

// ---------------------------------------------------------------- criterion 3

Outcome criterion3() {
    double worst = 0.0;
    const std::vector<std::pair<double, double>> pairs{{1.0, 0.0}, {2.0, -0.5}};
    for (int n : {1, 2}) {
        const GridSpec spec{n, 3.0, 256, 0.7, 2.0, 256};
        const double bn = n == 1 ? 2.0 : kPi;
        for (const auto& [m, beta] : pairs)
            for (std::uint64_t seed = 1; seed <= 5; ++seed) {
                const Field g = random_bump(spec, seed);
                const double tn = tent_norm(g, TentParams{2.0, m, beta});
                const double l2 = weighted_l2(g, beta);
                worst = std::max(worst, std::abs(tn * tn / (l2 * l2) / bn - 1.0));
            }
    }
    return {worst <= kIdentityRel, "p=2 identity, max rel error " + fmt(worst) + " (tol " +
                                       fmt(kIdentityRel) + "), n=1 and n=2"};
}

// ---------------------------------------------------------------- criterion 4

Outcome criterion4() {
    const GridSpec spec{1, 2.0, 64, 1e-3, 1.0, 64};
    double worstRel = 0.0, worstSlack = 0.0;
    for (const auto& [m, beta] :
         std::vector<std::pair<double, double>>{{2.0, 0.0}, {1.0, -1.0}, {2.0, -0.5}})
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const Atom a = make_atom(AtomKind::Randomized, 0.8, {0.0, 0.0, 0.0},
                                     TentParams{1.0, m, beta}, spec, seed);
            const double n1 = tent_norm(a.field, a.params);
            const Field jf = change_homogeneity(a.field, m, beta);
            const double n2 = tent_norm(jf, TentParams{1.0, 1.0, -1.0});
            worstRel = std::max(worstRel, std::abs(n1 - n2) / n1);
            const Atom mapped{jf, 0.8, a.x0, TentParams{1.0, 1.0, -1.0}};
            worstSlack = std::max(worstSlack, std::abs(verify_atom(mapped, 1.0).slack));
        }
    const bool ok = worstRel <= kIsometryRel && worstSlack <= kIsometrySlack;
    return {ok, "isometry, max rel " + fmt(worstRel) + " (tol " + fmt(kIsometryRel) +
                    "), max mapped slack " + fmt(worstSlack)};
}

// ---------------------------------------------------------------- criterion 5

Outcome criterion5() {
    const GridSpec spec{1, 4.0, 256, 1e-2, 1.0, 8};
    const DecayEstimate heat = measure_offdiag(SemigroupModel::heat(spec), NormPair::N22,
                                               {0.01, 0.02}, {0.92, 0.97, 1.02, 1.07, 1.125}, 0.5,
                                               17.0);
    const GridSpec pspec{1, 8.0, 256, 1e-2, 1.0, 8};
    const DecayEstimate poisson = measure_offdiag(SemigroupModel::poisson(pspec), NormPair::N22,
                                                  {0.1, 0.2}, {1.5, 2.0, 2.5, 3.0}, 0.5);
    bool divOk = true;
    double divWorst = 1e300;
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> ua(1.0, 2.0);
    for (int rep = 0; rep < 3; ++rep) {
        std::vector<double> a(static_cast<std::size_t>(spec.Nx));
        for (auto& x : a) x = ua(rng);
        const DecayEstimate e = measure_offdiag(SemigroupModel::divform1d(spec, a), NormPair::N22,
                                                {0.02}, {1.1, 1.2, 1.3, 1.35}, 0.5);
        divWorst = std::min(divWorst, e.fittedM);
        divOk = divOk && e.fittedM >= kDivformMinM;
    }
    const bool ok = heat.fittedM >= kHeatMinM && heat.residual < kHeatMaxResidual &&
                    poisson.fittedM >= kPoissonMinM && poisson.fittedM <= kPoissonMaxM && divOk;
    return {ok, "off-diagonal fits: heat M=" + fmt(heat.fittedM) + " res=" + fmt(heat.residual) +
                    ", poisson M=" + fmt(poisson.fittedM) + ", divform min M=" + fmt(divWorst)};
}

// ---------------------------------------------------------------- criterion 6

Outcome criterion6() {
    // Grid-refinement stability of the weighted L^2 ratio.
    bool ok = true;
    double worstChange = 0.0;
    const std::vector<double> betas{-0.5, 0.0, 0.5};
    std::vector<std::vector<double>> ratios(betas.size());  // per beta, per Nt
    for (int Nt : {64, 128, 256}) {
        const GridSpec spec{1, 2.0, 128, 1e-2, 1.0, Nt};
        const SemigroupModel L = SemigroupModel::heat(spec);
        const KernelOp T = make_maxreg(L);
        std::vector<double> best(betas.size(), 0.0);
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            const Field f = random_bump(spec, seed);
            const Field Tf = apply(T, f);
            for (std::size_t b = 0; b < betas.size(); ++b)
                best[b] = std::max(best[b], weighted_l2(Tf, betas[b]) / weighted_l2(f, betas[b]));
        }
        for (std::size_t b = 0; b < betas.size(); ++b) ratios[b].push_back(best[b]);
    }
    for (const auto& r : ratios)
        for (std::size_t k = 1; k < r.size(); ++k) {
            const double change = std::abs(r[k] / r[k - 1] - 1.0);
            worstChange = std::max(worstChange, change);
            ok = ok && change < kRefinementRel;
        }
    // Scalar-model Schur bound for the analytic family.
    const GridSpec spec{1, 2.0, 32, 1e-2, 1.0, 64};
    const SemigroupModel L = SemigroupModel::heat(spec);
    double worstFactor = 0.0;
    for (const Complex alpha : {Complex(1.0), Complex(1.0, 2.0), Complex(2.0)}) {
        double measured = 0.0;
        for (int mode : {1, 2, 4})
            for (double rate : {0.5, 1.0}) {
                const double xi = kPi / spec.X * mode;
                const Field f = sample(
                    [=](double t, const std::array<double, 3>& y) {
                        return Complex(std::exp(-rate * t) * std::cos(xi * y[0]));
                    },
                    spec);
                const Field Mf = apply_M_alpha(alpha, L, f);
                measured = std::max(measured, weighted_l2(Mf, 0.0) / weighted_l2(f, 0.0));
            }
        double bound = 1e300;
        for (int k = 1; k <= 150; ++k) {
            const double nu = k * (kPi / 2.0) / 151.0;
            bound = std::min(bound, std::tgamma(alpha.real()) *
                                        std::exp(nu * std::abs(alpha.imag())) /
                                        std::pow(std::cos(nu), alpha.real()));
        }
        worstFactor = std::max(worstFactor, measured / bound);
        ok = ok && measured <= kSchurFactor * bound;
    }
    return {ok, "weighted L^2 ratios: max refinement change " + fmt(worstChange) + " (tol " +
                    fmt(kRefinementRel) + "), max Schur factor " + fmt(worstFactor) + " (tol " +
                    fmt(kSchurFactor) + ")"};
}

// ---------------------------------------------------------------- criterion 7

Outcome criterion7() {
    // Domain large enough that the coarsest atom (r = 1) is not truncated:
    // X/r >= 4 and tMax/r^m >= 8 at every scale.
    const GridSpec spec{1, 4.0, 2048, 1e-5, 8.0, 256};
    const SemigroupModel L = SemigroupModel::heat(spec);
    const KernelOp T = make_maxreg(L);
    const double m = 2.0, beta = 0.0;
    const std::vector<double> pSweep{0.8, 1.0, 1.5, 2.0};
    bool ok = true;
    double worstSpread = 0.0;
    for (AtomKind kind : {AtomKind::Constant, AtomKind::Randomized})
        for (std::uint64_t seed : {1ull, 2ull}) {
            std::vector<Field> applied;
            std::vector<double> rs;
            for (int k = 0; k <= 5; ++k) {
                const double r = std::pow(2.0, -k);
                const Atom ref =
                    make_atom(kind, r, {0.0, 0.0, 0.0}, TentParams{2.0, m, beta}, spec, seed);
                applied.push_back(apply(T, ref.field));
                rs.push_back(r);
            }
            for (double p : pSweep) {
                double lo = 1e300, hi = 0.0;
                for (std::size_t k = 0; k < rs.size(); ++k) {
                    const double scale = std::pow(rs[k], -1.0 * (1.0 / p - 0.5));
                    const double v = scale * tent_norm(applied[k], TentParams{p, m, beta});
                    lo = std::min(lo, v);
                    hi = std::max(hi, v);
                }
                const double spread = hi / lo;
                worstSpread = std::max(worstSpread, spread);
                ok = ok && spread <= kAtomSpread;
            }
        }
    return {ok, "atom-family uniformity, max spread " + fmt(worstSpread) + " (tol " +
                    fmt(kAtomSpread) + ")"};
}

// ---------------------------------------------------------------- criterion 8

Outcome criterion8() {
    const GridSpec spec{1, 2.0, 32, 1e-2, 1.0, 64};
    const SemigroupModel L = SemigroupModel::heat(spec);
    const KernelOp fwd = make_maxreg(L, Orientation::Forward);
    const KernelOp bwd = make_maxreg(L, Orientation::Backward);
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Field f = random_bump(spec, seed, spec.tMin * 4.0, spec.tMax / 8.0);
        const Field g = random_bump(spec, seed + 1000, spec.tMin * 4.0, spec.tMax / 8.0);
        const Complex lhs = inner_dtdy(apply(fwd, f), g);
        const Complex rhs = inner_dtdy(f, apply(bwd, g));
        worst = std::max(worst, std::abs(lhs - rhs) / std::max(std::abs(lhs), std::abs(rhs)));
    }
    return {worst <= kDualityRel,
            "duality, max rel " + fmt(worst) + " (tol " + fmt(kDualityRel) + "), 10 pairs"};
}

// ---------------------------------------------------------------- criterion 9

Outcome criterion9() {
    const GridSpec spec{1, 1.0, 8, 1e-3, 4.0, 256};
    const Grid g = make_grid(spec);
    std::vector<std::vector<double>> samples;
    for (double gamma : {0.0, 0.25, 0.5}) {
        std::vector<double> f(static_cast<std::size_t>(spec.Nt), 0.0);
        for (int j = 0; j < spec.Nt; ++j)
            if (g.t[j] <= 1.0) f[static_cast<std::size_t>(j)] = std::pow(g.t[j], -gamma);
        samples.push_back(std::move(f));
    }
    bool ok = true;
    double prev = -1.0, last = 0.0;
    for (double beta : {0.0, 0.5, 0.9, 0.99}) {
        const double c = hardy_check(beta, spec, samples);
        ok = ok && std::isfinite(c) && c > prev;
        prev = c;
        last = c;
    }
    return {ok, "Hardy constants monotone and finite up to beta=0.99 (C=" + fmt(last) + ")"};
}

// --------------------------------------------------------------- criterion 10

Outcome criterion10() {
    auto grid = [](int n, double X, int Nx, double tMin, double tMax, int Nt) {
        return json{{"n", n}, {"X", X}, {"Nx", Nx}, {"tMin", tMin}, {"tMax", tMax}, {"Nt", Nt}};
    };
    const std::vector<json> suite{
        {{"kind", "norm-identity"},
         {"grid", grid(1, 3.0, 256, 0.7, 2.0, 128)},
         {"pairs", json::array({json::array({1.0, 0.0})})},
         {"seeds", json::array({1, 2})}},
        {{"kind", "isometry"},
         {"grid", grid(1, 2.0, 64, 1e-3, 1.0, 64)},
         {"pairs", json::array({json::array({2.0, 0.0})})},
         {"p", 1.0},
         {"r", 0.8},
         {"seeds", json::array({1})}},
        {{"kind", "offdiag-fit"},
         {"grid", grid(1, 4.0, 256, 1e-2, 1.0, 8)},
         {"model", {{"family", "heat"}}},
         {"tLadder", json::array({0.01, 0.02})},
         {"dLadder", json::array({0.92, 0.97, 1.02, 1.07, 1.125})},
         {"ballRadius", 0.5},
         {"threshold", 17.0}},
        {{"kind", "maxreg-ratio"},
         {"grid", grid(1, 2.0, 64, 1e-2, 1.0, 32)},
         {"model", {{"family", "heat"}}},
         {"mode", "l2"},
         {"betas", json::array({0.0, 0.5})},
         {"seeds", json::array({3})}},
        {{"kind", "exponent-table"}},
        {{"kind", "hardy-sweep"},
         {"grid", grid(1, 1.0, 8, 1e-3, 4.0, 128)},
         {"betas", json::array({0.0, 0.5, 0.9})}},
        {{"kind", "duality-check"},
         {"grid", grid(1, 2.0, 32, 1e-2, 1.0, 64)},
         {"model", {{"family", "heat"}}},
         {"seeds", json::array({1, 2})}}};
    bool ok = true;
    for (const auto& j : suite) {
        const auto cfg = ExperimentConfig::from_json(j);
        const Report a = run(cfg);
        const Report b = run(cfg);
        ok = ok && a.payload() == b.payload();
    }
    return {ok, "byte-identical payloads over the 7-kind experiment suite"};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1", criterion1}, {"2", criterion2}, {"3", criterion3}, {"4", criterion4},
        {"5", criterion5}, {"6", criterion6}, {"7", criterion7}, {"8", criterion8},
        {"9", criterion9}, {"10", criterion10}};
    int failures = 0;
    for (const auto& [id, fn] : criteria) {
        Outcome o{false, ""};
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failures;
        std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", id.c_str(),
                    o.detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
