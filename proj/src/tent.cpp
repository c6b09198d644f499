#include "tsmr/tent.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "tsmr/fft.hpp"

namespace tsmr {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Per-axis periodic (minimum-image) displacement of lattice offset j.
double offset_disp(int j, int Nx, double dx, double X) {
    double d = j * dx;
    return std::min(d, 2.0 * X - d);
}

// Indicator of the periodic ball of radius R (strict) over lattice offsets.
void ball_indicator(const GridSpec& spec, double R, std::vector<Complex>& ind) {
    const std::size_t S = spec.spatial_size();
    ind.assign(S, Complex(0.0));
    const double R2 = R * R;
    for (std::size_t f = 0; f < S; ++f) {
        std::size_t rem = f;
        double sq = 0.0;
        for (int a = spec.n - 1; a >= 0; --a) {
            const int j = static_cast<int>(rem % spec.Nx);
            rem /= spec.Nx;
            const double d = offset_disp(j, spec.Nx, spec.dx(), spec.X);
            sq += d * d;
        }
        if (sq < R2) ind[f] = Complex(1.0);
    }
}

// Signed minimum-image displacement p - c on the [-X, X) torus.
double signed_disp(double p, double c, double X) {
    double d = p - c;
    d -= 2.0 * X * std::round(d / (2.0 * X));
    return d;
}

}  // namespace

void TentParams::validate() const {
    if (!pInf && !(p > 0.0)) throw ParameterError("TentParams: p must be positive or infinity");
    if (!(m > 0.0)) throw ParameterError("TentParams: m must be positive");
    if (!std::isfinite(beta)) throw ParameterError("TentParams: beta must be finite");
}

double tent_norm(const Field& g, const TentParams& params) {
    params.validate();
    if (params.pInf) return carleson_norm(g, params.m, params.beta);
    const Grid grid = make_grid(g.spec);
    g.check_finite();
    const std::size_t S = g.spec.spatial_size();

    bool allZero = true;
    for (const auto& v : g.values)
        if (v != Complex(0.0)) {
            allZero = false;
            break;
        }
    if (allZero) return 0.0;

    SpatialFFT fft(g.spec.n, g.spec.Nx);
    std::vector<Complex> acc(S, Complex(0.0)), ind(S), sq(S);
    for (int it = 0; it < g.spec.Nt; ++it) {
        const double t = grid.t[it];
        const double R = std::pow(t, 1.0 / params.m);
        ball_indicator(g.spec, R, ind);
        fft.forward(ind.data());
        const Complex* s = g.slice(it);
        for (std::size_t j = 0; j < S; ++j) sq[j] = Complex(std::norm(s[j]));
        fft.forward(sq.data());
        const double c =
            std::pow(t, params.beta - g.spec.n / params.m) * grid.tw[it] * grid.h;
        if (!std::isfinite(c)) throw NumericError("tent_norm: weight overflow at t=" + std::to_string(t));
        for (std::size_t j = 0; j < S; ++j) acc[j] += c * ind[j] * sq[j];
    }
    fft.inverse(acc.data());

    double maxA = 0.0;
    for (std::size_t j = 0; j < S; ++j) maxA = std::max(maxA, acc[j].real());
    // FFT round-off leaves O(eps * maxA) residue where A is exactly zero;
    // for p < 2 the fractional power amplifies it, so clamp below a relative
    // noise floor.
    const double floor_ = maxA * 1e-12;
    double sum = 0.0;
    const double half = params.p / 2.0;
    for (std::size_t j = 0; j < S; ++j) {
        const double A = acc[j].real() < floor_ ? 0.0 : acc[j].real();
        sum += grid.h * std::pow(A, half);
    }
    const double result = std::pow(sum, 1.0 / params.p);
    if (!std::isfinite(result)) throw NumericError("tent_norm: non-finite result (extreme p or beta)");
    return result;
}

double carleson_norm(const Field& g, double m, double beta) {
    if (!(m > 0.0)) throw ParameterError("carleson_norm: m must be positive");
    const Grid grid = make_grid(g.spec);
    g.check_finite();
    const std::size_t S = g.spec.spatial_size();

    // Cumulative time-weighted squares sum_{i<=k} t_i^beta w_i |g_i|^2.
    std::vector<std::vector<double>> cum(g.spec.Nt, std::vector<double>(S));
    for (int it = 0; it < g.spec.Nt; ++it) {
        const double c = std::pow(grid.t[it], beta) * grid.tw[it];
        const Complex* s = g.slice(it);
        for (std::size_t j = 0; j < S; ++j)
            cum[it][j] = (it ? cum[it - 1][j] : 0.0) + c * std::norm(s[j]);
    }

    SpatialFFT fft(g.spec.n, g.spec.Nx);
    std::vector<Complex> ind(S), buf(S);
    double best = 0.0;
    const double rMin = std::pow(g.spec.tMin, 1.0 / m);
    const double rMax = 2.0 * std::max(std::pow(g.spec.tMax, 1.0 / m), g.spec.X);
    for (double r = rMin; r <= rMax; r *= 2.0) {
        const double rm = std::pow(r, m);
        int k = -1;
        for (int it = 0; it < g.spec.Nt; ++it)
            if (grid.t[it] < rm) k = it;
        if (k < 0) continue;
        ball_indicator(g.spec, r, ind);
        fft.forward(ind.data());
        for (std::size_t j = 0; j < S; ++j) buf[j] = Complex(cum[k][j]);
        fft.forward(buf.data());
        for (std::size_t j = 0; j < S; ++j) buf[j] *= ind[j];
        fft.inverse(buf.data());
        const double scale = grid.h / std::pow(r, g.spec.n);
        for (std::size_t j = 0; j < S; ++j) best = std::max(best, scale * buf[j].real());
    }
    return std::sqrt(std::max(best, 0.0));
}

GridSpec companion_spec(const GridSpec& spec, double m) {
    if (!(m > 0.0)) throw ParameterError("companion_spec: m must be positive");
    GridSpec out = spec;
    out.tMin = std::pow(spec.tMin, 1.0 / m);
    out.tMax = std::pow(spec.tMax, 1.0 / m);
    if (!(out.tMin < out.tMax))
        throw DomainError("companion_spec: degenerate time range after substitution t -> t^{1/m}");
    return out;
}

Field change_homogeneity(const Field& f, double m, double beta) {
    const GridSpec tgt = companion_spec(f.spec, m);
    f.check_finite();
    Field out(tgt);
    const Grid grid = make_grid(tgt);
    const std::size_t S = tgt.spatial_size();
    const double sqm = std::sqrt(m);
    const double expo = m * (1.0 + beta) / 2.0;
    for (int it = 0; it < tgt.Nt; ++it) {
        const double fac = sqm * std::pow(grid.t[it], expo);
        const Complex* in = f.slice(it);
        Complex* o = out.slice(it);
        for (std::size_t j = 0; j < S; ++j) o[j] = fac * in[j];
    }
    if (f.support) {
        Support s = *f.support;
        s.timeUpperBound = std::pow(s.timeUpperBound, 1.0 / m);
        out.support = s;
    }
    return out;
}

AtomKind parse_atom_kind(const std::string& s) {
    if (s == "constant") return AtomKind::Constant;
    if (s == "randomized") return AtomKind::Randomized;
    if (s == "oscillatory") return AtomKind::Oscillatory;
    throw ParameterError("unknown atom kind: " + s);
}

namespace {

// Smooth seeded profile in tent-normalized coordinates tau = t/r^m,
// u = (y - x0)/r; depending only on (tau, u, seed) keeps atom families
// covariant under rescaling r.
struct AtomProfile {
    AtomKind kind;
    int n;
    double c[4], th[4], ph[4];
    double osc = 0.0;

    AtomProfile(AtomKind k, int dim, std::uint64_t seed) : kind(k), n(dim) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
        for (int i = 0; i < 4; ++i) {
            c[i] = unit(rng);
            th[i] = angle(rng);
            ph[i] = angle(rng);
        }
        osc = 4.0 + static_cast<double>(seed % 4);
    }

    Complex operator()(double tau, const std::array<double, 3>& u) const {
        switch (kind) {
            case AtomKind::Constant:
                return Complex(1.0);
            case AtomKind::Randomized: {
                double s = 0.0;
                for (int k = 0; k < 4; ++k) {
                    double term = c[k] * std::cos(k * kPi * tau + th[k]);
                    for (int a = 0; a < n; ++a) term *= std::cos(k * kPi * u[a] + ph[k]);
                    s += term;
                }
                return Complex(s);
            }
            case AtomKind::Oscillatory: {
                double phase = 0.0;
                for (int a = 0; a < n; ++a) phase += u[a];
                return std::polar(std::cos(kPi * tau / 2.0), osc * kPi * phase + th[0]);
            }
        }
        return Complex(0.0);
    }
};

}  // namespace

Atom make_atom(AtomKind kind, double r, const std::array<double, 3>& x0, const TentParams& params,
               const GridSpec& spec, std::uint64_t seed) {
    params.validate();
    if (!(r > 0.0)) throw ParameterError("make_atom: r must be positive");
    const Grid grid = make_grid(spec);
    const std::size_t S = spec.spatial_size();
    const double rm = std::pow(r, params.m);
    const AtomProfile profile(kind, spec.n, seed);

    Atom a;
    a.field = Field(spec);
    a.r = r;
    a.x0 = x0;
    a.params = params;

    double Q = 0.0;
    std::size_t hits = 0;
    for (int it = 0; it < spec.Nt; ++it) {
        const double t = grid.t[it];
        if (t > rm * (1.0 + 1e-12)) break;
        const double tau = t / rm;
        const double wt = std::pow(t, params.beta) * grid.tw[it] * grid.h;
        Complex* out = a.field.slice(it);
        for (std::size_t j = 0; j < S; ++j) {
            const auto p = grid.point(j);
            std::array<double, 3> u{0.0, 0.0, 0.0};
            double sq = 0.0;
            for (int ax = 0; ax < spec.n; ++ax) {
                u[ax] = signed_disp(p[ax], x0[ax], spec.X) / r;
                sq += u[ax] * u[ax];
            }
            if (sq > 1.0 + 1e-12) continue;
            const Complex v = profile(tau, u);
            out[j] = v;
            Q += wt * std::norm(v);
            ++hits;
        }
    }
    if (hits == 0) throw DomainError("make_atom: tent (0, r^m] x B(x0, r) does not intersect the grid");
    if (!(Q > 0.0)) throw DomainError("make_atom: profile vanishes on every tent node");

    const double twoOverP = params.pInf ? 0.0 : 2.0 / params.p;
    const double target = std::pow(r, -static_cast<double>(spec.n) * (twoOverP - 1.0));
    const double scale = std::sqrt(target / Q);
    for (auto& v : a.field.values) v *= scale;
    a.field.support = Support{rm, x0, r};
    return a;
}

AtomCheck verify_atom(const Atom& a, double slackTol) {
    const Grid grid = make_grid(a.field.spec);
    const std::size_t S = a.field.spec.spatial_size();
    const double rm = std::pow(a.r, a.params.m);

    bool supportOk = true;
    double Q = 0.0;
    for (int it = 0; it < a.field.spec.Nt; ++it) {
        const double t = grid.t[it];
        const bool outT = t > rm * (1.0 + 1e-12);
        const double wt = std::pow(t, a.params.beta) * grid.tw[it] * grid.h;
        const Complex* s = a.field.slice(it);
        for (std::size_t j = 0; j < S; ++j) {
            if (s[j] == Complex(0.0)) continue;
            if (outT || grid.dist_to(j, a.x0) > a.r * (1.0 + 1e-12)) supportOk = false;
            Q += wt * std::norm(s[j]);
        }
    }
    const double twoOverP = a.params.pInf ? 0.0 : 2.0 / a.params.p;
    const double slack = std::pow(a.r, static_cast<double>(a.field.spec.n) * (twoOverP - 1.0)) * Q - 1.0;
    return AtomCheck{supportOk && slack <= slackTol, slack};
}

}  // namespace tsmr
