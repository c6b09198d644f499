#include "tsmr/grid.hpp"

#include <cmath>
#include <string>

namespace tsmr {

namespace {

bool power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

}  // namespace

void GridSpec::validate() const {
    if (n < 1 || n > 3) throw ConfigError("GridSpec: n must be 1, 2 or 3 (got " + std::to_string(n) + ")");
    if (!(X > 0.0)) throw ConfigError("GridSpec: X must be positive");
    if (Nx < 8 || !power_of_two(Nx)) throw ConfigError("GridSpec: Nx must be a power of two >= 8");
    if (Nt < 8 || !power_of_two(Nt)) throw ConfigError("GridSpec: Nt must be a power of two >= 8");
    if (!(tMin > 0.0)) throw ConfigError("GridSpec: tMin must be positive");
    if (!(tMin < tMax)) throw ConfigError("GridSpec: tMin < tMax required");
}

std::size_t GridSpec::spatial_size() const {
    std::size_t s = 1;
    for (int i = 0; i < n; ++i) s *= static_cast<std::size_t>(Nx);
    return s;
}

double GridSpec::cell_volume() const {
    double h = 1.0;
    for (int i = 0; i < n; ++i) h *= dx();
    return h;
}

double GridSpec::rho() const { return std::pow(tMax / tMin, 1.0 / (Nt - 1)); }

Grid make_grid(const GridSpec& spec) {
    spec.validate();
    Grid g;
    g.spec = spec;
    g.h = spec.cell_volume();
    const double logRho = std::log(spec.tMax / spec.tMin) / (spec.Nt - 1);
    g.t.resize(spec.Nt);
    g.tw.resize(spec.Nt);
    for (int i = 0; i < spec.Nt; ++i) {
        g.t[i] = spec.tMin * std::exp(logRho * i);
        g.tw[i] = g.t[i] * logRho;
    }
    // Endpoint cells extend only half a log-step into (tMin, tMax).
    g.tw.front() *= 0.5;
    g.tw.back() *= 0.5;
    g.axis.resize(spec.Nx);
    for (int j = 0; j < spec.Nx; ++j) g.axis[j] = -spec.X + spec.dx() * j;
    return g;
}

std::array<double, 3> Grid::point(std::size_t flat) const {
    std::array<double, 3> y{0.0, 0.0, 0.0};
    const auto Nx = static_cast<std::size_t>(spec.Nx);
    for (int a = spec.n - 1; a >= 0; --a) {
        y[a] = axis[flat % Nx];
        flat /= Nx;
    }
    return y;
}

double Grid::dist(std::size_t a, std::size_t b) const {
    const auto Nx = static_cast<std::size_t>(spec.Nx);
    double sq = 0.0;
    for (int ax = spec.n - 1; ax >= 0; --ax) {
        auto ia = a % Nx, ib = b % Nx;
        a /= Nx;
        b /= Nx;
        double d = std::abs(static_cast<double>(ia) - static_cast<double>(ib)) * spec.dx();
        d = std::min(d, 2.0 * spec.X - d);
        sq += d * d;
    }
    return std::sqrt(sq);
}

double Grid::dist_to(std::size_t flat, const std::array<double, 3>& y) const {
    const auto p = point(flat);
    double sq = 0.0;
    for (int a = 0; a < spec.n; ++a) {
        double d = std::fmod(std::abs(p[a] - y[a]), 2.0 * spec.X);
        d = std::min(d, 2.0 * spec.X - d);
        sq += d * d;
    }
    return std::sqrt(sq);
}

void Field::check_finite() const {
    for (std::size_t i = 0; i < values.size(); ++i)
        if (!std::isfinite(values[i].real()) || !std::isfinite(values[i].imag()))
            throw NumericError("Field: non-finite value at flat index " + std::to_string(i));
}

void Field::check_support(const Grid& g) const {
    if (!support) return;
    const std::size_t S = spec.spatial_size();
    for (int it = 0; it < spec.Nt; ++it) {
        const bool outT = g.t[it] > support->timeUpperBound;
        const Complex* s = slice(it);
        for (std::size_t j = 0; j < S; ++j) {
            if (s[j] == Complex(0.0)) continue;
            if (outT || g.dist_to(j, support->ballCenter) > support->ballRadius)
                throw NumericError("Field: nonzero value outside declared support at (t index " +
                                   std::to_string(it) + ", flat " + std::to_string(j) + ")");
        }
    }
}

Field sample(const SampleFn& fn, const GridSpec& spec) {
    Grid g = make_grid(spec);
    Field f(spec);
    const std::size_t S = spec.spatial_size();
    for (int it = 0; it < spec.Nt; ++it) {
        Complex* out = f.slice(it);
        for (std::size_t j = 0; j < S; ++j) {
            const auto y = g.point(j);
            const Complex v = fn(g.t[it], y);
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw NumericError("sample: fn produced non-finite value at t=" + std::to_string(g.t[it]) +
                                   ", y=(" + std::to_string(y[0]) + "," + std::to_string(y[1]) + "," +
                                   std::to_string(y[2]) + ")");
            out[j] = v;
        }
    }
    return f;
}

}  // namespace tsmr
