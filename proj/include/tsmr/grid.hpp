#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "tsmr/errors.hpp"

namespace tsmr {

using Complex = std::complex<double>;

// Discretization of (0,inf) x [-X,X)^n: geometric time nodes, uniform
// periodic spatial nodes.
struct GridSpec {
    int n = 1;          // spatial dimension, 1..3
    double X = 1.0;     // spatial half-width
    int Nx = 8;         // points per axis, power of two
    double tMin = 1e-3;
    double tMax = 1.0;
    int Nt = 8;         // geometric time nodes, power of two

    void validate() const;
    std::size_t spatial_size() const;
    std::size_t size() const { return spatial_size() * static_cast<std::size_t>(Nt); }
    double dx() const { return 2.0 * X / Nx; }
    double cell_volume() const;
    double rho() const;  // geometric ratio between consecutive time nodes

    bool operator==(const GridSpec&) const = default;
};

struct Grid {
    GridSpec spec;
    std::vector<double> t;   // time nodes, ascending
    std::vector<double> tw;  // time quadrature weights t_i * ln(rho)
    std::vector<double> axis;  // per-axis coordinates, -X + j*dx
    double h = 0.0;            // spatial cell volume

    // Coordinates of the flattened spatial index (row-major over axes).
    std::array<double, 3> point(std::size_t flat) const;
    // Periodic distance between two flattened spatial indices.
    double dist(std::size_t a, std::size_t b) const;
    // Periodic distance from a flattened index to an arbitrary point.
    double dist_to(std::size_t flat, const std::array<double, 3>& y) const;
};

Grid make_grid(const GridSpec& spec);

struct Support {
    double timeUpperBound = 0.0;
    std::array<double, 3> ballCenter{0.0, 0.0, 0.0};
    double ballRadius = 0.0;
};

// Complex samples on a Grid, time-major then row-major spatial.
struct Field {
    GridSpec spec;
    std::vector<Complex> values;
    std::optional<Support> support;

    Field() = default;
    explicit Field(const GridSpec& s) : spec(s), values(s.size(), Complex(0.0)) {}

    Complex* slice(int it) { return values.data() + static_cast<std::size_t>(it) * spec.spatial_size(); }
    const Complex* slice(int it) const {
        return values.data() + static_cast<std::size_t>(it) * spec.spatial_size();
    }

    void check_finite() const;
    // Declared support must be honored exactly (zero outside).
    void check_support(const Grid& g) const;
};

using SampleFn = std::function<Complex(double t, const std::array<double, 3>& y)>;

// Evaluates fn on every node; throws NumericError naming the node on NaN/Inf.
Field sample(const SampleFn& fn, const GridSpec& spec);

}  // namespace tsmr
