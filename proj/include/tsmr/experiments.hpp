#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "tsmr/grid.hpp"

#include "json.hpp"

namespace tsmr {

// Smooth seeded space-time bump (Gaussian in space, log-Gaussian in time),
// optionally cut to a time window [tLow, tHigh].
Field random_bump(const GridSpec& spec, std::uint64_t seed, double tLow = 0.0,
                  double tHigh = std::numeric_limits<double>::infinity());

// ( sum |f|^2 t^beta w h )^{1/2}.
double weighted_l2(const Field& f, double beta);

// sum_{t,y} a conj(b) w h  (the L^2(dtdy) pairing).
Complex inner_dtdy(const Field& a, const Field& b);

// Declarative experiment: kind plus the parameters that kind consumes.
struct ExperimentConfig {
    std::string kind;  // norm-identity | isometry | offdiag-fit | maxreg-ratio |
                       // exponent-table | hardy-sweep | duality-check
    nlohmann::json raw;

    static ExperimentConfig from_json(const nlohmann::json& j);
    static ExperimentConfig load(const std::string& path);
};

struct Report {
    nlohmann::json body;     // deterministic payload: config echo, cases, pass
    nlohmann::json runtime;  // wall-clock metadata, excluded from determinism
    bool pass = false;

    nlohmann::json full() const;
    // Deterministic serialization of the payload only.
    std::string payload() const { return body.dump(2); }
};

// Static sanity diagnostics (non-throwing): wrap-around risk, hypothesis
// range checks, dense-oracle memory caps.
std::vector<std::string> validate(const ExperimentConfig& cfg);

Report run(const ExperimentConfig& cfg);

// Optional artifacts: JSON report and a plottable CSV table.
void write_report(const Report& r, const std::string& jsonPath, const std::string& csvPath);

}  // namespace tsmr
