#include "tsmr/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "tsmr/exponents.hpp"
#include "tsmr/field_io.hpp"
#include "tsmr/offdiag.hpp"
#include "tsmr/sio.hpp"
#include "tsmr/tent.hpp"

namespace tsmr {

using nlohmann::json;

namespace {

constexpr const char* kVersion = "1.0.0";

double ball_volume(int n) {
    switch (n) {
        case 1: return 2.0;
        case 2: return 3.14159265358979323846;
        case 3: return 4.0 * 3.14159265358979323846 / 3.0;
    }
    throw ParameterError("ball volume: n must be 1..3");
}

}  // namespace

Field random_bump(const GridSpec& spec, std::uint64_t seed, double tLow, double tHigh) {
    const Grid g = make_grid(spec);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> posU(-spec.X / 2.0, spec.X / 2.0);
    std::uniform_real_distribution<double> sigU(spec.X / 8.0, spec.X / 4.0);
    std::uniform_real_distribution<double> ampU(0.5, 1.5);
    const double logMin = std::log(spec.tMin), logMax = std::log(spec.tMax);
    std::uniform_real_distribution<double> tcU(logMin + 0.25 * (logMax - logMin),
                                               logMax - 0.25 * (logMax - logMin));
    struct Lobe {
        std::array<double, 3> c;
        double sig, amp;
    };
    std::vector<Lobe> lobes(3);
    for (auto& l : lobes) {
        for (int a = 0; a < 3; ++a) l.c[a] = posU(rng);
        l.sig = sigU(rng);
        l.amp = ampU(rng);
    }
    const double tc = tcU(rng);
    const double ts = 0.2 * (logMax - logMin) + 1e-9;

    Field f(spec);
    const std::size_t S = spec.spatial_size();
    for (int it = 0; it < spec.Nt; ++it) {
        const double t = g.t[it];
        if (t < tLow || t > tHigh) continue;
        const double lt = std::log(t);
        const double tp = std::exp(-0.5 * (lt - tc) * (lt - tc) / (ts * ts));
        Complex* o = f.slice(it);
        for (std::size_t j = 0; j < S; ++j) {
            const auto y = g.point(j);
            double v = 0.0;
            for (const auto& l : lobes) {
                double sq = 0.0;
                for (int a = 0; a < spec.n; ++a) {
                    double d = y[a] - l.c[a];
                    d -= 2.0 * spec.X * std::round(d / (2.0 * spec.X));
                    sq += d * d;
                }
                v += l.amp * std::exp(-0.5 * sq / (l.sig * l.sig));
            }
            o[j] = Complex(v * tp);
        }
    }
    return f;
}

double weighted_l2(const Field& f, double beta) {
    const Grid g = make_grid(f.spec);
    const std::size_t S = f.spec.spatial_size();
    double sum = 0.0;
    for (int it = 0; it < f.spec.Nt; ++it) {
        const double w = std::pow(g.t[it], beta) * g.tw[it] * g.h;
        const Complex* s = f.slice(it);
        for (std::size_t j = 0; j < S; ++j) sum += w * std::norm(s[j]);
    }
    return std::sqrt(sum);
}

Complex inner_dtdy(const Field& a, const Field& b) {
    if (!(a.spec == b.spec)) throw DomainError("inner_dtdy: grid mismatch");
    const Grid g = make_grid(a.spec);
    const std::size_t S = a.spec.spatial_size();
    Complex sum(0.0);
    for (int it = 0; it < a.spec.Nt; ++it) {
        const double w = g.tw[it] * g.h;
        const Complex* x = a.slice(it);
        const Complex* y = b.slice(it);
        for (std::size_t j = 0; j < S; ++j) sum += w * x[j] * std::conj(y[j]);
    }
    return sum;
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
    ExperimentConfig c;
    if (!j.contains("kind") || !j.at("kind").is_string())
        throw ConfigError("experiment config: missing kind");
    c.kind = j.at("kind").get<std::string>();
    c.raw = j;
    static const std::vector<std::string> kinds = {
        "norm-identity", "isometry",     "offdiag-fit", "maxreg-ratio",
        "exponent-table", "hardy-sweep", "duality-check"};
    if (std::find(kinds.begin(), kinds.end(), c.kind) == kinds.end())
        throw ConfigError("experiment config: unknown kind " + c.kind);
    return c;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ResourceError("cannot open config: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("config parse error: " + std::string(e.what()));
    }
    return from_json(j);
}

json Report::full() const {
    json j = body;
    j["runtime"] = runtime;
    return j;
}

namespace {

GridSpec grid_of(const json& j) {
    if (!j.contains("grid")) throw ConfigError("experiment config: missing grid");
    return spec_from_json(j.at("grid"));
}

std::vector<std::uint64_t> seeds_of(const json& j) {
    if (!j.contains("seeds")) throw ConfigError("experiment config: missing seeds (must be explicit)");
    auto s = j.at("seeds").get<std::vector<std::uint64_t>>();
    if (s.empty()) throw ConfigError("experiment config: empty seed sweep");
    return s;
}

double tol_of(const json& j, const std::string& name, double dflt) {
    if (j.contains("tolerances") && j.at("tolerances").contains(name))
        return j.at("tolerances").at(name).get<double>();
    return dflt;
}

SemigroupModel model_of(const json& j, const GridSpec& spec) {
    if (!j.contains("model")) throw ConfigError("experiment config: missing model");
    const auto& mj = j.at("model");
    const std::string fam = mj.value("family", "heat");
    if (fam == "heat") return SemigroupModel::heat(spec);
    if (fam == "poisson") return SemigroupModel::poisson(spec);
    if (fam == "divform") {
        std::mt19937_64 rng(mj.value("seed", std::uint64_t{1}));
        const double contrast = mj.value("contrast", 10.0);
        std::uniform_real_distribution<double> u(1.0, contrast);
        std::vector<double> a(static_cast<std::size_t>(spec.Nx));
        for (auto& v : a) v = u(rng);
        return SemigroupModel::divform1d(spec, a);
    }
    if (fam == "schrodinger") {
        std::mt19937_64 rng(mj.value("seed", std::uint64_t{1}));
        const double vmax = mj.value("vmax", 5.0);
        std::uniform_real_distribution<double> u(0.0, vmax);
        std::vector<double> V(static_cast<std::size_t>(spec.Nx));
        for (auto& v : V) v = u(rng);
        return SemigroupModel::schrodinger1d(spec, V);
    }
    throw ConfigError("unknown model family: " + fam);
}

std::vector<std::pair<double, double>> pairs_of(const json& j) {
    if (!j.contains("pairs")) throw ConfigError("experiment config: missing (m, beta) pairs");
    std::vector<std::pair<double, double>> out;
    for (const auto& p : j.at("pairs")) out.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
    if (out.empty()) throw ConfigError("experiment config: empty (m, beta) sweep");
    return out;
}

json run_norm_identity(const json& cfg) {
    const GridSpec spec = grid_of(cfg);
    const auto pairs = pairs_of(cfg);
    const auto seeds = seeds_of(cfg);
    const double tol = tol_of(cfg, "relError", 0.03);
    const double bn = ball_volume(spec.n);
    json cases = json::array();
    bool pass = true;
    for (const auto& [m, beta] : pairs) {
        for (auto seed : seeds) {
            const Field g = random_bump(spec, seed);
            const double tn = tent_norm(g, TentParams{2.0, m, beta});
            const double l2 = weighted_l2(g, beta);
            const double ratio = (tn * tn) / (l2 * l2);
            const double rel = std::abs(ratio / bn - 1.0);
            const bool ok = rel <= tol;
            pass = pass && ok;
            cases.push_back({{"m", m},
                             {"beta", beta},
                             {"seed", seed},
                             {"ratio", ratio},
                             {"target", bn},
                             {"relError", rel},
                             {"pass", ok}});
        }
    }
    return json{{"cases", cases}, {"pass", pass}, {"tolerances", {{"relError", tol}}}};
}

json run_isometry(const json& cfg) {
    const GridSpec spec = grid_of(cfg);
    const auto pairs = pairs_of(cfg);
    const auto seeds = seeds_of(cfg);
    const double p = cfg.value("p", 1.0);
    const double r = cfg.value("r", 1.0);
    std::vector<std::string> kinds =
        cfg.value("kinds", std::vector<std::string>{"constant", "randomized", "oscillatory"});
    const double normTol = tol_of(cfg, "normRel", 0.02);
    const double slackTol = tol_of(cfg, "slack", 1e-6);
    json cases = json::array();
    bool pass = true;
    for (const auto& [m, beta] : pairs) {
        for (const auto& kindName : kinds) {
            for (auto seed : seeds) {
                const Atom a = make_atom(parse_atom_kind(kindName), r, {0.0, 0.0, 0.0},
                                         TentParams{p, m, beta}, spec, seed);
                const double n1 = tent_norm(a.field, a.params);
                const Field jf = change_homogeneity(a.field, m, beta);
                const double n2 = tent_norm(jf, TentParams{p, 1.0, -1.0});
                const double rel = n1 > 0.0 ? std::abs(n1 - n2) / n1 : 0.0;
                Atom mapped{jf, r, a.x0, TentParams{p, 1.0, -1.0}};
                const AtomCheck chk = verify_atom(mapped, slackTol);
                const bool ok = rel <= normTol && chk.pass;
                pass = pass && ok;
                cases.push_back({{"m", m},
                                 {"beta", beta},
                                 {"kind", kindName},
                                 {"seed", seed},
                                 {"normSource", n1},
                                 {"normMapped", n2},
                                 {"relError", rel},
                                 {"mappedSlack", chk.slack},
                                 {"pass", ok}});
            }
        }
    }
    return json{{"cases", cases},
                {"pass", pass},
                {"tolerances", {{"normRel", normTol}, {"slack", slackTol}}}};
}

json run_offdiag(const json& cfg) {
    const GridSpec spec = grid_of(cfg);
    const SemigroupModel model = model_of(cfg, spec);
    const NormPair qr = parse_norm_pair(cfg.value("qr", std::string("2:2")));
    const auto tLadder = cfg.at("tLadder").get<std::vector<double>>();
    const auto dLadder = cfg.at("dLadder").get<std::vector<double>>();
    if (tLadder.empty() || dLadder.empty()) throw ConfigError("offdiag-fit: empty ladder");
    const double ballRadius = cfg.value("ballRadius", 0.25);
    const double threshold = cfg.value("threshold", 4.0);

    DecayEstimate est;
    if (cfg.contains("resolvent")) {
        const auto& rj = cfg.at("resolvent");
        const double theta = rj.value("theta", 3.14159265358979323846);
        const auto pw = rj.value("power", 2) == 2 ? ResolventPower::LSquared : ResolventPower::L;
        est = measure_resolvent_offdiag(model, qr, theta, tLadder, dLadder, ballRadius, pw, threshold);
    } else {
        est = measure_offdiag(model, qr, tLadder, dLadder, ballRadius, threshold);
    }
    bool pass = true;
    if (cfg.contains("tolerances")) {
        const auto& t = cfg.at("tolerances");
        if (t.contains("minM")) pass = pass && est.fittedM >= t.at("minM").get<double>();
        if (t.contains("maxM")) pass = pass && est.fittedM <= t.at("maxM").get<double>();
        if (t.contains("maxResidual")) pass = pass && est.residual <= t.at("maxResidual").get<double>();
    }
    json csv = json::array();
    csv.push_back(json::array({"t", "dist"}));
    for (const auto& [t, d] : est.fitRange) csv.push_back(json::array({t, d}));
    return json{{"cases", json::array({est.to_json()})}, {"pass", pass}, {"csv", csv}};
}

json run_maxreg_ratio(const json& cfg) {
    const GridSpec spec = grid_of(cfg);
    const SemigroupModel model = model_of(cfg, spec);
    const std::string mode = cfg.value("mode", std::string("atoms"));
    const KernelOp T = make_maxreg(model);
    json cases = json::array();
    json csv = json::array();
    bool pass = true;

    if (mode == "atoms") {
        const double m = model.m();
        const double beta = cfg.value("beta", 0.0);
        const auto pSweep = cfg.at("pSweep").get<std::vector<double>>();
        const auto rLadder = cfg.at("rLadder").get<std::vector<double>>();
        if (pSweep.empty() || rLadder.empty()) throw ConfigError("maxreg-ratio: empty sweep");
        std::vector<std::string> kinds =
            cfg.value("atomKinds", std::vector<std::string>{"constant", "randomized"});
        const auto seeds = seeds_of(cfg);
        const double maxSpread = tol_of(cfg, "maxSpread", 2.0);
        csv.push_back(json::array({"kind", "seed", "p", "r", "value"}));
        for (const auto& kindName : kinds) {
            for (auto seed : seeds) {
                // One application per scale; the p-dependence of the atom is a
                // scalar renormalization of the same profile.
                std::vector<Field> applied;
                for (double r : rLadder) {
                    const Atom ref = make_atom(parse_atom_kind(kindName), r, {0.0, 0.0, 0.0},
                                               TentParams{2.0, m, beta}, spec, seed);
                    applied.push_back(apply(T, ref.field));
                }
                for (double p : pSweep) {
                    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
                    json values = json::array();
                    for (std::size_t k = 0; k < rLadder.size(); ++k) {
                        const double r = rLadder[k];
                        const double n = static_cast<double>(spec.n);
                        // atom_p = atom_2 * r^{-n(1/p - 1/2)} (square root of
                        // the size-bound ratio).
                        const double scale = std::pow(r, -n * (1.0 / p - 0.5));
                        const double v = scale * tent_norm(applied[k], TentParams{p, m, beta});
                        lo = std::min(lo, v);
                        hi = std::max(hi, v);
                        values.push_back({{"r", r}, {"value", v}});
                        csv.push_back(json::array({kindName, seed, p, r, v}));
                    }
                    const double spread = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
                    const bool ok = spread <= maxSpread;
                    pass = pass && ok;
                    cases.push_back({{"kind", kindName},
                                     {"seed", seed},
                                     {"p", p},
                                     {"values", values},
                                     {"spread", spread},
                                     {"pass", ok}});
                }
            }
        }
    } else if (mode == "l2") {
        const auto betas = cfg.at("betas").get<std::vector<double>>();
        if (betas.empty()) throw ConfigError("maxreg-ratio: empty beta sweep");
        const auto seeds = seeds_of(cfg);
        csv.push_back(json::array({"beta", "seed", "ratio"}));
        for (double beta : betas) {
            for (auto seed : seeds) {
                const Field f = random_bump(spec, seed);
                const Field Tf = apply(T, f);
                const double ratio = weighted_l2(Tf, beta) / weighted_l2(f, beta);
                cases.push_back({{"beta", beta}, {"seed", seed}, {"ratio", ratio}});
                csv.push_back(json::array({beta, seed, ratio}));
            }
        }
    } else {
        throw ConfigError("maxreg-ratio: unknown mode " + mode);
    }
    return json{{"cases", cases}, {"pass", pass}, {"csv", csv}};
}

json run_exponent_table(const json& cfg) {
    using namespace exponents;
    std::vector<std::string> presets = cfg.value(
        "presets",
        std::vector<std::string>{"prop14-heat", "prop14-sqrt", "prop15", "prop16", "prop17"});
    if (presets.empty()) throw ConfigError("exponent-table: empty preset sweep");
    int nLo = 1, nHi = 6;
    if (cfg.contains("nRange")) {
        nLo = cfg.at("nRange").at(0).get<int>();
        nHi = cfg.at("nRange").at(1).get<int>();
    }
    json cases = json::array();
    json csv = json::array();
    csv.push_back(json::array({"preset", "n", "interval", "lower", "lowerLimit", "upper", "upperOpen"}));
    for (const auto& name : presets) {
        const Preset tag = parse_preset(name);
        for (int n = nLo; n <= nHi; ++n) {
            const ExponentReport rep = preset(tag, n);
            cases.push_back({{"preset", name}, {"n", n}, {"report", rep.to_json()}});
            csv.push_back(json::array({name, n, rep.interval.str(), rep.interval.lo.value.str(),
                                       rep.interval.lo.limit, rep.interval.hi.value.str(),
                                       rep.interval.hi.open}));
        }
    }
    return json{{"cases", cases}, {"pass", true}, {"csv", csv}};
}

json run_hardy_sweep(const json& cfg) {
    const GridSpec spec = grid_of(cfg);
    const auto betas = cfg.at("betas").get<std::vector<double>>();
    if (betas.empty()) throw ConfigError("hardy-sweep: empty beta sweep");
    const Grid g = make_grid(spec);
    // Regularized endpoint profiles f(s) = s^{-gamma} 1_{(0,1]}(s).
    std::vector<std::vector<double>> samples;
    for (double gamma : {0.0, 0.25, 0.5}) {
        std::vector<double> f(static_cast<std::size_t>(spec.Nt), 0.0);
        for (int j = 0; j < spec.Nt; ++j)
            if (g.t[j] <= 1.0) f[static_cast<std::size_t>(j)] = std::pow(g.t[j], -gamma);
        samples.push_back(std::move(f));
    }
    json cases = json::array();
    bool pass = true;
    double prev = -1.0;
    for (double beta : betas) {
        const double c = hardy_check(beta, spec, samples);
        const bool ok = std::isfinite(c) && c > prev;
        pass = pass && ok;
        cases.push_back({{"beta", beta}, {"constant", c}, {"pass", ok}});
        prev = c;
    }
    return json{{"cases", cases}, {"pass", pass}};
}

json run_duality(const json& cfg) {
    const GridSpec spec = grid_of(cfg);
    const SemigroupModel model = model_of(cfg, spec);
    const auto seeds = seeds_of(cfg);
    const double tol = tol_of(cfg, "relError", 0.01);
    const KernelOp fwd = make_maxreg(model, Orientation::Forward);
    const KernelOp bwd = make_maxreg(model, Orientation::Backward);
    const double tLow = spec.tMin * 4.0, tHigh = spec.tMax / 8.0;
    json cases = json::array();
    bool pass = true;
    for (auto seed : seeds) {
        const Field f = random_bump(spec, seed, tLow, tHigh);
        const Field g = random_bump(spec, seed + 1000, tLow, tHigh);
        const Complex lhs = inner_dtdy(apply(fwd, f), g);
        const Complex rhs = inner_dtdy(f, apply(bwd, g));
        const double denom = std::max(std::abs(lhs), std::abs(rhs));
        const double rel = denom > 0.0 ? std::abs(lhs - rhs) / denom : 0.0;
        const bool ok = rel <= tol;
        pass = pass && ok;
        cases.push_back({{"seed", seed},
                         {"lhs", {lhs.real(), lhs.imag()}},
                         {"rhs", {rhs.real(), rhs.imag()}},
                         {"relError", rel},
                         {"pass", ok}});
    }
    return json{{"cases", cases}, {"pass", pass}, {"tolerances", {{"relError", tol}}}};
}

}  // namespace

std::vector<std::string> validate(const ExperimentConfig& cfg) {
    std::vector<std::string> diags;
    const json& j = cfg.raw;
    try {
        if (j.contains("grid")) {
            const GridSpec spec = spec_from_json(j.at("grid"));
            if (cfg.kind == "offdiag-fit" && j.contains("dLadder")) {
                double dMax = 0.0;
                for (double d : j.at("dLadder").get<std::vector<double>>()) dMax = std::max(dMax, d);
                const double br = j.value("ballRadius", 0.25);
                if (dMax + br > spec.X / 2.0)
                    diags.push_back("wrap-around risk: max distance + ball radius exceeds X/2");
            }
            if (cfg.kind == "offdiag-fit" && spec.spatial_size() > 1024)
                diags.push_back("dense oracle cap: spatial size exceeds 1024 nodes");
        }
        if (cfg.kind == "hardy-sweep" && j.contains("betas")) {
            for (double b : j.at("betas").get<std::vector<double>>())
                if (b >= 1.0)
                    diags.push_back("beta = " + std::to_string(b) +
                                    " outside the weighted Hardy hypothesis beta < 1");
        }
        for (const char* key : {"seeds", "pSweep", "rLadder", "betas", "pairs", "tLadder", "dLadder"})
            if (j.contains(key) && j.at(key).is_array() && j.at(key).empty())
                diags.push_back(std::string("empty sweep: ") + key);
    } catch (const std::exception& e) {
        diags.push_back(std::string("config error: ") + e.what());
    }
    return diags;
}

Report run(const ExperimentConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    json result;
    if (cfg.kind == "norm-identity") result = run_norm_identity(cfg.raw);
    else if (cfg.kind == "isometry") result = run_isometry(cfg.raw);
    else if (cfg.kind == "offdiag-fit") result = run_offdiag(cfg.raw);
    else if (cfg.kind == "maxreg-ratio") result = run_maxreg_ratio(cfg.raw);
    else if (cfg.kind == "exponent-table") result = run_exponent_table(cfg.raw);
    else if (cfg.kind == "hardy-sweep") result = run_hardy_sweep(cfg.raw);
    else if (cfg.kind == "duality-check") result = run_duality(cfg.raw);
    else throw ConfigError("unknown experiment kind: " + cfg.kind);

    Report r;
    r.body = json{{"kind", cfg.kind}, {"config", cfg.raw}, {"versions", {{"tsmr", kVersion}}}};
    for (auto& [k, v] : result.items()) r.body[k] = std::move(v);
    r.pass = r.body.value("pass", false);
    const auto end = std::chrono::steady_clock::now();
    r.runtime = json{
        {"seconds", std::chrono::duration<double>(end - start).count()},
        {"unixTime",
         std::chrono::duration_cast<std::chrono::seconds>(
             std::chrono::system_clock::now().time_since_epoch()).count()}};
    return r;
}

void write_report(const Report& r, const std::string& jsonPath, const std::string& csvPath) {
    if (!jsonPath.empty()) {
        std::ofstream out(jsonPath);
        if (!out) throw ResourceError("cannot open for writing: " + jsonPath);
        out << r.full().dump(2) << "\n";
    }
    if (!csvPath.empty()) {
        if (!r.body.contains("csv")) throw ConfigError("this experiment kind emits no CSV table");
        std::ofstream out(csvPath);
        if (!out) throw ResourceError("cannot open for writing: " + csvPath);
        for (const auto& row : r.body.at("csv")) {
            std::string line;
            for (const auto& cell : row) {
                if (!line.empty()) line += ",";
                line += cell.is_string() ? cell.get<std::string>() : cell.dump();
            }
            out << line << "\n";
        }
    }
}

}  // namespace tsmr
