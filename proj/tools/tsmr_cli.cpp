#include <complex>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tsmr/experiments.hpp"
#include "tsmr/exponents.hpp"
#include "tsmr/field_io.hpp"
#include "tsmr/offdiag.hpp"
#include "tsmr/sio.hpp"
#include "tsmr/tent.hpp"

namespace {

using nlohmann::json;
using namespace tsmr;

std::complex<double> parse_complex(const std::string& s) {
    // Accepts "a", "a+bi", "a-bi".
    std::string t = s;
    if (!t.empty() && t.back() == 'i') {
        t.pop_back();
        std::size_t split = t.find_last_of("+-");
        if (split == std::string::npos || split == 0)
            return {0.0, std::stod(t.empty() ? "1" : t)};
        const double re = std::stod(t.substr(0, split));
        std::string im = t.substr(split);
        if (im == "+") im = "1";
        if (im == "-") im = "-1";
        return {re, std::stod(im)};
    }
    return {std::stod(s), 0.0};
}

std::vector<double> parse_ladder(const std::string& s) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t comma = s.find(',', pos);
        if (comma == std::string::npos) comma = s.size();
        out.push_back(std::stod(s.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return out;
}

SemigroupModel build_model(const std::string& family, const GridSpec& spec, std::uint64_t seed,
                           double contrast) {
    if (family == "heat") return SemigroupModel::heat(spec);
    if (family == "poisson") return SemigroupModel::poisson(spec);
    std::mt19937_64 rng(seed);
    if (family == "divform") {
        std::uniform_real_distribution<double> u(1.0, contrast);
        std::vector<double> a(static_cast<std::size_t>(spec.Nx));
        for (auto& v : a) v = u(rng);
        return SemigroupModel::divform1d(spec, a);
    }
    if (family == "schrodinger") {
        std::uniform_real_distribution<double> u(0.0, 5.0);
        std::vector<double> V(static_cast<std::size_t>(spec.Nx));
        for (auto& v : V) v = u(rng);
        return SemigroupModel::schrodinger1d(spec, V);
    }
    throw ConfigError("unknown model family: " + family);
}

void add_grid_options(CLI::App* cmd, GridSpec& spec) {
    cmd->add_option("--dim", spec.n, "Spatial dimension (1..3)");
    cmd->add_option("--X", spec.X, "Spatial half-width");
    cmd->add_option("--Nx", spec.Nx, "Points per spatial axis (power of two)");
    cmd->add_option("--tmin", spec.tMin, "Smallest time node");
    cmd->add_option("--tmax", spec.tMax, "Largest time node");
    cmd->add_option("--Nt", spec.Nt, "Time nodes (power of two)");
}

int cmd_exponents(const std::string& theorem, const std::string& presetName, int n,
                  const std::string& m, const std::string& beta, const std::string& q,
                  const std::string& M, const std::string& direction, const std::string& pMinus,
                  const std::string& pPlus) {
    using namespace tsmr::exponents;
    ExponentReport rep;
    if (!presetName.empty()) {
        std::optional<ExtRat> pm, pp;
        if (!pMinus.empty()) pm = ExtRat::parse(pMinus);
        if (!pPlus.empty()) pp = ExtRat::parse(pPlus);
        rep = preset(parse_preset(presetName), n, pm, pp);
    } else {
        const Rat mr = Rat::parse(m);
        const Rat br = Rat::parse(beta);
        const ExtRat qr = ExtRat::parse(q);
        const ExtRat Mr = ExtRat::parse(M);
        if (theorem == "thm31") rep = thm31_range(n, mr, br, qr, Mr);
        else if (theorem == "prop36") rep = prop36_range(n, mr, br, qr, Mr);
        else if (theorem == "thm41") rep = thm41_range(n, mr, br, qr, Mr);
        else if (theorem == "prop42") rep = prop42_range(n, mr, br, qr, Mr);
        else if (theorem == "cor56") rep = cor56_pL(n, mr, br, qr, parse_direction(direction));
        else throw ParameterError("unknown theorem: " + theorem +
                                  " (want thm31|prop36|thm41|prop42|cor56 or --preset)");
    }
    std::cout << rep.to_json().dump(2) << "\n";
    return rep.hypothesisViolation ? 1 : 0;
}

int cmd_norm(double p, bool pInf, double m, double beta, bool carleson, const std::string& input) {
    const Field f = read_field(input);
    double value;
    if (carleson || pInf) {
        value = carleson_norm(f, m, beta);
    } else {
        value = tent_norm(f, TentParams{p, m, beta});
    }
    json rep = {{"value", value},
                {"p", pInf || carleson ? json("inf") : json(p)},
                {"m", m},
                {"beta", beta},
                {"grid", spec_to_json(f.spec)}};
    std::cout << rep.dump(2) << "\n";
    return 0;
}

int cmd_apply(const std::string& op, const std::string& alpha, const std::string& family,
              std::uint64_t modelSeed, double contrast, const std::string& orientation,
              const std::string& part, const std::string& input, const std::string& output,
              double beta) {
    const Field f = read_field(input);
    const SemigroupModel model = build_model(family, f.spec, modelSeed, contrast);
    const Orientation o = orientation == "backward" ? Orientation::Backward : Orientation::Forward;
    const std::complex<double> a = parse_complex(alpha);
    Field out;
    ApplyInfo info;
    if (op == "maxreg") {
        out = apply(make_maxreg(model, o), f, parse_part(part), &info);
    } else if (op == "maxreg-alpha") {
        out = apply(make_maxreg_alpha(model, a, o), f, parse_part(part), &info);
    } else if (op == "j-alpha") {
        out = apply_J_alpha(make_maxreg(model, o), a, f, beta);
    } else if (op == "m-alpha") {
        out = apply_M_alpha(a, model, f);
    } else {
        throw ParameterError("unknown op: " + op + " (want maxreg|maxreg-alpha|j-alpha|m-alpha)");
    }
    write_field(out, output);
    json rep = {{"op", op}, {"output", output}, {"truncationWarning", info.truncationWarning}};
    std::cout << rep.dump(2) << "\n";
    return 0;
}

int cmd_offdiag(const GridSpec& spec, const std::string& family, std::uint64_t modelSeed,
                double contrast, const std::string& qr, const std::string& tLadder,
                const std::string& dLadder, double ballRadius, double threshold, bool resolvent,
                double theta, int power) {
    const SemigroupModel model = build_model(family, spec, modelSeed, contrast);
    const NormPair pair = parse_norm_pair(qr);
    DecayEstimate est;
    if (resolvent) {
        est = measure_resolvent_offdiag(model, pair, theta, parse_ladder(tLadder),
                                        parse_ladder(dLadder), ballRadius,
                                        power == 2 ? ResolventPower::LSquared : ResolventPower::L,
                                        threshold);
    } else {
        est = measure_offdiag(model, pair, parse_ladder(tLadder), parse_ladder(dLadder), ballRadius,
                              threshold);
    }
    std::cout << est.to_json().dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weighted tent-space norms, maximal-regularity operators, off-diagonal decay "
                 "fits, and exact exponent ranges"};
    app.require_subcommand(1);

    // exponents
    auto* expo = app.add_subcommand("exponents", "Exact rational exponent ranges");
    std::string theorem, presetName, mStr = "2", betaStr = "0", qStr = "2", MStr = "inf",
                direction = "A-forward", pMinus, pPlus;
    int nDim = 1;
    expo->add_option("--theorem", theorem, "thm31|prop36|thm41|prop42|cor56");
    expo->add_option("--preset", presetName, "prop14-heat|prop14-sqrt|prop15|prop16|prop17");
    expo->add_option("--n", nDim, "Spatial dimension");
    expo->add_option("--m", mStr, "Homogeneity (rational)");
    expo->add_option("--beta", betaStr, "Weight exponent (rational)");
    expo->add_option("--q", qStr, "Decay exponent (rational or inf)");
    expo->add_option("--M", MStr, "Decay order (rational or inf)");
    expo->add_option("--direction", direction, "cor56 direction: A-forward|B-forward|A-backward|B-backward");
    expo->add_option("--p-minus", pMinus, "Lower q-range input for prop16/prop17 presets");
    expo->add_option("--p-plus", pPlus, "Upper q-range input for prop16/prop17 presets");

    // norm
    auto* norm = app.add_subcommand("norm", "Tent-space or Carleson norm of a field");
    double p = 2.0, mVal = 2.0, betaVal = 0.0;
    bool carleson = false, pInf = false;
    std::string input, output;
    norm->add_option("--p", p, "Outer exponent p");
    norm->add_flag("--p-inf", pInf, "Use p = infinity (Carleson endpoint)");
    norm->add_option("--m", mVal, "Homogeneity m");
    norm->add_option("--beta", betaVal, "Weight exponent beta");
    norm->add_flag("--carleson", carleson, "Compute the Carleson (T^inf) norm");
    norm->add_option("--input", input, "Field JSON path")->required();

    // apply
    auto* ap = app.add_subcommand("apply", "Apply a singular-integral kernel operator");
    std::string op = "maxreg", alphaStr = "1", family = "heat", orientation = "forward",
                part = "whole";
    std::uint64_t modelSeed = 1;
    double contrast = 10.0, applyBeta = 0.0;
    ap->add_option("--op", op, "maxreg|maxreg-alpha|j-alpha|m-alpha");
    ap->add_option("--alpha", alphaStr, "Complex alpha, e.g. 1+2i");
    ap->add_option("--model", family, "heat|poisson|divform|schrodinger");
    ap->add_option("--model-seed", modelSeed, "Seed for random coefficient families");
    ap->add_option("--contrast", contrast, "Coefficient contrast for divform");
    ap->add_option("--orientation", orientation, "forward|backward");
    ap->add_option("--part", part, "whole|singular|tail");
    ap->add_option("--beta", applyBeta, "Weight exponent (j-alpha admissibility check)");
    ap->add_option("--input", input, "Input field JSON")->required();
    ap->add_option("--output", output, "Output field JSON")->required();

    // offdiag / resolvent-offdiag
    GridSpec odSpec{1, 4.0, 256, 0.01, 1.0, 8};
    std::string qr = "2:2", tLadderStr = "0.01,0.02,0.04,0.08", dLadderStr = "0.5,0.75,1.0,1.5";
    double ballRadius = 0.25, threshold = 4.0, theta = 3.14159265358979323846;
    int rPower = 2;
    auto* od = app.add_subcommand("offdiag", "Fit the semigroup off-diagonal decay order");
    add_grid_options(od, odSpec);
    od->add_option("--model", family, "heat|poisson|divform|schrodinger");
    od->add_option("--model-seed", modelSeed, "Seed for random coefficient families");
    od->add_option("--contrast", contrast, "Coefficient contrast for divform");
    od->add_option("--qr", qr, "Norm pair 2:2|1:2|2:inf");
    od->add_option("--t-ladder", tLadderStr, "Comma-separated times");
    od->add_option("--d-ladder", dLadderStr, "Comma-separated distances");
    od->add_option("--ball-radius", ballRadius, "Radius of the source ball E");
    od->add_option("--threshold", threshold, "Minimum dist^m/t admitted into the fit");

    auto* rod = app.add_subcommand("resolvent-offdiag", "Fit the resolvent off-diagonal decay order");
    add_grid_options(rod, odSpec);
    rod->add_option("--model", family, "heat|poisson|divform|schrodinger");
    rod->add_option("--model-seed", modelSeed, "Seed for random coefficient families");
    rod->add_option("--qr", qr, "Norm pair 2:2|1:2|2:inf");
    rod->add_option("--t-ladder", tLadderStr, "Comma-separated |z| values");
    rod->add_option("--d-ladder", dLadderStr, "Comma-separated distances");
    rod->add_option("--ball-radius", ballRadius, "Radius of the source ball E");
    rod->add_option("--threshold", threshold, "Minimum dist^{2m}/|z| admitted into the fit");
    rod->add_option("--theta", theta, "Ray angle of z = e^{i theta} t");
    rod->add_option("--power", rPower, "Resolvent power: 1 for L, 2 for L^2");

    // experiment
    auto* ex = app.add_subcommand("experiment", "Run a declarative experiment config");
    std::string configPath, reportPath, csvPath;
    bool validateOnly = false;
    ex->add_option("--config", configPath, "Experiment config JSON")->required();
    ex->add_option("--output", reportPath, "Report JSON output path");
    ex->add_option("--csv", csvPath, "CSV table output path");
    ex->add_flag("--validate-only", validateOnly, "Print diagnostics and exit");

    CLI11_PARSE(app, argc, argv);

    try {
        if (expo->parsed())
            return cmd_exponents(theorem, presetName, nDim, mStr, betaStr, qStr, MStr, direction,
                                 pMinus, pPlus);
        if (norm->parsed()) return cmd_norm(p, pInf, mVal, betaVal, carleson, input);
        if (ap->parsed())
            return cmd_apply(op, alphaStr, family, modelSeed, contrast, orientation, part, input,
                             output, applyBeta);
        if (od->parsed())
            return cmd_offdiag(odSpec, family, modelSeed, contrast, qr, tLadderStr, dLadderStr,
                               ballRadius, threshold, false, theta, rPower);
        if (rod->parsed())
            return cmd_offdiag(odSpec, family, modelSeed, contrast, qr, tLadderStr, dLadderStr,
                               ballRadius, threshold, true, theta, rPower);
        if (ex->parsed()) {
            const ExperimentConfig cfg = ExperimentConfig::load(configPath);
            const auto diags = validate(cfg);
            for (const auto& d : diags) std::cerr << "diagnostic: " << d << "\n";
            if (validateOnly) return 0;
            const Report rep = run(cfg);
            write_report(rep, reportPath, csvPath);
            std::cout << rep.full().dump(2) << "\n";
            return rep.pass ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
