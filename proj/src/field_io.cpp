#include "tsmr/field_io.hpp"

#include <fstream>

namespace tsmr {

using nlohmann::json;

json spec_to_json(const GridSpec& s) {
    return json{{"n", s.n},       {"X", s.X},       {"Nx", s.Nx},
                {"tMin", s.tMin}, {"tMax", s.tMax}, {"Nt", s.Nt}};
}

GridSpec spec_from_json(const json& j) {
    GridSpec s;
    try {
        s.n = j.at("n").get<int>();
        s.X = j.at("X").get<double>();
        s.Nx = j.at("Nx").get<int>();
        s.tMin = j.at("tMin").get<double>();
        s.tMax = j.at("tMax").get<double>();
        s.Nt = j.at("Nt").get<int>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("grid spec: ") + e.what());
    }
    s.validate();
    return s;
}

json field_to_json(const Field& f) {
    json j;
    j["format"] = "tsmr-field-v1";
    j["spec"] = spec_to_json(f.spec);
    if (f.support) {
        j["support"] = json{{"timeUpperBound", f.support->timeUpperBound},
                            {"ballCenter", {f.support->ballCenter[0], f.support->ballCenter[1],
                                            f.support->ballCenter[2]}},
                            {"ballRadius", f.support->ballRadius}};
    }
    json vals = json::array();
    for (const auto& v : f.values) vals.push_back(json::array({v.real(), v.imag()}));
    j["values"] = std::move(vals);
    return j;
}

Field field_from_json(const json& j) {
    if (!j.contains("format") || j.at("format") != "tsmr-field-v1")
        throw ConfigError("field file: missing or unsupported format tag (want tsmr-field-v1)");
    Field f(spec_from_json(j.at("spec")));
    const auto& vals = j.at("values");
    if (!vals.is_array() || vals.size() != f.values.size())
        throw ConfigError("field file: values length does not match spec (" +
                          std::to_string(vals.size()) + " vs " + std::to_string(f.values.size()) + ")");
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        const auto& p = vals[i];
        if (!p.is_array() || p.size() != 2) throw ConfigError("field file: values must be [re, im] pairs");
        f.values[i] = Complex(p[0].get<double>(), p[1].get<double>());
    }
    if (j.contains("support")) {
        const auto& s = j.at("support");
        Support sup;
        sup.timeUpperBound = s.at("timeUpperBound").get<double>();
        const auto& c = s.at("ballCenter");
        for (std::size_t a = 0; a < 3 && a < c.size(); ++a) sup.ballCenter[a] = c[a].get<double>();
        sup.ballRadius = s.at("ballRadius").get<double>();
        f.support = sup;
    }
    f.check_finite();
    return f;
}

void write_field(const Field& f, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ResourceError("cannot open for writing: " + path);
    out << field_to_json(f).dump(2) << "\n";
}

Field read_field(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ResourceError("cannot open: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("field file parse error: " + std::string(e.what()));
    }
    return field_from_json(j);
}

}  // namespace tsmr
