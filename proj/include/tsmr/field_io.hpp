#pragma once

#include <string>

#include "tsmr/grid.hpp"

#include "json.hpp"

namespace tsmr {

// Field container format "tsmr-field-v1": spec header, optional support
// descriptor, and row-major (time-major) values as [re, im] pairs.
nlohmann::json field_to_json(const Field& f);
Field field_from_json(const nlohmann::json& j);

void write_field(const Field& f, const std::string& path);
Field read_field(const std::string& path);

nlohmann::json spec_to_json(const GridSpec& s);
GridSpec spec_from_json(const nlohmann::json& j);

}  // namespace tsmr
