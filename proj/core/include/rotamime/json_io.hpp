#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "rotamime/bifurcation.hpp"
#include "rotamime/conditions.hpp"
#include "rotamime/orbit.hpp"

namespace rotamime {

/// Real values cross the wire as 17-significant-digit decimal strings;
/// parsing restores the exact double.
std::string dec17(double v);
double parse_dec(const std::string& s);

nlohmann::json to_json(const MapSpec& spec);
MapSpec spec_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ConditionReport& report);
ConditionReport report_from_json(const nlohmann::json& j);

nlohmann::json to_json(const PeriodicOrbit& orbit);
PeriodicOrbit orbit_from_json(const nlohmann::json& j);

nlohmann::json to_json(const OrbitCertificate& cert);
OrbitCertificate certificate_from_json(const nlohmann::json& j);

/// Windows as [{a_lo, a_hi, q, p, verdict}, ...].
nlohmann::json to_json(const std::vector<PeriodicWindow>& windows);
std::vector<PeriodicWindow> windows_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ReturnMapData& data);
ReturnMapData return_map_from_json(const nlohmann::json& j);

} // namespace rotamime
