#pragma once

// JSON and DOT serialization. Rationals are always "p/q" strings, infinities
// "inf", cells use their text syntax; output is deterministic.

#include <json.hpp>

#include "goi/battery.hpp"
#include "goi/interpret.hpp"
#include "goi/project.hpp"
#include "goi/thick.hpp"

namespace goi {

using json = nlohmann::ordered_json;

json to_json(const Graph& g);
Graph graph_from_json(const json& j);

json to_json(const ThickGraph& g);
ThickGraph thick_from_json(const json& j);
json to_json(const SlicedThickGraph& g);
SlicedThickGraph sliced_from_json(const json& j);

json to_json(const CellSet& s);
CellSet cellset_from_json(const json& j);
json to_json(const PosMap& m);
PosMap posmap_from_json(const json& j);
json to_json(const Branch& b);
Branch branch_from_json(const json& j);
json to_json(const BitMap& m);
BitMap bitmap_from_json(const json& j);

json to_json(const Graphing& g);
Graphing graphing_from_json(const json& j);
json to_json(const Project& p);
Project project_from_json(const json& j);

json to_json(const Diagnostic& d);
json to_json(const SoundnessReport& r);
json to_json(const BatteryResult& r);

/// Parses a basis file: {"0": [project, ...], "1": [...]} keyed by variable name.
Basis basis_from_json(const json& j);

/// DOT rendering of a project: one cluster per slice.
std::string project_to_dot(const Project& p, const std::string& name = "P");
std::string thick_to_dot(const ThickGraph& g, const std::string& name = "G");

}  // namespace goi
