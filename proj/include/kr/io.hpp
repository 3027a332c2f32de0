#pragma once

#include <string>
#include <vector>

#include "kr/compactness.hpp"
#include "kr/generators.hpp"
#include "kr/lipschitz.hpp"
#include "kr/lp.hpp"
#include "kr/space.hpp"

// File formats.  All JSON objects use alphabetically ordered keys and
// shortest round-trip number rendering, so identical data produces
// identical bytes.  CSV uses '.' decimals, ',' separators, '\n' endings.
//
// space file:    {"kind": "explicit"|"circle"|"line_grid"|"random_cloud", ...}
// function file: {"space_hash": hex, "values": [...]}
// family file:   {"space_hash": hex, "members": [[...], ...]}
//                or a generator: {"generator": "oscillation"|"translate_bumps"
//                |"random_class", ...parameters...}
// partial file:  {"space_hash": hex, "domain": [...], "values": [...],
//                 "bound": L}
// "space_hash" is verified when present and may be omitted in hand-written
// fixtures.

namespace kr::io {

std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& content);

// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

SpaceSpec space_spec_from_json_text(const std::string& text);
SpacePtr space_from_json_text(const std::string& text);
SpacePtr load_space(const std::string& path);
std::string space_spec_json(const SpaceSpec& spec);

LpFunction function_from_json_text(const std::string& text, SpacePtr space);
LpFunction load_function(const std::string& path, SpacePtr space);
std::string function_json(const LpFunction& f);

FamilySpec family_spec_from_json_text(const std::string& text);
FunctionFamily family_from_json_text(const std::string& text, SpacePtr space,
                                     const LpConfig& cfg);
FunctionFamily load_family(const std::string& path, SpacePtr space,
                           const LpConfig& cfg);
std::string family_json(const FunctionFamily& family);

PartialFunction partial_from_json_text(const std::string& text, SpacePtr space);
PartialFunction load_partial(const std::string& path, SpacePtr space);
std::string partial_json(const PartialFunction& partial);

std::string doubling_json(const DoublingReport& report);
std::string net_json(const EpsilonNet& net);
std::string report_json(const CompactnessReport& report);
std::string approximant_json(const DensityApproximant& approx);

// rows x columns table; every row must match the header width.
std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows);

}  // namespace kr::io
