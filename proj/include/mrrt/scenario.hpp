#ifndef MRRT_SCENARIO_HPP
#define MRRT_SCENARIO_HPP

#include <string>

#include "mrrt/simworld.hpp"

namespace mrrt {

/// Parse a scenario file; errors name the missing or invalid field.
/// The scenario's name is the file stem.
Scenario load_scenario(const std::string& path);

Scenario scenario_from_json_text(const std::string& text);
std::string scenario_to_json_text(const Scenario& s);

void save_scenario(const Scenario& s, const std::string& path);

}  // namespace mrrt

#endif  // MRRT_SCENARIO_HPP
