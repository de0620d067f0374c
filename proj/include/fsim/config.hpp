#pragma once

#include <iosfwd>
#include <string>

#include "fsim/sim.hpp"

// Scenario files: INI-style key-value text with [section] headers and '#'
// comments. Unknown sections or keys are configuration errors with field
// diagnostics; omitted keys keep their defaults.

namespace fsim {

ScenarioConfig parse_scenario(std::istream& is);
ScenarioConfig load_scenario(const std::string& path);

}  // namespace fsim
