#pragma once

#include <string_view>

#include "stealthsim/experiment.hpp"

namespace stealthsim {

/// Parses a scenario descriptor (JSON). Keys are listed in README.md;
/// unknown keys anywhere in the document are rejected with ParseError.
/// The seed and thread count are left at their defaults for the caller.
ExperimentSpec parse_scenario_descriptor(std::string_view json_text);

}  // namespace stealthsim
