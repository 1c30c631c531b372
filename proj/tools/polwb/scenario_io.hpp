#pragma once

#include <string>
#include <string_view>

#include "pol/parallel.hpp"

namespace polwb {

/// Line-oriented scenario files:
///
///   # comment
///   session s1: a b
///   session s2: b c d
///   muddy: a c d
///
/// Throws pol::ParseError (with line) for syntax and pol::ScenarioError for
/// semantic problems; both messages name the line.
pol::parallel::Scenario parse_scenario(std::string_view text);

/// {"sessions": [{"id": "s1", "agents": ["a", "b"]}, ...], "muddy": [...]}
pol::parallel::Scenario parse_scenario_json(std::string_view text);

/// Canonical file text; muddy agents listed in order of first appearance.
std::string print_scenario(const pol::parallel::Scenario& sc);

/// Reads and parses a file; `json` selects the JSON form.
pol::parallel::Scenario load_scenario(const std::string& path, bool json);

}  // namespace polwb
