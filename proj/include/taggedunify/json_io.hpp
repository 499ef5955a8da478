#pragma once

#include <json.hpp>

#include "taggedunify/bsca.hpp"
#include "taggedunify/dnut.hpp"
#include "taggedunify/oracle.hpp"
#include "taggedunify/substitution.hpp"

namespace taggedunify {

/// Terms, problems and substitutions are embedded as their text rendering;
/// a substitution becomes an object from variable name to term text.
nlohmann::json to_json(const Substitution& s);
nlohmann::json to_json(const ProblemSet& ps);
nlohmann::json to_json(const BscaTrace& trace);
nlohmann::json to_json(const DnutReport& report);

enum class PopulationFilter { Both, NonVariables, NonSequences };
nlohmann::json to_json(const TheoremReport& report, PopulationFilter populations);

}  // namespace taggedunify
