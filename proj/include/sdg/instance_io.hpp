#pragma once

#include <string>

#include "sdg/instance.hpp"

namespace sdg {

// Instance JSON: {"b0": num, "nodes": [{"b","k","a","u","profit":{"kind","params"}}]}
RawInstance parse_instance_json(const std::string& text);
std::string instance_to_json(const Instance& inst, int indent = 2);
Instance load_instance(const std::string& path);

}  // namespace sdg
