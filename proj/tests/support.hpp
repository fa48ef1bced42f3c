#pragma once

#include <string>

#include "gassmann/group_io.hpp"
#include "gassmann/subgroup.hpp"

namespace test {

inline std::string fixture(const std::string& name) { return std::string(GASSMANN_FIXTURE_DIR) + "/" + name; }

inline gassmann::GroupPtr group(std::size_t degree, const std::string& gens) {
  return gassmann::enumerate_group(gassmann::parse_generator_list(gens, degree));
}

inline gassmann::GroupPtr group_file(const std::string& name) {
  return gassmann::enumerate_group(gassmann::parse_group_file(fixture(name)));
}

inline gassmann::Subgroup sub(const gassmann::GroupPtr& g, const std::string& gens) {
  return gassmann::subgroup_from_spec(g, gassmann::parse_generator_list(gens, g->degree()));
}

inline gassmann::Subgroup sub_file(const gassmann::GroupPtr& g, const std::string& name) {
  return gassmann::subgroup_from_spec(g, gassmann::parse_group_file(fixture(name)));
}

}  // namespace test
