#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "gassmann/group.hpp"

namespace gassmann {

// Group file grammar, one item per line, surrounding blanks ignored:
//   # comment
//   degree <n>          required, before any generator
//   label <text>        optional, at most once
//   <cycles>            one generator, e.g. (1 2)(3 4 5) or (1,2)(3,4,5); () is the identity
GroupSpec parse_group_text(std::string_view text);
GroupSpec parse_group_file(const std::filesystem::path& path);
// Canonical form: degree line, label line if any, one generator per line.
std::string print_group(const GroupSpec& spec);

// Generators separated by ';', e.g. "(1 2)(3 4); (1 3)".
GroupSpec parse_generator_list(std::string_view text, std::size_t degree);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace gassmann
