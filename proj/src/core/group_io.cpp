#include "gassmann/group_io.hpp"

#include <fstream>
#include <sstream>

#include "gassmann/errors.hpp"

namespace gassmann {

namespace {

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::string_view trim(std::string_view s, std::size_t& lead) {
  lead = 0;
  while (lead < s.size() && is_blank(s[lead])) ++lead;
  std::size_t end = s.size();
  while (end > lead && is_blank(s[end - 1])) --end;
  return s.substr(lead, end - lead);
}

bool keyword(std::string_view line, std::string_view word) {
  return line.size() > word.size() && line.substr(0, word.size()) == word && is_blank(line[word.size()]);
}

}  // namespace

GroupSpec parse_group_text(std::string_view text) {
  GroupSpec spec;
  bool have_degree = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view raw = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    std::size_t lead;
    std::string_view line = trim(raw, lead);
    if (line.empty() || line[0] == '#') continue;
    if (keyword(line, "degree")) {
      if (have_degree) throw ParseError("duplicate degree line", line_no, lead + 1);
      std::size_t l2;
      std::string_view num = trim(line.substr(6), l2);
      std::size_t d = 0;
      for (std::size_t i = 0; i < num.size(); ++i) {
        if (num[i] < '0' || num[i] > '9') throw ParseError("bad degree", line_no, lead + 7 + l2 + i);
        d = d * 10 + static_cast<std::size_t>(num[i] - '0');
        if (d > 65535) throw ParseError("degree too large", line_no, lead + 7 + l2);
      }
      if (d == 0) throw ParseError("degree must be positive", line_no, lead + 7 + l2);
      spec.degree = d;
      have_degree = true;
      continue;
    }
    if (keyword(line, "label")) {
      if (spec.label) throw ParseError("duplicate label line", line_no, lead + 1);
      std::size_t l2;
      spec.label = std::string(trim(line.substr(5), l2));
      continue;
    }
    if (!have_degree) throw ParseError("generator before degree line", line_no, lead + 1);
    spec.generators.push_back(parse_cycles(line, spec.degree, line_no, lead));
  }
  if (!have_degree) throw ParseError("missing degree line", line_no, 1);
  return spec;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

GroupSpec parse_group_file(const std::filesystem::path& path) { return parse_group_text(read_text_file(path)); }

std::string print_group(const GroupSpec& spec) {
  std::ostringstream os;
  os << "degree " << spec.degree << "\n";
  if (spec.label) os << "label " << *spec.label << "\n";
  for (const auto& g : spec.generators) os << g.to_string() << "\n";
  return os.str();
}

GroupSpec parse_generator_list(std::string_view text, std::size_t degree) {
  GroupSpec spec;
  spec.degree = degree;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t semi = text.find(';', pos);
    if (semi == std::string_view::npos) semi = text.size();
    std::size_t lead;
    std::string_view part = trim(text.substr(pos, semi - pos), lead);
    if (!part.empty()) spec.generators.push_back(parse_cycles(part, degree, 1, pos + lead));
    pos = semi + 1;
  }
  return spec;
}

}  // namespace gassmann
