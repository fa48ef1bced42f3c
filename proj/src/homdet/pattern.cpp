#include <algorithm>
#include <deque>
#include <sstream>

#include "gassmann/errors.hpp"
#include "gassmann/group_io.hpp"
#include "gassmann/homdet.hpp"

namespace gassmann {

Pattern::Pattern(std::size_t m, std::size_t variables, std::vector<std::uint32_t> entries)
    : m_(m), k_(variables), entries_(std::move(entries)) {
  if (entries_.size() != m_ * m_) throw InvalidDatum("pattern needs m*m entries");
  for (auto v : entries_)
    if (v >= k_) throw InvalidDatum("pattern entry out of range");
}

std::vector<std::size_t> Pattern::cell_sizes() const {
  std::vector<std::size_t> sizes(k_, 0);
  for (std::size_t j = 0; j < m_; ++j) ++sizes[at(0, j)];
  return sizes;
}

namespace {

struct LineReader {
  std::istringstream in;
  std::size_t line = 0;
  explicit LineReader(std::string_view text) : in(std::string(text)) {}
  // next line with comments stripped and some content, or false
  bool next(std::string& out) {
    while (std::getline(in, out)) {
      ++line;
      if (auto h = out.find('#'); h != std::string::npos) out.erase(h);
      if (out.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  }
};

}  // namespace

Pattern parse_pattern_text(std::string_view text) {
  LineReader r(text);
  std::string line;
  if (!r.next(line)) throw ParseError("missing pattern header", r.line + 1, 1);
  std::istringstream head(line);
  std::string word;
  std::size_t m = 0, k = 0;
  if (!(head >> word >> m >> k) || word != "pattern") throw ParseError("expected 'pattern <m> <k>'", r.line, 1);
  std::vector<std::uint32_t> entries;
  entries.reserve(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    if (!r.next(line)) throw ParseError("expected " + std::to_string(m) + " rows", r.line + 1, 1);
    std::istringstream row(line);
    long long v;
    std::size_t count = 0;
    while (row >> v) {
      if (v < 1 || static_cast<std::size_t>(v) > k) throw ParseError("entry out of range", r.line, count + 1);
      entries.push_back(static_cast<std::uint32_t>(v - 1));
      ++count;
    }
    if (!row.eof()) throw ParseError("non-numeric entry", r.line, count + 1);
    if (count != m) throw ParseError("row has " + std::to_string(count) + " entries", r.line, 1);
  }
  if (r.next(line)) throw ParseError("trailing content", r.line, 1);
  return Pattern(m, k, std::move(entries));
}

Pattern parse_pattern_file(const std::filesystem::path& path) { return parse_pattern_text(read_text_file(path)); }

std::string print_pattern(const Pattern& p) {
  std::ostringstream out;
  out << "pattern " << p.size() << ' ' << p.variables() << '\n';
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < p.size(); ++j) out << (j ? " " : "") << p.at(i, j) + 1;
    out << '\n';
  }
  return out.str();
}

DoubleCosetDecomposition double_cosets(const Subgroup& h1, const Subgroup& h2) {
  if (&h1.parent() != &h2.parent())
    throw PreconditionFailed("subgroups of different groups");
  if (h1.index() != h2.index())
    throw IndexMismatch("indices " + std::to_string(h1.index()) + " and " + std::to_string(h2.index()) + " differ");
  const EnumeratedGroup& g = h1.parent();
  CosetAction a1(h1), a2(h2);
  const std::size_t m = a1.size();
  const std::size_t ngens = g.generator_ids().size();

  constexpr std::uint32_t kUnset = ~std::uint32_t{0};
  std::vector<std::uint32_t> orbit(m * m, kUnset);
  std::uint32_t orbits = 0;
  std::deque<std::uint32_t> queue;
  for (std::uint32_t start = 0; start < m * m; ++start) {
    if (orbit[start] != kUnset) continue;
    orbit[start] = orbits;
    queue.push_back(start);
    while (!queue.empty()) {
      auto cur = queue.front();
      queue.pop_front();
      auto i = cur / m, j = cur % m;
      for (std::size_t s = 0; s < ngens; ++s) {
        auto nxt = a1.act_generator(i, s) * m + a2.act_generator(j, s);
        if (orbit[nxt] == kUnset) {
          orbit[nxt] = orbits;
          queue.push_back(nxt);
        }
      }
    }
    ++orbits;
  }

  std::vector<DoubleCosetCell> cells(orbits, DoubleCosetCell{kNoElem, 0});
  for (std::size_t j = 0; j < m; ++j) ++cells[orbit[j]].size;
  // coset 0 of H1 is H1 itself, so element x lies in the cell of (0, coset2(x))
  for (ElemId x = 0; x < g.order(); ++x) {
    auto& c = cells[orbit[a2.coset_of(x)]];
    if (c.representative == kNoElem) c.representative = x;
  }

  std::vector<std::uint32_t> by_rank(orbits);
  for (std::uint32_t v = 0; v < orbits; ++v) by_rank[v] = v;
  std::sort(by_rank.begin(), by_rank.end(), [&](auto x, auto y) {
    return std::pair(cells[x].size, cells[x].representative) < std::pair(cells[y].size, cells[y].representative);
  });
  std::vector<std::uint32_t> rank(orbits);
  DoubleCosetDecomposition out;
  for (std::uint32_t r = 0; r < orbits; ++r) {
    rank[by_rank[r]] = r;
    out.cells.push_back(cells[by_rank[r]]);
  }
  std::vector<std::uint32_t> entries(m * m);
  for (std::size_t e = 0; e < m * m; ++e) entries[e] = rank[orbit[e]];
  out.pattern = Pattern(m, orbits, std::move(entries));

  std::size_t total = 0;
  for (auto& c : out.cells) total += c.size;
  if (total != m) throw std::logic_error("double coset sizes do not sum to the index");
  for (std::size_t s = 0; s < ngens; ++s)
    for (std::uint32_t i = 0; i < m; ++i)
      for (std::uint32_t j = 0; j < m; ++j)
        if (out.pattern.at(a1.act_generator(i, s), a2.act_generator(j, s)) != out.pattern.at(i, j))
          throw std::logic_error("pattern is not an intertwiner");
  return out;
}

}  // namespace gassmann
