#include "gassmann/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "gassmann/errors.hpp"

namespace gassmann {

Permutation::Permutation(std::size_t degree) : images_(degree) {
  std::iota(images_.begin(), images_.end(), Point{0});
}

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (Point p : images_) {
    if (p >= images_.size() || seen[p]) throw PreconditionFailed("image list is not a bijection");
    seen[p] = true;
  }
}

Permutation Permutation::from_cycles(std::size_t degree,
                                     const std::vector<std::vector<std::size_t>>& cycles) {
  Permutation p(degree);
  std::vector<bool> used(degree, false);
  for (const auto& cyc : cycles) {
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      std::size_t a = cyc[i];
      std::size_t b = cyc[(i + 1) % cyc.size()];
      if (a < 1 || a > degree) throw PreconditionFailed("point out of range");
      if (used[a - 1]) throw PreconditionFailed("point repeated in cycles");
      used[a - 1] = true;
      p.images_[a - 1] = static_cast<Point>(b - 1);
    }
  }
  return p;
}

Permutation Permutation::operator*(const Permutation& rhs) const {
  Permutation out;
  out.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) out.images_[i] = rhs.images_[images_[i]];
  return out;
}

Permutation Permutation::inverse() const {
  Permutation out;
  out.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) out.images_[images_[i]] = static_cast<Point>(i);
  return out;
}

Permutation Permutation::pow(long long e) const {
  Permutation base = e < 0 ? inverse() : *this;
  unsigned long long n = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
  Permutation result(degree());
  while (n) {
    if (n & 1) result = result * base;
    base = base * base;
    n >>= 1;
  }
  return result;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

std::size_t Permutation::order() const {
  std::size_t l = 1;
  for (std::size_t len : cycle_type()) l = std::lcm(l, len);
  return l;
}

std::vector<std::size_t> Permutation::cycle_type() const {
  std::vector<std::size_t> out;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      ++len;
    }
    out.push_back(len);
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

std::vector<std::vector<Point>> Permutation::cycles() const {
  std::vector<std::vector<Point>> out;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i] || images_[i] == i) continue;
    std::vector<Point> cyc;
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      cyc.push_back(static_cast<Point>(j));
    }
    out.push_back(std::move(cyc));
  }
  return out;
}

std::string Permutation::to_string() const {
  auto cs = cycles();
  if (cs.empty()) return "()";
  std::ostringstream os;
  for (const auto& c : cs) {
    os << '(';
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? " " : "") << c[i] + 1;
    os << ')';
  }
  return os.str();
}

Permutation parse_cycles(std::string_view text, std::size_t degree, std::size_t line,
                         std::size_t column_offset) {
  std::vector<std::vector<std::size_t>> cycles;
  std::vector<bool> used(degree, false);
  std::size_t i = 0;
  auto col = [&](std::size_t pos) { return column_offset + pos + 1; };
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\r')) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw ParseError("expected '('", line, col(i));
    ++i;
    std::vector<std::size_t> cyc;
    bool need_sep = false;
    for (;;) {
      skip_ws();
      if (i >= text.size()) throw ParseError("unterminated cycle", line, col(i));
      char c = text[i];
      if (c == ')') {
        ++i;
        break;
      }
      if (c == ',') {
        if (!need_sep) throw ParseError("unexpected ','", line, col(i));
        need_sep = false;
        ++i;
        continue;
      }
      if (c < '0' || c > '9') throw ParseError(std::string("unexpected character '") + c + "'", line, col(i));
      std::size_t start = i;
      std::size_t v = 0;
      while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
        v = v * 10 + static_cast<std::size_t>(text[i] - '0');
        if (v > 65535) throw ParseError("point too large", line, col(start));
        ++i;
      }
      if (v < 1 || v > degree)
        throw ParseError("point " + std::to_string(v) + " outside 1.." + std::to_string(degree), line,
                         col(start));
      if (used[v - 1]) throw ParseError("point " + std::to_string(v) + " repeated", line, col(start));
      used[v - 1] = true;
      cyc.push_back(v);
      need_sep = true;
    }
    if (!cyc.empty()) cycles.push_back(std::move(cyc));
    skip_ws();
  }
  return Permutation::from_cycles(degree, cycles);
}

std::size_t hash_points(std::span<const Point> pts) {
  std::uint64_t h = 0x9e3779b97f4a7c15ull;
  for (Point p : pts) {
    h ^= p;
    h *= 0x100000001b3ull;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h ^ (h >> 32));
}

std::size_t PermutationHash::operator()(const Permutation& p) const { return hash_points(p.images()); }

}  // namespace gassmann
