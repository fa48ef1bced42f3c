#include <algorithm>
#include <iomanip>
#include <random>
#include <sstream>

#include "gassmann/errors.hpp"
#include "gassmann/lattice.hpp"
#include "gassmann/linear.hpp"
#include "gassmann/properties.hpp"

namespace gassmann {

namespace {

std::uint64_t power_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  a %= p;
  for (; e; e >>= 1, a = a * a % p)
    if (e & 1) r = r * a % p;
  return r;
}

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  if (a % p == 0) throw InvalidDatum("zero has no inverse");
  return static_cast<std::uint32_t>(power_mod(a, p - 2, p));
}

std::uint32_t primitive_root(std::uint32_t p) {
  auto factors = prime_divisors(p - 1);
  for (std::uint32_t g = 2; g < p; ++g) {
    bool ok = true;
    for (auto q : factors) ok = ok && power_mod(g, (p - 1) / q, p) != 1;
    if (ok) return g;
  }
  return 1;
}

}  // namespace

std::uint32_t Mat2::det() const {
  std::uint64_t x = std::uint64_t{a} * d % p, y = std::uint64_t{b} * c % p;
  return static_cast<std::uint32_t>((x + p - y) % p);
}

Mat2 Mat2::operator*(const Mat2& o) const {
  auto m = [&](std::uint64_t u, std::uint64_t v, std::uint64_t w, std::uint64_t z) {
    return static_cast<std::uint32_t>((u * v + w * z) % p);
  };
  return {p, m(a, o.a, b, o.c), m(a, o.b, b, o.d), m(c, o.a, d, o.c), m(c, o.b, d, o.d)};
}

Mat2 Mat2::inverse() const {
  std::uint64_t inv = inverse_mod(det(), p);
  auto s = [&](std::uint64_t v) { return static_cast<std::uint32_t>(v * inv % p); };
  return {p, s(d), s((p - b) % p), s((p - c) % p), s(a)};
}

Mat2 Mat2::negated() const { return {p, (p - a) % p, (p - b) % p, (p - c) % p, (p - d) % p}; }

std::string Mat2::to_string() const {
  std::ostringstream out;
  out << '[' << a << ' ' << b << "; " << c << ' ' << d << "] mod " << p;
  return out.str();
}

std::string to_string(LinearKind k) {
  switch (k) {
    case LinearKind::GL2:
      return "GL2";
    case LinearKind::SL2:
      return "SL2";
    case LinearKind::PSL2:
      break;
  }
  return "PSL2";
}

std::size_t linear_group_order(LinearKind kind, std::uint32_t p) {
  std::size_t sl = std::size_t{p} * (std::size_t{p} * p - 1);
  switch (kind) {
    case LinearKind::GL2:
      return sl * (p - 1);
    case LinearKind::SL2:
      return sl;
    case LinearKind::PSL2:
      break;
  }
  return sl / 2;
}

bool is_square_mod(std::uint64_t r, std::uint64_t p) {
  r %= p;
  return r == 0 || power_mod(r, (p - 1) / 2, p) == 1;
}

std::uint32_t least_nonresidue(std::uint32_t p) {
  for (std::uint32_t r = 2; r < p; ++r)
    if (!is_square_mod(r, p)) return r;
  throw PreconditionFailed("no nonresidue modulo " + std::to_string(p));
}

std::size_t LinearGroup::point(std::uint32_t x, std::uint32_t y) const {
  if (kind_ != LinearKind::PSL2) return std::size_t{x} * p_ + y - 1;
  if (y == 0) return p_;
  return std::uint64_t{x} * inverse_mod(y, p_) % p_;
}

Permutation LinearGroup::lift(const Mat2& m) const {
  if (m.p != p_) throw InvalidDatum("matrix over the wrong field");
  const std::size_t n = spec_.degree;
  std::vector<Point> images(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t x, y;
    if (kind_ == LinearKind::PSL2) {
      x = i < p_ ? static_cast<std::uint32_t>(i) : 1;
      y = i < p_ ? 1 : 0;
    } else {
      x = static_cast<std::uint32_t>((i + 1) / p_);
      y = static_cast<std::uint32_t>((i + 1) % p_);
    }
    std::uint64_t u = (std::uint64_t{x} * m.a + std::uint64_t{y} * m.c) % p_;
    std::uint64_t v = (std::uint64_t{x} * m.b + std::uint64_t{y} * m.d) % p_;
    images[i] = static_cast<Point>(point(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v)));
  }
  return Permutation(std::move(images));
}

ElemId LinearGroup::element(const Mat2& m) const {
  auto id = group_->find(lift(m));
  if (!id) throw InvalidDatum("matrix " + m.to_string() + " is not in " + to_string(kind_));
  return *id;
}

LinearGroup build_linear_group(LinearKind kind, std::uint32_t p, std::size_t max_order) {
  if (!is_prime(p) || p < 5) throw PreconditionFailed("p must be a prime >= 5");
  const std::size_t order = linear_group_order(kind, p);
  if (order > max_order) throw OrderExceeded(max_order);
  LinearGroup g;
  g.kind_ = kind;
  g.p_ = p;
  g.spec_.degree = kind == LinearKind::PSL2 ? p + 1 : std::size_t{p} * p - 1;
  g.spec_.label = to_string(kind) + "(" + std::to_string(p) + ")";
  std::vector<Mat2> gens{{p, 1, 1, 0, 1}, {p, 1, 0, 1, 1}};
  if (kind == LinearKind::GL2) gens.push_back(Mat2::diagonal(p, primitive_root(p), 1));
  for (auto& m : gens) g.spec_.generators.push_back(g.lift(m));
  g.group_ = enumerate_group(g.spec_, max_order);
  if (g.group_->order() != order) throw std::logic_error("linear group has the wrong order");

  const std::size_t kernel = kind == LinearKind::PSL2 ? 2 : 1;
  std::vector<std::uint8_t> preimages(order, 0);
  g.matrices_.assign(order, Mat2::identity(p));
  for (std::uint32_t a = 0; a < p; ++a)
    for (std::uint32_t b = 0; b < p; ++b)
      for (std::uint32_t c = 0; c < p; ++c)
        for (std::uint32_t d = 0; d < p; ++d) {
          Mat2 m{p, a, b, c, d};
          auto det = m.det();
          if (kind == LinearKind::GL2 ? det == 0 : det != 1) continue;
          auto id = g.element(m);
          if (preimages[id]++ == 0) g.matrices_[id] = m;
        }
  for (auto n : preimages)
    if (n != kernel) throw std::logic_error("lift kernel has the wrong size");
  return g;
}

Subgroup find_icosahedral_subgroup(const LinearGroup& sl2, const IcosahedralSearch& opt) {
  const std::uint32_t p = sl2.p();
  if (sl2.kind() != LinearKind::SL2) throw PreconditionFailed("icosahedral search needs an SL2 handle");
  if (p % 5 != 1 && p % 5 != 4) throw PreconditionFailed("p must be +-1 mod 5");
  const auto& parent = sl2.group();
  const ElemId minus_one = sl2.element(Mat2::identity(p).negated());
  std::vector<ElemId> order4, order5, order3;
  for (ElemId x = 0; x < parent->order(); ++x) {
    auto o = parent->element_order(x);
    if (o == 4) order4.push_back(x);
    if (o == 5 || o == 10) order5.push_back(x);
    if (o == 3 || o == 6) order3.push_back(x);
  }
  auto accept = [&](ElemId x, ElemId y) -> std::optional<Subgroup> {
    std::array<ElemId, 2> gens{x, y};
    auto s = generate(parent, gens, 120);
    if (!s || s->order() != 120 || !s->contains(minus_one)) return std::nullopt;
    if (!(derived_subgroup(*s) == *s)) return std::nullopt;
    return s;
  };
  std::mt19937_64 rng(opt.seed);
  for (std::size_t t = 0; t < opt.attempts; ++t) {
    const auto& second = t % 2 == 0 ? order5 : order3;
    ElemId x = order4[rng() % order4.size()];
    ElemId y = second[rng() % second.size()];
    if (auto s = accept(x, y)) return *s;
  }
  if (opt.exhaustive_fallback) {
    auto classes = conjugacy_classes(*parent);
    for (ElemId x : classes.representatives) {
      if (parent->element_order(x) != 4) continue;
      for (ElemId y : order5)
        if (auto s = accept(x, y)) return *s;
    }
  }
  throw SearchExhausted("no icosahedral subgroup found in SL2(" + std::to_string(p) + ")");
}

namespace {

ElemId conjugate_by_diagonal(const LinearGroup& g, ElemId x, std::uint32_t r) {
  const std::uint32_t p = g.p();
  Mat2 sigma = Mat2::diagonal(p, r, 1);
  return g.element(sigma * g.matrix(x) * sigma.inverse());
}

}  // namespace

Subgroup outer_conjugate(const LinearGroup& g, const Subgroup& h, std::uint32_t r) {
  if (is_square_mod(r, g.p())) throw NotNonresidue(std::to_string(r) + " is a square mod " + std::to_string(g.p()));
  std::vector<ElemId> gens;
  for (ElemId x : h.generators()) gens.push_back(conjugate_by_diagonal(g, x, r));
  auto out = closure(g.group(), gens);
  if (out.order() != h.order()) throw std::logic_error("conjugate has a different order");
  return out;
}

Subgroup project(const LinearGroup& sl2, const LinearGroup& psl2, const Subgroup& h) {
  if (sl2.p() != psl2.p() || psl2.kind() != LinearKind::PSL2) throw PreconditionFailed("projection needs PSL2 at the same prime");
  std::vector<ElemId> gens;
  for (ElemId x : h.generators()) gens.push_back(psl2.element(sl2.matrix(x)));
  return closure(psl2.group(), gens);
}

std::vector<std::size_t> classes_moved_by_outer(const LinearGroup& g, const ConjugacyClasses& classes,
                                                std::uint32_t r) {
  std::vector<std::size_t> moved;
  for (std::size_t c = 0; c < classes.count(); ++c)
    if (classes.class_of[conjugate_by_diagonal(g, classes.representatives[c], r)] != c) moved.push_back(c);
  return moved;
}

ClassTable predicted_prime_to_p_classes(std::uint32_t p) {
  ClassTable t;
  auto pm1 = [p](std::uint32_t m) { return (p - 1) % m == 0 || (p + 1) % m == 0; };
  for (std::uint32_t n = 1; n <= p + 1; ++n)
    if (pm1(n)) t["C" + std::to_string(n)] = 1;
  for (std::uint32_t n = 2; 2 * n <= p + 1; ++n) {
    if (pm1(4 * n))
      t["2D" + std::to_string(n)] = 2;
    else if (pm1(2 * n))
      t["2D" + std::to_string(n)] = 1;
  }
  bool sqrt2 = p % 8 == 1 || p % 8 == 7;
  t["2A4"] = sqrt2 ? 2 : 1;
  if (sqrt2) t["2S4"] = 2;
  if (p % 5 == 1 || p % 5 == 4) t["2A5"] = 2;
  return t;
}

Classification classify_prime_to_p_subgroups(const LinearGroup& sl2, std::uint32_t max_p) {
  const std::uint32_t p = sl2.p();
  if (sl2.kind() != LinearKind::SL2) throw PreconditionFailed("classification needs an SL2 handle");
  if (p > max_p) throw PreconditionFailed("p = " + std::to_string(p) + " is above the classification bound");
  const auto& parent = sl2.group();
  const ElemId minus_one = sl2.element(Mat2::identity(p).negated());
  LatticeOptions opt;
  opt.order_filter = [p](std::size_t n) { return n % p != 0; };
  opt.bound = parent->order();
  Classification out;
  out.p = p;
  for (const auto& c : subgroup_classes(Subgroup::whole(parent), opt)) {
    const auto& k = c.representative;
    const std::size_t n = k.order();
    std::string tag;
    if (is_cyclic(k)) {
      tag = "C" + std::to_string(n);
    } else {
      if (!k.contains(minus_one)) throw std::logic_error("noncyclic subgroup without -1");
      bool half = std::any_of(k.members().begin(), k.members().end(),
                              [&](ElemId x) { return parent->element_order(x) == n / 2; });
      if (half && n % 4 == 0)
        tag = "2D" + std::to_string(n / 4);
      else if (n == 24)
        tag = "2A4";
      else if (n == 48)
        tag = "2S4";
      else if (n == 120)
        tag = "2A5";
      else
        throw std::logic_error("unexpected subgroup of order " + std::to_string(n));
    }
    ++out.computed[tag];
  }
  out.predicted = predicted_prime_to_p_classes(p);
  for (auto& [tag, n] : out.computed) {
    auto it = out.predicted.find(tag);
    if (it == out.predicted.end() || it->second != n) out.mismatches.push_back(tag);
  }
  for (auto& [tag, n] : out.predicted)
    if (!out.computed.count(tag)) out.mismatches.push_back(tag);
  return out;
}

namespace {

// family rank then numeric suffix: C before 2D, then 2A4, 2S4, 2A5
std::pair<int, int> tag_key(const std::string& tag) {
  if (tag[0] == 'C') return {0, std::stoi(tag.substr(1))};
  if (tag.rfind("2D", 0) == 0) return {1, std::stoi(tag.substr(2))};
  if (tag == "2A4") return {2, 0};
  if (tag == "2S4") return {3, 0};
  return {4, 0};
}

std::vector<std::string> ordered_tags(const Classification& c) {
  std::vector<std::string> tags;
  for (auto& [t, n] : c.computed) tags.push_back(t);
  for (auto& [t, n] : c.predicted)
    if (!c.computed.count(t)) tags.push_back(t);
  std::sort(tags.begin(), tags.end(), [](auto& x, auto& y) { return tag_key(x) < tag_key(y); });
  return tags;
}

std::size_t lookup(const ClassTable& t, const std::string& tag) {
  auto it = t.find(tag);
  return it == t.end() ? 0 : it->second;
}

}  // namespace

nlohmann::json to_json(const Classification& c) {
  nlohmann::json rows = nlohmann::json::array();
  for (auto& tag : ordered_tags(c))
    rows.push_back({{"type", tag}, {"computed", lookup(c.computed, tag)}, {"predicted", lookup(c.predicted, tag)}});
  return {{"p", c.p}, {"classes", rows}, {"mismatches", c.mismatches}};
}

std::string format_table(const Classification& c) {
  std::ostringstream out;
  out << "SL2(" << c.p << ") subgroups of order prime to " << c.p << '\n';
  out << std::left << std::setw(8) << "type" << std::right << std::setw(10) << "computed" << std::setw(11)
      << "predicted" << '\n';
  for (auto& tag : ordered_tags(c)) {
    auto x = lookup(c.computed, tag), y = lookup(c.predicted, tag);
    out << std::left << std::setw(8) << tag << std::right << std::setw(10) << x << std::setw(11) << y
        << (x != y ? "  differs" : "") << '\n';
  }
  return out.str();
}

bool SolvableFamilyReport::holds() const {
  return !conjugate_in_sl2 && solvable_sl2.verdict && !conjugate_in_psl2 && solvable_psl2.verdict &&
         moved_classes == 4 && moved_classes_have_order_divisible_by_p;
}

SolvableFamilyReport verify_solvable_family(std::uint32_t p, const EquivalenceOptions& opt) {
  if (!is_prime(p)) throw PreconditionFailed(std::to_string(p) + " is not prime");
  if (p % 120 != 29 && p % 120 != 91) throw PreconditionFailed("p must be +-29 mod 120");
  SolvableFamilyReport out;
  out.p = p;
  out.r = least_nonresidue(p);
  auto sl2 = build_linear_group(LinearKind::SL2, p);
  out.h1 = find_icosahedral_subgroup(sl2);
  out.h2 = outer_conjugate(sl2, out.h1, out.r);
  out.conjugate_in_sl2 = transporter(sl2.group(), out.h1, out.h2).has_value();
  out.solvable_sl2 = solvably_equivalent(Ambient::enumerated(sl2.group()), out.h1, out.h2, opt);

  auto classes = conjugacy_classes(*sl2.group());
  auto moved = classes_moved_by_outer(sl2, classes, out.r);
  out.moved_classes = moved.size();
  out.moved_classes_have_order_divisible_by_p = std::all_of(moved.begin(), moved.end(), [&](std::size_t c) {
    return sl2.group()->element_order(classes.representatives[c]) % p == 0;
  });

  auto psl2 = build_linear_group(LinearKind::PSL2, p);
  auto k1 = project(sl2, psl2, out.h1), k2 = project(sl2, psl2, out.h2);
  out.conjugate_in_psl2 = transporter(psl2.group(), k1, k2).has_value();
  out.solvable_psl2 = solvably_equivalent(Ambient::enumerated(psl2.group()), k1, k2, opt);
  return out;
}

ClassTable solvable_family_obstructions(const LinearGroup& sl2) {
  auto c = classify_prime_to_p_subgroups(sl2, sl2.p());
  ClassTable out;
  for (const char* tag : {"2D2", "2D3", "2D5", "2A4"}) {
    auto n = lookup(c.computed, tag);
    if (n != 1) out[tag] = n;
  }
  return out;
}

}  // namespace gassmann
