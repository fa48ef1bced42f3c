#include "gassmann/group.hpp"

#include <algorithm>
#include <cstring>

#include "gassmann/errors.hpp"

namespace gassmann {

void GroupSpec::validate() const {
  if (degree == 0) throw PreconditionFailed("degree must be positive");
  for (const auto& g : generators)
    if (g.degree() != degree)
      throw DegreeMismatch("generator of degree " + std::to_string(g.degree()) + " in a group of degree " +
                           std::to_string(degree));
}

namespace {

constexpr std::size_t kMaxBase = 64;

// Open-addressing set of element ids keyed by a caller-supplied hash/equality.
class IdTable {
 public:
  explicit IdTable(std::size_t capacity_hint) {
    std::size_t cap = 16;
    while (cap < 2 * capacity_hint) cap <<= 1;
    slots_.assign(cap, kNoElem);
  }

  template <class Eq>
  ElemId find(std::size_t h, Eq eq) const {
    std::size_t mask = slots_.size() - 1;
    for (std::size_t i = h & mask;; i = (i + 1) & mask) {
      ElemId s = slots_[i];
      if (s == kNoElem) return kNoElem;
      if (eq(s)) return s;
    }
  }

  template <class HashOf>
  void insert(std::size_t h, ElemId id, HashOf hash_of) {
    if (2 * (count_ + 1) > slots_.size()) grow(hash_of);
    place(h, id);
    ++count_;
  }

  std::vector<ElemId> release() { return std::move(slots_); }

 private:
  void place(std::size_t h, ElemId id) {
    std::size_t mask = slots_.size() - 1;
    std::size_t i = h & mask;
    while (slots_[i] != kNoElem) i = (i + 1) & mask;
    slots_[i] = id;
  }

  template <class HashOf>
  void grow(HashOf hash_of) {
    std::vector<ElemId> old = std::move(slots_);
    slots_.assign(old.size() * 2, kNoElem);
    for (ElemId s : old)
      if (s != kNoElem) place(hash_of(s), s);
  }

  std::vector<ElemId> slots_;
  std::size_t count_ = 0;
};

std::size_t hash_base(const Point* pts, std::size_t n) { return hash_points({pts, n}); }

}  // namespace

Permutation EnumeratedGroup::permutation(ElemId x) const {
  auto im = images(x);
  return Permutation(std::vector<Point>(im.begin(), im.end()));
}

ElemId EnumeratedGroup::lookup_base_images(const Point* base_images) const {
  std::size_t b = base_.size();
  std::size_t h = hash_base(base_images, b);
  for (std::size_t i = h & table_mask_;; i = (i + 1) & table_mask_) {
    ElemId s = table_[i];
    if (s == kNoElem) return kNoElem;
    const Point* im = images_.data() + static_cast<std::size_t>(s) * degree_;
    bool eq = true;
    for (std::size_t k = 0; k < b; ++k)
      if (im[base_[k]] != base_images[k]) {
        eq = false;
        break;
      }
    if (eq) return s;
  }
}

ElemId EnumeratedGroup::mul(ElemId x, ElemId y) const {
  Point buf[kMaxBase];
  const Point* ix = images_.data() + static_cast<std::size_t>(x) * degree_;
  const Point* iy = images_.data() + static_cast<std::size_t>(y) * degree_;
  for (std::size_t k = 0; k < base_.size(); ++k) buf[k] = iy[ix[base_[k]]];
  return lookup_base_images(buf);
}

ElemId EnumeratedGroup::conj(ElemId g, ElemId x) const {
  Point buf[kMaxBase];
  const Point* ig = images_.data() + static_cast<std::size_t>(g) * degree_;
  const Point* ix = images_.data() + static_cast<std::size_t>(x) * degree_;
  const Point* igi = images_.data() + static_cast<std::size_t>(inverse_[g]) * degree_;
  for (std::size_t k = 0; k < base_.size(); ++k) buf[k] = igi[ix[ig[base_[k]]]];
  return lookup_base_images(buf);
}

ElemId EnumeratedGroup::pow(ElemId x, long long e) const {
  if (e < 0) {
    x = inv(x);
    e = -e;
  }
  e %= orders_[x];
  ElemId result = identity();
  ElemId base = x;
  while (e) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

std::optional<ElemId> EnumeratedGroup::find(std::span<const Point> im) const {
  if (im.size() != degree_) return std::nullopt;
  Point buf[kMaxBase];
  for (std::size_t k = 0; k < base_.size(); ++k) buf[k] = im[base_[k]];
  ElemId s = lookup_base_images(buf);
  if (s == kNoElem) return std::nullopt;
  auto own = images(s);
  if (!std::equal(own.begin(), own.end(), im.begin())) return std::nullopt;
  return s;
}

std::optional<ElemId> EnumeratedGroup::find(const Permutation& p) const { return find(p.images()); }

void EnumeratedGroup::build_index() {
  const std::size_t n = degree_;
  // Greedy base: repeatedly take the point moved by most elements that fix the base so far.
  std::vector<ElemId> remaining;
  for (ElemId x = 1; x < order_; ++x) remaining.push_back(x);
  std::vector<std::size_t> moved(n);
  while (!remaining.empty()) {
    std::fill(moved.begin(), moved.end(), 0);
    for (ElemId x : remaining) {
      const Point* im = images_.data() + static_cast<std::size_t>(x) * n;
      for (std::size_t i = 0; i < n; ++i)
        if (im[i] != i) ++moved[i];
    }
    auto best = static_cast<Point>(std::max_element(moved.begin(), moved.end()) - moved.begin());
    base_.push_back(best);
    if (base_.size() > kMaxBase) throw Error("base longer than supported");
    std::erase_if(remaining, [&](ElemId x) { return image(x, best) != best; });
  }

  IdTable table(order_);
  auto hash_of = [&](ElemId x) {
    Point buf[kMaxBase];
    for (std::size_t k = 0; k < base_.size(); ++k) buf[k] = image(x, base_[k]);
    return hash_base(buf, base_.size());
  };
  for (ElemId x = 0; x < order_; ++x) table.insert(hash_of(x), x, hash_of);
  table_ = table.release();
  table_mask_ = table_.size() - 1;

  inverse_.resize(order_);
  std::vector<Point> inv(n);
  for (ElemId x = 0; x < order_; ++x) {
    const Point* im = images_.data() + static_cast<std::size_t>(x) * n;
    for (std::size_t i = 0; i < n; ++i) inv[im[i]] = static_cast<Point>(i);
    Point buf[kMaxBase];
    for (std::size_t k = 0; k < base_.size(); ++k) buf[k] = inv[base_[k]];
    inverse_[x] = lookup_base_images(buf);
  }

  orders_.assign(order_, 1);
  for (ElemId x = 1; x < order_; ++x) {
    std::uint32_t k = 1;
    for (ElemId y = x; y != identity(); y = mul(y, x)) ++k;
    orders_[x] = k;
  }
}

GroupPtr enumerate_group(const GroupSpec& spec, std::size_t max_order) {
  spec.validate();
  std::shared_ptr<EnumeratedGroup> g(new EnumeratedGroup());
  g->spec_ = spec;
  const std::size_t n = spec.degree;
  g->degree_ = n;

  std::vector<Point> id(n);
  for (std::size_t i = 0; i < n; ++i) id[i] = static_cast<Point>(i);
  g->images_ = id;
  std::size_t count = 1;

  auto full = [&](ElemId x) { return g->images_.data() + static_cast<std::size_t>(x) * n; };
  auto hash_of = [&](ElemId x) { return hash_points({full(x), n}); };
  IdTable seen(1024);
  seen.insert(hash_of(0), 0, hash_of);

  std::vector<Point> buf(n);
  for (std::size_t i = 0; i < count; ++i) {
    for (const auto& gen : spec.generators) {
      const Point* cur = full(static_cast<ElemId>(i));
      for (std::size_t k = 0; k < n; ++k) buf[k] = gen[cur[k]];
      std::size_t h = hash_points(buf);
      ElemId hit = seen.find(h, [&](ElemId s) { return std::memcmp(full(s), buf.data(), n * sizeof(Point)) == 0; });
      if (hit != kNoElem) continue;
      if (count >= max_order) throw OrderExceeded(max_order);
      g->images_.insert(g->images_.end(), buf.begin(), buf.end());
      seen.insert(h, static_cast<ElemId>(count), hash_of);
      ++count;
    }
  }
  g->order_ = count;
  g->images_.shrink_to_fit();
  g->build_index();
  for (const auto& gen : spec.generators) g->generator_ids_.push_back(*g->find(gen));
  return g;
}

ConjugacyClasses conjugacy_classes(const EnumeratedGroup& g) {
  ConjugacyClasses cc;
  cc.class_of.assign(g.order(), 0xffffffffu);
  auto gens = g.generator_ids();
  std::vector<ElemId> queue;
  for (ElemId x = 0; x < g.order(); ++x) {
    if (cc.class_of[x] != 0xffffffffu) continue;
    auto id = static_cast<std::uint32_t>(cc.representatives.size());
    cc.representatives.push_back(x);
    queue.assign(1, x);
    cc.class_of[x] = id;
    for (std::size_t q = 0; q < queue.size(); ++q) {
      for (ElemId s : gens) {
        ElemId y = g.conj(s, queue[q]);
        if (cc.class_of[y] == 0xffffffffu) {
          cc.class_of[y] = id;
          queue.push_back(y);
        }
      }
    }
    cc.sizes.push_back(queue.size());
  }
  return cc;
}

}  // namespace gassmann
