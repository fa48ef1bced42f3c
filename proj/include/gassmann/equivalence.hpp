#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gassmann/lattice.hpp"

namespace gassmann {

// Either an enumerated group containing H1 and H2, or the symmetric group of a
// degree, where H1 and H2 are standalone enumerated groups and conjugacy is
// decided by permutation isomorphism.
class Ambient {
 public:
  static Ambient enumerated(GroupPtr g);
  static Ambient symmetric(std::size_t degree);

  bool is_symmetric() const { return !group_; }
  const GroupPtr& group() const { return group_; }
  const ConjugacyClasses& classes() const { return *classes_; }
  std::size_t degree() const { return degree_; }

 private:
  GroupPtr group_;
  std::shared_ptr<const ConjugacyClasses> classes_;
  std::size_t degree_ = 0;
};

struct Relation {
  enum class Kind { Rational, PLocal, LocalIntegral, Solvable };
  Kind kind = Kind::Rational;
  unsigned prime = 0;

  static Relation rational() { return {Kind::Rational, 0}; }
  static Relation p_local(unsigned p) { return {Kind::PLocal, p}; }
  static Relation local_integral() { return {Kind::LocalIntegral, 0}; }
  static Relation solvable() { return {Kind::Solvable, 0}; }
  // "rational", "p-local:<p>", "local-integral", "solvable"
  static Relation parse(const std::string& text);
  std::string name() const;
  bool operator==(const Relation&) const = default;
};

struct Discrepancy {
  Subgroup subgroup;
  // marks of the subgroup on [H1\G] and [H2\G]; absent in symmetric mode
  std::optional<std::size_t> chi1, chi2;
  // members of the subgroup's ambient class among the compared subgroups (or elements) of H1 and H2
  std::size_t count1 = 0, count2 = 0;
};

struct EquivalenceReport {
  Relation relation;
  bool verdict = false;
  // pairs of subgroup indices (into the P-subgroup lists of H1 and H2), or of
  // element indices for the rational relation
  std::vector<std::pair<std::size_t, std::size_t>> witness;
  std::optional<Discrepancy> discrepancy;
  std::size_t ambient_classes = 0;
  std::size_t compared1 = 0, compared2 = 0;
  std::vector<unsigned> failing_primes;
};

nlohmann::json to_json(const EquivalenceReport& r);

struct EquivalenceOptions {
  // Re-derive verdicts along a second route and throw std::logic_error on disagreement.
  bool cross_check = false;
  std::size_t bound = kDefaultLatticeBound;
};

// #{g in G : g K g^-1 <= H} / |H|, checked against the number of cosets of H fixed by K.
std::size_t mark(const Subgroup& h, const Subgroup& k);

// Groups subgroups by ambient conjugacy.
class ConjugacyBucketer {
 public:
  explicit ConjugacyBucketer(Ambient ambient);
  std::size_t add(const Subgroup& k);
  std::size_t bucket_count() const { return reps_.size(); }
  const Subgroup& representative(std::size_t bucket) const { return reps_[bucket]; }

 private:
  std::vector<std::size_t> key_of(const Subgroup& k) const;
  Ambient ambient_;
  std::vector<Subgroup> reps_;
  std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> by_key_;
};

EquivalenceReport class_preserving_bijection(const Ambient& amb, const Subgroup& h1, const Subgroup& h2,
                                             const ClassSelector& selector, const EquivalenceOptions& opt = {});
EquivalenceReport rationally_equivalent(const Ambient& amb, const Subgroup& h1, const Subgroup& h2,
                                        const EquivalenceOptions& opt = {});
EquivalenceReport p_locally_equivalent(const Ambient& amb, const Subgroup& h1, const Subgroup& h2, unsigned p,
                                       const EquivalenceOptions& opt = {});
EquivalenceReport locally_integrally_equivalent(const Ambient& amb, const Subgroup& h1, const Subgroup& h2,
                                                const EquivalenceOptions& opt = {});
EquivalenceReport solvably_equivalent(const Ambient& amb, const Subgroup& h1, const Subgroup& h2,
                                      const EquivalenceOptions& opt = {});
EquivalenceReport check_relation(const Ambient& amb, const Subgroup& h1, const Subgroup& h2, const Relation& rel,
                                 const EquivalenceOptions& opt = {});

struct ClassPartition {
  std::vector<Subgroup> candidates;
  // indices into candidates
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::vector<std::size_t>> nontrivial() const;
};

// Partitions conjugacy-class representatives of subgroups of G under a relation.
// Empty candidates means every subgroup class of G.
ClassPartition partition_subgroup_classes(const Ambient& amb, const Relation& rel, std::vector<Subgroup> candidates,
                                          const EquivalenceOptions& opt = {});

// Rationally equivalent subgroups share their normal core.
bool gassmann_faithful(const Subgroup& h1, const Subgroup& h2);

}  // namespace gassmann
