#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gassmann/arith.hpp"
#include "gassmann/catalog.hpp"
#include "gassmann/errors.hpp"
#include "gassmann/fingerprint.hpp"
#include "gassmann/group_io.hpp"
#include "gassmann/homdet.hpp"
#include "gassmann/linear.hpp"

using namespace gassmann;
using nlohmann::json;

namespace {

constexpr int kExitVerdict = 1;
constexpr int kExitError = 2;
constexpr int kExitUsage = 64;

struct Options {
  bool json = false;
  std::string group, h1, h2, h1_gens, h2_gens;
  std::size_t symmetric = 0;
  std::size_t bound = kDefaultLatticeBound;
  std::size_t max_order = kDefaultMaxOrder;

  std::string relation = "rational";
  std::string expect;
  bool cross_check = false;

  bool classes = false;
  std::string selector;

  std::string pattern_out;

  std::string pattern, assign, factors;
  bool verify = false, resolve = false, certificate = false;
  std::optional<std::size_t> gcd_random;
  std::optional<long long> search;

  std::string h, decomposition, inertia;
  bool allow_noncyclic = false;

  std::uint32_t p = 0;
  std::string kind = "SL2";
  bool classify = false, verify_theorem = false, obstructions = false;

  std::string catalog, output;
  std::optional<std::size_t> index;
  bool faithful_only = false;
  unsigned workers = 0;

  std::string fixture_dir = GASSMANN_FIXTURE_DIR;
};

GroupPtr load_group(const Options& o) {
  if (o.group.empty()) throw PreconditionFailed("--group is required");
  return enumerate_group(parse_group_file(o.group), o.max_order);
}

Subgroup load_subgroup(const GroupPtr& g, const std::string& file, const std::string& gens, const char* name) {
  if (!gens.empty()) return subgroup_from_spec(g, parse_generator_list(gens, g->degree()));
  if (file.empty()) throw PreconditionFailed(std::string("--") + name + " is required");
  return subgroup_from_spec(g, parse_group_file(file));
}

std::string generators_text(const Subgroup& s) {
  std::string out;
  for (auto& p : s.generator_permutations()) out += (out.empty() ? "" : " ") + p.to_string();
  return out.empty() ? "()" : out;
}

void print(const Options& o, const json& j, const std::string& text) {
  if (o.json)
    std::cout << j.dump(2) << '\n';
  else
    std::cout << text;
}

int run_enumerate(const Options& o) {
  auto g = load_group(o);
  auto classes = conjugacy_classes(*g);
  json j{{"order", g->order()}, {"degree", g->degree()}, {"conjugacy_classes", classes.count()}};
  std::ostringstream text;
  text << "order " << g->order() << "\ndegree " << g->degree() << "\nconjugacy classes " << classes.count() << '\n';
  if (o.classes) {
    auto sizes = classes.sizes;
    j["class_sizes"] = sizes;
    text << "class sizes";
    for (auto s : sizes) text << ' ' << s;
    text << '\n';
  }
  if (!o.selector.empty()) {
    LatticeOptions opt;
    opt.selector = ClassSelector::parse(o.selector);
    opt.bound = o.bound;
    json rows = json::array();
    std::size_t total = 0;
    for (auto& c : subgroup_classes(Subgroup::whole(g), opt)) {
      total += c.size;
      rows.push_back({{"order", c.representative.order()},
                      {"class_size", c.size},
                      {"generators", generators_text(c.representative)}});
      text << "order " << c.representative.order() << "  conjugates " << c.size << "  "
           << generators_text(c.representative) << '\n';
    }
    j["subgroup_classes"] = rows;
    j["subgroups"] = total;
    text << rows.size() << " classes, " << total << " subgroups (" << opt.selector.name() << ")\n";
  }
  print(o, j, text.str());
  return 0;
}

int run_equiv(const Options& o) {
  auto rel = Relation::parse(o.relation);
  EquivalenceOptions eopt;
  eopt.cross_check = o.cross_check;
  eopt.bound = o.bound;
  EquivalenceReport report;
  json j;
  std::ostringstream text;
  if (o.symmetric) {
    auto g1 = enumerate_group(parse_group_file(o.h1), o.max_order);
    auto g2 = enumerate_group(parse_group_file(o.h2), o.max_order);
    if (g1->degree() != o.symmetric || g2->degree() != o.symmetric)
      throw DegreeMismatch("subgroup degree differs from --symmetric");
    report = check_relation(Ambient::symmetric(o.symmetric), Subgroup::whole(g1), Subgroup::whole(g2), rel, eopt);
    j = to_json(report);
  } else {
    auto g = load_group(o);
    auto h1 = load_subgroup(g, o.h1, o.h1_gens, "h1");
    auto h2 = load_subgroup(g, o.h2, o.h2_gens, "h2");
    report = check_relation(Ambient::enumerated(g), h1, h2, rel, eopt);
    bool conj = transporter(g, h1, h2).has_value();
    j = to_json(report);
    j["conjugate"] = conj;
    text << "orders " << h1.order() << ' ' << h2.order() << "\nconjugate " << (conj ? "true" : "false") << '\n';
  }
  text << "relation " << rel.name() << "\nverdict " << (report.verdict ? "true" : "false") << '\n';
  if (report.discrepancy) {
    const auto& d = *report.discrepancy;
    text << "discrepancy subgroup of order " << d.subgroup.order() << ": " << generators_text(d.subgroup) << '\n';
    if (d.chi1) text << "marks " << *d.chi1 << " vs " << *d.chi2 << '\n';
    text << "class members " << d.count1 << " vs " << d.count2 << '\n';
  }
  if (!report.failing_primes.empty()) {
    text << "failing primes";
    for (auto p : report.failing_primes) text << ' ' << p;
    text << '\n';
  }
  print(o, j, text.str());
  if (!o.expect.empty()) {
    if (o.expect != "true" && o.expect != "false") throw PreconditionFailed("--expect takes true or false");
    if ((o.expect == "true") != report.verdict) return kExitVerdict;
  }
  return 0;
}

int run_dcosets(const Options& o) {
  auto g = load_group(o);
  auto dc = double_cosets(load_subgroup(g, o.h1, o.h1_gens, "h1"), load_subgroup(g, o.h2, o.h2_gens, "h2"));
  json cells = json::array();
  std::ostringstream text;
  text << dc.cells.size() << " double cosets, index " << dc.pattern.size() << '\n';
  for (std::size_t v = 0; v < dc.cells.size(); ++v) {
    const auto& c = dc.cells[v];
    auto rep = g->permutation(c.representative).to_string();
    cells.push_back({{"variable", v + 1}, {"size", c.size}, {"representative", rep}});
    text << "x" << v + 1 << "  size " << c.size << "  representative " << rep << '\n';
  }
  if (!o.pattern_out.empty()) {
    std::ofstream out(o.pattern_out);
    if (!out) throw Error("cannot write " + o.pattern_out);
    out << print_pattern(dc.pattern);
  }
  print(o, {{"cells", cells}, {"index", dc.pattern.size()}}, text.str());
  return 0;
}

Assignment parse_assignment(const std::string& text) {
  Assignment a;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      a.push_back(std::stoll(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw ParseError("bad assignment entry '" + item + "'", 1, 1);
    }
  }
  return a;
}

std::string to_text(const std::vector<mpz_class>& v) {
  std::string s;
  for (auto& x : v) s += (s.empty() ? "" : ",") + x.get_str();
  return s;
}

int run_det(const Options& o) {
  Pattern pattern;
  if (!o.pattern.empty()) {
    pattern = parse_pattern_file(o.pattern);
  } else {
    auto g = load_group(o);
    pattern = double_cosets(load_subgroup(g, o.h1, o.h1_gens, "h1"), load_subgroup(g, o.h2, o.h2_gens, "h2")).pattern;
  }
  json j{{"size", pattern.size()}, {"variables", pattern.variables()}};
  std::ostringstream text;
  bool acted = false;
  if (!o.assign.empty()) {
    auto d = det_at(pattern, parse_assignment(o.assign));
    j["det"] = d.get_str();
    text << d.get_str() << '\n';
    acted = true;
  }
  if (o.gcd_random) {
    auto g = sample_gcd(pattern, default_samples(pattern.variables(), *o.gcd_random));
    j["sample_gcd"] = g.get_str();
    text << "sample gcd " << g.get_str() << '\n';
    acted = true;
  }
  std::optional<FactorList> factors;
  if (!o.factors.empty()) factors = parse_factor_file(o.factors);
  if ((o.verify || o.resolve || o.certificate) && !factors) throw PreconditionFailed("--factors is required");
  if (o.verify) {
    auto check = verify_factor_product(pattern, *factors);
    j["factor_check"] = {{"ok", check.ok}, {"orientation", check.orientation}, {"trials", check.trials}};
    text << "factor product " << (check.ok ? "verified" : "FAILED") << " over " << check.trials << " trials";
    if (check.ok) text << ", orientation " << check.orientation;
    if (check.counterexample) {
      std::string s;
      for (auto x : *check.counterexample) s += (s.empty() ? "" : ",") + std::to_string(x);
      j["factor_check"]["counterexample"] = *check.counterexample;
      text << ", counterexample " << s;
    }
    text << '\n';
    acted = true;
  }
  if (o.resolve) {
    json maps = json::array();
    for (auto& l : resolve_labeling(pattern, *factors)) {
      std::vector<std::size_t> one_based;
      for (auto v : l.varmap) one_based.push_back(v + 1);
      maps.push_back({{"varmap", one_based}, {"orientation", l.orientation}});
      text << "varmap";
      for (auto v : one_based) text << ' ' << v;
      text << "  orientation " << l.orientation << '\n';
    }
    j["labelings"] = maps;
    acted = true;
  }
  if (o.certificate) {
    auto cert = unimodularity_certificate(*factors, &pattern);
    j["certificate"] = {{"status", to_string(cert.status)}, {"reason", cert.reason}, {"systems", cert.systems.size()}};
    text << "unimodularity " << to_string(cert.status) << ": " << cert.reason << '\n';
    if (cert.witness) {
      j["certificate"]["witness"] = to_text(*cert.witness);
      text << "witness " << to_text(*cert.witness) << '\n';
    }
    acted = true;
  }
  if (o.search) {
    SearchStats stats;
    auto found = unimodular_search(pattern, *o.search, &stats);
    j["search"] = {{"bound", *o.search}, {"visited", stats.visited}, {"found", found.has_value()}};
    text << "search |x| <= " << *o.search << ": visited " << stats.visited << ", ";
    if (found) {
      j["search"]["assignment"] = *found;
      text << "unimodular at";
      for (auto x : *found) text << ' ' << x;
      text << '\n';
    } else {
      text << "none found (not a proof of nonexistence)\n";
    }
    acted = true;
  }
  if (!acted) text << "pattern " << pattern.size() << "x" << pattern.size() << ", " << pattern.variables() << " variables\n";
  print(o, j, text.str());
  return 0;
}

int run_split(const Options& o) {
  auto g = load_group(o);
  auto h = load_subgroup(g, o.h, "", "subgroup");
  LocalDatum datum{load_subgroup(g, o.decomposition, "", "decomposition"), load_subgroup(g, o.inertia, "", "inertia")};
  SplittingOptions sopt;
  sopt.allow_noncyclic = o.allow_noncyclic;
  auto p1 = splitting_pattern(h, datum, sopt);
  json j{{"pattern", to_json(p1)}, {"sum_e", p1.sum_e()}, {"product_e", p1.product_e()}};
  std::ostringstream text;
  if (o.allow_noncyclic) text << "warning: D/I not required to be cyclic; not an arithmetic datum\n";
  text << p1.to_string() << "\nsum e " << p1.sum_e() << ", product e " << p1.product_e() << '\n';
  if (!o.h2.empty()) {
    auto h2 = load_subgroup(g, o.h2, "", "h2");
    auto p2 = splitting_pattern(h2, datum, sopt);
    auto r = ramification_diagnostics(p1, p2);
    j["pattern2"] = to_json(p2);
    j["diagnostics"] = {{"sum_e", {r.sum_e1, r.sum_e2}},
                        {"product_e", {r.product_e1, r.product_e2}},
                        {"sum_equal", r.sum_equal},
                        {"product_equal", r.product_equal},
                        {"multiset_equal", r.multiset_equal}};
    auto d = dsets_isomorphic(h, h2, datum.decomposition);
    j["dsets_isomorphic"] = d.isomorphic;
    text << p2.to_string() << "\nsum e " << r.sum_e1 << " vs " << r.sum_e2 << ", product e " << r.product_e1
         << " vs " << r.product_e2 << ", patterns " << (r.multiset_equal ? "equal" : "differ")
         << "\nisomorphic as D-sets " << (d.isomorphic ? "true" : "false") << '\n';
  }
  print(o, j, text.str());
  return 0;
}

LinearKind parse_kind(const std::string& k) {
  if (k == "SL2") return LinearKind::SL2;
  if (k == "PSL2") return LinearKind::PSL2;
  if (k == "GL2") return LinearKind::GL2;
  throw PreconditionFailed("unknown kind " + k);
}

int run_sl2(const Options& o) {
  json j{{"p", o.p}};
  std::ostringstream text;
  if (o.verify_theorem) {
    EquivalenceOptions eopt;
    eopt.bound = o.bound;
    auto r = verify_solvable_family(o.p, eopt);
    j["theorem"] = {{"r", r.r},
                    {"h1", generators_text(r.h1)},
                    {"h2", generators_text(r.h2)},
                    {"conjugate_in_sl2", r.conjugate_in_sl2},
                    {"solvable_sl2", r.solvable_sl2.verdict},
                    {"conjugate_in_psl2", r.conjugate_in_psl2},
                    {"solvable_psl2", r.solvable_psl2.verdict},
                    {"moved_classes", r.moved_classes},
                    {"holds", r.holds()}};
    text << "sigma = diag(" << r.r << ", 1)\nH1, H2 conjugate in SL2: " << (r.conjugate_in_sl2 ? "yes" : "no")
         << "\nsolvably equivalent in SL2: " << (r.solvable_sl2.verdict ? "yes" : "no")
         << "\nconjugate in PSL2: " << (r.conjugate_in_psl2 ? "yes" : "no")
         << "\nsolvably equivalent in PSL2: " << (r.solvable_psl2.verdict ? "yes" : "no")
         << "\nclasses moved by sigma: " << r.moved_classes << "\nholds: " << (r.holds() ? "yes" : "no") << '\n';
    print(o, j, text.str());
    return r.holds() ? 0 : kExitVerdict;
  }
  auto g = build_linear_group(parse_kind(o.kind), o.p, o.max_order);
  j["kind"] = to_string(g.kind());
  j["order"] = g.group()->order();
  j["degree"] = g.group()->degree();
  text << to_string(g.kind()) << "(" << o.p << ") order " << g.group()->order() << " degree " << g.group()->degree()
       << '\n';
  if (o.classify) {
    auto c = classify_prime_to_p_subgroups(g, std::max(o.p, kDefaultClassificationBound));
    j["classification"] = to_json(c);
    text << format_table(c);
  }
  if (o.obstructions) {
    auto obs = solvable_family_obstructions(g);
    j["obstructions"] = obs;
    text << "class counts other than 1 among 2D2, 2D3, 2D5, 2A4:";
    for (auto& [tag, n] : obs) text << ' ' << tag << '=' << n;
    text << (obs.empty() ? " none\n" : "\n");
  }
  print(o, j, text.str());
  return 0;
}

int run_scan(const Options& o) {
  ScanJob job;
  if (!o.catalog.empty())
    job.catalog = o.catalog;
  else if (auto c = default_catalog())
    job.catalog = *c;
  else
    throw PreconditionFailed(std::string("no --catalog and ") + kCatalogEnv + " is not set");
  job.relation = Relation::parse(o.relation);
  job.index_filter = o.index;
  job.faithful_only = o.faithful_only;
  job.output = o.output;
  job.workers = o.workers;
  job.max_order = o.max_order;
  job.lattice_bound = o.bound;
  auto s = scan_catalog(job, [&](const ReportRecord& r) {
    if (!o.json) std::cout << r.group_label << " index " << r.index << ": " << r.pair_key() << '\n';
  });
  print(o, {{"groups", s.groups}, {"skipped", s.skipped}, {"records", s.records}, {"errors", s.errors}},
        "groups " + std::to_string(s.groups) + ", skipped " + std::to_string(s.skipped) + ", records " +
            std::to_string(s.records) + ", errors " + std::to_string(s.errors) + '\n');
  return s.errors ? kExitError : 0;
}

int run_fixtures(const Options& o) {
  auto status = verify_fixtures(o.fixture_dir);
  json rows = json::array();
  std::ostringstream text;
  bool ok = true;
  for (auto& s : status) {
    ok = ok && s.ok();
    rows.push_back({{"name", s.name}, {"sha256", s.actual}, {"ok", s.ok()}});
    text << (s.ok() ? "ok       " : s.actual.empty() ? "missing  " : "MISMATCH ") << s.name << '\n';
  }
  print(o, {{"fixtures", rows}}, text.str());
  return ok ? 0 : kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Permutation-group tools for arithmetic equivalence of subgroups", "gassmann"};
  app.require_subcommand(1);
  Options o;
  auto json_flag = [&](CLI::App* c) { c->add_flag("--json", o.json, "machine-readable output"); };
  auto group_opts = [&](CLI::App* c) {
    c->add_option("--group", o.group, "group file");
    c->add_option("--max-order", o.max_order, "enumeration bound");
    c->add_option("--bound", o.bound, "largest group whose subgroup lattice is built");
  };
  auto pair_opts = [&](CLI::App* c) {
    c->add_option("--h1", o.h1, "subgroup file");
    c->add_option("--h2", o.h2, "subgroup file");
    c->add_option("--h1-gens", o.h1_gens, "subgroup generators, ';'-separated");
    c->add_option("--h2-gens", o.h2_gens, "subgroup generators, ';'-separated");
  };

  auto* enumerate = app.add_subcommand("enumerate", "order, classes and subgroup classes of a group");
  group_opts(enumerate);
  json_flag(enumerate);
  enumerate->add_flag("--classes", o.classes, "print conjugacy class sizes");
  enumerate->add_option("--subgroups", o.selector, "list subgroup classes: all, cyclic, p-cyclic:P, p-cyclic-any, solvable");

  auto* equiv = app.add_subcommand("equiv", "decide an equivalence relation between two subgroups");
  group_opts(equiv);
  pair_opts(equiv);
  json_flag(equiv);
  equiv->add_option("--relation", o.relation, "rational, p-local:P, local-integral, solvable");
  equiv->add_option("--symmetric", o.symmetric, "ambient symmetric group of this degree; --h1/--h2 are group files");
  equiv->add_option("--expect", o.expect, "exit 1 unless the verdict is this (true or false)");
  equiv->add_flag("--cross-check", o.cross_check, "re-derive verdicts along a second route");

  auto* dcosets = app.add_subcommand("dcosets", "double cosets and the intertwiner pattern");
  group_opts(dcosets);
  pair_opts(dcosets);
  json_flag(dcosets);
  dcosets->add_option("--pattern-out", o.pattern_out, "write the pattern to this file");

  auto* det = app.add_subcommand("det", "determinants of intertwiners");
  group_opts(det);
  pair_opts(det);
  json_flag(det);
  det->add_option("--pattern", o.pattern, "pattern file (instead of --group/--h1/--h2)");
  det->add_option("--assign", o.assign, "comma-separated values x1,..,xk");
  det->add_option("--gcd", o.gcd_random, "gcd over unit vectors and this many random assignments");
  det->add_option("--factors", o.factors, "factor file");
  det->add_flag("--verify", o.verify, "check det = product of factors at random points");
  det->add_flag("--resolve", o.resolve, "find variable labelings under which the factors match");
  det->add_flag("--certificate", o.certificate, "decide whether det = +-1 is possible");
  det->add_option("--search", o.search, "scan |x_i| <= bound for a unimodular assignment");

  auto* split = app.add_subcommand("split", "splitting pattern from decomposition and inertia groups");
  group_opts(split);
  json_flag(split);
  split->add_option("--subgroup", o.h, "subgroup file")->required();
  split->add_option("--h2", o.h2, "second subgroup for comparison");
  split->add_option("--decomposition", o.decomposition, "decomposition group file")->required();
  split->add_option("--inertia", o.inertia, "inertia group file")->required();
  split->add_flag("--allow-noncyclic", o.allow_noncyclic, "accept D/I not cyclic (not arithmetic)");

  auto* sl2 = app.add_subcommand("sl2", "linear groups over prime fields");
  json_flag(sl2);
  sl2->add_option("--p", o.p, "prime")->required();
  sl2->add_option("--kind", o.kind, "SL2, PSL2 or GL2");
  sl2->add_option("--max-order", o.max_order, "enumeration bound");
  sl2->add_option("--bound", o.bound, "lattice bound for the equivalence checks");
  sl2->add_flag("--classify", o.classify, "classes of subgroups of order prime to p");
  sl2->add_flag("--verify-theorem", o.verify_theorem, "nonconjugate solvably equivalent icosahedral pair");
  sl2->add_flag("--obstructions", o.obstructions, "class counts that break the icosahedral construction");

  auto* scan = app.add_subcommand("scan", "scan a catalog directory of group files");
  json_flag(scan);
  scan->add_option("--catalog", o.catalog, std::string("catalog directory (default $") + kCatalogEnv + ")");
  scan->add_option("--relation", o.relation, "relation used to pair subgroup classes");
  scan->add_option("--index", o.index, "only subgroups of this index");
  scan->add_flag("--faithful-only", o.faithful_only, "only subgroups with trivial normal core");
  scan->add_option("--output", o.output, "JSON-lines report, appended to")->required();
  scan->add_option("--workers", o.workers, "worker threads");
  scan->add_option("--max-order", o.max_order, "enumeration bound");
  scan->add_option("--bound", o.bound, "lattice bound");

  auto* fixtures = app.add_subcommand("fixtures", "verify bundled fixture checksums");
  json_flag(fixtures);
  fixtures->add_option("--dir", o.fixture_dir, "fixture directory");

  if (argc <= 1) {
    std::cerr << app.help();
    return kExitUsage;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*enumerate) return run_enumerate(o);
    if (*equiv) return run_equiv(o);
    if (*dcosets) return run_dcosets(o);
    if (*det) return run_det(o);
    if (*split) return run_split(o);
    if (*sl2) return run_sl2(o);
    if (*scan) return run_scan(o);
    if (*fixtures) return run_fixtures(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitUsage;
}
