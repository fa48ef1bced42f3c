#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "gassmann/catalog.hpp"
#include "gassmann/errors.hpp"
#include "gassmann/fingerprint.hpp"
#include "gassmann/group_io.hpp"

namespace gassmann {

std::optional<std::filesystem::path> default_catalog() {
  const char* v = std::getenv(kCatalogEnv);
  if (!v || !*v) return std::nullopt;
  return std::filesystem::path(v);
}

std::vector<std::filesystem::path> catalog_files(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> out;
  if (!std::filesystem::is_directory(dir)) return out;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".grp") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

void validate(const ScanJob& job) {
  if (!std::filesystem::is_directory(job.catalog))
    throw PreconditionFailed("catalog " + job.catalog.string() + " is not a directory");
  if (catalog_files(job.catalog).empty()) throw PreconditionFailed("catalog has no .grp files");
  if (job.index_filter && *job.index_filter == 0) throw PreconditionFailed("index filter must be positive");
  if (job.output.empty()) throw PreconditionFailed("no output path");
}

std::string ReportRecord::pair_key() const {
  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (auto& x : v) s += x + ";";
    return s;
  };
  auto a = join(h1), b = join(h2);
  if (b < a) std::swap(a, b);
  return group_label + "|" + a + "|" + b;
}

bool ReportRecord::monotone() const {
  auto get = [&](const std::string& name) -> std::optional<bool> {
    for (auto& [n, v] : verdicts)
      if (n == name) return v;
    return std::nullopt;
  };
  auto rational = get("rational"), local = get("local-integral"), solvable = get("solvable");
  if (solvable.value_or(false) && local && !*local) return false;
  if (local.value_or(false) && rational && !*rational) return false;
  if (solvable.value_or(false) && rational && !*rational) return false;
  return true;
}

nlohmann::json to_json(const ReportRecord& r) {
  nlohmann::json verdicts = nlohmann::json::object();
  for (auto& [n, v] : r.verdicts) verdicts[n] = v;
  return {{"kind", "pair"},     {"group", r.group_label}, {"order", r.group_order}, {"index", r.index},
          {"h1", r.h1},         {"h2", r.h2},             {"verdicts", verdicts},   {"details", r.details},
          {"seconds", r.seconds}};
}

ReportRecord record_from_json(const nlohmann::json& j) {
  ReportRecord r;
  r.group_label = j.at("group").get<std::string>();
  r.group_order = j.at("order").get<std::size_t>();
  r.index = j.at("index").get<std::size_t>();
  r.h1 = j.at("h1").get<std::vector<std::string>>();
  r.h2 = j.at("h2").get<std::vector<std::string>>();
  for (const char* name : {"rational", "local-integral", "solvable"})
    if (j.at("verdicts").contains(name)) r.verdicts.emplace_back(name, j.at("verdicts").at(name).get<bool>());
  r.details = j.value("details", nlohmann::json::object());
  r.seconds = j.value("seconds", 0.0);
  return r;
}

namespace {

std::vector<std::string> canonical_generators(const Subgroup& s) {
  std::vector<std::string> out;
  for (ElemId x : small_generating_set(s.parent_ptr(), s.members()))
    out.push_back(s.parent().permutation(x).to_string());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<ReportRecord> scan_group(const GroupSpec& spec, const std::string& label, const ScanJob& job) {
  auto g = enumerate_group(spec, job.max_order);
  auto whole = Subgroup::whole(g);
  std::vector<ReportRecord> out;
  std::optional<std::size_t> target;
  if (job.index_filter) {
    if (g->order() % *job.index_filter != 0) return out;
    target = g->order() / *job.index_filter;
  }
  LatticeOptions lopt;
  lopt.bound = job.lattice_bound;
  if (target) lopt.order_filter = [t = *target](std::size_t n) { return t % n == 0; };
  std::vector<Subgroup> candidates;
  for (auto& c : subgroup_classes(whole, lopt)) {
    if (target && c.representative.order() != *target) continue;
    if (job.faithful_only && !normal_core(c.representative).is_trivial()) continue;
    candidates.push_back(c.representative);
  }
  if (candidates.size() < 2) return out;

  auto amb = Ambient::enumerated(g);
  EquivalenceOptions eopt;
  eopt.bound = job.lattice_bound;
  auto part = partition_subgroup_classes(amb, job.relation, candidates, eopt);
  for (const auto& block : part.nontrivial()) {
    for (std::size_t a = 0; a < block.size(); ++a) {
      for (std::size_t b = a + 1; b < block.size(); ++b) {
        auto start = std::chrono::steady_clock::now();
        const auto& h1 = part.candidates[block[a]];
        const auto& h2 = part.candidates[block[b]];
        ReportRecord r;
        r.group_label = label;
        r.group_order = g->order();
        r.index = h1.index();
        r.h1 = canonical_generators(h1);
        r.h2 = canonical_generators(h2);
        nlohmann::json reports = nlohmann::json::object();
        for (const auto& rel : {Relation::rational(), Relation::local_integral(), Relation::solvable()}) {
          auto rep = check_relation(amb, h1, h2, rel, eopt);
          r.verdicts.emplace_back(rel.name(), rep.verdict);
          reports[rel.name()] = to_json(rep);
        }
        r.details = {{"subgroup_order", h1.order()},
                     {"isomorphic", is_isomorphic(h1, h2)},
                     {"fingerprint1", fingerprint(h1).to_string()},
                     {"fingerprint2", fingerprint(h2).to_string()},
                     {"reports", reports}};
        if (!r.monotone()) throw std::logic_error("verdicts violate the relation hierarchy for " + r.pair_key());
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        out.push_back(std::move(r));
      }
    }
  }
  return out;
}

ReportContents read_report(const std::filesystem::path& path) {
  ReportContents out;
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(e.what(), n, 1);
    }
    if (n == 1) {
      if (j.value("schema", 0) != kReportSchema) throw ParseError("unsupported report schema", n, 1);
      continue;
    }
    auto kind = j.value("kind", "");
    if (kind == "pair")
      out.records.push_back(record_from_json(j));
    else if (kind == "group")
      out.finished_groups.push_back(j.at("group").get<std::string>());
    else if (kind == "error")
      out.errors.push_back(j);
  }
  return out;
}

ScanSummary scan_catalog(const ScanJob& job, const std::function<void(const ReportRecord&)>& on_record) {
  validate(job);
  std::set<std::string> finished, keys;
  if (std::filesystem::exists(job.output) && std::filesystem::file_size(job.output) > 0) {
    auto existing = read_report(job.output);
    finished.insert(existing.finished_groups.begin(), existing.finished_groups.end());
    for (auto& r : existing.records) keys.insert(r.pair_key());
  } else {
    std::ofstream header(job.output);
    if (!header) throw Error("cannot write " + job.output.string());
    header << nlohmann::json{{"schema", kReportSchema}, {"relation", job.relation.name()}}.dump() << '\n';
  }
  std::ofstream out(job.output, std::ios::app);
  if (!out) throw Error("cannot append to " + job.output.string());

  auto files = catalog_files(job.catalog);
  ScanSummary summary;
  std::mutex lock;
  auto append = [&](const nlohmann::json& j) {
    out << j.dump() << '\n';
    out.flush();
  };

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < files.size();) {
      const auto& file = files[i];
      std::string label = file.stem().string();
      try {
        auto spec = parse_group_file(file);
        if (spec.label) label = *spec.label;
        {
          std::lock_guard guard(lock);
          if (finished.count(label)) {
            ++summary.skipped;
            continue;
          }
        }
        auto records = scan_group(spec, label, job);
        std::lock_guard guard(lock);
        for (auto& r : records) {
          if (!keys.insert(r.pair_key()).second) continue;
          append(to_json(r));
          ++summary.records;
          if (on_record) on_record(r);
        }
        append({{"kind", "group"}, {"group", label}, {"pairs", records.size()}});
        finished.insert(label);
        ++summary.groups;
      } catch (const std::exception& e) {
        std::lock_guard guard(lock);
        append({{"kind", "error"}, {"group", label}, {"file", file.string()}, {"message", e.what()}});
        ++summary.errors;
      }
    }
  };
  unsigned workers = job.workers ? job.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(files.size()));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  return summary;
}

}  // namespace gassmann
