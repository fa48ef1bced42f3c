#include <algorithm>
#include <charconv>
#include <map>
#include <random>
#include <sstream>

#include "gassmann/errors.hpp"
#include "gassmann/group_io.hpp"
#include "gassmann/homdet.hpp"

namespace gassmann {

mpz_class FactorForm::evaluate(const std::vector<mpz_class>& x) const {
  mpz_class v = 0;
  if (kind == Kind::Linear) {
    for (std::size_t t = 0; t < coefficients.size(); ++t) v += static_cast<long>(coefficients[t]) * x[t];
  } else {
    mpz_class u = x[i] - x[j], w = x[k] - x[l];
    v = static_cast<long>(a) * u * u + static_cast<long>(b) * w * w;
  }
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), v.get_mpz_t(), exponent);
  return r;
}

std::size_t FactorList::total_degree() const {
  std::size_t d = 0;
  for (const auto& f : factors) d += f.degree() * f.exponent;
  return d;
}

mpz_class FactorList::evaluate(const std::vector<mpz_class>& x) const {
  mpz_class r = sign;
  for (const auto& f : factors) {
    r *= f.evaluate(x);
    if (r == 0) break;
  }
  return r;
}

namespace {

struct Token {
  std::string text;
  std::size_t column;
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    out.push_back({line.substr(i, j - i), i + 1});
    i = j;
  }
  return out;
}

long long to_integer(const Token& t, std::size_t line) {
  std::string_view s = t.text;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  long long v = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size() || s.empty())
    throw ParseError("expected an integer, got '" + t.text + "'", line, t.column);
  return v;
}

// "(xi-xj)" -> (i-1, j-1)
std::pair<std::size_t, std::size_t> to_difference(const Token& t, std::size_t line) {
  unsigned i = 0, j = 0;
  char tail = 0;
  if (std::sscanf(t.text.c_str(), "(x%u-x%u%c", &i, &j, &tail) != 3 || tail != ')' || i == 0 || j == 0 ||
      t.text.back() != ')' || t.text.find(')') != t.text.size() - 1)
    throw ParseError("expected '(xi-xj)', got '" + t.text + "'", line, t.column);
  return {i - 1, j - 1};
}

unsigned take_exponent(std::vector<Token>& toks, std::size_t line) {
  if (toks.empty() || toks.back().text.front() != '^') return 1;
  Token t = toks.back();
  toks.pop_back();
  Token digits{t.text.substr(1), t.column + 1};
  long long e = to_integer(digits, line);
  if (e < 1) throw ParseError("exponent must be positive", line, t.column);
  return static_cast<unsigned>(e);
}

}  // namespace

FactorList parse_factor_text(std::string_view text) {
  FactorList out;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line = 0;
  bool have_sign = false;
  std::optional<std::size_t> lin_width;
  std::size_t max_quad = 0;
  std::optional<std::pair<std::size_t, std::size_t>> varmap_at;
  std::vector<std::size_t> varmap;
  while (std::getline(in, raw)) {
    ++line;
    if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
    auto toks = tokenize(raw);
    if (toks.empty()) continue;
    const std::string head = toks.front().text;
    if (head == "sign") {
      if (have_sign) throw ParseError("duplicate sign", line, toks[0].column);
      if (toks.size() != 2) throw ParseError("expected 'sign +1' or 'sign -1'", line, toks[0].column);
      long long s = to_integer(toks[1], line);
      if (s != 1 && s != -1) throw ParseError("sign must be +1 or -1", line, toks[1].column);
      out.sign = static_cast<int>(s);
      have_sign = true;
    } else if (head == "varmap") {
      if (varmap_at) throw ParseError("duplicate varmap", line, toks[0].column);
      varmap_at = std::pair(line, toks[0].column);
      for (std::size_t t = 1; t < toks.size(); ++t) {
        long long v = to_integer(toks[t], line);
        if (v < 1) throw ParseError("varmap entries are 1-based", line, toks[t].column);
        varmap.push_back(static_cast<std::size_t>(v - 1));
      }
    } else if (head == "lin") {
      unsigned e = take_exponent(toks, line);
      FactorForm f;
      f.kind = FactorForm::Kind::Linear;
      f.exponent = e;
      for (std::size_t t = 1; t < toks.size(); ++t) f.coefficients.push_back(to_integer(toks[t], line));
      if (f.coefficients.empty()) throw ParseError("linear form without coefficients", line, toks[0].column);
      if (lin_width && *lin_width != f.coefficients.size())
        throw ParseError("linear forms have different numbers of coefficients", line, toks[0].column);
      lin_width = f.coefficients.size();
      out.factors.push_back(std::move(f));
    } else if (head == "quad") {
      unsigned e = take_exponent(toks, line);
      if (toks.size() != 5) throw ParseError("expected 'quad a b (xi-xj) (xk-xl)'", line, toks[0].column);
      FactorForm f;
      f.kind = FactorForm::Kind::Quadratic;
      f.exponent = e;
      f.a = to_integer(toks[1], line);
      f.b = to_integer(toks[2], line);
      std::tie(f.i, f.j) = to_difference(toks[3], line);
      std::tie(f.k, f.l) = to_difference(toks[4], line);
      max_quad = std::max({max_quad, f.i + 1, f.j + 1, f.k + 1, f.l + 1});
      out.factors.push_back(std::move(f));
    } else {
      throw ParseError("unknown keyword '" + head + "'", line, toks[0].column);
    }
  }
  if (out.factors.empty()) throw ParseError("no factors", line + 1, 1);
  out.variables = lin_width.value_or(max_quad);
  if (max_quad > out.variables) throw ParseError("quadratic form uses an undeclared variable", line, 1);
  for (auto& f : out.factors)
    if (f.kind == FactorForm::Kind::Quadratic) f.coefficients.assign(out.variables, 0);
  if (varmap_at) {
    auto [vl, vc] = *varmap_at;
    if (varmap.size() != out.variables) throw ParseError("varmap length differs from the variable count", vl, vc);
    auto sorted = varmap;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw ParseError("varmap repeats a variable", vl, vc);
    out.varmap = std::move(varmap);
  } else {
    for (std::size_t v = 0; v < out.variables; ++v) out.varmap.push_back(v);
  }
  return out;
}

FactorList parse_factor_file(const std::filesystem::path& path) { return parse_factor_text(read_text_file(path)); }

std::string print_factors(const FactorList& f) {
  std::ostringstream out;
  out << "sign " << (f.sign < 0 ? "-1" : "+1") << '\n';
  bool identity = true;
  for (std::size_t v = 0; v < f.varmap.size(); ++v) identity = identity && f.varmap[v] == v;
  if (!identity) {
    out << "varmap";
    for (auto v : f.varmap) out << ' ' << v + 1;
    out << '\n';
  }
  for (const auto& t : f.factors) {
    if (t.kind == FactorForm::Kind::Linear) {
      out << "lin";
      for (auto c : t.coefficients) out << ' ' << c;
    } else {
      out << "quad " << t.a << ' ' << t.b << " (x" << t.i + 1 << "-x" << t.j + 1 << ") (x" << t.k + 1 << "-x"
          << t.l + 1 << ')';
    }
    out << " ^" << t.exponent << '\n';
  }
  return out.str();
}

namespace {

// Pattern-variable values mapped to factor variables through varmap.
std::vector<mpz_class> to_factor_variables(const Assignment& a, const std::vector<std::size_t>& varmap) {
  std::vector<mpz_class> x(varmap.size());
  for (std::size_t i = 0; i < varmap.size(); ++i) x[i] = static_cast<long>(a[varmap[i]]);
  return x;
}

FactorCheck check_with(const Pattern& p, const FactorList& f, const std::vector<std::size_t>& varmap,
                       const VerifyOptions& opt) {
  FactorCheck out;
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<long long> dist(-opt.range, opt.range);
  for (std::size_t t = 0; t < opt.trials; ++t) {
    Assignment a(p.variables());
    for (auto& x : a) x = dist(rng);
    ++out.trials;
    mpz_class d = det_at(p, a);
    mpz_class q = f.evaluate(to_factor_variables(a, varmap));
    bool match;
    if (out.orientation == 0 && q != 0) {
      out.orientation = d == q ? 1 : d == -q ? -1 : 0;
      match = out.orientation != 0;
    } else {
      match = (q == 0 && d == 0) || (q != 0 && d == out.orientation * q);
    }
    if (!match) {
      out.counterexample = a;
      out.orientation = 0;
      return out;
    }
  }
  out.ok = out.orientation != 0;
  return out;
}

void check_shapes(const Pattern& p, const FactorList& f) {
  if (f.total_degree() != p.size())
    throw DegreeMismatch("factor degrees sum to " + std::to_string(f.total_degree()) + ", pattern size is " +
                         std::to_string(p.size()));
  if (f.variables != p.variables())
    throw InvalidDatum("factor list has " + std::to_string(f.variables) + " variables, pattern has " +
                       std::to_string(p.variables()));
  for (auto v : f.varmap)
    if (v >= p.variables()) throw InvalidDatum("varmap entry out of range");
}

}  // namespace

FactorCheck verify_factor_product(const Pattern& p, const FactorList& f, const VerifyOptions& opt) {
  check_shapes(p, f);
  return check_with(p, f, f.varmap, opt);
}

std::vector<LabelingResult> resolve_labeling(const Pattern& p, const FactorList& f, const VerifyOptions& opt) {
  check_shapes(p, f);
  auto sizes = p.cell_sizes();
  // variables of equal cell size, in order
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t v = 0; v < sizes.size(); ++v) groups[sizes[v]].push_back(v);
  std::vector<std::vector<std::size_t>> perms;
  for (auto& [size, vars] : groups) perms.push_back(vars);

  VerifyOptions quick = opt;
  quick.trials = std::min<std::size_t>(opt.trials, 3);
  std::vector<LabelingResult> out;
  std::vector<std::size_t> varmap(f.variables);
  while (true) {
    for (std::size_t g = 0; auto& [size, vars] : groups) {
      for (std::size_t t = 0; t < vars.size(); ++t) varmap[vars[t]] = perms[g][t];
      ++g;
    }
    if (check_with(p, f, varmap, quick).ok) {
      auto full = check_with(p, f, varmap, opt);
      if (full.ok) out.push_back({varmap, full.orientation});
    }
    std::size_t g = 0;
    while (g < perms.size() && !std::next_permutation(perms[g].begin(), perms[g].end())) ++g;
    if (g == perms.size()) break;
  }
  return out;
}

}  // namespace gassmann
