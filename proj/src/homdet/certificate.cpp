#include <cmath>

#include "gassmann/errors.hpp"
#include "gassmann/homdet.hpp"

namespace gassmann {

std::string to_string(UnimodularityCertificate::Status s) {
  switch (s) {
    case UnimodularityCertificate::Status::ExistsWitness:
      return "exists";
    case UnimodularityCertificate::Status::CertifiedNonexistent:
      return "certified-nonexistent";
    case UnimodularityCertificate::Status::Unknown:
      break;
  }
  return "unknown";
}

std::optional<std::vector<mpz_class>> solve_integer_system(const std::vector<std::vector<mpz_class>>& a_in,
                                                           const std::vector<mpz_class>& b, std::size_t n) {
  const std::size_t r = a_in.size();
  if (b.size() != r) throw InvalidDatum("right-hand side has wrong length");
  auto a = a_in;
  for (auto& row : a)
    if (row.size() != n) throw InvalidDatum("row has wrong length");
  // unimodular column operations: A U = L lower echelon, tracked in U
  std::vector<std::vector<mpz_class>> u(n, std::vector<mpz_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;
  auto column_op = [&](std::size_t dst, std::size_t src, const mpz_class& q) {  // col dst -= q * col src
    for (std::size_t i = 0; i < r; ++i) a[i][dst] -= q * a[i][src];
    for (std::size_t i = 0; i < n; ++i) u[i][dst] -= q * u[i][src];
  };
  auto swap_columns = [&](std::size_t x, std::size_t y) {
    for (auto& row : a) std::swap(row[x], row[y]);
    for (auto& row : u) std::swap(row[x], row[y]);
  };
  std::vector<std::optional<std::size_t>> pivot_of_row(r);
  std::size_t next = 0;
  for (std::size_t i = 0; i < r && next < n; ++i) {
    while (true) {
      // smallest nonzero |entry| in row i among columns >= next
      std::optional<std::size_t> best;
      for (std::size_t c = next; c < n; ++c)
        if (a[i][c] != 0 && (!best || abs(a[i][c]) < abs(a[i][*best]))) best = c;
      if (!best) break;
      swap_columns(next, *best);
      bool reduced = true;
      for (std::size_t c = next + 1; c < n; ++c) {
        if (a[i][c] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[i][next].get_mpz_t());
        column_op(c, next, q);
        if (a[i][c] != 0) reduced = false;
      }
      if (reduced) {
        pivot_of_row[i] = next++;
        break;
      }
    }
  }
  std::vector<mpz_class> y(n, 0);
  for (std::size_t i = 0; i < r; ++i) {
    mpz_class rest = b[i];
    for (std::size_t c = 0; c < next; ++c)
      if (pivot_of_row[i] != c) rest -= a[i][c] * y[c];
    if (pivot_of_row[i]) {
      const mpz_class& piv = a[i][*pivot_of_row[i]];
      if (!mpz_divisible_p(rest.get_mpz_t(), piv.get_mpz_t())) return std::nullopt;
      mpz_divexact(y[*pivot_of_row[i]].get_mpz_t(), rest.get_mpz_t(), piv.get_mpz_t());
    } else if (rest != 0) {
      return std::nullopt;
    }
  }
  std::vector<mpz_class> x(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < n; ++c) x[i] += u[i][c] * y[c];
  return x;
}

namespace {

constexpr std::size_t kMaxLinearFactors = 20;

// Integer points (u, v) with a u^2 + b v^2 = 1.
std::vector<std::pair<long long, long long>> unit_representations(long long a, long long b) {
  std::vector<std::pair<long long, long long>> out;
  for (long long u = -1; u <= 1; ++u)
    for (long long v = -1; v <= 1; ++v)
      if (a * u * u + b * v * v == 1) out.emplace_back(u, v);
  return out;
}

}  // namespace

UnimodularityCertificate unimodularity_certificate(const FactorList& f, const Pattern* pattern) {
  UnimodularityCertificate out;
  const std::size_t n = f.variables;
  std::vector<const FactorForm*> linear, quadratic;
  for (const auto& t : f.factors) (t.kind == FactorForm::Kind::Linear ? linear : quadratic).push_back(&t);

  // each quadratic factor must take the value 1; collect the linear constraints that allows
  std::vector<std::vector<std::pair<long long, long long>>> quad_choices;
  for (const auto* q : quadratic) {
    if (q->a < 0 || q->b < 0)
      throw UnsupportedForm("quadratic factor with a negative coefficient is not positive semidefinite");
    auto reps = unit_representations(q->a, q->b);
    // with a, b >= 0 and integer, a u^2 + b v^2 = 1 forces |u|, |v| <= 1
    if (reps.empty()) {
      out.status = UnimodularityCertificate::Status::CertifiedNonexistent;
      out.reason = "quadratic factor " + std::to_string(q->a) + "u^2+" + std::to_string(q->b) +
                   "v^2 never takes the value 1 and is never negative";
      return out;
    }
    quad_choices.push_back(std::move(reps));
  }
  if (linear.size() > kMaxLinearFactors) {
    out.reason = "too many linear factors for sign enumeration";
    return out;
  }

  auto difference_row = [&](std::size_t i, std::size_t j) {
    std::vector<mpz_class> row(n, 0);
    row[i] += 1;
    row[j] -= 1;
    return row;
  };

  std::vector<std::size_t> qpick(quadratic.size(), 0);
  while (true) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << linear.size()); ++mask) {
      std::vector<std::vector<mpz_class>> rows;
      std::vector<mpz_class> rhs;
      SignSystem sys;
      for (std::size_t t = 0; t < linear.size(); ++t) {
        int s = (mask >> t) & 1 ? -1 : 1;
        sys.signs.push_back(s);
        std::vector<mpz_class> row;
        for (auto c : linear[t]->coefficients) row.emplace_back(static_cast<long>(c));
        rows.push_back(std::move(row));
        rhs.emplace_back(s);
      }
      for (std::size_t q = 0; q < quadratic.size(); ++q) {
        auto [uu, vv] = quad_choices[q][qpick[q]];
        rows.push_back(difference_row(quadratic[q]->i, quadratic[q]->j));
        rhs.emplace_back(static_cast<long>(uu));
        rows.push_back(difference_row(quadratic[q]->k, quadratic[q]->l));
        rhs.emplace_back(static_cast<long>(vv));
      }
      sys.solution = solve_integer_system(rows, rhs, n);
      sys.solvable = sys.solution.has_value();
      out.systems.push_back(sys);
      if (sys.solvable) {
        const auto& x = *sys.solution;
        mpz_class value = f.evaluate(x);
        if (abs(value) != 1) throw std::logic_error("solution of a sign system does not give a unit");
        if (pattern) {
          std::vector<mpz_class> pv(pattern->variables(), 0);
          for (std::size_t i = 0; i < n; ++i) pv[f.varmap[i]] = x[i];
          if (abs(det_at(*pattern, pv)) != 1)
            throw std::logic_error("witness does not give a unimodular matrix; factorization is wrong");
        }
        out.status = UnimodularityCertificate::Status::ExistsWitness;
        out.witness = x;
        out.reason = "integer solution of a sign system";
        return out;
      }
    }
    std::size_t q = 0;
    while (q < qpick.size() && ++qpick[q] == quad_choices[q].size()) qpick[q++] = 0;
    if (q == qpick.size()) break;
  }
  out.status = UnimodularityCertificate::Status::CertifiedNonexistent;
  out.reason = "none of the " + std::to_string(out.systems.size()) + " sign systems has an integer solution";
  return out;
}

}  // namespace gassmann
