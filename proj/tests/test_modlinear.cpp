#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "doctest.h"

#include "gradalg/modlinear.hpp"

using namespace gradalg;

namespace {

std::vector<std::int64_t> mat_apply(const ModMatrix& a, const std::vector<std::int64_t>& x) {
  std::vector<std::int64_t> out(a.rows(), 0);
  for (int r = 0; r < a.rows(); ++r) {
    std::int64_t s = 0;
    for (int c = 0; c < a.cols(); ++c) s = mod_norm(s + a.at(r, c) * x[c], a.modulus());
    out[r] = s;
  }
  return out;
}

ModMatrix random_matrix(std::mt19937_64& rng, int rows, int cols, std::int64_t n) {
  ModMatrix a(rows, cols, n);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) a.at(r, c) = std::uniform_int_distribution<std::int64_t>(0, n - 1)(rng);
  return a;
}

// Every vector of (Z/N)^cols; small sizes only.
std::vector<std::vector<std::int64_t>> all_vectors(int cols, std::int64_t n) {
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> x(cols, 0);
  while (true) {
    out.push_back(x);
    int i = 0;
    while (i < cols && ++x[i] == n) x[i++] = 0;
    if (i == cols) break;
  }
  return out;
}

// Size of the subgroup generated by the kernel generators, by closure.
std::size_t span_size(const std::vector<std::vector<std::int64_t>>& gens, int cols, std::int64_t n) {
  std::set<std::vector<std::int64_t>> span{std::vector<std::int64_t>(cols, 0)};
  bool grew = true;
  while (grew) {
    grew = false;
    for (auto v : std::vector(span.begin(), span.end()))
      for (const auto& g : gens) {
        for (int c = 0; c < cols; ++c) v[c] = mod_norm(v[c] + g[c], n);
        grew |= span.insert(v).second;
        for (int c = 0; c < cols; ++c) v[c] = mod_norm(v[c] - g[c], n);
      }
  }
  return span.size();
}

}  // namespace

TEST_CASE("modular helpers") {
  CHECK(mod_norm(-1, 6) == 5);
  CHECK(mod_inverse(5, 12) == 5);
  std::int64_t s, t;
  CHECK(ext_gcd(12, 18, s, t) == 6);
  CHECK(12 * s + 18 * t == 6);
}

TEST_CASE("kernel over Z/N matches brute force") {
  std::mt19937_64 rng(11);
  for (std::int64_t n : {2, 4, 6, 8, 9, 12}) {
    for (int trial = 0; trial < 12; ++trial) {
      const int rows = 1 + trial % 3, cols = 1 + trial % 4;
      if (std::pow(double(n), cols) > 5000) continue;
      auto a = random_matrix(rng, rows, cols, n);
      std::size_t brute = 0;
      for (const auto& x : all_vectors(cols, n)) {
        const auto y = mat_apply(a, x);
        brute += std::all_of(y.begin(), y.end(), [](std::int64_t v) { return v == 0; });
      }
      for (Exec e : {Exec::serial, Exec::parallel}) {
        auto sol = kernel_mod(a, e);
        std::size_t order = 1;
        for (auto o : sol.kernel_orders) order *= static_cast<std::size_t>(o);
        CHECK(order == brute);
        for (const auto& g : sol.kernel_gens) {
          const auto y = mat_apply(a, g);
          CHECK(std::all_of(y.begin(), y.end(), [](std::int64_t v) { return v == 0; }));
        }
        CHECK(span_size(sol.kernel_gens, cols, n) == brute);
      }
    }
  }
}

TEST_CASE("solve_mod particular solutions and unsolvable systems") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::int64_t n = std::vector<std::int64_t>{4, 6, 8, 12, 16, 30}[trial % 6];
    auto a = random_matrix(rng, 3 + trial % 5, 2 + trial % 4, n);
    std::vector<std::int64_t> x(a.cols());
    for (auto& v : x) v = std::uniform_int_distribution<std::int64_t>(0, n - 1)(rng);
    const auto b = mat_apply(a, x);
    for (Exec e : {Exec::serial, Exec::parallel}) {
      auto sol = solve_mod(a, b, e);
      REQUIRE(sol.particular.has_value());
      CHECK(mat_apply(a, *sol.particular) == b);
    }
  }
  ModMatrix a(1, 1, 4);
  a.at(0, 0) = 2;
  const std::vector<std::int64_t> b{1};
  CHECK_FALSE(solve_mod(a, b, Exec::serial).particular.has_value());
  CHECK_FALSE(solve_mod(a, b, Exec::parallel).particular.has_value());
}

TEST_CASE("serial and parallel elimination agree on large systems") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 6; ++trial) {
    auto a = random_matrix(rng, 120, 80, 48);
    auto s = kernel_mod(a, Exec::serial);
    auto p = kernel_mod(a, Exec::parallel);
    CHECK(s.rank == p.rank);
    std::int64_t os = 1, op = 1;
    for (auto o : s.kernel_orders) os *= o;
    for (auto o : p.kernel_orders) op *= o;
    CHECK(os == op);
  }
}

TEST_CASE("smith relations") {
  // (2,2) - (2,0) = (0,2): the lattice is 2Z x 2Z
  auto r = smith_relations({{2, 0}, {0, 4}, {2, 2}}, 2);
  REQUIRE(r.factors.size() == 2);
  CHECK(r.factors[0] == 2);
  CHECK(r.factors[1] == 2);
  auto z = smith_relations({{6, 4}}, 2);
  CHECK(z.factors[0] == 2);
  CHECK(z.factors[1] == 0);
  // determinant is preserved up to sign
  auto d = smith_relations({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}, 3);
  CHECK(d.factors[0] * d.factors[1] * d.factors[2] == 144);
  CHECK(d.factors[1] % d.factors[0] == 0);
  CHECK(d.factors[2] % d.factors[1] == 0);
}
