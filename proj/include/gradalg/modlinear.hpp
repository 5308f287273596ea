#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace gradalg {

/// Dense matrix over Z/N with entries kept in [0, N).
class ModMatrix {
 public:
  ModMatrix() = default;
  ModMatrix(int rows, int cols, std::int64_t modulus)
      : rows_(rows), cols_(cols), n_(modulus), a_(static_cast<std::size_t>(rows) * cols, 0) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::int64_t modulus() const { return n_; }
  std::int64_t& at(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  std::int64_t at(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  /// Adds v (any integer) to entry (r, c), reducing mod N.
  void add(int r, int c, std::int64_t v);
  std::span<std::int64_t> row(int r) { return {a_.data() + static_cast<std::size_t>(r) * cols_, static_cast<std::size_t>(cols_)}; }
  std::span<const std::int64_t> row(int r) const { return {a_.data() + static_cast<std::size_t>(r) * cols_, static_cast<std::size_t>(cols_)}; }
  void append_row(std::span<const std::int64_t> values);

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::int64_t n_ = 1;
  std::vector<std::int64_t> a_;
};

enum class Exec { serial, parallel };

/// Solution set of A x = b over Z/N.
///
/// The kernel is the internal direct sum of the cyclic groups generated by
/// kernel_gens[i], each of order kernel_orders[i].
struct ModSolution {
  std::optional<std::vector<std::int64_t>> particular;
  std::vector<std::vector<std::int64_t>> kernel_gens;
  std::vector<std::int64_t> kernel_orders;
  int rank = 0;
};

/// Diagonalizes A by unimodular row and column operations over Z/N and
/// reads off a particular solution (when b is given and solvable) and the
/// kernel. `Exec::serial` is the reference path: every elimination step
/// is a 2x2 gcd combination applied one row at a time. `Exec::parallel`
/// folds non-divisible rows serially, then clears the rest of the pivot
/// column with independent row updates under OpenMP.
ModSolution solve_mod(ModMatrix a, std::span<const std::int64_t> b, Exec exec = Exec::parallel);
ModSolution kernel_mod(ModMatrix a, Exec exec = Exec::parallel);

std::int64_t mod_norm(std::int64_t v, std::int64_t n);
/// Inverse of a unit a modulo n.
std::int64_t mod_inverse(std::int64_t a, std::int64_t n);
/// g = gcd(a, b) = s a + t b, g >= 0.
std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& s, std::int64_t& t);

/// Smith normal form of an integer relation matrix (rows are relations on
/// Z^cols). `basis` rows form a basis of Z^cols in which the row lattice is
/// diagonal: the lattice equals the span of factors[i] * basis[i].
/// Factors satisfy factors[i] | factors[i+1]; zeros (free part) come last.
struct SmithResult {
  std::vector<mpz_class> factors;
  std::vector<std::vector<mpz_class>> basis;
};

SmithResult smith_relations(const std::vector<std::vector<mpz_class>>& relations, int cols);

}  // namespace gradalg
