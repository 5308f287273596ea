#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gradalg/algebra.hpp"

namespace gradalg {

inline constexpr int kDefaultDegreeCap = 4;
inline constexpr std::int64_t kDefaultWorkBudget = 2'000'000;

/// Degrees g_1..g_n of the variables x_1..x_n.
struct DegreeAssignment {
  std::vector<Elem> degs;

  int n() const { return static_cast<int>(degs.size()); }
  auto operator<=>(const DegreeAssignment&) const = default;
};

/// Permutations of {0..n-1}, lexicographic in one-line notation.
const std::vector<std::vector<int>>& permutations(int n);

/// sum_w c_w x_{w(1)} ... x_{w(n)} over words w in Sym(n).
struct GradedMultilinearPoly {
  DegreeAssignment assignment;
  std::map<std::vector<int>, CycloNumber> coeffs;

  std::string to_string() const;
};

struct IdentitySpace {
  std::vector<std::string> algebras;
  DegreeAssignment assignment;
  int monomials = 0;      // n!
  int rank = 0;           // rank of the evaluation matrix
  std::vector<GradedMultilinearPoly> basis;  // reduced, leading coefficient 1
};

/// sum_w c_w subst[w(1)] ... subst[w(n)]; subst[i] must be homogeneous of
/// degree g_i (or zero).
Element evaluate(const GradedMultilinearPoly& p, const GradedAlgebra& a, const std::vector<Element>& subst);

IdentitySpace identity_space(const GradedAlgebra& a, const DegreeAssignment& d, int cap = kDefaultDegreeCap);

/// Identities common to all factors (the identities of their product).
IdentitySpace product_identity_space(const std::vector<AlgebraPtr>& algebras, const DegreeAssignment& d,
                                     int cap = kDefaultDegreeCap);

struct ContainmentOptions {
  int n_max = kDefaultDegreeCap;
  int cap = kDefaultDegreeCap;
  std::int64_t budget = kDefaultWorkBudget;
};

struct AssignmentResult {
  DegreeAssignment assignment;
  int kernel_dim_a = 0;
  int kernel_dim_b = 0;
  bool contained = true;
  /// Some substituted component of b is zero, so every polynomial vanishes on b.
  bool trivial = false;
  std::optional<GradedMultilinearPoly> separating;  // identity of a, not of b
};

struct ContainmentReport {
  int n_max = 0;
  /// No separation found at any computed assignment.
  bool contained = true;
  std::vector<AssignmentResult> results;  // sorted by (n, degrees)
  std::vector<DegreeAssignment> skipped;  // over the work budget
  std::string summary;
};

/// Multilinear slice of T^G(a) contained in T^G(b), for every assignment of
/// degree <= n_max over Supp(a) u Supp(b).
ContainmentReport multilinear_containment(const GradedAlgebra& a, const GradedAlgebra& b,
                                          const ContainmentOptions& opts = {});

}  // namespace gradalg
