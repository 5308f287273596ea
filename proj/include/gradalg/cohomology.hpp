#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gradalg/group.hpp"
#include "gradalg/modlinear.hpp"

namespace gradalg {

/// 2-cochain H x H -> mu_M stored as exponents: value(a, b) = zeta_M^{r(a,b)}.
/// Indices are positions in domain().members().
class ExpCocycle {
 public:
  ExpCocycle(Subgroup domain, std::int64_t modulus, std::vector<std::int64_t> exponents);
  static ExpCocycle trivial(Subgroup domain, std::int64_t modulus);
  static ExpCocycle from_matrix(Subgroup domain, std::int64_t modulus,
                                const std::vector<std::vector<std::int64_t>>& rows);

  const Subgroup& domain() const { return domain_; }
  std::int64_t modulus() const { return m_; }
  int size() const { return domain_.order(); }
  /// By member positions.
  std::int64_t at(int i, int j) const { return r_[static_cast<std::size_t>(i) * size() + j]; }
  /// By parent-group elements (both must lie in the domain).
  std::int64_t value(Elem a, Elem b) const { return at(domain_.index_of(a), domain_.index_of(b)); }
  const std::vector<std::int64_t>& exponents() const { return r_; }
  std::vector<std::vector<std::int64_t>> matrix() const;

  /// Same values at modulus new_modulus (must be a multiple).
  ExpCocycle lifted(std::int64_t new_modulus) const;
  /// k * sigma, i.e. sigma^k.
  ExpCocycle scaled(std::int64_t k) const;
  bool is_zero() const;

  bool operator==(const ExpCocycle& o) const {
    return domain_ == o.domain_ && m_ == o.m_ && r_ == o.r_;
  }

 private:
  Subgroup domain_;
  std::int64_t m_;
  std::vector<std::int64_t> r_;
};

/// Scalar function H -> mu_M stored as exponents, indexed by member position.
struct ExpFunction {
  Subgroup domain;
  std::int64_t modulus;
  std::vector<std::int64_t> values;

  std::int64_t value(Elem a) const { return values[domain.index_of(a)]; }
  bool is_zero() const;
};

struct CohomologyOptions {
  /// Replaces the working modulus M * exp(H) for equivalence and extension.
  std::optional<std::int64_t> modulus_override;
  Exec exec = Exec::parallel;
};

bool is_cocycle(const ExpCocycle& sigma);

/// r(a, b) = f(a) + f(b) - f(ab).
ExpCocycle coboundary_from(const ExpFunction& f);

struct NormalizeResult {
  ExpCocycle cocycle;
  ExpFunction adjustment;  // sigma = cocycle + coboundary_from(adjustment)
};

NormalizeResult normalize(const ExpCocycle& sigma);

/// H^2(G, F*) for F algebraically closed of characteristic zero.
struct H2Description {
  GroupPtr group;
  std::int64_t base_modulus = 1;
  std::int64_t working_modulus = 1;
  std::vector<std::int64_t> invariant_factors;
  std::vector<ExpCocycle> representatives;
  std::int64_t order = 1;
};

H2Description h2_over_Fstar(const GroupPtr& group, Exec exec = Exec::parallel);
/// H^2 of a subgroup, with representatives living on that subgroup.
H2Description h2_over_Fstar(const Subgroup& h, Exec exec = Exec::parallel);

/// One cocycle per class of H^2(h), the trivial one first; combinations of
/// the representatives in mixed-radix order (first factor fastest).
std::vector<ExpCocycle> all_classes(const Subgroup& h, Exec exec = Exec::parallel);

/// Normalized 2-cocycles of `group` modulo n, as generators with orders.
/// Coordinates index pairs (a, b), a, b != e, as (a-1)(|G|-1) + (b-1).
struct CocycleSpace {
  int group_order = 0;
  std::int64_t modulus = 1;
  std::vector<std::vector<std::int64_t>> gens;
  std::vector<std::int64_t> orders;
};

/// Memoized per (multiplication table, modulus); thread-safe.
const CocycleSpace& cocycle_space(const GroupPtr& group, std::int64_t modulus, Exec exec = Exec::parallel);

/// Some(f) with coboundary_from(f) == sigma - rho at the working modulus.
std::optional<ExpFunction> classes_equivalent(const ExpCocycle& sigma, const ExpCocycle& rho,
                                              const CohomologyOptions& opts = {});

ExpCocycle restrict_to(const ExpCocycle& sigma, const Subgroup& h);

/// A cocycle on `target` (which must contain sigma's domain) whose
/// restriction is cohomologous to sigma, if one exists.
std::optional<ExpCocycle> extend_class(const ExpCocycle& sigma, const Subgroup& target,
                                       const CohomologyOptions& opts = {});
std::optional<ExpCocycle> extend_class(const ExpCocycle& sigma, const GroupPtr& group,
                                       const CohomologyOptions& opts = {});

/// Cocycle on x H x^-1 with rho(x a x^-1, x b x^-1) = sigma(a, b).
ExpCocycle conjugate_class(const ExpCocycle& sigma, Elem x);

std::int64_t class_order(const ExpCocycle& sigma, const CohomologyOptions& opts = {});

/// tau at modulus lambda*M with lambda*tau equal to sigma lifted.
ExpCocycle root_representative(const ExpCocycle& sigma, std::int64_t lambda);

/// (H1, sigma1) <= (H2, sigma2): H1 <= H2 and [sigma1] = [sigma2 restricted to H1].
std::optional<ExpFunction> pair_leq(const ExpCocycle& sigma1, const ExpCocycle& sigma2,
                                    const CohomologyOptions& opts = {});

}  // namespace gradalg
