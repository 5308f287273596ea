#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gradalg/io.hpp"

namespace gradalg {

/// Abelian groups of order <= 16 as factor lists (cyclic groups C1..C16
/// first, then the non-cyclic products).
std::vector<std::vector<int>> abelian_catalog();
/// "C2xC4" from {2, 4}.
std::string abelian_name(const std::vector<int>& factors);
/// abelian_catalog() plus S3, D4 (order 8) and Q8.
std::vector<GroupPtr> catalog_groups(int order_cap = kDefaultOrderCap);

/// The bilinear cocycle on C2xC2 with r(ab, cd) = a d (values in mu_2).
ExpCocycle example_bilinear_cocycle();

struct SweepOptions {
  std::uint64_t seed = 20240601;
  CohomologyOptions cohomology;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  double seconds = 0;
  json detail;
};

/// One entry per acceptance criterion, in order.
std::vector<CriterionResult> run_sweep(const SweepOptions& opts = {});
json emit_sweep(const std::vector<CriterionResult>& results);

}  // namespace gradalg
