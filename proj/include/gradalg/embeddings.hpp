#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gradalg/graded_matrix.hpp"

namespace gradalg {

/// eta_xi -> f(xi) eta~_xi for xi in H1.
struct TgaEmbedWitness {
  ExpFunction f;
};

/// Slot data (theta1_j = delta xi_j theta2_{alpha(j)}) plus the scalar part.
struct MatrixEmbedWitness {
  TgaEmbedWitness tga;
  SlotMatch slots;
};

enum class Verdict { no, yes };

struct Reason {
  std::string code;  // size, subgroup_containment, subgroup_mismatch, class_mismatch,
                     // tuple_matching, no_verifiable_witness
  std::string detail;
};

struct DecisionReport {
  std::string decision;
  Verdict verdict = Verdict::no;
  std::vector<Reason> reasons;
  std::optional<TgaEmbedWitness> tga_witness;
  std::optional<MatrixEmbedWitness> matrix_witness;
  std::optional<AlgebraMap> map;
  bool verified = false;

  bool yes() const { return verdict == Verdict::yes; }
};

/// Multiplicative on basis pairs, nonzero homogeneous degree-preserving
/// images, injective.
bool verify_graded_monomorphism(const AlgebraMap& map);
/// A monomorphism between algebras of equal dimension.
bool verify_graded_isomorphism(const AlgebraMap& map);

DecisionReport twisted_embed(const TgaPtr& b1, const TgaPtr& b2, const CohomologyOptions& opts = {});
DecisionReport twisted_iso(const TgaPtr& b1, const TgaPtr& b2, const CohomologyOptions& opts = {});

/// Both tuples must lie in the respective normalizers (HypothesisViolated).
DecisionReport matrix_embed(const MatPtr& a1, const MatPtr& a2, const CohomologyOptions& opts = {});
DecisionReport matrix_iso(const MatPtr& a1, const MatPtr& a2, const CohomologyOptions& opts = {});

/// M_1 over b with theta = (e); gradings agree with b.
MatPtr as_matrix_algebra(const TgaPtr& b);

struct TowerSquare {
  MatPtr b;            // M_k(F^sigma[H]), theta
  MatPtr top_right;    // M_k(F^rho[N]), theta
  MatPtr bottom_left;  // M_t(F^sigma[H]), phi
  MatPtr bottom_right; // M_t(F^rho[N]), phi
  AlgebraMap top, left, right, bottom;
  bool verified = false;  // all four maps are graded monomorphisms
  bool commutes = false;  // right o top == bottom o left on the basis
};

struct TowerReport {
  std::vector<Subgroup> chain;
  std::vector<ExpCocycle> cocycles;
  std::vector<DecisionReport> embeddings;  // step i: level i into level i+1
  std::optional<TowerSquare> square;
};

/// Extends b's cocycle up the chain (each member central in the next) and
/// builds the k -> t square over the top of the chain. theta defaults to
/// (e, ..., e); phi pads theta with e.
TowerReport build_tower(const TgaPtr& b, const std::vector<Subgroup>& chain, int k, int t,
                        std::vector<Elem> theta = {}, const CohomologyOptions& opts = {});

struct ProductReport {
  Verdict verdict = Verdict::no;
  /// For each B_j, the index i_j of the first A component it embeds into, or -1.
  std::vector<int> assignment;
  std::vector<DecisionReport> components;
  std::vector<std::string> warnings;
  std::string convention;
  bool verified = false;
  bool yes() const { return verdict == Verdict::yes; }
};

ProductReport product_embed(const std::vector<MatPtr>& bs, const std::vector<MatPtr>& as,
                            const CohomologyOptions& opts = {});

std::string to_string(Verdict v);

}  // namespace gradalg
