#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "gradalg/algebra.hpp"

namespace gradalg {

/// E_ij eta_zeta with 0-based i, j.
struct MatBasisElt {
  int i = 0;
  int j = 0;
  Elem zeta = 0;
  bool operator==(const MatBasisElt&) const = default;
};

/// M_k(F^sigma[H]) with the elementary-canonical grading
/// deg(E_ij eta_zeta) = theta_i^-1 zeta theta_j.
///
/// Basis index of E_ij eta_zeta is (i k + j) |H| + pos(zeta).
class GradedMatrixAlgebra : public GradedAlgebra {
 public:
  static std::shared_ptr<const GradedMatrixAlgebra> create(TgaPtr base, std::vector<Elem> theta);

  int k() const { return k_; }
  const TgaPtr& base() const { return base_; }
  const std::vector<Elem>& theta() const { return theta_; }
  const Subgroup& subgroup() const { return base_->subgroup(); }
  const ExpCocycle& cocycle() const { return base_->cocycle(); }
  /// All theta_i lie in N_G(H).
  bool theta_in_normalizer() const { return in_normalizer_; }

  int index(int i, int j, Elem zeta) const;
  MatBasisElt element(int b) const;
  Elem degree_of(const MatBasisElt& e) const;
  Element unit_at(int i, int j, Elem zeta) const;

  int dim() const override { return k_ * k_ * subgroup().order(); }
  Elem degree(int b) const override;
  std::optional<Product> basis_product(int a, int b) const override;
  std::int64_t structure_modulus() const override { return cocycle().modulus(); }
  Element unit() const override;
  std::string basis_label(int b) const override;
  std::string describe() const override;

 protected:
  GradedMatrixAlgebra(TgaPtr base, std::vector<Elem> theta);

 private:
  TgaPtr base_;
  std::vector<Elem> theta_;
  int k_;
  bool in_normalizer_;
};

using MatPtr = std::shared_ptr<const GradedMatrixAlgebra>;

/// Slot data relating two tuples: theta1_j = delta xi_j theta2_{alpha(j)}.
struct SlotMatch {
  Elem delta = 0;
  std::vector<int> alpha;
  std::vector<Elem> xis;
};

/// For each delta in the left transversal of h in N_G(h), the
/// lexicographically smallest injective alpha (if any) admitting xis in h.
/// Ordered by (alpha, transversal position).
std::vector<SlotMatch> slot_matches(const std::vector<Elem>& theta1, const std::vector<Elem>& theta2,
                                    const Subgroup& h);

/// The monomial map A1 -> A2,
///   E_ij eta_zeta -> g(zeta) E_{alpha(i) alpha(j)} eta_{xi_i}^-1 eta_{kappa(zeta)} eta_{xi_j},
/// kappa(zeta) = delta^-1 zeta delta. Graded by construction; multiplicative
/// exactly when sigma1 = kappa^* sigma2 + d g. No verification here.
AlgebraMap slot_map(const MatPtr& a1, const MatPtr& a2, const SlotMatch& data,
                    const std::optional<ExpFunction>& g = std::nullopt);

/// Element of Lambda^H_theta with its (delta, alpha, xi) description.
class LambdaWitness {
 public:
  /// Throws InvalidWitness unless target_j = delta xi_j theta_{alpha(j)},
  /// delta in N_G(H), alpha a permutation and every xi_j in H.
  LambdaWitness(const GradedMatrixAlgebra& a, std::vector<Elem> target, Elem delta, std::vector<int> alpha,
                std::vector<Elem> xis);

  const std::vector<Elem>& target() const { return target_; }
  Elem delta() const { return data_.delta; }
  const std::vector<int>& alpha() const { return data_.alpha; }
  const std::vector<Elem>& xis() const { return data_.xis; }
  const SlotMatch& data() const { return data_; }

 private:
  std::vector<Elem> target_;
  SlotMatch data_;
};

std::optional<LambdaWitness> lambda_membership(const std::vector<Elem>& target, const GradedMatrixAlgebra& a);

struct RegradeResult {
  MatPtr target;  // theta replaced by the witness tuple, cocycle conjugated by delta
  AlgebraMap map;  // graded isomorphism a -> target
};

RegradeResult regrade_iso(const MatPtr& a, const LambdaWitness& w);

}  // namespace gradalg
