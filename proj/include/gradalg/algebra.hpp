#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gradalg/cohomology.hpp"
#include "gradalg/cyclo.hpp"
#include "gradalg/group.hpp"

namespace gradalg {

class GradedAlgebra;
using AlgebraPtr = std::shared_ptr<const GradedAlgebra>;

/// Element of a graded algebra: sparse coordinates in the algebra's basis.
///
/// Coefficients share one cyclotomic field, which may be any multiple of
/// the algebra's own field; mixing elements lifts to the common field.
class Element {
 public:
  Element() = default;
  explicit Element(AlgebraPtr algebra);
  Element(AlgebraPtr algebra, FieldPtr field);

  const AlgebraPtr& algebra() const { return alg_; }
  const FieldPtr& field() const { return field_; }
  const std::map<int, CycloNumber>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Adds c * basis[b]; drops the entry if it cancels.
  void add_term(int b, const CycloNumber& c);
  CycloNumber coeff(int b) const;

  Element operator+(const Element& o) const;
  Element operator-(const Element& o) const;
  Element operator-() const;
  Element operator*(const Element& o) const;
  Element scaled(const CycloNumber& c) const;
  /// Reexpressed over `to` (a multiple of the current field).
  Element lifted(const FieldPtr& to) const;

  /// Degree if the element is nonzero and homogeneous.
  std::optional<Elem> homogeneous_degree() const;

  bool operator==(const Element& o) const;
  bool operator!=(const Element& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  void check_same(const Element& o) const;

  AlgebraPtr alg_;
  FieldPtr field_;
  std::map<int, CycloNumber> terms_;
};

/// Finite-dimensional G-graded algebra with a homogeneous monomial basis:
/// the product of two basis elements is zero or a root of unity times a
/// basis element.
class GradedAlgebra : public std::enable_shared_from_this<GradedAlgebra> {
 public:
  struct Product {
    int index;
    std::int64_t exponent;  // scalar zeta_S^exponent, S = structure_modulus()
  };

  virtual ~GradedAlgebra() = default;

  const GroupPtr& ambient() const { return ambient_; }
  const FieldPtr& field() const { return field_; }
  std::uint64_t id() const { return id_; }

  virtual int dim() const = 0;
  virtual Elem degree(int b) const = 0;
  virtual std::optional<Product> basis_product(int a, int b) const = 0;
  virtual std::int64_t structure_modulus() const = 0;
  virtual Element unit() const = 0;
  virtual std::string basis_label(int b) const = 0;
  virtual std::string describe() const = 0;

  Element zero() const;
  Element basis(int b) const;
  Element basis(int b, const CycloNumber& c) const;
  /// Structure constant zeta_S^e expressed in `field`.
  CycloNumber structure_scalar(std::int64_t exponent, const FieldPtr& field) const;
  Element multiply(const Element& a, const Element& b) const;

  /// Basis indices of degree g, ascending.
  std::vector<int> component(Elem g) const;
  /// Degrees with a nonzero component, ascending.
  std::vector<Elem> support() const;

 protected:
  GradedAlgebra(GroupPtr ambient, FieldPtr field);
  void check_index(int b) const;

 private:
  GroupPtr ambient_;
  FieldPtr field_;
  std::uint64_t id_;
};

/// Default coefficient field for algebras over `ambient`: large enough for
/// every scalar map produced by the deciders.
FieldPtr algebra_field(const GroupPtr& ambient, std::int64_t cocycle_modulus);

/// F^sigma[H], basis eta_xi indexed by member position of xi in H.
class TwistedGroupAlgebra final : public GradedAlgebra {
 public:
  static std::shared_ptr<const TwistedGroupAlgebra> create(ExpCocycle sigma);
  /// Untwisted group algebra F[H].
  static std::shared_ptr<const TwistedGroupAlgebra> untwisted(const Subgroup& h);

  const Subgroup& subgroup() const { return sigma_.domain(); }
  const ExpCocycle& cocycle() const { return sigma_; }

  int dim() const override { return sigma_.size(); }
  Elem degree(int b) const override;
  std::optional<Product> basis_product(int a, int b) const override;
  std::int64_t structure_modulus() const override { return sigma_.modulus(); }
  /// sigma(e,e)^-1 eta_e.
  Element unit() const override;
  std::string basis_label(int b) const override;
  std::string describe() const override;

  Element eta(Elem xi) const;
  Element eta(Elem xi, const CycloNumber& c) const;
  /// Two-sided inverse of c * eta_xi.
  Element homogeneous_inverse(const Element& x) const;

 private:
  explicit TwistedGroupAlgebra(ExpCocycle sigma);
  ExpCocycle sigma_;
};

using TgaPtr = std::shared_ptr<const TwistedGroupAlgebra>;

/// Every nonzero homogeneous element is invertible (and the support is a subgroup).
bool is_division_graded(const GradedAlgebra& a);

/// deg(b_a b_b) = deg(b_a) deg(b_b) for every nonzero basis product.
bool verify_grading(const GradedAlgebra& a);

/// Linear map given by images of the domain basis.
struct AlgebraMap {
  AlgebraPtr domain;
  AlgebraPtr codomain;
  std::vector<Element> images;

  Element apply(const Element& x) const;
  /// this followed by `next`.
  AlgebraMap then(const AlgebraMap& next) const;
  /// Inverse of a bijective map sending basis elements to scaled basis elements.
  AlgebraMap monomial_inverse() const;
  bool is_monomial() const;
};

}  // namespace gradalg
