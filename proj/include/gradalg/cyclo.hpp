#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <vector>

namespace gradalg {

/// Integer polynomial, coefficient i is the coefficient of x^i.
using IntPoly = std::vector<long>;

/// Phi_M via x^M - 1 = prod_{d | M} Phi_d, with exact integer division.
IntPoly cyclotomic_polynomial(int m);

/// The cyclotomic field Q(zeta_M), represented modulo Phi_M.
class CycloField {
 public:
  /// Shared instance per modulus; two fields are equal iff moduli are equal.
  static std::shared_ptr<const CycloField> get(int modulus);

  int modulus() const { return m_; }
  int degree() const { return phi_; }
  const IntPoly& min_poly() const { return min_poly_; }
  /// Coefficients of zeta^k reduced modulo Phi_M, k in [0, M).
  const std::vector<long>& power_basis(int k) const { return powers_[k]; }

  explicit CycloField(int modulus);

 private:
  int m_;
  int phi_;
  IntPoly min_poly_;
  std::vector<std::vector<long>> powers_;
};

using FieldPtr = std::shared_ptr<const CycloField>;

/// Exact element of Q(zeta_M) in canonical form (degree < phi(M)).
class CycloNumber {
 public:
  CycloNumber() = default;
  explicit CycloNumber(FieldPtr field);
  CycloNumber(FieldPtr field, long value);
  CycloNumber(FieldPtr field, std::vector<mpq_class> coeffs);

  static CycloNumber zero(const FieldPtr& field) { return CycloNumber(field); }
  static CycloNumber one(const FieldPtr& field) { return CycloNumber(field, 1); }
  /// zeta_M^k with k reduced mod M.
  static CycloNumber root_of_unity(const FieldPtr& field, long k);

  const FieldPtr& field() const { return field_; }
  const std::vector<mpq_class>& coeffs() const { return c_; }
  bool is_zero() const;
  bool is_one() const;

  CycloNumber operator+(const CycloNumber& o) const;
  CycloNumber operator-(const CycloNumber& o) const;
  CycloNumber operator-() const;
  CycloNumber operator*(const CycloNumber& o) const;
  CycloNumber operator*(const mpq_class& q) const;
  CycloNumber& operator+=(const CycloNumber& o);
  CycloNumber& operator-=(const CycloNumber& o);
  CycloNumber& operator*=(const CycloNumber& o) { return *this = *this * o; }
  /// this * zeta^k, cheaper than a general product.
  CycloNumber times_root(long k) const;
  /// Multiplicative inverse; throws DivisionByZero.
  CycloNumber inv() const;
  CycloNumber operator/(const CycloNumber& o) const { return *this * o.inv(); }

  bool operator==(const CycloNumber& o) const;
  bool operator!=(const CycloNumber& o) const { return !(*this == o); }

  std::string to_string() const;

  /// The same number viewed in a field whose modulus is a multiple of ours.
  CycloNumber lifted(const FieldPtr& to) const;

 private:
  void check_field(const CycloNumber& o) const;

  FieldPtr field_;
  std::vector<mpq_class> c_;
};

/// Field containing both; lifts are exact.
FieldPtr common_field(const FieldPtr& a, const FieldPtr& b);

}  // namespace gradalg
