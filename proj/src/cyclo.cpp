#include "gradalg/cyclo.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "gradalg/errors.hpp"

namespace gradalg {

namespace {

// Exact division of integer polynomials by a monic divisor.
IntPoly divide_exact(const IntPoly& num, const IntPoly& den) {
  IntPoly rem = num;
  const int dn = static_cast<int>(den.size()) - 1;
  const int nn = static_cast<int>(num.size()) - 1;
  IntPoly q(nn - dn + 1, 0);
  for (int i = nn - dn; i >= 0; --i) {
    const long c = rem[i + dn];
    q[i] = c;
    for (int j = 0; j <= dn; ++j) rem[i + j] -= c * den[j];
  }
  return q;
}

using RatPoly = std::vector<mpq_class>;

void trim(RatPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Quotient and remainder over Q.
void divmod(const RatPoly& a, const RatPoly& b, RatPoly& q, RatPoly& r) {
  r = a;
  trim(r);
  const int db = static_cast<int>(b.size()) - 1;
  q.assign(r.size() > b.size() - 1 ? r.size() - db : 1, 0);
  while (!r.empty() && static_cast<int>(r.size()) - 1 >= db) {
    const int shift = static_cast<int>(r.size()) - 1 - db;
    mpq_class c = r.back() / b.back();
    q[shift] += c;
    for (int j = 0; j <= db; ++j) r[shift + j] -= c * b[j];
    trim(r);
  }
  trim(q);
}

RatPoly mul(const RatPoly& a, const RatPoly& b) {
  if (a.empty() || b.empty()) return {};
  RatPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

RatPoly sub(const RatPoly& a, const RatPoly& b) {
  RatPoly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  trim(out);
  return out;
}

}  // namespace

IntPoly cyclotomic_polynomial(int m) {
  if (m < 1) throw Error(ErrorKind::SpecMalformed, "cyclotomic modulus must be >= 1");
  IntPoly p(m + 1, 0);
  p[0] = -1;
  p[m] = 1;
  for (int d = 1; d < m; ++d) {
    if (m % d == 0) p = divide_exact(p, cyclotomic_polynomial(d));
  }
  return p;
}

CycloField::CycloField(int modulus) : m_(modulus), min_poly_(cyclotomic_polynomial(modulus)) {
  phi_ = static_cast<int>(min_poly_.size()) - 1;
  // zeta^k for k < M by repeated multiplication by x, reducing x^phi.
  powers_.assign(m_, std::vector<long>(phi_, 0));
  std::vector<long> cur(phi_, 0);
  cur[0] = 1;
  for (int k = 0; k < m_; ++k) {
    powers_[k] = cur;
    std::vector<long> next(phi_, 0);
    const long top = cur[phi_ - 1];
    for (int i = phi_ - 1; i >= 1; --i) next[i] = cur[i - 1];
    next[0] = 0;
    for (int i = 0; i < phi_; ++i) next[i] -= top * min_poly_[i];
    cur = std::move(next);
  }
}

std::shared_ptr<const CycloField> CycloField::get(int modulus) {
  if (modulus < 1) throw Error(ErrorKind::SpecMalformed, "cyclotomic modulus must be >= 1");
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const CycloField>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[modulus];
  if (!slot) slot = std::make_shared<const CycloField>(modulus);
  return slot;
}

CycloNumber::CycloNumber(FieldPtr field) : field_(std::move(field)), c_(field_->degree(), 0) {}

CycloNumber::CycloNumber(FieldPtr field, long value) : CycloNumber(std::move(field)) { c_[0] = value; }

CycloNumber::CycloNumber(FieldPtr field, std::vector<mpq_class> coeffs) : field_(std::move(field)) {
  // Reduce an arbitrary-length coefficient vector modulo Phi_M.
  const int phi = field_->degree();
  const auto& mp = field_->min_poly();
  for (int i = static_cast<int>(coeffs.size()) - 1; i >= phi; --i) {
    if (coeffs[i] == 0) continue;
    const mpq_class c = coeffs[i];
    for (int j = 0; j <= phi; ++j) coeffs[i - phi + j] -= c * mp[j];
  }
  coeffs.resize(phi, 0);
  for (auto& q : coeffs) q.canonicalize();
  c_ = std::move(coeffs);
}

CycloNumber CycloNumber::root_of_unity(const FieldPtr& field, long k) {
  const int m = field->modulus();
  k = ((k % m) + m) % m;
  CycloNumber out(field);
  const auto& p = field->power_basis(static_cast<int>(k));
  for (int i = 0; i < field->degree(); ++i) out.c_[i] = p[i];
  return out;
}

bool CycloNumber::is_zero() const {
  for (const auto& q : c_)
    if (q != 0) return false;
  return true;
}

bool CycloNumber::is_one() const {
  if (c_.empty() || c_[0] != 1) return false;
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

void CycloNumber::check_field(const CycloNumber& o) const {
  if (!field_ || !o.field_ || field_->modulus() != o.field_->modulus()) {
    throw Error(ErrorKind::FieldMismatch, "operands live in different cyclotomic fields");
  }
}

CycloNumber CycloNumber::operator+(const CycloNumber& o) const {
  CycloNumber out = *this;
  out += o;
  return out;
}

CycloNumber CycloNumber::operator-(const CycloNumber& o) const {
  CycloNumber out = *this;
  out -= o;
  return out;
}

CycloNumber& CycloNumber::operator+=(const CycloNumber& o) {
  check_field(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

CycloNumber& CycloNumber::operator-=(const CycloNumber& o) {
  check_field(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

CycloNumber CycloNumber::operator-() const {
  CycloNumber out = *this;
  for (auto& q : out.c_) q = -q;
  return out;
}

CycloNumber CycloNumber::operator*(const CycloNumber& o) const {
  check_field(o);
  const int phi = field_->degree();
  std::vector<mpq_class> prod(2 * phi - 1, 0);
  for (int i = 0; i < phi; ++i) {
    if (c_[i] == 0) continue;
    for (int j = 0; j < phi; ++j) {
      if (o.c_[j] == 0) continue;
      prod[i + j] += c_[i] * o.c_[j];
    }
  }
  return CycloNumber(field_, std::move(prod));
}

CycloNumber CycloNumber::operator*(const mpq_class& q) const {
  CycloNumber out = *this;
  for (auto& c : out.c_) c *= q;
  return out;
}

CycloNumber CycloNumber::times_root(long k) const {
  const int m = field_->modulus();
  const int phi = field_->degree();
  CycloNumber out(field_);
  for (int i = 0; i < phi; ++i) {
    if (c_[i] == 0) continue;
    const auto& p = field_->power_basis(static_cast<int>((((i + k) % m) + m) % m));
    for (int j = 0; j < phi; ++j) {
      if (p[j] != 0) out.c_[j] += c_[i] * p[j];
    }
  }
  return out;
}

CycloNumber CycloNumber::inv() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  // Extended Euclid: find s with s*a = 1 mod Phi_M.
  RatPoly a(c_.begin(), c_.end());
  trim(a);
  RatPoly mp(field_->min_poly().begin(), field_->min_poly().end());
  RatPoly r0 = mp, r1 = a, s0{}, s1{mpq_class(1)};
  while (!(r1.size() == 1)) {
    RatPoly q, r;
    divmod(r0, r1, q, r);
    RatPoly s = sub(s0, mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
    if (r1.empty()) throw Error(ErrorKind::DivisionByZero, "element is not invertible");
  }
  const mpq_class lead = r1[0];
  for (auto& c : s1) c /= lead;
  return CycloNumber(field_, std::move(s1));
}

bool CycloNumber::operator==(const CycloNumber& o) const {
  check_field(o);
  return c_ == o.c_;
}

std::string CycloNumber::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    if (!first) out << " + ";
    first = false;
    out << "(" << c_[i].get_str() << ")";
    if (i > 0) out << "*z^" << i;
  }
  if (first) out << "0";
  return out.str();
}

CycloNumber CycloNumber::lifted(const FieldPtr& to) const {
  if (to->modulus() == field_->modulus()) return CycloNumber(to, c_);
  if (to->modulus() % field_->modulus() != 0) {
    throw Error(ErrorKind::FieldMismatch, "cannot lift Q(zeta_" + std::to_string(field_->modulus()) +
                                              ") into Q(zeta_" + std::to_string(to->modulus()) + ")");
  }
  const int step = to->modulus() / field_->modulus();
  const int phi = to->degree();
  CycloNumber out(to);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    const auto& p = to->power_basis(static_cast<int>(i) * step);
    for (int j = 0; j < phi; ++j)
      if (p[j] != 0) out.c_[j] += c_[i] * p[j];
  }
  return out;
}

FieldPtr common_field(const FieldPtr& a, const FieldPtr& b) {
  if (a->modulus() == b->modulus()) return a;
  return CycloField::get(std::lcm(a->modulus(), b->modulus()));
}

}  // namespace gradalg
