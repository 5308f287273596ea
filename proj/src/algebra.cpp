#include "gradalg/algebra.hpp"

#include <atomic>
#include <numeric>
#include <set>
#include <sstream>

#include "gradalg/errors.hpp"

namespace gradalg {

// ------------------------------------------------------------------ Element

Element::Element(AlgebraPtr algebra) : alg_(std::move(algebra)), field_(alg_->field()) {}

Element::Element(AlgebraPtr algebra, FieldPtr field) : alg_(std::move(algebra)), field_(std::move(field)) {
  if (field_->modulus() % alg_->field()->modulus() != 0) field_ = common_field(field_, alg_->field());
}

Element Element::lifted(const FieldPtr& to) const {
  if (to->modulus() == field_->modulus()) return *this;
  Element out(alg_, to);
  for (const auto& [b, c] : terms_) out.terms_.emplace(b, c.lifted(out.field_));
  return out;
}

void Element::add_term(int b, const CycloNumber& c) {
  if (b < 0 || b >= alg_->dim()) throw Error(ErrorKind::IndexOutOfRange, "basis index out of range");
  if (c.is_zero()) return;
  if (c.field()->modulus() != field_->modulus()) {
    auto f = common_field(field_, c.field());
    if (f->modulus() != field_->modulus()) *this = lifted(f);
  }
  CycloNumber v = c.field()->modulus() == field_->modulus() ? c : c.lifted(field_);
  auto it = terms_.find(b);
  if (it == terms_.end()) {
    terms_.emplace(b, std::move(v));
  } else {
    it->second += v;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

CycloNumber Element::coeff(int b) const {
  auto it = terms_.find(b);
  return it == terms_.end() ? CycloNumber::zero(field_) : it->second;
}

void Element::check_same(const Element& o) const {
  if (!alg_ || !o.alg_ || alg_->id() != o.alg_->id()) {
    throw Error(ErrorKind::AlgebraMismatch, "elements belong to different algebras");
  }
}

Element Element::operator+(const Element& o) const {
  check_same(o);
  Element out = *this;
  for (const auto& [b, c] : o.terms_) out.add_term(b, c);
  return out;
}

Element Element::operator-(const Element& o) const { return *this + (-o); }

Element Element::operator-() const {
  Element out = *this;
  for (auto& [b, c] : out.terms_) c = -c;
  return out;
}

Element Element::operator*(const Element& o) const { return alg_->multiply(*this, o); }

Element Element::scaled(const CycloNumber& c) const {
  Element out(alg_, common_field(field_, c.field()));
  if (c.is_zero()) return out;
  const CycloNumber s = c.lifted(out.field_);
  for (const auto& [b, v] : terms_) out.terms_.emplace(b, v.lifted(out.field_) * s);
  return out;
}

std::optional<Elem> Element::homogeneous_degree() const {
  if (terms_.empty()) return std::nullopt;
  const Elem d = alg_->degree(terms_.begin()->first);
  for (const auto& [b, c] : terms_)
    if (alg_->degree(b) != d) return std::nullopt;
  return d;
}

bool Element::operator==(const Element& o) const {
  if (!alg_ || !o.alg_ || alg_->id() != o.alg_->id()) return false;
  if (terms_.size() != o.terms_.size()) return false;
  const auto f = common_field(field_, o.field_);
  for (auto it = terms_.begin(), jt = o.terms_.begin(); it != terms_.end(); ++it, ++jt) {
    if (it->first != jt->first) return false;
    if (it->second.lifted(f) != jt->second.lifted(f)) return false;
  }
  return true;
}

std::string Element::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [b, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")*" << alg_->basis_label(b);
  }
  return os.str();
}

// ------------------------------------------------------------ GradedAlgebra

namespace {
std::atomic<std::uint64_t> next_algebra_id{1};
}

GradedAlgebra::GradedAlgebra(GroupPtr ambient, FieldPtr field)
    : ambient_(std::move(ambient)), field_(std::move(field)), id_(next_algebra_id++) {}

void GradedAlgebra::check_index(int b) const {
  if (b < 0 || b >= dim()) throw Error(ErrorKind::IndexOutOfRange, "basis index out of range");
}

Element GradedAlgebra::zero() const { return Element(shared_from_this()); }

Element GradedAlgebra::basis(int b) const { return basis(b, CycloNumber::one(field_)); }

Element GradedAlgebra::basis(int b, const CycloNumber& c) const {
  check_index(b);
  Element out(shared_from_this(), c.field());
  out.add_term(b, c);
  return out;
}

CycloNumber GradedAlgebra::structure_scalar(std::int64_t exponent, const FieldPtr& field) const {
  const std::int64_t s = structure_modulus();
  if (field->modulus() % s != 0) throw Error(ErrorKind::FieldMismatch, "field too small for structure constants");
  return CycloNumber::root_of_unity(field, static_cast<long>(exponent * (field->modulus() / s)));
}

Element GradedAlgebra::multiply(const Element& a, const Element& b) const {
  if (!a.algebra() || !b.algebra() || a.algebra()->id() != id_ || b.algebra()->id() != id_) {
    throw Error(ErrorKind::AlgebraMismatch, "factors do not belong to this algebra");
  }
  const FieldPtr f = common_field(common_field(a.field(), b.field()), field_);
  const std::int64_t step = f->modulus() / structure_modulus();
  Element out(shared_from_this(), f);
  for (const auto& [i, ca] : a.terms()) {
    const CycloNumber la = ca.lifted(f);
    for (const auto& [j, cb] : b.terms()) {
      auto p = basis_product(i, j);
      if (!p) continue;
      out.add_term(p->index, (la * cb.lifted(f)).times_root(static_cast<long>(p->exponent * step)));
    }
  }
  return out;
}

std::vector<int> GradedAlgebra::component(Elem g) const {
  std::vector<int> out;
  for (int b = 0; b < dim(); ++b)
    if (degree(b) == g) out.push_back(b);
  return out;
}

std::vector<Elem> GradedAlgebra::support() const {
  std::set<Elem> s;
  for (int b = 0; b < dim(); ++b) s.insert(degree(b));
  return {s.begin(), s.end()};
}

FieldPtr algebra_field(const GroupPtr& ambient, std::int64_t cocycle_modulus) {
  const std::int64_t m = std::lcm(static_cast<std::int64_t>(ambient->order()), cocycle_modulus) * ambient->exponent();
  return CycloField::get(static_cast<int>(m));
}

// ------------------------------------------------------ TwistedGroupAlgebra

TwistedGroupAlgebra::TwistedGroupAlgebra(ExpCocycle sigma)
    : GradedAlgebra(sigma.domain().parent(), algebra_field(sigma.domain().parent(), sigma.modulus())),
      sigma_(std::move(sigma)) {}

std::shared_ptr<const TwistedGroupAlgebra> TwistedGroupAlgebra::create(ExpCocycle sigma) {
  if (!is_cocycle(sigma)) throw Error(ErrorKind::NotACocycle, "twisting function fails the cocycle identity");
  return std::shared_ptr<const TwistedGroupAlgebra>(new TwistedGroupAlgebra(std::move(sigma)));
}

std::shared_ptr<const TwistedGroupAlgebra> TwistedGroupAlgebra::untwisted(const Subgroup& h) {
  return create(ExpCocycle::trivial(h, std::max(1, h.order())));
}

Elem TwistedGroupAlgebra::degree(int b) const {
  check_index(b);
  return subgroup().member(b);
}

std::optional<GradedAlgebra::Product> TwistedGroupAlgebra::basis_product(int a, int b) const {
  const auto& h = subgroup();
  return Product{h.index_of(ambient()->mul(h.member(a), h.member(b))), sigma_.at(a, b)};
}

Element TwistedGroupAlgebra::unit() const {
  return basis(0, structure_scalar(-sigma_.at(0, 0), field()));
}

std::string TwistedGroupAlgebra::basis_label(int b) const {
  return "eta[" + ambient()->label(degree(b)) + "]";
}

std::string TwistedGroupAlgebra::describe() const {
  std::ostringstream os;
  os << (sigma_.is_zero() ? "F[" : "F^sigma[");
  for (int i = 0; i < subgroup().order(); ++i) os << (i ? "," : "") << ambient()->label(subgroup().member(i));
  os << "] in " << ambient()->name();
  return os.str();
}

Element TwistedGroupAlgebra::eta(Elem xi) const { return eta(xi, CycloNumber::one(field())); }

Element TwistedGroupAlgebra::eta(Elem xi, const CycloNumber& c) const {
  if (!ambient()->contains(xi) || !subgroup().contains(xi)) {
    throw Error(ErrorKind::IndexOutOfRange, "element is not in the algebra's subgroup");
  }
  return basis(subgroup().index_of(xi), c);
}

Element TwistedGroupAlgebra::homogeneous_inverse(const Element& x) const {
  if (!x.algebra() || x.algebra()->id() != id()) throw Error(ErrorKind::AlgebraMismatch, "element of another algebra");
  if (x.is_zero()) throw Error(ErrorKind::ZeroElement, "zero has no inverse");
  if (x.terms().size() != 1) throw Error(ErrorKind::NotHomogeneous, "element is not homogeneous");
  const auto& [b, c] = *x.terms().begin();
  const Elem xi = degree(b);
  const Elem xi_inv = ambient()->inv(xi);
  const int bi = subgroup().index_of(xi_inv);
  // (c eta_xi)(d eta_xi^-1) = c d sigma(xi, xi^-1) eta_e = sigma(e,e)^-1 eta_e
  const CycloNumber d = structure_scalar(-sigma_.at(0, 0) - sigma_.at(b, bi), x.field()) / c;
  return basis(bi, d);
}

// ---------------------------------------------------------------- gradings

bool is_division_graded(const GradedAlgebra& a) {
  const auto& g = *a.ambient();
  const auto supp = a.support();
  std::set<Elem> s(supp.begin(), supp.end());
  if (!s.count(0)) return false;
  for (Elem x : supp)
    for (Elem y : supp)
      if (!s.count(g.mul(x, y))) return false;
  for (Elem x : supp) {
    const auto cx = a.component(x);
    if (cx.size() != 1) return false;
    const auto cy = a.component(g.inv(x));
    if (cy.size() != 1) return false;
    if (!a.basis_product(cx[0], cy[0]) || !a.basis_product(cy[0], cx[0])) return false;
  }
  return true;
}

bool verify_grading(const GradedAlgebra& a) {
  const auto& g = *a.ambient();
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) {
      auto p = a.basis_product(i, j);
      if (p && a.degree(p->index) != g.mul(a.degree(i), a.degree(j))) return false;
    }
  return true;
}

// -------------------------------------------------------------- AlgebraMap

Element AlgebraMap::apply(const Element& x) const {
  if (!x.algebra() || x.algebra()->id() != domain->id()) {
    throw Error(ErrorKind::AlgebraMismatch, "argument is not in the map's domain");
  }
  Element out = codomain->zero();
  for (const auto& [b, c] : x.terms()) out = out + images[b].scaled(c);
  return out;
}

AlgebraMap AlgebraMap::then(const AlgebraMap& next) const {
  if (next.domain->id() != codomain->id()) throw Error(ErrorKind::AlgebraMismatch, "maps do not compose");
  AlgebraMap out{domain, next.codomain, {}};
  out.images.reserve(images.size());
  for (const auto& y : images) out.images.push_back(next.apply(y));
  return out;
}

bool AlgebraMap::is_monomial() const {
  return std::all_of(images.begin(), images.end(), [](const Element& y) { return y.terms().size() == 1; });
}

AlgebraMap AlgebraMap::monomial_inverse() const {
  if (!is_monomial() || domain->dim() != codomain->dim()) {
    throw Error(ErrorKind::InvalidWitness, "map is not a bijective monomial map");
  }
  std::vector<std::optional<Element>> inv(codomain->dim());
  for (int b = 0; b < domain->dim(); ++b) {
    const auto& [t, c] = *images[b].terms().begin();
    if (inv[t]) throw Error(ErrorKind::InvalidWitness, "map is not injective");
    inv[t] = domain->basis(b, c.inv());
  }
  AlgebraMap out{codomain, domain, {}};
  for (auto& e : inv) out.images.push_back(std::move(*e));
  return out;
}

}  // namespace gradalg
