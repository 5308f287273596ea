#include "gradalg/graded_matrix.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "gradalg/errors.hpp"

namespace gradalg {

GradedMatrixAlgebra::GradedMatrixAlgebra(TgaPtr base, std::vector<Elem> theta)
    : GradedAlgebra(base->ambient(), base->field()),
      base_(std::move(base)),
      theta_(std::move(theta)),
      k_(static_cast<int>(theta_.size())) {
  if (k_ < 1) throw Error(ErrorKind::ValidationError, "matrix size must be at least 1");
  const auto& g = base_->ambient();
  for (Elem t : theta_)
    if (!g->contains(t)) throw Error(ErrorKind::IndexOutOfRange, "theta entry is not a group element");
  const Subgroup n = normalizer(g, subgroup());
  in_normalizer_ = std::all_of(theta_.begin(), theta_.end(), [&](Elem t) { return n.contains(t); });
}

MatPtr GradedMatrixAlgebra::create(TgaPtr base, std::vector<Elem> theta) {
  return MatPtr(new GradedMatrixAlgebra(std::move(base), std::move(theta)));
}

int GradedMatrixAlgebra::index(int i, int j, Elem zeta) const {
  if (i < 0 || i >= k_ || j < 0 || j >= k_ || !ambient()->contains(zeta) || !subgroup().contains(zeta)) {
    throw Error(ErrorKind::IndexOutOfRange, "matrix basis element out of range");
  }
  return (i * k_ + j) * subgroup().order() + subgroup().index_of(zeta);
}

MatBasisElt GradedMatrixAlgebra::element(int b) const {
  check_index(b);
  const int h = subgroup().order();
  return {b / h / k_, (b / h) % k_, subgroup().member(b % h)};
}

Elem GradedMatrixAlgebra::degree_of(const MatBasisElt& e) const {
  index(e.i, e.j, e.zeta);  // bounds
  const auto& g = *ambient();
  return g.mul(g.mul(g.inv(theta_[e.i]), e.zeta), theta_[e.j]);
}

Elem GradedMatrixAlgebra::degree(int b) const { return degree_of(element(b)); }

Element GradedMatrixAlgebra::unit_at(int i, int j, Elem zeta) const { return basis(index(i, j, zeta)); }

std::optional<GradedAlgebra::Product> GradedMatrixAlgebra::basis_product(int a, int b) const {
  const int h = subgroup().order();
  const int ra = a / h, rb = b / h;
  const int ia = ra / k_, ja = ra % k_, ib = rb / k_, jb = rb % k_;
  if (ja != ib) return std::nullopt;
  const int pa = a % h, pb = b % h;
  const int pc = subgroup().index_of(ambient()->mul(subgroup().member(pa), subgroup().member(pb)));
  return Product{(ia * k_ + jb) * h + pc, cocycle().at(pa, pb)};
}

Element GradedMatrixAlgebra::unit() const {
  Element u = zero();
  const CycloNumber c = structure_scalar(-cocycle().at(0, 0), field());
  for (int i = 0; i < k_; ++i) u.add_term(index(i, i, 0), c);
  return u;
}

std::string GradedMatrixAlgebra::basis_label(int b) const {
  const auto e = element(b);
  return "E" + std::to_string(e.i + 1) + std::to_string(e.j + 1) + "*eta[" + ambient()->label(e.zeta) + "]";
}

std::string GradedMatrixAlgebra::describe() const {
  std::ostringstream os;
  os << "M" << k_ << "(" << base_->describe() << ") theta=(";
  for (int i = 0; i < k_; ++i) os << (i ? "," : "") << ambient()->label(theta_[i]);
  os << ")";
  return os.str();
}

// ------------------------------------------------------------ slot matching

namespace {

// Lexicographically smallest injective assignment j -> alpha(j) along `adj`,
// or empty when no complete one exists.
std::vector<int> smallest_matching(const std::vector<std::vector<bool>>& adj, int right) {
  const int left = static_cast<int>(adj.size());
  std::vector<int> alpha(left, -1);
  std::vector<bool> used(right, false);

  // Can rows from..left-1 be matched into the unused columns?
  auto completes = [&](int from) {
    std::vector<int> owner(right, -1);
    std::function<bool(int, std::vector<bool>&)> augment = [&](int j, std::vector<bool>& seen) {
      for (int i = 0; i < right; ++i) {
        if (!adj[j][i] || used[i] || seen[i]) continue;
        seen[i] = true;
        if (owner[i] < 0 || augment(owner[i], seen)) {
          owner[i] = j;
          return true;
        }
      }
      return false;
    };
    for (int j = from; j < left; ++j) {
      std::vector<bool> seen(right, false);
      if (!augment(j, seen)) return false;
    }
    return true;
  };

  if (!completes(0)) return {};
  for (int j = 0; j < left; ++j) {
    for (int i = 0; i < right; ++i) {
      if (!adj[j][i] || used[i]) continue;
      used[i] = true;
      if (completes(j + 1)) {
        alpha[j] = i;
        break;
      }
      used[i] = false;
    }
  }
  return alpha;
}

}  // namespace

std::vector<SlotMatch> slot_matches(const std::vector<Elem>& theta1, const std::vector<Elem>& theta2,
                                    const Subgroup& h) {
  const auto& gp = h.parent();
  const auto& g = *gp;
  const int k1 = static_cast<int>(theta1.size()), k2 = static_cast<int>(theta2.size());
  std::vector<SlotMatch> out;
  if (k1 > k2) return out;
  const auto deltas = left_transversal(normalizer(gp, h), h);
  std::vector<std::pair<std::vector<int>, int>> keyed;
  for (int d = 0; d < static_cast<int>(deltas.size()); ++d) {
    const Elem di = g.inv(deltas[d]);
    std::vector<std::vector<bool>> adj(k1, std::vector<bool>(k2));
    for (int j = 0; j < k1; ++j)
      for (int i = 0; i < k2; ++i) adj[j][i] = h.contains(g.mul(g.mul(di, theta1[j]), g.inv(theta2[i])));
    auto alpha = smallest_matching(adj, k2);
    if (alpha.empty() && k1 > 0) continue;
    keyed.emplace_back(std::move(alpha), d);
  }
  std::sort(keyed.begin(), keyed.end());
  for (auto& [alpha, d] : keyed) {
    SlotMatch m;
    m.delta = deltas[d];
    const Elem di = g.inv(m.delta);
    for (int j = 0; j < k1; ++j) m.xis.push_back(g.mul(g.mul(di, theta1[j]), g.inv(theta2[alpha[j]])));
    m.alpha = std::move(alpha);
    out.push_back(std::move(m));
  }
  return out;
}

AlgebraMap slot_map(const MatPtr& a1, const MatPtr& a2, const SlotMatch& data, const std::optional<ExpFunction>& g) {
  const auto& grp = *a1->ambient();
  if (!(grp == *a2->ambient())) throw Error(ErrorKind::AmbientMismatch, "algebras graded by different groups");
  const int k1 = a1->k();
  if (static_cast<int>(data.alpha.size()) != k1 || static_cast<int>(data.xis.size()) != k1) {
    throw Error(ErrorKind::LengthMismatch, "slot data has the wrong length");
  }
  const auto& h1 = a1->subgroup();
  const auto& h2 = a2->subgroup();
  const auto& b2 = *a2->base();
  for (Elem x : data.xis)
    if (!h2.contains(x)) throw Error(ErrorKind::InvalidWitness, "xi outside the target subgroup");
  for (int a : data.alpha)
    if (a < 0 || a >= a2->k()) throw Error(ErrorKind::InvalidWitness, "alpha out of range");

  FieldPtr field = a2->field();
  if (g) field = common_field(field, CycloField::get(static_cast<int>(g->modulus)));
  const Elem di = grp.inv(data.delta);

  std::vector<Element> left(k1), right(k1);
  for (int i = 0; i < k1; ++i) {
    const Element eta = b2.eta(data.xis[i]);
    left[i] = b2.homogeneous_inverse(eta);
    right[i] = eta;
  }

  AlgebraMap out{a1, a2, {}};
  out.images.reserve(a1->dim());
  for (int b = 0; b < a1->dim(); ++b) {
    const auto e = a1->element(b);
    const Elem kz = grp.mul(grp.mul(di, e.zeta), data.delta);
    if (!h2.contains(kz)) throw Error(ErrorKind::InvalidWitness, "conjugated subgroup not contained in target");
    const Element t = left[e.i] * b2.eta(kz) * right[e.j];
    const auto& [pos, c] = *t.terms().begin();
    CycloNumber coeff = c.lifted(common_field(c.field(), field));
    if (g) {
      const long m = coeff.field()->modulus();
      coeff = coeff.times_root(static_cast<long>(g->values[h1.index_of(e.zeta)] * (m / g->modulus)));
    }
    out.images.push_back(a2->basis(a2->index(data.alpha[e.i], data.alpha[e.j], h2.member(pos)), coeff));
  }
  return out;
}

// ------------------------------------------------------------------- Lambda

LambdaWitness::LambdaWitness(const GradedMatrixAlgebra& a, std::vector<Elem> target, Elem delta,
                             std::vector<int> alpha, std::vector<Elem> xis)
    : target_(std::move(target)) {
  const auto& gp = a.ambient();
  const auto& g = *gp;
  const int k = a.k();
  if (static_cast<int>(target_.size()) != k || static_cast<int>(alpha.size()) != k ||
      static_cast<int>(xis.size()) != k) {
    throw Error(ErrorKind::InvalidWitness, "witness length differs from k");
  }
  if (!g.contains(delta) || !normalizer(gp, a.subgroup()).contains(delta)) {
    throw Error(ErrorKind::InvalidWitness, "delta is not in the normalizer of H");
  }
  std::vector<int> sorted = alpha;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < k; ++i)
    if (sorted[i] != i) throw Error(ErrorKind::InvalidWitness, "alpha is not a permutation");
  for (int j = 0; j < k; ++j) {
    if (!g.contains(xis[j]) || !a.subgroup().contains(xis[j])) {
      throw Error(ErrorKind::InvalidWitness, "xi is not in H");
    }
    if (!g.contains(target_[j]) || g.mul(g.mul(delta, xis[j]), a.theta()[alpha[j]]) != target_[j]) {
      throw Error(ErrorKind::InvalidWitness, "witness does not reproduce the target tuple");
    }
  }
  data_ = SlotMatch{delta, std::move(alpha), std::move(xis)};
}

std::optional<LambdaWitness> lambda_membership(const std::vector<Elem>& target, const GradedMatrixAlgebra& a) {
  if (static_cast<int>(target.size()) != a.k()) throw Error(ErrorKind::LengthMismatch, "tuple length differs from k");
  for (Elem t : target)
    if (!a.ambient()->contains(t)) throw Error(ErrorKind::IndexOutOfRange, "tuple entry is not a group element");
  auto matches = slot_matches(target, a.theta(), a.subgroup());
  if (matches.empty()) return std::nullopt;
  auto& m = matches.front();
  return LambdaWitness(a, target, m.delta, std::move(m.alpha), std::move(m.xis));
}

RegradeResult regrade_iso(const MatPtr& a, const LambdaWitness& w) {
  // Rebuild the witness against `a` so a witness for another algebra is rejected.
  LambdaWitness checked(*a, w.target(), w.delta(), w.alpha(), w.xis());
  auto base = TwistedGroupAlgebra::create(conjugate_class(a->cocycle(), w.delta()));
  auto target = GradedMatrixAlgebra::create(std::move(base), w.target());
  // target -> a is a slot map with trivial scalar part; invert it.
  AlgebraMap back = slot_map(target, a, checked.data());
  return RegradeResult{target, back.monomial_inverse()};
}

}  // namespace gradalg
