#include "gradalg/embeddings.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <set>

#include "gradalg/errors.hpp"

namespace gradalg {

std::string to_string(Verdict v) { return v == Verdict::yes ? "yes" : "no"; }

// ------------------------------------------------------------- verification

namespace {

// Exponent r with x == zeta_M^r, if x is an M-th root of unity.
std::optional<long> root_exponent(const CycloNumber& x) {
  static std::mutex mu;
  static std::map<int, std::map<std::vector<long>, long>> tables;
  const int m = x.field()->modulus();
  std::vector<long> key;
  key.reserve(x.coeffs().size());
  for (const auto& c : x.coeffs()) {
    if (c.get_den() != 1 || !c.get_num().fits_slong_p()) return std::nullopt;
    key.push_back(c.get_num().get_si());
  }
  std::lock_guard<std::mutex> lock(mu);
  auto& table = tables[m];
  if (table.empty()) {
    for (long r = 0; r < m; ++r) {
      std::vector<long> k;
      const auto root = CycloNumber::root_of_unity(x.field(), r);
      for (const auto& c : root.coeffs()) k.push_back(c.get_num().get_si());
      table.emplace(std::move(k), r);
    }
  }
  auto it = table.find(key);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

int rank_of(const std::vector<Element>& vecs, int dim) {
  if (vecs.empty()) return 0;
  FieldPtr f = vecs.front().field();
  for (const auto& v : vecs) f = common_field(f, v.field());
  std::vector<std::vector<CycloNumber>> rows;
  for (const auto& v : vecs) {
    std::vector<CycloNumber> r(dim, CycloNumber::zero(f));
    for (const auto& [b, c] : v.terms()) r[b] = c.lifted(f);
    rows.push_back(std::move(r));
  }
  int rank = 0;
  for (int col = 0; col < dim && rank < static_cast<int>(rows.size()); ++col) {
    int piv = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
      if (!rows[r][col].is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[piv], rows[rank]);
    const CycloNumber inv = rows[rank][col].inv();
    for (int r = rank + 1; r < static_cast<int>(rows.size()); ++r) {
      if (rows[r][col].is_zero()) continue;
      const CycloNumber s = rows[r][col] * inv;
      for (int c = col; c < dim; ++c)
        if (!rows[rank][c].is_zero()) rows[r][c] -= s * rows[rank][c];
    }
    ++rank;
  }
  return rank;
}

bool monomial_check(const AlgebraMap& map, bool& decided) {
  decided = false;
  const auto& a = *map.domain;
  const auto& b = *map.codomain;
  const int n = a.dim();
  FieldPtr f = common_field(a.field(), b.field());
  for (const auto& y : map.images) f = common_field(f, y.field());
  std::vector<int> target(n);
  std::vector<long> expo(n);
  std::set<int> seen;
  for (int i = 0; i < n; ++i) {
    const auto& [t, c] = *map.images[i].terms().begin();
    auto r = root_exponent(c.lifted(f));
    if (!r) return false;  // not decided; general path
    target[i] = t;
    expo[i] = *r;
    seen.insert(t);
  }
  decided = true;
  if (static_cast<int>(seen.size()) != n) return false;
  const long m = f->modulus();
  const long sa = m / a.structure_modulus(), sb = m / b.structure_modulus();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto p = a.basis_product(i, j);
      auto q = b.basis_product(target[i], target[j]);
      if (p.has_value() != q.has_value()) return false;
      if (!p) continue;
      if (target[p->index] != q->index) return false;
      const long lhs = expo[p->index] + p->exponent * sa;
      const long rhs = expo[i] + expo[j] + q->exponent * sb;
      if (((lhs - rhs) % m + m) % m != 0) return false;
    }
  return true;
}

}  // namespace

bool verify_graded_monomorphism(const AlgebraMap& map) {
  if (!map.domain || !map.codomain) return false;
  const auto& a = *map.domain;
  const auto& b = *map.codomain;
  if (!(*a.ambient() == *b.ambient())) return false;
  if (static_cast<int>(map.images.size()) != a.dim()) return false;
  for (int i = 0; i < a.dim(); ++i) {
    const auto& y = map.images[i];
    if (!y.algebra() || y.algebra()->id() != b.id()) return false;
    auto d = y.homogeneous_degree();
    if (!d || *d != a.degree(i)) return false;
  }
  if (map.is_monomial()) {
    bool decided = false;
    const bool ok = monomial_check(map, decided);
    if (decided) return ok;
  }
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) {
      auto p = a.basis_product(i, j);
      Element lhs = b.zero();
      if (p) lhs = map.images[p->index].scaled(a.structure_scalar(p->exponent, a.field()));
      if (lhs != map.images[i] * map.images[j]) return false;
    }
  return rank_of(map.images, b.dim()) == a.dim();
}

bool verify_graded_isomorphism(const AlgebraMap& map) {
  return map.domain && map.codomain && map.domain->dim() == map.codomain->dim() && verify_graded_monomorphism(map);
}

// ---------------------------------------------------------- twisted algebras

namespace {

void require_same_ambient(const GradedAlgebra& a, const GradedAlgebra& b) {
  if (!(*a.ambient() == *b.ambient())) throw Error(ErrorKind::AmbientMismatch, "algebras graded by different groups");
}

AlgebraMap scalar_tga_map(const TgaPtr& b1, const TgaPtr& b2, const ExpFunction& f) {
  AlgebraMap map{b1, b2, {}};
  const FieldPtr field = common_field(b2->field(), CycloField::get(static_cast<int>(f.modulus)));
  for (int i = 0; i < b1->dim(); ++i) {
    map.images.push_back(
        b2->eta(b1->degree(i), CycloNumber::root_of_unity(field, static_cast<long>(f.values[i] * (field->modulus() / f.modulus)))));
  }
  return map;
}

void set_no(DecisionReport& r, std::string code, std::string detail) {
  r.verdict = Verdict::no;
  r.reasons.push_back({std::move(code), std::move(detail)});
}

}  // namespace

DecisionReport twisted_embed(const TgaPtr& b1, const TgaPtr& b2, const CohomologyOptions& opts) {
  require_same_ambient(*b1, *b2);
  DecisionReport r;
  r.decision = "twisted_embed";
  if (!b1->subgroup().is_subset_of(b2->subgroup())) {
    set_no(r, "subgroup_containment", "H1 is not contained in H2");
    return r;
  }
  auto f = classes_equivalent(b1->cocycle(), restrict_to(b2->cocycle(), b1->subgroup()), opts);
  if (!f) {
    set_no(r, "class_mismatch", "[sigma1] differs from [sigma2 restricted to H1]");
    return r;
  }
  AlgebraMap map = scalar_tga_map(b1, b2, *f);
  r.verified = verify_graded_monomorphism(map);
  if (!r.verified) {
    set_no(r, "no_verifiable_witness", "constructed scalar map failed verification");
    return r;
  }
  r.verdict = Verdict::yes;
  r.tga_witness = TgaEmbedWitness{std::move(*f)};
  r.map = std::move(map);
  return r;
}

DecisionReport twisted_iso(const TgaPtr& b1, const TgaPtr& b2, const CohomologyOptions& opts) {
  require_same_ambient(*b1, *b2);
  DecisionReport r;
  r.decision = "twisted_iso";
  if (!(b1->subgroup() == b2->subgroup())) {
    set_no(r, "subgroup_mismatch", "H1 differs from H2");
    return r;
  }
  auto f = classes_equivalent(b1->cocycle(), b2->cocycle(), opts);
  if (!f) {
    set_no(r, "class_mismatch", "[sigma1] differs from [sigma2]");
    return r;
  }
  AlgebraMap map = scalar_tga_map(b1, b2, *f);
  r.verified = verify_graded_isomorphism(map);
  if (!r.verified) {
    set_no(r, "no_verifiable_witness", "constructed scalar map failed verification");
    return r;
  }
  r.verdict = Verdict::yes;
  r.tga_witness = TgaEmbedWitness{std::move(*f)};
  r.map = std::move(map);
  return r;
}

// ---------------------------------------------------------- matrix algebras

MatPtr as_matrix_algebra(const TgaPtr& b) { return GradedMatrixAlgebra::create(b, {0}); }

namespace {

void require_normalizer(const GradedMatrixAlgebra& a, const char* which) {
  if (!a.theta_in_normalizer()) {
    throw Error(ErrorKind::HypothesisViolated,
                std::string("theta entries of ") + which + " are not all in the normalizer of its subgroup");
  }
}

// kappa^* sigma2 on H1: (zeta, mu) -> sigma2(delta^-1 zeta delta, delta^-1 mu delta).
ExpCocycle pulled_back(const ExpCocycle& sigma2, const Subgroup& h1, Elem delta) {
  const auto& g = *h1.parent();
  const Subgroup inner = conjugate_subgroup(h1, g.inv(delta));
  return conjugate_class(restrict_to(sigma2, inner), delta);
}

}  // namespace

DecisionReport matrix_embed(const MatPtr& a1, const MatPtr& a2, const CohomologyOptions& opts) {
  require_same_ambient(*a1, *a2);
  require_normalizer(*a1, "the domain");
  require_normalizer(*a2, "the codomain");
  DecisionReport r;
  r.decision = "matrix_embed";
  if (a1->k() > a2->k()) {
    set_no(r, "size", "k1 > k2");
    return r;
  }
  const auto tga = twisted_embed(a1->base(), a2->base(), opts);
  if (!tga.yes()) {
    r.reasons = tga.reasons;
    return r;
  }
  const auto matches = slot_matches(a1->theta(), a2->theta(), a2->subgroup());
  if (matches.empty()) {
    set_no(r, "tuple_matching", "no delta in N_G(H2) and injection alpha with theta1_j in delta H2 theta2_alpha(j)");
    return r;
  }
  for (const auto& m : matches) {
    auto g = classes_equivalent(a1->cocycle(), pulled_back(a2->cocycle(), a1->subgroup(), m.delta), opts);
    if (!g) continue;
    AlgebraMap map = slot_map(a1, a2, m, *g);
    if (!verify_graded_monomorphism(map)) continue;
    r.verdict = Verdict::yes;
    r.verified = true;
    r.matrix_witness = MatrixEmbedWitness{TgaEmbedWitness{std::move(*g)}, m};
    r.map = std::move(map);
    return r;
  }
  set_no(r, "no_verifiable_witness",
         "tuples match, but no delta makes [sigma1] equal to the delta-conjugate of [sigma2] on H1");
  return r;
}

DecisionReport matrix_iso(const MatPtr& a1, const MatPtr& a2, const CohomologyOptions& opts) {
  require_same_ambient(*a1, *a2);
  require_normalizer(*a1, "the first algebra");
  require_normalizer(*a2, "the second algebra");
  DecisionReport r;
  r.decision = "matrix_iso";
  if (a1->k() != a2->k()) {
    set_no(r, "size", "k1 != k2");
    return r;
  }
  const auto tga = twisted_iso(a1->base(), a2->base(), opts);
  if (!tga.yes()) {
    r.reasons = tga.reasons;
    return r;
  }
  // theta1 in Lambda^H_theta2, tried in witness order.
  const auto matches = slot_matches(a1->theta(), a2->theta(), a2->subgroup());
  if (matches.empty()) {
    set_no(r, "tuple_matching", "Lambda orbits of theta1 and theta2 differ");
    return r;
  }
  for (const auto& m : matches) {
    LambdaWitness w(*a2, a1->theta(), m.delta, m.alpha, m.xis);
    auto regraded = regrade_iso(a2, w);  // a2 -> a2' with tuple theta1
    auto f = classes_equivalent(a1->cocycle(), regraded.target->cocycle(), opts);
    if (!f) continue;
    // a1 -> a2': E_ij eta_xi -> f(xi) E_ij eta'_xi, then back to a2.
    SlotMatch same{0, {}, std::vector<Elem>(a1->k(), 0)};
    same.alpha.resize(a1->k());
    std::iota(same.alpha.begin(), same.alpha.end(), 0);
    AlgebraMap map = slot_map(a1, regraded.target, same, *f).then(regraded.map.monomial_inverse());
    if (!verify_graded_isomorphism(map)) continue;
    r.verdict = Verdict::yes;
    r.verified = true;
    r.matrix_witness = MatrixEmbedWitness{TgaEmbedWitness{std::move(*f)}, m};
    r.map = std::move(map);
    return r;
  }
  set_no(r, "no_verifiable_witness", "no delta makes the regraded cocycle cohomologous to sigma1");
  return r;
}

// -------------------------------------------------------------------- tower

TowerReport build_tower(const TgaPtr& b, const std::vector<Subgroup>& chain, int k, int t, std::vector<Elem> theta,
                        const CohomologyOptions& opts) {
  if (chain.empty()) throw Error(ErrorKind::ValidationError, "empty chain");
  if (!(chain.front() == b->subgroup())) {
    throw Error(ErrorKind::ValidationError, "chain must start at the algebra's subgroup");
  }
  const auto& g = *b->ambient();
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    const auto& lo = chain[i];
    const auto& hi = chain[i + 1];
    bool ok = lo.is_subset_of(hi);
    for (Elem x : lo.members())
      for (Elem y : hi.members()) ok = ok && g.mul(x, y) == g.mul(y, x);
    if (!ok) {
      throw Error(ErrorKind::ChainNotCentral, "chain member " + std::to_string(i) + " is not central in the next");
    }
  }
  TowerReport rep;
  rep.chain = chain;
  rep.cocycles.push_back(b->cocycle());
  std::vector<TgaPtr> levels{b};
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    auto ext = extend_class(rep.cocycles.back(), chain[i + 1], opts);
    if (!ext) throw Error(ErrorKind::ExtensionFailed, "no extension found at the working modulus");
    rep.cocycles.push_back(*ext);
    levels.push_back(TwistedGroupAlgebra::create(*ext));
    rep.embeddings.push_back(twisted_embed(levels[i], levels[i + 1], opts));
  }

  if (k < 1 || t < k) throw Error(ErrorKind::ValidationError, "tower sizes need 1 <= k <= t");
  if (theta.empty()) theta.assign(k, 0);
  if (static_cast<int>(theta.size()) != k) throw Error(ErrorKind::LengthMismatch, "theta must have k entries");
  std::vector<Elem> phi = theta;
  phi.resize(t, 0);

  TowerSquare sq;
  const TgaPtr& top = levels.back();
  sq.b = GradedMatrixAlgebra::create(b, theta);
  sq.top_right = GradedMatrixAlgebra::create(top, theta);
  sq.bottom_left = GradedMatrixAlgebra::create(b, phi);
  sq.bottom_right = GradedMatrixAlgebra::create(top, phi);
  auto f = classes_equivalent(b->cocycle(), restrict_to(top->cocycle(), b->subgroup()), opts);
  if (!f) throw Error(ErrorKind::ExtensionFailed, "top cocycle does not restrict to the base class");
  auto inclusion = [](int from, int) {
    SlotMatch m{0, std::vector<int>(from), std::vector<Elem>(from, 0)};
    std::iota(m.alpha.begin(), m.alpha.end(), 0);
    return m;
  };
  sq.top = slot_map(sq.b, sq.top_right, inclusion(k, k), *f);
  sq.left = slot_map(sq.b, sq.bottom_left, inclusion(k, t));
  sq.right = slot_map(sq.top_right, sq.bottom_right, inclusion(k, t));
  sq.bottom = slot_map(sq.bottom_left, sq.bottom_right, inclusion(t, t), *f);
  sq.verified = verify_graded_monomorphism(sq.top) && verify_graded_monomorphism(sq.left) &&
                verify_graded_monomorphism(sq.right) && verify_graded_monomorphism(sq.bottom);
  const auto a = sq.top.then(sq.right), c = sq.left.then(sq.bottom);
  sq.commutes = a.images == c.images;
  rep.square = std::move(sq);
  return rep;
}

// ------------------------------------------------------------------ product

ProductReport product_embed(const std::vector<MatPtr>& bs, const std::vector<MatPtr>& as,
                            const CohomologyOptions& opts) {
  ProductReport rep;
  rep.convention = "for each j in 1..s choose i_j in 1..r with B_j embedding into A_{i_j}";
  for (std::size_t i = 0; i < bs.size(); ++i)
    for (std::size_t j = 0; j < bs.size(); ++j) {
      if (i == j) continue;
      if (matrix_embed(bs[i], bs[j], opts).yes()) {
        rep.warnings.push_back("hypothesis violated: B" + std::to_string(i + 1) + " embeds into B" +
                               std::to_string(j + 1));
      }
    }
  bool all = true;
  bool verified = true;
  for (const auto& bj : bs) {
    int chosen = -1;
    DecisionReport last;
    for (std::size_t i = 0; i < as.size(); ++i) {
      auto r = matrix_embed(bj, as[i], opts);
      if (r.yes()) {
        chosen = static_cast<int>(i);
        last = std::move(r);
        break;
      }
      last = std::move(r);
    }
    rep.assignment.push_back(chosen);
    if (chosen < 0) all = false;
    verified = verified && (chosen < 0 || last.verified);
    rep.components.push_back(std::move(last));
  }
  rep.verdict = all && !bs.empty() ? Verdict::yes : Verdict::no;
  rep.verified = rep.yes() && verified;
  return rep;
}

}  // namespace gradalg
