#include <algorithm>
#include <random>

#include "doctest.h"

#include "gradalg/graded_pi.hpp"
#include "gradalg/sweep.hpp"

using namespace gradalg;

namespace {

CycloNumber q(const FieldPtr& f, long v) { return CycloNumber(f, v); }

GradedMultilinearPoly two_term(Elem g1, Elem g2, const FieldPtr& f, long sign) {
  GradedMultilinearPoly p{{{g1, g2}}, {}};
  p.coeffs.emplace(std::vector<int>{0, 1}, q(f, 1));
  p.coeffs.emplace(std::vector<int>{1, 0}, q(f, sign));
  return p;
}

// Random homogeneous element of degree g.
Element random_component(const GradedAlgebra& a, Elem g, std::mt19937_64& rng) {
  Element x = a.zero();
  for (int b : a.component(g)) x = x + a.basis(b, CycloNumber(a.field(), std::uniform_int_distribution<long>(-3, 3)(rng)));
  return x;
}

}  // namespace

TEST_CASE("evaluation") {
  auto fz2 = TwistedGroupAlgebra::untwisted(Subgroup::whole(build_group("C2")));
  const auto comm = two_term(1, 1, fz2->field(), -1);
  for (Elem a = 0; a < 2; ++a)
    for (Elem b = 0; b < 2; ++b) {
      GradedMultilinearPoly p = comm;
      p.assignment.degs = {a, b};
      CHECK(evaluate(p, *fz2, {fz2->eta(a), fz2->eta(b)}).is_zero());
    }

  auto s = TwistedGroupAlgebra::create(example_bilinear_cocycle());
  auto fv4 = TwistedGroupAlgebra::untwisted(Subgroup::whole(s->subgroup().parent()));
  const auto anti = two_term(2, 1, s->field(), 1);
  CHECK(evaluate(anti, *s, {s->eta(2), s->eta(1)}).is_zero());
  CHECK(evaluate(anti, *fv4, {fv4->eta(2), fv4->eta(1)}) == fv4->eta(3, q(fv4->field(), 2)));
}

TEST_CASE("identity spaces") {
  auto f = TwistedGroupAlgebra::untwisted(Subgroup::whole(build_group("C1")));
  auto sp = identity_space(*f, {{0, 0}});
  CHECK(sp.monomials == 2);
  CHECK(sp.rank == 1);
  REQUIRE(sp.basis.size() == 1);
  CHECK(sp.basis[0].coeffs.at({0, 1}).is_one());
  CHECK(sp.basis[0].coeffs.at({1, 0}) == q(f->field(), -1));
  CHECK(sp.basis[0].to_string() == "x1x2 - x2x1");

  auto s = TwistedGroupAlgebra::create(example_bilinear_cocycle());
  auto anti = identity_space(*s, {{2, 1}});
  REQUIRE(anti.basis.size() == 1);
  CHECK(anti.basis[0].to_string() == "x1x2 + x2x1");

  // a degree outside the support: everything is an identity
  auto f01 = TwistedGroupAlgebra::untwisted(Subgroup(s->subgroup().parent(), {0, 1}));
  auto full = identity_space(*f01, {{2, 0}});
  CHECK(full.rank == 0);
  CHECK(full.basis.size() == 2);
}

TEST_CASE("identity spaces are kernels") {
  std::mt19937_64 rng(17);
  auto d4 = build_group("D4");
  auto m = GradedMatrixAlgebra::create(TwistedGroupAlgebra::untwisted(center(d4)), {0, 1});
  for (int t = 0; t < 12; ++t) {
    const auto supp = m->support();
    DegreeAssignment d;
    const int n = 2 + t % 2;
    for (int i = 0; i < n; ++i) d.degs.push_back(supp[rng() % supp.size()]);
    auto sp = identity_space(*m, d);
    CHECK(sp.rank + static_cast<int>(sp.basis.size()) == sp.monomials);
    for (const auto& p : sp.basis)
      for (int r = 0; r < 20; ++r) {
        std::vector<Element> subst;
        for (Elem g : d.degs) subst.push_back(random_component(*m, g, rng));
        CHECK(evaluate(p, *m, subst).is_zero());
      }
  }
}

TEST_CASE("relabeling variables permutes identity spaces") {
  auto s = TwistedGroupAlgebra::create(example_bilinear_cocycle());
  auto m = GradedMatrixAlgebra::create(s, {0, 1});
  DegreeAssignment d{{1, 2, 3}};
  const auto base = identity_space(*m, d);
  std::vector<int> perm{0, 1, 2};
  while (std::next_permutation(perm.begin(), perm.end())) {
    DegreeAssignment pd;
    for (int i = 0; i < 3; ++i) pd.degs.push_back(d.degs[perm[i]]);
    const auto sp = identity_space(*m, pd);
    CHECK(sp.rank == base.rank);
    // x_i of the relabeled assignment is x_{perm(i)} of the original
    for (const auto& p : base.basis) {
      GradedMultilinearPoly r{pd, {}};
      std::vector<int> inv(3);
      for (int i = 0; i < 3; ++i) inv[perm[i]] = i;
      for (const auto& [w, c] : p.coeffs) {
        std::vector<int> rw;
        for (int v : w) rw.push_back(inv[v]);
        r.coeffs.emplace(rw, c);
      }
      for (Elem a = 0; a < 4; ++a) {
        std::vector<Element> subst;
        bool ok = true;
        for (Elem g : pd.degs) {
          const auto comp = m->component(g);
          if (comp.empty()) ok = false;
          else subst.push_back(m->basis(comp[a % comp.size()]));
        }
        if (ok) CHECK(evaluate(r, *m, subst).is_zero());
      }
    }
  }
}

TEST_CASE("containment") {
  auto s = TwistedGroupAlgebra::create(example_bilinear_cocycle());
  const auto& v4 = s->subgroup().parent();
  auto fv4 = TwistedGroupAlgebra::untwisted(Subgroup::whole(v4));
  auto f01 = TwistedGroupAlgebra::untwisted(Subgroup(v4, {0, 1}));

  auto c = multilinear_containment(*s, *f01, {3, 4, kDefaultWorkBudget});
  CHECK(c.contained);
  CHECK(c.skipped.empty());
  CHECK(std::all_of(c.results.begin(), c.results.end(), [](const AssignmentResult& r) { return r.contained; }));

  auto n = multilinear_containment(*fv4, *s, {2, 4, kDefaultWorkBudget});
  CHECK_FALSE(n.contained);
  bool found_commutator = false;
  for (const auto& r : n.results) {
    if (r.contained) continue;
    REQUIRE(r.separating);
    CHECK(r.separating->assignment.n() == 2);
    found_commutator |= r.separating->to_string() == "x1x2 - x2x1";
  }
  CHECK(found_commutator);

  CHECK(multilinear_containment(*s, *s, {3, 4, kDefaultWorkBudget}).contained);

  // a tiny budget skips work instead of guessing
  auto skipped = multilinear_containment(*s, *fv4, {3, 4, 1});
  CHECK_FALSE(skipped.skipped.empty());
}

TEST_CASE("product identity spaces") {
  auto s = TwistedGroupAlgebra::create(example_bilinear_cocycle());
  auto fv4 = TwistedGroupAlgebra::untwisted(Subgroup::whole(s->subgroup().parent()));
  for (Elem a = 0; a < 4; ++a)
    for (Elem b = 0; b < 4; ++b)
      for (Elem c = 0; c < 4; ++c) {
        const DegreeAssignment d{{a, b, c}};
        const auto pair = product_identity_space({s, s}, d);
        const auto one = identity_space(*s, d);
        CHECK(pair.rank == one.rank);
        REQUIRE(pair.basis.size() == one.basis.size());
        for (std::size_t i = 0; i < one.basis.size(); ++i) CHECK(pair.basis[i].coeffs == one.basis[i].coeffs);
      }
  CHECK(product_identity_space({fv4, s}, {{2, 1}}).basis.empty());
  const auto alone = product_identity_space({fv4}, {{2, 1}});
  CHECK(alone.basis.size() == identity_space(*fv4, {{2, 1}}).basis.size());
}
