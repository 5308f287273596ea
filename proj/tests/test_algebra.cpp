#include "doctest.h"

#include "gradalg/algebra.hpp"
#include "gradalg/errors.hpp"
#include "gradalg/graded_matrix.hpp"
#include "gradalg/sweep.hpp"

using namespace gradalg;

namespace {

CycloNumber num(const Element& x, long v) { return CycloNumber(x.field(), v); }

// Reports a wrong degree for one basis element.
class CorruptDegrees : public GradedMatrixAlgebra {
 public:
  CorruptDegrees(TgaPtr base, std::vector<Elem> theta, int bad) : GradedMatrixAlgebra(std::move(base), std::move(theta)), bad_(bad) {}
  Elem degree(int b) const override {
    const Elem d = GradedMatrixAlgebra::degree(b);
    return b == bad_ ? ambient()->mul(d, 1) : d;
  }

 private:
  int bad_;
};

}  // namespace

TEST_CASE("twisted products") {
  auto f = TwistedGroupAlgebra::untwisted(Subgroup::whole(build_group("C2")));
  CHECK(f->eta(1) * f->eta(1) == f->eta(0));

  auto a = TwistedGroupAlgebra::create(example_bilinear_cocycle());
  const auto e10 = a->eta(2), e01 = a->eta(1), e11 = a->eta(3);
  CHECK(e10 * e01 == -e11);
  CHECK(e01 * e10 == e11);
  CHECK(e11 * e11 == -a->eta(0));
  for (Elem x = 0; x < 4; ++x)
    for (Elem y = 0; y < 4; ++y)
      for (Elem z = 0; z < 4; ++z) CHECK((a->eta(x) * a->eta(y)) * a->eta(z) == a->eta(x) * (a->eta(y) * a->eta(z)));
}

TEST_CASE("units") {
  auto a = TwistedGroupAlgebra::create(example_bilinear_cocycle());
  CHECK(a->unit() == a->eta(0));
  // r == 1 everywhere: d of the constant function 1, so sigma(e, e) = -1
  const auto h = example_bilinear_cocycle().domain();
  auto b = TwistedGroupAlgebra::create(ExpCocycle(h, 2, std::vector<std::int64_t>(16, 1)));
  CHECK(b->unit() == -b->eta(0));
  for (Elem x = 0; x < 4; ++x) {
    CHECK(b->unit() * b->eta(x) == b->eta(x));
    CHECK(b->eta(x) * b->unit() == b->eta(x));
  }
  CHECK_THROWS_AS(TwistedGroupAlgebra::create(ExpCocycle::from_matrix(h, 2, {{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 1, 0, 0}})),
                  Error);
}

TEST_CASE("homogeneous inverses") {
  auto a = TwistedGroupAlgebra::create(example_bilinear_cocycle());
  CHECK(a->homogeneous_inverse(a->eta(0)) == a->eta(0));
  CHECK(a->homogeneous_inverse(a->eta(3)) == -a->eta(3));
  const auto two = a->eta(2).scaled(num(a->eta(2), 2));
  const auto half = a->eta(2).scaled(CycloNumber(a->field(), 1) * mpq_class(1, 2));
  CHECK(a->homogeneous_inverse(two) == half);
  CHECK(two * half == a->unit());
  CHECK_THROWS_AS(a->homogeneous_inverse(a->zero()), Error);
  CHECK_THROWS_AS(a->homogeneous_inverse(a->eta(1) + a->eta(2)), Error);
}

TEST_CASE("division gradings") {
  CHECK(is_division_graded(*TwistedGroupAlgebra::create(example_bilinear_cocycle())));
  auto c2 = build_group("C2");
  CHECK(is_division_graded(*TwistedGroupAlgebra::untwisted(Subgroup::trivial(c2))));
  auto m = GradedMatrixAlgebra::create(TwistedGroupAlgebra::untwisted(Subgroup::trivial(c2)), {0, 1});
  CHECK_FALSE(is_division_graded(*m));
}

TEST_CASE("cross-algebra arithmetic is rejected") {
  auto a = TwistedGroupAlgebra::untwisted(Subgroup::whole(build_group("C2")));
  auto b = TwistedGroupAlgebra::untwisted(Subgroup::whole(build_group("C2")));
  CHECK_THROWS_AS(a->eta(0) + b->eta(0), Error);
  CHECK_THROWS_AS(a->eta(0) * b->eta(0), Error);
}

TEST_CASE("matrix degrees and support") {
  auto c4 = build_group("C4");
  auto m = GradedMatrixAlgebra::create(TwistedGroupAlgebra::untwisted(Subgroup::trivial(c4)), {0, 1});
  CHECK(m->degree_of({0, 1, 0}) == 1);
  CHECK(m->degree_of({1, 0, 0}) == 3);
  CHECK(m->degree_of({0, 0, 0}) == 0);
  CHECK(m->degree_of({1, 1, 0}) == 0);
  CHECK(m->support() == std::vector<Elem>{0, 1, 3});
  CHECK_THROWS_AS(m->degree_of({2, 0, 0}), Error);

  auto s3 = build_group("S3");
  const Elem t12 = *s3->find_label("(12)"), t13 = *s3->find_label("(13)"), t23 = *s3->find_label("(23)");
  const Subgroup h(s3, {0, t12});
  auto a = GradedMatrixAlgebra::create(TwistedGroupAlgebra::untwisted(h), {t13, t13});
  CHECK(a->degree_of({0, 0, t12}) == t23);
  CHECK(a->support() == std::vector<Elem>{0, t23});
  auto k1 = GradedMatrixAlgebra::create(TwistedGroupAlgebra::untwisted(h), {0});
  CHECK(k1->support() == h.members());
}

TEST_CASE("matrix units multiply") {
  auto c2 = build_group("C2");
  auto m = GradedMatrixAlgebra::create(TwistedGroupAlgebra::untwisted(Subgroup::trivial(c2)), {0, 1});
  CHECK(m->unit_at(0, 0, 0) * m->unit_at(0, 1, 0) == m->unit_at(0, 1, 0));
  CHECK(m->unit_at(0, 1, 0) * m->unit_at(1, 0, 0) == m->unit_at(0, 0, 0));
  CHECK(m->unit_at(1, 0, 0) * m->unit_at(0, 1, 0) == m->unit_at(1, 1, 0));
  CHECK((m->unit_at(0, 1, 0) * m->unit_at(0, 1, 0)).is_zero());
  CHECK(m->unit() == m->unit_at(0, 0, 0) + m->unit_at(1, 1, 0));
}

TEST_CASE("component dimensions match a direct count") {
  auto d4 = build_group("D4");
  for (const auto& h : enumerate_subgroups(d4)) {
    auto m = GradedMatrixAlgebra::create(TwistedGroupAlgebra::untwisted(h), {0, 3, 5});
    CHECK(m->dim() == 9 * h.order());
    for (Elem g = 0; g < 8; ++g) {
      int count = 0;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          for (Elem z : h.members())
            count += d4->mul(d4->inv(m->theta()[i]), d4->mul(z, m->theta()[j])) == g;
      CHECK(static_cast<int>(m->component(g).size()) == count);
    }
  }
}

TEST_CASE("grading verification") {
  auto base = TwistedGroupAlgebra::create(example_bilinear_cocycle());
  CHECK(verify_grading(*base));
  CHECK(verify_grading(*GradedMatrixAlgebra::create(base, {0, 1, 3})));
  auto bad = std::make_shared<CorruptDegrees>(base, std::vector<Elem>{0, 2}, 5);
  CHECK_FALSE(verify_grading(*bad));
  auto fine = std::make_shared<CorruptDegrees>(base, std::vector<Elem>{0, 2}, -1);
  CHECK(verify_grading(*fine));
}
