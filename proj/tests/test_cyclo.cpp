#include <random>

#include "doctest.h"

#include "gradalg/cyclo.hpp"
#include "gradalg/errors.hpp"

using namespace gradalg;

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_polynomial(1) == IntPoly{-1, 1});
  CHECK(cyclotomic_polynomial(4) == IntPoly{1, 0, 1});
  CHECK(cyclotomic_polynomial(6) == IntPoly{1, -1, 1});
  CHECK(cyclotomic_polynomial(12) == IntPoly{1, 0, -1, 0, 1});
  // Phi_105 is the first with a coefficient -2
  const auto p = cyclotomic_polynomial(105);
  CHECK(p.size() == 49);
  CHECK(std::find(p.begin(), p.end(), -2) != p.end());
}

TEST_CASE("roots of unity") {
  auto f4 = CycloField::get(4);
  auto z = CycloNumber::root_of_unity(f4, 1);
  CHECK(z * z == CycloNumber(f4, -1));
  CHECK(CycloNumber::root_of_unity(f4, 0).is_one());
  CHECK(CycloNumber::root_of_unity(CycloField::get(2), 1) == CycloNumber(CycloField::get(2), -1));
  auto f3 = CycloField::get(3);
  auto w = CycloNumber::root_of_unity(f3, 1);
  CHECK((CycloNumber::one(f3) + w + w * w).is_zero());
  for (int m : {5, 8, 12, 15}) {
    auto f = CycloField::get(m);
    for (long k = 0; k < m; ++k) {
      CHECK(CycloNumber::root_of_unity(f, k).inv() == CycloNumber::root_of_unity(f, m - k));
      CHECK(CycloNumber::root_of_unity(f, k).times_root(m - k).is_one());
    }
  }
}

TEST_CASE("field axioms on random elements") {
  std::mt19937_64 rng(3);
  auto rand_num = [&](const FieldPtr& f) {
    std::vector<mpq_class> c;
    for (int i = 0; i < f->degree(); ++i) {
      c.emplace_back(std::uniform_int_distribution<int>(-9, 9)(rng), std::uniform_int_distribution<int>(1, 5)(rng));
      c.back().canonicalize();
    }
    return CycloNumber(f, c);
  };
  for (int m : {3, 7, 8, 12, 20}) {
    auto f = CycloField::get(m);
    for (int t = 0; t < 20; ++t) {
      auto a = rand_num(f), b = rand_num(f), c = rand_num(f);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * b == b * a);
      if (!a.is_zero()) CHECK(a * a.inv() == CycloNumber::one(f));
    }
  }
  CHECK_THROWS_AS(CycloNumber::zero(CycloField::get(5)).inv(), Error);
}

TEST_CASE("lifting between fields") {
  auto f4 = CycloField::get(4), f12 = CycloField::get(12), f6 = CycloField::get(6);
  auto i = CycloNumber::root_of_unity(f4, 1);
  auto lifted = i.lifted(f12);
  CHECK(lifted == CycloNumber::root_of_unity(f12, 3));
  CHECK_THROWS_AS(i.lifted(f6), Error);
  CHECK(common_field(f4, f6)->modulus() == 12);
  CHECK_THROWS_AS(i + CycloNumber::one(f6), Error);
}
