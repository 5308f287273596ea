#include <set>

#include "doctest.h"

#include "gradalg/errors.hpp"
#include "gradalg/group.hpp"

using namespace gradalg;

namespace {

// Subgroups by closing every subset; fine up to order 8.
std::set<std::vector<Elem>> brute_subgroups(const FiniteGroup& g) {
  const int n = g.order();
  std::set<std::vector<Elem>> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (!(mask & 1u)) continue;
    bool closed = true;
    for (int a = 0; a < n && closed; ++a)
      for (int b = 0; b < n && closed; ++b)
        if ((mask >> a & 1u) && (mask >> b & 1u) && !(mask >> g.mul(a, b) & 1u)) closed = false;
    if (!closed) continue;
    std::vector<Elem> m;
    for (int a = 0; a < n; ++a)
      if (mask >> a & 1u) m.push_back(a);
    out.insert(m);
  }
  return out;
}

std::vector<Elem> brute_normalizer(const FiniteGroup& g, const std::vector<Elem>& h) {
  const std::set<Elem> hs(h.begin(), h.end());
  std::vector<Elem> out;
  for (Elem x = 0; x < g.order(); ++x) {
    bool ok = true;
    for (Elem y : h) ok &= hs.count(g.conj(y, x)) > 0;
    if (ok) out.push_back(x);
  }
  return out;
}

}  // namespace

TEST_CASE("cyclic and product tables") {
  auto c4 = build_group("C4");
  for (Elem i = 0; i < 4; ++i)
    for (Elem j = 0; j < 4; ++j) CHECK(c4->mul(i, j) == (i + j) % 4);
  auto v4 = build_group("C2xC2");
  for (Elem x = 1; x < 4; ++x) CHECK(v4->element_order(x) == 2);
  CHECK(v4->label(1) == "01");
  CHECK(v4->label(2) == "10");
  auto s3 = build_group("S3");
  CHECK(s3->order() == 6);
  CHECK_FALSE(s3->is_abelian());
  CHECK(build_group("D4")->order() == 8);
  CHECK(build_group("Q8")->exponent() == 4);
}

TEST_CASE("quaternion relations") {
  auto q = build_group("Q8");
  const Elem m1 = *q->find_label("-1"), i = *q->find_label("i"), j = *q->find_label("j"), k = *q->find_label("k");
  CHECK(q->mul(i, i) == m1);
  CHECK(q->mul(j, j) == m1);
  CHECK(q->mul(i, j) == k);
  CHECK(q->mul(j, i) == *q->find_label("-k"));
}

TEST_CASE("table validation") {
  CHECK_THROWS_AS(FiniteGroup::from_table("bad", {{0, 1}, {1, 1}}), Error);
  CHECK_THROWS_AS(FiniteGroup::from_table("bad", {{0, 1, 2}, {1, 2, 0}, {2, 1, 0}}), Error);
  CHECK_THROWS_AS(build_group("C65"), Error);
  CHECK_NOTHROW(build_group("C65", 65));
  CHECK_THROWS_AS(build_group("X3"), Error);
  CHECK_THROWS_AS(Subgroup(build_group("C4"), {0, 1}), Error);
}

TEST_CASE("subgroup enumeration agrees with brute-force closure") {
  for (const char* name : {"C2xC2", "C4", "S3", "C6", "D4", "Q8", "C2xC4", "C2xC2xC2"}) {
    auto g = build_group(name);
    std::set<std::vector<Elem>> got;
    for (const auto& h : enumerate_subgroups(g)) got.insert(h.members());
    CHECK_MESSAGE(got == brute_subgroups(*g), name);
  }
  CHECK(enumerate_subgroups(build_group("C2xC2")).size() == 5);
  CHECK(enumerate_subgroups(build_group("C4")).size() == 3);
  CHECK(enumerate_subgroups(build_group("S3")).size() == 6);
}

TEST_CASE("normalizers and centralizers") {
  for (const char* name : {"S3", "D4", "Q8", "S4"}) {
    auto g = build_group(name);
    for (const auto& h : enumerate_subgroups(g)) CHECK(normalizer(g, h).members() == brute_normalizer(*g, h.members()));
  }
  auto s3 = build_group("S3");
  const Subgroup h(s3, {0, *s3->find_label("(12)")});
  CHECK(normalizer(s3, h) == h);
  CHECK(normalizer(s3, Subgroup::trivial(s3)).is_whole());
  auto v4 = build_group("C2xC2");
  CHECK(normalizer(v4, Subgroup(v4, {0, 1})).is_whole());
  CHECK(center(build_group("D4")).order() == 2);
  CHECK(centralizer(s3, h) == h);
}

TEST_CASE("subgroup relations") {
  auto v4 = build_group("C2xC2");
  auto r = subgroup_relations(v4, Subgroup(v4, {0, 1}));
  CHECK(r.is_normal);
  CHECK(r.is_central);
  CHECK(r.index == 2);
  CHECK(r.transversal == std::vector<Elem>{0, 2});
  auto s3 = build_group("S3");
  auto r2 = subgroup_relations(s3, Subgroup(s3, {0, *s3->find_label("(12)")}));
  CHECK_FALSE(r2.is_normal);
  CHECK_FALSE(r2.is_central);
  CHECK(r2.index == 3);
  auto whole = subgroup_relations(s3, Subgroup::whole(s3));
  CHECK(whole.index == 1);
  CHECK(whole.transversal == std::vector<Elem>{0});
}

TEST_CASE("all subgroups normal") {
  CHECK(all_subgroups_normal(build_group("C2xC4")));
  CHECK(all_subgroups_normal(build_group("Q8")));
  CHECK_FALSE(all_subgroups_normal(build_group("S3")));
  CHECK_FALSE(all_subgroups_normal(build_group("D4")));
}

TEST_CASE("conjugate subgroup") {
  auto s3 = build_group("S3");
  const Elem t12 = *s3->find_label("(12)"), t13 = *s3->find_label("(13)"), t23 = *s3->find_label("(23)");
  CHECK(conjugate_subgroup(Subgroup(s3, {0, t12}), t13).members() == std::vector<Elem>{0, t23});
}
