#include "doctest.h"

#include "triposcope/catalog.hpp"
#include "triposcope/common.hpp"
#include "triposcope/finset.hpp"

using namespace triposcope;

namespace {

FinMap map_of(const SetPtr& dom, const SetPtr& cod,
              const std::vector<std::pair<std::string, std::string>>& assign) {
  std::vector<int> t(static_cast<size_t>(dom->size()), -1);
  for (auto& [a, b] : assign) t[static_cast<size_t>(dom->index(a))] = cod->index(b);
  return make_map(dom, cod, std::move(t));
}

}  // namespace

TEST_CASE("composition: identities, one-element chase, mismatch") {
  auto A = make_set("A", {"a"});
  auto X = make_set("X", {"x"});
  auto U = make_set("U", {"u", "v"});
  auto f = map_of(A, X, {{"a", "x"}});
  auto g = map_of(X, U, {{"x", "u"}});

  CHECK(same_map(compose(f, identity_map(A)), f));
  CHECK(same_map(compose(identity_map(X), f), f));

  auto gf = compose(g, f);
  CHECK(gf.cod->label(gf(0)) == "u");

  CHECK_THROWS_AS(compose(f, g), Error);
}

TEST_CASE("composition is associative (exhaustive, sizes <= 4)") {
  auto A = canonical_set("a", 3);
  auto B = canonical_set("b", 2);
  auto C = canonical_set("c", 4);
  auto D = canonical_set("d", 2);
  Rng rng(11);
  for (int it = 0; it < 200; ++it) {
    std::vector<int> tf(3), tg(2), th(4);
    for (auto& v : tf) v = rng.below(2);
    for (auto& v : tg) v = rng.below(4);
    for (auto& v : th) v = rng.below(2);
    FinMap f{A, B, tf}, g{B, C, tg}, h{C, D, th};
    CHECK(same_map(compose(compose(h, g), f), compose(h, compose(g, f))));
  }
}

TEST_CASE("product with a one-element set is the other factor") {
  auto B = make_set("B", {"x", "y", "z"});
  auto cone = product(terminal_set(), B);
  REQUIRE(cone.apex->size() == B->size());
  for (int i = 0; i < B->size(); ++i)
    CHECK(cone.legs[1](i) == i);  // second leg is a bijection in order
}

TEST_CASE("diagonal and pairing") {
  auto A = make_set("A", {"a", "b"});
  auto d = diagonal(A);
  CHECK(d.cod->label(d(A->index("a"))) == "(a,a)");
  CHECK(d.cod->label(d(A->index("b"))) == "(b,b)");
  CHECK(same_map(pairing(identity_map(A), identity_map(A)), d));

  auto B = make_set("B", {"x"});
  auto f = map_of(A, B, {{"a", "x"}, {"b", "x"}});
  auto cone = product(B, A);
  auto paired = pairing(f, identity_map(A));
  CHECK(same_map(compose(cone.legs[0], paired), f));
  CHECK(same_map(compose(cone.legs[1], paired), identity_map(A)));

  auto C = make_set("C", {"c", "d", "e"});
  CHECK_THROWS_AS(pairing(identity_map(A), identity_map(C)), Error);
}

TEST_CASE("pullback: identity leg, constants, definition unfolding") {
  auto A = make_set("A", {"a", "b"});
  auto X = make_set("X", {"x"});
  auto C = make_set("C", {"c"});

  auto g = map_of(A, X, {{"a", "x"}, {"b", "x"}});
  auto cone = pullback(identity_map(X), g);
  CHECK(cone.apex->size() == A->size());  // apex iso to dom(g)

  auto f2 = map_of(A, X, {{"a", "x"}, {"b", "x"}});
  auto g2 = map_of(C, X, {{"c", "x"}});
  auto both = pullback(f2, g2);
  REQUIRE(both.apex->size() == 2);
  CHECK(both.apex->label(0) == "(a,c)");
  CHECK(both.apex->label(1) == "(b,c)");

  auto cp = pullback(g2, g2);  // both constant to the same point: full product
  CHECK(cp.apex->size() == 1);

  CHECK_THROWS_AS(pullback(g2, map_of(C, C, {{"c", "c"}})), Error);
}

TEST_CASE("pullback universal property: mediator exists, unique, commutes") {
  // all cospans between sets of size <= 2 against all competing cones of size <= 2
  for (int na = 0; na <= 2; ++na)
    for (int nb = 0; nb <= 2; ++nb)
      for (int nc = 1; nc <= 2; ++nc) {
        auto A = canonical_set("a", na);
        auto B = canonical_set("b", nb);
        auto C = canonical_set("c", nc);
        for_each_map(A, C, [&](const FinMap& f) {
          for_each_map(B, C, [&](const FinMap& g) {
            auto cone = pullback(f, g);
            for (int nz = 0; nz <= 2; ++nz) {
              auto Z = canonical_set("z", nz);
              for_each_map(Z, A, [&](const FinMap& u) {
                for_each_map(Z, B, [&](const FinMap& v) {
                  if (!same_map(compose(f, u), compose(g, v))) return;
                  std::vector<FinMap> legs{u, v};
                  FinMap med = cone.mediator(legs);
                  CHECK(same_map(compose(cone.legs[0], med), u));
                  CHECK(same_map(compose(cone.legs[1], med), v));
                  // uniqueness among all maps commuting with the legs
                  int count = 0;
                  for_each_map(Z, cone.apex, [&](const FinMap& w) {
                    if (same_map(compose(cone.legs[0], w), u) &&
                        same_map(compose(cone.legs[1], w), v))
                      ++count;
                  });
                  CHECK(count == 1);
                });
              });
            }
          });
        });
      }
}

TEST_CASE("product and pullback are stable under relabeling") {
  auto A1 = make_set("A", {"a", "b"});
  auto A2 = make_set("A'", {"p", "q"});
  auto C1 = make_set("C", {"c", "d"});
  auto C2 = make_set("C'", {"u", "v"});
  auto f1 = map_of(A1, C1, {{"a", "c"}, {"b", "c"}});
  auto f2 = map_of(A2, C2, {{"p", "u"}, {"q", "u"}});
  auto pb1 = pullback(f1, identity_map(C1));
  auto pb2 = pullback(f2, identity_map(C2));
  REQUIRE(pb1.apex->size() == pb2.apex->size());
  for (int i = 0; i < pb1.apex->size(); ++i) {
    CHECK(pb1.legs[0](i) == pb2.legs[0](i));
    CHECK(pb1.legs[1](i) == pb2.legs[1](i));
  }
}

TEST_CASE("map enumeration: counts and determinism") {
  auto A2 = canonical_set("x", 2);
  auto B3 = canonical_set("y", 3);
  CHECK(all_maps(A2, B3).size() == 9);

  auto E = canonical_set("e", 0);
  CHECK(all_maps(A2, E).empty());
  CHECK(all_maps(E, B3).size() == 1);
  CHECK(all_maps(E, E).size() == 1);

  auto run1 = all_maps(A2, B3);
  auto run2 = all_maps(A2, B3);
  REQUIRE(run1.size() == run2.size());
  for (size_t i = 0; i < run1.size(); ++i) CHECK(same_map(run1[i], run2[i]));
  for (size_t i = 0; i < run1.size(); ++i)
    for (size_t j = i + 1; j < run1.size(); ++j) CHECK(!same_map(run1[i], run1[j]));
}

TEST_CASE("sets validate distinct labels") {
  CHECK_THROWS_AS(make_set("S", {"a", "a"}), Error);
}
