#include "doctest.h"

#include <set>

#include "triposcope/catalog.hpp"
#include "triposcope/order.hpp"

using namespace triposcope;

TEST_CASE("two-chain is a frame") {
  auto f = two_chain();
  CHECK(f->size() == 2);
  CHECK(f->bottom() != f->top());
  CHECK(f->imp(f->top(), f->bottom()) == f->bottom());
  CHECK(f->imp(f->bottom(), f->bottom()) == f->top());
}

TEST_CASE("diamond M3 is a lattice but not distributive") {
  // bottom below three incomparable middles below top
  auto p = poset_from_pairs({"bot", "x", "y", "z", "top"},
                            {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}});
  auto lat = complete_to_lattice(p);
  CHECK_THROWS_WITH_AS(check_frame(lat), doctest::Contains("distributivity fails"), Error);
}

TEST_CASE("vee shape is not a lattice: l and r have no meet") {
  auto lat_attempt = [] { return complete_to_lattice(vee_poset()); };
  CHECK_THROWS_WITH_AS(lat_attempt(), doctest::Contains("no meet"), Error);
}

TEST_CASE("empty poset is not a lattice") {
  CHECK_THROWS_AS(complete_to_lattice(poset_from_pairs({}, {})), Error);
}

TEST_CASE("poset_from_pairs takes closure and rejects cycles") {
  auto p = poset_from_pairs({"a", "b", "c"}, {{0, 1}, {1, 2}});
  CHECK(p->le(0, 2));  // transitive closure
  CHECK_THROWS_WITH_AS(poset_from_pairs({"a", "b"}, {{0, 1}, {1, 0}}),
                       doctest::Contains("antisymmetry"), Error);
}

TEST_CASE("heyting adjunction holds in every catalog frame (exhaustive)") {
  for (const auto& f : frames_up_to_5())
    for (int a = 0; a < f->size(); ++a)
      for (int b = 0; b < f->size(); ++b)
        for (int c = 0; c < f->size(); ++c)
          CHECK(f->le(c, f->imp(a, b)) == f->le(f->meet(c, a), b));
}

TEST_CASE("binary distributivity implies the subset form (frames <= 6 elements)") {
  std::vector<FramePtr> frames = frames_up_to_5();
  frames.push_back(chain_frame(6));
  frames.push_back(lower_sets(poset_from_pairs({"a", "b"}, {{0, 1}}))
                       .frame);  // 3-chain again, cheap
  for (const auto& f : frames) {
    int n = f->size();
    if (n > 6) continue;
    for (int a = 0; a < n; ++a)
      for (std::uint32_t s = 0; s < (1u << n); ++s) {
        int joined = f->bottom();
        int distributed = f->bottom();
        for (int x = 0; x < n; ++x)
          if (s & (1u << x)) {
            joined = f->join(joined, x);
            distributed = f->join(distributed, f->meet(a, x));
          }
        CHECK(f->meet(a, joined) == distributed);
      }
  }
}

TEST_CASE("lower sets: powerset of an antichain, vee, empty poset") {
  auto low2 = lower_sets(antichain_poset(2));
  CHECK(low2.frame->size() == 4);

  auto lowv = lower_sets(vee_poset());
  REQUIRE(lowv.frame->size() == 5);
  std::set<std::string> labels(lowv.frame->poset()->elements.begin(),
                               lowv.frame->poset()->elements.end());
  CHECK(labels == std::set<std::string>{"{}", "{l}", "{r}", "{l,r}", "{l,r,top}"});

  auto low0 = lower_sets(poset_from_pairs({}, {}));
  CHECK(low0.frame->size() == 1);

  // the embedding sends p to its principal lower set
  auto p = vee_poset();
  CHECK(lowv.frame->label(lowv.embedding(p->index("l"))) == "{l}");
  CHECK(lowv.frame->label(lowv.embedding(p->index("top"))) == "{l,r,top}");
}

TEST_CASE("lower-set frames have enough join-primes, the principal ones") {
  for (int n = 0; n <= 4; ++n) {
    auto low = lower_sets(antichain_poset(n));
    CHECK(has_enough_join_primes(*low.frame));
  }
  auto lowv = lower_sets(vee_poset());
  auto p = vee_poset();
  CHECK(has_enough_join_primes(*lowv.frame));
  for (int a = 0; a < p->size(); ++a)
    CHECK(is_join_prime(lowv.embedding(a), *lowv.frame));
  CHECK(!is_join_prime(lowv.frame->index("{l,r}"), *lowv.frame));
  CHECK(!is_join_prime(lowv.frame->bottom(), *lowv.frame));
}

TEST_CASE("binary join-primality agrees with the subset-quantified form (<= 6 elements)") {
  std::vector<FramePtr> frames = frames_up_to_5();
  frames.push_back(chain_frame(6));
  for (const auto& f : frames) {
    int n = f->size();
    for (int a = 0; a < n; ++a) {
      bool subset_prime = (a != f->bottom());
      for (std::uint32_t s = 0; s < (1u << n) && subset_prime; ++s) {
        int joined = f->bottom();
        bool hit = false;
        for (int x = 0; x < n; ++x)
          if (s & (1u << x)) {
            joined = f->join(joined, x);
            if (f->le(a, x)) hit = true;
          }
        if (f->le(a, joined) && !hit) subset_prime = false;
      }
      CHECK(is_join_prime(a, *f) == subset_prime);
    }
  }
}

TEST_CASE("map classification") {
  auto lowv = lower_sets(vee_poset());
  auto two = two_chain();

  CHECK(map_class(*two, *two,
                  make_monotone(two->poset(), two->poset(), {0, 1})) ==
        MapClass::frame_morphism);

  // f : low(vee) -> 2 with f^{-1}(1) = { {l,r}, {l,r,top} }
  const auto& lv = *lowv.frame;
  std::vector<int> t(static_cast<size_t>(lv.size()), 0);
  int lr = lv.index("{l,r}");
  for (int i = 0; i < lv.size(); ++i)
    if (lv.le(lr, i)) t[static_cast<size_t>(i)] = 1;
  auto f = make_monotone(lv.poset(), two->poset(), t);
  CHECK(map_class(lv, *two, f) == MapClass::meet_preserving);
  // join failure: {l} \/ {r} maps to 1 while images join to 0
  CHECK(f(lv.index("{l}")) == 0);
  CHECK(f(lv.index("{r}")) == 0);
  CHECK(f(lr) == 1);

  // constant to bottom is monotone only (when top != bottom upstream)
  auto cbot = make_monotone(lv.poset(), two->poset(),
                            std::vector<int>(static_cast<size_t>(lv.size()), 0));
  CHECK(map_class(lv, *two, cbot) == MapClass::monotone);
}

TEST_CASE("monotone map enumeration: counts and order preservation") {
  auto one = chain_poset(1);
  auto two = chain_poset(2);
  auto low2 = lower_sets(antichain_poset(2)).frame->poset();

  CHECK(all_monotone_maps(one, low2).size() == static_cast<size_t>(low2->size()));
  CHECK(all_monotone_maps(two, two).size() == 3);
  CHECK(all_monotone_maps(low2, one).size() == 1);
  CHECK(all_monotone_maps(poset_from_pairs({}, {}), two).size() == 1);

  for (const auto& m : all_monotone_maps(low2, two)) {
    for (int a = 0; a < low2->size(); ++a)
      for (int b = 0; b < low2->size(); ++b)
        if (low2->le(a, b)) CHECK(two->le(m(a), m(b)));
  }
}

TEST_CASE("frames up to 5 catalog is sane") {
  CHECK(frames_up_to_5().size() == 8);
  for (const auto& f : frames_up_to_5()) {
    CHECK(f->size() <= 5);
    CHECK(has_enough_join_primes(*f));
  }
}

TEST_CASE("labeled poset enumeration counts") {
  CHECK(all_posets_on(0).size() == 1);
  CHECK(all_posets_on(1).size() == 1);
  CHECK(all_posets_on(2).size() == 3);
  CHECK(all_posets_on(3).size() == 19);
}
