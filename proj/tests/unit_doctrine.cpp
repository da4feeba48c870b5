#include "doctest.h"

#include "triposcope/catalog.hpp"
#include "triposcope/doctrine.hpp"

using namespace triposcope;

namespace {

Predicate random_predicate(Rng& rng, const SetPtr& c, const FramePtr& f) {
  std::vector<int> v(static_cast<size_t>(c->size()));
  for (auto& x : v) x = rng.below(f->size());
  return make_predicate(c, f, std::move(v));
}

FinMap random_map(Rng& rng, const SetPtr& a, const SetPtr& b) {
  std::vector<int> t(static_cast<size_t>(a->size()));
  for (auto& x : t) x = rng.below(b->size());
  return make_map(a, b, std::move(t));
}

}  // namespace

TEST_CASE("reindexing: identity, constants, collapse") {
  auto f = bool4_frame();
  auto A = make_set("A", {"a", "b"});
  auto X = make_set("X", {"x"});
  Rng rng(3);
  auto phi = random_predicate(rng, A, f);
  CHECK(pred_eq(reindex(identity_map(A), phi), phi));

  auto psi = make_predicate(X, f, {2});
  auto collapse = make_map(A, X, {0, 0});
  auto pulled = reindex(collapse, psi);
  CHECK(pulled.at(0) == 2);
  CHECK(pulled.at(1) == 2);

  auto konst = constant_predicate(X, f, 1);
  CHECK(pred_eq(reindex(collapse, konst), constant_predicate(A, f, 1)));

  CHECK_THROWS_AS(reindex(collapse, phi), Error);
}

TEST_CASE("quantifiers along identity and over empty fibers") {
  auto f = bool4_frame();
  auto A = make_set("A", {"a", "b"});
  auto X = make_set("X", {"x", "y"});
  Rng rng(4);
  auto phi = random_predicate(rng, A, f);
  CHECK(pred_eq(exists_along(identity_map(A), phi), phi));
  CHECK(pred_eq(forall_along(identity_map(A), phi), phi));

  // both a,b map to x; the fiber over y is empty
  auto m = make_map(A, X, {0, 0});
  auto ex = exists_along(m, phi);
  auto fa = forall_along(m, phi);
  CHECK(ex.at(0) == f->join(phi.at(0), phi.at(1)));
  CHECK(ex.at(1) == f->bottom());
  CHECK(fa.at(0) == f->meet(phi.at(0), phi.at(1)));
  CHECK(fa.at(1) == f->top());
}

TEST_CASE("adjunction triples: exists -| reindex -| forall (exhaustive, small)") {
  for (const auto& fr : frames_up_to_5()) {
    if (fr->size() > 4) continue;  // unit suite stays quick; acceptance goes bigger
    for (int na = 0; na <= 2; ++na)
      for (int nb = 1; nb <= 2; ++nb) {
        auto A = canonical_set("a", na);
        auto B = canonical_set("b", nb);
        for_each_map(A, B, [&](const FinMap& m) {
          for_each_table(na, fr->size(), [&](const std::vector<int>& pv) {
            Predicate phi = make_predicate(A, fr, pv);
            for_each_table(nb, fr->size(), [&](const std::vector<int>& qv) {
              Predicate psi = make_predicate(B, fr, qv);
              CHECK(pred_leq(exists_along(m, phi), psi) == pred_leq(phi, reindex(m, psi)));
              CHECK(pred_leq(psi, forall_along(m, phi)) == pred_leq(reindex(m, psi), phi));
            });
          });
        });
      }
  }
}

TEST_CASE("frobenius and beck-chevalley hold; a broken quantifier is caught") {
  Rng rng(7);
  const auto& frames = frames_up_to_5();
  int fr_checked = 0, bc_checked = 0;
  for (int it = 0; it < 2000; ++it) {
    auto fr = frames[static_cast<size_t>(rng.below(static_cast<int>(frames.size())))];
    auto A = canonical_set("a", rng.range(0, 3));
    auto B = canonical_set("b", rng.range(1, 3));
    auto f = random_map(rng, A, B);
    auto phi = random_predicate(rng, A, fr);
    auto psi = random_predicate(rng, B, fr);
    CHECK(check_frobenius(f, phi, psi));
    ++fr_checked;

    auto C = canonical_set("c", rng.range(1, 3));
    auto g = random_map(rng, C, B);
    auto sq = make_pullback_square(f, g);
    CHECK(check_beck_chevalley(sq, phi));
    ++bc_checked;
  }
  CHECK(fr_checked == 2000);
  CHECK(bc_checked == 2000);

  // a "max by element index over the fiber" quantifier on a non-chain frame
  auto broken_exists = [](const FinMap& m, const Predicate& p) {
    std::vector<int> v(static_cast<size_t>(m.cod->size()), p.frame->bottom());
    for (int j = 0; j < m.dom->size(); ++j) {
      int i = m(j);
      v[static_cast<size_t>(i)] = std::max(v[static_cast<size_t>(i)], p.at(j));
    }
    return Predicate{m.cod, p.frame, std::move(v)};
  };
  auto b4 = bool4_frame();
  auto A = make_set("A", {"a", "b"});
  auto one = terminal_set();
  // the two incomparable middles of bool4
  int mid1 = -1, mid2 = -1;
  for (int i = 0; i < b4->size(); ++i)
    if (i != b4->top() && i != b4->bottom()) (mid1 == -1 ? mid1 : mid2) = i;
  auto phi = make_predicate(A, b4, {mid1, mid2});
  auto bangA = bang(A);
  bool found_violation = false;
  for (int t = 0; t < b4->size(); ++t) {
    auto psi = constant_predicate(one, b4, t);
    if (!check_frobenius(bangA, phi, psi, broken_exists)) found_violation = true;
  }
  CHECK(found_violation);
}

TEST_CASE("power objects: counting, top name, exhaustive replay (small)") {
  Doctrine d2{two_chain(), Mode::tripos};
  auto I1 = canonical_set("i", 1);
  auto pod = power_object(d2, I1);
  CHECK(pod.names->size() == 2);

  Doctrine reg{two_chain(), Mode::regular};
  CHECK_THROWS_WITH_AS(power_object(reg, I1), doctest::Contains("tripos"), Error);

  for (const auto& fr : frames_up_to_5()) {
    if (fr->size() > 3) continue;
    Doctrine d{fr, Mode::tripos};
    for (int ni = 0; ni <= 2; ++ni)
      for (int nj = 0; nj <= 2; ++nj) {
        auto I = canonical_set("i", ni);
        auto J = canonical_set("j", nj);
        auto pd = power_object(d, I);
        auto prod = product(I, J);
        for_each_table(prod.apex->size(), fr->size(), [&](const std::vector<int>& v) {
          Predicate phi = make_predicate(prod.apex, fr, v);
          FinMap nm = name_of(pd, phi, J);
          CHECK(pred_eq(name_replay(pd, nm), phi));
        });
      }
  }

  // the name of the true predicate is constantly the top function
  Doctrine d{bool4_frame(), Mode::tripos};
  auto I = canonical_set("i", 2);
  auto J = canonical_set("j", 2);
  auto pd = power_object(d, I);
  auto prod = product(I, J);
  FinMap nm = name_of(pd, top_predicate(prod.apex, d.frame), J);
  std::vector<int> top_column(2, d.frame->top());
  for (int j = 0; j < 2; ++j) CHECK(nm(j) == pd.name_index(top_column));
}

TEST_CASE("weak terminal objects") {
  auto p = vee_poset();
  auto I = canonical_set("i", 1);

  // no constraints: J = I x P
  auto w0 = weak_terminal(I, {}, p);
  CHECK(w0.leg.dom->size() == I->size() * p->size());
  CHECK(verify_weak_terminal(w0, I, {}, p, 2));

  // constraints at l and at r: no common lower bound in the vee
  auto c1 = make_poset_predicate(I, p, {p->index("l")});
  auto c2 = make_poset_predicate(I, p, {p->index("r")});
  auto w = weak_terminal(I, {c1, c2}, p);
  CHECK(w.leg.dom->size() == 0);
  CHECK(verify_weak_terminal(w, I, {c1, c2}, p, 2));

  // on a meet-semilattice the witness matches (id, meet of constraints):
  // the fiber over each point is exactly the lower set of the meet
  auto low = lower_sets(p);
  auto lp = low.frame->poset();
  auto I2 = canonical_set("i", 2);
  Rng rng(9);
  for (int it = 0; it < 20; ++it) {
    std::vector<PosetPredicate> cs;
    for (int c = 0; c < 2; ++c) {
      std::vector<int> v(2);
      for (auto& x : v) x = rng.below(lp->size());
      cs.push_back(make_poset_predicate(I2, lp, v));
    }
    auto wt = weak_terminal(I2, cs, lp);
    CHECK(verify_weak_terminal(wt, I2, cs, lp, 2));
    const auto& fr = *low.frame;
    for (int i = 0; i < 2; ++i) {
      int m = fr.meet(cs[0].at(i), cs[1].at(i));
      int fiber = 0;
      for (int j = 0; j < wt.leg.dom->size(); ++j)
        if (wt.leg(j) == i) ++fiber;
      int below = 0;
      for (int q = 0; q < fr.size(); ++q)
        if (fr.le(q, m)) ++below;
      CHECK(fiber == below);
    }
  }
}

TEST_CASE("flatness of poset maps") {
  auto p = vee_poset();
  auto low = lower_sets(p);

  // the principal embedding is flat
  CHECK(is_flat_poset_map(p, *low.frame, low.embedding));

  // meet-preserving maps from a meet-semilattice are flat
  auto lowposet = low.frame->poset();
  auto two = two_chain();
  for (const auto& m : all_monotone_maps(lowposet, two->poset())) {
    bool meetp = map_class(*low.frame, *two, m) != MapClass::monotone;
    if (meetp) CHECK(is_flat_poset_map(lowposet, *two, m));
  }

  // constant-top from the 2-antichain is not flat: the antichain has no
  // common lower bound while the meet of images is top
  auto anti = antichain_poset(2);
  auto ctop = make_monotone(anti, two->poset(), {1, 1});
  CHECK(!is_flat_poset_map(anti, *two, ctop));
}

TEST_CASE("exists completion basics") {
  auto single = exists_completion(chain_poset(1));
  CHECK(single.low.frame->size() == 2);

  auto veec = exists_completion(vee_poset());
  CHECK(veec.low.frame->size() == 5);

  auto chain = exists_completion(chain_poset(2));
  CHECK(chain.low.frame->size() == 3);

  for (const auto& p : all_posets_up_to(3))
    CHECK(embedding_order_reflecting(lower_sets(p), p));
}

TEST_CASE("existential primality: characterization, refutations, bottom") {
  auto comp = exists_completion(vee_poset());
  const Doctrine& d = comp.doctrine;
  const auto& fr = *d.frame;
  auto I = canonical_set("i", 1);

  // pointwise principal lower sets are prime by characterization
  auto principal = make_predicate(I, d.frame, {fr.index("{l}")});
  auto r1 = is_exists_prime(d, principal, 3);
  CHECK(r1.verdict == PrimeVerdict::yes_by_characterization);
  CHECK(r1.oracle_clear);

  // {l,r} splits as {l} \/ {r}: refuted within bound 2
  auto split = make_predicate(I, d.frame, {fr.index("{l,r}")});
  auto r2 = is_exists_prime(d, split, 2);
  CHECK(r2.verdict == PrimeVerdict::no);
  REQUIRE(r2.counterexample.has_value());
  CHECK(confirms_non_primality(split, *r2.counterexample));

  // bottom anywhere is refuted
  auto bot = make_predicate(I, d.frame, {fr.bottom()});
  auto r3 = is_exists_prime(d, bot, 2);
  CHECK(r3.verdict == PrimeVerdict::no);
}

TEST_CASE("prime decomposition") {
  auto comp = exists_completion(vee_poset());
  const Doctrine& d = comp.doctrine;
  const auto& fr = *d.frame;
  auto I = canonical_set("i", 2);

  auto phi = make_predicate(I, d.frame, {fr.index("{l,r}"), fr.index("{l}")});
  auto dec = prime_decomposition(d, phi);
  CHECK(dec.cover.dom->size() == 3);  // {l},{r} over i1; {l} over i2
  CHECK(pred_eq(exists_along(dec.cover, dec.extent), phi));
  for (int j = 0; j < dec.extent.carrier->size(); ++j)
    CHECK(is_join_prime(dec.extent.at(j), fr));

  auto bot = bottom_predicate(I, d.frame);
  auto dbot = prime_decomposition(d, bot);
  CHECK(dbot.cover.dom->size() == 0);
  CHECK(pred_eq(exists_along(dbot.cover, dbot.extent), bot));
}
