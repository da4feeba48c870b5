#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "triposcope/common.hpp"
#include "triposcope/finset.hpp"
#include "triposcope/order.hpp"

namespace triposcope {

// ---------------------------------------------------------------------------
// Concrete regular hyperdoctrines and triposes: predicates are frame-valued
// families over finite carriers, ordered pointwise; reindexing precomposes,
// the quantifiers take fiberwise joins and meets.
// ---------------------------------------------------------------------------

enum class Mode { regular, tripos };

struct Doctrine {
  FramePtr frame;
  Mode mode = Mode::tripos;
};

struct Predicate {
  SetPtr carrier;
  FramePtr frame;
  std::vector<int> values;  // frame element per carrier element

  int at(int i) const { return values[static_cast<size_t>(i)]; }
};

inline Predicate make_predicate(SetPtr carrier, FramePtr frame, std::vector<int> values) {
  require(static_cast<int>(values.size()) == carrier->size(), "predicate-error",
          "value table does not cover carrier '" + carrier->id + "'");
  for (int v : values)
    require(v >= 0 && v < frame->size(), "predicate-error", "value outside the frame");
  return Predicate{std::move(carrier), std::move(frame), std::move(values)};
}

inline Predicate constant_predicate(const SetPtr& carrier, const FramePtr& frame, int value) {
  return make_predicate(carrier, frame,
                        std::vector<int>(static_cast<size_t>(carrier->size()), value));
}

inline Predicate top_predicate(const SetPtr& c, const FramePtr& f) {
  return constant_predicate(c, f, f->top());
}
inline Predicate bottom_predicate(const SetPtr& c, const FramePtr& f) {
  return constant_predicate(c, f, f->bottom());
}

inline void check_same_fiber(const Predicate& a, const Predicate& b) {
  require(same_set(a.carrier, b.carrier), "carrier-mismatch",
          "predicates live on different carriers");
  require(same_frame(a.frame, b.frame), "frame-mismatch", "predicates take values in different frames");
}

inline Predicate pred_meet(const Predicate& a, const Predicate& b) {
  check_same_fiber(a, b);
  std::vector<int> v(a.values.size());
  for (size_t i = 0; i < v.size(); ++i) v[i] = a.frame->meet(a.values[i], b.values[i]);
  return Predicate{a.carrier, a.frame, std::move(v)};
}

inline Predicate pred_join(const Predicate& a, const Predicate& b) {
  check_same_fiber(a, b);
  std::vector<int> v(a.values.size());
  for (size_t i = 0; i < v.size(); ++i) v[i] = a.frame->join(a.values[i], b.values[i]);
  return Predicate{a.carrier, a.frame, std::move(v)};
}

inline Predicate pred_imp(const Predicate& a, const Predicate& b) {
  check_same_fiber(a, b);
  std::vector<int> v(a.values.size());
  for (size_t i = 0; i < v.size(); ++i) v[i] = a.frame->imp(a.values[i], b.values[i]);
  return Predicate{a.carrier, a.frame, std::move(v)};
}

inline bool pred_leq(const Predicate& a, const Predicate& b) {
  check_same_fiber(a, b);
  for (size_t i = 0; i < a.values.size(); ++i)
    if (!a.frame->le(a.values[i], b.values[i])) return false;
  return true;
}

// first carrier element where a <= b fails, for counterexample reports
inline std::optional<int> pred_leq_witness(const Predicate& a, const Predicate& b) {
  check_same_fiber(a, b);
  for (size_t i = 0; i < a.values.size(); ++i)
    if (!a.frame->le(a.values[i], b.values[i])) return static_cast<int>(i);
  return std::nullopt;
}

inline bool pred_eq(const Predicate& a, const Predicate& b) {
  check_same_fiber(a, b);
  return a.values == b.values;
}

// f^* phi: precomposition
inline Predicate reindex(const FinMap& f, const Predicate& phi) {
  require(same_set(phi.carrier, f.cod), "carrier-mismatch",
          "reindexing map does not target the predicate's carrier");
  std::vector<int> v(static_cast<size_t>(f.dom->size()));
  for (int j = 0; j < f.dom->size(); ++j) v[static_cast<size_t>(j)] = phi.at(f(j));
  return Predicate{f.dom, phi.frame, std::move(v)};
}

// left adjoint to f^*: fiberwise join
inline Predicate exists_along(const FinMap& f, const Predicate& phi) {
  require(same_set(phi.carrier, f.dom), "carrier-mismatch",
          "predicate does not live on the map's domain");
  std::vector<int> v(static_cast<size_t>(f.cod->size()), phi.frame->bottom());
  for (int j = 0; j < f.dom->size(); ++j) {
    int i = f(j);
    v[static_cast<size_t>(i)] = phi.frame->join(v[static_cast<size_t>(i)], phi.at(j));
  }
  return Predicate{f.cod, phi.frame, std::move(v)};
}

// right adjoint to f^*: fiberwise meet
inline Predicate forall_along(const FinMap& f, const Predicate& phi) {
  require(same_set(phi.carrier, f.dom), "carrier-mismatch",
          "predicate does not live on the map's domain");
  std::vector<int> v(static_cast<size_t>(f.cod->size()), phi.frame->top());
  for (int j = 0; j < f.dom->size(); ++j) {
    int i = f(j);
    v[static_cast<size_t>(i)] = phi.frame->meet(v[static_cast<size_t>(i)], phi.at(j));
  }
  return Predicate{f.cod, phi.frame, std::move(v)};
}

// the two-valued equality predicate on A x A, as the left quantification of
// truth along the diagonal
inline Predicate equality_predicate(const SetPtr& a, const FramePtr& frame) {
  return exists_along(diagonal(a), top_predicate(a, frame));
}

// (exists_f phi) /\ psi  =  exists_f (phi /\ f^* psi), with a pluggable
// quantifier so mutation tests can confirm the checker notices broken ones
template <class ExistsFn>
bool check_frobenius(const FinMap& f, const Predicate& phi, const Predicate& psi,
                     ExistsFn&& exists_fn) {
  Predicate lhs = pred_meet(exists_fn(f, phi), psi);
  Predicate rhs = exists_fn(f, pred_meet(phi, reindex(f, psi)));
  return pred_eq(lhs, rhs);
}

inline bool check_frobenius(const FinMap& f, const Predicate& phi, const Predicate& psi) {
  return check_frobenius(f, phi, psi, [](const FinMap& m, const Predicate& p) {
    return exists_along(m, p);
  });
}

struct PullbackSquare {
  FinMap f;  // A -> C
  FinMap g;  // B -> C
  LimitCone cone;  // apex D with legs h: D -> A, k: D -> B
};

inline PullbackSquare make_pullback_square(const FinMap& f, const FinMap& g) {
  return PullbackSquare{f, g, pullback(f, g)};
}

// exists_k (h^* phi)  =  g^* (exists_f phi)
template <class ExistsFn>
bool check_beck_chevalley(const PullbackSquare& sq, const Predicate& phi, ExistsFn&& exists_fn) {
  const FinMap& h = sq.cone.legs[0];
  const FinMap& k = sq.cone.legs[1];
  Predicate lhs = exists_fn(k, reindex(h, phi));
  Predicate rhs = reindex(sq.g, exists_fn(sq.f, phi));
  return pred_eq(lhs, rhs);
}

inline bool check_beck_chevalley(const PullbackSquare& sq, const Predicate& phi) {
  return check_beck_chevalley(sq, phi, [](const FinMap& m, const Predicate& p) {
    return exists_along(m, p);
  });
}

// ---------------------------------------------------------------------------
// Power objects: P(I) is the set of all frame-valued functions on I, with the
// membership predicate eps(i, m) = m(i). Names are enumerated with the first
// carrier element most significant, so a value vector determines its index
// arithmetically.
// ---------------------------------------------------------------------------

struct PowerObjectData {
  SetPtr base;
  SetPtr names;
  FramePtr frame;
  std::vector<std::vector<int>> fn;  // name index -> value vector over base
  LimitCone pairing_cone;            // product(base, names)
  Predicate membership;              // on base x names

  int name_index(const std::vector<int>& values) const {
    int n = frame->size();
    long long idx = 0;
    for (int v : values) {
      require(v >= 0 && v < n, "predicate-error", "name value outside the frame");
      idx = idx * n + v;
    }
    return static_cast<int>(idx);
  }
};

inline long long power_object_cost(const Doctrine& d, const SetPtr& base) {
  long long count = 1;
  for (int i = 0; i < base->size(); ++i) {
    count *= d.frame->size();
    if (count > (1LL << 40)) return count;  // saturate; caller gates
  }
  return count;
}

inline PowerObjectData power_object(const Doctrine& d, const SetPtr& base,
                                    long long name_budget = 1'000'000) {
  require(d.mode == Mode::tripos, "unsupported-in-mode",
          "power objects exist only in tripos mode");
  long long count = power_object_cost(d, base);
  require(count <= name_budget, "budget-exceeded",
          "power object on '" + base->id + "' needs " + std::to_string(count) + " names (budget " +
              std::to_string(name_budget) + ")");
  int n = d.frame->size();
  int b = base->size();
  std::vector<std::vector<int>> fn;
  fn.reserve(static_cast<size_t>(count));
  std::vector<std::string> labels;
  labels.reserve(static_cast<size_t>(count));
  for_each_table(b, n, [&](const std::vector<int>& t) {
    std::string lbl = "[";
    for (size_t i = 0; i < t.size(); ++i) {
      if (i) lbl += "|";
      lbl += d.frame->label(t[i]);
    }
    lbl += "]";
    labels.push_back(std::move(lbl));
    fn.push_back(t);
  });
  SetPtr names = make_set("P(" + base->id + ")", std::move(labels));
  LimitCone cone = product(base, names);
  std::vector<int> eps(static_cast<size_t>(cone.apex->size()));
  int nn = names->size();
  for (int i = 0; i < b; ++i)
    for (int m = 0; m < nn; ++m)
      eps[static_cast<size_t>(i) * nn + m] = fn[static_cast<size_t>(m)][static_cast<size_t>(i)];
  Predicate membership = make_predicate(cone.apex, d.frame, std::move(eps));
  return PowerObjectData{base, names, d.frame, std::move(fn), std::move(cone),
                         std::move(membership)};
}

// the name of phi in P(base x J): j |-> (i |-> phi(i, j)); satisfies
// (J x name)^* eps = phi on the nose
inline FinMap name_of(const PowerObjectData& pod, const Predicate& phi, const SetPtr& j_set) {
  LimitCone prod = product(pod.base, j_set);
  require(same_set(phi.carrier, prod.apex), "carrier-mismatch",
          "predicate is not on base x J in canonical order");
  int jn = j_set->size();
  std::vector<int> table(static_cast<size_t>(jn));
  std::vector<int> column(static_cast<size_t>(pod.base->size()));
  for (int j = 0; j < jn; ++j) {
    for (int i = 0; i < pod.base->size(); ++i)
      column[static_cast<size_t>(i)] = phi.at(i * jn + j);
    table[static_cast<size_t>(j)] = pod.name_index(column);
  }
  return FinMap{j_set, pod.names, std::move(table)};
}

// reindexing of the membership predicate along (name x id): the replay side of
// the power-object equation
inline Predicate name_replay(const PowerObjectData& pod, const FinMap& name) {
  LimitCone prod = product(pod.base, name.dom);
  FinMap base_leg = prod.legs[0];
  FinMap j_leg = prod.legs[1];
  FinMap into_power = pairing(base_leg, compose(name, j_leg));
  return reindex(into_power, pod.membership);
}

// ---------------------------------------------------------------------------
// Poset-valued predicates and weakly terminal solution objects: the raw
// material of flatness, before any completion to a frame.
// ---------------------------------------------------------------------------

struct PosetPredicate {
  SetPtr carrier;
  PosetPtr poset;
  std::vector<int> values;

  int at(int i) const { return values[static_cast<size_t>(i)]; }
};

inline PosetPredicate make_poset_predicate(SetPtr carrier, PosetPtr poset,
                                           std::vector<int> values) {
  require(static_cast<int>(values.size()) == carrier->size(), "predicate-error",
          "value table does not cover carrier '" + carrier->id + "'");
  for (int v : values)
    require(v >= 0 && v < poset->size(), "predicate-error", "value outside the poset");
  return PosetPredicate{std::move(carrier), std::move(poset), std::move(values)};
}

struct WeakTerminalWitness {
  FinMap leg;            // J -> I
  PosetPredicate pred;   // on J
};

// J = {(i,q) : q <= every constraint at i}, first projection, pred(i,q) = q.
// With no constraints, J = I x P.
inline WeakTerminalWitness weak_terminal(const SetPtr& i_set,
                                         const std::vector<PosetPredicate>& constraints,
                                         const PosetPtr& poset) {
  for (const auto& c : constraints) {
    require(same_set(c.carrier, i_set), "carrier-mismatch",
            "constraint carrier differs from the solution base");
    require(c.poset->elements == poset->elements, "carrier-mismatch",
            "constraint valued in a different poset");
  }
  std::vector<std::string> labels;
  std::vector<int> leg_table, values;
  for (int i = 0; i < i_set->size(); ++i)
    for (int q = 0; q < poset->size(); ++q) {
      bool below = true;
      for (const auto& c : constraints)
        if (!poset->le(q, c.at(i))) {
          below = false;
          break;
        }
      if (below) {
        labels.push_back(pair_label(i_set->label(i), poset->label(q)));
        leg_table.push_back(i);
        values.push_back(q);
      }
    }
  SetPtr j_set = make_set("wt(" + i_set->id + ")", std::move(labels));
  FinMap leg{j_set, i_set, std::move(leg_table)};
  return WeakTerminalWitness{leg, make_poset_predicate(j_set, poset, std::move(values))};
}

// Brute-force check of weak terminality: every competing object (g: K -> I,
// theta <= g^* of each constraint) with |K| <= bound admits some arrow into
// the witness over I.
inline bool verify_weak_terminal(const WeakTerminalWitness& w, const SetPtr& i_set,
                                 const std::vector<PosetPredicate>& constraints,
                                 const PosetPtr& poset, int bound) {
  for (int ksize = 0; ksize <= bound; ++ksize) {
    SetPtr k_set = canonical_set("k", ksize);
    bool ok = true;
    for_each_map(k_set, i_set, [&](const FinMap& g) {
      if (!ok) return;
      for_each_table(ksize, poset->size(), [&](const std::vector<int>& theta) {
        if (!ok) return;
        for (const auto& c : constraints)
          for (int k = 0; k < ksize; ++k)
            if (!poset->le(theta[static_cast<size_t>(k)], c.at(g(k)))) return;
        bool found = false;
        for_each_map(k_set, w.leg.dom, [&](const FinMap& h) {
          if (found) return;
          if (!same_map(compose(w.leg, h), g)) return;
          for (int k = 0; k < ksize; ++k)
            if (!poset->le(theta[static_cast<size_t>(k)], w.pred.at(h(k)))) return;
          found = true;
        });
        if (!found) ok = false;
      });
    });
    if (!ok) return false;
  }
  return true;
}

// Pointwise flatness criterion for a monotone map m : P -> A into a frame:
// for every subset F of P (including the empty one),
//   /\ m[F]  <=  \/ { m(q) : q a lower bound of F in P }.
inline bool is_flat_poset_map(const PosetPtr& p, const FinFrame& a, const MonotoneMap& m) {
  require(m.dom->elements == p->elements, "map-error", "map domain is not the given poset");
  require(m.cod->elements == a.poset()->elements, "map-error",
          "map codomain does not carry the given frame");
  int n = p->size();
  require(n <= 20, "size-guard", "flatness scan limited to posets with at most 20 elements");
  for (std::uint32_t f = 0; f < (1u << n); ++f) {
    int met = a.top();
    for (int x = 0; x < n; ++x)
      if (f & (1u << x)) met = a.meet(met, m(x));
    int cover = a.bottom();
    for (int q = 0; q < n; ++q) {
      bool lb = true;
      for (int x = 0; x < n && lb; ++x)
        if ((f & (1u << x)) && !p->le(q, x)) lb = false;
      if (lb) cover = a.join(cover, m(q));
    }
    if (!a.le(met, cover)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// The free existential completion of a poset-indexed doctrine, concretely:
// the canonical indexing of low(P), with the principal-lower-set embedding.
// ---------------------------------------------------------------------------

struct ExistsCompletion {
  Doctrine doctrine;            // over low(P), tripos mode
  LowerSetFrame low;            // frame, masks, embedding p |-> down(p)
};

inline ExistsCompletion exists_completion(const PosetPtr& p) {
  LowerSetFrame low = lower_sets(p);
  return ExistsCompletion{Doctrine{low.frame, Mode::tripos}, std::move(low)};
}

// the embedding reflects order (injective and order-reflecting on fibers)
inline bool embedding_order_reflecting(const LowerSetFrame& low, const PosetPtr& p) {
  for (int a = 0; a < p->size(); ++a)
    for (int b = 0; b < p->size(); ++b)
      if (low.frame->le(low.embedding(a), low.embedding(b)) && !p->le(a, b)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Existential primality of a predicate.
//
// Characterization (sound and complete for canonical frame indexings): every
// value is join-prime. Bounded refutation oracle: search composable pairs
// u: J -> I, v: K -> J with |J|,|K| <= bound and all psi on K such that
// u^* phi <= exists_v psi yet no section s of v has u^* phi <= s^* psi.
// The search over psi is factored fiberwise (fibers of v are independent,
// both for covering and for sections), which visits the same search space;
// any counterexample found is materialized and re-verified definitionally.
// ---------------------------------------------------------------------------

struct PrimeCounterexample {
  FinMap u;        // J -> I
  FinMap v;        // K -> J
  Predicate psi;   // on K
};

enum class PrimeVerdict { no, yes, yes_by_characterization };

struct PrimeReport {
  PrimeVerdict verdict = PrimeVerdict::yes;
  bool characterization = false;  // all values join-prime
  bool oracle_clear = false;      // no counterexample within the bound
  int bound = 0;
  std::optional<PrimeCounterexample> counterexample;
};

namespace detail {

// For a target value t and a fiber of size fs, can psi-values on the fiber
// cover t, and can they cover t while no single value dominates it?
struct FiberVerdicts {
  // indexed [t][fs], fs in 0..maxFiber
  std::vector<std::vector<uint8_t>> coverable, bad_coverable;
  // a witnessing value multiset for bad coverage, per t (independent of fs
  // once |S| <= fs): the smallest subset found in enumeration order
  std::vector<std::vector<int>> bad_witness;
};

inline FiberVerdicts fiber_verdicts(const FinFrame& fr, int maxFiber) {
  int n = fr.size();
  FiberVerdicts out;
  out.coverable.assign(static_cast<size_t>(n), std::vector<uint8_t>(static_cast<size_t>(maxFiber + 1), 0));
  out.bad_coverable = out.coverable;
  out.bad_witness.assign(static_cast<size_t>(n), {});
  for (int t = 0; t < n; ++t) {
    for (int fs = 0; fs <= maxFiber; ++fs) {
      bool cover = (fs >= 1) || (t == fr.bottom());  // top-fill, or empty join = bottom
      out.coverable[static_cast<size_t>(t)][static_cast<size_t>(fs)] = cover ? 1 : 0;
    }
    // bad coverage with an empty fiber: the empty join covers only bottom,
    // and there is no section value at all
    if (t == fr.bottom()) {
      out.bad_coverable[static_cast<size_t>(t)][0] = 1;
      out.bad_witness[static_cast<size_t>(t)] = {};
      continue;
    }
    // smallest subset of non-dominating values whose join covers t
    std::vector<int> candidates;
    for (int x = 0; x < n; ++x)
      if (!fr.le(t, x)) candidates.push_back(x);
    int m = static_cast<int>(candidates.size());
    int best_size = -1;
    std::vector<int> best;
    for (std::uint32_t s = 1; s < (1u << m); ++s) {
      int joined = fr.bottom();
      int size = 0;
      for (int x = 0; x < m; ++x)
        if (s & (1u << x)) {
          joined = fr.join(joined, candidates[static_cast<size_t>(x)]);
          ++size;
        }
      if (fr.le(t, joined) && (best_size == -1 || size < best_size)) {
        best_size = size;
        best.clear();
        for (int x = 0; x < m; ++x)
          if (s & (1u << x)) best.push_back(candidates[static_cast<size_t>(x)]);
      }
    }
    if (best_size != -1) {
      out.bad_witness[static_cast<size_t>(t)] = best;
      for (int fs = best_size; fs <= maxFiber; ++fs)
        out.bad_coverable[static_cast<size_t>(t)][static_cast<size_t>(fs)] = 1;
    }
  }
  return out;
}

}  // namespace detail

// definitional re-check of a counterexample: covering holds, no section works
inline bool confirms_non_primality(const Predicate& phi, const PrimeCounterexample& cx) {
  Predicate pulled = reindex(cx.u, phi);
  if (!pred_leq(pulled, exists_along(cx.v, cx.psi))) return false;
  bool section_found = false;
  for_each_map(cx.v.cod, cx.v.dom, [&](const FinMap& s) {
    if (section_found) return;
    if (!same_map(compose(cx.v, s), identity_map(cx.v.cod))) return;
    if (pred_leq(pulled, reindex(s, cx.psi))) section_found = true;
  });
  return !section_found;
}

inline PrimeReport is_exists_prime(const Doctrine& d, const Predicate& phi, int bound = 3) {
  require(same_frame(d.frame, phi.frame), "frame-mismatch",
          "predicate does not belong to the doctrine");
  PrimeReport report;
  report.bound = bound;
  report.characterization = true;
  for (int v : phi.values)
    if (!is_join_prime(v, *d.frame)) {
      report.characterization = false;
      break;
    }
  const FinFrame& fr = *d.frame;
  detail::FiberVerdicts fv = detail::fiber_verdicts(fr, bound);
  report.oracle_clear = true;
  for (int jsize = 0; jsize <= bound && report.oracle_clear; ++jsize) {
    SetPtr j_set = canonical_set("j", jsize);
    for (int ksize = 0; ksize <= bound && report.oracle_clear; ++ksize) {
      SetPtr k_set = canonical_set("k", ksize);
      for_each_map(j_set, phi.carrier, [&](const FinMap& u) {
        if (!report.oracle_clear) return;
        Predicate pulled = reindex(u, phi);
        for_each_map(k_set, j_set, [&](const FinMap& v) {
          if (!report.oracle_clear) return;
          std::vector<int> fiber_size(static_cast<size_t>(jsize), 0);
          for (int k = 0; k < ksize; ++k) ++fiber_size[static_cast<size_t>(v(k))];
          bool all_cover = true;
          int bad_j = -1;
          for (int j = 0; j < jsize; ++j) {
            int t = pulled.at(j);
            int fs = fiber_size[static_cast<size_t>(j)];
            if (!fv.coverable[static_cast<size_t>(t)][static_cast<size_t>(fs)]) {
              all_cover = false;
              break;
            }
            if (bad_j == -1 && fv.bad_coverable[static_cast<size_t>(t)][static_cast<size_t>(fs)])
              bad_j = j;
          }
          if (!all_cover || bad_j == -1) return;
          // materialize psi: the bad witness on bad_j's fiber, top elsewhere
          std::vector<int> psi_vals(static_cast<size_t>(ksize), fr.top());
          const std::vector<int>& witness = fv.bad_witness[static_cast<size_t>(pulled.at(bad_j))];
          size_t wpos = 0;
          for (int k = 0; k < ksize; ++k)
            if (v(k) == bad_j) {
              psi_vals[static_cast<size_t>(k)] =
                  witness.empty() ? fr.top() : witness[std::min(wpos, witness.size() - 1)];
              ++wpos;
            }
          PrimeCounterexample cx{u, v, make_predicate(k_set, phi.frame, std::move(psi_vals))};
          if (!confirms_non_primality(phi, cx))
            fail("internal-error", "factored primality search produced a bogus counterexample");
          report.counterexample = std::move(cx);
          report.oracle_clear = false;
        });
      });
    }
  }
  if (!report.oracle_clear)
    report.verdict = PrimeVerdict::no;
  else if (report.characterization)
    report.verdict = PrimeVerdict::yes_by_characterization;
  else
    report.verdict = PrimeVerdict::yes;  // survived the bounded oracle only
  return report;
}

// ---------------------------------------------------------------------------
// Prime decomposition: phi = exists_f pi with pi pointwise join-prime, over
// J = {(i,a) : a join-prime, a <= phi(i)}.
// ---------------------------------------------------------------------------

struct PrimeDecomposition {
  FinMap cover;       // J -> I, first projection
  Predicate extent;   // on J, (i,a) |-> a
};

inline PrimeDecomposition prime_decomposition(const Doctrine& d, const Predicate& phi) {
  require(same_frame(d.frame, phi.frame), "frame-mismatch",
          "predicate does not belong to the doctrine");
  const FinFrame& fr = *d.frame;
  require(has_enough_join_primes(fr), "no-decomposition",
          "the frame lacks enough join-primes");
  std::vector<int> primes = join_primes(fr);
  std::vector<std::string> labels;
  std::vector<int> table, values;
  for (int i = 0; i < phi.carrier->size(); ++i)
    for (int a : primes)
      if (fr.le(a, phi.at(i))) {
        labels.push_back(pair_label(phi.carrier->label(i), fr.label(a)));
        table.push_back(i);
        values.push_back(a);
      }
  SetPtr j_set = make_set("pr(" + phi.carrier->id + ")", std::move(labels));
  FinMap cover{j_set, phi.carrier, std::move(table)};
  Predicate extent = make_predicate(j_set, phi.frame, std::move(values));
  if (!pred_eq(exists_along(cover, extent), phi))
    fail("internal-error", "prime decomposition failed to reconstruct the predicate");
  return PrimeDecomposition{std::move(cover), std::move(extent)};
}

}  // namespace triposcope
