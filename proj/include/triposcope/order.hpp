#pragma once

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

#include "triposcope/common.hpp"
#include "triposcope/finset.hpp"

namespace triposcope {

// ---------------------------------------------------------------------------
// Finite posets, lattices and frames: the value algebras of predicates.
// ---------------------------------------------------------------------------

struct FinPoset {
  std::vector<std::string> elements;
  std::vector<uint8_t> leq;  // n*n row-major, leq[a*n+b] == (a <= b)

  int size() const { return static_cast<int>(elements.size()); }
  bool le(int a, int b) const { return leq[static_cast<size_t>(a) * elements.size() + b] != 0; }
  const std::string& label(int i) const { return elements[static_cast<size_t>(i)]; }

  int index(const std::string& lbl) const {
    for (int i = 0; i < size(); ++i)
      if (elements[static_cast<size_t>(i)] == lbl) return i;
    fail("unknown-label", "no poset element '" + lbl + "'");
  }
};

using PosetPtr = std::shared_ptr<const FinPoset>;

// Validates reflexivity, antisymmetry, transitivity; names offenders.
inline PosetPtr validate_poset(FinPoset p) {
  int n = p.size();
  require(p.leq.size() == static_cast<size_t>(n) * static_cast<size_t>(n), "not-a-poset",
          "relation table has the wrong shape");
  for (int a = 0; a < n; ++a)
    require(p.le(a, a), "not-a-poset", "relation not reflexive at '" + p.label(a) + "'");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b && p.le(a, b) && p.le(b, a))
        fail("not-a-poset",
             "antisymmetry fails between '" + p.label(a) + "' and '" + p.label(b) + "'");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (p.le(a, b))
        for (int c = 0; c < n; ++c)
          if (p.le(b, c) && !p.le(a, c))
            fail("not-a-poset", "transitivity fails through '" + p.label(b) + "': '" +
                                    p.label(a) + "' <= '" + p.label(b) + "' <= '" + p.label(c) +
                                    "'");
  return std::make_shared<FinPoset>(std::move(p));
}

// Builds a poset from generating pairs: reflexive-transitive closure first,
// antisymmetry violations reported by validate_poset.
inline PosetPtr poset_from_pairs(std::vector<std::string> elements,
                                 const std::vector<std::pair<int, int>>& le_pairs) {
  FinPoset p;
  p.elements = std::move(elements);
  int n = p.size();
  p.leq.assign(static_cast<size_t>(n) * static_cast<size_t>(n), 0);
  for (int a = 0; a < n; ++a) p.leq[static_cast<size_t>(a) * n + a] = 1;
  for (auto [a, b] : le_pairs) {
    require(a >= 0 && a < n && b >= 0 && b < n, "not-a-poset", "generating pair out of range");
    p.leq[static_cast<size_t>(a) * n + b] = 1;
  }
  for (int k = 0; k < n; ++k)  // boolean Floyd-Warshall
    for (int a = 0; a < n; ++a)
      if (p.le(a, k))
        for (int b = 0; b < n; ++b)
          if (p.le(k, b)) p.leq[static_cast<size_t>(a) * n + b] = 1;
  return validate_poset(std::move(p));
}

struct FinLattice {
  PosetPtr poset;
  std::vector<int> meet, join;  // n*n
  int top = -1, bottom = -1;

  int size() const { return poset->size(); }
  bool le(int a, int b) const { return poset->le(a, b); }
  int meet_of(int a, int b) const { return meet[static_cast<size_t>(a) * size() + b]; }
  int join_of(int a, int b) const { return join[static_cast<size_t>(a) * size() + b]; }
  const std::string& label(int i) const { return poset->label(i); }
};

using LatticePtr = std::shared_ptr<const FinLattice>;

// Fails precisely when some pair lacks an infimum or a supremum (or the poset
// is empty, which has no top/bottom).
inline LatticePtr complete_to_lattice(const PosetPtr& poset) {
  int n = poset->size();
  require(n > 0, "not-a-lattice", "empty poset has no greatest or least element");
  FinLattice l;
  l.poset = poset;
  l.meet.assign(static_cast<size_t>(n) * n, -1);
  l.join.assign(static_cast<size_t>(n) * n, -1);
  auto extremum = [&](int a, int b, bool inf) -> int {
    int best = -1;
    for (int c = 0; c < n; ++c) {
      bool bound = inf ? (poset->le(c, a) && poset->le(c, b))
                       : (poset->le(a, c) && poset->le(b, c));
      if (!bound) continue;
      if (best == -1)
        best = c;
      else if (inf ? poset->le(best, c) : poset->le(c, best))
        best = c;
    }
    if (best == -1) return -1;
    // best is maximal (resp. minimal) among bounds; confirm it compares with all
    for (int c = 0; c < n; ++c) {
      bool bound = inf ? (poset->le(c, a) && poset->le(c, b))
                       : (poset->le(a, c) && poset->le(b, c));
      if (bound && !(inf ? poset->le(c, best) : poset->le(best, c))) return -1;
    }
    return best;
  };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int m = extremum(a, b, true);
      if (m == -1)
        fail("not-a-lattice",
             "'" + poset->label(a) + "' and '" + poset->label(b) + "' have no meet");
      int j = extremum(a, b, false);
      if (j == -1)
        fail("not-a-lattice",
             "'" + poset->label(a) + "' and '" + poset->label(b) + "' have no join");
      l.meet[static_cast<size_t>(a) * n + b] = m;
      l.join[static_cast<size_t>(a) * n + b] = j;
    }
  l.top = 0;
  l.bottom = 0;
  for (int c = 1; c < n; ++c) {
    l.top = l.join_of(l.top, c);
    l.bottom = l.meet_of(l.bottom, c);
  }
  return std::make_shared<FinLattice>(std::move(l));
}

struct FinFrame {
  LatticePtr lattice;
  std::vector<int> heyting;  // n*n, heyting[a*n+b] = (a => b)

  int size() const { return lattice->size(); }
  bool le(int a, int b) const { return lattice->le(a, b); }
  int meet(int a, int b) const { return lattice->meet_of(a, b); }
  int join(int a, int b) const { return lattice->join_of(a, b); }
  int imp(int a, int b) const { return heyting[static_cast<size_t>(a) * size() + b]; }
  int top() const { return lattice->top; }
  int bottom() const { return lattice->bottom; }
  const std::string& label(int i) const { return lattice->label(i); }
  const PosetPtr& poset() const { return lattice->poset; }

  int index(const std::string& lbl) const { return lattice->poset->index(lbl); }

  template <class It>
  int join_over(It begin, It end) const {
    int acc = bottom();
    for (It it = begin; it != end; ++it) acc = join(acc, *it);
    return acc;
  }
  template <class It>
  int meet_over(It begin, It end) const {
    int acc = top();
    for (It it = begin; it != end; ++it) acc = meet(acc, *it);
    return acc;
  }
};

using FramePtr = std::shared_ptr<const FinFrame>;

inline bool same_frame(const FramePtr& a, const FramePtr& b) {
  if (a == b) return true;
  return a->lattice->poset->elements == b->lattice->poset->elements &&
         a->lattice->poset->leq == b->lattice->poset->leq;
}

// Fails precisely when binary distributivity fails (which, in a finite
// lattice, is equivalent to a /\ \/S = \/{a /\ s} for every finite S).
// On success the Heyting table is computed and its adjunction confirmed.
inline FramePtr check_frame(const LatticePtr& lat) {
  int n = lat->size();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        int lhs = lat->meet_of(a, lat->join_of(b, c));
        int rhs = lat->join_of(lat->meet_of(a, b), lat->meet_of(a, c));
        if (lhs != rhs)
          fail("not-distributive", "distributivity fails on '" + lat->label(a) + "', '" +
                                       lat->label(b) + "', '" + lat->label(c) + "'");
      }
  FinFrame f;
  f.lattice = lat;
  f.heyting.assign(static_cast<size_t>(n) * n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int acc = lat->bottom;
      for (int c = 0; c < n; ++c)
        if (lat->le(lat->meet_of(c, a), b)) acc = lat->join_of(acc, c);
      f.heyting[static_cast<size_t>(a) * n + b] = acc;
    }
  for (int a = 0; a < n; ++a)  // c <= (a => b)  iff  c /\ a <= b
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        require(lat->le(c, f.imp(a, b)) == lat->le(lat->meet_of(c, a), b), "internal-error",
                "Heyting adjunction broken after distributivity passed");
  return std::make_shared<FinFrame>(std::move(f));
}

inline FramePtr frame_from_poset(const PosetPtr& p) { return check_frame(complete_to_lattice(p)); }

// ---------------------------------------------------------------------------
// Monotone maps between posets (and, via their posets, between lattices and
// frames).
// ---------------------------------------------------------------------------

struct MonotoneMap {
  PosetPtr dom;
  PosetPtr cod;
  std::vector<int> table;

  int operator()(int i) const { return table[static_cast<size_t>(i)]; }
};

inline MonotoneMap make_monotone(PosetPtr dom, PosetPtr cod, std::vector<int> table) {
  require(static_cast<int>(table.size()) == dom->size(), "map-error",
          "monotone map table does not cover its domain");
  int n = dom->size();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (dom->le(a, b) && !cod->le(table[static_cast<size_t>(a)], table[static_cast<size_t>(b)]))
        fail("not-monotone", "map breaks order on '" + dom->label(a) + "' <= '" + dom->label(b) +
                                 "'");
  return MonotoneMap{std::move(dom), std::move(cod), std::move(table)};
}

enum class MapClass { monotone, meet_preserving, frame_morphism };

inline const char* to_string(MapClass c) {
  switch (c) {
    case MapClass::monotone: return "monotone";
    case MapClass::meet_preserving: return "meet_preserving";
    case MapClass::frame_morphism: return "frame_morphism";
  }
  return "?";
}

// meet_preserving: binary meets and top; frame_morphism: additionally binary
// joins and bottom.
inline MapClass map_class(const FinFrame& p, const FinFrame& q, const MonotoneMap& m) {
  require(m.dom->elements == p.poset()->elements && m.cod->elements == q.poset()->elements,
          "map-error", "map endpoints do not carry the given frames");
  int n = p.size();
  bool meets = m(p.top()) == q.top();
  for (int a = 0; a < n && meets; ++a)
    for (int b = a; b < n && meets; ++b)
      if (m(p.meet(a, b)) != q.meet(m(a), m(b))) meets = false;
  if (!meets) return MapClass::monotone;
  bool joins = m(p.bottom()) == q.bottom();
  for (int a = 0; a < n && joins; ++a)
    for (int b = a; b < n && joins; ++b)
      if (m(p.join(a, b)) != q.join(m(a), m(b))) joins = false;
  return joins ? MapClass::frame_morphism : MapClass::meet_preserving;
}

// All monotone maps P -> Q in lexicographic table order (first element varies
// slowest), with partial-assignment pruning.
template <class F>
void for_each_monotone_map(const PosetPtr& p, const PosetPtr& q, F&& visit) {
  int n = p->size(), m = q->size();
  if (n == 0) {
    visit(MonotoneMap{p, q, {}});
    return;
  }
  if (m == 0) return;
  std::vector<int> t(static_cast<size_t>(n), 0);
  auto consistent = [&](int k) {
    for (int j = 0; j < k; ++j) {
      if (p->le(j, k) && !q->le(t[static_cast<size_t>(j)], t[static_cast<size_t>(k)])) return false;
      if (p->le(k, j) && !q->le(t[static_cast<size_t>(k)], t[static_cast<size_t>(j)])) return false;
    }
    return true;
  };
  int k = 0;
  t[0] = -1;
  while (k >= 0) {
    ++t[static_cast<size_t>(k)];
    if (t[static_cast<size_t>(k)] >= m) {
      --k;
      continue;
    }
    if (!consistent(k)) continue;
    if (k == n - 1) {
      visit(MonotoneMap{p, q, t});
    } else {
      ++k;
      t[static_cast<size_t>(k)] = -1;
    }
  }
}

inline std::vector<MonotoneMap> all_monotone_maps(const PosetPtr& p, const PosetPtr& q) {
  std::vector<MonotoneMap> out;
  for_each_monotone_map(p, q, [&](const MonotoneMap& f) { out.push_back(f); });
  return out;
}

// ---------------------------------------------------------------------------
// Lower sets. low(P) is represented by bitmasks over P's canonical element
// order, enumerated in ascending mask order; an element's label is the sorted
// list of its member labels in braces, e.g. "{l,r}".
// ---------------------------------------------------------------------------

inline std::string lower_set_label(std::uint32_t mask, const FinPoset& p) {
  std::vector<std::string> members;
  for (int i = 0; i < p.size(); ++i)
    if (mask & (1u << i)) members.push_back(p.label(i));
  std::sort(members.begin(), members.end());
  std::string out = "{";
  for (size_t i = 0; i < members.size(); ++i) {
    if (i) out += ",";
    out += members[i];
  }
  return out + "}";
}

struct LowerSetFrame {
  FramePtr frame;
  std::vector<std::uint32_t> masks;   // frame index -> bitmask over P
  MonotoneMap embedding;              // p |-> down(p)
};

inline LowerSetFrame lower_sets(const PosetPtr& p) {
  int n = p->size();
  require(n <= 20, "size-guard", "lower_sets limited to posets with at most 20 elements");
  std::vector<std::uint32_t> masks;
  std::vector<int> of_mask(static_cast<size_t>(1) << n, -1);
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool down = true;
    for (int a = 0; a < n && down; ++a)
      if (mask & (1u << a))
        for (int b = 0; b < n && down; ++b)
          if (p->le(b, a) && !(mask & (1u << b))) down = false;
    if (down) {
      of_mask[mask] = static_cast<int>(masks.size());
      masks.push_back(mask);
    }
  }
  int m = static_cast<int>(masks.size());
  FinPoset lp;
  lp.elements.reserve(static_cast<size_t>(m));
  for (std::uint32_t mask : masks) lp.elements.push_back(lower_set_label(mask, *p));
  lp.leq.assign(static_cast<size_t>(m) * m, 0);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      if ((masks[static_cast<size_t>(a)] & ~masks[static_cast<size_t>(b)]) == 0)
        lp.leq[static_cast<size_t>(a) * m + b] = 1;
  PosetPtr lposet = validate_poset(std::move(lp));
  FramePtr frame = frame_from_poset(lposet);
  std::vector<int> emb(static_cast<size_t>(n));
  for (int a = 0; a < n; ++a) {
    std::uint32_t down = 0;
    for (int b = 0; b < n; ++b)
      if (p->le(b, a)) down |= (1u << b);
    emb[static_cast<size_t>(a)] = of_mask[down];
  }
  return LowerSetFrame{frame, std::move(masks), make_monotone(p, lposet, std::move(emb))};
}

// ---------------------------------------------------------------------------
// Join-primality. Decided by the binary criterion (a != bottom, and
// a <= x \/ y implies a <= x or a <= y); in a finite lattice that extends to
// arbitrary finite joins by induction, with the bottom exclusion covering the
// empty join. Only offered on frames.
// ---------------------------------------------------------------------------

inline bool is_join_prime(int a, const FinFrame& f) {
  require(a >= 0 && a < f.size(), "unknown-label", "join-primality query outside the frame");
  if (a == f.bottom()) return false;
  for (int x = 0; x < f.size(); ++x)
    for (int y = x; y < f.size(); ++y)
      if (f.le(a, f.join(x, y)) && !f.le(a, x) && !f.le(a, y)) return false;
  return true;
}

inline std::vector<int> join_primes(const FinFrame& f) {
  std::vector<int> out;
  for (int a = 0; a < f.size(); ++a)
    if (is_join_prime(a, f)) out.push_back(a);
  return out;
}

// every element is the join of the join-primes below it
inline bool has_enough_join_primes(const FinFrame& f) {
  std::vector<int> primes = join_primes(f);
  for (int x = 0; x < f.size(); ++x) {
    int acc = f.bottom();
    for (int p : primes)
      if (f.le(p, x)) acc = f.join(acc, p);
    if (acc != x) return false;
  }
  return true;
}

}  // namespace triposcope
