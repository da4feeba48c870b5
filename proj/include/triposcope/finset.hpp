#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "triposcope/common.hpp"

namespace triposcope {

// ---------------------------------------------------------------------------
// Finite sets and total functions: the base category. Everything downstream
// (predicates, contexts, PER carriers) is indexed by positions into a FinSet's
// fixed element order, so that order is part of the value and never changes.
// ---------------------------------------------------------------------------

struct FinSet {
  std::string id;
  std::vector<std::string> elements;
  std::unordered_map<std::string, int> pos;  // label -> index

  int size() const { return static_cast<int>(elements.size()); }

  const std::string& label(int i) const { return elements[static_cast<size_t>(i)]; }

  bool contains(const std::string& lbl) const { return pos.find(lbl) != pos.end(); }

  int index(const std::string& lbl) const {
    auto it = pos.find(lbl);
    if (it == pos.end()) fail("unknown-label", "no element '" + lbl + "' in set '" + id + "'");
    return it->second;
  }
};

using SetPtr = std::shared_ptr<const FinSet>;

inline SetPtr make_set(std::string id, std::vector<std::string> elements) {
  auto s = std::make_shared<FinSet>();
  s->id = std::move(id);
  s->elements = std::move(elements);
  for (int i = 0; i < s->size(); ++i) {
    auto [it, fresh] = s->pos.emplace(s->elements[static_cast<size_t>(i)], i);
    (void)it;
    if (!fresh)
      fail("duplicate-label",
           "set '" + s->id + "' repeats element '" + s->elements[static_cast<size_t>(i)] + "'");
  }
  return s;
}

inline bool same_set(const SetPtr& a, const SetPtr& b) {
  if (a == b) return true;
  return a->id == b->id && a->elements == b->elements;
}

// the distinguished one-element set
inline const SetPtr& terminal_set() {
  static const SetPtr one = make_set("1", {"*"});
  return one;
}

struct FinMap {
  SetPtr dom;
  SetPtr cod;
  std::vector<int> table;  // dom index -> cod index

  int operator()(int i) const { return table[static_cast<size_t>(i)]; }
};

inline FinMap make_map(SetPtr dom, SetPtr cod, std::vector<int> table) {
  require(static_cast<int>(table.size()) == dom->size(), "map-error",
          "table size does not cover domain '" + dom->id + "'");
  for (int v : table)
    require(v >= 0 && v < cod->size(), "map-error",
            "image index out of range for codomain '" + cod->id + "'");
  return FinMap{std::move(dom), std::move(cod), std::move(table)};
}

inline FinMap identity_map(const SetPtr& a) {
  std::vector<int> t(static_cast<size_t>(a->size()));
  for (int i = 0; i < a->size(); ++i) t[static_cast<size_t>(i)] = i;
  return FinMap{a, a, std::move(t)};
}

inline bool same_map(const FinMap& f, const FinMap& g) {
  return same_set(f.dom, g.dom) && same_set(f.cod, g.cod) && f.table == g.table;
}

inline FinMap compose(const FinMap& g, const FinMap& f) {
  if (!same_set(f.cod, g.dom))
    fail("composition-error",
         "cannot compose: codomain '" + f.cod->id + "' is not domain '" + g.dom->id + "'");
  std::vector<int> t(f.table.size());
  for (size_t i = 0; i < f.table.size(); ++i)
    t[i] = g.table[static_cast<size_t>(f.table[i])];
  return FinMap{f.dom, g.cod, std::move(t)};
}

inline FinMap constant_map(const SetPtr& dom, const SetPtr& cod, int value) {
  require(value >= 0 && value < cod->size(), "map-error", "constant value out of range");
  return FinMap{dom, cod, std::vector<int>(static_cast<size_t>(dom->size()), value)};
}

inline FinMap bang(const SetPtr& a) { return constant_map(a, terminal_set(), 0); }

// ---------------------------------------------------------------------------
// Limit cones. `mediator` produces the unique factorizing map from a competing
// cone (given as its legs, in the same order as `legs`).
// ---------------------------------------------------------------------------

struct LimitCone {
  SetPtr apex;
  std::vector<FinMap> legs;
  std::function<FinMap(std::span<const FinMap>)> mediator;
};

inline std::string pair_label(const std::string& a, const std::string& b) {
  return "(" + a + "," + b + ")";
}

// A-major layout: index of (i, j) in A x B is i*|B| + j. Pair labels are the
// ordered pair of constituent labels, so file round trips are bit-exact.
inline LimitCone product(const SetPtr& a, const SetPtr& b) {
  std::vector<std::string> labels;
  labels.reserve(static_cast<size_t>(a->size()) * static_cast<size_t>(b->size()));
  std::vector<int> p1, p2;
  for (int i = 0; i < a->size(); ++i)
    for (int j = 0; j < b->size(); ++j) {
      labels.push_back(pair_label(a->label(i), b->label(j)));
      p1.push_back(i);
      p2.push_back(j);
    }
  SetPtr apex = make_set("(" + a->id + "*" + b->id + ")", std::move(labels));
  std::vector<FinMap> legs{FinMap{apex, a, std::move(p1)}, FinMap{apex, b, std::move(p2)}};
  LimitCone cone{apex, legs, nullptr};
  int bn = b->size();
  cone.mediator = [apex, a, b, bn](std::span<const FinMap> competing) -> FinMap {
    require(competing.size() == 2, "cone-error", "product mediator expects two legs");
    const FinMap& f = competing[0];
    const FinMap& g = competing[1];
    if (!same_set(f.dom, g.dom)) fail("cone-error", "competing cone legs have unequal domains");
    if (!same_set(f.cod, a) || !same_set(g.cod, b))
      fail("cone-error", "competing cone legs do not target the product factors");
    std::vector<int> t(f.table.size());
    for (size_t i = 0; i < f.table.size(); ++i) t[i] = f.table[i] * bn + g.table[i];
    return FinMap{f.dom, apex, std::move(t)};
  };
  return cone;
}

inline FinMap pairing(const FinMap& f, const FinMap& g) {
  if (!same_set(f.dom, g.dom)) fail("cone-error", "pairing requires equal domains");
  LimitCone cone = product(f.cod, g.cod);
  std::vector<FinMap> legs{f, g};
  return cone.mediator(legs);
}

inline FinMap diagonal(const SetPtr& a) {
  LimitCone cone = product(a, a);
  std::vector<int> t(static_cast<size_t>(a->size()));
  for (int i = 0; i < a->size(); ++i) t[static_cast<size_t>(i)] = i * a->size() + i;
  return FinMap{a, cone.apex, std::move(t)};
}

// apex = {(a,b) : f(a) = g(b)}, traversed in product order
inline LimitCone pullback(const FinMap& f, const FinMap& g) {
  if (!same_set(f.cod, g.cod))
    fail("cone-error", "pullback requires a cospan: codomains '" + f.cod->id + "' and '" +
                           g.cod->id + "' differ");
  const SetPtr& a = f.dom;
  const SetPtr& b = g.dom;
  std::vector<std::string> labels;
  std::vector<int> p1, p2;
  std::unordered_map<long long, int> at;  // (i,j) -> apex index
  for (int i = 0; i < a->size(); ++i)
    for (int j = 0; j < b->size(); ++j)
      if (f(i) == g(j)) {
        at[static_cast<long long>(i) * b->size() + j] = static_cast<int>(labels.size());
        labels.push_back(pair_label(a->label(i), b->label(j)));
        p1.push_back(i);
        p2.push_back(j);
      }
  SetPtr apex = make_set("pb(" + a->id + "," + b->id + ")", std::move(labels));
  std::vector<FinMap> legs{FinMap{apex, a, std::move(p1)}, FinMap{apex, b, std::move(p2)}};
  LimitCone cone{apex, legs, nullptr};
  auto lookup = std::make_shared<std::unordered_map<long long, int>>(std::move(at));
  FinMap fc = f, gc = g;
  cone.mediator = [apex, a, b, fc, gc, lookup](std::span<const FinMap> competing) -> FinMap {
    require(competing.size() == 2, "cone-error", "pullback mediator expects two legs");
    const FinMap& u = competing[0];
    const FinMap& v = competing[1];
    if (!same_set(u.dom, v.dom)) fail("cone-error", "competing cone legs have unequal domains");
    if (!same_set(u.cod, a) || !same_set(v.cod, b))
      fail("cone-error", "competing cone legs do not target the pullback feet");
    std::vector<int> t(u.table.size());
    for (size_t z = 0; z < u.table.size(); ++z) {
      if (fc(u.table[z]) != gc(v.table[z]))
        fail("cone-error", "competing cone does not commute with the cospan");
      t[z] = lookup->at(static_cast<long long>(u.table[z]) * b->size() + v.table[z]);
    }
    return FinMap{u.dom, apex, std::move(t)};
  };
  return cone;
}

// ---------------------------------------------------------------------------
// Exhaustive function enumeration: the substrate of every brute-force oracle.
// Tables are visited in lexicographic order (first domain element varies
// slowest), so two runs always yield identical sequences.
// ---------------------------------------------------------------------------

template <class F>
void for_each_table(int domSize, int codSize, F&& visit) {
  if (domSize == 0) {
    visit(std::vector<int>{});
    return;
  }
  if (codSize == 0) return;  // no maps out of a nonempty set into the empty set
  std::vector<int> t(static_cast<size_t>(domSize), 0);
  for (;;) {
    visit(static_cast<const std::vector<int>&>(t));
    int k = domSize - 1;
    while (k >= 0 && t[static_cast<size_t>(k)] == codSize - 1) {
      t[static_cast<size_t>(k)] = 0;
      --k;
    }
    if (k < 0) return;
    ++t[static_cast<size_t>(k)];
  }
}

template <class F>
void for_each_map(const SetPtr& a, const SetPtr& b, F&& visit) {
  for_each_table(a->size(), b->size(),
                 [&](const std::vector<int>& t) { visit(FinMap{a, b, t}); });
}

inline std::vector<FinMap> all_maps(const SetPtr& a, const SetPtr& b) {
  std::vector<FinMap> out;
  for_each_map(a, b, [&](const FinMap& m) { out.push_back(m); });
  return out;
}

}  // namespace triposcope
