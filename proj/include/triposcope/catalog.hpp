#pragma once

#include <string>
#include <vector>

#include "triposcope/finset.hpp"
#include "triposcope/order.hpp"

namespace triposcope {

// Small structures the exhaustive suites range over.

inline SetPtr canonical_set(const std::string& prefix, int n) {
  std::vector<std::string> els;
  els.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) els.push_back(prefix + std::to_string(i + 1));
  return make_set(prefix + std::to_string(n), std::move(els));
}

inline PosetPtr chain_poset(int n) {
  std::vector<std::string> els;
  for (int i = 0; i < n; ++i) els.push_back("c" + std::to_string(i));
  std::vector<std::pair<int, int>> le;
  for (int i = 0; i + 1 < n; ++i) le.emplace_back(i, i + 1);
  return poset_from_pairs(std::move(els), le);
}

inline PosetPtr antichain_poset(int n) {
  std::vector<std::string> els;
  for (int i = 0; i < n; ++i) els.push_back("a" + std::to_string(i));
  return poset_from_pairs(std::move(els), {});
}

// l <= top >= r
inline PosetPtr vee_poset() { return poset_from_pairs({"l", "top", "r"}, {{0, 1}, {2, 1}}); }

// x >= bot <= y
inline PosetPtr wedge_poset() { return poset_from_pairs({"x", "bot", "y"}, {{1, 0}, {1, 2}}); }

inline FramePtr chain_frame(int n) { return frame_from_poset(chain_poset(n)); }

inline FramePtr two_chain() {
  static const FramePtr f = chain_frame(2);
  return f;
}

// the 4-element boolean frame, as lower sets of a 2-antichain
inline FramePtr bool4_frame() {
  static const FramePtr f = lower_sets(antichain_poset(2)).frame;
  return f;
}

// Every distributive lattice with at most 5 elements, up to isomorphism:
// chains 1..5, the boolean 4, low(l <= top >= r), low(x >= bot <= y).
// (A distributive lattice is the lower sets of its join-primes; the only
// posets whose lower-set frame has at most 5 elements are the chains of
// length <= 4, the 2-antichain, the vee and the wedge.)
inline const std::vector<FramePtr>& frames_up_to_5() {
  static const std::vector<FramePtr> frames = [] {
    std::vector<FramePtr> out;
    for (int n = 1; n <= 5; ++n) out.push_back(chain_frame(n));
    out.push_back(bool4_frame());
    out.push_back(lower_sets(vee_poset()).frame);
    out.push_back(lower_sets(wedge_poset()).frame);
    return out;
  }();
  return frames;
}

// All labeled posets on n named points (every reflexive-antisymmetric-
// transitive relation), in a deterministic order.
inline std::vector<PosetPtr> all_posets_on(int n) {
  require(n <= 4, "size-guard", "labeled poset enumeration limited to 4 points");
  std::vector<std::string> els;
  for (int i = 0; i < n; ++i) els.push_back("p" + std::to_string(i + 1));
  std::vector<PosetPtr> out;
  int pairs = n * (n - 1);
  std::vector<std::pair<int, int>> slots;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b) slots.emplace_back(a, b);
  for (std::uint32_t bits = 0; bits < (1u << pairs); ++bits) {
    FinPoset p;
    p.elements = els;
    p.leq.assign(static_cast<size_t>(n) * n, 0);
    for (int a = 0; a < n; ++a) p.leq[static_cast<size_t>(a) * n + a] = 1;
    for (int s = 0; s < pairs; ++s)
      if (bits & (1u << s))
        p.leq[static_cast<size_t>(slots[static_cast<size_t>(s)].first) * n +
              slots[static_cast<size_t>(s)].second] = 1;
    bool ok = true;
    for (int a = 0; a < n && ok; ++a)
      for (int b = 0; b < n && ok; ++b) {
        if (a != b && p.le(a, b) && p.le(b, a)) ok = false;
        if (p.le(a, b))
          for (int c = 0; c < n && ok; ++c)
            if (p.le(b, c) && !p.le(a, c)) ok = false;
      }
    if (ok) out.push_back(std::make_shared<FinPoset>(std::move(p)));
  }
  return out;
}

inline std::vector<PosetPtr> all_posets_up_to(int n) {
  std::vector<PosetPtr> out;
  for (int k = 0; k <= n; ++k) {
    auto batch = all_posets_on(k);
    out.insert(out.end(), batch.begin(), batch.end());
  }
  return out;
}

}  // namespace triposcope
