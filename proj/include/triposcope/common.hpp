#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace triposcope {

// Typed failure: `kind` is a stable machine-readable tag ("cone-error",
// "not-a-lattice", ...), what() carries the human-readable detail.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& msg)
      : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}

  const std::string& kind() const { return kind_; }

private:
  std::string kind_;
};

[[noreturn]] inline void fail(const std::string& kind, const std::string& msg) {
  throw Error(kind, msg);
}

inline void require(bool cond, const std::string& kind, const std::string& msg) {
  if (!cond) fail(kind, msg);
}

// Deterministic RNG. mt19937_64 has a standardized sequence; bounded draws use
// modulo rather than std::uniform_int_distribution, whose output is
// implementation-defined and would break byte-identical reports.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  // uniform-ish in [0, n); n <= 0 yields 0
  int below(int n) {
    if (n <= 0) return 0;
    return static_cast<int>(next() % static_cast<std::uint64_t>(n));
  }

  int range(int lo, int hi) { return lo + below(hi - lo + 1); }  // inclusive

  bool coin() { return (next() & 1u) != 0; }

  // true with probability num/den
  bool chance(int num, int den) { return below(den) < num; }

  template <class T>
  const T& pick(const std::vector<T>& xs) {
    if (xs.empty()) fail("internal-error", "pick from empty vector");
    return xs[below(static_cast<int>(xs.size()))];
  }

  std::uint64_t fork() { return next(); }  // seed for a sub-generator

private:
  std::mt19937_64 gen_;
};

}  // namespace triposcope
