#pragma once

#include <random>

#include "stateq/linear.hpp"
#include "stateq/parse.hpp"

namespace stateq {

// Seeded generator with hand-rolled draws on top of mt19937_64 so sequences
// are identical on every platform.
class TestRng {
 public:
  explicit TestRng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t below(std::uint64_t n) {
    // rejection sampling keeps the draw unbiased
    std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n + 1) % n;
    for (;;) {
      std::uint64_t v = eng_();
      if (v <= limit) return v % n;
    }
  }

  std::uint64_t range(std::uint64_t lo, std::uint64_t hi) {  // inclusive
    return lo + below(hi - lo + 1);
  }

  bool chance_percent(std::uint64_t p) { return below(100) < p; }

 private:
  std::mt19937_64 eng_;
};

struct RandomNetOptions {
  std::uint64_t max_places = 5;
  std::uint64_t max_transitions = 5;
  std::uint64_t density_percent = 30;
  std::uint64_t max_weight = 2;
  std::uint64_t max_tokens = 3;
  bool acyclic = false;  // forward arcs only over a random node permutation
};

NetFile random_net(TestRng& rng, const RandomNetOptions& options = {});

// Final marking drawn from a random fired sequence (reachable by
// construction) or uniformly (mixed cases).
ReachabilityProblem random_problem(TestRng& rng, const NetFile& netfile,
                                   bool from_fired_sequence);

struct RandomSystemOptions {
  std::uint64_t min_vars = 1, max_vars = 5;
  std::uint64_t max_rows = 4;
  std::uint64_t max_abs_coeff = 3;
  std::uint64_t max_abs_rhs = 6;
};

LinearSystem random_system(TestRng& rng, const RandomSystemOptions& options = {});

}  // namespace stateq
