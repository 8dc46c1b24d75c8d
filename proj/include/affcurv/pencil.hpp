#pragma once

#include <iostream>
#include <optional>
#include <vector>

#include "affcurv/polynomial.hpp"

namespace affcurv {

// Genericity is probabilistic: every randomized choice is drawn from a large
// coefficient set and each derived integer must agree across independent
// trials. Disagreement widens the set and resamples; persistent disagreement
// is reported as a failure, never silently patched.
struct GenericityPolicy {
  std::uint64_t seed = 424242;  // documented default, reproducible runs
  int trials = 3;
  int rounds = 5;
  bool log_warnings = true;
};

struct PencilChoice {
  std::vector<Rat> h;  // coefficients of the linear form
  std::uint64_t seed = 0;
  int trials = 0;
};

// coefficient set: nonzero integers up to 2^(20 + 2*round), capped
inline Rat generic_coeff(Rng& rng, int round) {
  int shift = std::min(20 + 2 * round, 28);
  return rat(rng.next_coeff(1ULL << shift));
}

inline PencilChoice sample_pencil(std::uint64_t seed, int nvars, int trial, int round) {
  std::uint64_t s = Rng::derive(seed, 0x9c1l + 1000003ULL * trial + 17ULL * round);
  Rng rng(s);
  PencilChoice p;
  p.seed = seed;
  for (int i = 0; i < nvars; ++i) p.h.push_back(generic_coeff(rng, round));
  return p;
}

// Runs `f` on `trials` independent randomizations and requires full agreement
// of the produced value. f may return nullopt to signal a degenerate draw.
template <class T, class F>
T with_agreement(const GenericityPolicy& pol, std::uint64_t tag, const char* what, F&& f,
                 int* out_trials = nullptr, int* out_round = nullptr) {
  for (int round = 0; round < pol.rounds; ++round) {
    std::optional<T> agreed;
    bool ok = true;
    for (int trial = 0; trial < pol.trials && ok; ++trial) {
      Rng rng(Rng::derive(pol.seed ^ tag, 7919ULL * trial + 104729ULL * round));
      std::optional<T> v = f(rng, round);
      if (!v) { ok = false; break; }
      if (!agreed) {
        agreed = v;
      } else if (!(*agreed == *v)) {
        ok = false;
      }
    }
    if (ok && agreed) {
      if (out_trials) *out_trials = pol.trials;
      if (out_round) *out_round = round;
      return *agreed;
    }
    if (pol.log_warnings)
      std::cerr << "[affcurv] genericity retry (" << what << "), widening round " << (round + 1)
                << "\n";
  }
  fail(Errc::GenericityFailure,
       std::string("no agreement across randomized trials for ") + what);
}

}  // namespace affcurv
