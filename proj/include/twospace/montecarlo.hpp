#pragma once

#include <cstdint>
#include <vector>

#include "twospace/adversary.hpp"
#include "twospace/dist.hpp"
#include "twospace/scheme.hpp"

namespace twospace {

/// splitmix64: 64-bit state advanced by a fixed odd increment, output mixed
/// by two xor-multiply rounds. Produces the same stream on every platform.
struct SplitMix64 {
  std::uint64_t state = 0;

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
};

/// The splitmix64 output mix as a standalone bijection.
std::uint64_t mix64(std::uint64_t x);

/// Seed-derivation rule for trial streams: trial i draws from
/// SplitMix64{ mix64(seed ^ mix64(i + 1)) }. Every trial owns its stream,
/// so any partition of the trial range reproduces the sequential run.
SplitMix64 trial_rng(std::uint64_t seed, std::uint64_t trial_index);

/// Unbiased uniform draw from {0, ..., n-1} (n >= 1) by top-range rejection.
std::uint64_t uniform_below(SplitMix64& g, std::uint64_t n);
mpz_class uniform_below_mpz(SplitMix64& g, const mpz_class& n);

/// Exact sampler for a FiniteDist: weights are brought to a common
/// denominator D and an outcome is selected by cumulative inversion of a
/// uniform integer draw from {0, ..., D-1}. No floating point is involved.
class DistSampler {
public:
  explicit DistSampler(const FiniteDist& d);

  /// Index into the distribution's canonical outcome order.
  std::size_t sample(SplitMix64& g) const;

private:
  bool fits_u64_ = false;
  std::vector<std::uint64_t> cum_u64_;
  std::uint64_t total_u64_ = 0;
  std::vector<mpz_class> cum_mpz_;
  mpz_class total_mpz_;
};

/// Exact Bernoulli(r) draw, r in [0,1].
bool bernoulli(SplitMix64& g, const Rational& r);

struct SimConfig {
  std::uint64_t trials = 1;
  std::uint64_t seed = kDefaultSeed;
  StrategySpec strategy;
  Rational confidence = Rational(999, 1000);

  static constexpr std::uint64_t kDefaultSeed = 42;
};

/// Raw hit counts over a trial range; counts from disjoint ranges add.
struct SimCounts {
  std::uint64_t receiver_hits = 0;
  std::uint64_t eve_hits = 0;
};

struct SimResult {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  SimCounts counts;
  Rational empirical_pb;
  Rational empirical_pe;
  Rational exact_pb;
  Rational exact_pe;
  double hoeffding_radius = 0.0;
  bool agrees_with_exact = false;
};

/// Distribution-free confidence half-width sqrt(ln(2/(1-confidence)) / (2 trials)).
double hoeffding_radius(std::uint64_t trials, const Rational& confidence);

/// Runs trials [first, first+count) of the protocol under the configured
/// strategy. Identical (scheme, cfg, range) inputs produce identical counts
/// on every platform.
SimCounts simulate_trials(const SchemeInstance& s, const SimConfig& cfg,
                          std::uint64_t first, std::uint64_t count);

/// Full run over cfg.trials trials, with exact reference values attached.
SimResult simulate_scheme(const SchemeInstance& s, const SimConfig& cfg);

/// True iff |empirical - exact| <= radius for the strategy's empirical P_E.
bool mc_agreement_check(const Rational& exact, const SimResult& sim);
bool within_radius(const Rational& exact, const Rational& empirical, double radius);

} // namespace twospace
