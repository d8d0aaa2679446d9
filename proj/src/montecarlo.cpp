#include "twospace/montecarlo.hpp"

#include <cmath>

#include "twospace/analysis.hpp"

namespace twospace {

std::uint64_t mix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

SplitMix64 trial_rng(std::uint64_t seed, std::uint64_t trial_index) {
  return SplitMix64{mix64(seed ^ mix64(trial_index + 1))};
}

std::uint64_t uniform_below(SplitMix64& g, std::uint64_t n) {
  if (n == 0)
    throw ValidationError("uniform_below: empty range");
  if (n == 1)
    return 0;
  // Accept only draws below the largest multiple of n, so every residue is
  // equally likely.
  const std::uint64_t rem = (UINT64_MAX % n + 1) % n; // 2^64 mod n
  const std::uint64_t limit = UINT64_MAX - rem;
  std::uint64_t x;
  do {
    x = g.next();
  } while (x > limit);
  return x % n;
}

mpz_class uniform_below_mpz(SplitMix64& g, const mpz_class& n) {
  if (n <= 0)
    throw ValidationError("uniform_below_mpz: empty range");
  if (n == 1)
    return 0;
  const std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  const std::size_t words = (bits + 63) / 64;
  mpz_class span = 1;
  mpz_mul_2exp(span.get_mpz_t(), span.get_mpz_t(), words * 64);
  const mpz_class limit = span - span % n; // accept x < limit
  while (true) {
    mpz_class x = 0;
    for (std::size_t w = 0; w < words; ++w) {
      mpz_mul_2exp(x.get_mpz_t(), x.get_mpz_t(), 64);
      x += mpz_class(g.next());
    }
    if (x < limit)
      return x % n;
  }
}

DistSampler::DistSampler(const FiniteDist& d) {
  // Common denominator of all weights.
  mpz_class common = 1;
  for (const auto& [label, w] : d.outcomes())
    mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), w.den().get_mpz_t());

  mpz_class cum = 0;
  cum_mpz_.reserve(d.size());
  for (const auto& [label, w] : d.outcomes()) {
    cum += w.num() * (common / w.den());
    cum_mpz_.push_back(cum);
  }
  total_mpz_ = common; // weights sum to 1, so the integer weights sum to D

  fits_u64_ = total_mpz_.fits_ulong_p() && sizeof(unsigned long) == 8;
  if (fits_u64_) {
    total_u64_ = total_mpz_.get_ui();
    cum_u64_.reserve(cum_mpz_.size());
    for (const auto& c : cum_mpz_)
      cum_u64_.push_back(c.get_ui());
  }
}

std::size_t DistSampler::sample(SplitMix64& g) const {
  if (fits_u64_) {
    const std::uint64_t u = uniform_below(g, total_u64_);
    std::size_t lo = 0, hi = cum_u64_.size() - 1;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (u < cum_u64_[mid])
        hi = mid;
      else
        lo = mid + 1;
    }
    return lo;
  }
  const mpz_class u = uniform_below_mpz(g, total_mpz_);
  std::size_t lo = 0, hi = cum_mpz_.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (u < cum_mpz_[mid])
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

bool bernoulli(SplitMix64& g, const Rational& r) {
  if (r < Rational(0) || r > Rational(1))
    throw ValidationError("bernoulli: probability outside [0,1]");
  if (r.is_zero())
    return false;
  if (r == Rational(1))
    return true;
  if (r.den().fits_ulong_p() && sizeof(unsigned long) == 8)
    return uniform_below(g, r.den().get_ui()) < r.num().get_ui();
  return uniform_below_mpz(g, r.den()) < r.num();
}

double hoeffding_radius(std::uint64_t trials, const Rational& confidence) {
  if (trials == 0)
    throw ValidationError("hoeffding_radius: trials must be positive");
  const double delta = 1.0 - confidence.to_double();
  if (!(delta > 0.0) || !(delta < 1.0))
    throw ValidationError("hoeffding_radius: confidence outside (0,1)");
  return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(trials)));
}

namespace {

// Everything the per-trial loop needs, precomputed.
struct SimTables {
  Rational rho;
  FiniteDist space1_dist, space2_dist; // over (key) labels
  DistSampler space1_keys, space2_keys;
  FiniteDist priv_dist; // over (priv) labels
  DistSampler priv;
  std::set<std::string> image1, image2;
  std::map<std::string, std::pair<bool, int>> bayes_decision; // ct -> (tie, bit)
  std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> pools; // ct -> (zeros, ones)

  static FiniteDist space_dist(const std::map<std::string, Rational>& keys) {
    std::vector<FiniteDist::Outcome> pairs;
    for (const auto& [key, w] : keys)
      pairs.emplace_back(Label{key}, w);
    return FiniteDist::from_weights(pairs);
  }

  SimTables(const SchemeInstance& s, const StrategySpec& spec)
      : rho(s.space_prior),
        space1_dist(space_dist(s.space1)),
        space2_dist(space_dist(s.space2)),
        space1_keys(space1_dist),
        space2_keys(space2_dist),
        priv_dist(private_key_posterior(s)),
        priv(priv_dist),
        image1(ciphertext_image(s, SpaceId::S1)),
        image2(ciphertext_image(s, SpaceId::S2)) {
    if (spec.kind == Strategy::BayesOptimal) {
      for (const auto& [ct, posterior] : transcript_posteriors(s)) {
        const auto [label, tie] = posterior.argmax();
        bayes_decision[ct] = {tie, label[0] == "1" ? 1 : 0};
      }
    }
    if (spec.kind == Strategy::TripleSampling) {
      const auto report = attack_triple_sampling(s);
      for (const auto& [ct, diag] : report.per_transcript)
        pools[ct] = {*diag.pool_zeros, *diag.pool_ones};
    }
  }
};

int decrypt(const SchemeInstance& s, const std::string& priv, const std::string& ct) {
  return s.receiver.decryption.at(priv).at(ct);
}

// One sampled private key from the posterior.
const std::string& draw_priv(const SimTables& t, SplitMix64& g) {
  return t.priv_dist.outcomes()[t.priv.sample(g)].first[0];
}

// Eve's output for the trial, or -1 for abstain. Consumes Eve's coins in a
// fixed documented order.
int eve_output(const SchemeInstance& s, const SimTables& t,
               const StrategySpec& spec, const std::string& ct, SplitMix64& g) {
  const auto assume = [&](SpaceId assumed) -> int {
    const auto& image = assumed == SpaceId::S1 ? t.image1 : t.image2;
    if (image.count(ct) != 0)
      return decrypt(s, draw_priv(t, g), ct);
    if (spec.fallback == Fallback::UniformGuess)
      return static_cast<int>(uniform_below(g, 2));
    return -1;
  };

  switch (spec.kind) {
  case Strategy::AssumeS1:
    return assume(SpaceId::S1);
  case Strategy::AssumeS2:
    return assume(SpaceId::S2);
  case Strategy::Mixed:
    return assume(bernoulli(g, spec.lambda) ? SpaceId::S2 : SpaceId::S1);
  case Strategy::BayesOptimal: {
    const auto& [tie, bit] = t.bayes_decision.at(ct);
    return tie ? static_cast<int>(uniform_below(g, 2)) : bit;
  }
  case Strategy::ReceiverEmulation:
    return decrypt(s, draw_priv(t, g), ct);
  case Strategy::TripleSampling: {
    const auto& [zeros, ones] = t.pools.at(ct);
    if (zeros + ones == 0)
      return static_cast<int>(uniform_below(g, 2));
    return uniform_below(g, zeros + ones) < zeros ? 0 : 1;
  }
  }
  throw Error("eve_output: unknown strategy");
}

} // namespace

SimCounts simulate_trials(const SchemeInstance& s, const SimConfig& cfg,
                          std::uint64_t first, std::uint64_t count) {
  const auto violations = validate_scheme(s);
  if (!violations.empty())
    throw ValidationError("simulate: scheme invalid: " + violations.front());
  const SimTables tables(s, cfg.strategy);

  SimCounts counts;
  for (std::uint64_t i = 0; i < count; ++i) {
    SplitMix64 g = trial_rng(cfg.seed, first + i);

    // Draw order: space, key, bit, receiver key, then Eve's coins.
    const bool in_s1 = bernoulli(g, tables.rho);
    const auto& key_dist = in_s1 ? tables.space1_dist : tables.space2_dist;
    const auto& key_sampler = in_s1 ? tables.space1_keys : tables.space2_keys;
    const std::string& key = key_dist.outcomes()[key_sampler.sample(g)].first[0];
    const int bit = static_cast<int>(uniform_below(g, 2));
    const std::string& ct = s.ct_of(key, bit);
    const std::string& priv = draw_priv(tables, g);

    if (decrypt(s, priv, ct) == bit)
      ++counts.receiver_hits;
    if (eve_output(s, tables, cfg.strategy, ct, g) == bit)
      ++counts.eve_hits;
  }
  return counts;
}

SimResult simulate_scheme(const SchemeInstance& s, const SimConfig& cfg) {
  if (cfg.trials == 0)
    throw ValidationError("simulate: trials must be >= 1");
  SimResult result;
  result.trials = cfg.trials;
  result.seed = cfg.seed;
  result.counts = simulate_trials(s, cfg, 0, cfg.trials);

  const auto trials_rat = Rational(mpz_class(cfg.trials), mpz_class(1));
  result.empirical_pb =
      Rational(mpz_class(result.counts.receiver_hits), mpz_class(1)) / trials_rat;
  result.empirical_pe =
      Rational(mpz_class(result.counts.eve_hits), mpz_class(1)) / trials_rat;

  const auto attack = run_attack(s, cfg.strategy);
  result.exact_pb = attack.p_b;
  result.exact_pe = attack.p_e;
  result.hoeffding_radius = hoeffding_radius(cfg.trials, cfg.confidence);
  result.agrees_with_exact =
      within_radius(result.exact_pb, result.empirical_pb, result.hoeffding_radius) &&
      within_radius(result.exact_pe, result.empirical_pe, result.hoeffding_radius);
  return result;
}

bool within_radius(const Rational& exact, const Rational& empirical, double radius) {
  return std::abs((empirical - exact).to_double()) <= radius;
}

bool mc_agreement_check(const Rational& exact, const SimResult& sim) {
  return within_radius(exact, sim.empirical_pe, sim.hoeffding_radius);
}

} // namespace twospace
