#include "twospace/adversary.hpp"

#include <algorithm>

namespace twospace {

namespace {

// Shared per-scheme tables: transcript marginal, bit posteriors, receiver
// success, and the decryption-value distribution under the private-key
// posterior.
struct Context {
  ReceiverSuccess recv;
  std::map<std::string, Rational> ct_prob;
  std::map<std::string, FiniteDist> bit_posterior;
  FiniteDist priv_posterior;

  explicit Context(const SchemeInstance& s)
      : recv(receiver_success(s)),
        ct_prob(transcript_marginal(s)),
        bit_posterior(transcript_posteriors(s)),
        priv_posterior(private_key_posterior(s)) {}

  // Pr(dec(priv)(ct) = bit) with priv drawn from the posterior.
  Rational dec_prob(const SchemeInstance& s, const std::string& ct, int bit) const {
    Rational p;
    for (const auto& [priv, w] : priv_posterior.outcomes())
      if (s.receiver.decryption.at(priv[0]).at(ct) == bit)
        p += w;
    return p;
  }

  Rational posterior_of(const std::string& ct, int bit) const {
    return bit_posterior.at(ct).weight_of(Label{bit ? "1" : "0"});
  }
};

Rational weighted_total(const std::map<std::string, Rational>& ct_prob,
                        const std::map<std::string, TranscriptDiag>& diags) {
  Rational total;
  for (const auto& [ct, diag] : diags)
    total += ct_prob.at(ct) * diag.eve_correct;
  return total;
}

void note_partial_overlap(const OverlapAnalysis& overlap, AttackReport& report) {
  if (overlap.partial_overlap_keys.empty())
    return;
  std::string keys;
  for (const auto& k : overlap.partial_overlap_keys)
    keys += (keys.empty() ? "" : ", ") + k;
  report.notes.push_back("partial-overlap keys present: " + keys);
}

} // namespace

std::string to_string(Strategy s) {
  switch (s) {
  case Strategy::AssumeS1: return "assume-s1";
  case Strategy::AssumeS2: return "assume-s2";
  case Strategy::Mixed: return "mixed";
  case Strategy::BayesOptimal: return "bayes-optimal";
  case Strategy::ReceiverEmulation: return "receiver-emulation";
  case Strategy::TripleSampling: return "triple-sampling";
  }
  return "?";
}

std::string to_string(Fallback f) {
  return f == Fallback::Abstain ? "abstain" : "uniform";
}

std::optional<Strategy> strategy_from_string(const std::string& name) {
  if (name == "assume-s1") return Strategy::AssumeS1;
  if (name == "assume-s2") return Strategy::AssumeS2;
  if (name == "mixed") return Strategy::Mixed;
  if (name == "bayes-optimal") return Strategy::BayesOptimal;
  if (name == "receiver-emulation") return Strategy::ReceiverEmulation;
  if (name == "triple-sampling") return Strategy::TripleSampling;
  return std::nullopt;
}

AttackReport attack_space_assumption(const SchemeInstance& s, SpaceId assumed,
                                     Fallback fallback) {
  const Context ctx(s);
  const auto overlap = overlap_analysis(s);
  const auto image = ciphertext_image(s, assumed);

  AttackReport report;
  report.strategy = assumed == SpaceId::S2 ? Strategy::AssumeS2 : Strategy::AssumeS1;
  report.fallback = fallback;
  report.p_b = ctx.recv.p_b;

  for (const auto& [ct, prob] : ctx.ct_prob) {
    TranscriptDiag diag;
    diag.prob = prob;
    diag.engaged = image.count(ct) != 0;
    if (*diag.engaged) {
      for (int bit : {0, 1})
        diag.eve_correct += ctx.posterior_of(ct, bit) * ctx.dec_prob(s, ct, bit);
    } else if (fallback == Fallback::UniformGuess) {
      diag.eve_correct = Rational(1, 2);
    }
    report.per_transcript.emplace(ct, std::move(diag));
  }
  report.p_e = weighted_total(ctx.ct_prob, report.per_transcript);

  const auto& tau = assumed == SpaceId::S2 ? overlap.tau1 : overlap.tau2;
  if (fallback == Fallback::Abstain && tau.has_value()) {
    const Rational rho = s.space_prior;
    report.formula_prediction =
        assumed == SpaceId::S2
            ? rho * *tau * overlap.q1 + (Rational(1) - rho) * overlap.q2
            : rho * overlap.q1 + (Rational(1) - rho) * *tau * overlap.q2;
    report.formula_gap = abs(report.p_e - *report.formula_prediction);
  } else if (fallback == Fallback::Abstain) {
    report.notes.push_back(assumed == SpaceId::S2
                               ? "tau1 undefined; formula omitted"
                               : "tau2 undefined; formula omitted");
  } else {
    report.notes.push_back("uniform-guess fallback: closed form models abstain accounting");
  }
  note_partial_overlap(overlap, report);
  return report;
}

AttackReport mix_strategies(const SchemeInstance& s, const Rational& lambda) {
  if (lambda < Rational(0) || lambda > Rational(1))
    throw ValidationError("mix_strategies: lambda outside [0,1]");
  const auto on_s2 = attack_space_assumption(s, SpaceId::S2, Fallback::Abstain);
  const auto on_s1 = attack_space_assumption(s, SpaceId::S1, Fallback::Abstain);
  const Rational co = Rational(1) - lambda;

  AttackReport report;
  report.strategy = Strategy::Mixed;
  report.fallback = Fallback::Abstain;
  report.lambda = lambda;
  report.p_b = on_s2.p_b;
  report.p_e = lambda * on_s2.p_e + co * on_s1.p_e;
  for (const auto& [ct, d2] : on_s2.per_transcript) {
    const auto& d1 = on_s1.per_transcript.at(ct);
    TranscriptDiag diag;
    diag.prob = d2.prob;
    diag.eve_correct = lambda * d2.eve_correct + co * d1.eve_correct;
    report.per_transcript.emplace(ct, std::move(diag));
  }
  if (on_s2.formula_prediction && on_s1.formula_prediction) {
    report.formula_prediction =
        lambda * *on_s2.formula_prediction + co * *on_s1.formula_prediction;
    report.formula_gap = abs(report.p_e - *report.formula_prediction);
  }
  for (const auto* endpoint : {&on_s2, &on_s1})
    for (const auto& note : endpoint->notes)
      if (std::find(report.notes.begin(), report.notes.end(), note) ==
          report.notes.end())
        report.notes.push_back(note);
  return report;
}

AttackReport attack_bayes_optimal(const SchemeInstance& s) {
  const Context ctx(s);
  AttackReport report;
  report.strategy = Strategy::BayesOptimal;
  report.p_b = ctx.recv.p_b;

  for (const auto& [ct, prob] : ctx.ct_prob) {
    TranscriptDiag diag;
    diag.prob = prob;
    const auto [best, tie] = ctx.bit_posterior.at(ct).argmax();
    if (tie) {
      diag.eve_correct = Rational(1, 2); // fair-coin resolution
      diag.decision = "tie";
    } else {
      diag.eve_correct = ctx.bit_posterior.at(ct).weight_of(best);
      diag.decision = best[0];
    }
    report.per_transcript.emplace(ct, std::move(diag));
  }
  report.p_e = weighted_total(ctx.ct_prob, report.per_transcript);
  return report;
}

AttackReport attack_receiver_emulation(const SchemeInstance& s) {
  const Context ctx(s);
  AttackReport report;
  report.strategy = Strategy::ReceiverEmulation;
  report.p_b = ctx.recv.p_b;

  Rational global_sigma;
  for (const auto& [ct, prob] : ctx.ct_prob) {
    TranscriptDiag diag;
    diag.prob = prob;

    const Rational dec0 = ctx.dec_prob(s, ct, 0);
    const Rational dec1 = ctx.dec_prob(s, ct, 1);
    const Rational beta0 = ctx.posterior_of(ct, 0);
    const Rational beta1 = ctx.posterior_of(ct, 1);

    // Exact success: Eve's key is an independent copy of the receiver's.
    diag.eve_correct = beta0 * dec0 + beta1 * dec1;
    diag.sigma = dec0 * dec0 + dec1 * dec1;
    diag.p = ctx.recv.per_transcript.at(ct);
    const Rational sp = *diag.sigma * *diag.p;
    diag.formula = sp + (Rational(1) - *diag.sigma) * (Rational(1) - *diag.p);
    diag.formula_gap = abs(diag.eve_correct - *diag.formula);

    // Factorization test for {K_C = K_B} and {K_B = K_A} given the
    // transcript: Pr(both) = sum_b beta(b) * dec_prob(b)^2.
    const Rational pr_both = beta0 * dec0 * dec0 + beta1 * dec1 * dec1;
    diag.independent = pr_both == sp;

    global_sigma += prob * *diag.sigma;
    report.per_transcript.emplace(ct, std::move(diag));
  }
  for (const auto& [ct, diag] : report.per_transcript)
    if (!*diag.independent)
      report.notes.push_back("independence violated at ct=" + ct);
  report.p_e = weighted_total(ctx.ct_prob, report.per_transcript);
  report.global_sigma = global_sigma;
  report.global_formula_misuse =
      global_sigma * report.p_b +
      (Rational(1) - global_sigma) * (Rational(1) - report.p_b);
  return report;
}

AttackReport attack_triple_sampling(const SchemeInstance& s) {
  const Context ctx(s);
  AttackReport report;
  report.strategy = Strategy::TripleSampling;
  report.p_b = ctx.recv.p_b;

  // Keys the sender can actually use, from spaces with positive prior.
  std::vector<std::string> possible_keys;
  for (const auto& [space, keys, prior] :
       {std::tuple{SpaceId::S1, &s.space1, s.space_prior},
        std::tuple{SpaceId::S2, &s.space2, Rational(1) - s.space_prior}}) {
    if (prior.is_zero())
      continue;
    for (const auto& [key, w] : *keys)
      if (!w.is_zero())
        possible_keys.push_back(key);
  }

  for (const auto& [ct, prob] : ctx.ct_prob) {
    TranscriptDiag diag;
    diag.prob = prob;
    std::uint64_t zeros = 0, ones = 0;
    for (int bit : {0, 1}) {
      for (const auto& key : possible_keys) {
        if (s.ct_of(key, bit) != ct)
          continue;
        for (const auto& [priv, w] : ctx.priv_posterior.outcomes())
          if (s.receiver.decryption.at(priv[0]).at(ct) == bit)
            (bit == 0 ? zeros : ones) += 1;
      }
    }
    diag.pool_zeros = zeros;
    diag.pool_ones = ones;
    const std::uint64_t total = zeros + ones;
    if (total == 0) {
      diag.eve_correct = Rational(1, 2);
      report.notes.push_back("empty consistent pool at ct=" + ct + "; uniform guess");
    } else {
      const Rational frac0(static_cast<long>(zeros), static_cast<long>(total));
      const Rational frac1(static_cast<long>(ones), static_cast<long>(total));
      diag.eve_correct =
          ctx.posterior_of(ct, 0) * frac0 + ctx.posterior_of(ct, 1) * frac1;
    }
    report.per_transcript.emplace(ct, std::move(diag));
  }
  report.p_e = weighted_total(ctx.ct_prob, report.per_transcript);
  return report;
}

AttackReport run_attack(const SchemeInstance& s, const StrategySpec& spec) {
  switch (spec.kind) {
  case Strategy::AssumeS1:
    return attack_space_assumption(s, SpaceId::S1, spec.fallback);
  case Strategy::AssumeS2:
    return attack_space_assumption(s, SpaceId::S2, spec.fallback);
  case Strategy::Mixed:
    return mix_strategies(s, spec.lambda);
  case Strategy::BayesOptimal:
    return attack_bayes_optimal(s);
  case Strategy::ReceiverEmulation:
    return attack_receiver_emulation(s);
  case Strategy::TripleSampling:
    return attack_triple_sampling(s);
  }
  throw Error("run_attack: unknown strategy");
}

ConditionCheck check_paper_conditions(const SchemeInstance& s) {
  const auto overlap = overlap_analysis(s);
  if (!overlap.tau1.has_value())
    throw Error("check_paper_conditions: tau1 undefined for scheme '" + s.name + "'");
  const auto attack = attack_space_assumption(s, SpaceId::S2, Fallback::Abstain);

  ConditionCheck check;
  check.q1 = overlap.q1;
  check.q2 = overlap.q2;
  check.tau1 = *overlap.tau1;
  check.engagement = overlap.q2 + *overlap.tau1 * overlap.q1;
  check.p_e = attack.p_e;
  check.p_b = attack.p_b;
  check.q2_gt_q1 = overlap.q2 > overlap.q1;
  check.sum_gt_1 = overlap.q1 + overlap.q2 > Rational(1);
  check.tau1_lt_1 = *overlap.tau1 < Rational(1);
  check.engagement_gt_1 = check.engagement > Rational(1);
  check.verdict_pe_lt_pb = attack.p_e < attack.p_b;
  return check;
}

} // namespace twospace
