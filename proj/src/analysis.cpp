#include "twospace/analysis.hpp"

#include <algorithm>

namespace twospace {

namespace {

void require_valid(const SchemeInstance& s) {
  const auto violations = validate_scheme(s);
  if (!violations.empty())
    throw ValidationError("scheme '" + s.name + "' invalid: " + violations.front());
}

int decrypt(const SchemeInstance& s, const std::string& priv, const std::string& ct) {
  return s.receiver.decryption.at(priv).at(ct);
}

} // namespace

bool JointModel::receiver_correct(const SchemeInstance& s, const Label& atom) {
  const int bit = atom[kBit] == "1" ? 1 : 0;
  return s.receiver.decryption.at(atom[kPriv]).at(atom[kCipher]) == bit;
}

FiniteDist private_key_posterior(const SchemeInstance& s) {
  std::vector<FiniteDist::Outcome> pairs;
  for (const auto& [priv, w] : s.receiver.private_keys)
    if (s.receiver.keygen.at(priv) == s.receiver.observed_public_key)
      pairs.emplace_back(Label{priv}, w);
  if (pairs.empty())
    throw ValidationError("scheme: observed public key has zero prior mass");
  return FiniteDist::from_weights(pairs);
}

JointModel build_joint(const SchemeInstance& s) {
  require_valid(s);
  const FiniteDist posterior = private_key_posterior(s);
  const Rational half(1, 2);

  std::vector<FiniteDist::Outcome> atoms;
  for (const auto& [space, keys, prior] :
       {std::tuple{std::string("S1"), &s.space1, s.space_prior},
        std::tuple{std::string("S2"), &s.space2, Rational(1) - s.space_prior}}) {
    if (prior.is_zero())
      continue;
    for (const auto& [key, kw] : *keys) {
      if (kw.is_zero())
        continue;
      for (int bit : {0, 1}) {
        const std::string& ct = s.ct_of(key, bit);
        for (const auto& [priv_label, pw] : posterior.outcomes()) {
          atoms.emplace_back(
              Label{space, key, bit ? "1" : "0", ct, priv_label[0]},
              prior * kw * half * pw);
        }
      }
    }
  }
  return JointModel{FiniteDist::from_weights(atoms)};
}

std::set<std::string> ciphertext_image(const SchemeInstance& s, SpaceId space) {
  const auto& keys = space == SpaceId::S1 ? s.space1 : s.space2;
  std::set<std::string> image;
  for (const auto& [key, w] : keys) {
    const auto& cts = s.cts_of(key);
    image.insert(cts.first);
    image.insert(cts.second);
  }
  return image;
}

OverlapAnalysis overlap_analysis(const SchemeInstance& s) {
  require_valid(s);
  OverlapAnalysis out;
  const auto image1 = ciphertext_image(s, SpaceId::S1);
  const auto image2 = ciphertext_image(s, SpaceId::S2);

  const auto classify = [&](const std::map<std::string, Rational>& keys,
                            const std::set<std::string>& other_image,
                            std::set<std::string>& full) {
    for (const auto& [key, w] : keys) {
      const auto& cts = s.cts_of(key);
      const int covered = static_cast<int>(other_image.count(cts.first) != 0) +
                          static_cast<int>(other_image.count(cts.second) != 0);
      if (cts.first == cts.second ? other_image.count(cts.first) != 0
                                  : covered == 2)
        full.insert(key);
      else if (covered == 1 && cts.first != cts.second)
        out.partial_overlap_keys.insert(key);
    }
  };
  classify(s.space1, image2, out.s12);
  classify(s.space2, image1, out.s21);

  // Within-space quantities, independent of the space prior: the receiver's
  // private key is drawn from the posterior, the bit is a fair coin.
  const FiniteDist posterior = private_key_posterior(s);
  const Rational half(1, 2);
  const auto correct_prob = [&](const std::string& key) {
    Rational p;
    for (int bit : {0, 1}) {
      const std::string& ct = s.ct_of(key, bit);
      for (const auto& [priv, pw] : posterior.outcomes())
        if (decrypt(s, priv[0], ct) == bit)
          p += half * pw;
    }
    return p;
  };

  const auto space_quantities = [&](const std::map<std::string, Rational>& keys,
                                    const std::set<std::string>& overlap,
                                    Rational& q, std::optional<Rational>& tau) {
    Rational correct_mass, overlap_correct_mass;
    for (const auto& [key, w] : keys) {
      if (w.is_zero())
        continue;
      const Rational c = w * correct_prob(key);
      correct_mass += c;
      if (overlap.count(key))
        overlap_correct_mass += c;
    }
    q = correct_mass; // key weights sum to 1
    if (correct_mass.is_zero())
      tau = std::nullopt;
    else
      tau = overlap_correct_mass / correct_mass;
  };
  space_quantities(s.space1, out.s12, out.q1, out.tau1);
  space_quantities(s.space2, out.s21, out.q2, out.tau2);
  return out;
}

ReceiverSuccess receiver_success(const SchemeInstance& s) {
  const JointModel joint = build_joint(s);
  ReceiverSuccess out;
  std::map<std::string, Rational> ct_mass;
  for (const auto& [atom, w] : joint.dist.outcomes()) {
    const std::string& ct = atom[JointModel::kCipher];
    ct_mass[ct] += w;
    if (JointModel::receiver_correct(s, atom)) {
      out.p_b += w;
      out.per_transcript[ct] += w;
    }
  }
  for (auto& [ct, mass] : ct_mass) {
    const auto it = out.per_transcript.find(ct);
    if (it == out.per_transcript.end())
      out.per_transcript[ct] = Rational(0);
    else
      it->second /= mass;
  }
  return out;
}

std::map<std::string, FiniteDist> transcript_posteriors(const SchemeInstance& s) {
  const JointModel joint = build_joint(s);
  std::map<std::string, std::vector<FiniteDist::Outcome>> per_ct;
  for (const auto& [atom, w] : joint.dist.outcomes())
    per_ct[atom[JointModel::kCipher]].push_back({Label{atom[JointModel::kBit]}, w});
  std::map<std::string, FiniteDist> out;
  for (auto& [ct, pairs] : per_ct) {
    std::map<Label, Rational> acc;
    for (auto& [bit, w] : pairs)
      acc[bit] += w;
    std::vector<FiniteDist::Outcome> merged(acc.begin(), acc.end());
    out.emplace(ct, FiniteDist::from_weights(merged));
  }
  return out;
}

std::map<std::string, Rational> transcript_marginal(const SchemeInstance& s) {
  const JointModel joint = build_joint(s);
  std::map<std::string, Rational> out;
  for (const auto& [atom, w] : joint.dist.outcomes())
    out[atom[JointModel::kCipher]] += w;
  return out;
}

} // namespace twospace
