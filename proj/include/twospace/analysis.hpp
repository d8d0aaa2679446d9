#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>

#include "twospace/dist.hpp"
#include "twospace/scheme.hpp"

namespace twospace {

/// Exact joint distribution of one protocol run, conditioned on the
/// observed public key. Labels are 5-tuples
/// (space, key, bit, ciphertext, private key); the ciphertext coordinate is
/// deterministically encryption(key, bit) and the private-key coordinate is
/// drawn from the prior conditioned on keygen(priv) == observed key.
struct JointModel {
  static constexpr std::size_t kSpace = 0;
  static constexpr std::size_t kKey = 1;
  static constexpr std::size_t kBit = 2;
  static constexpr std::size_t kCipher = 3;
  static constexpr std::size_t kPriv = 4;

  FiniteDist dist;

  /// True on atoms where the receiver's decryption equals the secret bit.
  static bool receiver_correct(const SchemeInstance& s, const Label& atom);
};

/// Derived overlap quantities. A key of space1 belongs to S12 when both of
/// its ciphertexts are producible by some space2 key (and symmetrically for
/// S21); keys with exactly one producible ciphertext are partial overlaps
/// and are flagged separately. tau1/tau2 are reported as empty optionals
/// when their conditioning event has zero mass.
struct OverlapAnalysis {
  std::set<std::string> s12;
  std::set<std::string> s21;
  std::set<std::string> partial_overlap_keys;
  Rational q1; // Pr(receiver correct | space = S1)
  Rational q2;
  std::optional<Rational> tau1; // Pr(key in S12 | space = S1 and correct)
  std::optional<Rational> tau2;
};

struct ReceiverSuccess {
  Rational p_b;                                // Pr(receiver correct)
  std::map<std::string, Rational> per_transcript; // ct -> Pr(correct | ct)
};

/// Requires a valid scheme; throws ValidationError listing the first
/// violation otherwise.
JointModel build_joint(const SchemeInstance& s);

OverlapAnalysis overlap_analysis(const SchemeInstance& s);

ReceiverSuccess receiver_success(const SchemeInstance& s);

/// Exact posterior over the secret bit for every reachable ciphertext.
/// Posterior labels are 1-tuples ("0") / ("1").
std::map<std::string, FiniteDist> transcript_posteriors(const SchemeInstance& s);

/// Ciphertext image of one space's keys over both bits (every key of the
/// space, including zero-weight ones).
std::set<std::string> ciphertext_image(const SchemeInstance& s, SpaceId space);

/// Receiver private-key posterior given the observed public key, as a
/// distribution over 1-tuple labels (priv).
FiniteDist private_key_posterior(const SchemeInstance& s);

/// Pr(ct) for every reachable ciphertext.
std::map<std::string, Rational> transcript_marginal(const SchemeInstance& s);

} // namespace twospace
