#pragma once

#include "alcove/affine.hpp"

#include <string>
#include <vector>

namespace alcove {

struct VerifyResult {
  bool ok = false;
  std::string reason;  // empty on success
  explicit operator bool() const { return ok; }
  static VerifyResult pass() { return {true, ""}; }
  static VerifyResult fail(std::string why) { return {false, std::move(why)}; }
};

// Output of the constructive certificate algorithm: mu in M+, w in the
// finite Weyl group and Lambda = w t_mu (l Lambda_0 - lambda) dominant, with
// a reduced word for (w t_mu)^{-1} usable to drive Demazure operators.
struct SteinbergCertificate {
  long long level = 0;
  Weight lambda;
  Weight mu;
  WeylElement w;
  AffineWeight Lambda;
  std::vector<int> fold_word;  // alcove word for v = t_{mu'} u
  std::vector<int> vD_word;    // w0_word ++ fold_word, reduced
};

inline AffineElement translation_by(const RootSystem& rs, const Weight& mu) {
  return AffineElement::translation(rs, mu);
}

// w t_mu as an affine element in normal form.
inline AffineElement w_t_mu(const RootSystem& rs, const WeylElement& w, const Weight& mu) {
  return affine_compose(AffineElement(w, Weight(rs.rank())), translation_by(rs, mu));
}

// Computes Lambda = (w t_mu)(l Lambda_0 - lambda) with its exact delta
// degree, starting from degree 0.
inline AffineWeight steinberg_weight(const RootSystem& rs, long long level, const Weight& lambda,
                                     const WeylElement& w, const Weight& mu) {
  AffineWeight L(-lambda, level, Rat(0));
  L = translate_affine_weight(rs, mu, L);
  L.classical = w.apply(L.classical);
  return L;
}

// The constructive algorithm: fold lambda'/l (lambda' = -w0 lambda) into the
// fundamental alcove with a rho perturbation, then read off mu and w from
// the alcove certificate.
inline SteinbergCertificate steinberg_certificate(const RootSystem& rs, long long level,
                                                  const Weight& lambda) {
  if (level < 1) throw PreconditionError("level must be a positive integer");
  rs.check_weight(lambda);
  if (!rs.is_dominant_integral(lambda))
    throw PreconditionError("lambda must be dominant integral, got " + lambda.str());

  Weight lambda_p = -rs.apply_word(rs.w0_word(), lambda);
  LexPoint x{Rat(1, level) * lambda_p, rs.rho()};
  AlcoveCertificate fold = fold_to_alcove(rs, x);

  Weight mu = -rs.apply_word(rs.w0_word(), fold.mu_prime);
  WeylElement w = compose(rs.inverse(fold.u), rs.w0());

  SteinbergCertificate cert;
  cert.level = level;
  cert.lambda = lambda;
  cert.mu = std::move(mu);
  cert.w = std::move(w);
  cert.Lambda = steinberg_weight(rs, level, lambda, cert.w, cert.mu);
  cert.fold_word = fold.word;
  cert.vD_word = rs.w0_word();
  cert.vD_word.insert(cert.vD_word.end(), fold.word.begin(), fold.word.end());
  return cert;
}

// Independent check: recomputes w t_mu (l Lambda_0 - lambda) directly from
// the translation formula and the linear action, without the folding path.
inline VerifyResult verify_certificate(const RootSystem& rs, const SteinbergCertificate& cert) {
  if (cert.level < 1) return VerifyResult::fail("level not positive");
  if (cert.lambda.rank() != rs.rank() || cert.mu.rank() != rs.rank())
    return VerifyResult::fail("rank mismatch");
  if (!rs.is_dominant_integral(cert.lambda))
    return VerifyResult::fail("lambda not dominant integral");
  if (!rs.m_contains(cert.mu)) return VerifyResult::fail("mu not in M");
  if (!rs.is_dominant(cert.mu)) return VerifyResult::fail("mu not dominant");

  AffineWeight X = steinberg_weight(rs, cert.level, cert.lambda, cert.w, cert.mu);
  if (!rs.is_dominant(X.classical)) return VerifyResult::fail("not dominant");
  if (!rs.is_integral(X.classical)) return VerifyResult::fail("classical part not integral");
  if (Rat(cert.level) - Rat(rs.a0()) * rs.pair_theta(X.classical) < 0)
    return VerifyResult::fail("alpha0 pairing negative");
  if (!(X == cert.Lambda)) return VerifyResult::fail("Lambda mismatch");

  AffineElement g = AffineElement::identity(rs);
  for (int i : cert.vD_word) {
    if (i < 0 || i > rs.rank()) return VerifyResult::fail("vD word index out of range");
    g.rmul_simple(rs, i);
  }
  AffineElement target = affine_inverse(rs, w_t_mu(rs, cert.w, cert.mu));
  if (!(g == target)) return VerifyResult::fail("vD word does not multiply to (w t_mu)^{-1}");

  LexPoint x0 = alcove_interior_point(rs);
  long long len = separating_count(rs, x0, g.apply(x0));
  if (len != static_cast<long long>(cert.vD_word.size()))
    return VerifyResult::fail("vD word not reduced");
  return VerifyResult::pass();
}

// lambda = l * (sum of parts) + remainder with each part a dominant
// coweight (embedded through the invariant form) and the remainder dominant
// integral.
struct WeightDecomposition {
  long long level = 0;
  std::vector<Weight> parts;
  Weight remainder;
};

// Coordinatewise Euclidean division; the unique decomposition with
// remainder coordinates in [0, l).  Simply-laced finite types only.
inline WeightDecomposition canonical_decomposition(const RootSystem& rs, long long level,
                                                   const Weight& lambda) {
  if (!rs.simply_laced())
    throw UnsupportedError(
        "canonical decomposition requires a simply-laced finite type; "
        "validate an explicit decomposition instead");
  if (level < 1) throw PreconditionError("level must be a positive integer");
  if (!rs.is_dominant_integral(lambda))
    throw PreconditionError("lambda must be dominant integral, got " + lambda.str());
  WeightDecomposition d;
  d.level = level;
  d.remainder = Weight(rs.rank());
  for (int i = 0; i < rs.rank(); ++i) {
    Int c = numerator(lambda.fw[i]);
    Int m = floor_div(c, Int(level));
    d.remainder.fw[i] = Rat(c - m * level);
    long long mi = to_ll(m);
    for (long long k = 0; k < mi; ++k) d.parts.push_back(rs.fundamental_weight(i + 1));
  }
  return d;
}

inline VerifyResult validate_decomposition(const RootSystem& rs, long long level,
                                           const std::vector<Weight>& parts,
                                           const Weight& remainder, const Weight& lambda) {
  if (level < 1) return VerifyResult::fail("level not positive");
  Weight sum = remainder;
  for (const Weight& p : parts) {
    Weight q = p;
    q *= Rat(level);
    sum += q;
  }
  if (!(sum == lambda)) return VerifyResult::fail("sum mismatch: parts and remainder do not add to lambda");
  if (!rs.is_dominant_integral(remainder)) return VerifyResult::fail("remainder not dominant integral");
  for (const Weight& p : parts) {
    if (!rs.is_dominant(p)) return VerifyResult::fail("part " + p.str() + " not dominant");
    for (int j = 1; j <= rs.rank(); ++j) {
      // coweight condition: <part, alpha_j> integral
      if (!is_integer(rs.inner(p, rs.simple_root(j))))
        return VerifyResult::fail("part " + p.str() + " not a coweight: <part, alpha_" +
                                  std::to_string(j) + "> not integral");
    }
  }
  return VerifyResult::pass();
}

inline VerifyResult validate_decomposition(const RootSystem& rs, const WeightDecomposition& d,
                                           const Weight& lambda) {
  return validate_decomposition(rs, d.level, d.parts, d.remainder, lambda);
}

}  // namespace alcove
