#pragma once

// Randomized property sweeps shared by the selftest subcommand, the unit
// tests and the acceptance suite.  Every sweep is reproducible from
// (label, seed, samples).

#include "alcove/demazure.hpp"
#include "alcove/serialize.hpp"
#include "alcove/steinberg.hpp"

#include <functional>
#include <random>
#include <string>
#include <vector>

namespace alcove {

struct SweepOutcome {
  std::string name;
  std::string label;
  long long cases = 0;
  long long failures = 0;
  std::string first_failure;
  bool ok() const { return failures == 0; }

  void fail(const std::string& what) {
    ++failures;
    if (first_failure.empty()) first_failure = what;
  }
  std::string line() const {
    std::string s = (ok() ? "PASS " : "FAIL ");
    s += name + " " + label + " (" + std::to_string(cases) + " cases";
    if (!ok()) s += ", " + std::to_string(failures) + " failures; first: " + first_failure;
    s += ")";
    return s;
  }
};

inline std::uint64_t sweep_seed(std::uint64_t base, const AffineLabel& label, std::uint64_t salt) {
  std::uint64_t h = base ^ (salt * 0x9e3779b97f4a7c15ull);
  for (char c : label.str()) h = (h ^ static_cast<std::uint64_t>(c)) * 1099511628211ull;
  return h;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}
  long long uniform(long long lo, long long hi) {  // inclusive
    return lo + static_cast<long long>(g_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  Rat rat(long long max_num, long long max_den, bool signed_num) {
    long long num = uniform(signed_num ? -max_num : 0, max_num);
    long long den = uniform(1, max_den);
    return Rat(num, den);
  }
  Weight dominant_integral(const RootSystem& rs, long long max_coord) {
    Weight w(rs.rank());
    for (int i = 0; i < rs.rank(); ++i) w.fw[i] = Rat(uniform(0, max_coord));
    return w;
  }
  Weight dominant_rational(const RootSystem& rs, long long max_num, long long max_den) {
    Weight w(rs.rank());
    for (int i = 0; i < rs.rank(); ++i) w.fw[i] = rat(max_num, max_den, false);
    return w;
  }
  Weight rational(const RootSystem& rs, long long max_num, long long max_den) {
    Weight w(rs.rank());
    for (int i = 0; i < rs.rank(); ++i) w.fw[i] = rat(max_num, max_den, true);
    return w;
  }
  std::vector<int> affine_word(const RootSystem& rs, int len) {
    std::vector<int> w(len);
    for (int& x : w) x = static_cast<int>(uniform(0, rs.rank()));
    return w;
  }
  std::vector<int> finite_word(const RootSystem& rs, int len) {
    std::vector<int> w(len);
    for (int& x : w) x = static_cast<int>(uniform(1, rs.rank()));
    return w;
  }

 private:
  std::mt19937_64 g_;
};

// The label set of the certificate soundness sweep.
inline std::vector<AffineLabel> certificate_sweep_labels() {
  std::vector<AffineLabel> out;
  for (const char* s :
       {"A1^1", "A2^1", "A3^1", "A4^1", "B3^1", "C3^1", "D4^1", "G2^1", "F4^1", "E6^1", "E7^1",
        "E8^1", "A2^2", "A4^2", "A5^2", "D5^2", "D4^3", "E6^2"})
    out.push_back(AffineLabel::parse(s));
  return out;
}

inline std::vector<AffineLabel> labels_with_rank_at_most(int maxrank) {
  std::vector<AffineLabel> out;
  for (const AffineLabel& l : certificate_sweep_labels())
    if (finite_part(l).rank <= maxrank) out.push_back(l);
  return out;
}

// Prop 3.1 soundness: verify_certificate(steinberg_certificate(...)) on
// random dominant integral weights.
inline SweepOutcome sweep_certificate_soundness(const RootSystem& rs, long long samples,
                                                std::uint64_t seed, long long max_level = 5,
                                                long long max_coord = 10) {
  SweepOutcome out{"certificate-soundness", rs.label().str(), 0, 0, {}};
  Rng rng(sweep_seed(seed, rs.label(), 1));
  for (long long t = 0; t < samples; ++t) {
    ++out.cases;
    long long level = rng.uniform(1, max_level);
    Weight lambda = rng.dominant_integral(rs, max_coord);
    SteinbergCertificate cert = steinberg_certificate(rs, level, lambda);
    VerifyResult v = verify_certificate(rs, cert);
    if (!v) out.fail("l=" + std::to_string(level) + " lambda=" + lambda.str() + ": " + v.reason);
  }
  return out;
}

// Alcoves of dominant points lie inside the fundamental chamber and their
// mu' lies in M+.
inline SweepOutcome sweep_dominant_alcoves(const RootSystem& rs, long long samples,
                                           std::uint64_t seed, long long max_num = 5,
                                           long long max_den = 4) {
  SweepOutcome out{"dominant-alcove-in-chamber", rs.label().str(), 0, 0, {}};
  Rng rng(sweep_seed(seed, rs.label(), 2));
  LexPoint x0 = alcove_interior_point(rs);
  for (long long t = 0; t < samples; ++t) {
    ++out.cases;
    Weight base = rng.dominant_rational(rs, max_num, max_den);
    AlcoveCertificate cert = fold_to_alcove(rs, LexPoint{base, rs.rho()});
    LexPoint rep = cert.element.apply(x0);
    bool inside = true;
    for (const Root& a : rs.positive_roots()) {
      LexVal v{rs.pair_coroot(rep.base, a), rs.pair_coroot(rep.eps, a)};
      if (!lex_greater_const(v, Rat(0))) {
        inside = false;
        break;
      }
    }
    if (!inside) out.fail("alcove of " + base.str() + " leaves the fundamental chamber");
    if (!m_plus_contains(rs, cert.mu_prime))
      out.fail("mu' = " + cert.mu_prime.str() + " not in M+ for " + base.str());
  }
  return out;
}

// Fold word length equals the separating-hyperplane count (word
// reducedness oracle) on arbitrary regular rational points.
inline SweepOutcome sweep_reduced_words(const RootSystem& rs, long long samples,
                                        std::uint64_t seed, long long max_num = 10,
                                        long long max_den = 6) {
  SweepOutcome out{"fold-word-reduced", rs.label().str(), 0, 0, {}};
  Rng rng(sweep_seed(seed, rs.label(), 3));
  LexPoint x0 = alcove_interior_point(rs);
  for (long long t = 0; t < samples; ++t) {
    ++out.cases;
    Weight base = rng.rational(rs, max_num, max_den);
    LexPoint p{base, rs.rho()};
    AlcoveCertificate cert = fold_to_alcove(rs, p);
    long long sep = separating_count(rs, x0, p);
    if (sep != static_cast<long long>(cert.word.size()))
      out.fail("point " + base.str() + ": word length " + std::to_string(cert.word.size()) +
               " vs separating count " + std::to_string(sep));
    if (!m_contains(rs, cert.element.transl()))
      out.fail("translation part escaped M at " + base.str());
  }
  return out;
}

// Two W-translates of the same regular point fold to the same
// representative.
inline SweepOutcome sweep_fold_uniqueness(const RootSystem& rs, long long samples,
                                          std::uint64_t seed) {
  SweepOutcome out{"fold-uniqueness", rs.label().str(), 0, 0, {}};
  Rng rng(sweep_seed(seed, rs.label(), 4));
  for (long long t = 0; t < samples; ++t) {
    ++out.cases;
    Weight base = rng.rational(rs, 6, 4);
    LexPoint p{base, rs.rho()};
    AffineElement g = AffineElement::identity(rs);
    int len = static_cast<int>(rng.uniform(0, 12));
    for (int k = 0; k < len; ++k) g.rmul_simple(rs, static_cast<int>(rng.uniform(0, rs.rank())));
    AlcoveCertificate c1 = fold_to_alcove(rs, p);
    AlcoveCertificate c2 = fold_to_alcove(rs, g.apply(p));
    if (!(c1.representative == c2.representative))
      out.fail("representatives differ for " + base.str());
  }
  return out;
}

// Demazure operator idempotence on random single-term inputs.
inline SweepOutcome sweep_demazure_idempotence(const RootSystem& rs, long long samples,
                                               std::uint64_t seed) {
  SweepOutcome out{"demazure-idempotence", rs.label().str(), 0, 0, {}};
  Rng rng(sweep_seed(seed, rs.label(), 5));
  for (long long t = 0; t < samples; ++t) {
    ++out.cases;
    Weight cl(rs.rank());
    for (int i = 0; i < rs.rank(); ++i) cl.fw[i] = Rat(rng.uniform(-6, 6));
    long long level = rng.uniform(0, 4);
    AffineWeight L(cl, level, Rat(rng.uniform(-3, 3)));
    CharPoly f = CharPoly::monomial(rs, L);
    int i = static_cast<int>(rng.uniform(0, rs.rank()));
    CharPoly once = demazure_step(rs, i, f);
    CharPoly twice = demazure_step(rs, i, once);
    if (!(once == twice)) out.fail("D_" + std::to_string(i) + " not idempotent at " + cl.str());
  }
  return out;
}

// Characters in the stable range match the Weyl dimension formula and are
// symmetric under every simple reflection.
inline SweepOutcome sweep_stability(const RootSystem& rs, long long max_coord,
                                    CharCache* cache = nullptr) {
  SweepOutcome out{"stability-weyl-dimension", rs.label().str(), 0, 0, {}};
  std::vector<Weight> lambdas;
  Weight cur(rs.rank());
  std::function<void(int)> enumerate = [&](int pos) {
    if (pos == rs.rank()) {
      lambdas.push_back(cur);
      return;
    }
    for (long long c = 0; c <= max_coord; ++c) {
      cur.fw[pos] = Rat(c);
      enumerate(pos + 1);
    }
  };
  enumerate(0);
  for (const Weight& lambda : lambdas) {
    ++out.cases;
    long long lmin = std::max<long long>(1, rat_to_ll(rs.pair_theta(lambda)));
    CharPoly f = demazure_character(rs, lmin, lambda, cache);
    if (Int(dimension(f)) != weyl_dimension(rs, lambda)) {
      out.fail("dim D(" + std::to_string(lmin) + ", " + lambda.str() + ") != Weyl dimension");
      continue;
    }
    ClassicalChar c = classical_character(f);
    for (int i = 1; i <= rs.rank() && out.failures == 0; ++i) {
      ClassicalChar reflected;
      for (const auto& [w, m] : c) {
        Weight x(Coords(w.begin(), w.end()));
        rs.reflect_simple(i, x);
        reflected[integral_coords(rs, x)] += m;
      }
      if (!(reflected == c)) out.fail("classical character not s_i-symmetric at " + lambda.str());
    }
  }
  return out;
}

// Byte-for-byte determinism of certificates.
inline SweepOutcome sweep_determinism(const RootSystem& rs, long long samples,
                                      std::uint64_t seed) {
  SweepOutcome out{"certificate-determinism", rs.label().str(), 0, 0, {}};
  for (long long t = 0; t < samples; ++t) {
    ++out.cases;
    Rng rng1(sweep_seed(seed, rs.label(), 100 + t));
    Rng rng2(sweep_seed(seed, rs.label(), 100 + t));
    long long l1 = rng1.uniform(1, 5), l2 = rng2.uniform(1, 5);
    Weight w1 = rng1.dominant_integral(rs, 8), w2 = rng2.dominant_integral(rs, 8);
    auto c1 = steinberg_certificate(rs, l1, w1);
    auto c2 = steinberg_certificate(rs, l2, w2);
    if (certificate_to_json(rs, c1).dump() != certificate_to_json(rs, c2).dump())
      out.fail("identical inputs produced different certificates");
  }
  return out;
}

}  // namespace alcove
