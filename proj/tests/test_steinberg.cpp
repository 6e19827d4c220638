#include "alcove/steinberg.hpp"
#include "alcove/serialize.hpp"
#include "alcove/sweeps.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace alcove;

namespace {

Weight w(std::initializer_list<long long> cs) {
  Coords c;
  for (long long v : cs) c.push_back(Rat(v));
  return Weight(std::move(c));
}

}  // namespace

TEST_CASE("rank-1 certificates match the hand computations") {
  RootSystem a1 = build_root_system("A1^1");
  SECTION("l=2, lambda=3w1") {
    auto c = steinberg_certificate(a1, 2, w({3}));
    CHECK(c.mu == a1.simple_root(1));
    CHECK(c.w == a1.identity_element());
    CHECK(c.Lambda.classical == w({1}));
    CHECK(c.Lambda.level == 2);
    CHECK(verify_certificate(a1, c).ok);
  }
  SECTION("l=1, lambda=2w1: fold lands in the alcove [2,3], v = t_{alpha1}") {
    auto c = steinberg_certificate(a1, 1, w({2}));
    CHECK(c.mu == a1.simple_root(1));
    CHECK(c.w == a1.element_from_word({1}));  // u = id, w = w0
    CHECK(c.Lambda.classical.is_zero());      // Lambda = Lambda0 mod Z delta
    CHECK(c.fold_word == std::vector<int>{0, 1});
    CHECK(c.vD_word == std::vector<int>{1, 0, 1});
    CHECK(verify_certificate(a1, c).ok);
  }
  SECTION("l=2, lambda=3w1 folds in one step") {
    auto c = steinberg_certificate(a1, 2, w({3}));
    CHECK(c.fold_word == std::vector<int>{0});
  }
}

TEST_CASE("lambda = 0 gives mu = 0, w = w0, Lambda = l Lambda0") {
  for (const char* s : {"A1^1", "C3^1", "E6^2", "D4^3", "A4^2"}) {
    RootSystem rs = build_root_system(s);
    for (long long l : {1, 3}) {
      auto c = steinberg_certificate(rs, l, Weight(rs.rank()));
      CHECK(c.mu.is_zero());
      CHECK(c.w == rs.w0());
      CHECK(c.Lambda.classical.is_zero());
      CHECK(c.Lambda.degree == 0);
      CHECK(c.Lambda.level == l);
      CHECK(verify_certificate(rs, c).ok);
    }
  }
}

TEST_CASE("certificate preconditions") {
  RootSystem a1 = build_root_system("A1^1");
  CHECK_THROWS_AS(steinberg_certificate(a1, 0, w({1})), PreconditionError);
  CHECK_THROWS_AS(steinberg_certificate(a1, 2, w({-1})), PreconditionError);
  CHECK_THROWS_AS(steinberg_certificate(a1, 2, Weight(Coords{Rat(1, 2)})), PreconditionError);
}

TEST_CASE("verify_certificate rejects tampered certificates with reasons") {
  RootSystem a1 = build_root_system("A1^1");
  auto c = steinberg_certificate(a1, 2, w({3}));

  auto bad_mu = c;
  bad_mu.mu = a1.fundamental_weight(1);
  CHECK(verify_certificate(a1, bad_mu).reason == "mu not in M");

  auto bad_w = c;
  bad_w.w = a1.element_from_word({1});
  CHECK(verify_certificate(a1, bad_w).reason == "not dominant");

  auto bad_L = c;
  bad_L.Lambda.degree += 1;
  CHECK(verify_certificate(a1, bad_L).reason == "Lambda mismatch");

  auto bad_word = c;
  bad_word.vD_word.push_back(1);
  CHECK_FALSE(verify_certificate(a1, bad_word).ok);

  auto bad_mu2 = c;
  bad_mu2.mu = -a1.simple_root(1);
  CHECK(verify_certificate(a1, bad_mu2).reason == "mu not dominant");
}

TEST_CASE("length additivity: |vD| = |positive roots| + fold length, reduced") {
  Rng rng(31);
  for (const char* s : {"A2^1", "C3^1", "G2^1", "A4^2", "E6^2"}) {
    RootSystem rs = build_root_system(s);
    INFO(s);
    LexPoint x0 = alcove_interior_point(rs);
    for (int t = 0; t < 15; ++t) {
      auto c = steinberg_certificate(rs, rng.uniform(1, 4), rng.dominant_integral(rs, 7));
      CHECK(c.vD_word.size() == rs.positive_roots().size() + c.fold_word.size());
      AffineElement g = AffineElement::identity(rs);
      for (int i : c.vD_word) g.rmul_simple(rs, i);
      CHECK(static_cast<long long>(c.vD_word.size()) == separating_count(rs, x0, g.apply(x0)));
    }
  }
}

TEST_CASE("soundness sweep across every supported label") {
  for (const AffineLabel& l : certificate_sweep_labels()) {
    RootSystem rs(l);
    INFO(l.str());
    CHECK(sweep_certificate_soundness(rs, 20, 999).ok());
  }
}

TEST_CASE("certificates are deterministic byte for byte") {
  for (const char* s : {"A2^1", "D5^2"}) {
    RootSystem rs = build_root_system(s);
    CHECK(sweep_determinism(rs, 10, 5150).ok());
  }
}

TEST_CASE("canonical_decomposition") {
  RootSystem a2 = build_root_system("A2^1");
  SECTION("pinned example: l=2, lambda=5w1+2w2") {
    auto d = canonical_decomposition(a2, 2, w({5, 2}));
    REQUIRE(d.parts.size() == 3);
    CHECK(d.parts[0] == a2.fundamental_weight(1));
    CHECK(d.parts[1] == a2.fundamental_weight(1));
    CHECK(d.parts[2] == a2.fundamental_weight(2));
    CHECK(d.remainder == w({1, 0}));
    CHECK(validate_decomposition(a2, d, w({5, 2})).ok);
  }
  SECTION("small lambda: no parts") {
    auto d = canonical_decomposition(a2, 3, w({2, 2}));
    CHECK(d.parts.empty());
    CHECK(d.remainder == w({2, 2}));
  }
  SECTION("E6: 3 w2 at level 3") {
    RootSystem e6 = build_root_system("E6^1");
    auto d = canonical_decomposition(e6, 3, Rat(3) * e6.fundamental_weight(2));
    REQUIRE(d.parts.size() == 1);
    CHECK(d.parts[0] == e6.fundamental_weight(2));
    CHECK(d.remainder.is_zero());
  }
  SECTION("non-simply-laced is refused") {
    RootSystem c2 = build_root_system("C2^1");
    CHECK_THROWS_AS(canonical_decomposition(c2, 2, w({2, 2})), UnsupportedError);
  }
  SECTION("round trip on random weights") {
    Rng rng(12);
    RootSystem d4 = build_root_system("D4^1");
    for (int t = 0; t < 30; ++t) {
      long long l = rng.uniform(1, 5);
      Weight lam = rng.dominant_integral(d4, 12);
      auto d = canonical_decomposition(d4, l, lam);
      Weight sum = d.remainder;
      for (const Weight& p : d.parts) {
        Weight scaled = p;
        scaled *= Rat(l);
        sum += scaled;
      }
      CHECK(sum == lam);
      for (int i = 0; i < d4.rank(); ++i) {
        CHECK(d.remainder.fw[i] >= 0);
        CHECK(d.remainder.fw[i] < l);
      }
    }
  }
}

TEST_CASE("validate_decomposition coweight conditions") {
  RootSystem c2 = build_root_system("C2^1");
  // node 2 is the long node of C2; omega_2 is a valid coweight part
  CHECK(validate_decomposition(c2, 1, {c2.fundamental_weight(2)}, Weight(2),
                               c2.fundamental_weight(2))
            .ok);
  auto bad = validate_decomposition(c2, 1, {c2.fundamental_weight(1)}, Weight(2),
                                    c2.fundamental_weight(1));
  CHECK_FALSE(bad.ok);
  CHECK(bad.reason.find("coweight") != std::string::npos);
  // embedded fundamental coweight at a short node: omega_1 / d_1 = 2 omega_1
  Weight emb = Rat(2) * c2.fundamental_weight(1);
  CHECK(validate_decomposition(c2, 1, {emb}, Weight(2), emb).ok);

  RootSystem a3 = build_root_system("A3^1");
  CHECK(validate_decomposition(a3, 2, {a3.fundamental_weight(2)}, w({1, 0, 1}),
                               w({1, 2, 1}))
            .ok);
  CHECK_FALSE(validate_decomposition(a3, 2, {a3.fundamental_weight(2)}, w({1, 0, 1}),
                                     w({0, 2, 1}))
                   .ok);
}
