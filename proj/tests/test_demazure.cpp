#include "alcove/demazure.hpp"
#include "alcove/sweeps.hpp"

#include "freudenthal.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <thread>

using namespace alcove;

namespace {

Weight w(std::initializer_list<long long> cs) {
  Coords c;
  for (long long v : cs) c.push_back(Rat(v));
  return Weight(std::move(c));
}

ClassicalChar cls(const RootSystem& rs, long long level, const Weight& lambda) {
  return classical_character(demazure_character(rs, level, lambda, nullptr));
}

// Every term lies under the extremal weight e^Lambda in the affine
// dominance order (difference a nonnegative integer combination of
// alpha_0..alpha_n), and e^Lambda has multiplicity one.  Lambda is the
// anchor of the Demazure word, recomputed from the certificate of the dual
// weight.
bool extremal_dominates(const RootSystem& rs, long long level, const Weight& lambda,
                        const CharPoly& f) {
  Weight dual = -rs.apply_word(rs.w0_word(), lambda);
  SteinbergCertificate cert = steinberg_certificate(rs, level, dual);
  CharKey top;
  top.cl = integral_coords(rs, cert.Lambda.classical);
  top.deg = rat_to_ll(cert.Lambda.degree);
  auto it = f.terms().find(top);
  if (it == f.terms().end() || it->second != 1) return false;
  Weight topw = cert.Lambda.classical;
  for (const auto& [k, m] : f.terms()) {
    long long j = top.deg - k.deg;  // alpha_0 steps
    if (j < 0) return false;
    // classical difference plus j copies of theta must be a nonnegative
    // integral root combination
    Weight diff = topw;
    for (int i = 0; i < rs.rank(); ++i)
      diff.fw[i] -= Rat(k.cl[i]) - Rat(j * rs.theta().wcoords[i]);
    for (const Rat& x : rs.root_coords(diff))
      if (!is_integer(x) || x < 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("demazure_step string formula") {
  RootSystem a1 = build_root_system("A1^1");
  SECTION("pairing 2") {
    CharPoly f = CharPoly::monomial(a1, AffineWeight(w({2}), 1, Rat(0)));
    CharPoly g = demazure_step(a1, 1, f);
    CHECK(g.size() == 3);
    CHECK(classical_character(g) ==
          ClassicalChar{{{2}, 1}, {{0}, 1}, {{-2}, 1}});
  }
  SECTION("pairing -1 annihilates") {
    CharPoly f = CharPoly::monomial(a1, AffineWeight(w({-1}), 1, Rat(0)));
    CHECK(demazure_step(a1, 1, f).empty());
  }
  SECTION("pairing -2: negative branch") {
    CharPoly f = CharPoly::monomial(a1, AffineWeight(w({-2}), 1, Rat(0)));
    CharPoly g = demazure_step(a1, 1, f);
    CHECK(classical_character(g) == ClassicalChar{{{0}, -1}});
  }
  SECTION("affine index uses alpha0^vee = c - theta^vee") {
    CharPoly f = CharPoly::monomial(a1, AffineWeight(w({0}), 1, Rat(0)));
    CharPoly g = demazure_step(a1, 0, f);  // pairing 1 - 0 = 1
    CHECK(g.size() == 2);
    bool has_shifted = false;
    for (const auto& [k, m] : g.terms())
      if (k.cl == std::vector<long long>{2} && k.deg == -1) has_shifted = true;
    CHECK(has_shifted);
  }
  SECTION("twisted labels are unsupported") {
    RootSystem a22 = build_root_system("A2^2");
    CharPoly f(1, 1);
    CHECK_THROWS_AS(demazure_step(a22, 1, f), UnsupportedError);
    CHECK_THROWS_AS(demazure_character(a22, 1, Weight(1), nullptr), UnsupportedError);
  }
}

TEST_CASE("demazure operator idempotence") {
  for (const char* s : {"A1^1", "A2^1", "C2^1", "G2^1", "A3^1"}) {
    RootSystem rs = build_root_system(s);
    CHECK(sweep_demazure_idempotence(rs, 100, 2024).ok());
  }
}

TEST_CASE("reduced-word independence on braid pairs") {
  Rng rng(44);
  SECTION("A2: [1,2,1] vs [2,1,2]") {
    RootSystem a2 = build_root_system("A2^1");
    for (int t = 0; t < 20; ++t) {
      CharPoly f =
          CharPoly::monomial(a2, AffineWeight(rng.dominant_integral(a2, 6), rng.uniform(0, 3), Rat(0)));
      CharPoly lhs = demazure_step(a2, 1, demazure_step(a2, 2, demazure_step(a2, 1, f)));
      CharPoly rhs = demazure_step(a2, 2, demazure_step(a2, 1, demazure_step(a2, 2, f)));
      CHECK(lhs == rhs);
    }
  }
  SECTION("C2: [1,2,1,2] vs [2,1,2,1]") {
    RootSystem c2 = build_root_system("C2^1");
    for (int t = 0; t < 20; ++t) {
      CharPoly f =
          CharPoly::monomial(c2, AffineWeight(rng.dominant_integral(c2, 6), rng.uniform(0, 3), Rat(0)));
      CharPoly lhs = demazure_step(
          c2, 1, demazure_step(c2, 2, demazure_step(c2, 1, demazure_step(c2, 2, f))));
      CharPoly rhs = demazure_step(
          c2, 2, demazure_step(c2, 1, demazure_step(c2, 2, demazure_step(c2, 1, f))));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("rank-1 Demazure characters match the hand computations") {
  RootSystem a1 = build_root_system("A1^1");
  SECTION("D(1, 2w1): 4 terms") {
    CharPoly f = demazure_character(a1, 1, w({2}), nullptr);
    CHECK(dimension(f) == 4);
    CHECK(classical_character(f) == ClassicalChar{{{2}, 1}, {{0}, 2}, {{-2}, 1}});
    GradedClassicalChar g = graded_classical_character(f);
    REQUIRE(g.layers.size() == 2);
    // generator layer V(2w1) at degree 0, the extremal term at the top
    CHECK(g.layers.at(0) == ClassicalChar{{{2}, 1}, {{0}, 1}, {{-2}, 1}});
    CHECK(g.layers.at(1) == ClassicalChar{{{0}, 1}});
  }
  SECTION("D(1, w1) and D(2, w1): the two-dimensional module") {
    for (long long l : {1, 2}) {
      CharPoly f = demazure_character(a1, l, w({1}), nullptr);
      CHECK(dimension(f) == 2);
      CHECK(classical_character(f) == ClassicalChar{{{1}, 1}, {{-1}, 1}});
    }
  }
  SECTION("level-1 law: dim D(1, m w1) = 2^m") {
    long long expect = 1;
    for (long long m = 0; m <= 6; ++m, expect *= 2)
      CHECK(dimension(demazure_character(a1, 1, w({m}), nullptr)) == expect);
  }
}

TEST_CASE("classical, graded and dimension projections") {
  RootSystem a1 = build_root_system("A1^1");
  CHECK(dimension(CharPoly(1, 1)) == 0);
  CharPoly f = demazure_character(a1, 1, w({2}), nullptr);
  SECTION("grade_shift composes additively and 0 is the identity") {
    GradedClassicalChar g = graded_classical_character(f);
    CHECK(grade_shift(g, 0) == g);
    CHECK(grade_shift(grade_shift(g, 2), 3) == grade_shift(g, 5));
    CHECK_THROWS_AS(grade_shift(g, -1), PreconditionError);
  }
  SECTION("char_product convolution") {
    ClassicalChar v1{{{1}, 1}, {{-1}, 1}};
    CHECK(char_product(v1, v1) == ClassicalChar{{{2}, 1}, {{0}, 2}, {{-2}, 1}});
    CHECK(char_product(v1, trivial_classical_char(1)) == v1);
  }
}

TEST_CASE("weyl_dimension") {
  RootSystem a1 = build_root_system("A1^1");
  for (long long m = 0; m <= 5; ++m) CHECK(weyl_dimension(a1, w({m})) == m + 1);
  RootSystem a2 = build_root_system("A2^1");
  CHECK(weyl_dimension(a2, w({1, 1})) == 8);
  RootSystem e6 = build_root_system("E6^1");
  CHECK(weyl_dimension(e6, e6.fundamental_weight(1)) == 27);
  RootSystem e8 = build_root_system("E8^1");
  CHECK(weyl_dimension(e8, e8.fundamental_weight(8)) == 248);  // the adjoint node
}

TEST_CASE("highest-weight property and stability") {
  for (const char* s : {"A1^1", "A2^1", "A3^1", "D4^1"}) {
    RootSystem rs = build_root_system(s);
    INFO(s);
    CHECK(sweep_stability(rs, 2).ok());
  }
  SECTION("classical top has multiplicity one below the stable range too") {
    RootSystem a2 = build_root_system("A2^1");
    for (long long l : {1, 2}) {
      for (long long c1 = 0; c1 <= 3; ++c1)
        for (long long c2 = 0; c2 <= 3; ++c2) {
          Weight lam = w({c1, c2});
          CharPoly f = demazure_character(a2, l, lam, nullptr);
          ClassicalChar c = cls(a2, l, lam);
          auto it = c.find(integral_coords(a2, lam));
          REQUIRE(it != c.end());
          CHECK(it->second == 1);
          // every weight sits under lambda in dominance order
          for (const auto& [wv, m] : c) {
            Weight diff = lam;
            for (int i = 0; i < a2.rank(); ++i) diff.fw[i] -= Rat(wv[i]);
            for (const Rat& x : a2.root_coords(diff)) {
              CHECK(is_integer(x));
              CHECK(x >= 0);
            }
          }
          CHECK(extremal_dominates(a2, l, lam, f));
        }
    }
  }
}

TEST_CASE("fusion decomposition at character level") {
  RootSystem a1 = build_root_system("A1^1");
  SECTION("anchor: D(1,2w1) = D(1,w1) * D(1,w1), 4 = 2 x 2") {
    auto d = canonical_decomposition(a1, 1, w({2}));
    auto rep = verify_fusion(a1, 1, w({2}), d, nullptr);
    CHECK(rep.pass);
    CHECK(rep.lhs_dim == 4);
    REQUIRE(rep.factor_dims.size() == 3);  // two parts + trivial remainder
    CHECK(rep.factor_dims[0] == 2);
    CHECK(rep.factor_dims[1] == 2);
    CHECK(rep.factor_dims[2] == 1);
  }
  SECTION("D(2, 5w1): 18 = 3 x 3 x 2") {
    auto d = canonical_decomposition(a1, 2, w({5}));
    auto rep = verify_fusion(a1, 2, w({5}), d, nullptr);
    CHECK(rep.pass);
    CHECK(rep.lhs_dim == 18);
  }
  SECTION("A2, l=2, lambda=2w1: single nontrivial factor") {
    RootSystem a2 = build_root_system("A2^1");
    auto d = canonical_decomposition(a2, 2, w({2, 0}));
    auto rep = verify_fusion(a2, 2, w({2, 0}), d, nullptr);
    CHECK(rep.pass);
  }
  SECTION("explicit non-simply-laced decomposition in C2") {
    RootSystem c2 = build_root_system("C2^1");
    // lambda = 2 omega_2 = l * omega_2 + 0 at level 2; omega_2 is a coweight
    WeightDecomposition d;
    d.level = 2;
    d.parts = {c2.fundamental_weight(2)};
    d.remainder = Weight(2);
    auto rep = verify_fusion(c2, 2, w({0, 2}), d, nullptr);
    CHECK(rep.pass);
  }
  SECTION("invalid decompositions are rejected") {
    RootSystem a2 = build_root_system("A2^1");
    WeightDecomposition d;
    d.level = 2;
    d.parts = {a2.fundamental_weight(1)};
    d.remainder = Weight(2);
    CHECK_THROWS_AS(verify_fusion(a2, 2, w({1, 1}), d, nullptr), PreconditionError);
  }
}

TEST_CASE("q-system short exact sequence") {
  RootSystem a2 = build_root_system("A2^1");
  SECTION("anchor A2, l=1, lambda=w1, i=1: mu = w2, 9 = 3 + 6, graded shift 1") {
    auto rep = verify_qsystem(a2, 1, w({1, 0}), 1, nullptr);
    CHECK(rep.mu == a2.fundamental_weight(2));
    CHECK(rep.pass_classical);
    CHECK(rep.pass_graded);
    CHECK(rep.dim_lhs == 9);
    CHECK(rep.dim_sub == 3);
    CHECK(rep.dim_quot == 6);
    CHECK(rep.shift == 1);
  }
  SECTION("hypothesis failures name the bound") {
    CHECK_THROWS_WITH(verify_qsystem(a2, 1, w({0, 1}), 1, nullptr),
                      Catch::Matchers::ContainsSubstring("lambda(alpha_i^vee) > 0"));
    CHECK_THROWS_WITH(verify_qsystem(a2, 1, w({1, 1}), 1, nullptr),
                      Catch::Matchers::ContainsSubstring("max{lambda(alpha^vee)"));
  }
  SECTION("non-miniscule nodes are rejected") {
    RootSystem d4 = build_root_system("D4^1");
    CHECK_THROWS_WITH(verify_qsystem(d4, 2, d4.fundamental_weight(2), 2, nullptr),
                      Catch::Matchers::ContainsSubstring("miniscule"));
  }
  SECTION("A3 at level 1") {
    RootSystem a3 = build_root_system("A3^1");
    for (int i : {1, 3}) {
      auto rep = verify_qsystem(a3, 1, a3.fundamental_weight(i), i, nullptr);
      CHECK(rep.pass_classical);
      CHECK(rep.pass_graded);
      CHECK(rep.dim_lhs == rep.dim_sub + rep.dim_quot);
    }
  }
}

TEST_CASE("character cache") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / ("alcove-test-cache-" + std::to_string(::getpid()));
  fs::remove_all(dir);
  RootSystem a2 = build_root_system("A2^1");
  SECTION("round trip through disk, memo and recomputation agree") {
    CharCache cache(dir);
    CharPoly fresh = demazure_character(a2, 2, w({2, 1}), &cache);
    CharCache cache2(dir);  // cold memo, warm disk
    CharPoly loaded = demazure_character(a2, 2, w({2, 1}), &cache2);
    CHECK(fresh == loaded);
    CHECK(fs::exists(dir / CharCache::entry_name(a2.label(), 2, {2, 1})));
  }
  SECTION("concurrent reads and writes stay consistent") {
    CharCache cache(dir);
    std::vector<std::thread> threads;
    std::vector<long long> dims(4, 0);
    for (int k = 0; k < 4; ++k)
      threads.emplace_back([&, k] {
        dims[k] = dimension(demazure_character(a2, 2, w({3, 1}), &cache));
      });
    for (auto& t : threads) t.join();
    for (long long d : dims) CHECK(d == dims[0]);
  }
  fs::remove_all(dir);
}

TEST_CASE("E6 column: dim D(1, w1) = 27 (stability at the miniscule node)") {
  RootSystem e6 = build_root_system("E6^1");
  CharPoly f = demazure_character(e6, 1, e6.fundamental_weight(1), nullptr);
  CHECK(dimension(f) == 27);
  CHECK(Int(dimension(f)) == weyl_dimension(e6, e6.fundamental_weight(1)));
  CHECK(extremal_dominates(e6, 1, e6.fundamental_weight(1), f));
}

TEST_CASE("stable characters equal the Freudenthal oracle weight by weight") {
  // Freudenthal's recursion computes V(lambda) multiplicities with no
  // Demazure operators, alcove words or certificates involved.
  for (const char* s : {"A2^1", "B3^1", "C2^1", "G2^1", "A3^1", "D4^1"}) {
    RootSystem rs = build_root_system(s);
    INFO(s);
    Rng rng(171);
    for (int t = 0; t < 6; ++t) {
      Weight lam = rng.dominant_integral(rs, 2);
      long long lmin = std::max<long long>(1, rat_to_ll(rs.pair_theta(lam)));
      ClassicalChar via_demazure =
          classical_character(demazure_character(rs, lmin, lam, nullptr));
      ClassicalChar via_freudenthal = testing::freudenthal_character(rs, lam);
      CHECK(via_demazure == via_freudenthal);
    }
  }
  SECTION("a named anchor: the 64-dimensional G2 module V(w1 + w2)") {
    RootSystem g2 = build_root_system("G2^1");
    Weight lam = g2.fundamental_weight(1) + g2.fundamental_weight(2);
    ClassicalChar c = testing::freudenthal_character(g2, lam);
    CHECK(char_dimension(c) == 64);
    CHECK(Int(char_dimension(c)) == weyl_dimension(g2, lam));
    long long l = rat_to_ll(g2.pair_theta(lam));
    CHECK(classical_character(demazure_character(g2, l, lam, nullptr)) == c);
  }
}

TEST_CASE("fusion holds with explicit coweight parts in B, C and G types") {
  CharCache cache;
  struct Case {
    const char* label;
    std::vector<long long> lambda, part, rem;
  };
  for (const Case& k : {Case{"G2^1", {2, 1}, {1, 0}, {0, 1}},
                        Case{"B3^1", {2, 1, 0}, {1, 0, 0}, {0, 1, 0}},
                        Case{"C3^1", {0, 1, 2}, {0, 0, 1}, {0, 1, 0}}}) {
    RootSystem rs = build_root_system(k.label);
    INFO(k.label);
    auto mk = [&](const std::vector<long long>& cs) {
      Coords c;
      for (long long v : cs) c.push_back(Rat(v));
      return Weight(std::move(c));
    };
    WeightDecomposition d;
    d.level = 2;
    d.parts = {mk(k.part)};
    d.remainder = mk(k.rem);
    auto rep = verify_fusion(rs, 2, mk(k.lambda), d, &cache);
    CHECK(rep.pass);
  }
}

TEST_CASE("E-type fusion decompositions") {
  CharCache cache;
  SECTION("E6: D(1, 2w1) = D(1,w1) * D(1,w1), 729 = 27 x 27") {
    RootSystem e6 = build_root_system("E6^1");
    Weight lam = Rat(2) * e6.fundamental_weight(1);
    auto rep = verify_fusion(e6, 1, lam, canonical_decomposition(e6, 1, lam), &cache);
    CHECK(rep.pass);
    CHECK(rep.lhs_dim == 729);
    CHECK(rep.factor_dims[0] == 27);
    CHECK(rep.factor_dims[1] == 27);
  }
  SECTION("E7: D(1, 2w7) = D(1,w7) * D(1,w7), 3136 = 56 x 56") {
    RootSystem e7 = build_root_system("E7^1");
    Weight lam = Rat(2) * e7.fundamental_weight(7);
    auto rep = verify_fusion(e7, 1, lam, canonical_decomposition(e7, 1, lam), &cache);
    CHECK(rep.pass);
    CHECK(rep.lhs_dim == 3136);
  }
}

TEST_CASE("E6 Q-system at the miniscule node") {
  RootSystem e6 = build_root_system("E6^1");
  auto rep = verify_qsystem(e6, 1, e6.fundamental_weight(1), 1, nullptr);
  CHECK(rep.pass_classical);
  CHECK(rep.pass_graded);
  CHECK(rep.mu == e6.fundamental_weight(3));  // 2w1 - alpha1
  CHECK(rep.dim_lhs == 729);
  CHECK(rep.dim_quot == 351);  // stable: dim V(2w1)
  CHECK(rep.dim_sub == 378);
}

TEST_CASE("Q-system across miniscule nodes of D4, A3 and E7") {
  CharCache cache;
  SECTION("D4 node 1: 64 = 29 + 35") {
    RootSystem d4 = build_root_system("D4^1");
    auto rep = verify_qsystem(d4, 1, d4.fundamental_weight(1), 1, &cache);
    CHECK(rep.pass_classical);
    CHECK(rep.pass_graded);
    CHECK(rep.mu == d4.fundamental_weight(2));
    CHECK(rep.dim_lhs == 64);
    CHECK(rep.dim_sub == 29);   // V(w2) + V(0) classically
    CHECK(rep.dim_quot == 35);  // stable: dim V(2w1)
  }
  SECTION("A3 node 3 at level 2: 150 = 70 + 80") {
    RootSystem a3 = build_root_system("A3^1");
    Coords lam{Rat(1), Rat(0), Rat(1)};
    auto rep = verify_qsystem(a3, 2, Weight(lam), 3, &cache);
    CHECK(rep.pass_classical);
    CHECK(rep.pass_graded);
    CHECK(rep.dim_lhs == 150);
    CHECK(rep.dim_sub == 70);
    CHECK(rep.dim_quot == 80);
  }
  SECTION("E7 node 7: 3136 = 1673 + 1463") {
    RootSystem e7 = build_root_system("E7^1");
    auto rep = verify_qsystem(e7, 1, e7.fundamental_weight(7), 7, &cache);
    CHECK(rep.pass_classical);
    CHECK(rep.pass_graded);
    CHECK(rep.dim_lhs == 3136);
    CHECK(rep.dim_sub == 1673);
    CHECK(rep.dim_quot == 1463);
  }
}
