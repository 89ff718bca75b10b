#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <vector>

#include "polytc/certify.hpp"
#include "polytc/io.hpp"
#include "polytc/prng.hpp"

using namespace polytc;

namespace {

FactorList expected_factors(std::initializer_list<std::pair<int, int>> vs, int r_exp) {
  FactorList f;
  for (auto [i, e] : vs) f.push_back({h1_V(i), e});
  f.push_back({h1_R(), r_exp});
  return f;
}

}  // namespace

TEST_CASE("build_witness spot shapes") {
  {
    const auto w = build_witness(decompose(6, 2));
    CHECK(w.factors == expected_factors({{1, 3}}, 2));
    CHECK(w.left == Functional::Phi1);
    CHECK(w.right == Functional::Phi2);
    CHECK(w.target_bidegree == std::pair{3, 2});
  }
  {
    const auto w = build_witness(decompose(7, 2));
    CHECK(w.factors == expected_factors({{1, 4}}, 3));
    CHECK(w.right == Functional::Phi3);
  }
  {
    const auto w = build_witness(decompose(12, 5));
    CHECK(w.factors ==
          expected_factors({{1, 7}, {2, 1}, {3, 1}, {4, 2}, {5, 2}}, 4));
    CHECK(w.right == Functional::Phi2);
  }
  {
    const auto w = build_witness(decompose(32, 14));
    REQUIRE(w.factors.size() == std::size_t(1 + 6 + 6 + 1));
    CHECK(w.factors.front().second == 29);   // m
    for (int i = 1; i <= 6; ++i) CHECK(w.factors[std::size_t(i)].second == 1);
    for (int i = 7; i <= 12; ++i) CHECK(w.factors[std::size_t(i)].second == 2);
    CHECK(w.factors.back().second == 10);    // 2n-7 - m - 3C
  }
}

TEST_CASE("witness audits across the range") {
  for_each_valid_pair(40, [](int n, int k) {
    const ParamDecomp p = decompose(n, k);
    const auto w = build_witness(p);
    long long total = 0;
    std::uint64_t used = 0;
    int r_exp = -1;
    for (const auto& [y, e] : w.factors) {
      total += e;
      CHECK(e >= 0);
      if (y.r) {
        CHECK(y.v == 0);
        r_exp = e;
      } else {
        CHECK(support_size(y.v) == 1);
        CHECK((used & y.v) == 0);  // generators pairwise distinct
        used |= y.v;
      }
    }
    CHECK(total == 2 * n - 7);
    CHECK(r_exp >= 0);
    const int expected_gens = p.wcase == WitnessCase::BEvenDZero ? 1 + (k - 2) : 1 + 2 * p.C;
    CHECK(support_size(used) == expected_gens);
    CHECK(2 * p.C + 1 <= n - 1);
  });
}

TEST_CASE("certify_lower spot values") {
  const auto c62 = certify_lower(6, 2);
  CHECK(c62.evaluation == 1);
  CHECK(c62.zdcl_lower == 5);
  CHECK(c62.tc_lower == 6);
  CHECK(c62.tc_upper == 7);

  const auto c83 = certify_lower(8, 3);
  CHECK(c83.evaluation == 1);
  CHECK(c83.tc_lower == 10);
  CHECK(c83.tc_upper == 11);

  const auto c125 = certify_lower(12, 5);
  CHECK(c125.evaluation == 1);
  CHECK(c125.tc_lower == 18);
  CHECK(c125.tc_upper == 19);
}

TEST_CASE("the generator assignment in the witness is immaterial, n <= 16") {
  SplitMix64 rng(4242);
  for_each_valid_pair(16, [&](int n, int k) {
    PolygonRing ring(n, k);
    const ParamDecomp p = ring.params();
    std::vector<int> pool;
    for (int i = 1; i <= n - 1; ++i) pool.push_back(i);
    for (int trial = 0; trial < 10; ++trial) {
      for (std::size_t i = pool.size(); i > 1; --i)
        std::swap(pool[i - 1], pool[std::size_t(rng.below(i))]);
      const auto w = build_witness(p, pool);
      const auto prod = expand(ring, w.factors);
      CHECK(pair_evaluate(ring, w.left, w.right, prod) == 1);
    }
  });
}

TEST_CASE("certify_lower rejects invalid pairs") {
  CHECK_THROWS_AS(certify_lower(6, 3), std::domain_error);
  CHECK_THROWS_AS(certify_lower(5, 1), std::domain_error);
}

TEST_CASE("unmodified pairing on the D=0 witness matches the central parity") {
  // With B even and D = 0 the plain functional pair evaluates every monomial
  // to 1, so the product pairs to C(2n-7, n-3) mod 2: nonzero only when n-3
  // is a 2-power.  This is why the modified right functional exists.
  for (auto [n, k] : {std::pair{7, 2}, std::pair{8, 3}, std::pair{9, 4}, std::pair{12, 3}}) {
    PolygonRing ring(n, k);
    REQUIRE(ring.params().wcase == WitnessCase::BEvenDZero);
    const auto w = build_witness(ring.params());
    const auto prod = expand(ring, w.factors);
    const int plain = pair_evaluate(ring, Functional::Phi1, Functional::Phi2, prod);
    CHECK(plain == binom_mod2(2 * n - 7, n - 3));
    CHECK(pair_evaluate(ring, w.left, w.right, prod) == 1);
  }
}

TEST_CASE("quotient model dimensions match the ring") {
  for_each_valid_pair(10, [](int n, int k) {
    PolygonRing ring(n, k);
    const QuotientModel model(ring);
    for (int d = 0; d <= ring.top_degree(); ++d) CHECK(model.dim(d) == ring.dim(d));
  });
}

TEST_CASE("the dense product pipeline detects nonzero products") {
  // Flatten a witness into 2n-7 unit factors: the dense stage-by-stage
  // product must come out nonzero, and prefixes must agree with the sparse
  // expansion's zero test throughout.
  for (auto [n, k] : {std::pair{7, 2}, std::pair{8, 3}, std::pair{9, 4}}) {
    PolygonRing ring(n, k);
    const QuotientModel model(ring);
    const auto w = build_witness(ring.params());
    std::vector<H1Vector> flat;
    for (const auto& [y, e] : w.factors)
      for (int i = 0; i < e; ++i) flat.push_back(y);
    REQUIRE(flat.size() == std::size_t(2 * n - 7));
    CHECK(!model.product_vanishes(flat));
    for (std::size_t len = 1; len <= flat.size(); ++len) {
      FactorList prefix;
      for (std::size_t i = 0; i < len; ++i) prefix.push_back({flat[i], 1});
      const bool sparse_zero = model.tensor_is_zero(expand(ring, prefix));
      CHECK(model.product_vanishes(std::span(flat.data(), len)) == sparse_zero);
    }
    // One more factor puts the total degree at 2n-6, where everything dies.
    flat.push_back(h1_R());
    CHECK(model.product_vanishes(flat));
  }
}

TEST_CASE("dense and sparse tensor zero tests agree") {
  PolygonRing ring(7, 3);
  const QuotientModel model(ring);
  SplitMix64 rng(987);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<H1Vector> factors;
    FactorList flist;
    for (int f = 0; f < 2 * 7 - 6; ++f) {
      std::uint64_t mask = 0;
      while (mask == 0) mask = rng.next() & ((1u << 7) - 1);
      const H1Vector y{(mask & 1) != 0, mask >> 1};
      factors.push_back(y);
      flist.push_back({y, 1});
    }
    const auto sparse = expand(ring, flist);
    CHECK(model.product_vanishes(factors) == model.tensor_is_zero(sparse));
    CHECK(model.product_vanishes(factors));  // (2n-6)-fold products vanish
  }

  // A witness product is nonzero, and the dense test knows it.
  const auto w = build_witness(ring.params());
  CHECK(!model.tensor_is_zero(expand(ring, w.factors)));
}

TEST_CASE("exhaustive vanishing at (6,2): all 462 multisets") {
  PolygonRing ring(6, 2);
  const auto rep = check_vanishing(ring, VanishStrategy::ExhaustiveMonomial);
  CHECK(rep.all_vanished);
  CHECK(rep.sample_count == 462);
  CHECK(!rep.counterexample.has_value());
}

TEST_CASE("random vanishing at (8,3)") {
  PolygonRing ring(8, 3);
  const auto rep = check_vanishing(ring, VanishStrategy::Random, 500, 42);
  CHECK(rep.all_vanished);
  CHECK(rep.sample_count == 500);
  CHECK(rep.seed == 42);
}

TEST_CASE("vanishing budget guards") {
  PolygonRing ring(9, 3);
  CHECK_THROWS_AS(check_vanishing(ring, VanishStrategy::ExhaustiveMonomial),
                  std::domain_error);
  // Forced run still works (cost is modest at n=9 with few samples).
  const auto rep = check_vanishing(ring, VanishStrategy::Random, 25, kDefaultSeed);
  CHECK(rep.all_vanished);
}

TEST_CASE("zdcl composes certificate and vanishing") {
  const auto r62 = zdcl(6, 2);
  CHECK(r62.value == 5);
  CHECK(!r62.defect);
  REQUIRE(r62.vanishing.has_value());
  CHECK(r62.vanishing->strategy == VanishStrategy::ExhaustiveMonomial);

  ZdclOptions fast;
  fast.samples = 50;
  CHECK(zdcl(8, 3, fast).value == 9);
  CHECK(zdcl(9, 4, fast).value == 11);
}

TEST_CASE("tc_bounds") {
  const auto b62 = tc_bounds(6, 2);
  CHECK(b62.lower == 6);
  CHECK(b62.upper == 7);
  CHECK(tc_bounds(10, 4).lower == 14);
  CHECK(tc_bounds(10, 4).upper == 15);
  CHECK(tc_bounds(7, 3).lower == 8);
  CHECK(tc_bounds(7, 3).upper == 9);
}

TEST_CASE("stable JSON shapes for elements") {
  PolygonRing ring(6, 2);
  RingElement e;
  e.degree = 3;
  e.terms = {0, mask_of({2}), mask_of({5})};
  CHECK(to_json(e).dump() == R"({"degree":3,"terms":[[],[2],[5]]})");

  const auto prod = expand(ring, {{h1_V(1), 3}, {h1_R(), 2}});
  const Json tj = to_json(prod);
  REQUIRE(tj.contains("components"));
  CHECK(tj["components"].contains("3,2"));
  CHECK(tj["components"]["3,2"].dump() == R"([[[1],[]],[[1],[1]]])");
}

TEST_CASE("certificate JSON replay") {
  const auto cert = certify_lower(9, 3);
  Json j = to_json(cert);
  CHECK(replay_certificate(j).ok);

  Json tampered = j;
  tampered["evaluation"] = 0;
  CHECK(!replay_certificate(tampered).ok);

  tampered = j;
  tampered["factors"][0][2] = tampered["factors"][0][2].get<int>() + 1;
  CHECK(!replay_certificate(tampered).ok);

  tampered = j;
  tampered["case"] = "B_ODD";
  CHECK(!replay_certificate(tampered).ok);

  tampered = j;
  tampered["tc_lower"] = 99;
  CHECK(!replay_certificate(tampered).ok);
}
