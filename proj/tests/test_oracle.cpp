#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "polytc/oracle.hpp"
#include "polytc/prng.hpp"
#include "polytc/ring.hpp"

using namespace polytc;

TEST_CASE("ideal generator families at (6,2)") {
  OracleModel oracle(6, 2);
  const auto g = oracle.generators();
  CHECK(g.squarefree.size() == 10);   // pairs V_i V_j
  CHECK(g.binomials.size() == 5);     // V_i^2 + V_i R
  CHECK(g.subset_sums.size() == 5);   // |L| = 4

  // The L = {1,2,3,4} generator is R^3 + V_1 R^2 + ... + V_4 R^2.
  Poly expected;
  expected.push_back(mono_with(0, 0, 3));
  for (int i = 1; i <= 4; ++i)
    expected.push_back(mono_with(mono_with(0, 0, 2), i, 1));
  std::sort(expected.begin(), expected.end());
  bool found = false;
  for (const auto& p : g.subset_sums) found = found || p == expected;
  CHECK(found);
}

TEST_CASE("ideal generator families at (8,3)") {
  OracleModel oracle(8, 3);
  const auto g = oracle.generators();
  CHECK(g.squarefree.size() == 35);  // C(7,3)
  CHECK(g.binomials.size() == 7);
  CHECK(g.subset_sums.size() == 21 + 7);  // |L| in {5, 6}
}

TEST_CASE("oracle dimensions") {
  OracleModel o62(6, 2);
  CHECK(o62.dims() == std::vector<int>{1, 6, 6, 1});

  OracleModel o72(7, 2);
  const auto d = o72.dims();
  REQUIRE(d.size() == 5);
  CHECK(d.front() == 1);
  CHECK(d.back() == 1);
  for (std::size_t i = 0; i < d.size(); ++i) CHECK(d[i] == d[d.size() - 1 - i]);
}

TEST_CASE("oracle dims are palindromic with unit ends across the range") {
  for_each_valid_pair(9, [](int n, int k) {
    OracleModel oracle(n, k);
    const auto d = oracle.dims();
    CHECK(d.front() == 1);
    CHECK(d.back() == 1);
    for (std::size_t i = 0; i < d.size(); ++i) CHECK(d[i] == d[d.size() - 1 - i]);
  });
}

TEST_CASE("budget guard") {
  CHECK_THROWS_AS(OracleModel(10, 3), std::domain_error);
  CHECK_NOTHROW(OracleModel(10, 3, /*force=*/true));
}

TEST_CASE("cross-check against the fast model") {
  for (auto [n, k] : {std::pair{6, 2}, std::pair{7, 3}, std::pair{9, 4}}) {
    PolygonRing ring(n, k);
    OracleModel oracle(n, k);
    const auto rep = oracle.cross_check(ring, 100, 7);
    CHECK(rep.ok);
    CHECK(rep.detail.empty());
    CHECK(rep.products_checked == 100);
    CHECK(rep.identifications_checked == 100);
  }
}

TEST_CASE("identification property directly: exponent shuffles stay in coset") {
  OracleModel oracle(7, 3);
  // V_2^2 and V_2 R both represent T_{{2},2}.
  const Poly a = {mono_with(0, 2, 2)};
  const Poly b = {mono_with(mono_with(0, 2, 1), 0, 1)};
  CHECK(oracle.same_coset(2, a, b));
  // Degree 2 carries no subset-sum relations at (7,3), so V_2 R and V_3 R
  // are genuinely distinct classes there.
  const Poly c = {mono_with(mono_with(0, 3, 1), 0, 1)};
  CHECK(!oracle.same_coset(2, b, c));
}
