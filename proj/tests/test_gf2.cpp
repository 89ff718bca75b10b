#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <vector>

#include "polytc/gf2.hpp"
#include "polytc/prng.hpp"

using namespace polytc;
using gf2::BitVec;
using gf2::Rref;

namespace {

// Independent rank over 0/1 int rows, forward elimination only.
int naive_rank(std::vector<std::vector<int>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  int rank = 0;
  for (std::size_t c = 0; c < cols; ++c) {
    std::size_t pivot = std::size_t(-1);
    for (std::size_t r = std::size_t(rank); r < rows.size(); ++r)
      if (rows[r][c]) {
        pivot = r;
        break;
      }
    if (pivot == std::size_t(-1)) continue;
    std::swap(rows[std::size_t(rank)], rows[pivot]);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (int(r) != rank && rows[r][c])
        for (std::size_t j = 0; j < cols; ++j) rows[r][j] ^= rows[std::size_t(rank)][j];
    ++rank;
  }
  return rank;
}

BitVec to_bitvec(const std::vector<int>& row) {
  BitVec v(row.size());
  for (std::size_t i = 0; i < row.size(); ++i)
    if (row[i]) v.set(i);
  return v;
}

std::vector<int> random_row(SplitMix64& rng, std::size_t cols, int density_pct) {
  std::vector<int> row(cols, 0);
  for (auto& x : row) x = rng.below(100) < std::uint64_t(density_pct) ? 1 : 0;
  return row;
}

}  // namespace

TEST_CASE("bit scanning across word boundaries") {
  BitVec v(130);
  CHECK(v.highest_set() == -1);
  for (std::size_t i : {std::size_t(0), std::size_t(63), std::size_t(64), std::size_t(127)}) {
    BitVec w(130);
    w.set(i);
    CHECK(w.highest_set() == long(i));
    CHECK(w.highest_set_below(i) == -1);
    CHECK(w.highest_set_below(i + 1) == long(i));
  }
  v.set(5);
  v.set(64);
  v.set(129);
  CHECK(v.highest_set() == 129);
  CHECK(v.highest_set_below(129) == 64);
  CHECK(v.highest_set_below(64) == 5);
  CHECK(v.count() == 3);
}

TEST_CASE("rref rank matches a naive elimination") {
  SplitMix64 rng(8080);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t cols = 1 + rng.below(80);
    const std::size_t nrows = 1 + rng.below(60);
    std::vector<std::vector<int>> rows;
    Rref rr(cols);
    for (std::size_t r = 0; r < nrows; ++r) {
      rows.push_back(random_row(rng, cols, 30));
      rr.insert(to_bitvec(rows.back()));
    }
    CHECK(int(rr.rank()) == naive_rank(rows));
  }
}

TEST_CASE("membership: span elements in, random vectors decided correctly") {
  SplitMix64 rng(909);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t cols = 20 + rng.below(40);
    std::vector<std::vector<int>> rows;
    Rref rr(cols);
    for (int r = 0; r < 12; ++r) {
      rows.push_back(random_row(rng, cols, 25));
      rr.insert(to_bitvec(rows.back()));
    }
    // Every original row and every random combination is a member.
    for (const auto& row : rows) CHECK(rr.member(to_bitvec(row)));
    std::vector<int> combo(cols, 0);
    for (const auto& row : rows)
      if (rng.below(2))
        for (std::size_t j = 0; j < cols; ++j) combo[j] ^= row[j];
    CHECK(rr.member(to_bitvec(combo)));

    // A random vector is a member iff adjoining it does not raise the rank.
    const auto probe = random_row(rng, cols, 25);
    auto augmented = rows;
    augmented.push_back(probe);
    const bool expect = naive_rank(augmented) == naive_rank(rows);
    CHECK(rr.member(to_bitvec(probe)) == expect);
  }
}

TEST_CASE("reduce is idempotent, additive, and pivot-free") {
  SplitMix64 rng(717);
  const std::size_t cols = 50;
  Rref rr(cols);
  for (int r = 0; r < 20; ++r) rr.insert(to_bitvec(random_row(rng, cols, 30)));
  for (int trial = 0; trial < 100; ++trial) {
    BitVec a = to_bitvec(random_row(rng, cols, 40));
    BitVec b = to_bitvec(random_row(rng, cols, 40));
    BitVec ab = a;
    ab ^= b;
    rr.reduce(a);
    rr.reduce(b);
    rr.reduce(ab);
    BitVec twice = a;
    rr.reduce(twice);
    CHECK(twice.words() == a.words());  // idempotent
    BitVec sum = a;
    sum ^= b;
    CHECK(sum.words() == ab.words());  // additive
    for (std::size_t c = 0; c < cols; ++c)
      if (rr.is_pivot(c)) CHECK(!a.test(c));  // canonical form avoids pivots
  }
}
