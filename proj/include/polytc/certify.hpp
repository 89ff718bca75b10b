#pragma once

// Witness construction and certification of the topological-complexity
// bounds.  For every valid (n, k) a case-specific product of 2n-7 zero
// divisors evaluates to 1 under a pair of top-degree functionals, giving
// zdcl >= 2n-7 and TC >= 2n-6; the matching upper side checks that all
// (2n-6)-fold zero-divisor products vanish.

#include <cassert>
#include <chrono>
#include <cstdint>
#include <ctime>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "polytc/parity.hpp"
#include "polytc/prng.hpp"
#include "polytc/quotient_model.hpp"
#include "polytc/ring.hpp"
#include "polytc/tensor.hpp"
#include "polytc/version.hpp"

namespace polytc {

struct WitnessSpec {
  ParamDecomp params;
  FactorList factors;            // (degree-1 class, exponent), exponents sum to 2n-7
  Functional left = Functional::Phi1;
  Functional right = Functional::Phi2;
  std::pair<int, int> target_bidegree;  // (n-3, n-4)
};

struct Certificate {
  int n = 0, k = 0;
  ParamDecomp params;
  WitnessSpec witness;
  int evaluation = 0;
  int zdcl_lower = 0, tc_lower = 0, tc_upper = 0;
  std::string verified_at;  // shown in human-readable output only
  std::string engine_version = kEngineVersion;

  bool passed() const { return evaluation == 1; }
};

struct TCReport {
  int n = 0, k = 0;
  int lower = 0, upper = 0;
  Certificate basis;
};

enum class VanishStrategy { ExhaustiveMonomial, Random };

inline const char* to_string(VanishStrategy s) {
  return s == VanishStrategy::ExhaustiveMonomial ? "EXHAUSTIVE_MONOMIAL" : "RANDOM";
}

struct VanishingReport {
  int n = 0, k = 0;
  VanishStrategy strategy = VanishStrategy::Random;
  long long sample_count = 0;
  std::uint64_t seed = 0;  // meaningful for RANDOM only
  bool all_vanished = true;
  std::optional<FactorList> counterexample;
};

namespace detail {

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace detail

// The witness product for p, with generator indices drawn from `pool` (any
// sequence of distinct indices in 1..n-1; defaults to 1,2,3,...).  Which
// indices carry which exponent is immaterial for the evaluation; the default
// assignment keeps certificates reproducible.
inline WitnessSpec build_witness(const ParamDecomp& p, std::span<const int> pool = {}) {
  WitnessSpec w;
  w.params = p;
  w.target_bidegree = {p.n - 3, p.n - 4};
  std::vector<int> ids;
  if (pool.empty()) {
    for (int i = 1; i <= p.n - 1; ++i) ids.push_back(i);
  } else {
    ids.assign(pool.begin(), pool.end());
  }
  auto v_at = [&](int pos) {  // pos counts from 0
    if (pos >= int(ids.size()))
      throw std::invalid_argument("build_witness: index pool exhausted");
    return h1_V(ids[std::size_t(pos)]);
  };

  const int block = 1 << p.t;
  if (p.wcase == WitnessCase::BEvenDZero) {
    w.right = Functional::Phi3;
    w.factors.push_back({v_at(0), p.n - 3});
    for (int i = 1; i <= p.k - 2; ++i) w.factors.push_back({v_at(i), 1});
    w.factors.push_back({h1_R(), p.n - p.k - 2});
  } else {
    w.right = Functional::Phi2;
    const int main_exp = (p.wcase == WitnessCase::BEvenLargeC) ? *p.m : block * (p.B + 1) - 1;
    const int r_exp = (p.wcase == WitnessCase::BEvenLargeC)
                          ? 2 * p.n - 7 - *p.m - 3 * p.C
                          : block * (p.B + 1) - p.C - 2;
    w.factors.push_back({v_at(0), main_exp});
    for (int i = 1; i <= p.C; ++i) w.factors.push_back({v_at(i), 1});
    for (int i = p.C + 1; i <= 2 * p.C; ++i) w.factors.push_back({v_at(i), 2});
    w.factors.push_back({h1_R(), r_exp});
  }

  // Consistency audit; failures here would falsify the construction itself.
  long long total = 0;
  for (const auto& [y, e] : w.factors) {
    if (e < 0) throw std::logic_error("build_witness: negative exponent");
    total += e;
  }
  if (total != 2LL * p.n - 7)
    throw std::logic_error("build_witness: exponents do not sum to 2n-7");
  if (2 * p.C + 1 > p.n - 1)
    throw std::logic_error("build_witness: not enough distinct generators");
  return w;
}

inline Certificate certify_lower(const PolygonRing& ring) {
  const ParamDecomp& p = ring.params();
  Certificate cert;
  cert.n = p.n;
  cert.k = p.k;
  cert.params = p;
  cert.witness = build_witness(p);
  const TensorElement prod = expand(ring, cert.witness.factors);
  cert.evaluation = pair_evaluate(ring, cert.witness.left, cert.witness.right, prod);
  if (cert.evaluation == 1) {
    cert.zdcl_lower = 2 * p.n - 7;
    cert.tc_lower = 2 * p.n - 6;
  }
  cert.tc_upper = 2 * p.n - 5;
  cert.verified_at = detail::utc_timestamp();
  return cert;
}

inline Certificate certify_lower(int n, int k) {
  PolygonRing ring(n, k);
  return certify_lower(ring);
}

inline TCReport tc_bounds(int n, int k) {
  TCReport r;
  r.n = n;
  r.k = k;
  r.basis = certify_lower(n, k);
  r.lower = 2 * n - 6;
  r.upper = 2 * n - 5;
  return r;
}

namespace detail {

template <typename Fn>
void for_each_multiset(int symbols, int size, Fn&& fn) {
  std::vector<int> counts(std::size_t(symbols), 0);
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == symbols - 1) {
      counts[std::size_t(pos)] = left;
      fn(counts);
      return;
    }
    for (int c = 0; c <= left; ++c) {
      counts[std::size_t(pos)] = c;
      self(self, pos + 1, left - c);
    }
  };
  rec(rec, 0, size);
}

inline H1Vector h1_from_mask(std::uint64_t mask) {
  return {(mask & 1) != 0, mask >> 1};
}

}  // namespace detail

// Upper-side check: every (2n-6)-fold product of zero divisors on degree-1
// classes must expand to zero.  EXHAUSTIVE_MONOMIAL walks all multisets of
// the n generator zero divisors; RANDOM draws seeded tuples of arbitrary
// nonzero degree-1 classes.  Budget guards: exhaustive n <= 8, random n <= 14
// (dense model size); both overridable with force.
inline VanishingReport check_vanishing(const PolygonRing& ring, VanishStrategy strategy,
                                       long long samples = 500,
                                       std::uint64_t seed = kDefaultSeed,
                                       bool force = false) {
  const int n = ring.n();
  if (strategy == VanishStrategy::ExhaustiveMonomial && n > 8 && !force)
    throw std::domain_error("check_vanishing: exhaustive strategy guarded to n <= 8 (use force)");
  if (strategy == VanishStrategy::Random && n > 14 && !force)
    throw std::domain_error("check_vanishing: random strategy guarded to n <= 14 (use force)");

  VanishingReport rep;
  rep.n = n;
  rep.k = ring.k();
  rep.strategy = strategy;
  const QuotientModel model(ring);
  const int folds = 2 * n - 6;

  if (strategy == VanishStrategy::ExhaustiveMonomial) {
    detail::for_each_multiset(n, folds, [&](const std::vector<int>& counts) {
      if (!rep.all_vanished) return;
      ++rep.sample_count;
      std::vector<H1Vector> factors;
      factors.reserve(std::size_t(folds));
      for (int g = 0; g < n; ++g) {
        const H1Vector y = g == 0 ? h1_R() : h1_V(g);
        for (int c = 0; c < counts[std::size_t(g)]; ++c) factors.push_back(y);
      }
      if (!model.product_vanishes(factors)) {
        rep.all_vanished = false;
        FactorList ce;
        for (int g = 0; g < n; ++g)
          if (counts[std::size_t(g)] > 0)
            ce.push_back({g == 0 ? h1_R() : h1_V(g), counts[std::size_t(g)]});
        rep.counterexample = std::move(ce);
      }
    });
  } else {
    rep.seed = seed;
    const std::uint64_t mask_limit = (std::uint64_t(1) << n) - 1;
    for (long long s = 0; s < samples && rep.all_vanished; ++s) {
      SplitMix64 rng(mix_seed(seed, std::uint64_t(s)));
      std::vector<H1Vector> factors;
      factors.reserve(std::size_t(folds));
      for (int f = 0; f < folds; ++f) {
        std::uint64_t mask = 0;
        while (mask == 0) mask = rng.next() & mask_limit;
        factors.push_back(detail::h1_from_mask(mask));
      }
      ++rep.sample_count;
      if (!model.product_vanishes(factors)) {
        rep.all_vanished = false;
        FactorList ce;
        for (const auto& y : factors) ce.push_back({y, 1});
        rep.counterexample = std::move(ce);
      }
    }
  }
  return rep;
}

struct ZdclOptions {
  std::optional<VanishStrategy> strategy;  // default: exhaustive for n <= 8, else random
  long long samples = 500;
  std::uint64_t seed = kDefaultSeed;
  bool force = false;
};

struct ZdclResult {
  int value = 0;
  bool defect = false;
  Certificate certificate;
  std::optional<VanishingReport> vanishing;  // absent when budget-skipped
};

// zdcl(n,k) = 2n-7: the lower side from the witness certificate, the upper
// side from the vanishing sweep (skipped above the dense-model budget unless
// forced; the vanishing statement itself is a theorem for every n).
inline ZdclResult zdcl(int n, int k, const ZdclOptions& opts = {}) {
  PolygonRing ring(n, k);
  ZdclResult res;
  res.certificate = certify_lower(ring);
  if (!res.certificate.passed()) {
    res.defect = true;
    res.value = 0;
    return res;
  }
  res.value = 2 * n - 7;
  const VanishStrategy strategy = opts.strategy.value_or(
      n <= 8 ? VanishStrategy::ExhaustiveMonomial : VanishStrategy::Random);
  const bool affordable =
      opts.force || (strategy == VanishStrategy::ExhaustiveMonomial ? n <= 8 : n <= 14);
  if (affordable) {
    res.vanishing = check_vanishing(ring, strategy, opts.samples, opts.seed, opts.force);
    if (!res.vanishing->all_vanished) res.defect = true;
  }
  return res;
}

}  // namespace polytc
