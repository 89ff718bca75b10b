#pragma once

// Independent small-n model of the cohomology ring as a quotient of the free
// commutative GF(2) polynomial algebra on R, V_1, ..., V_{n-1} by the ideal
// generated by
//   * squarefree products of k distinct V's,
//   * V_i^2 + V_i R  (these identify all monomials of equal support and
//     degree, trading any extra V_i exponent for an R),
//   * the subset sums  sum_{S in L} R^{|L|-1-|S|} prod_{i in S} V_i  over
//     n-k <= |L| <= n-2.
// Degree slices of the ideal are spanned outright and eliminated densely;
// nothing here shares data structures with the fast T-class model, which is
// the point of an oracle.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "polytc/gf2.hpp"
#include "polytc/prng.hpp"
#include "polytc/ring.hpp"

namespace polytc {

// A free monomial packs one exponent nibble per generator slot: slot 0 is R,
// slot i is V_i.  Fine for the oracle range, where total degree <= n-3 <= 15.
using MonoKey = std::uint64_t;

inline MonoKey mono_mul(MonoKey a, MonoKey b) { return a + b; }
inline int mono_exp(MonoKey m, int slot) { return int((m >> (4 * slot)) & 0xF); }
inline MonoKey mono_with(MonoKey m, int slot, int e) {
  return m + (MonoKey(e) << (4 * slot));
}

using Poly = std::vector<MonoKey>;  // GF(2) sum, sorted and duplicate-free

struct IdealGenerators {
  std::vector<Poly> squarefree;   // degree k
  std::vector<Poly> binomials;    // degree 2
  std::vector<Poly> subset_sums;  // degree |L|-1 each

  std::vector<Poly> all() const {
    std::vector<Poly> out = squarefree;
    out.insert(out.end(), binomials.begin(), binomials.end());
    out.insert(out.end(), subset_sums.begin(), subset_sums.end());
    return out;
  }
};

struct CrossCheckReport {
  bool ok = true;
  long long dims_checked = 0, products_checked = 0, identifications_checked = 0;
  std::string detail;  // first mismatch, empty when ok
};

class OracleModel {
 public:
  OracleModel(int n, int k, bool force = false) : n_(n), k_(k) {
    if (k < 2 || n <= 2 * k) throw std::domain_error("OracleModel: need 2 < 2k < n");
    if (n > 9 && !force)
      throw std::domain_error("OracleModel: guarded to n <= 9 (use force)");
    if (n - 3 > 15) throw std::domain_error("OracleModel: degree exceeds packing");
    slices_.resize(std::size_t(n - 2));
  }

  int n() const { return n_; }
  int k() const { return k_; }

  IdealGenerators generators() const {
    IdealGenerators g;
    // k-subsets of {1..n-1}: squarefree products.
    std::vector<int> idx;
    enumerate_subsets(k_, [&](const std::vector<int>& S) {
      MonoKey m = 0;
      for (int i : S) m = mono_with(m, i, 1);
      g.squarefree.push_back({m});
    });
    for (int i = 1; i <= n_ - 1; ++i) {
      MonoKey sq = mono_with(0, i, 2);
      MonoKey vr = mono_with(mono_with(0, i, 1), 0, 1);
      g.binomials.push_back({sq, vr});
    }
    for (int l = n_ - k_; l <= n_ - 2; ++l) {
      enumerate_subsets(l, [&](const std::vector<int>& L) {
        Poly p;
        const int cap = std::min(k_ - 1, l - 1);
        std::uint64_t Lmask = 0;
        for (int i : L) Lmask |= std::uint64_t(1) << (i - 1);
        for (std::uint64_t S = Lmask;; S = (S - 1) & Lmask) {
          const int s = support_size(S);
          if (s <= cap) {
            MonoKey m = mono_with(0, 0, l - 1 - s);
            for (std::uint64_t b = S; b; b &= b - 1)
              m = mono_with(m, __builtin_ctzll(b) + 1, 1);
            p.push_back(m);
          }
          if (S == 0) break;
        }
        std::sort(p.begin(), p.end());
        g.subset_sums.push_back(std::move(p));
      });
    }
    return g;
  }

  // All degree-d monomials, lex order on exponent vectors.
  const std::vector<MonoKey>& monomials(int d) const {
    auto& s = slices_[std::size_t(d)];
    if (!s.built_mons) {
      std::vector<int> exps(std::size_t(n_), 0);
      auto rec = [&](auto&& self, int slot, int left) -> void {
        if (slot == n_ - 1) {
          exps[std::size_t(slot)] = left;
          MonoKey m = 0;
          for (int g = 0; g < n_; ++g) m = mono_with(m, g, exps[std::size_t(g)]);
          s.mons.push_back(m);
          return;
        }
        for (int e = 0; e <= left; ++e) {
          exps[std::size_t(slot)] = e;
          self(self, slot + 1, left - e);
        }
      };
      rec(rec, 0, d);
      for (std::size_t i = 0; i < s.mons.size(); ++i) s.index[s.mons[i]] = int(i);
      s.built_mons = true;
    }
    return s.mons;
  }

  int mono_degree(MonoKey m) const {
    int d = 0;
    for (int g = 0; g < n_; ++g) d += mono_exp(m, g);
    return d;
  }

  // Canonical monomial of the class with support mask and total degree d.
  MonoKey class_monomial(std::uint64_t mask, int d) const {
    MonoKey m = mono_with(0, 0, d - support_size(mask));
    for (std::uint64_t b = mask; b; b &= b - 1)
      m = mono_with(m, __builtin_ctzll(b) + 1, 1);
    return m;
  }

  int quotient_dim(int d) const {
    return int(monomials(d).size() - slice_echelon(d).rank());
  }

  std::vector<int> dims() const {
    std::vector<int> out;
    for (int d = 0; d <= n_ - 3; ++d) out.push_back(quotient_dim(d));
    return out;
  }

  bool in_ideal(int d, const Poly& p) const {
    const auto& mons = monomials(d);
    gf2::BitVec v(mons.size());
    auto& idx = slices_[std::size_t(d)].index;
    for (MonoKey m : p) v.flip(std::size_t(idx.at(m)));
    return slice_echelon(d).member(std::move(v));
  }

  bool same_coset(int d, const Poly& a, const Poly& b) const {
    Poly sum = a;
    sum.insert(sum.end(), b.begin(), b.end());
    std::sort(sum.begin(), sum.end());
    Poly reduced;
    for (std::size_t i = 0; i < sum.size();) {
      std::size_t j = i;
      while (j < sum.size() && sum[j] == sum[i]) ++j;
      if ((j - i) & 1) reduced.push_back(sum[i]);
      i = j;
    }
    return in_ideal(d, reduced);
  }

  // (a) graded dimensions agree with the fast model; (b) products of random
  // basis classes agree coset-wise; (c) any two monomials of equal support
  // and degree are identified.
  CrossCheckReport cross_check(const PolygonRing& ring, int trials,
                               std::uint64_t seed) const {
    CrossCheckReport rep;
    for (int d = 0; d <= n_ - 3 && rep.ok; ++d) {
      ++rep.dims_checked;
      const int od = quotient_dim(d), fd = ring.dim(d);
      if (od != fd) {
        rep.ok = false;
        std::ostringstream os;
        os << "dim mismatch at degree " << d << ": oracle " << od << ", fast " << fd;
        rep.detail = os.str();
      }
    }
    SplitMix64 rng(mix_seed(seed, 0xABCD));
    for (int t = 0; t < trials && rep.ok; ++t) {
      // (b): random pair of fast basis classes with composable degrees.
      const int a = int(rng.below(std::uint64_t(n_ - 2)));
      const int b = int(rng.below(std::uint64_t(n_ - 2 - a)));
      const auto& ba = ring.basis(a);
      const auto& bb = ring.basis(b);
      const std::uint64_t sa = ba[std::size_t(rng.below(ba.size()))];
      const std::uint64_t sb = bb[std::size_t(rng.below(bb.size()))];
      RingElement xa, xb;
      xa.degree = a;
      xa.terms = {sa};
      xb.degree = b;
      xb.terms = {sb};
      const RingElement fast = ring.multiply(xa, xb);
      Poly fast_image;
      for (auto m : fast.terms) fast_image.push_back(class_monomial(m, a + b));
      std::sort(fast_image.begin(), fast_image.end());
      const Poly oracle_prod = {mono_mul(class_monomial(sa, a), class_monomial(sb, b))};
      ++rep.products_checked;
      if (!same_coset(a + b, fast_image, oracle_prod)) {
        rep.ok = false;
        std::ostringstream os;
        os << "product coset mismatch at degrees (" << a << "," << b << ")";
        rep.detail = os.str();
      }
    }
    for (int t = 0; t < trials && rep.ok; ++t) {
      // (c): same (S, d), two random exponent distributions.
      const int d = 1 + int(rng.below(std::uint64_t(n_ - 3)));
      const int smax = std::min(k_ - 1, d);
      const int s = int(rng.below(std::uint64_t(smax + 1)));
      std::uint64_t mask = 0;
      while (support_size(mask) < s)
        mask |= std::uint64_t(1) << rng.below(std::uint64_t(n_ - 1));
      const Poly m1 = {random_distribution(mask, d, rng)};
      const Poly m2 = {random_distribution(mask, d, rng)};
      ++rep.identifications_checked;
      if (!same_coset(d, m1, m2)) {
        rep.ok = false;
        std::ostringstream os;
        os << "identification fails for |S|=" << s << ", d=" << d;
        rep.detail = os.str();
      }
    }
    return rep;
  }

 private:
  struct Slice {
    bool built_mons = false;
    std::vector<MonoKey> mons;
    std::map<MonoKey, int> index;
    std::unique_ptr<gf2::Rref> rref;
  };

  template <typename Fn>
  void enumerate_subsets(int size, Fn&& fn) const {
    std::vector<int> idx(std::size_t(size), 0);
    for (int i = 0; i < size; ++i) idx[std::size_t(i)] = i + 1;
    if (size == 0) {
      fn(idx);
      return;
    }
    for (;;) {
      fn(idx);
      int pos = size - 1;
      while (pos >= 0 && idx[std::size_t(pos)] == n_ - 1 - (size - 1 - pos)) --pos;
      if (pos < 0) break;
      ++idx[std::size_t(pos)];
      for (int q = pos + 1; q < size; ++q) idx[std::size_t(q)] = idx[std::size_t(q - 1)] + 1;
    }
  }

  const gf2::Rref& slice_echelon(int d) const {
    auto& s = slices_[std::size_t(d)];
    if (!s.rref) {
      const auto& mons = monomials(d);
      auto rr = std::make_unique<gf2::Rref>(mons.size());
      const IdealGenerators gens = generators();
      for (const auto& g : gens.all()) {
        const int gd = mono_degree(g.front());
        if (gd > d) continue;
        for (MonoKey m : monomials(d - gd)) {
          gf2::BitVec row(mons.size());
          for (MonoKey t : g) row.flip(std::size_t(s.index.at(mono_mul(t, m))));
          rr->insert(std::move(row));
        }
      }
      s.rref = std::move(rr);
    }
    return *s.rref;
  }

  MonoKey random_distribution(std::uint64_t mask, int d, SplitMix64& rng) const {
    // e_i >= 1 on the support, remainder spread over R and the support.
    std::vector<int> slots = {0};
    MonoKey m = 0;
    for (std::uint64_t b = mask; b; b &= b - 1) {
      const int i = __builtin_ctzll(b) + 1;
      slots.push_back(i);
      m = mono_with(m, i, 1);
    }
    for (int rest = d - support_size(mask); rest > 0; --rest)
      m = mono_with(m, slots[std::size_t(rng.below(slots.size()))], 1);
    return m;
  }

  int n_, k_;
  mutable std::vector<Slice> slices_;
};

}  // namespace polytc
