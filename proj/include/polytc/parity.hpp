#pragma once

// Exact mod-2 binomial arithmetic, the canonical decomposition of a
// polygon-space parameter pair (n, k), generic side-length normalization, and
// exhaustive sweep checks for the two binomial-parity lemmas that drive the
// witness construction.

#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace polytc {

// Parity of C(a, b).  Returns 0 whenever a < 0, b < 0 or b > a; for
// 0 <= b <= a this is Lucas' theorem: odd iff the binary digits of b form a
// subset of those of a.
inline int binom_mod2(long long a, long long b) noexcept {
  if (a < 0 || b < 0 || b > a) return 0;
  return (b & ~a) == 0 ? 1 : 0;
}

// floor(log2 x), defined for x >= 1 only.
inline int floor_lg(long long x) {
  if (x <= 0) throw std::domain_error("floor_lg: argument must be >= 1");
  int r = 0;
  while (x > 1) {
    x >>= 1;
    ++r;
  }
  return r;
}

inline bool is_pow2(long long x) noexcept { return x > 0 && (x & (x - 1)) == 0; }

enum class WitnessCase { BOdd, BEvenDZero, BEvenSmallC, BEvenLargeC };

inline const char* to_string(WitnessCase c) {
  switch (c) {
    case WitnessCase::BOdd: return "B_ODD";
    case WitnessCase::BEvenDZero: return "B_EVEN_D_ZERO";
    case WitnessCase::BEvenSmallC: return "B_EVEN_SMALL_C";
    case WitnessCase::BEvenLargeC: return "B_EVEN_LARGE_C";
  }
  return "?";
}

// Unique decomposition of a valid pair (n, k):
//   k = 2^t + k0           with 1 <= k0 <= 2^t,
//   n = k + 1 + 2^t B + D  with B >= 1 and 0 <= D < 2^t,
//   C = k0 + D - 1,        whence n = 2^t (B+1) + C + 2.
// The case tag selects the witness product that certifies the TC lower bound.
struct ParamDecomp {
  int n = 0, k = 0;
  int t = 0, k0 = 0, B = 0, D = 0, C = 0;
  WitnessCase wcase = WitnessCase::BOdd;
  std::optional<int> ell;    // floor_lg(D); present whenever D > 0
  std::optional<int> A;      // C = 2^(ell+1) A + gamma      (B_EVEN_LARGE_C)
  std::optional<int> gamma;  //   with 0 <= gamma < 2^(ell+1)
  std::optional<int> m;      // 2^t (B+1) + 2^(ell+1) A - 1  (B_EVEN_LARGE_C)
};

inline ParamDecomp decompose(int n, int k) {
  if (k < 2 || n <= 2 * k)
    throw std::domain_error(
        "decompose: hypothesis 2 < 2k < n violated (need k >= 2 and n > 2k)");
  ParamDecomp p;
  p.n = n;
  p.k = k;
  p.t = floor_lg(k - 1);  // unique t with 2^t < k <= 2^(t+1)
  p.k0 = k - (1 << p.t);
  const int rem = n - k - 1;  // = 2^t B + D
  p.B = rem >> p.t;
  p.D = rem & ((1 << p.t) - 1);
  p.C = p.k0 + p.D - 1;
  if (p.B < 1 || p.k0 < 1 || p.k0 > (1 << p.t) ||
      n != (1 << p.t) * (p.B + 1) + p.C + 2)
    throw std::logic_error("decompose: internal consistency failure");
  if (p.D > 0) p.ell = floor_lg(p.D);
  if (p.B % 2 == 1) {
    p.wcase = WitnessCase::BOdd;
  } else if (p.D == 0) {
    p.wcase = WitnessCase::BEvenDZero;
  } else if (p.C - (1 << floor_lg(p.C)) < (1 << (1 + *p.ell))) {
    // C >= 1 here since D >= 1 and k0 >= 1.
    p.wcase = WitnessCase::BEvenSmallC;
  } else {
    p.wcase = WitnessCase::BEvenLargeC;
    const int block = 1 << (*p.ell + 1);
    p.A = p.C / block;
    p.gamma = p.C % block;
    p.m = (1 << p.t) * (p.B + 1) + block * *p.A - 1;
  }
  return p;
}

// Visit every valid pair with 6 <= n <= n_max, 2 <= k, 2k < n, ordered by
// (n, k).
template <typename Fn>
void for_each_valid_pair(int n_max, Fn&& fn) {
  for (int n = 6; n <= n_max; ++n)
    for (int k = 2; 2 * k < n; ++k) fn(n, k);
}

// psi(i) = C(n-2-i, k-1-i) mod 2, the coefficient pattern of the top-degree
// evaluation on classes with |S| = i.
inline int psi(int i, int n, int k) {
  if (k < 2 || n <= 2 * k)
    throw std::domain_error("psi: need 2 < 2k < n");
  return binom_mod2(n - 2 - i, k - 1 - i);
}

// ---------------------------------------------------------------------------
// Side-length normalization: for 0 < r < n-1 with n - r not an odd integer,
// the polygon space with side vector (1,...,1,r) is diffeomorphic to the one
// with r = n - 2k for the unique integer k with n-2k-1 < r < n-2k+1.

enum class LengthStatus { Ok, NonGeneric, OutOfRange, KOneUnsupported, KTooLarge };

inline const char* to_string(LengthStatus s) {
  switch (s) {
    case LengthStatus::Ok: return "OK";
    case LengthStatus::NonGeneric: return "NON_GENERIC";
    case LengthStatus::OutOfRange: return "OUT_OF_RANGE";
    case LengthStatus::KOneUnsupported: return "K_ONE_UNSUPPORTED";
    case LengthStatus::KTooLarge: return "K_TOO_LARGE";
  }
  return "?";
}

struct LengthResult {
  LengthStatus status = LengthStatus::Ok;
  int k = 0;  // meaningful only when status == Ok
};

namespace detail {
inline LengthResult classify_k(int n, int k) {
  if (k <= 1) return {LengthStatus::KOneUnsupported, k};
  if (2 * k >= n) return {LengthStatus::KTooLarge, k};
  return {LengthStatus::Ok, k};
}
}  // namespace detail

// Floating-point entry.  The non-generic wall n - r = odd integer is detected
// with a fixed tolerance of 1e-9; callers holding a decimal literal should
// prefer normalize_length_decimal, which decides exactly.
inline LengthResult normalize_length(int n, double r) {
  if (n < 4) throw std::domain_error("normalize_length: need n >= 4");
  constexpr double kEps = 1e-9;
  if (!(r > 0.0) || !(r < double(n - 1))) return {LengthStatus::OutOfRange, 0};
  const double nr = n - r;
  const long long nearest = static_cast<long long>(nr + 0.5);
  if (nearest % 2 == 1 && nr > nearest - kEps && nr < nearest + kEps)
    return {LengthStatus::NonGeneric, 0};
  const int k = static_cast<int>(nr / 2.0 + 0.5);
  return detail::classify_k(n, k);
}

// Exact entry for a decimal numeral such as "1.0" or "2.25".
inline LengthResult normalize_length_decimal(int n, std::string_view text) {
  if (n < 4) throw std::domain_error("normalize_length: need n >= 4");
  long long num = 0, den = 1;
  std::size_t i = 0;
  bool any_digit = false, seen_dot = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c >= '0' && c <= '9') {
      num = num * 10 + (c - '0');
      if (seen_dot) den *= 10;
      any_digit = true;
      if (den > 1000000000000LL || num > 1000000000000000LL)
        throw std::invalid_argument("normalize_length: numeral too long");
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else {
      throw std::invalid_argument("normalize_length: not a decimal numeral");
    }
  }
  if (!any_digit) throw std::invalid_argument("normalize_length: not a decimal numeral");
  // r = num/den.  Range: 0 < r < n-1.
  if (num <= 0 || num >= den * (n - 1)) return {LengthStatus::OutOfRange, 0};
  const long long X = den * n - num;  // (n - r) * den, positive here
  if (X % den == 0 && (X / den) % 2 == 1) return {LengthStatus::NonGeneric, 0};
  // The unique k with |2k*den - X| < den.
  long long k = X / (2 * den);
  if (!(2 * k * den > X - den && 2 * k * den < X + den)) ++k;
  if (!(2 * k * den > X - den && 2 * k * den < X + den))
    throw std::logic_error("normalize_length: no admissible k");
  return detail::classify_k(n, static_cast<int>(k));
}

// ---------------------------------------------------------------------------
// Lemma sweeps.

struct SweepReport {
  bool passed = true;
  long long cases_checked = 0;
  std::string first_failure;  // empty when passed
};

// For every valid (n, k) with n <= n_max checks the three-way evaluation of
// psi: psi(C+1) = 1; psi(i) = 0 on k0 <= i <= C; and, when B is odd, psi(i) = 0
// already on 0 <= i <= C.
inline SweepReport verify_techlem(int n_max) {
  SweepReport rep;
  for_each_valid_pair(n_max, [&](int n, int k) {
    if (!rep.passed) return;
    const ParamDecomp p = decompose(n, k);
    auto expect = [&](int i, int want) {
      if (!rep.passed) return;
      ++rep.cases_checked;
      if (psi(i, n, k) != want) {
        rep.passed = false;
        std::ostringstream os;
        os << "psi(" << i << "; n=" << n << ", k=" << k << ") != " << want;
        rep.first_failure = os.str();
      }
    };
    const int start = (p.B % 2 == 1) ? 0 : p.k0;
    for (int i = start; i <= p.C; ++i) expect(i, 0);
    expect(p.C + 1, 1);
  });
  return rep;
}

// For 0 <= t <= t_max, 1 <= B <= B_max, 0 <= C <= 2^(t+1)-2 and 0 <= j <= C:
// C(2^(t+1)(B+1)-C-3, 2^t(B+1)-C-1+j) is odd exactly when B is a power of two
// and C = 2^(t+1)-2.
inline SweepReport verify_bclem(int t_max, int B_max) {
  SweepReport rep;
  for (int t = 0; t <= t_max && rep.passed; ++t) {
    for (int B = 1; B <= B_max && rep.passed; ++B) {
      for (int C = 0; C <= (1 << (t + 1)) - 2 && rep.passed; ++C) {
        const int want_all = (is_pow2(B) && C == (1 << (t + 1)) - 2) ? 1 : 0;
        for (int j = 0; j <= C; ++j) {
          ++rep.cases_checked;
          const long long top = (2LL << t) * (B + 1) - C - 3;
          const long long bot = (1LL << t) * (B + 1) - C - 1 + j;
          if (binom_mod2(top, bot) != want_all) {
            rep.passed = false;
            std::ostringstream os;
            os << "bclem fails at t=" << t << " B=" << B << " C=" << C
               << " j=" << j;
            rep.first_failure = os.str();
            break;
          }
        }
      }
    }
  }
  return rep;
}

}  // namespace polytc
