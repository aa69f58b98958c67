#pragma once

// Exact arithmetic in the norm-Euclidean rings Z[sqrt2] and Z[tau].
//
// An element is a + b*w with integer coefficients, where w is sqrt2 or the
// golden ratio tau. Both rings satisfy w^2 = t*w + n:
//
//   Z[sqrt2]: t = 0, n = 2      Z[tau]: t = 1, n = 1
//
// so w = (t + sqrt(D)) / 2 with D = t^2 + 4n (8 and 5 respectively), and the
// Galois conjugate is sigma(w) = t - w. Coefficients are 64-bit with checked
// arithmetic; any overflow throws std::overflow_error.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace quasigap {

enum class RingId : std::uint8_t { Zsqrt2, Ztau };

struct RingTraits {
  std::int64_t trace;  // t in w^2 = t*w + n
  std::int64_t norm;   // n in w^2 = t*w + n
  std::int64_t disc;   // D = t^2 + 4n
  double omega;        // real value of w
  double sigma_omega;  // real value of sigma(w)
  const char* name;
};

inline constexpr RingTraits ring_traits(RingId r) {
  return r == RingId::Zsqrt2
             ? RingTraits{0, 2, 8, 1.4142135623730950488, -1.4142135623730950488, "Zsqrt2"}
             : RingTraits{1, 1, 5, 1.6180339887498948482, -0.6180339887498948482, "Ztau"};
}

inline const char* to_string(RingId r) { return ring_traits(r).name; }

namespace detail {

inline std::int64_t checked_add(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_add_overflow(x, y, &r)) throw std::overflow_error("quasigap: integer overflow in add");
  return r;
}
inline std::int64_t checked_sub(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_sub_overflow(x, y, &r)) throw std::overflow_error("quasigap: integer overflow in sub");
  return r;
}
inline std::int64_t checked_mul(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_mul_overflow(x, y, &r)) throw std::overflow_error("quasigap: integer overflow in mul");
  return r;
}
inline std::int64_t narrow(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("quasigap: integer overflow");
  return static_cast<std::int64_t>(v);
}

inline int sign_of(__int128 v) { return (v > 0) - (v < 0); }

// Sign of P + Q*sqrt(D) for integers P, Q and D > 0 not a square.
inline int sign_surd(__int128 p, __int128 q, std::int64_t d) {
  const int sp = sign_of(p), sq = sign_of(q);
  if (sq == 0) return sp;
  if (sp == 0 || sp == sq) return sp == 0 ? sq : sp;
  // opposite signs: compare p^2 with q^2 * D
  const __int128 lim = static_cast<__int128>(1) << 60;
  if (p >= lim || -p >= lim || q >= lim || -q >= lim) throw std::overflow_error("quasigap: integer overflow in sign");
  const __int128 lhs = p * p;
  const __int128 rhs = q * q * d;
  return lhs > rhs ? sp : sq;
}

// Nearest integer to num/den, ties toward zero. den != 0.
inline std::int64_t round_div(__int128 num, __int128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const bool neg = num < 0;
  const __int128 a = neg ? -num : num;
  __int128 q = a / den;
  const __int128 r = a - q * den;
  if (2 * r > den) ++q;  // strictly past the half: round away; exact half stays
  return narrow(neg ? -q : q);
}

}  // namespace detail

/// Element a + b*w of Z[w].
struct QuadInt {
  RingId ring = RingId::Zsqrt2;
  std::int64_t a = 0;
  std::int64_t b = 0;

  constexpr QuadInt() = default;
  constexpr QuadInt(RingId r, std::int64_t a_, std::int64_t b_ = 0) : ring(r), a(a_), b(b_) {}

  static constexpr QuadInt omega(RingId r) { return {r, 0, 1}; }
  static constexpr QuadInt fundamental_unit(RingId r) {
    return r == RingId::Zsqrt2 ? QuadInt{r, 1, 1} : QuadInt{r, 0, 1};
  }

  constexpr bool is_zero() const { return a == 0 && b == 0; }

  double to_double() const { return static_cast<double>(a) + static_cast<double>(b) * ring_traits(ring).omega; }

  friend constexpr bool operator==(const QuadInt& x, const QuadInt& y) {
    return x.ring == y.ring && x.a == y.a && x.b == y.b;
  }
  friend constexpr bool operator!=(const QuadInt& x, const QuadInt& y) { return !(x == y); }

  friend std::ostream& operator<<(std::ostream& os, const QuadInt& x) {
    return os << x.a << (x.b < 0 ? "-" : "+") << (x.b < 0 ? -x.b : x.b) << (x.ring == RingId::Zsqrt2 ? "*sqrt2" : "*tau");
  }
};

inline void require_same_ring(const QuadInt& x, const QuadInt& y) {
  if (x.ring != y.ring) throw std::invalid_argument("quasigap: ring mismatch");
}

inline QuadInt operator+(const QuadInt& x, const QuadInt& y) {
  require_same_ring(x, y);
  return {x.ring, detail::checked_add(x.a, y.a), detail::checked_add(x.b, y.b)};
}
inline QuadInt operator-(const QuadInt& x, const QuadInt& y) {
  require_same_ring(x, y);
  return {x.ring, detail::checked_sub(x.a, y.a), detail::checked_sub(x.b, y.b)};
}
inline QuadInt operator-(const QuadInt& x) { return {x.ring, detail::checked_sub(0, x.a), detail::checked_sub(0, x.b)}; }

inline QuadInt operator*(const QuadInt& x, const QuadInt& y) {
  require_same_ring(x, y);
  const auto t = ring_traits(x.ring);
  const __int128 xa = x.a, xb = x.b, ya = y.a, yb = y.b;
  const __int128 bd = xb * yb;
  return {x.ring, detail::narrow(xa * ya + t.norm * bd), detail::narrow(xa * yb + xb * ya + t.trace * bd)};
}
inline QuadInt operator*(std::int64_t k, const QuadInt& x) {
  return {x.ring, detail::checked_mul(k, x.a), detail::checked_mul(k, x.b)};
}

inline QuadInt& operator+=(QuadInt& x, const QuadInt& y) { return x = x + y; }
inline QuadInt& operator-=(QuadInt& x, const QuadInt& y) { return x = x - y; }
inline QuadInt& operator*=(QuadInt& x, const QuadInt& y) { return x = x * y; }

/// Galois conjugate: a + b*w -> a + b*(t - w).
inline QuadInt conj(const QuadInt& x) {
  const auto t = ring_traits(x.ring);
  return {x.ring, detail::checked_add(x.a, detail::checked_mul(x.b, t.trace)), detail::checked_sub(0, x.b)};
}

/// N(x) = x * sigma(x) = a^2 + t*a*b - n*b^2.
inline std::int64_t norm(const QuadInt& x) {
  const auto t = ring_traits(x.ring);
  const __int128 a = x.a, b = x.b;
  return detail::narrow(a * a + t.trace * a * b - t.norm * b * b);
}

/// Exact sign of the real number a + b*w.
inline int sign(const QuadInt& x) {
  const auto t = ring_traits(x.ring);
  // a + b*w = (2a + b*t + b*sqrt(D)) / 2
  return detail::sign_surd(static_cast<__int128>(2) * x.a + static_cast<__int128>(x.b) * t.trace, x.b, t.disc);
}

/// Exact sign of sigma(x).
inline int sign_conj(const QuadInt& x) {
  const auto t = ring_traits(x.ring);
  return detail::sign_surd(static_cast<__int128>(2) * x.a + static_cast<__int128>(x.b) * t.trace, -static_cast<__int128>(x.b),
                           t.disc);
}

inline int compare(const QuadInt& x, const QuadInt& y) { return sign(x - y); }

inline bool is_unit(const QuadInt& x) {
  const auto n = norm(x);
  return n == 1 || n == -1;
}

inline QuadInt unit_inverse(const QuadInt& u) {
  const auto n = norm(u);
  if (n == 1) return conj(u);
  if (n == -1) return -conj(u);
  throw std::invalid_argument("quasigap: unit_inverse of a non-unit");
}

/// u^k for the fundamental unit u; negative k uses the exact inverse.
inline QuadInt unit_power(RingId r, int k) {
  QuadInt base = QuadInt::fundamental_unit(r);
  if (k < 0) {
    base = unit_inverse(base);
    k = -k;
  }
  QuadInt out{r, 1, 0};
  for (int i = 0; i < k; ++i) out = out * base;
  return out;
}

struct DivMod {
  QuadInt quotient;
  QuadInt remainder;
};

/// Norm-Euclidean division: x = q*y + r with |N(r)| < |N(y)|.
///
/// Coefficients of x/y are rounded to the nearest integer (ties toward zero);
/// if the remainder bound fails the 3x3 neighbourhood of that rounding is
/// searched. The bound is checked on every call.
inline DivMod euclid_divmod(const QuadInt& x, const QuadInt& y) {
  require_same_ring(x, y);
  if (y.is_zero()) throw std::domain_error("quasigap: division by zero");
  const std::int64_t ny = norm(y);
  const QuadInt z = x * conj(y);  // x/y = z / N(y)
  const std::int64_t q0a = detail::round_div(z.a, ny);
  const std::int64_t q0b = detail::round_div(z.b, ny);
  const std::int64_t bound = ny < 0 ? -ny : ny;

  QuadInt q{x.ring, q0a, q0b};
  QuadInt r = x - q * y;
  auto abs_norm = [](const QuadInt& v) {
    const auto n = norm(v);
    return n < 0 ? -n : n;
  };
  if (abs_norm(r) < bound) return {q, r};

  std::int64_t best = -1;
  for (std::int64_t da = -1; da <= 1; ++da) {
    for (std::int64_t db = -1; db <= 1; ++db) {
      const QuadInt qc{x.ring, q0a + da, q0b + db};
      const QuadInt rc = x - qc * y;
      const auto nr = abs_norm(rc);
      if (nr < bound && (best < 0 || nr < best)) {
        best = nr;
        q = qc;
        r = rc;
      }
    }
  }
  if (best < 0) throw std::logic_error("quasigap: Euclidean remainder bound violated");
  return {q, r};
}

/// Exact division; nullopt-like failure is reported through the bool.
inline bool divides(const QuadInt& d, const QuadInt& x, QuadInt* quotient = nullptr) {
  require_same_ring(d, x);
  if (d.is_zero()) throw std::domain_error("quasigap: division by zero");
  const std::int64_t nd = norm(d);
  const QuadInt z = x * conj(d);
  if (z.a % nd != 0 || z.b % nd != 0) return false;
  if (quotient) *quotient = QuadInt{x.ring, z.a / nd, z.b / nd};
  return true;
}

namespace detail {

// True iff |y| >= |sigma(y)|, i.e. y^2 - sigma(y)^2 = b*sqrt(D)*(2a + b*t) >= 0.
inline bool ratio_at_least_one(const QuadInt& y) {
  const auto t = ring_traits(y.ring);
  const __int128 s = static_cast<__int128>(2) * y.a + static_cast<__int128>(y.b) * t.trace;
  return sign_of(y.b) * sign_of(s) >= 0;
}

// Some generator of (x, y), not normalized. Both zero is rejected.
inline QuadInt gcd_raw(QuadInt x, QuadInt y) {
  require_same_ring(x, y);
  if (x.is_zero() && y.is_zero()) throw std::invalid_argument("quasigap: gcd(0, 0) is undefined");
  auto abs_norm = [](const QuadInt& v) {
    const auto n = norm(v);
    return n < 0 ? -n : n;
  };
  while (!y.is_zero()) {
    const std::int64_t before = abs_norm(y);
    QuadInt r = euclid_divmod(x, y).remainder;
    if (!(abs_norm(r) < before)) throw std::logic_error("quasigap: Euclidean norm did not decrease");
    x = y;
    y = r;
  }
  return x;
}

}  // namespace detail

struct Associate {
  QuadInt value;  // canonical representative
  QuadInt unit;   // value == unit * input
};

/// Canonical associate: the unique u*x with u*x > 0 and u*x / |sigma(u*x)| in [1, eps^2).
inline Associate canonical_associate_with_unit(const QuadInt& x) {
  if (x.is_zero()) throw std::invalid_argument("quasigap: canonical_associate of zero");
  const RingId r = x.ring;
  const QuadInt eps = QuadInt::fundamental_unit(r);
  const QuadInt eps_inv = unit_inverse(eps);
  QuadInt y = x;
  QuadInt u{r, 1, 0};
  if (sign(y) < 0) {
    y = -y;
    u = -u;
  }
  // Jump close with floating point first; the exact loops below finish the job.
  const double ratio = std::fabs(y.to_double()) / std::fabs(conj(y).to_double());
  if (std::isfinite(ratio) && ratio > 0) {
    const int k = static_cast<int>(std::floor(std::log(ratio) / (2.0 * std::log(eps.to_double()))));
    if (k != 0 && std::abs(k) < 40) {
      const QuadInt v = unit_power(r, -k);
      y = y * v;
      u = u * v;
    }
  }
  while (!detail::ratio_at_least_one(y)) {
    y = y * eps;
    u = u * eps;
  }
  while (detail::ratio_at_least_one(y * eps_inv)) {
    y = y * eps_inv;
    u = u * eps_inv;
  }
  return {y, u};
}

inline QuadInt canonical_associate(const QuadInt& x) { return canonical_associate_with_unit(x).value; }

inline QuadInt gcd(const QuadInt& x, const QuadInt& y) { return canonical_associate(detail::gcd_raw(x, y)); }

inline bool coprime(const QuadInt& x, const QuadInt& y) {
  if (x.is_zero() && y.is_zero()) return false;
  return is_unit(detail::gcd_raw(x, y));
}

inline QuadInt lcm(const QuadInt& x, const QuadInt& y) {
  if (x.is_zero() || y.is_zero()) return QuadInt{x.ring, 0, 0};
  QuadInt q;
  divides(detail::gcd_raw(x, y), x, &q);
  return canonical_associate(q * y);
}

/// num / den with gcd(num, den) a unit and den a canonical associate.
struct FieldFraction {
  QuadInt num;
  QuadInt den;

  RingId ring() const { return num.ring; }
  double to_double() const { return num.to_double() / den.to_double(); }
  double sigma_double() const { return conj(num).to_double() / conj(den).to_double(); }

  friend bool operator==(const FieldFraction& x, const FieldFraction& y) { return x.num == y.num && x.den == y.den; }
  friend std::ostream& operator<<(std::ostream& os, const FieldFraction& f) { return os << "(" << f.num << ")/(" << f.den << ")"; }
};

inline FieldFraction reduce_fraction(const QuadInt& num, const QuadInt& den) {
  require_same_ring(num, den);
  if (den.is_zero()) throw std::domain_error("quasigap: zero denominator");
  const RingId r = num.ring;
  if (num.is_zero()) return {QuadInt{r, 0, 0}, QuadInt{r, 1, 0}};
  const QuadInt g = detail::gcd_raw(num, den);
  QuadInt n, d;
  divides(g, num, &n);
  divides(g, den, &d);
  const Associate ca = canonical_associate_with_unit(d);
  return {n * ca.unit, ca.value};
}

inline FieldFraction make_fraction(const QuadInt& x) { return reduce_fraction(x, QuadInt{x.ring, 1, 0}); }

namespace detail {

inline std::vector<std::int64_t> rational_primes_upto(std::int64_t n) {
  std::vector<std::int64_t> out;
  if (n < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
  for (std::int64_t p = 2; p <= n; ++p) {
    if (composite[static_cast<std::size_t>(p)]) continue;
    out.push_back(p);
    for (std::int64_t m = p * p; m <= n; m += p) composite[static_cast<std::size_t>(m)] = true;
  }
  return out;
}

inline std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % m);
}

inline std::int64_t powmod(std::int64_t b, std::int64_t e, std::int64_t m) {
  std::int64_t r = 1 % m;
  b %= m;
  if (b < 0) b += m;
  while (e > 0) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

// Square root of a quadratic residue n modulo an odd prime p (Tonelli-Shanks).
inline std::int64_t sqrt_mod(std::int64_t n, std::int64_t p) {
  n %= p;
  if (n < 0) n += p;
  if (n == 0) return 0;
  std::int64_t q = p - 1, s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  std::int64_t z = 2;
  while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  std::int64_t m = s, c = powmod(z, q, p), t = powmod(n, q, p), r = powmod(n, (q + 1) / 2, p);
  while (t != 1) {
    std::int64_t i = 0, tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, p);
      ++i;
    }
    std::int64_t b = c;
    for (std::int64_t j = 0; j < m - i - 1; ++j) b = mulmod(b, b, p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return r;
}

// Representative of the associate class of a non-unit pi in the open interval (1, eps).
inline QuadInt to_fundamental_domain(QuadInt pi) {
  const RingId r = pi.ring;
  const QuadInt one{r, 1, 0};
  const QuadInt eps = QuadInt::fundamental_unit(r);
  const QuadInt eps_inv = unit_inverse(eps);
  if (sign(pi) < 0) pi = -pi;
  while (compare(pi, one) <= 0) pi = pi * eps;
  while (compare(pi, eps) >= 0) pi = pi * eps_inv;
  return pi;
}

}  // namespace detail

/// Primes of O_K above the rational prime p, as representatives in (1, eps).
///
/// Split primes are factored as gcd(p, w - r) with r a root of the minimal
/// polynomial of w modulo p; ramified ones the same way with the double root;
/// an inert p is prime itself.
inline std::vector<QuadInt> primes_above(RingId ring, std::int64_t p) {
  const auto t = ring_traits(ring);
  std::vector<std::int64_t> roots;
  if (p == 2) {
    for (std::int64_t x = 0; x < 2; ++x)
      if (((x * x - t.trace * x - t.norm) % 2 + 2) % 2 == 0) roots.push_back(x);
  } else {
    const std::int64_t d = ((t.disc % p) + p) % p;
    const std::int64_t inv2 = (p + 1) / 2;
    if (d == 0) {
      roots.push_back(detail::mulmod(t.trace % p, inv2, p));
    } else if (detail::powmod(d, (p - 1) / 2, p) == 1) {
      const std::int64_t s = detail::sqrt_mod(d, p);
      roots.push_back(detail::mulmod(((t.trace + s) % p + p) % p, inv2, p));
    }
  }
  if (roots.empty()) return {detail::to_fundamental_domain(QuadInt{ring, p, 0})};
  const QuadInt pi = detail::to_fundamental_domain(detail::gcd_raw(QuadInt{ring, p, 0}, QuadInt{ring, -roots.front(), 1}));
  std::vector<QuadInt> out{pi};
  const QuadInt other = detail::to_fundamental_domain(conj(pi));
  if (other != pi) out.push_back(other);  // distinct representatives are non-associate
  if (out.size() == 2 && compare(out[1], out[0]) < 0) std::swap(out[0], out[1]);
  return out;
}

/// The associate of a prime in the open interval (1, eps).
inline QuadInt prime_representative(const QuadInt& pi) { return detail::to_fundamental_domain(pi); }

/// All primes pi of O_K with 1 < pi < eps and |N(pi)| <= norm_bound, sorted by |N|.
inline std::vector<QuadInt> enum_primes(RingId ring, std::int64_t norm_bound) {
  if (norm_bound < 2) throw std::invalid_argument("quasigap: enum_primes needs norm_bound >= 2");
  std::vector<std::pair<std::int64_t, QuadInt>> found;
  for (const std::int64_t p : detail::rational_primes_upto(norm_bound)) {
    for (const QuadInt& pi : primes_above(ring, p)) {
      const std::int64_t n = std::llabs(norm(pi));
      if (n <= norm_bound) found.emplace_back(n, pi);
    }
  }
  std::stable_sort(found.begin(), found.end(), [](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first < y.first;
    return compare(x.second, y.second) < 0;
  });
  std::vector<QuadInt> out;
  out.reserve(found.size());
  for (auto& f : found) out.push_back(f.second);
  return out;
}

/// Distinct prime divisors of a nonzero g, as representatives in (1, eps).
inline std::vector<QuadInt> prime_divisors(const QuadInt& g) {
  if (g.is_zero()) throw std::invalid_argument("quasigap: prime_divisors of zero");
  std::int64_t n = std::llabs(norm(g));
  std::vector<QuadInt> out;
  auto take = [&](std::int64_t p) {
    for (const QuadInt& pi : primes_above(g.ring, p))
      if (divides(pi, g)) out.push_back(pi);
  };
  for (std::int64_t p = 2; p <= n / p; ++p) {
    if (n % p != 0) continue;
    take(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) take(n);
  return out;
}

}  // namespace quasigap
