#pragma once

// Points x = x1 + x2*zeta of Z[zeta_8] and Z[zeta_5], with x1, x2 in the real
// subring Z[sqrt2] resp. Z[tau].
//
//   n = 8: zeta = (w/2, w/2) with w = sqrt2,           sigma(zeta) = zeta^3
//   n = 5: zeta = ((tau-1)/2, rho/2), rho = sqrt(tau+2), sigma(zeta) = zeta^2
//
// Every coordinate that shows up below has the shape (X/2, Y*rho/2) with
// X, Y in Z[w] (rho = 1 for n = 8). GradedPoint stores X and Y, which keeps
// membership and orientation tests in integer arithmetic.

#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>

#include "quasigap/qfield.hpp"
#include "quasigap/tower.hpp"

namespace quasigap {

enum class CycloId : std::uint8_t { N8 = 8, N5 = 5 };

inline constexpr RingId ring_of(CycloId id) { return id == CycloId::N8 ? RingId::Zsqrt2 : RingId::Ztau; }
inline constexpr int sigma_exponent(CycloId id) { return id == CycloId::N8 ? 3 : 2; }
inline constexpr int order_of(CycloId id) { return static_cast<int>(id); }

/// Real and imaginary part of zeta as doubles.
inline double zeta_re(CycloId id) { return id == CycloId::N8 ? std::sqrt(0.5) : (ring_traits(RingId::Ztau).omega - 1.0) / 2.0; }
inline double zeta_im(CycloId id) { return id == CycloId::N8 ? std::sqrt(0.5) : rho_double(RingId::Ztau) / 2.0; }

/// (X/2, Y*rho/2) with X, Y in Z[w].
struct GradedPoint {
  QuadInt X;
  QuadInt Y;

  Vec2 to_vec2() const {
    const RingId r = X.ring;
    const TowerReal half(r, mpq_class(1, 2), 0, 0, 0);
    const TowerReal rho = TowerReal::rho(r);
    return {half * TowerReal::from_quad(X), half * rho * TowerReal::from_quad(Y)};
  }
  double x_double() const { return X.to_double() / 2.0; }
  double y_double() const { return Y.to_double() * rho_double(X.ring) / 2.0; }
};

struct CycloPoint {
  CycloId id = CycloId::N8;
  QuadInt x1;
  QuadInt x2;

  CycloPoint() = default;
  CycloPoint(CycloId i, QuadInt a, QuadInt b) : id(i), x1(a), x2(b) {
    if (a.ring != ring_of(i) || b.ring != ring_of(i)) throw std::invalid_argument("quasigap: coordinate ring does not match");
  }
  /// x1 = a + b*w, x2 = c + d*w
  static CycloPoint from_coeffs(CycloId i, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    const RingId r = ring_of(i);
    return {i, QuadInt{r, a, b}, QuadInt{r, c, d}};
  }
  static CycloPoint zeta(CycloId i) {
    const RingId r = ring_of(i);
    return {i, QuadInt{r, 0, 0}, QuadInt{r, 1, 0}};
  }

  RingId ring() const { return ring_of(id); }
  bool is_zero() const { return x1.is_zero() && x2.is_zero(); }

  friend bool operator==(const CycloPoint& u, const CycloPoint& v) { return u.id == v.id && u.x1 == v.x1 && u.x2 == v.x2; }
  friend bool operator!=(const CycloPoint& u, const CycloPoint& v) { return !(u == v); }
  friend CycloPoint operator+(const CycloPoint& u, const CycloPoint& v) { return {u.id, u.x1 + v.x1, u.x2 + v.x2}; }
  friend CycloPoint operator-(const CycloPoint& u, const CycloPoint& v) { return {u.id, u.x1 - v.x1, u.x2 - v.x2}; }
  friend CycloPoint operator-(const CycloPoint& u) { return {u.id, -u.x1, -u.x2}; }
  friend CycloPoint operator*(const QuadInt& s, const CycloPoint& u) { return {u.id, s * u.x1, s * u.x2}; }

  friend std::ostream& operator<<(std::ostream& os, const CycloPoint& p) {
    return os << "(" << p.x1 << ") + (" << p.x2 << ")*zeta" << static_cast<int>(p.id);
  }
};

/// Product in Z[zeta].
inline CycloPoint multiply(const CycloPoint& u, const CycloPoint& v) {
  if (u.id != v.id) throw std::invalid_argument("quasigap: cyclotomic id mismatch");
  const RingId r = u.ring();
  // zeta^2 = 2Re(zeta)*zeta - 1, with 2Re(zeta) = w (n=8) or tau-1 (n=5)
  const QuadInt two_re = u.id == CycloId::N8 ? QuadInt{r, 0, 1} : QuadInt{r, -1, 1};
  const QuadInt zz = u.x2 * v.x2;
  return {u.id, u.x1 * v.x1 - zz, u.x1 * v.x2 + u.x2 * v.x1 + two_re * zz};
}

inline GradedPoint graded_physical(const CycloPoint& p) {
  const RingId r = p.ring();
  if (p.id == CycloId::N8) {
    const QuadInt w = QuadInt::omega(r);
    return {2 * p.x1 + w * p.x2, w * p.x2};
  }
  const QuadInt tm1{r, -1, 1};
  return {2 * p.x1 + tm1 * p.x2, p.x2};
}

inline GradedPoint graded_internal(const CycloPoint& p) {
  const RingId r = p.ring();
  const QuadInt s1 = conj(p.x1), s2 = conj(p.x2);
  if (p.id == CycloId::N8) {
    // zeta^3 = (-w/2, w/2)
    const QuadInt w = QuadInt::omega(r);
    return {2 * s1 - w * s2, w * s2};
  }
  // zeta^2 = (-tau/2, (tau-1) rho/2)
  const QuadInt tau = QuadInt::omega(r);
  const QuadInt tm1{r, -1, 1};
  return {2 * s1 - tau * s2, tm1 * s2};
}

inline Vec2 embed_physical(const CycloPoint& p) { return graded_physical(p).to_vec2(); }
inline Vec2 embed_internal(const CycloPoint& p) { return graded_internal(p).to_vec2(); }

inline double physical_re(const CycloPoint& p) { return p.x1.to_double() + p.x2.to_double() * zeta_re(p.id); }
inline double physical_im(const CycloPoint& p) { return p.x2.to_double() * zeta_im(p.id); }

/// |x|^2 in Z[w].
inline QuadInt modulus_sq(const CycloPoint& p) {
  const RingId r = p.ring();
  const QuadInt two_re = p.id == CycloId::N8 ? QuadInt{r, 0, 1} : QuadInt{r, -1, 1};
  return p.x1 * p.x1 + p.x2 * p.x2 + two_re * (p.x1 * p.x2);
}

/// |sigma(x)|^2, which is the conjugate of |x|^2.
inline QuadInt internal_modulus_sq(const CycloPoint& p) { return conj(modulus_sq(p)); }

/// de Bruijn index: the ring map Z[zeta_5] -> Z/5 with zeta -> 1, tau -> 3.
inline int kappa(const CycloPoint& p) {
  if (p.id != CycloId::N5) throw std::invalid_argument("quasigap: kappa is defined for n = 5 only");
  const std::int64_t v = (p.x1.a % 5) + 3 * (p.x1.b % 5) + (p.x2.a % 5) + 3 * (p.x2.b % 5);
  return static_cast<int>(((v % 5) + 5) % 5);
}

/// x1*y2 - x2*y1; the physical cross product is this times Im(zeta) > 0.
inline QuadInt cross_coeff(const CycloPoint& u, const CycloPoint& v) {
  if (u.id != v.id) throw std::invalid_argument("quasigap: cyclotomic id mismatch");
  return u.x1 * v.x2 - u.x2 * v.x1;
}

inline int cross_sign(const CycloPoint& u, const CycloPoint& v) { return sign(cross_coeff(u, v)); }

/// Area of the triangle (0, u, v) in the physical plane.
inline TowerReal cross_area(const CycloPoint& u, const CycloPoint& v) {
  const QuadInt c = cross_coeff(u, v);
  const RingId r = u.ring();
  const TowerReal abs_c = TowerReal::from_quad(sign(c) < 0 ? -c : c);
  // Im zeta / 2 = w/4 (n = 8) or rho/4 (n = 5)
  const TowerReal im_half = u.id == CycloId::N8 ? TowerReal(r, 0, mpq_class(1, 4), 0, 0) : TowerReal(r, 0, 0, mpq_class(1, 4), 0);
  return abs_c * im_half;
}

/// x / u^k for the fundamental unit u.
inline CycloPoint unit_divide(const CycloPoint& p, int k) {
  const QuadInt s = unit_power(p.ring(), -k);
  return s * p;
}

/// x / d when both coordinates are divisible by d.
inline std::optional<CycloPoint> try_divide(const CycloPoint& p, const QuadInt& d) {
  if (d.is_zero()) throw std::domain_error("quasigap: division by zero");
  QuadInt q1, q2;
  if (!divides(d, p.x1, &q1) || !divides(d, p.x2, &q2)) return std::nullopt;
  return CycloPoint{p.id, q1, q2};
}

/// x / (num/den) when the result lies in Z[zeta].
inline std::optional<CycloPoint> try_divide(const CycloPoint& p, const FieldFraction& c) {
  return try_divide(c.den * p, c.num);
}

}  // namespace quasigap
