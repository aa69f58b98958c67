#pragma once

// Exact real numbers of the form alpha + beta*rho with alpha, beta in Q(w).
//
// For Z[sqrt2] the tower is trivial (rho = 1) and beta is folded into alpha.
// For Z[tau] rho = sqrt(tau + 2), so rho^2 = tau + 2 lies in Q(tau). The four
// numbers 1, w, rho, w*rho are linearly independent over Q, so zero testing
// is coefficientwise and the sign is decided exactly by comparing squares.

#include <gmpxx.h>

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "quasigap/qfield.hpp"

namespace quasigap {

enum class RhoKind : std::uint8_t { One, SqrtTauPlus2 };

inline constexpr RhoKind rho_kind(RingId r) { return r == RingId::Zsqrt2 ? RhoKind::One : RhoKind::SqrtTauPlus2; }

inline double rho_double(RingId r) { return r == RingId::Zsqrt2 ? 1.0 : std::sqrt(ring_traits(r).omega + 2.0); }

namespace detail {

// sign of P + Q*sqrt(D) with rational P, Q
inline int sign_surd_q(const mpq_class& p, const mpq_class& q, long d) {
  const int sp = sgn(p), sq = sgn(q);
  if (sq == 0) return sp;
  if (sp == 0) return sq;
  if (sp == sq) return sp;
  const mpq_class lhs = p * p;
  const mpq_class rhs = q * q * d;
  return cmp(lhs, rhs) > 0 ? sp : (cmp(lhs, rhs) < 0 ? sq : 0);
}

}  // namespace detail

/// p + q*w with rational p, q.
struct QRat {
  RingId ring = RingId::Zsqrt2;
  mpq_class p = 0;
  mpq_class q = 0;

  QRat() = default;
  QRat(RingId r, mpq_class p_ = 0, mpq_class q_ = 0) : ring(r), p(std::move(p_)), q(std::move(q_)) {
    p.canonicalize();
    q.canonicalize();
  }
  explicit QRat(const QuadInt& x) : ring(x.ring), p(static_cast<long>(x.a)), q(static_cast<long>(x.b)) {}

  bool is_zero() const { return sgn(p) == 0 && sgn(q) == 0; }
  double to_double() const { return p.get_d() + q.get_d() * ring_traits(ring).omega; }
  int sign() const {
    const auto t = ring_traits(ring);
    // p + q*w = (2p + q*t)/2 + (q/2)*sqrt(D)
    return detail::sign_surd_q(2 * p + q * t.trace, q, static_cast<long>(t.disc));
  }
  QRat conj() const {
    const auto t = ring_traits(ring);
    return {ring, p + q * t.trace, -q};
  }
  mpq_class norm() const {
    const auto t = ring_traits(ring);
    return p * p + t.trace * p * q - t.norm * q * q;
  }
  QRat inverse() const {
    if (is_zero()) throw std::domain_error("quasigap: division by zero");
    const mpq_class n = norm();
    const QRat c = conj();
    return {ring, c.p / n, c.q / n};
  }

  friend bool operator==(const QRat& x, const QRat& y) { return x.ring == y.ring && x.p == y.p && x.q == y.q; }
  friend QRat operator+(const QRat& x, const QRat& y) { return {x.ring, x.p + y.p, x.q + y.q}; }
  friend QRat operator-(const QRat& x, const QRat& y) { return {x.ring, x.p - y.p, x.q - y.q}; }
  friend QRat operator-(const QRat& x) { return {x.ring, -x.p, -x.q}; }
  friend QRat operator*(const QRat& x, const QRat& y) {
    const auto t = ring_traits(x.ring);
    const mpq_class bd = x.q * y.q;
    return {x.ring, x.p * y.p + t.norm * bd, x.p * y.q + x.q * y.p + t.trace * bd};
  }
  friend QRat operator/(const QRat& x, const QRat& y) { return x * y.inverse(); }
};

/// alpha + beta*rho.
class TowerReal {
 public:
  TowerReal() = default;
  explicit TowerReal(RingId r) : alpha_(r), beta_(r) {}
  TowerReal(QRat alpha, QRat beta) : alpha_(std::move(alpha)), beta_(std::move(beta)) { normalize(); }
  TowerReal(RingId r, mpq_class p, mpq_class q, mpq_class rr, mpq_class s)
      : alpha_(r, std::move(p), std::move(q)), beta_(r, std::move(rr), std::move(s)) {
    normalize();
  }
  static TowerReal from_int(RingId r, long v) { return TowerReal(QRat(r, v), QRat(r)); }
  static TowerReal from_quad(const QuadInt& x) { return TowerReal(QRat(x), QRat(x.ring)); }
  static TowerReal from_qrat(const QRat& x) { return TowerReal(x, QRat(x.ring)); }
  static TowerReal omega(RingId r) { return TowerReal(QRat(r, 0, 1), QRat(r)); }
  static TowerReal rho(RingId r) { return TowerReal(QRat(r), QRat(r, 1)); }

  RingId ring() const { return alpha_.ring; }
  RhoKind rho_kind() const { return quasigap::rho_kind(ring()); }
  const QRat& alpha() const { return alpha_; }
  const QRat& beta() const { return beta_; }
  // rational 4-tuple (p, q, r, s) with value (p + q*w) + (r + s*w)*rho
  const mpq_class& p() const { return alpha_.p; }
  const mpq_class& q() const { return alpha_.q; }
  const mpq_class& r() const { return beta_.p; }
  const mpq_class& s() const { return beta_.q; }

  bool is_zero() const { return alpha_.is_zero() && beta_.is_zero(); }
  double to_double() const { return alpha_.to_double() + beta_.to_double() * rho_double(ring()); }

  int sign() const {
    const int sa = alpha_.sign();
    const int sb = beta_.sign();
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sa == 0 ? sb : sa;
    // alpha and beta*rho have opposite signs: compare alpha^2 with beta^2 rho^2
    const QRat diff = alpha_ * alpha_ - beta_ * beta_ * rho_sq();
    const int sd = diff.sign();
    return sd > 0 ? sa : (sd < 0 ? sb : 0);
  }

  TowerReal inverse() const {
    if (is_zero()) throw std::domain_error("quasigap: division by zero");
    if (beta_.is_zero()) return from_qrat(alpha_.inverse());
    // 1/(a + b rho) = (a - b rho)/(a^2 - b^2 rho^2)
    const QRat den = alpha_ * alpha_ - beta_ * beta_ * rho_sq();
    const QRat inv = den.inverse();
    return TowerReal(alpha_ * inv, -(beta_ * inv));
  }

  /// Is this number in Q(w) (no rho part)?
  bool is_flat() const { return beta_.is_zero(); }
  /// Is this number in Q(w)*rho (no rational part)? Always false for rho = 1 unless zero.
  bool is_rho_multiple() const { return alpha_.is_zero(); }

  friend bool operator==(const TowerReal& x, const TowerReal& y) { return x.alpha_ == y.alpha_ && x.beta_ == y.beta_; }
  friend bool operator!=(const TowerReal& x, const TowerReal& y) { return !(x == y); }
  friend TowerReal operator+(const TowerReal& x, const TowerReal& y) {
    check(x, y);
    return TowerReal(x.alpha_ + y.alpha_, x.beta_ + y.beta_);
  }
  friend TowerReal operator-(const TowerReal& x, const TowerReal& y) {
    check(x, y);
    return TowerReal(x.alpha_ - y.alpha_, x.beta_ - y.beta_);
  }
  friend TowerReal operator-(const TowerReal& x) { return TowerReal(-x.alpha_, -x.beta_); }
  friend TowerReal operator*(const TowerReal& x, const TowerReal& y) {
    check(x, y);
    return TowerReal(x.alpha_ * y.alpha_ + x.beta_ * y.beta_ * x.rho_sq(), x.alpha_ * y.beta_ + x.beta_ * y.alpha_);
  }
  friend TowerReal operator/(const TowerReal& x, const TowerReal& y) { return x * y.inverse(); }
  TowerReal& operator+=(const TowerReal& y) { return *this = *this + y; }
  TowerReal& operator-=(const TowerReal& y) { return *this = *this - y; }
  TowerReal& operator*=(const TowerReal& y) { return *this = *this * y; }

  friend int compare(const TowerReal& x, const TowerReal& y) { return (x - y).sign(); }
  friend bool operator<(const TowerReal& x, const TowerReal& y) { return compare(x, y) < 0; }

  friend std::ostream& operator<<(std::ostream& os, const TowerReal& x) {
    return os << "[" << x.p() << "," << x.q() << "," << x.r() << "," << x.s() << "]";
  }

 private:
  QRat rho_sq() const {
    // rho^2 = tau + 2 in Q(tau); 1 in Q(sqrt2)
    return ring() == RingId::Ztau ? QRat(ring(), 2, 1) : QRat(ring(), 1);
  }
  void normalize() {
    if (alpha_.ring != beta_.ring) throw std::invalid_argument("quasigap: ring mismatch");
    if (rho_kind() == RhoKind::One && !beta_.is_zero()) {
      alpha_ = alpha_ + beta_;
      beta_ = QRat(alpha_.ring);
    }
  }
  static void check(const TowerReal& x, const TowerReal& y) {
    if (x.ring() != y.ring()) throw std::invalid_argument("quasigap: ring mismatch");
  }

  QRat alpha_;
  QRat beta_;
};

inline TowerReal abs(const TowerReal& x) { return x.sign() < 0 ? -x : x; }

/// Exact point in the plane with TowerReal coordinates.
struct Vec2 {
  TowerReal x;
  TowerReal y;

  friend bool operator==(const Vec2& u, const Vec2& v) { return u.x == v.x && u.y == v.y; }
  friend Vec2 operator+(const Vec2& u, const Vec2& v) { return {u.x + v.x, u.y + v.y}; }
  friend Vec2 operator-(const Vec2& u, const Vec2& v) { return {u.x - v.x, u.y - v.y}; }
  friend Vec2 operator-(const Vec2& u) { return {-u.x, -u.y}; }
  friend Vec2 operator*(const TowerReal& s, const Vec2& u) { return {s * u.x, s * u.y}; }
};

inline TowerReal cross(const Vec2& u, const Vec2& v) { return u.x * v.y - u.y * v.x; }
inline TowerReal dot(const Vec2& u, const Vec2& v) { return u.x * v.x + u.y * v.y; }

}  // namespace quasigap
