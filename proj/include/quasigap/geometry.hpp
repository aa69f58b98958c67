#pragma once

// Convex polygon windows with exact TowerReal vertices.

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "quasigap/cyclo.hpp"
#include "quasigap/tower.hpp"

namespace quasigap {

enum class Boundary : std::uint8_t { Open, Closed };
enum class Location : std::uint8_t { Inside, Boundary, Outside };

inline const char* to_string(Location l) {
  switch (l) {
    case Location::Inside: return "inside";
    case Location::Boundary: return "boundary";
    default: return "outside";
  }
}

namespace detail {

inline TowerReal signed_area2(const std::vector<Vec2>& v) {
  TowerReal s(v.front().x.ring());
  for (std::size_t i = 0; i < v.size(); ++i) s += cross(v[i], v[(i + 1) % v.size()]);
  return s;
}

}  // namespace detail

class Window {
 public:
  Window() = default;

  /// Vertices of a convex polygon in either orientation; stored CCW.
  Window(std::vector<Vec2> vertices, Boundary boundary, std::string label = {})
      : vertices_(std::move(vertices)), boundary_(boundary), label_(std::move(label)) {
    if (vertices_.size() < 3) throw std::invalid_argument("quasigap: window needs at least 3 vertices");
    const RingId r = vertices_.front().x.ring();
    for (const auto& v : vertices_)
      if (v.x.ring() != r || v.y.ring() != r) throw std::invalid_argument("quasigap: window vertices mix rings");
    const int s = detail::signed_area2(vertices_).sign();
    if (s == 0) throw std::invalid_argument("quasigap: degenerate window");
    if (s < 0) std::reverse(vertices_.begin(), vertices_.end());
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2& a = vertices_[i];
      const Vec2& b = vertices_[(i + 1) % n];
      const Vec2& c = vertices_[(i + 2) % n];
      if (cross(b - a, c - b).sign() <= 0) throw std::invalid_argument("quasigap: window is not strictly convex");
    }
  }

  RingId ring() const { return vertices_.front().x.ring(); }
  const std::vector<Vec2>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  Boundary boundary() const { return boundary_; }
  const std::string& label() const { return label_; }
  void set_label(std::string l) { label_ = std::move(l); }
  void set_boundary(Boundary b) { boundary_ = b; }

  friend bool operator==(const Window& a, const Window& b) {
    return a.vertices_ == b.vertices_ && a.boundary_ == b.boundary_;
  }

 private:
  std::vector<Vec2> vertices_;
  Boundary boundary_ = Boundary::Open;
  std::string label_;
};

inline TowerReal rational(RingId r, long num, long den = 1) { return TowerReal(r, mpq_class(num, den), 0, 0, 0); }

/// Open regular octagon of side 1, sides bisected by the axes.
inline Window make_octagon_AB() {
  const RingId r = RingId::Zsqrt2;
  const TowerReal h = rational(r, 1, 2);
  const TowerReal A(r, mpq_class(1, 2), mpq_class(1, 2), 0, 0);  // 1/2 + 1/sqrt2
  std::vector<Vec2> v = {{A, -h}, {A, h}, {h, A}, {-h, A}, {-A, h}, {-A, -h}, {-h, -A}, {h, -A}};
  return Window(std::move(v), Boundary::Open, "octagon_ab");
}

namespace detail {

// cos and sin of 36k degrees in the tau tower
inline std::pair<TowerReal, TowerReal> cos_sin_36(int k) {
  const RingId r = RingId::Ztau;
  k = ((k % 10) + 10) % 10;
  const TowerReal c36(r, 0, mpq_class(1, 2), 0, 0);                     // tau/2
  const TowerReal c72(r, mpq_class(-1, 2), mpq_class(1, 2), 0, 0);      // (tau-1)/2
  const TowerReal s36(r, 0, 0, mpq_class(-1, 2), mpq_class(1, 2));      // (tau-1) rho/2
  const TowerReal s72(r, 0, 0, mpq_class(1, 2), 0);                     // rho/2
  const TowerReal one = rational(r, 1), zero(r);
  switch (k) {
    case 0: return {one, zero};
    case 1: return {c36, s36};
    case 2: return {c72, s72};
    case 3: return {-c72, s72};
    case 4: return {-c36, s36};
    case 5: return {-one, zero};
    case 6: return {-c36, -s36};
    case 7: return {-c72, -s72};
    case 8: return {c72, -s72};
    default: return {c36, -s36};
  }
}

}  // namespace detail

/// Closed regular decagon of side sqrt((tau+2)/5) with two vertices on the y-axis.
inline Window make_decagon_T() {
  const RingId r = RingId::Ztau;
  // circumradius R = side / (2 sin 18) = tau*rho/(2tau - 1)
  const TowerReal R = TowerReal(r, 0, 1, 0, 0) * TowerReal::rho(r) / TowerReal(r, -1, 2, 0, 0);
  std::vector<Vec2> v;
  for (int k = 0; k < 10; ++k) {
    const auto [c, s] = detail::cos_sin_36(k);
    v.push_back({-(R * s), R * c});  // angle 90 + 36k
  }
  return Window(std::move(v), Boundary::Closed, "decagon_t");
}

/// Open pentagon with vertices 1, zeta, ..., zeta^4 (zeta = exp(2 pi i/5)).
inline Window make_pentagon_W1() {
  std::vector<Vec2> v;
  for (int k = 0; k < 5; ++k) {
    const auto [c, s] = detail::cos_sin_36(2 * k);
    v.push_back({c, s});
  }
  return Window(std::move(v), Boundary::Open, "pentagon_w1");
}

/// v -> scale * (+-v) + translate.
inline Window transform(const Window& w, const TowerReal& scale, bool rotate180, const Vec2& translate) {
  if (scale.is_zero()) throw std::invalid_argument("quasigap: zero scale");
  const TowerReal s = rotate180 ? -scale : scale;
  std::vector<Vec2> v;
  v.reserve(w.size());
  for (const auto& p : w.vertices()) v.push_back(s * p + translate);
  return Window(std::move(v), w.boundary(), w.label());
}

inline Window scale(const Window& w, const TowerReal& s) {
  return transform(w, s, false, {TowerReal(w.ring()), TowerReal(w.ring())});
}
inline Window translate(const Window& w, const Vec2& t) { return transform(w, rational(w.ring(), 1), false, t); }

inline Location contains(const Window& w, const Vec2& p) {
  const auto& v = w.vertices();
  bool on_edge = false;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const int s = cross(v[(i + 1) % v.size()] - v[i], p - v[i]).sign();
    if (s < 0) return Location::Outside;
    if (s == 0) on_edge = true;
  }
  return on_edge ? Location::Boundary : Location::Inside;
}

/// Member of the point set: Inside always; Boundary only for closed windows.
inline bool admits(Boundary b, Location l) { return l == Location::Inside || (l == Location::Boundary && b == Boundary::Closed); }

inline TowerReal area(const Window& w) {
  TowerReal a = detail::signed_area2(w.vertices());
  return rational(w.ring(), 1, 2) * a;
}

namespace detail {

// Drops repeated and collinear vertices of a closed polygon chain.
inline std::vector<Vec2> simplify(std::vector<Vec2> v) {
  bool changed = true;
  while (changed && v.size() >= 3) {
    changed = false;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Vec2& a = v[(i + v.size() - 1) % v.size()];
      const Vec2& b = v[i];
      const Vec2& c = v[(i + 1) % v.size()];
      if (b == c || cross(b - a, c - b).sign() == 0) {
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  return v;
}

}  // namespace detail

/// Convex intersection by half-plane clipping; nullopt when the result has no interior.
inline std::optional<Window> intersect_convex(const Window& w1, const Window& w2) {
  if (w1.ring() != w2.ring()) throw std::invalid_argument("quasigap: ring mismatch");
  std::vector<Vec2> poly = w1.vertices();
  const auto& clip = w2.vertices();
  for (std::size_t i = 0; i < clip.size() && !poly.empty(); ++i) {
    const Vec2& e0 = clip[i];
    const Vec2 e = clip[(i + 1) % clip.size()] - e0;
    std::vector<Vec2> out;
    const std::size_t n = poly.size();
    for (std::size_t j = 0; j < n; ++j) {
      const Vec2& a = poly[j];
      const Vec2& b = poly[(j + 1) % n];
      const TowerReal da = cross(e, a - e0);
      const TowerReal db = cross(e, b - e0);
      const int sa = da.sign(), sb = db.sign();
      if (sa >= 0) out.push_back(a);
      if ((sa > 0 && sb < 0) || (sa < 0 && sb > 0)) {
        const TowerReal t = da / (da - db);
        out.push_back(a + t * (b - a));
      }
    }
    poly = detail::simplify(std::move(out));
    if (poly.size() < 3) poly.clear();
  }
  if (poly.size() < 3) return std::nullopt;
  if (detail::signed_area2(poly).sign() <= 0) return std::nullopt;
  const Boundary b = (w1.boundary() == Boundary::Closed && w2.boundary() == Boundary::Closed) ? Boundary::Closed : Boundary::Open;
  return Window(std::move(poly), b, w1.label() + "&" + w2.label());
}

/// sup over x in C1, y in C2 of the area of the triangle (0, x, y); attained at vertices.
inline TowerReal sup_triangle_area(const std::vector<Vec2>& c1, const std::vector<Vec2>& c2) {
  if (c1.empty() || c2.empty()) throw std::invalid_argument("quasigap: empty vertex set");
  const RingId r = c1.front().x.ring();
  TowerReal best(r);
  for (const auto& x : c1)
    for (const auto& y : c2) {
      const TowerReal a = abs(cross(x, y));
      if (compare(a, best) > 0) best = a;
    }
  return rational(r, 1, 2) * best;
}

inline TowerReal sup_triangle_area(const Window& w1, const Window& w2) { return sup_triangle_area(w1.vertices(), w2.vertices()); }

struct StarCheckReport {
  bool is_star_shaped_origin = false;
  bool satisfies_minusW_in_cW = false;
};

/// 0 in W, and -W contained in c*W (closures compared through vertices).
inline StarCheckReport star_check(const Window& w, const TowerReal& c) {
  StarCheckReport rep;
  const Vec2 origin{TowerReal(w.ring()), TowerReal(w.ring())};
  rep.is_star_shaped_origin = contains(w, origin) == Location::Inside;
  if (c.is_zero()) return rep;
  const Window cw = scale(w, c);
  rep.satisfies_minusW_in_cW = std::all_of(w.vertices().begin(), w.vertices().end(),
                                           [&](const Vec2& v) { return contains(cw, -v) != Location::Outside; });
  return rep;
}

inline double outer_radius_sq(const Window& w) {
  double m = 0;
  for (const auto& v : w.vertices()) {
    const double x = v.x.to_double(), y = v.y.to_double();
    m = std::max(m, x * x + y * y);
  }
  return m;
}

/// Half-plane tests on graded points (X/2, Y*rho/2), X, Y in Z[w], with
/// integer coefficients. Built once per window; exact and allocation free.
class CompiledWindow {
 public:
  CompiledWindow() = default;
  explicit CompiledWindow(const Window& w) : boundary_(w.boundary()), ring_(w.ring()) {
    const auto& v = w.vertices();
    graded_ = true;
    for (const auto& p : v)
      if (!graded_coords(p)) graded_ = false;
    if (!graded_) {
      window_ = w;
      return;
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
      const auto [vx, vy] = *graded_coords(v[i]);
      const auto [ux, uy] = *graded_coords(v[(i + 1) % v.size()]);
      const QRat ex = ux - vx, ey = uy - vy;
      const QRat half(ring_, mpq_class(1, 2));
      // cross(e, p - v) / rho = (-ey/2) X + (ex/2) Y + (ey vx - ex vy)
      std::vector<QRat> coef = {-(ey * half), ex * half, ey * vx - ex * vy};
      mpz_class l = 1;
      for (const auto& c : coef) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.p.get_den_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.q.get_den_mpz_t());
      }
      Edge e;
      QuadInt* dst[3] = {&e.A, &e.B, &e.C};
      for (int k = 0; k < 3; ++k) {
        const mpq_class p = coef[k].p * l, q = coef[k].q * l;
        if (!p.get_num().fits_slong_p() || !q.get_num().fits_slong_p())
          throw std::overflow_error("quasigap: window coefficients too large");
        *dst[k] = QuadInt{ring_, p.get_num().get_si(), q.get_num().get_si()};
      }
      edges_.push_back(e);
    }
    window_ = w;
  }

  const Window& window() const { return window_; }
  Boundary boundary() const { return boundary_; }

  Location locate(const GradedPoint& p) const {
    if (!graded_) return contains(window_, p.to_vec2());
    bool on_edge = false;
    for (const auto& e : edges_) {
      const int s = sign(e.A * p.X + e.B * p.Y + e.C);
      if (s < 0) return Location::Outside;
      if (s == 0) on_edge = true;
    }
    return on_edge ? Location::Boundary : Location::Inside;
  }

  bool admits(const GradedPoint& p) const { return quasigap::admits(boundary_, locate(p)); }

  /// (x, y') with x in Q(w) and y = y' * rho, when p has that shape.
  static std::optional<std::pair<QRat, QRat>> graded_coords(const Vec2& p) {
    if (!p.x.is_flat()) return std::nullopt;
    if (rho_kind(p.x.ring()) == RhoKind::One) return std::make_pair(p.x.alpha(), p.y.alpha());
    if (!p.y.is_rho_multiple()) return std::nullopt;
    return std::make_pair(p.x.alpha(), p.y.beta());
  }

 private:
  struct Edge {
    QuadInt A, B, C;
  };
  std::vector<Edge> edges_;
  Window window_;
  Boundary boundary_ = Boundary::Open;
  RingId ring_ = RingId::Zsqrt2;
  bool graded_ = false;
};

}  // namespace quasigap
