#pragma once

// Cut-and-project point sets in Z[zeta_8] and Z[zeta_5]:
//
//   A: { x in Z[zeta_8] : sigma(x) in W }                   (sigma(zeta) = zeta^3)
//   T: { x in Z[zeta_5] : sigma(x) in W }                   (sigma(zeta) = zeta^2)
//   P: { x in Z[zeta_5] : kappa(x) = k in 1..4, sigma(x) in W_k + eps }
//
// with W_1 the pentagon, W_2 = -tau W_1, W_3 = tau W_1, W_4 = -W_1.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "quasigap/cyclo.hpp"
#include "quasigap/geometry.hpp"
#include "quasigap/parallel.hpp"
#include "quasigap/qfield.hpp"
#include "quasigap/tower.hpp"

namespace quasigap {

enum class Family : std::uint8_t { A, T, P };

inline const char* to_string(Family f) { return f == Family::A ? "A" : (f == Family::T ? "T" : "P"); }

/// A hypothesis of a visibility criterion or density formula does not hold.
struct PreconditionError : std::domain_error {
  using std::domain_error::domain_error;
};

using Gamma = std::array<mpq_class, 5>;

/// eps = sum_j gamma_j zeta^(2j), zeta = exp(2 pi i/5).
inline Vec2 penrose_eps(const Gamma& gamma) {
  const RingId r = RingId::Ztau;
  Vec2 e{TowerReal(r), TowerReal(r)};
  for (int j = 0; j < 5; ++j) {
    const auto [c, s] = detail::cos_sin_36(4 * j);
    const TowerReal g(r, gamma[static_cast<std::size_t>(j)], 0, 0, 0);
    e.x += g * c;
    e.y += g * s;
  }
  return e;
}

/// Every gamma_j non-integral and sum gamma_j = 0.
inline bool validate_penrose_translate(const Gamma& gamma) {
  mpq_class sum = 0;
  for (const auto& g : gamma) {
    if (g.get_den() == 1) return false;
    sum += g;
  }
  return sgn(sum) == 0;
}

inline Gamma gamma_eps0() {
  return {mpq_class(2, 101), mpq_class(1, 101), mpq_class(-2, 101), mpq_class(-2, 101), mpq_class(1, 101)};
}

/// The four windows W_{k,eps}, k = 1..4, as indices 0..3.
inline std::array<Window, 4> penrose_windows(const Vec2& eps) {
  const RingId r = RingId::Ztau;
  const Window w1 = make_pentagon_W1();
  const TowerReal tau = TowerReal::omega(r), one = rational(r, 1);
  std::array<Window, 4> out = {transform(w1, one, false, eps), transform(w1, -tau, false, eps),
                               transform(w1, tau, false, eps), transform(w1, -one, false, eps)};
  for (int k = 0; k < 4; ++k) out[static_cast<std::size_t>(k)].set_label("W" + std::to_string(k + 1) + "_eps");
  return out;
}

inline double modulus_double(const Vec2& v) { return std::hypot(v.x.to_double(), v.y.to_double()); }

struct FamilySpec {
  Family family = Family::A;
  std::optional<Window> window;  // A and T
  std::optional<Vec2> eps;       // P
  std::optional<Gamma> gamma;    // P, when eps came from gamma
  std::string label;

  CycloId id() const { return family == Family::A ? CycloId::N8 : CycloId::N5; }

  static FamilySpec A(Window w) {
    FamilySpec s;
    s.family = Family::A;
    if (w.ring() != RingId::Zsqrt2) throw std::invalid_argument("quasigap: A-set windows live over Z[sqrt2]");
    s.label = w.label();
    s.window = std::move(w);
    return s;
  }
  static FamilySpec T(Window w) {
    FamilySpec s;
    s.family = Family::T;
    if (w.ring() != RingId::Ztau) throw std::invalid_argument("quasigap: T-set windows live over Z[tau]");
    s.label = w.label();
    s.window = std::move(w);
    return s;
  }
  static FamilySpec P(Vec2 eps) {
    FamilySpec s;
    s.family = Family::P;
    if (eps.x.ring() != RingId::Ztau || eps.y.ring() != RingId::Ztau) throw std::invalid_argument("quasigap: eps must lie in the tau tower");
    s.eps = std::move(eps);
    s.label = "penrose";
    return s;
  }
  static FamilySpec P(const Gamma& gamma) {
    FamilySpec s = P(penrose_eps(gamma));
    s.gamma = gamma;
    return s;
  }
};

/// |eps| < 0.1, decided exactly.
inline bool eps_admissible(const Vec2& eps) {
  const TowerReal m = dot(eps, eps);
  return compare(m, rational(eps.x.ring(), 1, 100)) < 0;
}

/// Membership in a family point set, with windows compiled for exact integer tests.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(const FamilySpec& spec) : family_(spec.family), id_(spec.id()) {
    if (spec.family == Family::P) {
      if (!spec.eps) throw std::invalid_argument("quasigap: P-set needs eps");
      for (const auto& w : penrose_windows(*spec.eps)) windows_.emplace_back(w);
    } else {
      if (!spec.window) throw std::invalid_argument("quasigap: family needs a window");
      windows_.emplace_back(*spec.window);
    }
  }

  Family family() const { return family_; }
  CycloId id() const { return id_; }
  const std::vector<CompiledWindow>& windows() const { return windows_; }

  /// Window index for x: 0 for A/T, kappa(x) - 1 for P (-1 when kappa(x) = 0).
  int window_index(const CycloPoint& x) const {
    if (family_ != Family::P) return 0;
    return kappa(x) - 1;
  }

  Location locate(const CycloPoint& x) const {
    const int k = window_index(x);
    if (k < 0) return Location::Outside;
    return windows_[static_cast<std::size_t>(k)].locate(graded_internal(x));
  }

  bool contains(const CycloPoint& x) const {
    const int k = window_index(x);
    if (k < 0) return false;
    return windows_[static_cast<std::size_t>(k)].admits(graded_internal(x));
  }

 private:
  Family family_ = Family::A;
  CycloId id_ = CycloId::N8;
  std::vector<CompiledWindow> windows_;
};

/// Coefficients (a, b, c, d) of x1 = a + b w, x2 = c + d w.
struct PackedPoint {
  std::int32_t a = 0, b = 0, c = 0, d = 0;

  CycloPoint unpack(CycloId id) const { return CycloPoint::from_coeffs(id, a, b, c, d); }
  static PackedPoint pack(const CycloPoint& p) {
    auto n = [](std::int64_t v) {
      if (v > std::numeric_limits<std::int32_t>::max() || v < std::numeric_limits<std::int32_t>::min())
        throw std::overflow_error("quasigap: coefficient does not fit the packed sample");
      return static_cast<std::int32_t>(v);
    };
    return {n(p.x1.a), n(p.x1.b), n(p.x2.a), n(p.x2.b)};
  }
  friend bool operator==(const PackedPoint& u, const PackedPoint& v) { return u.a == v.a && u.b == v.b && u.c == v.c && u.d == v.d; }
};

struct PointSample {
  FamilySpec spec;
  double T = 0;
  std::vector<PackedPoint> points;  // ordered by (d, c, b, a)
  std::vector<std::uint8_t> visible;
  std::uint64_t boundary_hits = 0;

  CycloId id() const { return spec.id(); }
  CycloPoint point(std::size_t i) const { return points[i].unpack(id()); }
  std::size_t size() const { return points.size(); }
  bool has_visibility() const { return visible.size() == points.size(); }
  std::size_t visible_count() const {
    std::size_t n = 0;
    for (auto v : visible) n += v;
    return n;
  }
};

/// Exact test |x|^2 <= T^2 for a double radius T.
class RadiusBound {
 public:
  explicit RadiusBound(double T) : t2_(T * T) {
    if (!(T > 0) || !std::isfinite(T)) throw std::invalid_argument("quasigap: radius must be positive and finite");
    t2_exact_ = mpq_class(T) * mpq_class(T);
  }
  bool within(const QuadInt& m) const {
    const double md = m.to_double();
    const double tol = 1e-9 * (1.0 + t2_);
    if (md < t2_ - tol) return true;
    if (md > t2_ + tol) return false;
    const QRat diff = QRat(m.ring, t2_exact_) - QRat(m);
    return diff.sign() >= 0;
  }
  double t2() const { return t2_; }

 private:
  double t2_;
  mpq_class t2_exact_;
};

namespace detail {

struct DoublePoly {
  std::vector<std::pair<double, double>> v;
  double ymin = 0, ymax = 0;

  explicit DoublePoly(const Window& w) {
    for (const auto& p : w.vertices()) v.emplace_back(p.x.to_double(), p.y.to_double());
    ymin = ymax = v.front().second;
    for (auto& p : v) {
      ymin = std::min(ymin, p.second);
      ymax = std::max(ymax, p.second);
    }
  }

  // x-extent of the horizontal slice at height y, widened by slack
  bool slice(double y, double slack, double& lo, double& hi) const {
    if (y < ymin - slack || y > ymax + slack) return false;
    const double yc = std::clamp(y, ymin, ymax);
    lo = std::numeric_limits<double>::infinity();
    hi = -lo;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const auto& p = v[i];
      const auto& q = v[(i + 1) % v.size()];
      const double y0 = std::min(p.second, q.second), y1 = std::max(p.second, q.second);
      if (yc < y0 || yc > y1) continue;
      double x;
      if (y1 - y0 < 1e-300) {
        lo = std::min({lo, p.first, q.first});
        hi = std::max({hi, p.first, q.first});
        continue;
      }
      x = p.first + (yc - p.second) * (q.first - p.first) / (q.second - p.second);
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
    if (lo > hi) return false;
    // an error of slack in y moves the ends by at most slack * |dx/dy|
    lo -= slack * 64;
    hi += slack * 64;
    return true;
  }
};

inline std::int64_t ceil_i(double x) { return static_cast<std::int64_t>(std::ceil(x)); }
inline std::int64_t floor_i(double x) { return static_cast<std::int64_t>(std::floor(x)); }

}  // namespace detail

struct GenerateOptions {
  unsigned threads = 0;
};

/// All points of the family with |x| <= T, ordered by (d, c, b, a).
inline PointSample generate(const FamilySpec& spec, double T, GenerateOptions opt = {}) {
  const RadiusBound bound(T);
  const PointSet set(spec);
  const CycloId id = spec.id();
  const RingId r = ring_of(id);
  const auto tr = ring_traits(r);
  const double w = tr.omega, sw = tr.sigma_omega, delta = w - sw;
  // physical and internal zeta
  const double re_z = zeta_re(id), im_z = zeta_im(id);
  const double re_s = id == CycloId::N8 ? -std::sqrt(0.5) : -w / 2.0;
  const double im_s = id == CycloId::N8 ? std::sqrt(0.5) : (w - 1.0) * rho_double(r) / 2.0;

  std::vector<detail::DoublePoly> polys;
  for (const auto& cw : set.windows()) polys.emplace_back(cw.window());
  double iy_min = polys.front().ymin, iy_max = polys.front().ymax;
  for (auto& p : polys) {
    iy_min = std::min(iy_min, p.ymin);
    iy_max = std::max(iy_max, p.ymax);
  }
  const double slack = 1e-7;

  // x2 = c + d w with |x2 im_z| <= T and sigma(x2) im_s in [iy_min, iy_max]
  const double L1 = -T / im_z - slack, U1 = T / im_z + slack;
  const double L2 = iy_min / im_s - slack, U2 = iy_max / im_s + slack;
  struct Row {
    std::int64_t c, d;
  };
  std::vector<Row> rows;
  for (std::int64_t d = detail::ceil_i((L1 - U2) / delta); d <= detail::floor_i((U1 - L2) / delta); ++d) {
    const double clo = std::max(L1 - d * w, L2 - d * sw), chi = std::min(U1 - d * w, U2 - d * sw);
    for (std::int64_t c = detail::ceil_i(clo); c <= detail::floor_i(chi); ++c) rows.push_back({c, d});
  }

  const std::size_t chunk = 16;
  const std::size_t nchunks = (rows.size() + chunk - 1) / chunk;
  std::vector<std::vector<PackedPoint>> parts(nchunks);
  std::vector<std::uint64_t> hits(nchunks, 0);
  const bool is_p = spec.family == Family::P;

  parallel_chunks(nchunks, resolve_threads(opt.threads), [&](std::size_t ci) {
    auto& out = parts[ci];
    std::vector<PackedPoint> row_pts;
    for (std::size_t ri = ci * chunk; ri < std::min(rows.size(), (ci + 1) * chunk); ++ri) {
      const auto [c, d] = rows[ri];
      const QuadInt x2{r, c, d};
      const double x2d = c + d * w, sx2d = c + d * sw;
      const double py = x2d * im_z;
      const double h2 = T * T - py * py;
      if (h2 < -1e-6 * (1 + T * T)) continue;
      const double h = std::sqrt(std::max(0.0, h2)) + slack + 1e-9 * T;
      const double Lp = -x2d * re_z - h, Up = -x2d * re_z + h;
      const double iy = sx2d * im_s;
      row_pts.clear();
      for (std::size_t k = 0; k < polys.size(); ++k) {
        double xl, xr;
        if (!polys[k].slice(iy, slack, xl, xr)) continue;
        const double Li = xl - sx2d * re_s - slack, Ui = xr - sx2d * re_s + slack;
        const std::int64_t bmin = detail::ceil_i((Lp - Ui) / delta), bmax = detail::floor_i((Up - Li) / delta);
        for (std::int64_t b = bmin; b <= bmax; ++b) {
          std::int64_t amin = detail::ceil_i(std::max(Lp - b * w, Li - b * sw));
          const std::int64_t amax = detail::floor_i(std::min(Up - b * w, Ui - b * sw));
          std::int64_t step = 1;
          if (is_p) {
            // kappa = a + 3b + c + 3d must equal k + 1
            const std::int64_t want = ((static_cast<std::int64_t>(k) + 1 - 3 * b - c - 3 * d) % 5 + 5) % 5;
            amin += ((want - amin) % 5 + 5) % 5;
            step = 5;
          }
          for (std::int64_t a = amin; a <= amax; a += step) {
            const CycloPoint x{id, QuadInt{r, a, b}, x2};
            if (!bound.within(modulus_sq(x))) continue;
            const Location loc = set.windows()[k].locate(graded_internal(x));
            if (loc == Location::Outside) continue;
            if (loc == Location::Boundary) {
              ++hits[ci];
              if (set.windows()[k].boundary() == Boundary::Open) continue;
            }
            row_pts.push_back(PackedPoint::pack(x));
          }
        }
      }
      if (is_p)
        std::sort(row_pts.begin(), row_pts.end(),
                  [](const PackedPoint& u, const PackedPoint& v) { return u.b != v.b ? u.b < v.b : u.a < v.a; });
      out.insert(out.end(), row_pts.begin(), row_pts.end());
    }
  });

  PointSample s;
  s.spec = spec;
  s.T = T;
  std::size_t total = 0;
  for (auto& p : parts) total += p.size();
  s.points.reserve(total);
  for (std::size_t i = 0; i < nchunks; ++i) {
    s.points.insert(s.points.end(), parts[i].begin(), parts[i].end());
    s.boundary_hits += hits[i];
  }
  return s;
}

/// Throws PreconditionError unless the family's visibility criterion applies.
inline void check_predicate_hypothesis(const FamilySpec& spec) {
  switch (spec.family) {
    case Family::A: {
      const auto rep = star_check(*spec.window, TowerReal::omega(RingId::Zsqrt2));
      if (!rep.is_star_shaped_origin || !rep.satisfies_minusW_in_cW)
        throw PreconditionError("quasigap: A-set criterion needs 0 in W and -W inside sqrt2*W");
      break;
    }
    case Family::T: {
      const auto rep = star_check(*spec.window, TowerReal(RingId::Ztau, 0, 2, 0, 0));
      if (!rep.is_star_shaped_origin || !rep.satisfies_minusW_in_cW)
        throw PreconditionError("quasigap: T-set criterion needs 0 in W and -W inside 2tau*W");
      break;
    }
    case Family::P:
      if (!eps_admissible(*spec.eps)) throw PreconditionError("quasigap: P-set criterion needs |eps| < 0.1");
      break;
  }
}

/// Visibility by the arithmetic criteria (hypothesis checked by the caller):
///   A: gcd(x1, x2) = 1 and sigma(x/lambda) not in W
///   T: gcd(x1, x2) = 1 and sigma(x/tau) not in W
///   P: gcd(x1, x2) = 1, x/tau and x/tau^2 not in P_eps
inline bool visible_predicate(const PointSet& set, const CycloPoint& x) {
  if (!coprime(x.x1, x.x2)) return false;
  if (set.contains(unit_divide(x, 1))) return false;
  if (set.family() == Family::P && set.contains(unit_divide(x, 2))) return false;
  return true;
}

/// Quotients c > 1 such that every invisible x has x/c in the set for some c:
/// optionally all primes in (1, eps) except `excluded`, plus `extras`.
struct OcclusionSet {
  bool include_all_primes = true;
  std::vector<QuadInt> excluded;
  std::vector<FieldFraction> extras;

  bool is_excluded(const QuadInt& pi) const {
    const QuadInt rep = prime_representative(pi);
    return std::any_of(excluded.begin(), excluded.end(), [&](const QuadInt& e) { return prime_representative(e) == rep; });
  }

  /// Extras followed by the admitted primes with |N| <= prime_norm_bound.
  std::vector<FieldFraction> quotients(RingId r, std::int64_t prime_norm_bound) const {
    std::vector<FieldFraction> out = extras;
    if (include_all_primes && prime_norm_bound >= 2)
      for (const auto& p : enum_primes(r, prime_norm_bound))
        if (!is_excluded(p)) out.push_back(make_fraction(p));
    return out;
  }
};

inline FieldFraction unit_fraction(RingId r, int k) {
  return k >= 0 ? make_fraction(unit_power(r, k)) : reduce_fraction(QuadInt{r, 1, 0}, unit_power(r, -k));
}

/// P union {lambda}.
inline OcclusionSet occlusion_A() { return {true, {}, {unit_fraction(RingId::Zsqrt2, 1)}}; }
/// P union {tau}.
inline OcclusionSet occlusion_T() { return {true, {}, {unit_fraction(RingId::Ztau, 1)}}; }
/// (P minus {3 - tau}) union {tau, tau^2}.
inline OcclusionSet occlusion_P() {
  const RingId r = RingId::Ztau;
  return {true, {QuadInt{r, 3, -1}}, {unit_fraction(r, 1), unit_fraction(r, 2)}};
}
/// (P minus {sqrt2}) union M for the octagon translated by 457 - 323 sqrt2:
/// M = {2, l, l^2, s, s l, s l^2, l/s, l^2/s} with l = lambda, s = sqrt2.
inline OcclusionSet occlusion_octagon_translate() {
  const RingId r = RingId::Zsqrt2;
  const QuadInt s = QuadInt::omega(r), l = QuadInt::fundamental_unit(r), l2 = l * l, two{r, 2, 0};
  return {true,
          {s},
          {make_fraction(two), make_fraction(l), make_fraction(l2), make_fraction(s), make_fraction(s * l), make_fraction(s * l2),
           reduce_fraction(l, s), reduce_fraction(l2, s)}};
}

inline Window octagon_translate() {
  const RingId r = RingId::Zsqrt2;
  Window w = translate(make_octagon_AB(), {TowerReal(r, 457, -323, 0, 0), TowerReal(r)});
  w.set_label("octagon_ab_457");
  return w;
}

/// Visibility through an occlusion set: x is invisible iff x/c is in the set for some c in C.
inline bool visible_by_occlusion(const PointSet& set, const OcclusionSet& occ, const CycloPoint& x) {
  if (x.is_zero()) return false;
  for (const auto& c : occ.extras) {
    const auto y = try_divide(x, c);
    if (y && set.contains(*y)) return false;
  }
  if (occ.include_all_primes) {
    const QuadInt g = detail::gcd_raw(x.x1, x.x2);
    if (!is_unit(g))
      for (const auto& pi : prime_divisors(g)) {
        if (occ.is_excluded(pi)) continue;
        const auto y = try_divide(x, pi);
        if (y && set.contains(*y)) return false;
      }
  }
  return true;
}

namespace detail {

template <class Pred>
std::vector<std::uint8_t> map_points(const PointSample& s, unsigned threads, Pred&& pred) {
  std::vector<std::uint8_t> out(s.size(), 0);
  const std::size_t chunk = 1 << 14;
  const std::size_t n = (s.size() + chunk - 1) / chunk;
  parallel_chunks(n, resolve_threads(threads), [&](std::size_t ci) {
    for (std::size_t i = ci * chunk; i < std::min(s.size(), (ci + 1) * chunk); ++i) out[i] = pred(s.point(i)) ? 1 : 0;
  });
  return out;
}

}  // namespace detail

/// Fills sample.visible with the family criterion; throws PreconditionError outside its hypothesis.
inline void classify_visibility(PointSample& s, unsigned threads = 0) {
  check_predicate_hypothesis(s.spec);
  const PointSet set(s.spec);
  s.visible = detail::map_points(s, threads, [&](const CycloPoint& x) { return !x.is_zero() && visible_predicate(set, x); });
}

inline void classify_visibility(PointSample& s, const OcclusionSet& occ, unsigned threads = 0) {
  const PointSet set(s.spec);
  s.visible = detail::map_points(s, threads, [&](const CycloPoint& x) { return visible_by_occlusion(set, occ, x); });
}

/// Exact angular order of nonzero points: half-plane first, then the cross sign.
/// A double atan2 key settles all but near ties.
struct AngleKey {
  double angle;
  std::uint32_t index;
};

inline int half_plane(const CycloPoint& p) {
  // 0 for angles in [0, pi), 1 for [pi, 2 pi)
  const int sy = sign(p.x2);
  if (sy > 0) return 0;
  if (sy < 0) return 1;
  return sign(p.x1) > 0 ? 0 : 1;
}

/// -1, 0, 1 comparing the directions of u and v, angles measured in [0, 2 pi).
inline int compare_direction(const CycloPoint& u, const CycloPoint& v) {
  const int hu = half_plane(u), hv = half_plane(v);
  if (hu != hv) return hu < hv ? -1 : 1;
  return -cross_sign(u, v);
}

/// Indices of the nonzero points sorted by direction (angle in [0, 2 pi)), ties by index.
inline std::vector<std::uint32_t> angular_order(const PointSample& s, const std::vector<std::uint32_t>& subset) {
  std::vector<AngleKey> keys;
  keys.reserve(subset.size());
  for (auto i : subset) {
    const CycloPoint p = s.point(i);
    if (p.is_zero()) continue;
    double a = std::atan2(physical_im(p), physical_re(p));
    if (a < 0) a += 2 * M_PI;
    keys.push_back({a, i});
  }
  std::sort(keys.begin(), keys.end(), [&](const AngleKey& x, const AngleKey& y) {
    if (std::fabs(x.angle - y.angle) > 1e-9) {
      // near 0 and 2 pi the double key may wrap; the exact path handles that band
      if (!(x.angle < 1e-9 || y.angle < 1e-9 || x.angle > 2 * M_PI - 1e-9 || y.angle > 2 * M_PI - 1e-9))
        return x.angle < y.angle;
    }
    const int c = compare_direction(s.point(x.index), s.point(y.index));
    if (c != 0) return c < 0;
    return x.index < y.index;
  });
  std::vector<std::uint32_t> out;
  out.reserve(keys.size());
  for (auto& k : keys) out.push_back(k.index);
  return out;
}

/// Brute-force visibility: per exact ray keep the point of least modulus.
inline std::vector<std::uint8_t> oracle_visible(const PointSample& s) {
  std::vector<std::uint32_t> all(s.size());
  for (std::uint32_t i = 0; i < all.size(); ++i) all[i] = i;
  const auto order = angular_order(s, all);
  std::vector<std::uint8_t> vis(s.size(), 0);
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i + 1;
    const CycloPoint first = s.point(order[i]);
    std::uint32_t best = order[i];
    QuadInt best_m = modulus_sq(first);
    while (j < order.size() && compare_direction(first, s.point(order[j])) == 0) {
      const QuadInt m = modulus_sq(s.point(order[j]));
      if (compare(m, best_m) < 0) {
        best_m = m;
        best = order[j];
      }
      ++j;
    }
    vis[best] = 1;
    i = j;
  }
  return vis;
}

/// sum over finite F in C of (-1)^#F #(P_* cap bigcap_{c in F} c P_* cap B_T).
///
/// C is made finite by keeping only primes that divide gcd(x1, x2) for some
/// sampled x; larger primes leave every intersection empty.
inline std::int64_t count_inclusion_exclusion(const FamilySpec& spec, double T, const OcclusionSet& occ, unsigned threads = 0) {
  const PointSample s = generate(spec, T, {threads});
  const PointSet set(spec);
  std::vector<CycloPoint> pts;
  pts.reserve(s.size());
  std::int64_t max_gcd_norm = 1;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const CycloPoint x = s.point(i);
    if (x.is_zero()) continue;
    pts.push_back(x);
    max_gcd_norm = std::max<std::int64_t>(max_gcd_norm, std::llabs(norm(detail::gcd_raw(x.x1, x.x2))));
  }
  const std::vector<FieldFraction> C = occ.quotients(ring_of(spec.id()), max_gcd_norm);

  std::int64_t total = 0;
  std::function<void(const std::vector<CycloPoint>&, std::size_t, int)> rec = [&](const std::vector<CycloPoint>& cur, std::size_t start,
                                                                                  int sgn_) {
    total += sgn_ * static_cast<std::int64_t>(cur.size());
    for (std::size_t k = start; k < C.size(); ++k) {
      std::vector<CycloPoint> next;
      for (const auto& x : cur) {
        const auto y = try_divide(x, C[k]);
        if (y && !y->is_zero() && set.contains(*y)) next.push_back(x);
      }
      if (!next.empty()) rec(next, k + 1, -sgn_);
    }
  };
  rec(pts, 0, 1);
  return total;
}

}  // namespace quasigap
