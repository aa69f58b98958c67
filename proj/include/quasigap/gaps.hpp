#pragma once

// Angular gaps between visible points.
//
// Visible points of B_T sorted by xi = arg(x)/2pi in (-1/2, 1/2]; the normalized
// gaps are d_i = N (xi_i - xi_{i-1}), i = 1..N, with xi_0 = xi_N - 1.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "quasigap/cyclo.hpp"
#include "quasigap/density.hpp"
#include "quasigap/geometry.hpp"
#include "quasigap/qfield.hpp"
#include "quasigap/quasicrystal.hpp"

namespace quasigap {

struct GapSeries {
  double T = 0;
  std::size_t N_hat = 0;
  std::vector<double> xi;
  std::vector<double> d;
  double delta_T = 0;
};

struct Histogram {
  double lo = 0, hi = 3, bin_width = 0.02;
  std::vector<double> mass;  // per bin, normalized by the number of gaps
  double overflow = 0;       // mass outside [lo, hi)

  double bin_left(std::size_t i) const { return lo + static_cast<double>(i) * bin_width; }
};

struct MinGapResult {
  double m_hat = 0;
  int exponent = 0;
  double T_functional = 0;  // T_W, or max T_{j1,j2} for P
  double bound = 0;         // 2 sqrt2 T_W, or (4 tau / rho) max T_{j1,j2}
  double theta_visible_used = 0;
};

namespace detail {

inline double xi_of(const CycloPoint& p) { return std::atan2(physical_im(p), physical_re(p)) / (2 * M_PI); }

// lower half plane strictly, i.e. arg in (-pi, 0)
inline bool lower_open(const CycloPoint& p) { return sign(p.x2) < 0; }

}  // namespace detail

/// Visible indices in exact angular order over (-pi, pi].
inline std::vector<std::uint32_t> visible_in_xi_order(const PointSample& s) {
  if (!s.has_visibility()) throw std::invalid_argument("quasigap: sample has no visibility flags");
  std::vector<std::uint32_t> vis;
  for (std::uint32_t i = 0; i < s.size(); ++i)
    if (s.visible[i]) vis.push_back(i);
  auto ord = angular_order(s, vis);
  // angular_order runs over [0, 2pi); move (pi, 2pi) to the front
  const auto it = std::find_if(ord.begin(), ord.end(), [&](std::uint32_t i) { return detail::lower_open(s.point(i)); });
  std::rotate(ord.begin(), it, ord.end());
  return ord;
}

inline GapSeries gap_series(const PointSample& s) {
  const auto ord = visible_in_xi_order(s);
  if (ord.size() < 2) throw std::invalid_argument("quasigap: need at least two visible points");
  GapSeries g;
  g.T = s.T;
  g.N_hat = ord.size();
  g.xi.reserve(ord.size());
  for (auto i : ord) g.xi.push_back(detail::xi_of(s.point(i)));
  const double n = static_cast<double>(g.N_hat);
  g.d.resize(g.N_hat);
  g.d[0] = n * (g.xi[0] - (g.xi.back() - 1.0));
  for (std::size_t i = 1; i < g.N_hat; ++i) g.d[i] = n * (g.xi[i] - g.xi[i - 1]);
  g.delta_T = *std::min_element(g.d.begin(), g.d.end());
  return g;
}

/// Gap statistics from explicit directions, for toy inputs and rotations.
inline GapSeries gap_series_from_xi(std::vector<double> xi, double T = 0) {
  if (xi.size() < 2) throw std::invalid_argument("quasigap: need at least two directions");
  std::sort(xi.begin(), xi.end());
  GapSeries g;
  g.T = T;
  g.N_hat = xi.size();
  g.xi = std::move(xi);
  const double n = static_cast<double>(g.N_hat);
  g.d.resize(g.N_hat);
  g.d[0] = n * (g.xi[0] - (g.xi.back() - 1.0));
  for (std::size_t i = 1; i < g.N_hat; ++i) g.d[i] = n * (g.xi[i] - g.xi[i - 1]);
  g.delta_T = *std::min_element(g.d.begin(), g.d.end());
  return g;
}

/// (T, delta_T) for every T in the increasing list, from one sample at max T with visibility set.
inline std::vector<std::pair<double, double>> delta_series(const PointSample& s, const std::vector<double>& Ts) {
  if (Ts.empty()) return {};
  if (!std::is_sorted(Ts.begin(), Ts.end())) throw std::invalid_argument("quasigap: T list must be increasing");
  if (Ts.back() > s.T) throw std::invalid_argument("quasigap: sample radius below the largest T");
  const auto ord = visible_in_xi_order(s);
  std::vector<double> xi(ord.size());
  std::vector<QuadInt> m2(ord.size());
  for (std::size_t k = 0; k < ord.size(); ++k) {
    const CycloPoint p = s.point(ord[k]);
    xi[k] = detail::xi_of(p);
    m2[k] = modulus_sq(p);
  }
  std::vector<std::pair<double, double>> out;
  out.reserve(Ts.size());
  for (double T : Ts) {
    const RadiusBound rb(T);
    std::size_t n = 0;
    double first = 0, prev = 0, mind = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < ord.size(); ++k) {
      if (!rb.within(m2[k])) continue;
      if (n == 0)
        first = xi[k];
      else
        mind = std::min(mind, xi[k] - prev);
      prev = xi[k];
      ++n;
    }
    if (n < 2) throw std::invalid_argument("quasigap: need at least two visible points");
    mind = std::min(mind, first - (prev - 1.0));
    out.emplace_back(T, static_cast<double>(n) * mind);
  }
  return out;
}

/// Generates at max T, classifies with the family criterion (or `occ` when given) and filters per T.
inline std::vector<std::pair<double, double>> delta_series(const FamilySpec& spec, const std::vector<double>& Ts, unsigned threads = 0,
                                                           const std::optional<OcclusionSet>& occ = std::nullopt) {
  if (Ts.empty()) return {};
  PointSample s = generate(spec, *std::max_element(Ts.begin(), Ts.end()), {threads});
  if (occ)
    classify_visibility(s, *occ, threads);
  else
    classify_visibility(s, threads);
  return delta_series(s, Ts);
}

inline Histogram histogram(const GapSeries& g, double bin_width = 0.02, double lo = 0.0, double hi = 3.0) {
  if (!(bin_width > 0) || !(hi > lo)) throw std::invalid_argument("quasigap: bad histogram range");
  Histogram h;
  h.lo = lo;
  h.hi = hi;
  h.bin_width = bin_width;
  const std::size_t nb = static_cast<std::size_t>(std::ceil((hi - lo) / bin_width - 1e-9));
  h.mass.assign(nb, 0.0);
  if (g.d.empty()) return h;
  const double w = 1.0 / static_cast<double>(g.d.size());
  for (double v : g.d) {
    if (v < lo || v >= hi) {
      h.overflow += w;
      continue;
    }
    const std::size_t b = std::min(nb - 1, static_cast<std::size_t>((v - lo) / bin_width));
    h.mass[b] += w;
  }
  return h;
}

namespace detail {

inline double z2_middle(double s) { return 6.0 / (M_PI * M_PI * s * s) * std::log(M_PI * M_PI * s / 3.0); }

// the radicand is clamped: at s = 12/pi^2 rounding can push it a hair below 0
inline double z2_outer(double s) {
  const double pi2 = M_PI * M_PI;
  return 12.0 / (pi2 * s * s) * std::log(2.0 / (1.0 + std::sqrt(std::max(0.0, 1.0 - 12.0 / (pi2 * s)))));
}

}  // namespace detail

/// -F'(s) for the limiting gap law of the visible points of Z^2.
inline double z2_limit_density(double s) {
  if (s < 0 || std::isnan(s)) throw std::invalid_argument("quasigap: s must be nonnegative");
  const double pi2 = M_PI * M_PI;
  if (s <= 3.0 / pi2) return 0.0;
  if (s <= 12.0 / pi2) return detail::z2_middle(s);
  return detail::z2_outer(s);
}

/// Largest m with u^m < bound (u the fundamental unit), checked exactly.
inline int unit_exponent_below(RingId r, const TowerReal& bound) {
  if (bound.sign() <= 0) throw std::invalid_argument("quasigap: bound must be positive");
  auto upow = [&](int k) { return TowerReal::from_quad(unit_power(r, k)); };
  int m = static_cast<int>(std::floor(std::log(bound.to_double()) / std::log(QuadInt::fundamental_unit(r).to_double())));
  while (compare(upow(m), bound) >= 0) --m;
  while (compare(upow(m + 1), bound) < 0) ++m;
  return m;
}

/// Minimal gap of the visible A-set; theta_hat defaults to the closed form for W in W_1.
inline MinGapResult min_gap_A(const Window& w, std::optional<double> theta_hat = std::nullopt) {
  const RingId r = RingId::Zsqrt2;
  if (w.ring() != r) throw std::invalid_argument("quasigap: A-set windows live over Z[sqrt2]");
  if (w.boundary() != Boundary::Open) throw PreconditionError("quasigap: the minimal gap formula needs an open window");
  if (contains(w, {TowerReal(r), TowerReal(r)}) != Location::Inside) throw PreconditionError("quasigap: window must contain the origin");
  MinGapResult res;
  res.theta_visible_used = theta_hat ? *theta_hat : density_visible_A(w).theta_visible;
  const TowerReal tw = sup_triangle_area(w, w);
  const TowerReal bound = TowerReal(r, 0, 2, 0, 0) * tw;  // 2 sqrt2 T_W
  res.T_functional = tw.to_double();
  res.bound = bound.to_double();
  res.exponent = unit_exponent_below(r, bound);
  res.m_hat = std::pow(QuadInt::fundamental_unit(r).to_double(), -res.exponent) * res.theta_visible_used / (2.0 * std::sqrt(2.0));
  return res;
}

/// max over j1, j2 in {2, 3} of T_{W_j1, W_j2}.
inline TowerReal penrose_T_max(const Vec2& eps) {
  const auto ws = penrose_windows(eps);
  TowerReal best(RingId::Ztau);
  for (std::size_t j1 : {1u, 2u})
    for (std::size_t j2 : {1u, 2u}) {
      const TowerReal t = sup_triangle_area(ws[j1], ws[j2]);
      if (compare(t, best) > 0) best = t;
    }
  return best;
}

inline MinGapResult min_gap_P(const Vec2& eps) {
  if (!eps_admissible(eps)) throw PreconditionError("quasigap: P-set minimal gap needs |eps| < 0.1");
  const RingId r = RingId::Ztau;
  MinGapResult res;
  res.theta_visible_used = density_visible_P(eps).theta_visible;
  const TowerReal tmax = penrose_T_max(eps);
  const TowerReal bound = TowerReal(r, 0, 4, 0, 0) * TowerReal::rho(r).inverse() * tmax;
  res.T_functional = tmax.to_double();
  res.bound = bound.to_double();
  res.exponent = unit_exponent_below(r, bound);
  res.m_hat = std::pow(ring_traits(r).omega, -res.exponent) * rho_double(r) * res.theta_visible_used / 4.0;
  return res;
}

}  // namespace quasigap
