#pragma once

// Densities of the point sets and of their visible points.
//
//   theta(A_W) = vol(W) / covol,  covol of Z[zeta] in C x C (x, sigma(x))
//   A, W in W_1:  theta_hat = 2 |sigma(lambda)| theta / zeta_K(2)
//   A, extended:  theta_hat = sum_{M0 in M} (-1)^#M0 vol(W_M0) / N(Pi_M0)^2
//                             / (4 zeta_K(2) prod_{pi in P} (1 - 1/N(pi)^2))
//   T, W in W_2:  theta_hat = |sigma(tau)| theta / zeta_K(2)
//   P, |eps|<0.1: theta_hat = ((3+tau) vol W1 - vol(W1 cap (W1 + tau eps))) / (3 (tau+2) zeta_K(2))

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/special_functions/zeta.hpp>

#include "quasigap/cyclo.hpp"
#include "quasigap/geometry.hpp"
#include "quasigap/parallel.hpp"
#include "quasigap/qfield.hpp"
#include "quasigap/quasicrystal.hpp"

namespace quasigap {

enum class DensityMethod : std::uint8_t { ClosedForm, ExtendedSum, Empirical };

inline const char* to_string(DensityMethod m) {
  switch (m) {
    case DensityMethod::ClosedForm: return "closed_form";
    case DensityMethod::ExtendedSum: return "extended_sum";
    case DensityMethod::Empirical: return "empirical";
  }
  return "?";
}

/// One subset M0 of the extended sum.
struct SubsetTerm {
  std::uint32_t mask = 0;
  int sign = 1;
  double volume = 0;  // vol(W_M0), 0 when empty
  std::int64_t pi_norm = 1;  // |N(Pi_M0)|
  double contribution = 0;
};

struct DensityReport {
  double theta_total = 0;
  double theta_visible = 0;
  double fraction = 0;
  DensityMethod method = DensityMethod::ClosedForm;
  std::vector<SubsetTerm> terms;
  double sum = 0;  // the subset sum (ExtendedSum only)

  void finish() { fraction = theta_total > 0 ? theta_visible / theta_total : 0; }
};

/// zeta_K(2) for K = Q(sqrt2) or Q(sqrt5).
inline double zeta_k(RingId r) {
  const double pi4 = std::pow(M_PI, 4);
  return r == RingId::Zsqrt2 ? pi4 / (48.0 * std::sqrt(2.0)) : 2.0 * std::sqrt(5.0) * pi4 / 375.0;
}

/// Volume of C^2 / {(x, sigma x) : x in Z[zeta]} from the basis 1, w, zeta, w zeta.
inline double covolume(CycloId id) {
  std::array<std::array<double, 4>, 4> m{};
  const std::array<CycloPoint, 4> basis = {CycloPoint::from_coeffs(id, 1, 0, 0, 0), CycloPoint::from_coeffs(id, 0, 1, 0, 0),
                                           CycloPoint::from_coeffs(id, 0, 0, 1, 0), CycloPoint::from_coeffs(id, 0, 0, 0, 1)};
  for (std::size_t i = 0; i < 4; ++i) {
    const GradedPoint p = graded_physical(basis[i]), s = graded_internal(basis[i]);
    m[i] = {p.x_double(), p.y_double(), s.x_double(), s.y_double()};
  }
  // Gaussian elimination with partial pivoting
  double det = 1;
  for (std::size_t c = 0; c < 4; ++c) {
    std::size_t piv = c;
    for (std::size_t i = c + 1; i < 4; ++i)
      if (std::fabs(m[i][c]) > std::fabs(m[piv][c])) piv = i;
    if (m[piv][c] == 0) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < 4; ++i) {
      const double f = m[i][c] / m[c][c];
      for (std::size_t k = c; k < 4; ++k) m[i][k] -= f * m[c][k];
    }
  }
  return std::fabs(det);
}

inline double density_A(const Window& w) { return area(w).to_double() / covolume(CycloId::N8); }
inline double density_T(const Window& w) { return area(w).to_double() / covolume(CycloId::N5); }

/// Needs W star-shaped with -W inside sqrt2*W.
inline DensityReport density_visible_A(const Window& w) {
  check_predicate_hypothesis(FamilySpec::A(w));
  DensityReport rep;
  rep.theta_total = density_A(w);
  const double sl = std::fabs(conj(QuadInt::fundamental_unit(RingId::Zsqrt2)).to_double());
  rep.theta_visible = 2.0 * sl * rep.theta_total / zeta_k(RingId::Zsqrt2);
  rep.finish();
  return rep;
}

/// Needs W star-shaped with -W inside 2tau*W.
inline DensityReport density_visible_T(const Window& w) {
  check_predicate_hypothesis(FamilySpec::T(w));
  DensityReport rep;
  rep.theta_total = density_T(w);
  const double st = std::fabs(conj(QuadInt::fundamental_unit(RingId::Ztau)).to_double());
  rep.theta_visible = st * rep.theta_total / zeta_k(RingId::Ztau);
  rep.finish();
  return rep;
}

/// sigma(num/den) as an exact real.
inline TowerReal conj_value(const FieldFraction& c) {
  return TowerReal::from_quad(conj(c.num)) * TowerReal::from_quad(conj(c.den)).inverse();
}

/// Extended formula: M is the occlusion set beyond the large primes, P the small primes left out of it.
inline DensityReport density_visible_A_extended(const Window& w, const std::vector<FieldFraction>& M, const std::vector<QuadInt>& P,
                                                unsigned threads = 0) {
  if (w.ring() != RingId::Zsqrt2) throw std::invalid_argument("quasigap: A-set windows live over Z[sqrt2]");
  if (M.size() > 20) throw std::invalid_argument("quasigap: occlusion set too large for the subset sum");
  const StarCheckReport st = star_check(w, TowerReal::omega(RingId::Zsqrt2));
  if (!st.is_star_shaped_origin) throw PreconditionError("quasigap: window must contain the origin");

  std::vector<Window> scaled;
  for (const auto& c : M) scaled.push_back(scale(w, conj_value(c)));

  const std::uint32_t n = 1u << M.size();
  std::vector<SubsetTerm> terms(n);
  parallel_chunks(n, resolve_threads(threads), [&](std::size_t mask) {
    SubsetTerm& t = terms[mask];
    t.mask = static_cast<std::uint32_t>(mask);
    t.sign = (std::popcount(t.mask) % 2) ? -1 : 1;
    std::optional<Window> cur = w;
    QuadInt pi{RingId::Zsqrt2, 1, 0};
    for (std::size_t k = 0; k < M.size(); ++k) {
      if (!(mask >> k & 1)) continue;
      pi = lcm(pi, M[k].num);
      if (cur) cur = intersect_convex(*cur, scaled[k]);
    }
    t.pi_norm = std::llabs(norm(pi));
    t.volume = cur ? area(*cur).to_double() : 0.0;
    t.contribution = t.sign * t.volume / (static_cast<double>(t.pi_norm) * static_cast<double>(t.pi_norm));
  });

  DensityReport rep;
  rep.method = DensityMethod::ExtendedSum;
  rep.theta_total = density_A(w);
  for (const auto& t : terms) rep.sum += t.contribution;
  double euler = 1;
  for (const auto& p : P) {
    const double np = static_cast<double>(norm(p));
    euler *= 1.0 - 1.0 / (np * np);
  }
  rep.theta_visible = rep.sum / (4.0 * zeta_k(RingId::Zsqrt2) * euler);
  rep.terms = std::move(terms);
  rep.finish();
  return rep;
}

/// The worked example: W' = octagon + (457 - 323 sqrt2), P = {sqrt2}.
inline DensityReport density_visible_octagon_translate(unsigned threads = 0) {
  const OcclusionSet occ = occlusion_octagon_translate();
  return density_visible_A_extended(octagon_translate(), occ.extras, occ.excluded, threads);
}

inline double density_P() {
  const double tau = ring_traits(RingId::Ztau).omega;
  return 8.0 * (1.0 + tau * tau) * area(make_pentagon_W1()).to_double() / (25.0 * (2.0 * tau - 1.0));
}

/// vol(W1 cap (W1 + tau eps)), exact.
inline TowerReal penrose_overlap(const Vec2& eps) {
  const RingId r = RingId::Ztau;
  const Window w1 = make_pentagon_W1();
  const auto cap = intersect_convex(w1, translate(w1, TowerReal::omega(r) * eps));
  return cap ? area(*cap) : TowerReal(r);
}

inline DensityReport density_visible_P(const Vec2& eps) {
  if (!eps_admissible(eps)) throw PreconditionError("quasigap: P-set density needs |eps| < 0.1");
  const RingId r = RingId::Ztau;
  const double tau = ring_traits(r).omega;
  const TowerReal v1 = area(make_pentagon_W1());
  const TowerReal num = TowerReal(r, 3, 1, 0, 0) * v1 - penrose_overlap(eps);
  DensityReport rep;
  rep.theta_total = density_P();
  rep.theta_visible = num.to_double() / (3.0 * (tau + 2.0) * zeta_k(r));
  rep.finish();
  return rep;
}

/// Counts over pi T^2 for a sample with visibility filled in.
inline DensityReport empirical_density(const PointSample& s) {
  DensityReport rep;
  rep.method = DensityMethod::Empirical;
  if (s.T <= 0) return rep;
  const double vol = M_PI * s.T * s.T;
  std::size_t nz = 0;
  for (const auto& p : s.points) nz += (p.a | p.b | p.c | p.d) != 0;
  rep.theta_total = static_cast<double>(nz) / vol;
  rep.theta_visible = s.has_visibility() ? static_cast<double>(s.visible_count()) / vol : 0.0;
  rep.finish();
  return rep;
}

struct ZdResult {
  int d = 2;
  double T = 0;
  std::uint64_t total = 0;    // nonzero points of Z^d in B_T
  std::uint64_t visible = 0;  // with gcd 1
  double empirical = 0;
  double limit = 0;  // 1 / zeta(d)
};

/// Visible fraction of Z^d in B_T against 1/zeta(d).
inline ZdResult zd_visible(int d, double T, unsigned threads = 0) {
  if (d < 2 || d > 6) throw std::invalid_argument("quasigap: d must lie in 2..6");
  if (!(T > 0) || !std::isfinite(T)) throw std::invalid_argument("quasigap: radius must be positive and finite");
  const std::int64_t R = static_cast<std::int64_t>(std::floor(T));
  const double t2 = T * T;
  const std::size_t span = static_cast<std::size_t>(2 * R + 1);
  std::vector<std::uint64_t> tot(span, 0), vis(span, 0);
  // x_1 splits the work; the remaining coordinates recurse
  parallel_chunks(span, resolve_threads(threads), [&](std::size_t i) {
    const std::int64_t x1 = static_cast<std::int64_t>(i) - R;
    std::function<void(int, std::int64_t, double)> rec = [&](int left, std::int64_t g, double r2) {
      if (left == 0) {
        if (r2 == 0) return;
        ++tot[i];
        if (g == 1) ++vis[i];
        return;
      }
      const std::int64_t m = static_cast<std::int64_t>(std::floor(std::sqrt(std::max(0.0, t2 - r2))));
      for (std::int64_t x = -m; x <= m; ++x) {
        const double nr = r2 + static_cast<double>(x * x);
        if (nr > t2) continue;
        rec(left - 1, std::gcd(g, std::llabs(x)), nr);
      }
    };
    rec(d - 1, std::llabs(x1), static_cast<double>(x1 * x1));
  });
  ZdResult res;
  res.d = d;
  res.T = T;
  for (std::size_t i = 0; i < span; ++i) {
    res.total += tot[i];
    res.visible += vis[i];
  }
  res.empirical = res.total ? static_cast<double>(res.visible) / static_cast<double>(res.total) : 0.0;
  res.limit = 1.0 / boost::math::zeta(static_cast<double>(d));
  return res;
}

}  // namespace quasigap
