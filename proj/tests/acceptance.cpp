// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.
// Usage: acceptance [threads]

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "quasigap/density.hpp"
#include "quasigap/gaps.hpp"

using namespace quasigap;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("criterion %2d: %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char b[512];
  std::snprintf(b, sizeof b, f, args...);
  return b;
}

std::size_t visible_within(const PointSample& s, double T) {
  const RadiusBound rb(T);
  std::size_t n = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s.visible[i] && rb.within(modulus_sq(s.point(i)))) ++n;
  return n;
}

bool near(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

std::string six(double v) { return fmt("%.6f", v); }

}  // namespace

int main(int argc, char** argv) {
  const unsigned threads = argc > 1 ? static_cast<unsigned>(std::atoi(argv[1])) : 0;
  const double m24 = 24 / std::pow(M_PI, 4);

  // 1: visible counts at T = 1000, octagon and translated octagon
  auto t0 = Clock::now();
  PointSample oct = generate(FamilySpec::A(make_octagon_AB()), 1000, {threads});
  classify_visibility(oct, threads);
  PointSample tr = generate(FamilySpec::A(octagon_translate()), 1000, {threads});
  classify_visibility(tr, occlusion_octagon_translate(), threads);
  {
    const std::size_t n = oct.visible_count(), np = tr.visible_count();
    report(1, n == 2189104 && np == 2189393,
           fmt("N_1000=%zu (want 2189104), N'_1000=%zu (want 2189393), boundary hits %zu/%zu, %.1f s", n, np, oct.boundary_hits, tr.boundary_hits,
               since(t0)));
  }

  // 2: Penrose counts and densities at T = 1500, 2000
  t0 = Clock::now();
  PointSample pen = generate(FamilySpec::P(gamma_eps0()), 2000, {threads});
  classify_visibility(pen, threads);
  {
    const std::size_t n15 = visible_within(pen, 1500), n20 = pen.visible_count();
    const double d15 = static_cast<double>(n15) / (M_PI * 1500 * 1500), d20 = static_cast<double>(n20) / (M_PI * 2000 * 2000);
    const bool counts = n15 == 4835583 && n20 == 8599221;
    const bool dens = six(d15) == "0.684095" && six(d20) == "0.684304";
    report(2, counts && dens,
           fmt("N_1500=%zu (want 4835583), N_2000=%zu (want 8599221), densities %s/%s (want 0.684095/0.684304), boundary hits %zu, %.1f s", n15,
               n20, six(d15).c_str(), six(d20).c_str(), pen.boundary_hits, since(t0)));
  }

  // 3: closed forms and the extended sum
  {
    const auto a = density_visible_A(make_octagon_AB());
    const auto w = density_visible_octagon_translate(threads);
    const double c = w.sum;
    const bool ok = near(a.theta_visible, 0.696877, 1e-6) && near(a.fraction, 0.5773, 1e-4) && near(w.theta_visible, 0.697010, 1e-5) &&
                    near(c, 3.00057, 1e-4) && w.terms.size() == 256;
    report(3, ok,
           fmt("theta_hat=%.9f fraction=%.6f; translated: theta_hat=%.9f c=%.7f over %zu subsets", a.theta_visible, a.fraction, w.theta_visible, c,
               w.terms.size()));
  }

  // 4: Penrose closed form
  {
    const auto p = density_visible_P(penrose_eps(gamma_eps0()));
    report(4, near(p.theta_visible, 0.684307, 1e-5), fmt("theta_hat=%.9f (want 0.684307 +- 1e-5)", p.theta_visible));
  }

  // 5: minimal gaps with certified exponents
  {
    const MinGapResult a = min_gap_A(make_octagon_AB());
    const MinGapResult p = min_gap_P(penrose_eps(gamma_eps0()));
    const bool ok_a = near(a.m_hat, m24, 1e-9) && a.exponent == 0;
    const bool ok_p = near(p.m_hat, 0.07681, 1e-4) && near(p.T_functional, 1.2554, 1e-3) && near(p.bound, 4.2718, 1e-3) && p.exponent == 3;
    report(5, ok_a && ok_p,
           fmt("m_A=%.10f (24/pi^4=%.10f) exp %d; m_P=%.8f T_max=%.6f bound=%.6f exp %d", a.m_hat, m24, a.exponent, p.m_hat, p.T_functional, p.bound,
               p.exponent));
  }

  // 6: octant count, 0 <= y <= x means both coordinates in the basis 1, zeta are >= 0
  {
    const RadiusBound rb(700);
    std::size_t n = 0;
    for (std::size_t i = 0; i < oct.size(); ++i) {
      if (!oct.visible[i]) continue;
      const CycloPoint x = oct.point(i);
      if (sign(x.x1) >= 0 && sign(x.x2) >= 0 && rb.within(modulus_sq(x))) ++n;
    }
    report(6, n == 134091, fmt("visible octant points in B_700: %zu (want 134091)", n));
  }

  // 7: predicate against the ray oracle on B_50
  {
    std::string detail;
    bool ok = true;
    for (const auto& spec : {FamilySpec::A(make_octagon_AB()), FamilySpec::T(make_decagon_T()), FamilySpec::P(gamma_eps0())}) {
      PointSample s = generate(spec, 50, {threads});
      classify_visibility(s, threads);
      const auto o = oracle_visible(s);
      std::size_t mism = 0;
      for (std::size_t i = 0; i < s.size(); ++i) mism += s.visible[i] != o[i];
      ok = ok && mism == 0;
      detail += fmt("%s: %zu/%zu mismatches; ", spec.label.c_str(), mism, s.size());
    }
    report(7, ok, detail);
  }

  // 8: inclusion-exclusion against the direct count at T = 200
  {
    PointSample a = generate(FamilySpec::A(make_octagon_AB()), 200, {threads});
    classify_visibility(a, threads);
    PointSample p = generate(FamilySpec::P(gamma_eps0()), 200, {threads});
    classify_visibility(p, threads);
    const auto ia = count_inclusion_exclusion(FamilySpec::A(make_octagon_AB()), 200, occlusion_A(), threads);
    const auto ip = count_inclusion_exclusion(FamilySpec::P(gamma_eps0()), 200, occlusion_P(), threads);
    report(8, ia == static_cast<std::int64_t>(a.visible_count()) && ip == static_cast<std::int64_t>(p.visible_count()),
           fmt("A: %lld vs %zu; P: %lld vs %zu", static_cast<long long>(ia), a.visible_count(), static_cast<long long>(ip), p.visible_count()));
  }

  // 9: Z^2 baseline and the limiting gap law
  {
    const ZdResult z = zd_visible(2, 2000, threads);
    const double rel = std::fabs(z.empirical / (6 / (M_PI * M_PI)) - 1);
    const double b = 12 / (M_PI * M_PI);
    const double jump = std::fabs(detail::z2_middle(b) - detail::z2_outer(b));
    const double inner = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(z2_limit_density, 3 / (M_PI * M_PI), b, 8, 1e-13);
    auto g = [b](double u) {
      if (u <= 0 || u >= 1) return 0.0;
      const double s = b / (1 - u * u);
      return z2_limit_density(s) * 2 * b * u / ((1 - u * u) * (1 - u * u));
    };
    const double total = inner + boost::math::quadrature::tanh_sinh<double>().integrate(g, 0.0, 1.0);
    report(9, rel <= 0.005 && jump <= 1e-12 && near(total, 1, 1e-4),
           fmt("visible fraction %.7f vs 6/pi^2 (rel %.2e); branch jump %.1e; integral %.10f", z.empirical, rel, jump, total));
  }

  // 10: delta series for the octagon
  {
    std::vector<double> Ts;
    for (int T = 50; T <= 700; T += 10) Ts.push_back(T);
    const auto ser = delta_series(oct, Ts);
    const double lam = 1 + std::sqrt(2.0);
    bool ok = true;
    double lo = 1e9, lo_late = 1e9, hi_late = 0;
    for (const auto& [T, d] : ser) {
      lo = std::min(lo, d);
      ok = ok && d >= 0.9 * m24;
      if (T >= 500) {
        lo_late = std::min(lo_late, d);
        hi_late = std::max(hi_late, d);
        ok = ok && d >= m24 - 0.01 && d <= lam * m24 + 0.01;
      }
    }
    report(10, ok, fmt("%zu radii: min delta %.6f (floor %.6f); T>=500 range [%.6f, %.6f] within [%.6f, %.6f]", ser.size(), lo, 0.9 * m24, lo_late,
                       hi_late, m24 - 0.01, lam * m24 + 0.01));
  }

  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
