// Visible points of the Ammann-Beenker and Penrose vertex sets in a disc:
// counts against the density formulas, then the gap statistics.

#include <cstdio>
#include <iostream>

#include "quasigap/quasigap.hpp"

using namespace quasigap;

namespace {

void summarize(const char* name, const FamilySpec& spec, double theta_hat, double m_hat, double T) {
  PointSample s = generate(spec, T);
  classify_visibility(s);
  const auto emp = empirical_density(s);
  const GapSeries g = gap_series(s);
  const Histogram h = histogram(g, 0.25, 0, 2);

  std::printf("%s, T = %.0f\n", name, T);
  std::printf("  points %zu, visible %zu\n", s.size(), s.visible_count());
  std::printf("  visible density %.5f, formula %.5f\n", emp.theta_visible, theta_hat);
  std::printf("  smallest normalized gap %.5f, limit %.5f\n", g.delta_T, m_hat);
  std::printf("  gap histogram:");
  for (std::size_t i = 0; i < h.mass.size(); ++i) std::printf(" [%.2f,%.2f) %.3f", h.bin_left(i), h.bin_left(i) + h.bin_width, h.mass[i]);
  std::printf("  rest %.3f\n\n", h.overflow);
}

}  // namespace

int main() {
  const Window oct = make_octagon_AB();
  summarize("Ammann-Beenker", FamilySpec::A(oct), density_visible_A(oct).theta_visible, min_gap_A(oct).m_hat, 300);

  const Gamma gamma = gamma_eps0();
  const Vec2 eps = penrose_eps(gamma);
  summarize("Penrose", FamilySpec::P(gamma), density_visible_P(eps).theta_visible, min_gap_P(eps).m_hat, 300);

  // x = 1 + zeta is visible; lambda x sits behind it on the same ray
  const PointSet set(FamilySpec::A(oct));
  const CycloPoint x = CycloPoint::from_coeffs(CycloId::N8, 1, 0, 1, 0);
  const CycloPoint y = QuadInt::fundamental_unit(RingId::Zsqrt2) * x;
  for (const CycloPoint& p : {x, y})
    std::cout << p << ": |p|^2 = " << modulus_sq(p) << ", in set: " << (set.contains(p) ? "yes" : "no")
              << ", visible: " << (visible_predicate(set, p) ? "yes" : "no") << '\n';
}
