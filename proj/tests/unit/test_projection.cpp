#include <cmath>

#include "doctest.h"
#include "scwig/projection.hpp"
#include "scwig/quantum_oracle.hpp"

using namespace scwig;

TEST_SUITE("projection") {

TEST_CASE("harmonic WKB branches") {
  const ShellSpec shell = build_shell(HamiltonianSystem::harmonic(), 0.5);
  const auto b = wkb_branches(0.3, shell);
  REQUIRE(b.size() == 2);
  const double p = std::sqrt(1.0 - 0.09);
  CHECK(b[0].p == doctest::Approx(p).epsilon(1e-9));
  CHECK(b[1].p == doctest::Approx(-p).epsilon(1e-9));
  CHECK(b[0].amplitude == doctest::Approx(1.0 / std::sqrt(2 * M_PI * p)).epsilon(1e-8));
  CHECK(wkb_branches(1.2, shell).empty());
}

TEST_CASE("t = 0 density matrix matches the exact eigenstate") {
  const double hbar = 0.05;
  const int n = 10;
  const auto sys = HamiltonianSystem::harmonic();
  const double e = hbar * (n + 0.5);
  const ShellSpec shell = build_shell(sys, e);
  using namespace oracle;
  const Grid g = Grid::make(512, auto_half_width(sys, e));
  const auto eig = solve_eigenstates([](double x) { return 0.5 * x * x; }, g, hbar, n + 1);
  const CVector psi = eig.vectors.col(n) / std::sqrt(g.dq);
  auto node = [&](double q) { return static_cast<int>(std::lround((q + g.half_width) / g.dq)); };
  double peak = 0.0;
  for (int a = 0; a < g.n; ++a) peak = std::max(peak, std::norm(psi[a]));
  const std::vector<LindbladChannel> none;
  for (double qp : {-0.6, -0.2, 0.35})
    for (double qm : {-0.45, 0.1, 0.55}) {
      const double x = g.q(node(qp)), y = g.q(node(qm));
      const auto el = density_matrix_sc(x, y, shell, sys, none, 0.0, hbar);
      const std::complex<double> exact = psi[node(qp)] * std::conj(psi[node(qm)]);
      CHECK(std::abs(el.value - exact) < 0.06 * peak);
    }
}

TEST_CASE("damping factors lie in (0, 1] and shrink with time") {
  const auto sys = HamiltonianSystem::harmonic();
  const ShellSpec shell = build_shell(sys, 0.5);
  const LindbladChannel q = LindbladChannel::position();
  const auto a = density_matrix_sc(0.4, -0.3, shell, sys, Channels(&q, 1), 0.2, 0.05);
  const auto b = density_matrix_sc(0.4, -0.3, shell, sys, Channels(&q, 1), 0.6, 0.05);
  CHECK(a.damping_min() <= 1.0);
  CHECK(b.damping_min() < a.damping_min());
  for (const auto& t : b.terms) CHECK(t.damping > 0.0);
}

TEST_CASE("Bessel correlation in closed form") {
  const double z = 1.7;
  CHECK(bessel_correlation(z, 1.0, 1.0, 1) == doctest::Approx(std::cos(z)).epsilon(1e-12));
  CHECK(bessel_correlation(z, 1.0, 1.0, 2) == doctest::Approx(std::cyl_bessel_j(0.0, z)).epsilon(1e-12));
  CHECK(bessel_correlation(z, 1.0, 1.0, 3) == doctest::Approx(std::sin(z) / z).epsilon(1e-12));
  CHECK(bessel_correlation(0.0, 1.0, 1.0, 3) == 1.0);
}

TEST_CASE("momentum frame is a canonical rotation") {
  const PhasePoint x{0.3, -0.7}, y{1.1, 0.2};
  CHECK(norm(from_momentum_frame(to_momentum_frame(x)) - x) < 1e-15);
  CHECK(symplectic_form(to_momentum_frame(x), to_momentum_frame(y)) == doctest::Approx(symplectic_form(x, y)));
  const auto sys = momentum_frame_system(HamiltonianSystem::quartic());
  CHECK(sys.energy(to_momentum_frame(x)) == doctest::Approx(HamiltonianSystem::quartic().energy(x)));
}

TEST_CASE("harmonic momentum representation mirrors the position one") {
  const auto sys = HamiltonianSystem::harmonic();
  const std::vector<LindbladChannel> none;
  const auto m = momentum_rep_element(0.3, -0.2, sys, 0.5, none, 0.0, 0.05);
  const auto pq = density_matrix_sc(0.3, -0.2, build_shell(sys, 0.5), sys, none, 0.0, 0.05);
  CHECK(std::abs(std::abs(m.value) - std::abs(pq.value)) < 1e-6 * std::max(1.0, std::abs(pq.value)));
}

}
