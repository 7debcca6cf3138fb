#include <cmath>
#include <cstdio>
#include <random>

#include "doctest.h"
#include "scwig/errors.hpp"
#include "scwig/polynomial.hpp"
#include "scwig/quantum_oracle.hpp"

using namespace scwig;
using namespace scwig::oracle;

namespace {
Eigenpairs harmonic_eigs(const Grid& g, double hbar, int count) {
  return solve_eigenstates([](double x) { return 0.5 * x * x; }, g, hbar, count);
}
}  // namespace

TEST_SUITE("quantum_oracle") {

TEST_CASE("harmonic spectrum hbar (n + 1/2)") {
  const Grid g = Grid::make(256, 10.0);
  const auto e = harmonic_eigs(g, 1.0, 12);
  for (int n = 0; n < 12; ++n) CHECK(e.energies[n] == doctest::Approx(n + 0.5).epsilon(1e-10));
  CHECK(e.max_residual < 1e-8);
}

TEST_CASE("ground-state Wigner function is the Gaussian exp(-2H/hbar) / (pi hbar)") {
  const double hbar = 0.5;
  const Grid g = Grid::make(128, 6.0);
  const auto e = harmonic_eigs(g, hbar, 1);
  const WignerGrid w = weyl_transform(DensityGrid::pure(g, hbar, e.vectors.col(0)));
  CHECK(w.integral() == doctest::Approx(1.0).epsilon(1e-10));
  for (int s : {120, 127, 140})
    for (int j : {50, 64, 70}) {
      const double p = w.momentum(j), q = w.centre(s);
      CHECK(w.values(s, j) == doctest::Approx(std::exp(-(p * p + q * q) / hbar) / (M_PI * hbar)).epsilon(1e-8));
    }
}

TEST_CASE("excited-state Wigner function against the Laguerre form") {
  const double hbar = 1.0;
  const int n = 6;
  const Grid g = Grid::make(256, 14.0);
  const auto e = harmonic_eigs(g, hbar, n + 1);
  const WignerGrid w = weyl_transform(DensityGrid::pure(g, hbar, e.vectors.col(n)));
  double worst = 0.0;
  for (long s = 0; s < w.values.rows(); s += 17)
    for (long j = 0; j < w.values.cols(); j += 13) {
      const double p = w.momentum(int(j)), q = w.centre(int(s));
      const double h = 0.5 * (p * p + q * q);
      const double exact = (n % 2 ? -1 : 1) / (M_PI * hbar) * std::exp(-2 * h / hbar) * std::laguerre(n, 4 * h / hbar);
      worst = std::max(worst, std::abs(w.values(s, j) - exact));
    }
  CHECK(worst < 1e-8);
}

TEST_CASE("Weyl round trip and Parseval on a random hermitian matrix") {
  const Grid g = Grid::make(64, 4.0);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd;
  CMatrix m(g.n, g.n), k(g.n, g.n);
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) {
      m(i, j) = {nd(rng), nd(rng)};
      k(i, j) = {nd(rng), nd(rng)};
    }
  const DensityGrid a{g, 0.4, (m + m.adjoint()) * 0.5};
  const DensityGrid b{g, 0.4, (k + k.adjoint()) * 0.5};
  const WignerGrid wa = weyl_transform(a, Exec::parallel, false);
  const WignerGrid wb = weyl_transform(b, Exec::parallel, false);
  CHECK((inverse_weyl(wa).rho - a.rho).cwiseAbs().maxCoeff() < 1e-8 * a.rho.cwiseAbs().maxCoeff());
  const double tr = (a.discrete() * b.discrete()).trace().real();
  CHECK(overlap(wa, wb) == doctest::Approx(tr).epsilon(1e-6));
}

TEST_CASE("odd grids are rejected by the Wigner transform") {
  const Grid g = Grid::make(33, 4.0);
  CHECK_THROWS(weyl_transform(DensityGrid{g, 1.0, CMatrix::Identity(33, 33)}));
}

TEST_CASE("star product: idempotent pure state and identity") {
  const double hbar = 0.2;
  const Grid g = Grid::make(96, 5.0);
  const auto e = harmonic_eigs(g, hbar, 3);
  const SymbolGrid s = SymbolGrid::from_wigner(weyl_transform(DensityGrid::pure(g, hbar, e.vectors.col(2))));
  CHECK(moyal_star(s, s).max_difference(s) < 1e-10);
  CHECK(moyal_star(identity_symbol(g, hbar), s).max_difference(s) < 1e-10);
  CHECK(moyal_star(s, s, Exec::serial).values == moyal_star(s, s, Exec::parallel).values);
}

TEST_CASE("polynomial symbols: canonical commutator and associativity") {
  const double hbar = 0.05;
  const auto q = PolynomialSymbol::q(), p = PolynomialSymbol::p();
  CHECK((moyal_product(q, p, hbar) - moyal_product(p, q, hbar)).distance(PolynomialSymbol::constant({0, hbar})) < 1e-15);
  PolynomialSymbol a = p * p + q * q * q;
  PolynomialSymbol b = q * p + p;
  PolynomialSymbol c = q * q;
  const auto left = moyal_product(moyal_product(a, b, hbar), c, hbar);
  const auto right = moyal_product(a, moyal_product(b, c, hbar), hbar);
  CHECK(left.distance(right) < 1e-12);
}

TEST_CASE("Weyl quantization of q p is the symmetrized product") {
  const double hbar = 0.3;
  const Grid g = Grid::make(64, 5.0);
  const CMatrix x = position_matrix(g), pm = momentum_matrix(g, hbar);
  const CMatrix qp = weyl_quantize(PolynomialSymbol::q() * PolynomialSymbol::p(), g, hbar);
  CHECK((qp - 0.5 * (x * pm + pm * x)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("Lindblad dephasing of a cat state is exact") {
  const double hbar = 0.05;
  const Grid g = Grid::make(256, 6.0);
  const auto e = harmonic_eigs(g, hbar, 64);
  CVector cat = coherent_state(g, hbar, {0, 1}) + coherent_state(g, hbar, {0, -1});
  cat /= cat.norm();
  TruncatedState st = TruncatedState::from_grid(DensityGrid::pure(g, hbar, cat), e, 64);
  const CMatrix l = st.project(position_matrix(g));
  const std::complex<double> before = element_at(st, 1.0, -1.0);
  LindbladOptions o;
  o.dt = 5e-4;
  const TruncatedState after = lindblad_integrate(st, CMatrix::Zero(64, 64), {l}, 0.02, o);
  CHECK(std::abs(element_at(after, 1.0, -1.0)) / std::abs(before) == doctest::Approx(std::exp(-40.0 * 0.02)).epsilon(1e-4));
  CHECK(after.trace() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("energy variance grows at hbar <p^2> for L = q") {
  const double hbar = 0.05;
  const Grid g = Grid::make(256, 6.0);
  const auto e = harmonic_eigs(g, hbar, 48);
  TruncatedState st = TruncatedState::from_grid(DensityGrid::pure(g, hbar, e.vectors.col(5)), e, 48);
  const CMatrix h = e.energies.cast<std::complex<double>>().asDiagonal();
  const CMatrix l = st.project(position_matrix(g));
  const double t = 1e-3;
  const TruncatedState after = lindblad_integrate(st, h, {l}, t, {});
  // <p^2> = E_5 = 5.5 hbar for the eigenstate.
  CHECK((energy_variance(after) - energy_variance(st)) / t == doctest::Approx(hbar * 5.5 * hbar).epsilon(1e-2));
}

TEST_CASE("momentum sign projectors partition the grid momenta") {
  const Grid g = Grid::make(32, 3.0);
  const CMatrix pp = momentum_sign_projector(g, +1), pm = momentum_sign_projector(g, -1);
  CHECK((pp * pp - pp).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((pp * pm).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((pp - pp.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((pp + pm).trace().real() == doctest::Approx(31.0));  // zero mode excluded
}

TEST_CASE("checkpoint round trip") {
  const Grid g = Grid::make(64, 5.0);
  const auto e = harmonic_eigs(g, 0.5, 8);
  const TruncatedState st = TruncatedState::from_grid(DensityGrid::pure(g, 0.5, e.vectors.col(2)), e, 8);
  const std::string path = "scwig_checkpoint_test.bin";
  write_checkpoint(path, st);
  const TruncatedState back = read_checkpoint(path);
  std::remove(path.c_str());
  CHECK(back.hbar == st.hbar);
  CHECK(back.grid.n == st.grid.n);
  CHECK((back.rho - st.rho).cwiseAbs().maxCoeff() == 0.0);
  CHECK((back.basis - st.basis).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("non-separable systems need their polynomial symbol") {
  const PolynomialSymbol sym = PolynomialSymbol::p() * PolynomialSymbol::q() * PolynomialSymbol::q();
  const HamiltonianSystem mixed = HamiltonianSystem::polynomial(sym);
  const Grid g = Grid::make(32, 3.0);
  CHECK_THROWS_AS(hamiltonian_matrix(mixed, g, 0.1, nullptr), ConfigError);
  const CMatrix h = hamiltonian_matrix(mixed, g, 0.1, &sym);
  CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
}

}
