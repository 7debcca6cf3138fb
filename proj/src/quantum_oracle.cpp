#include "scwig/quantum_oracle.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>

#include "json.hpp"
#include "scwig/chord_geometry.hpp"
#include "scwig/errors.hpp"

namespace scwig::oracle {

using cd = std::complex<double>;

Grid Grid::make(int n, double half_width) {
  if (n < 4) throw ConfigError("oracle grid needs at least 4 points");
  if (!(half_width > 0.0)) throw ConfigError("oracle grid half width must be positive");
  return {n, half_width, 2.0 * half_width / (n - 1)};
}

RVector Grid::positions() const {
  RVector x(n);
  for (int i = 0; i < n; ++i) x[i] = q(i);
  return x;
}

double auto_half_width(const HamiltonianSystem& system, double energy) {
  const ShellSpec shell = build_shell(system, energy, 256);
  double r = 0.0;
  for (const auto& x : shell.samples()) r = std::max(r, std::abs(x.q));
  return 6.0 * r;
}

RMatrix derivative_matrix(const Grid& grid) {
  RMatrix d = RMatrix::Zero(grid.n, grid.n);
  for (int a = 0; a < grid.n; ++a)
    for (int b = 0; b < grid.n; ++b)
      if (a != b) d(a, b) = ((a - b) % 2 ? -1.0 : 1.0) / ((a - b) * grid.dq);
  return d;
}

RMatrix kinetic_matrix(const Grid& grid, double hbar) {
  RMatrix t(grid.n, grid.n);
  const double c = hbar * hbar / (2.0 * grid.dq * grid.dq);
  for (int a = 0; a < grid.n; ++a)
    for (int b = 0; b < grid.n; ++b) {
      const int k = a - b;
      t(a, b) = k == 0 ? c * M_PI * M_PI / 3.0 : c * (k % 2 ? -2.0 : 2.0) / (double(k) * k);
    }
  return t;
}

CMatrix momentum_matrix(const Grid& grid, double hbar) {
  return derivative_matrix(grid).cast<cd>() * cd(0.0, -hbar);
}

CMatrix position_matrix(const Grid& grid) {
  return grid.positions().cast<cd>().asDiagonal();
}

CMatrix weyl_quantize(const PolynomialSymbol& symbol, const Grid& grid, double hbar) {
  const int n = grid.n;
  const CMatrix p = momentum_matrix(grid, hbar);
  const RVector q = grid.positions();
  CMatrix out = CMatrix::Zero(n, n);
  for (const auto& [exps, coeff] : symbol.terms()) {
    const auto [pa, qb] = exps;
    CMatrix pm = CMatrix::Identity(n, n);
    if (pa == 2) {
      pm = kinetic_matrix(grid, hbar).cast<cd>() * 2.0;
    } else {
      for (int k = 0; k < pa; ++k) pm = pm * p;
    }
    // Symmetric ordering 2^-b sum_k C(b,k) q^k p^a q^(b-k).
    CMatrix term = CMatrix::Zero(n, n);
    double binom = 1.0;
    for (int k = 0; k <= qb; ++k) {
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          term(a, b) += binom * std::pow(q[a], k) * pm(a, b) * std::pow(q[b], qb - k);
      binom = binom * (qb - k) / (k + 1);
    }
    out += term * (coeff / std::pow(2.0, qb));
  }
  return out;
}

CMatrix hamiltonian_matrix(const HamiltonianSystem& system, const Grid& grid, double hbar,
                           const PolynomialSymbol* symbol) {
  if (symbol) return weyl_quantize(*symbol, grid, hbar);
  if (system.is_zero()) return CMatrix::Zero(grid.n, grid.n);
  // Separable kinetic + potential form, checked on a few probe points.
  for (double p : {-1.3, 0.4, 2.1})
    for (double q : {-0.7, 0.0, 1.1}) {
      const double kin = system.energy({p, q}) - system.energy({0.0, q});
      if (std::abs(kin - 0.5 * p * p) > 1e-10 * std::max(1.0, p * p))
        throw ConfigError("oracle needs H = p^2/2 + V(q) or a polynomial symbol for '" +
                          system.name() + "'");
    }
  RMatrix h = kinetic_matrix(grid, hbar);
  for (int a = 0; a < grid.n; ++a) h(a, a) += system.energy({0.0, grid.q(a)});
  return h.cast<cd>();
}

namespace {

void fix_phase(CVector& v) {
  // Deterministic global phase: first significant component real positive.
  const double big = v.cwiseAbs().maxCoeff();
  for (int i = 0; i < v.size(); ++i)
    if (std::abs(v[i]) > 1e-3 * big) {
      v *= std::conj(v[i]) / std::abs(v[i]);
      return;
    }
}

}  // namespace

Eigenpairs solve_eigenstates(const CMatrix& hamiltonian, int count) {
  const int n = static_cast<int>(hamiltonian.rows());
  if (count < 1 || count > n) throw ConfigError("solve_eigenstates: invalid eigenpair count");
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hamiltonian);
  if (solver.info() != Eigen::Success) throw NumericalError("eigensolver did not converge");
  Eigenpairs out;
  out.energies = solver.eigenvalues().head(count);
  out.vectors = solver.eigenvectors().leftCols(count);
  for (int k = 0; k < count; ++k) {
    CVector v = out.vectors.col(k);
    fix_phase(v);
    out.vectors.col(k) = v;
    const double r = (hamiltonian * v - out.energies[k] * v).norm() /
                     std::max(1.0, std::abs(out.energies[k]));
    out.max_residual = std::max(out.max_residual, r);
  }
  if (out.max_residual > 1e-8) throw NumericalError("eigenpair residual above 1e-8");
  return out;
}

Eigenpairs solve_eigenstates(const std::function<double(double)>& potential, const Grid& grid,
                             double hbar, int count) {
  RMatrix h = kinetic_matrix(grid, hbar);
  for (int a = 0; a < grid.n; ++a) h(a, a) += potential(grid.q(a));
  Eigen::SelfAdjointEigenSolver<RMatrix> solver(h);
  if (solver.info() != Eigen::Success) throw NumericalError("eigensolver did not converge");
  if (count < 1 || count > grid.n) throw ConfigError("solve_eigenstates: invalid eigenpair count");
  Eigenpairs out;
  out.energies = solver.eigenvalues().head(count);
  out.vectors = solver.eigenvectors().leftCols(count).cast<cd>();
  for (int k = 0; k < count; ++k) {
    CVector v = out.vectors.col(k);
    fix_phase(v);
    out.vectors.col(k) = v;
    const double r = (h.cast<cd>() * v - out.energies[k] * v).norm() /
                     std::max(1.0, std::abs(out.energies[k]));
    out.max_residual = std::max(out.max_residual, r);
  }
  if (out.max_residual > 1e-8) throw NumericalError("eigenpair residual above 1e-8");
  return out;
}

DensityGrid DensityGrid::pure(const Grid& grid, double hbar, const CVector& amplitudes) {
  if (amplitudes.size() != grid.n) throw DimensionMismatch("pure state: amplitude length");
  return {grid, hbar, amplitudes * amplitudes.adjoint() / grid.dq};
}

double DensityGrid::trace() const { return rho.trace().real() * grid.dq; }

double DensityGrid::purity() const {
  return rho.cwiseAbs2().sum() * grid.dq * grid.dq;
}

namespace {

// Row s of the half-grid transform collects the kernel entries (a, s - a)
// with chord index d = 2a - s; column j carries the phase
// exp(-i pi (j - n/2) d / n).
struct RowPhases {
  int n;
  std::vector<cd> table;  // exp(-2 pi i k / 2n)
  explicit RowPhases(int n_) : n(n_), table(2 * n_) {
    for (int k = 0; k < 2 * n; ++k) table[k] = std::polar(1.0, -M_PI * k / n);
  }
};

CMatrix forward_rows(const CMatrix& kernel, const Grid& grid, double scale, Exec exec) {
  const int n = grid.n;
  CMatrix out(2 * n - 1, n);
  const RowPhases ph(n);
  for_each_index(static_cast<std::size_t>(2 * n - 1), exec, [&](std::size_t su) {
    const int s = static_cast<int>(su);
    const int a0 = std::max(0, s - n + 1), a1 = std::min(s, n - 1);
    std::vector<cd> c(static_cast<std::size_t>(a1 - a0 + 1));
    for (int a = a0; a <= a1; ++a) c[a - a0] = kernel(a, s - a);
    const int m2 = 2 * n;
    for (int j = 0; j < n; ++j) {
      // Phase index (j - n/2) d mod 2n advances by 2 (j - n/2) per step in a.
      const int stride = ((2 * (j - n / 2)) % m2 + m2) % m2;
      long long k0 = (static_cast<long long>(j - n / 2) * (2 * a0 - s)) % m2;
      int k = static_cast<int>(k0 < 0 ? k0 + m2 : k0);
      cd acc = 0.0;
      for (const cd& v : c) {
        acc += v * ph.table[k];
        k += stride;
        if (k >= m2) k -= m2;
      }
      out(s, j) = acc * scale;
    }
  });
  return out;
}

CMatrix inverse_rows(const CMatrix& w, const Grid& grid, double scale, Exec exec = Exec::parallel) {
  const int n = grid.n;
  CMatrix k(n, n);
  const RowPhases ph(n);
  for_each_index(static_cast<std::size_t>(2 * n - 1), exec, [&](std::size_t su) {
    const int s = static_cast<int>(su);
    const int a0 = std::max(0, s - n + 1), a1 = std::min(s, n - 1);
    const int m2 = 2 * n;
    for (int a = a0; a <= a1; ++a) {
      const int d = 2 * a - s;
      const int stride = (d % m2 + m2) % m2;
      long long k0 = (static_cast<long long>(-n / 2) * d) % m2;
      int idx = static_cast<int>(k0 < 0 ? k0 + m2 : k0);
      cd acc = 0.0;
      for (int j = 0; j < n; ++j) {
        acc += w(s, j) * std::conj(ph.table[idx]);
        idx += stride;
        if (idx >= m2) idx -= m2;
      }
      k(a, s - a) = acc * scale;
    }
  });
  return k;
}

double momentum_step(const Grid& grid, double hbar) { return M_PI * hbar / (grid.n * grid.dq); }

}  // namespace

WignerGrid weyl_transform(const DensityGrid& rho, Exec exec, bool check_aliasing) {
  const Grid& g = rho.grid;
  if (rho.rho.rows() != g.n || rho.rho.cols() != g.n)
    throw DimensionMismatch("weyl_transform: density matrix is not n x n");
  if (g.n % 2) throw ConfigError("weyl_transform: grid size must be even");
  if (check_aliasing) {
    const double peak = rho.rho.diagonal().cwiseAbs().maxCoeff();
    const double edge = std::max(std::abs(rho.rho(0, 0)), std::abs(rho.rho(g.n - 1, g.n - 1)));
    if (edge > 1e-8 * peak) throw NumericalError("weyl_transform: aliasing, density reaches the grid edge");
  }
  const CMatrix c = forward_rows(rho.rho, g, g.dq / (M_PI * rho.hbar), exec);
  WignerGrid w;
  w.grid = g;
  w.hbar = rho.hbar;
  w.dp = momentum_step(g, rho.hbar);
  w.values = c.real();
  const double big = std::max(1.0, w.values.cwiseAbs().maxCoeff());
  w.imag_residue = c.imag().cwiseAbs().maxCoeff() / big;
  return w;
}

DensityGrid inverse_weyl(const WignerGrid& w) {
  const Grid& g = w.grid;
  if (w.values.rows() != 2 * g.n - 1 || w.values.cols() != g.n)
    throw DimensionMismatch("inverse_weyl: Wigner grid has the wrong shape");
  const double scale = M_PI * w.hbar / (g.dq * g.n);
  return {g, w.hbar, inverse_rows(w.values.cast<cd>(), g, scale)};
}

double WignerGrid::integral() const {
  double s = 0.0;
  for (int r = 0; r < values.rows(); r += 2) s += values.row(r).sum();
  return s * dp * grid.dq;
}

double WignerGrid::marginal(int a) const { return values.row(2 * a).sum() * dp; }

double WignerGrid::nearest(const PhasePoint& x) const {
  const long s = std::lround((x.q - grid.q(0)) / (0.5 * grid.dq));
  const long j = std::lround(x.p / dp) + grid.n / 2;
  if (s < 0 || s >= values.rows() || j < 0 || j >= values.cols()) return 0.0;
  return values(s, j);
}

double overlap(const WignerGrid& a, const WignerGrid& b) {
  if (a.values.rows() != b.values.rows() || a.values.cols() != b.values.cols())
    throw DimensionMismatch("overlap: grids differ");
  return 2.0 * M_PI * a.hbar * a.values.cwiseProduct(b.values).sum() * a.dp * a.grid.dq * 0.5;
}

SymbolGrid SymbolGrid::from_wigner(const WignerGrid& w) {
  return {w.grid, w.hbar, w.dp, w.values.cast<cd>() * (2.0 * M_PI * w.hbar)};
}

SymbolGrid SymbolGrid::sample(const Grid& grid, double hbar,
                              const std::function<cd(const PhasePoint&)>& a) {
  SymbolGrid s{grid, hbar, momentum_step(grid, hbar), CMatrix(2 * grid.n - 1, grid.n)};
  for (int r = 0; r < 2 * grid.n - 1; ++r)
    for (int j = 0; j < grid.n; ++j)
      s.values(r, j) = a({(j - grid.n / 2) * s.dp, grid.q(0) + 0.5 * r * grid.dq});
  return s;
}

double SymbolGrid::max_difference(const SymbolGrid& o) const {
  return (values - o.values).cwiseAbs().maxCoeff();
}

CMatrix kernel_from_symbol(const SymbolGrid& a) {
  // Symbol = 2 pi hbar W, so the kernel scale is pi hbar / (dq n) / (2 pi hbar).
  return inverse_rows(a.values, a.grid, 1.0 / (2.0 * a.grid.dq * a.grid.n));
}

SymbolGrid symbol_from_kernel(const CMatrix& kernel, const Grid& grid, double hbar, Exec exec) {
  return {grid, hbar, momentum_step(grid, hbar), forward_rows(kernel, grid, 2.0 * grid.dq, exec)};
}

SymbolGrid moyal_star(const SymbolGrid& a, const SymbolGrid& b, Exec exec) {
  if (a.grid.n != b.grid.n || a.grid.dq != b.grid.dq || a.hbar != b.hbar)
    throw DimensionMismatch("moyal_star: symbols live on different grids");
  const CMatrix k = kernel_from_symbol(a) * kernel_from_symbol(b) * a.grid.dq;
  return symbol_from_kernel(k, a.grid, a.hbar, exec);
}

SymbolGrid identity_symbol(const Grid& grid, double hbar) {
  const CMatrix k = CMatrix::Identity(grid.n, grid.n) / grid.dq;
  return symbol_from_kernel(k, grid, hbar, Exec::serial);
}

TruncatedState TruncatedState::from_grid(const DensityGrid& rho, const Eigenpairs& eig,
                                         int basis_size) {
  if (basis_size < 1 || basis_size > eig.vectors.cols())
    throw ConfigError("truncated basis larger than the available eigenvectors");
  TruncatedState s;
  s.grid = rho.grid;
  s.hbar = rho.hbar;
  s.energies = eig.energies.head(basis_size);
  s.basis = eig.vectors.leftCols(basis_size);
  s.rho = s.basis.adjoint() * rho.discrete() * s.basis;
  return s;
}

DensityGrid TruncatedState::to_grid() const {
  return {grid, hbar, basis * rho * basis.adjoint() / grid.dq};
}

double TruncatedState::purity() const { return rho.cwiseAbs2().sum(); }

double TruncatedState::leak() const {
  const int n = size();
  const int top = std::max(1, (n + 9) / 10);
  double s = 0.0;
  for (int k = n - top; k < n; ++k) s += rho(k, k).real();
  return s;
}

CMatrix TruncatedState::project(const CMatrix& op) const { return basis.adjoint() * op * basis; }

TruncatedState lindblad_integrate(TruncatedState state, const CMatrix& h,
                                  const std::vector<CMatrix>& channels, double t,
                                  const LindbladOptions& options) {
  const int n = state.size();
  if (h.rows() != n || h.cols() != n) throw DimensionMismatch("lindblad: H is not N x N");
  for (const auto& l : channels)
    if (l.rows() != n || l.cols() != n) throw DimensionMismatch("lindblad: channel is not N x N");
  if (!(options.dt > 0.0) || !(t >= 0.0)) throw ConfigError("lindblad: need dt > 0 and t >= 0");
  const double hbar = state.hbar;
  CMatrix ldl = CMatrix::Zero(n, n);
  std::vector<CMatrix> ldag;
  for (const auto& l : channels) {
    ldag.push_back(l.adjoint());
    ldl += ldag.back() * l;
  }
  // Effective non-hermitian generator G = -(i/hbar) H - (1/2hbar) L^dag L.
  const CMatrix g = h * cd(0.0, -1.0 / hbar) - ldl * (0.5 / hbar);
  auto rhs = [&](const CMatrix& r) {
    CMatrix gr = g * r;
    CMatrix d = gr + gr.adjoint();
    for (std::size_t j = 0; j < channels.size(); ++j) d += channels[j] * r * ldag[j] / hbar;
    return d;
  };
  auto check_leak = [&](const TruncatedState& s, double time) {
    const double leak = s.leak();
    if (leak > options.leak_threshold)
      throw NumericalError("lindblad: truncation leak " + std::to_string(leak) + " at t=" +
                           std::to_string(time) + " exceeds threshold; enlarge the basis");
  };
  check_leak(state, 0.0);
  if (options.observer) options.observer(0.0, state);
  const int steps = t == 0.0 ? 0 : std::max(1, static_cast<int>(std::ceil(t / options.dt - 1e-9)));
  const double dt = steps ? t / steps : 0.0;
  for (int k = 1; k <= steps; ++k) {
    const CMatrix& r = state.rho;
    const CMatrix k1 = rhs(r);
    const CMatrix k2 = rhs(r + 0.5 * dt * k1);
    const CMatrix k3 = rhs(r + 0.5 * dt * k2);
    const CMatrix k4 = rhs(r + dt * k3);
    CMatrix next = r + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    state.rho = 0.5 * (next + next.adjoint());
    if (!state.rho.allFinite()) throw NumericalError("lindblad: state became non-finite");
    const bool observe = k == steps || (options.observe_every > 0 && k % options.observe_every == 0);
    if (observe) {
      check_leak(state, k * dt);
      if (options.observer) options.observer(k * dt, state);
    }
  }
  return state;
}

double energy_mean(const TruncatedState& state) {
  double m = 0.0;
  for (int k = 0; k < state.size(); ++k) m += state.energies[k] * state.rho(k, k).real();
  return m / state.trace();
}

double energy_variance(const TruncatedState& state) {
  const double m = energy_mean(state);
  double v = 0.0;
  for (int k = 0; k < state.size(); ++k) {
    const double d = state.energies[k] - m;
    v += d * d * state.rho(k, k).real();
  }
  return std::max(0.0, v / state.trace());
}

CVector coherent_state(const Grid& grid, double hbar, const PhasePoint& x) {
  CVector c(grid.n);
  for (int a = 0; a < grid.n; ++a) {
    const double d = grid.q(a) - x.q;
    c[a] = std::polar(std::exp(-d * d / (2.0 * hbar)), x.p * grid.q(a) / hbar);
  }
  return c / c.norm();
}

CMatrix momentum_sign_projector(const Grid& grid, int sign) {
  const int n = grid.n;
  // Kernel depends on a - b only: (1/n) sum_m [sign k_m > 0] exp(i k_m (a - b) dq).
  std::vector<cd> row(2 * n - 1);
  for (int d = -(n - 1); d <= n - 1; ++d) {
    cd acc = 0.0;
    for (int m = 0; m < n; ++m) {
      const int f = m < n / 2 ? m : m - n;  // discrete frequency index
      if (sign * f > 0) acc += std::polar(1.0, 2.0 * M_PI * f * d / n);
    }
    row[d + n - 1] = acc / double(n);
  }
  CMatrix p(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) p(a, b) = row[a - b + n - 1];
  return p;
}

CVector basis_at(const TruncatedState& state, double q) {
  const Grid& g = state.grid;
  CVector w(g.n);
  for (int a = 0; a < g.n; ++a) {
    const double u = (q - g.q(a)) / g.dq;
    w[a] = std::abs(u) < 1e-12 ? 1.0 : std::sin(M_PI * u) / (M_PI * u);
  }
  return (state.basis.transpose() * w) / std::sqrt(g.dq);
}

cd element_at(const TruncatedState& state, double q_plus, double q_minus) {
  const CVector u = basis_at(state, q_plus);
  const CVector v = basis_at(state, q_minus);
  return (u.transpose() * state.rho * v.conjugate())(0, 0);
}

namespace {

void write_doubles(std::ofstream& out, const double* data, std::size_t count) {
  out.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(count * sizeof(double)));
}

void read_doubles(std::ifstream& in, double* data, std::size_t count) {
  in.read(reinterpret_cast<char*>(data), static_cast<std::streamsize>(count * sizeof(double)));
  if (!in) throw ConfigError("checkpoint: truncated binary payload");
}

}  // namespace

void write_checkpoint(const std::string& path, const TruncatedState& state) {
  nlohmann::json header = {{"format", "scwig-truncated-state"},
                           {"version", 1},
                           {"grid", {{"n", state.grid.n}, {"half_width", state.grid.half_width}}},
                           {"hbar", state.hbar},
                           {"basis_size", state.size()},
                           {"layout", "energies[N], basis[n*N] complex col-major, rho[N*N] complex col-major; little-endian float64 re,im pairs"}};
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("checkpoint: cannot open " + path);
  out << header.dump() << '\n';
  write_doubles(out, state.energies.data(), static_cast<std::size_t>(state.energies.size()));
  write_doubles(out, reinterpret_cast<const double*>(state.basis.data()),
                static_cast<std::size_t>(state.basis.size()) * 2);
  write_doubles(out, reinterpret_cast<const double*>(state.rho.data()),
                static_cast<std::size_t>(state.rho.size()) * 2);
}

TruncatedState read_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("checkpoint: cannot open " + path);
  std::string line;
  std::getline(in, line);
  const auto header = nlohmann::json::parse(line);
  if (header.value("format", "") != "scwig-truncated-state")
    throw ConfigError("checkpoint: unrecognized header");
  TruncatedState s;
  s.grid = Grid::make(header["grid"]["n"].get<int>(), header["grid"]["half_width"].get<double>());
  s.hbar = header["hbar"].get<double>();
  const int nb = header["basis_size"].get<int>();
  s.energies.resize(nb);
  s.basis.resize(s.grid.n, nb);
  s.rho.resize(nb, nb);
  read_doubles(in, s.energies.data(), static_cast<std::size_t>(nb));
  read_doubles(in, reinterpret_cast<double*>(s.basis.data()), static_cast<std::size_t>(s.basis.size()) * 2);
  read_doubles(in, reinterpret_cast<double*>(s.rho.data()), static_cast<std::size_t>(s.rho.size()) * 2);
  return s;
}

}  // namespace scwig::oracle
