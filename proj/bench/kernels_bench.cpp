// Serial reference vs OpenMP path for the heavy kernels. Each row reports
// both timings and whether the results are bit-identical.
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "scwig/lindblad_semiclassics.hpp"
#include "scwig/normalization_suite.hpp"
#include "scwig/quantum_oracle.hpp"
#include "scwig/semiclassical_wigner.hpp"

using namespace scwig;

namespace {

template <class F>
double best_of(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void report(const std::string& name, double serial, double parallel, bool identical) {
  std::printf("%-28s serial %9.4f s   parallel %9.4f s   speedup %5.2fx   %s\n", name.c_str(), serial,
              parallel, serial / parallel, identical ? "bit-identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kernel benchmark: serial reference vs OpenMP"};
  int reps = 3;
  int side = 81;
  app.add_option("--reps", reps, "repetitions (best time kept)");
  app.add_option("--side", side, "points per axis for the Wigner grid");
  CLI11_PARSE(app, argc, argv);
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());

  const auto harmonic = HamiltonianSystem::harmonic();
  const ShellSpec shell = build_shell(harmonic, 10.5);
  bool all = true;

  {  // grid Wigner evaluation
    const auto state = SemiclassicalState::pure(shell, 1.0);
    std::vector<PhasePoint> pts;
    for (int i = 0; i < side; ++i)
      for (int j = 0; j < side; ++j) pts.push_back({-5.0 + 10.0 * j / (side - 1), -5.0 + 10.0 * i / (side - 1)});
    std::vector<WignerSample> a, b;
    const double ts = best_of(reps, [&] { a = eval_points(pts, state, Exec::serial); });
    const double tp = best_of(reps, [&] { b = eval_points(pts, state, Exec::parallel); });
    bool same = a.size() == b.size();
    for (size_t i = 0; same && i < a.size(); ++i) same = a[i].value == b[i].value;
    report("grid Wigner evaluation", ts, tp, same);
    all = all && same;
  }

  const ShellSpec unit = build_shell(harmonic, 0.5);
  const LindbladChannel q = LindbladChannel::position();
  {  // angle-pair integrals
    PurityDecayOptions so, po;
    so.exec = Exec::serial;
    po.exec = Exec::parallel;
    double a = 0, b = 0;
    const double ts = best_of(reps, [&] { a = purity_decay(unit, harmonic, Channels(&q, 1), 0.5, 0.05, so).value; });
    const double tp = best_of(reps, [&] { b = purity_decay(unit, harmonic, Channels(&q, 1), 0.5, 0.05, po).value; });
    report("purity_decay angle integral", ts, tp, a == b);
    all = all && a == b;

    DirectTraceOptions sd, pd;
    sd.exec = Exec::serial;
    pd.exec = Exec::parallel;
    const ShellSpec s20 = build_shell(harmonic, 0.025 * 20.5);
    const double ts2 = best_of(reps, [&] { a = direct_trace(s20, 0.025, sd).value; });
    const double tp2 = best_of(reps, [&] { b = direct_trace(s20, 0.025, pd).value; });
    report("direct_trace angle pairs", ts2, tp2, a == b);
    all = all && a == b;
  }

  {  // Weyl transform and star product on the oracle grid
    using namespace oracle;
    const Grid grid = Grid::make(256, auto_half_width(harmonic, 10.5));
    const auto eig = solve_eigenstates([](double x) { return 0.5 * x * x; }, grid, 1.0, 11);
    const DensityGrid rho = DensityGrid::pure(grid, 1.0, eig.vectors.col(10));
    WignerGrid a, b;
    const double ts = best_of(reps, [&] { a = weyl_transform(rho, Exec::serial); });
    const double tp = best_of(reps, [&] { b = weyl_transform(rho, Exec::parallel); });
    report("weyl_transform", ts, tp, a.values == b.values);
    all = all && a.values == b.values;

    const SymbolGrid s = SymbolGrid::from_wigner(a);
    SymbolGrid x, y;
    const double ts2 = best_of(1, [&] { x = moyal_star(s, s, Exec::serial); });
    const double tp2 = best_of(1, [&] { y = moyal_star(s, s, Exec::parallel); });
    report("moyal_star", ts2, tp2, x.values == y.values);
    all = all && x.values == y.values;
  }
  return all ? 0 : 1;
}
