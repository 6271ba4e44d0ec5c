// Serial vs OpenMP sweep timing on the default detuning and control sweeps.
// Usage: sweep_bench [points] [jobs]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "eitlab/sweep.hpp"

namespace {

template <class F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool same(const eitlab::SweepTable& a, const eitlab::SweepTable& b) {
  if (a.rows.size() != b.rows.size()) return false;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    for (std::size_t c = 0; c < a.rows[i].size(); ++c) {
      const double x = a.rows[i][c], y = b.rows[i][c];
      if (!(x == y || (x != x && y != y))) return false;
    }
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  const int points = argc > 1 ? std::atoi(argv[1]) : 1001;
  const int jobs = argc > 2 ? std::atoi(argv[2]) : omp_get_max_threads();

  for (auto axis : {eitlab::SweepAxis::Delta, eitlab::SweepAxis::Control}) {
    eitlab::ScenarioConfig config;
    config.axis = axis;
    config.sweep_count = points;
    if (axis == eitlab::SweepAxis::Control) {
      config.sweep_min = 0.01;
      config.sweep_max = 0.5;
    }
    eitlab::SweepTable serial, parallel;
    const double ts = seconds([&] { serial = eitlab::compute_sweep_serial(config); });
    const double tp = seconds([&] { parallel = eitlab::compute_sweep_parallel(config, jobs); });
    std::printf("%-7s points=%d serial=%.3fs openmp(%d)=%.3fs speedup=%.2f identical=%s\n",
                axis == eitlab::SweepAxis::Delta ? "delta" : "control", points, ts, jobs, tp, ts / tp,
                same(serial, parallel) ? "yes" : "NO");
  }
  return 0;
}
