// Compares the OpenMP kernels against their serial references:
//   - exact probability of an event set by weighted outcome enumeration
//   - Monte-Carlo block sampling of a consequence box
// Both pairs must agree numerically; the table reports wall times.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ccd/montecarlo.hpp"
#include "ccd/oracle.hpp"

using namespace ccd;

namespace {

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

struct Workload {
  FiniteSpace space;
  EventSet set;
  ConsequenceBox cbox;
  Assignment assign;
};

Workload make_workload(int n_events) {
  std::mt19937_64 rng(12345);
  auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

  std::vector<std::pair<std::string, double>> events;
  Assignment assign;
  for (int i = 0; i < n_events; ++i) {
    const std::string id = "e" + std::to_string(i);
    const double p = 0.02 + 0.9 * uniform();
    events.emplace_back(id, p);
    assign.set(id, p);
  }
  FiniteSpace space(events, static_cast<std::size_t>(n_events));

  // Four-box expansion over disjoint leaf groups, half the vectors kept.
  ConsequenceBox cbox;
  cbox.label = "bench";
  const int boxes = 4;
  const int per_box = n_events / boxes;
  for (int mask = 0; mask < (1 << boxes); mask += 2) {
    ConsequencePath path;
    path.id = "p" + std::to_string(mask);
    for (int b = 0; b < boxes; ++b) {
      std::vector<FtExpr> atoms;
      for (int k = 0; k < per_box; ++k) {
        atoms.push_back(FtExpr::atomic("e" + std::to_string(b * per_box + k)));
      }
      FtExpr gate = (b % 2 == 0) ? FtExpr::or_of(std::move(atoms))
                                 : FtExpr::and_of(std::move(atoms));
      path.boxes.push_back({"b" + std::to_string(b), std::move(gate),
                            (mask >> b) & 1 ? Selector::yes : Selector::no});
    }
    cbox.paths.push_back(std::move(path));
  }

  EventSet set = box_semantics(cbox, space);
  return {std::move(space), std::move(set), std::move(cbox), std::move(assign)};
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads = %d\n\n", omp_get_max_threads());
#else
  std::printf("OpenMP disabled; both columns run serially\n\n");
#endif
  std::printf("%-34s %12s %12s %9s\n", "kernel", "serial ms", "parallel ms",
              "speedup");

  {
    const Workload w = make_workload(20);  // 2^20 outcomes
    constexpr int reps = 40;

    double serial_result = 0.0;
    auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) {
      serial_result = reference::prob_serial(w.space, w.set);
    }
    const double serial_ms = ms_since(t0) / reps;

    double parallel_result = 0.0;
    t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) {
      parallel_result = w.space.prob(w.set);
    }
    const double parallel_ms = ms_since(t0) / reps;

    if (std::abs(serial_result - parallel_result) > 1e-12) {
      std::printf("MISMATCH: %.17g vs %.17g\n", serial_result, parallel_result);
      return 1;
    }
    std::printf("%-34s %12.3f %12.3f %8.2fx\n",
                "oracle prob, 2^20 outcomes", serial_ms, parallel_ms,
                serial_ms / parallel_ms);
  }

  {
    const Workload w = make_workload(20);
    constexpr std::uint64_t n = 2'000'000;

    auto t0 = std::chrono::steady_clock::now();
    const McsEstimate single =
        reference::mcs_single_stream(w.cbox, w.assign, n, 9);
    const double serial_ms = ms_since(t0);

    t0 = std::chrono::steady_clock::now();
    const McsEstimate blocked = mcs_estimate(w.cbox, w.assign, n, 9);
    const double parallel_ms = ms_since(t0);

    const double exact = w.space.prob(w.set);
    const double slack =
        4.0 * std::max({single.stderr_, blocked.stderr_, 1e-4});
    if (std::abs(single.mean - exact) > slack ||
        std::abs(blocked.mean - exact) > slack) {
      std::printf("MISMATCH: exact %.6f single %.6f blocked %.6f\n", exact,
                  single.mean, blocked.mean);
      return 1;
    }
    std::printf("%-34s %12.3f %12.3f %8.2fx\n", "mcs sampling, 2e6 draws",
                serial_ms, parallel_ms, serial_ms / parallel_ms);
  }

  std::printf("\nok\n");
  return 0;
}
