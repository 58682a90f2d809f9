// Timing comparison of the oracle kernels: fastpath resampling vs the composed
// S O S reference, and the batched masked-norm kernel vs per-state passes.
// Also reports suite throughput at 1 vs HCO_THREADS workers.
//
// Usage: bench_oracles [M N c q trials]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "hco/enumerate.hpp"
#include "hco/predicates.hpp"
#include "hco/rng.hpp"
#include "hco/suites.hpp"

using namespace hco;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <class F>
double bench(const char* label, int reps, F&& f) {
  f();  // warm up
  auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) f();
  double s = seconds_since(t0) / reps;
  std::printf("  %-42s %10.3f ms\n", label, s * 1e3);
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  int M = 4, N = 4, c = 1, q = 2, trials = 16;
  if (argc >= 5) {
    M = std::atoi(argv[1]);
    N = std::atoi(argv[2]);
    c = std::atoi(argv[3]);
    q = std::atoi(argv[4]);
  }
  if (argc >= 6) trials = std::atoi(argv[5]);

  OracleParams params{M, N, c + 1, 1};
  ConsistentSpace space = enumerate_consistent_space(params, c, q);
  std::printf("grid point M=%d N=%d c=%d q=%d: %zu consistent states, %d trials\n", M, N, c, q,
              space.dim(), trials);

  std::vector<SparseState> states;
  std::vector<cplx> amps(space.dim() * trials);
  for (int t = 0; t < trials; ++t) {
    states.push_back(random_state_in_A(space, mix_seed(77, t)));
    for (size_t i = 0; i < space.dim(); ++i) amps[i * trials + t] = states[t].terms[i].second;
  }

  std::printf("single query application (%zu-term state):\n", space.dim());
  for (QueryKind kind : {QueryKind::Quantum, QueryKind::Classical}) {
    const char* kn = kind == QueryKind::Quantum ? "quantum" : "classical";
    double fast = bench((std::string("fastpath ") + kn).c_str(), 5,
                        [&] { apply_compressed(states[0], kind, ApplyMode::Fastpath); });
    double comp = bench((std::string("composed S O S ") + kn).c_str(), 5,
                        [&] { apply_compressed(states[0], kind, ApplyMode::Composed); });
    std::printf("  -> composed/fastpath ratio: %.1fx\n", comp / fast);
  }

  PredTable table(space.enc);
  MaskSet masks(table, {patom(Atom::CollC), patom(Atom::CollH), patom(Atom::CollQ)});
  auto mask_fn = [&](uint64_t code) { return masks(code); };

  std::printf("masked norms, %d states x 3 masks:\n", trials);
  for (QueryKind kind : {QueryKind::Quantum, QueryKind::Classical}) {
    const char* kn = kind == QueryKind::Quantum ? "quantum" : "classical";
    double per = bench((std::string("per-state passes ") + kn).c_str(), 3, [&] {
      for (int t = 0; t < trials; ++t)
        compressed_masked_norms(states[t], kind, mask_fn, 3, false);
    });
    double bat = bench((std::string("one batched pass ") + kn).c_str(), 3, [&] {
      compressed_masked_norms_batch(space.enc, space.codes, amps, trials, kind, mask_fn, 3,
                                    false);
    });
    std::printf("  -> per-state/batched ratio: %.1fx\n", per / bat);
  }

  std::printf("sampl suite at this grid point, %d trials:\n", trials);
  SuiteOptions opts;
  opts.trials = trials;
  opts.M = M;
  opts.N = N;
  opts.c = c;
  opts.q = q;
  opts.threads = 1;
  double one = bench("1 worker", 1, [&] { run_suite("sampl", opts); });
  opts.threads = 0;  // HCO_THREADS or 1
  const char* env = std::getenv("HCO_THREADS");
  if (env && std::atoi(env) > 1) {
    double many = bench((std::string("HCO_THREADS=") + env).c_str(), 1,
                        [&] { run_suite("sampl", opts); });
    std::printf("  -> speedup: %.2fx\n", one / many);
  } else {
    std::printf("  (set HCO_THREADS>1 for the multi-worker comparison)\n");
  }
  return 0;
}
