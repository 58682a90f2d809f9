#pragma once

#include <string>
#include <vector>

#include "hco/programs.hpp"
#include "hco/progress.hpp"

namespace hco {

// One verified quantity: the worst observed lhs - rhs over all trials, where
// the check is "lhs <= rhs + tol".  Equalities are encoded as |lhs| <= tol.
struct CheckResult {
  std::string suite;
  std::string predicate;  // name of the checked quantity
  int M = 0, N = 0, c = 0, q = 0;
  long long trials = 0;
  double max_lhs_minus_rhs = 0.0;
  bool pass = false;
  std::string skip_reason;  // non-empty when the check could not run
};

struct SuiteOptions {
  int trials = 100;   // random states per grid point
  double tol = 1e-9;  // additive slack
  uint64_t seed = 1;
  int threads = 0;  // worker cap; 0 = HCO_THREADS env or 1
  int w_dim = 1;
  // single grid point override; takes effect when all four are set
  int M = 0, N = 0, c = -1, q = -1;
  bool has_point() const { return M > 0 && N > 0 && c >= 0 && q >= 0; }
};

// Constants of the damping bounds: a predicate with per-query transition
// probability gamma damps amplitude by at most sqrt(10*gamma) quantumly and
// 2*gamma classically.  Exposed so tests can corrupt a constant and confirm
// the suite actually fails (sensitivity smoke test); defaults are the proven
// values.
struct SuiteConstants {
  double quantum_overlap_factor = 10.0;
  double classical_overlap_factor = 2.0;
};

std::vector<std::string> suite_names();
std::vector<CheckResult> run_suite(const std::string& name, const SuiteOptions& opts,
                                   const SuiteConstants& consts = {});

bool all_pass(const std::vector<CheckResult>& results);
// flat JSON array of records; floats printed with 17 significant digits
std::string report_json(const std::vector<CheckResult>& results);

// ---- per-query potential traces ----

// One row per query of a compressed-picture run.  Collision programs use the
// collision potential (weights 1,2,4 on C, H!C, Q!H!C); everything else uses
// the search potential (weights 1,2 on PreC, PreQ!PreC reported in the norm_c
// and norm_q_not_h_not_c columns with norm_h_not_c = 0).
struct TraceRow {
  int step = 0;
  QueryKind kind = QueryKind::Classical;
  double psi = 0.0;
  double norm_c = 0.0, norm_h_not_c = 0.0, norm_q_not_h_not_c = 0.0;
  double delta = 0.0;     // psi - previous psi
  double cross_hc = 0.0;  // ||P_C R^C P_{H!C} s||^2 (search: PreC from PreQ!PreC)
  double cross_qh = 0.0;  // ||P_{H!C} R^C P_{Q!H!C} s||^2 (search: 0)
  bool recurrence_ok = true;
};

std::vector<TraceRow> trace_program(const HybridProgram& p, double tol = 1e-9);

}  // namespace hco
