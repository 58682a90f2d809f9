// End-to-end acceptance gate: one pass/fail line per criterion, nonzero exit
// if any fails.  The CLI binary path must be passed as argv[1] for the
// determinism criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hco/success.hpp"
#include "hco/suites.hpp"

using namespace hco;

namespace {

int failures = 0;

void line(int idx, const std::string& name, bool ok, const std::string& detail) {
  std::printf("%s criterion %d (%s)%s%s\n", ok ? "PASS" : "FAIL", idx, name.c_str(),
              detail.empty() ? "" : ": ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

double worst(const std::vector<CheckResult>& rs) {
  double w = 0.0;
  for (const CheckResult& r : rs) w = std::max(w, r.max_lhs_minus_rhs);
  return w;
}

struct Timed {
  std::vector<CheckResult> results;
  double seconds = 0.0;
};

Timed timed_suite(const std::string& name) {
  auto t0 = std::chrono::steady_clock::now();
  Timed t;
  t.results = run_suite(name, SuiteOptions{});
  t.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return t;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// run the CLI twice with identical arguments and demand byte-identical output
bool rerun_identical(const std::string& hco, const std::string& args, std::string& why) {
  const std::string f1 = "/tmp/hco_accept_a.out", f2 = "/tmp/hco_accept_b.out";
  for (const std::string& f : {f1, f2}) {
    int rc = std::system((hco + " " + args + " --out " + f).c_str());
    if (rc != 0) {
      why = "command failed (" + args + ")";
      return false;
    }
  }
  std::string a = slurp(f1), b = slurp(f2);
  if (a.empty() || a != b) {
    why = "outputs differ (" + args + ")";
    return false;
  }
  return true;
}

double closed_search(int N, int c) { return 1.0 - std::pow(1.0 - 1.0 / N, c); }

double closed_birthday(int N, int c) {
  if (c > N) return 1.0;  // more draws than values: a repeat is certain
  double no_coll = 1.0;
  for (int i = 0; i < c; ++i) no_coll *= double(N - i) / N;
  return 1.0 - no_coll;
}

}  // namespace

int main(int argc, char** argv) {
  const double tol = 1e-9;

  {
    Timed t = timed_suite("record-lemmas");
    bool ok = all_pass(t.results) && t.seconds < 60.0;
    line(1, "resampling equivalence", ok,
         "max diff " + fmt(worst(t.results)) + ", " + fmt(t.seconds) + "s (cap 60s)");
  }
  {
    Timed t = timed_suite("indistinguishability");
    bool ok = all_pass(t.results) && t.seconds < 120.0;
    line(2, "standard vs compressed runs", ok,
         "max norm diff " + fmt(worst(t.results)) + ", " + fmt(t.seconds) + "s (cap 120s)");
  }
  {
    std::vector<CheckResult> rs = run_suite("consistency", SuiteOptions{});
    line(3, "trajectory support consistency", all_pass(rs),
         "violations " + fmt(worst(rs)));
  }
  {
    std::vector<CheckResult> rs = run_suite("ortho", SuiteOptions{});
    line(4, "orthogonality identities", all_pass(rs), "max value " + fmt(worst(rs)));
  }
  {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<CheckResult> rs;
    for (const char* name : {"sampl", "progress-search", "progress-collision"}) {
      std::vector<CheckResult> one = run_suite(name, SuiteOptions{});
      rs.insert(rs.end(), one.begin(), one.end());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool ok = all_pass(rs) && secs < 300.0;
    line(5, "explicit-constant inequalities", ok,
         "max lhs-rhs " + fmt(worst(rs)) + ", " + fmt(secs) + "s (cap 300s)");
  }
  {
    std::vector<CheckResult> rs = run_suite("recurrence", SuiteOptions{});
    line(6, "potential recurrences", all_pass(rs), "max violation " + fmt(worst(rs)));
  }
  {
    bool ok = true;
    std::string why;
    struct Case {
      const char* name;
      int M, N, c, q;
      double expect;  // negative: only simulator-vs-enumeration is checked
    };
    std::vector<Case> cases = {{"classical-search", 2, 2, 1, 0, 0.5},
                               {"classical-search", 2, 2, 2, 0, 0.75},
                               {"classical-birthday", 3, 2, 3, 0, 1.0}};
    for (int q = 0; q <= 2; ++q) cases.push_back({"grover", 4, 4, 0, q, -1.0});
    for (int c = 0; c <= 2; ++c)
      for (int q = 0; q <= 2; ++q) cases.push_back({"bht-hybrid", 4, 4, c, q, -1.0});
    for (const Case& cs : cases) {
      HybridProgram p = make_builtin(cs.name, cs.M, cs.N, cs.c, cs.q);
      double sim = simulated_success(p);
      double ref = enumeration_success(p);
      if (std::abs(sim - ref) > tol) {
        ok = false;
        why = std::string(cs.name) + " simulator/enumeration mismatch " + fmt(sim - ref);
        break;
      }
      if (cs.expect >= 0.0 && std::abs(sim - cs.expect) > tol) {
        ok = false;
        why = std::string(cs.name) + " expected " + fmt(cs.expect) + " got " + fmt(sim);
        break;
      }
      double closed = std::string(cs.name) == "classical-search" ? closed_search(cs.N, cs.c)
                      : std::string(cs.name) == "classical-birthday"
                          ? closed_birthday(cs.N, cs.c)
                          : -1.0;
      if (closed >= 0.0 && std::abs(sim - closed) > tol) {
        ok = false;
        why = std::string(cs.name) + " closed form " + fmt(closed) + " got " + fmt(sim);
        break;
      }
    }
    line(7, "exact success probabilities", ok, ok ? std::to_string(cases.size()) + " cases" : why);
  }
  {
    std::vector<CheckResult> rs = run_suite("hdpred", SuiteOptions{});
    line(8, "predicate classification", all_pass(rs),
         std::to_string(rs.size()) + " classification checks");
  }
  {
    bool ok = true;
    std::string why;
    if (argc < 2) {
      ok = false;
      why = "CLI binary path not supplied";
    } else {
      const std::string hco = argv[1];
      ok = rerun_identical(hco, "verify --suite hdpred --M 3 --N 3 --c 1 --q 2 --trials 20", why) &&
           rerun_identical(hco, "simulate --algorithm bht-hybrid --M 4 --N 4 --c 1 --q 2 --trace",
                           why) &&
           rerun_identical(hco, "trace --algorithm grover --M 4 --N 2 --q 2", why) &&
           rerun_identical(hco, "sweep --algorithm collision --M 4 --N 4 --c 2 --q 2", why);
    }
    line(9, "byte-identical reruns", ok, why);
  }

  std::printf("%s\n", failures == 0 ? "ALL CRITERIA PASS" : "CRITERIA FAILED");
  return failures == 0 ? 0 : 1;
}
