#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "hco/enumerate.hpp"
#include "hco/progress.hpp"
#include "hco/rng.hpp"
#include "hco/suites.hpp"

using namespace hco;

namespace {

SuiteOptions small_point(int trials = 10) {
  SuiteOptions o;
  o.trials = trials;
  o.M = 3;
  o.N = 3;
  o.c = 1;
  o.q = 2;
  return o;
}

}  // namespace

TEST_CASE("every suite passes at a small grid point") {
  for (const std::string& name : suite_names()) {
    CAPTURE(name);
    std::vector<CheckResult> rs = run_suite(name, small_point());
    CHECK(!rs.empty());
    CHECK(all_pass(rs));
    for (const CheckResult& r : rs) {
      CAPTURE(r.predicate);
      CHECK(r.trials > 0);
      CHECK(r.pass);
    }
  }
}

TEST_CASE("unknown suite names are rejected") {
  CHECK_THROWS_AS(run_suite("no-such-suite", small_point()), ParamError);
}

TEST_CASE("corrupting the damping constants makes sampl fail") {
  // sensitivity smoke test: the suite must actually depend on the constants
  SuiteConstants bad_q;
  bad_q.quantum_overlap_factor = 1.0;
  CHECK_FALSE(all_pass(run_suite("sampl", small_point(), bad_q)));
  SuiteConstants bad_c;
  bad_c.classical_overlap_factor = 1.0;
  CHECK_FALSE(all_pass(run_suite("sampl", small_point(), bad_c)));
  CHECK(all_pass(run_suite("sampl", small_point())));
}

TEST_CASE("suite results are deterministic") {
  std::string a = report_json(run_suite("progress-collision", small_point()));
  std::string b = report_json(run_suite("progress-collision", small_point()));
  CHECK(a == b);
}

TEST_CASE("json report round-trips and carries the check fields") {
  std::vector<CheckResult> rs = run_suite("hdpred", small_point());
  nlohmann::json j = nlohmann::json::parse(report_json(rs));
  REQUIRE(j.is_array());
  REQUIRE(j.size() == rs.size());
  for (size_t i = 0; i < rs.size(); ++i) {
    CHECK(j[i]["suite"] == rs[i].suite);
    CHECK(j[i]["predicate"] == rs[i].predicate);
    CHECK(j[i]["params"]["M"] == rs[i].M);
    CHECK(j[i]["params"]["N"] == rs[i].N);
    CHECK(j[i]["params"]["c"] == rs[i].c);
    CHECK(j[i]["params"]["q"] == rs[i].q);
    CHECK(j[i]["trials"] == rs[i].trials);
    CHECK(j[i]["pass"] == rs[i].pass);
    CHECK(j[i]["max_lhs_minus_rhs"].get<double>() ==
          doctest::Approx(rs[i].max_lhs_minus_rhs).epsilon(1e-15));
  }
}

TEST_CASE("batched masked norms agree with the per-state kernel") {
  OracleParams params{3, 3, 2, 1};
  ConsistentSpace space = enumerate_consistent_space(params, 1, 1);
  PredTable table(space.enc);
  MaskSet masks(table, {patom(Atom::CollC), pnot(patom(Atom::CollH))});
  const int T = 3;
  std::vector<SparseState> states;
  std::vector<cplx> amps(space.dim() * T);
  for (int t = 0; t < T; ++t) {
    states.push_back(random_state_in_A(space, 900 + t));
    for (size_t i = 0; i < space.dim(); ++i) amps[i * T + t] = states[t].terms[i].second;
  }
  for (QueryKind kind : {QueryKind::Quantum, QueryKind::Classical}) {
    for (bool skip : {false, true}) {
      std::vector<double> batch = compressed_masked_norms_batch(
          space.enc, space.codes, amps, T, kind, [&](uint64_t c) { return masks(c); }, 2, skip);
      for (int t = 0; t < T; ++t) {
        std::vector<double> one = compressed_masked_norms(
            states[t], kind, [&](uint64_t c) { return masks(c); }, 2, skip);
        CHECK(batch[0 * T + t] == doctest::Approx(one[0]).epsilon(1e-12));
        CHECK(batch[1 * T + t] == doctest::Approx(one[1]).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("batched pair dots agree with explicit inner products") {
  OracleParams params{3, 3, 2, 1};
  ConsistentSpace space = enumerate_consistent_space(params, 1, 1);
  const int T = 2;
  std::vector<SparseState> us, vs;
  std::vector<cplx> amps_u(space.dim() * T), amps_v(space.dim() * T);
  for (int t = 0; t < T; ++t) {
    us.push_back(random_state_in_A(space, 910 + t));
    vs.push_back(random_state_in_A(space, 920 + t));
    for (size_t i = 0; i < space.dim(); ++i) {
      amps_u[i * T + t] = us[t].terms[i].second;
      amps_v[i * T + t] = vs[t].terms[i].second;
    }
  }
  std::vector<cplx> dots = compressed_pair_dot_batch(space.enc, space.codes, amps_u, space.codes,
                                                     amps_v, T, QueryKind::Classical);
  for (int t = 0; t < T; ++t) {
    cplx want = inner_product(apply_compressed(vs[t], QueryKind::Classical),
                              apply_compressed(us[t], QueryKind::Classical));
    CHECK(std::abs(dots[t] - want) < 1e-12);
  }
}

TEST_CASE("trace rows reproduce the potentials along builtin runs") {
  struct Prog {
    const char* name;
    int M, N, c, q;
  };
  for (const Prog& pr : {Prog{"classical-search", 4, 4, 3, 0}, Prog{"grover", 4, 2, 0, 2},
                         Prog{"classical-birthday", 3, 2, 3, 0}, Prog{"bht-hybrid", 4, 4, 1, 2}}) {
    CAPTURE(pr.name);
    HybridProgram p = make_builtin(pr.name, pr.M, pr.N, pr.c, pr.q);
    std::vector<TraceRow> rows = trace_program(p);
    RunOptions ropts;
    ropts.keep_query_states = true;
    RunResult run = run_program(p, ropts);
    REQUIRE(rows.size() == run.after_query.size());
    bool collision = p.output.kind == OutputKind::CollisionFromHistory;
    double prev = 0.0;
    for (size_t i = 0; i < rows.size(); ++i) {
      double want = collision ? potential_collision(run.after_query[i])
                              : potential_search(run.after_query[i]);
      CHECK(rows[i].psi == doctest::Approx(want).epsilon(1e-10));
      CHECK(rows[i].step == static_cast<int>(i) + 1);
      CHECK(rows[i].delta == doctest::Approx(rows[i].psi - prev).epsilon(1e-9));
      // the weighted squared-norm columns must reassemble psi
      double weighted = rows[i].norm_c + 2.0 * rows[i].norm_h_not_c +
                        (collision ? 4.0 : 2.0) * rows[i].norm_q_not_h_not_c;
      CHECK(rows[i].psi == doctest::Approx(weighted).epsilon(1e-9));
      CHECK(rows[i].recurrence_ok);
      prev = rows[i].psi;
    }
  }
}

TEST_CASE("classical search trace grows by at most 4/N per row") {
  HybridProgram p = make_classical_search(4, 4, 3);
  for (const TraceRow& r : trace_program(p)) {
    CHECK(r.kind == QueryKind::Classical);
    CHECK(r.delta <= 4.0 / 4 + 1e-9);
  }
}
