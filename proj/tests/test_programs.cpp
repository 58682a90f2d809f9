#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hco/enumerate.hpp"
#include "hco/programs.hpp"
#include "hco/rng.hpp"
#include "hco/success.hpp"

using namespace hco;

namespace {

void check_close(const SparseState& a, const SparseState& b, double tol) {
  SparseState diff = lincomb(cplx(1.0, 0.0), a, cplx(-1.0, 0.0), b);
  CHECK(norm(diff) <= tol);
}

// success of c independent fresh lookups at finding a zero
double search_closed_form(int N, int c) {
  return 1.0 - std::pow(1.0 - 1.0 / N, c);
}

// success of c distinct-input lookups at finding a repeated value
double birthday_closed_form(int N, int c) {
  double miss = 1.0;
  for (int i = 0; i < c; ++i) miss *= std::max(0.0, 1.0 - static_cast<double>(i) / N);
  return 1.0 - miss;
}

}  // namespace

TEST_CASE("unitary constructors reject non-unitaries") {
  CHECK_THROWS_AS(a_permutation({0, 0, 1}), ParamError);
  CHECK_THROWS_AS(a_diagonal({cplx(0.5, 0.0)}), ParamError);
  CHECK_THROWS_AS(a_block(4, {0, 1}, {{cplx(1, 0), cplx(1, 0)}, {cplx(0, 0), cplx(1, 0)}}),
                  ParamError);
  CHECK_THROWS_AS(a_block(4, {0, 0}, {{cplx(1, 0), cplx(0, 0)}, {cplx(0, 0), cplx(1, 0)}}),
                  ParamError);
}

TEST_CASE("unitaries preserve norm and compose with their adjoints") {
  OracleParams params{3, 3, 2, 2};
  Encoding enc(params);
  SparseState s = random_state_in_A(params, 1, 1, 17);
  AUnitary f = fourier_p(enc);
  AUnitary inc = increment_x(enc);
  std::vector<cplx> ph(enc.a_dim);
  for (uint64_t a = 0; a < enc.a_dim; ++a)
    ph[a] = std::polar(1.0, 0.1 * static_cast<double>(a));
  AUnitary diag = a_diagonal(ph);
  for (const AUnitary& u : {f, inc, diag}) {
    SparseState t = apply_unitary(s, u);
    CHECK(norm2(t) == doctest::Approx(norm2(s)).epsilon(1e-12));
    check_close(apply_unitary(t, a_adjoint(u)), s, 1e-12);
  }
}

TEST_CASE("permutation relocates labels without touching H or D") {
  OracleParams params{3, 2, 1, 1};
  Encoding enc(params);
  AUnitary inc = increment_x(enc);
  SparseState s(params);
  BasisState b = parse_basis_state("1|1|0|H:(0,1)|D:{0->1}", params);
  s.terms.emplace_back(encode(enc, b), cplx(1.0, 0.0));
  SparseState t = apply_unitary(s, inc);
  BasisState want = b;
  want.x = 2;
  REQUIRE(t.size() == 1);
  CHECK(t.terms[0].first == encode(enc, want));
}

TEST_CASE("fourier on p maps 0 to the uniform superposition") {
  OracleParams params{2, 4, 0, 1};
  Encoding enc(params);
  SparseState s = initial_state(params, Picture::Compressed);
  SparseState t = apply_unitary(s, fourier_p(enc));
  CHECK(t.size() == 4);
  for (const auto& term : t.terms)
    CHECK(std::abs(term.second - cplx(0.5, 0.0)) < 1e-12);
}

TEST_CASE("initial states") {
  OracleParams params{2, 2, 1, 1};
  SparseState c = initial_state(params, Picture::Compressed);
  REQUIRE(c.size() == 1);
  BasisState b = decode(c.enc, c.terms[0].first);
  CHECK(b.x == 0);
  CHECK(b.p == 0);
  CHECK(b.d.entries.empty());
  CHECK(b.h.filled.empty());
  // standard picture: uniform over the N^M = 4 total functions
  SparseState st = initial_state(params, Picture::Standard);
  CHECK(st.size() == 4);
  for (const auto& t : st.terms) {
    CHECK(std::abs(t.second - cplx(0.5, 0.0)) < 1e-12);
    CHECK(decode(st.enc, t.first).d.entries.size() == 2);
  }
}

TEST_CASE("classical search matches the closed form") {
  // M=2, N=2: one lookup finds the zero half the time, two lookups 3/4
  CHECK(simulated_success(make_classical_search(2, 2, 1)) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(simulated_success(make_classical_search(2, 2, 2)) == doctest::Approx(0.75).epsilon(1e-12));
  for (int N : {2, 3}) {
    for (int c = 0; c <= 3; ++c) {
      HybridProgram p = make_classical_search(4, N, c);
      double sim = simulated_success(p);
      CHECK(sim == doctest::Approx(search_closed_form(N, c)).epsilon(1e-10));
      CHECK(sim == doctest::Approx(enumeration_success(p)).epsilon(1e-10));
    }
  }
}

TEST_CASE("classical birthday matches the closed form") {
  // three distinct lookups into a binary range always repeat a value
  CHECK(simulated_success(make_classical_birthday(3, 2, 3)) == doctest::Approx(1.0).epsilon(1e-12));
  for (int N : {2, 3}) {
    for (int c = 0; c <= 3; ++c) {
      HybridProgram p = make_classical_birthday(4, N, c);
      double sim = simulated_success(p);
      CHECK(sim == doctest::Approx(birthday_closed_form(N, c)).epsilon(1e-10));
      CHECK(sim == doctest::Approx(enumeration_success(p)).epsilon(1e-10));
    }
  }
}

TEST_CASE("grover agrees with enumeration and beats guessing") {
  for (auto [M, N, q] : {std::tuple{2, 2, 1}, {4, 4, 0}, {4, 4, 2}, {3, 3, 2}}) {
    HybridProgram p = make_grover(M, N, q);
    double sim = simulated_success(p);
    double ref = enumeration_success(p);
    CAPTURE(M);
    CAPTURE(N);
    CAPTURE(q);
    CHECK(sim == doctest::Approx(ref).epsilon(1e-10));
    if (q == 0) {
      CHECK(sim == doctest::Approx(1.0 / N).epsilon(1e-10));
    } else {
      // amplification never hurts; at M=N=2, q=1 it averages to exactly 1/N
      CHECK(sim >= 1.0 / N - 1e-12);
    }
  }
  // a full iteration at M=N=4 strictly beats guessing
  CHECK(simulated_success(make_grover(4, 4, 2)) > 0.25 + 0.1);
}

TEST_CASE("hybrid collision finding agrees with enumeration") {
  for (auto [M, N, c, q] : {std::tuple{4, 4, 1, 2}, {4, 4, 2, 2}, {4, 4, 2, 0}, {4, 3, 1, 2}}) {
    HybridProgram p = make_bht(M, N, c, q);
    double sim = simulated_success(p);
    double ref = enumeration_success(p);
    CAPTURE(M);
    CAPTURE(N);
    CAPTURE(c);
    CAPTURE(q);
    CHECK(sim == doctest::Approx(ref).epsilon(1e-10));
  }
  // trading the quantum budget for collection lookups changes the program but
  // the two pictures must still agree
  HybridProgram p = make_bht(4, 4, 1, 2, /*convert_cq=*/true);
  CHECK(p.classical_queries() == 3);
  CHECK(p.quantum_queries() == 0);
  CHECK(simulated_success(p) == doctest::Approx(enumeration_success(p)).epsilon(1e-10));
}

TEST_CASE("hybrid search agrees with enumeration") {
  for (auto [M, N, c, q] : {std::tuple{4, 4, 1, 2}, {4, 2, 2, 1}, {3, 3, 1, 0}}) {
    HybridProgram p = make_hybrid_search(M, N, c, q);
    CHECK(simulated_success(p) == doctest::Approx(enumeration_success(p)).epsilon(1e-10));
  }
}

TEST_CASE("uncompressing the run reproduces the standard picture") {
  for (uint64_t seed : {1ull, 2ull, 3ull}) {
    OracleParams params{3, 3, 2, 2};
    HybridProgram p = make_random_program(params, 3, seed);
    RunOptions opts;
    opts.keep_query_states = true;
    RunResult comp = run_program(p, opts);
    opts.picture = Picture::Standard;
    RunResult std_run = run_program(p, opts);
    REQUIRE(comp.after_query.size() == std_run.after_query.size());
    for (size_t i = 0; i < comp.after_query.size(); ++i)
      check_close(apply_S_all(comp.after_query[i]), std_run.after_query[i], 1e-9);
    CHECK(success_probability(p, comp.final_state, Picture::Compressed) ==
          doctest::Approx(success_probability(p, std_run.final_state, Picture::Standard))
              .epsilon(1e-9));
  }
}

TEST_CASE("program bookkeeping and capacity checks") {
  HybridProgram p = make_bht(4, 4, 2, 2);
  CHECK(p.classical_queries() == 3);
  CHECK(p.quantum_queries() == 2);
  CHECK(p.params.c_max == 3);
  HybridProgram bad = make_classical_search(3, 2, 2);
  bad.params.c_max = 1;
  CHECK_THROWS_AS(run_program(bad), CapacityError);
  CHECK_THROWS_AS(make_builtin("unknown", 2, 2, 1, 1), ParamError);
}
