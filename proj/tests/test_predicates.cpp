#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hco/enumerate.hpp"
#include "hco/predicates.hpp"

using namespace hco;

namespace {

BasisState st(const OracleParams& params, const std::string& text) {
  return parse_basis_state(text, params);
}

}  // namespace

TEST_CASE("atoms on hand-built states") {
  OracleParams params{4, 3, 3, 1};

  // zero value only in the database: PreQ but not PreC
  BasisState a = st(params, "0|0|0|H:*3|D:{1->0}");
  CHECK(eval_predicate(patom(Atom::PreQ), a));
  CHECK_FALSE(eval_predicate(patom(Atom::PreC), a));

  // recorded zero: PreC; it is also in D but at a recorded index, so no PreQ
  BasisState b = st(params, "0|0|0|H:(1,0),*2|D:{1->0}");
  CHECK(eval_predicate(patom(Atom::PreC), b));
  CHECK_FALSE(eval_predicate(patom(Atom::PreQ), b));

  // two unrecorded indices sharing a value: one quantum collision pair
  BasisState c = st(params, "0|0|0|H:*3|D:{0->2,1->2}");
  CHECK(eval_predicate(patom(Atom::CollQ), c));
  CHECK_FALSE(eval_predicate(patom(Atom::CollQQ), c));
  CHECK_FALSE(eval_predicate(patom(Atom::CollH), c));
  CHECK_FALSE(eval_predicate(patom(Atom::CollC), c));

  // three unrecorded indices sharing a value: three pairs
  BasisState d = st(params, "0|0|0|H:*3|D:{0->2,1->2,2->2}");
  CHECK(eval_predicate(patom(Atom::CollQQ), d));

  // two disjoint pairs also give CollQQ
  BasisState d2 = st(params, "0|0|0|H:*3|D:{0->2,1->2,2->1,3->1}");
  CHECK(eval_predicate(patom(Atom::CollQQ), d2));

  // hybrid: one endpoint recorded, one not
  BasisState e = st(params, "0|0|0|H:(0,2),*2|D:{0->2,1->2}");
  CHECK(eval_predicate(patom(Atom::CollH), e));
  CHECK_FALSE(eval_predicate(patom(Atom::CollQ), e));
  CHECK_FALSE(eval_predicate(patom(Atom::CollC), e));

  // classical: both recorded
  BasisState f = st(params, "0|0|0|H:(0,2),(1,2),*1|D:{0->2,1->2}");
  CHECK(eval_predicate(patom(Atom::CollC), f));
  CHECK_FALSE(eval_predicate(patom(Atom::CollH), f));
  CHECK_FALSE(eval_predicate(patom(Atom::CollQ), f));

  // duplicate record of the same index is not a classical collision
  BasisState g = st(params, "0|0|0|H:(0,2),(0,2),*1|D:{0->2}");
  CHECK_FALSE(eval_predicate(patom(Atom::CollC), g));

  // recorded bottoms never collide
  BasisState hbot = st(params, "0|0|0|H:(0,_),(1,_),*1|D:{}");
  CHECK_FALSE(eval_predicate(patom(Atom::CollC), hbot));
}

TEST_CASE("the X atom tracks the unrecorded endpoint") {
  OracleParams params{4, 3, 3, 1};
  // no hybrid collision: vacuously true whenever x is unrecorded
  BasisState a = st(params, "2|0|0|H:(0,2),*2|D:{0->2}");
  CHECK(eval_predicate(patom(Atom::CollX), a));
  a.x = 0;  // recorded x fails
  CHECK_FALSE(eval_predicate(patom(Atom::CollX), a));

  // single hybrid collision with unrecorded endpoint 1
  BasisState b = st(params, "1|0|0|H:(0,2),*2|D:{0->2,1->2}");
  CHECK(eval_predicate(patom(Atom::CollX), b));
  b.x = 2;
  CHECK_FALSE(eval_predicate(patom(Atom::CollX), b));

  // two distinct unrecorded endpoints: false for every x
  BasisState c = st(params, "1|0|0|H:(0,2),*2|D:{0->2,1->2,2->2}");
  for (int x = 0; x < 4; ++x) {
    c.x = x;
    CHECK_FALSE(eval_predicate(patom(Atom::CollX), c));
  }
}

TEST_CASE("atoms are false on inconsistent states, negations are true") {
  OracleParams params{3, 2, 2, 1};
  BasisState bad = st(params, "0|0|0|H:(0,1),*1|D:{0->0,1->0}");
  CHECK_FALSE(is_structurally_consistent(bad));
  CHECK_FALSE(eval_predicate(patom(Atom::PreQ), bad));
  CHECK_FALSE(eval_predicate(patom(Atom::CollQ), bad));
  CHECK(eval_predicate(pnot(patom(Atom::CollQ)), bad));
}

TEST_CASE("boolean structure") {
  OracleParams params{3, 2, 2, 1};
  BasisState a = st(params, "0|0|0|H:*2|D:{0->1,1->1}");
  Predicate q = patom(Atom::CollQ);
  Predicate h = patom(Atom::CollH);
  CHECK(eval_predicate(por(q, h), a));
  CHECK_FALSE(eval_predicate(pand(q, h), a));
  CHECK(eval_predicate(pand(q, pnot(h)), a));
  CHECK(has_x_atom(pand(q, patom(Atom::CollX))));
  CHECK_FALSE(has_x_atom(por(q, h)));
  CHECK(to_string(pand(q, pnot(h))) == "(CollQ*!(CollH))");
}

TEST_CASE("projection splits the norm") {
  OracleParams params{3, 3, 2, 1};
  SparseState s = random_state_in_A(params, 1, 2, 4);
  Predicate p = por(patom(Atom::CollQ), patom(Atom::CollH));
  double a = norm2(project(s, p));
  double b = norm2(project(s, pnot(p)));
  CHECK(a + b == doctest::Approx(norm2(s)).epsilon(1e-12));
  CHECK(a > 0.0);
  CHECK(b > 0.0);
}

TEST_CASE("dense table agrees with direct evaluation everywhere") {
  OracleParams params{3, 3, 2, 2};
  Encoding enc(params);
  PredTable table(enc);
  std::vector<Predicate> atoms;
  for (Atom a : {Atom::PreQ, Atom::PreC, Atom::CollQ, Atom::CollQQ, Atom::CollH, Atom::CollC,
                 Atom::CollX})
    atoms.push_back(patom(a));
  // include the consistent-space codes and a stride over the full space
  // (the latter hits inconsistent (h,d) pairs too); skip history codes that
  // break the filled-prefix discipline, which no kernel ever produces
  std::vector<uint64_t> codes = enumerate_consistent_space(params, 2, 2).codes;
  for (uint64_t code = 0; code < enc.total; code += 13) {
    uint64_t h = enc.h_of(code);
    if (h / enc.hpow[enc.fill_count(h)] == 0) codes.push_back(code);
  }
  for (uint64_t code : codes) {
    BasisState b = decode(enc, code);
    for (const Predicate& p : atoms) CHECK(table.eval(p, code) == eval_predicate(p, b));
    CHECK(((table.bits(enc.h_of(code), enc.d_of(code)) & kBitConsistent) != 0) ==
          is_structurally_consistent(b));
  }
}

TEST_CASE("mask set matches per-term evaluation") {
  OracleParams params{3, 2, 3, 1};
  Encoding enc(params);
  PredTable table(enc);
  std::vector<Predicate> preds = {
      patom(Atom::CollQ),
      pand(patom(Atom::CollH), pnot(patom(Atom::CollC))),
      pnot(por(patom(Atom::CollH), patom(Atom::CollC))),
      por(patom(Atom::PreQ), patom(Atom::PreC)),
  };
  MaskSet masks(table, preds);
  for (uint64_t code = 0; code < enc.total; code += 7) {
    uint64_t h = enc.h_of(code);
    if (h / enc.hpow[enc.fill_count(h)] != 0) continue;
    uint32_t bits = masks(code);
    BasisState b = decode(enc, code);
    for (size_t i = 0; i < preds.size(); ++i)
      CHECK(((bits >> i) & 1u) == static_cast<uint32_t>(eval_predicate(preds[i], b)));
  }
  CHECK_THROWS_AS(MaskSet(table, {patom(Atom::CollX)}), ParamError);
}

TEST_CASE("collision predicates that respect the history/database structure") {
  OracleParams params{3, 3, 2, 1};
  Predicate q = patom(Atom::CollQ);
  Predicate qq = patom(Atom::CollQQ);
  Predicate h = patom(Atom::CollH);
  CHECK(check_hd_predicate(q, params, 1, 2).pass());
  CHECK(check_hd_predicate(qq, params, 1, 2).pass());
  CHECK(check_hd_predicate(h, params, 1, 2).pass());
  CHECK(check_hd_predicate(por(q, h), params, 1, 2).pass());
  CHECK(check_hd_predicate(por(qq, pand(q, h)), params, 1, 2).pass());
}

TEST_CASE("predicates that fail the structure checks") {
  // growing the database can create a hybrid collision, breaking !(H+C)
  OracleParams params{3, 3, 2, 1};
  Predicate not_hc = pnot(por(patom(Atom::CollH), patom(Atom::CollC)));
  HdPredReport rep = check_hd_predicate(not_hc, params, 1, 2);
  CHECK_FALSE(rep.pass());
  CHECK_FALSE(rep.database_monotone);
  CHECK(rep.monotone_counterexample.has_value());

  // the X atom: a new entry can create a hybrid collision elsewhere
  OracleParams params2{3, 2, 2, 1};
  HdPredReport repx = check_hd_predicate(patom(Atom::CollX), params2, 1, 2);
  CHECK_FALSE(repx.pass());
  CHECK_FALSE(repx.database_monotone);
}
