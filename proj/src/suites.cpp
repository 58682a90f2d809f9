#include "hco/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <unordered_map>

#include "hco/enumerate.hpp"
#include "hco/rng.hpp"
#include "hco/success.hpp"

namespace hco {

namespace {

int resolve_threads(int t) {
  if (t > 0) return t;
  if (const char* e = std::getenv("HCO_THREADS")) {
    int v = std::atoi(e);
    if (v > 0) return v;
  }
  return 1;
}

struct GridPoint {
  int M = 0, N = 0, c = 0, q = 0;
};

std::vector<GridPoint> make_grid(const SuiteOptions& o, std::initializer_list<int> mns,
                                 std::initializer_list<int> cqs) {
  if (o.has_point()) return {GridPoint{o.M, o.N, o.c, o.q}};
  std::vector<GridPoint> g;
  for (int M : mns)
    for (int N : mns)
      for (int c : cqs)
        for (int q : cqs) g.push_back({M, N, c, q});
  return g;
}

// accumulates the worst lhs - rhs over trials of one "lhs <= rhs" check
struct Check {
  std::string name;
  long long trials = 0;
  double maxv = -std::numeric_limits<double>::infinity();

  explicit Check(std::string n) : name(std::move(n)) {}
  void add(double lhs, double rhs) {
    ++trials;
    maxv = std::max(maxv, lhs - rhs);
  }
};

CheckResult finish(const std::string& suite, const GridPoint& pt, const Check& chk, double tol) {
  CheckResult r;
  r.suite = suite;
  r.predicate = chk.name;
  r.M = pt.M;
  r.N = pt.N;
  r.c = pt.c;
  r.q = pt.q;
  r.trials = chk.trials;
  r.max_lhs_minus_rhs = (chk.trials == 0) ? 0.0 : chk.maxv;
  r.pass = r.max_lhs_minus_rhs <= tol;
  return r;
}

// runs f(i) over i in [0,n), sharding across workers; each i owns its slot of
// the output so the merged result is order-deterministic
template <class F>
void parallel_for(int n, int threads, F&& f) {
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (int i = 0; i < n; ++i) f(i);
}

// ---- shared small helpers ----

double max_amp_diff(const SparseState& a, const SparseState& b) {
  double m = 0.0;
  size_t i = 0, j = 0;
  while (i < a.terms.size() || j < b.terms.size()) {
    if (j >= b.terms.size() || (i < a.terms.size() && a.terms[i].first < b.terms[j].first)) {
      m = std::max(m, std::abs(a.terms[i].second));
      ++i;
    } else if (i >= a.terms.size() || b.terms[j].first < a.terms[i].first) {
      m = std::max(m, std::abs(b.terms[j].second));
      ++j;
    } else {
      m = std::max(m, std::abs(a.terms[i].second - b.terms[j].second));
      ++i;
      ++j;
    }
  }
  return m;
}

// per-code class membership bits: X-free predicates through the dense table,
// the rest through full evaluation (they read the x register)
std::vector<uint32_t> class_bits(const ConsistentSpace& space, PredTable& table,
                                 const std::vector<Predicate>& xfree,
                                 const std::vector<Predicate>& xdep) {
  MaskSet ms(table, xfree);
  std::vector<uint32_t> out(space.codes.size());
  int base = static_cast<int>(xfree.size());
  for (size_t i = 0; i < space.codes.size(); ++i) {
    uint32_t bits = ms(space.codes[i]);
    for (size_t k = 0; k < xdep.size(); ++k)
      if (table.eval(xdep[k], space.codes[i])) bits |= 1u << (base + k);
    out[i] = bits;
  }
  return out;
}

// trial states processed in chunks of this many through the batched kernel;
// bounds the amplitude-matrix memory at the largest grid points
constexpr int kChunk = 16;

// one chunk of trial states as a row-major matrix aligned with space.codes;
// state t's amplitudes are column t.  Each column reproduces
// random_state_in_A(space, seed) exactly.
struct ChunkMatrix {
  int T = 0;
  std::vector<cplx> amps;  // dim * T
};

ChunkMatrix make_chunk(const ConsistentSpace& space, uint64_t base_seed, int first, int T,
                       int stride = 1, int offset = 0) {
  size_t n = space.dim();
  ChunkMatrix m{T, std::vector<cplx>(n * static_cast<size_t>(T))};
  for (int t = 0; t < T; ++t) {
    Rng rng(mix_seed(base_seed, stride * (first + t) + offset));
    double n2 = 0.0;
    for (size_t i = 0; i < n; ++i) {
      cplx a(rng.gaussian(), rng.gaussian());
      n2 += std::norm(a);
      m.amps[i * T + t] = a;
    }
    double inv = 1.0 / std::sqrt(n2);
    for (size_t i = 0; i < n; ++i) m.amps[i * T + t] *= inv;
  }
  return m;
}

// class-restricted slice of a chunk as one batched input (bit < 0: everything)
struct SubsetBatch {
  std::vector<uint64_t> codes;
  std::vector<cplx> amps;  // codes.size() * T, row-major
};

SubsetBatch gather(const ConsistentSpace& space, const ChunkMatrix& m,
                   const std::vector<uint32_t>& cls, int bit) {
  int T = m.T;
  SubsetBatch sb;
  for (size_t i = 0; i < space.codes.size(); ++i)
    if (bit < 0 || (cls[i] >> bit & 1u)) sb.codes.push_back(space.codes[i]);
  sb.amps.resize(sb.codes.size() * static_cast<size_t>(T));
  size_t r = 0;
  for (size_t i = 0; i < space.codes.size(); ++i)
    if (bit < 0 || (cls[i] >> bit & 1u)) {
      const cplx* src = &m.amps[i * T];
      std::copy(src, src + T, &sb.amps[r * T]);
      ++r;
    }
  return sb;
}

// per-state squared class norms: out[k*T + t]
std::vector<double> class_norms2_batch(const ChunkMatrix& m, const std::vector<uint32_t>& cls,
                                       int n) {
  int T = m.T;
  std::vector<double> out(static_cast<size_t>(n) * T, 0.0);
  for (size_t i = 0; i < cls.size(); ++i) {
    uint32_t bits = cls[i];
    if (!bits) continue;
    const cplx* row = &m.amps[i * T];
    while (bits) {
      double* a = &out[static_cast<size_t>(__builtin_ctz(bits)) * T];
      for (int t = 0; t < T; ++t) a[t] += std::norm(row[t]);
      bits &= bits - 1;
    }
  }
  return out;
}

std::vector<double> batch_pass(const Encoding& enc, const SubsetBatch& in, int T, QueryKind kind,
                               const MaskSet& out, bool skip_diagonal) {
  return compressed_masked_norms_batch(
      enc, in.codes, in.amps, T, kind, [&](uint64_t code) { return out(code); }, out.size(),
      skip_diagonal);
}

double gamma_of(double num2, double denom2, bool quantum) {
  if (denom2 <= 1e-24) return 0.0;  // empty complement: zero by convention
  return quantum ? std::sqrt(num2 / denom2) : num2 / denom2;
}

// H with the function value at x set to y: replaces the recorded slots at x
// when present (they must hold "absent" at the states this is used on),
// otherwise appends into the first free slot
uint64_t history_with(const Encoding& enc, uint64_t h, int x, int y) {
  int k = enc.fill_count(h);
  bool found = false;
  for (int i = 0; i < k; ++i) {
    uint64_t slot = enc.slot_at(h, i);
    int sx, sy;
    enc.slot_decode(slot, sx, sy);
    if (sx == x) {
      h = h - slot * enc.hpow[i] + enc.slot_code(x, y) * enc.hpow[i];
      found = true;
    }
  }
  if (found) return h;
  return h + enc.slot_code(x, y) * enc.hpow[k];
}

// ---- predicate shorthands ----

struct Preds {
  Predicate Q = patom(Atom::CollQ);
  Predicate QQ = patom(Atom::CollQQ);
  Predicate H = patom(Atom::CollH);
  Predicate C = patom(Atom::CollC);
  Predicate X = patom(Atom::CollX);
  Predicate QorH = por(Q, H);
  Predicate QQorQH = por(QQ, pand(Q, H));
  Predicate HnC = pand(H, pnot(C));
  Predicate QnHnC = pand(Q, pand(pnot(H), pnot(C)));
  Predicate HorC = por(H, C);
  Predicate notHorC = pnot(HorC);
  Predicate QH = pand(Q, H);
  Predicate XH = pand(X, H);
  Predicate nXH = pand(pnot(X), H);
  Predicate preC = patom(Atom::PreC);
  Predicate preQnC = pand(patom(Atom::PreQ), pnot(patom(Atom::PreC)));
};

OracleParams point_params(const GridPoint& pt, int w_dim) {
  // one spare history slot so classical queries stay within capacity
  return OracleParams{pt.M, pt.N, pt.c + 1, w_dim};
}

// =============================================================================
// record-lemmas: the optimized per-term resampling rules against the literal
// uncompress-query-recompress composition, on every consistent basis state
// =============================================================================

std::vector<CheckResult> suite_record_lemmas(const SuiteOptions& o, const SuiteConstants&) {
  std::vector<GridPoint> grid = make_grid(o, {2, 3, 4}, {0, 1, 2});
  std::vector<std::vector<CheckResult>> per_point(grid.size());
  parallel_for(static_cast<int>(grid.size()), resolve_threads(o.threads), [&](int gi) {
    const GridPoint& pt = grid[gi];
    OracleParams params = point_params(pt, o.w_dim);
    ConsistentSpace space = enumerate_consistent_space(params, pt.c, pt.q);
    for (QueryKind kind : {QueryKind::Quantum, QueryKind::Classical}) {
      Check chk(kind == QueryKind::Quantum ? "quantum resample rule = composed map"
                                           : "classical resample rule = composed map");
      for (uint64_t code : space.codes) {
        SparseState b(params);
        b.terms.emplace_back(code, cplx(1.0, 0.0));
        SparseState fast = apply_compressed(b, kind, ApplyMode::Fastpath);
        SparseState comp = apply_compressed(b, kind, ApplyMode::Composed);
        chk.add(max_amp_diff(fast, comp), 0.0);
      }
      per_point[gi].push_back(finish("record-lemmas", pt, chk, o.tol));
    }
  });
  std::vector<CheckResult> out;
  for (auto& v : per_point) out.insert(out.end(), v.begin(), v.end());
  return out;
}

// =============================================================================
// indistinguishability + consistency: random hybrid programs, compressed run
// against the standard-picture run / per-term consistency bookkeeping
// =============================================================================

struct ProgSpec {
  OracleParams params;
  int n_queries = 0;
  uint64_t seed = 0;
};

std::vector<ProgSpec> program_corpus(const SuiteOptions& o) {
  static const std::pair<int, int> mns[] = {{2, 2}, {3, 2}, {2, 3}, {3, 3}, {4, 2},
                                            {2, 4}, {4, 3}, {3, 4}, {4, 4}};
  std::vector<ProgSpec> out;
  for (int i = 0; i < 50; ++i) {
    auto [M, N] = mns[i % 9];
    out.push_back({OracleParams{M, N, 4, 1}, 1 + i % 4, mix_seed(o.seed, 7000 + i)});
  }
  return out;
}

std::vector<CheckResult> suite_indistinguishability(const SuiteOptions& o, const SuiteConstants&) {
  std::vector<ProgSpec> corpus = program_corpus(o);
  std::vector<CheckResult> out(corpus.size());
  parallel_for(static_cast<int>(corpus.size()), resolve_threads(o.threads), [&](int i) {
    HybridProgram p = make_random_program(corpus[i].params, corpus[i].n_queries, corpus[i].seed);
    RunOptions ropts;
    ropts.keep_query_states = true;
    RunResult comp = run_program(p, ropts);
    ropts.picture = Picture::Standard;
    RunResult stan = run_program(p, ropts);
    Check chk("uncompressed trajectory matches the standard picture");
    for (size_t t = 0; t < comp.after_query.size(); ++t) {
      SparseState diff = lincomb(cplx(1.0, 0.0), apply_S_all(comp.after_query[t]),
                                 cplx(-1.0, 0.0), stan.after_query[t]);
      chk.add(norm(diff), 0.0);
    }
    GridPoint pt{p.params.M, p.params.N, p.classical_queries(), p.quantum_queries()};
    out[i] = finish("indistinguishability", pt, chk, o.tol);
    out[i].predicate += " [program " + std::to_string(i) + "]";
  });
  return out;
}

std::vector<CheckResult> suite_consistency(const SuiteOptions& o, const SuiteConstants&) {
  std::vector<ProgSpec> corpus = program_corpus(o);
  std::vector<CheckResult> out(corpus.size());
  parallel_for(static_cast<int>(corpus.size()), resolve_threads(o.threads), [&](int i) {
    HybridProgram p = make_random_program(corpus[i].params, corpus[i].n_queries, corpus[i].seed);
    RunOptions ropts;
    ropts.keep_query_states = true;
    RunResult comp = run_program(p, ropts);
    Check chk("support terms consistent with the running query counts");
    // query-kind sequence aligned with after_query
    std::vector<QueryKind> kinds;
    for (const Step& st : p.steps)
      if (st.kind == Step::Kind::Query) kinds.push_back(st.query);
    int ct = 0, qt = 0;
    long long violations = 0;
    for (size_t t = 0; t < comp.after_query.size(); ++t) {
      (kinds[t] == QueryKind::Classical ? ct : qt) += 1;
      for (const auto& term : comp.after_query[t].terms) {
        ++chk.trials;
        if (!is_consistent(decode(comp.after_query[t].enc, term.first), ct, qt)) ++violations;
      }
    }
    chk.maxv = static_cast<double>(violations);
    GridPoint pt{p.params.M, p.params.N, p.classical_queries(), p.quantum_queries()};
    out[i] = finish("consistency", pt, chk, o.tol);
    out[i].predicate += " [program " + std::to_string(i) + "]";
  });
  return out;
}

// =============================================================================
// ortho: maps that vanish identically on the consistent subspace
// =============================================================================

std::vector<CheckResult> suite_ortho(const SuiteOptions& o, const SuiteConstants&) {
  std::vector<GridPoint> grid = make_grid(o, {3, 4, 5}, {1, 2});
  std::vector<std::vector<CheckResult>> per_point(grid.size());
  parallel_for(static_cast<int>(grid.size()), resolve_threads(o.threads), [&](int gi) {
    const GridPoint& pt = grid[gi];
    OracleParams params = point_params(pt, o.w_dim);
    ConsistentSpace space = enumerate_consistent_space(params, pt.c, pt.q);
    PredTable table(space.enc);
    Preds P;

    enum { kC, kNotC, kNotQ, kNotQNotH, kNotH, kNXH, kNClasses };
    std::vector<Predicate> xfree = {P.C, pnot(P.C), pnot(P.Q), pand(pnot(P.Q), pnot(P.H)),
                                    pnot(P.H)};
    std::vector<Predicate> xdep = {P.nXH};
    std::vector<uint32_t> cls = class_bits(space, table, xfree, xdep);

    MaskSet outQ(table, {P.Q}), outNotC(table, {pnot(P.C)}), outC(table, {P.C});
    MaskSet outQQ(table, {P.QQ}), outQH(table, {P.QH}), outNotH(table, {pnot(P.H)});

    std::vector<Check> chks = {
        Check("||P_Q R^C P_!Q s||"),          Check("||P_!C R^C P_C s||"),
        Check("||P_!C R^Q P_C s||"),          Check("||P_C R^Q P_!C s||"),
        Check("||P_QQ R^Q P_!Q s||"),         Check("||P_QH R^Q P_!Q!H s||"),
        Check("||P_!H R^Q P_!X.H s||"),       Check("<R^C P_!X.H s1, R^C P_!H s2>"),
        Check("<R^C P_!C s1, R^C P_C s2>"),
    };
    uint64_t base_seed = mix_seed(o.seed, 100 + gi);
    for (int done = 0; done < o.trials; done += kChunk) {
      int T = std::min(kChunk, o.trials - done);
      ChunkMatrix c1 = make_chunk(space, base_seed, done, T, 2, 0);
      ChunkMatrix c2 = make_chunk(space, base_seed, done, T, 2, 1);
      SubsetBatch in_c = gather(space, c1, cls, kC);
      SubsetBatch in_nc = gather(space, c1, cls, kNotC);
      SubsetBatch in_nq = gather(space, c1, cls, kNotQ);
      SubsetBatch in_nqnh = gather(space, c1, cls, kNotQNotH);
      SubsetBatch in_nxh = gather(space, c1, cls, kNXH);
      auto add_pass = [&](Check& chk, const SubsetBatch& in, QueryKind kind, const MaskSet& out) {
        std::vector<double> r = batch_pass(space.enc, in, T, kind, out, false);
        for (int t = 0; t < T; ++t) chk.add(std::sqrt(r[t]), 0.0);
      };
      add_pass(chks[0], in_nq, QueryKind::Classical, outQ);
      add_pass(chks[1], in_c, QueryKind::Classical, outNotC);
      add_pass(chks[2], in_c, QueryKind::Quantum, outNotC);
      add_pass(chks[3], in_nc, QueryKind::Quantum, outC);
      add_pass(chks[4], in_nq, QueryKind::Quantum, outQQ);
      add_pass(chks[5], in_nqnh, QueryKind::Quantum, outQH);
      add_pass(chks[6], in_nxh, QueryKind::Quantum, outNotH);
      // inner products: the v side below is the smaller class of each pair
      SubsetBatch u_nh = gather(space, c2, cls, kNotH);
      std::vector<cplx> d1 = compressed_pair_dot_batch(space.enc, u_nh.codes, u_nh.amps,
                                                       in_nxh.codes, in_nxh.amps, T,
                                                       QueryKind::Classical);
      SubsetBatch v_c = gather(space, c2, cls, kC);
      std::vector<cplx> d2 = compressed_pair_dot_batch(space.enc, in_nc.codes, in_nc.amps,
                                                       v_c.codes, v_c.amps, T,
                                                       QueryKind::Classical);
      for (int t = 0; t < T; ++t) {
        chks[7].add(std::abs(d1[t]), 0.0);
        chks[8].add(std::abs(d2[t]), 0.0);
      }
    }
    for (const Check& c : chks) per_point[gi].push_back(finish("ortho", pt, c, o.tol));
  });
  std::vector<CheckResult> out;
  for (auto& v : per_point) out.insert(out.end(), v.begin(), v.end());
  return out;
}

// =============================================================================
// sampl: damping ratios Gamma against their proven bounds, plus the empirical
// per-query transition probabilities feeding the generic bounds
// =============================================================================

struct GammaEmp {
  // worst-case probability over false states that one revealed value makes the
  // predicate true; quantum reveals D(x), classical additionally records it
  std::vector<double> quantum, classical;
  long long states = 0;
};

GammaEmp empirical_gamma(const ConsistentSpace& space, PredTable& table,
                         const std::vector<Predicate>& preds) {
  const Encoding& enc = space.enc;
  const int M = enc.params.M, N = enc.params.N;
  MaskSet ms(table, preds);
  int n = static_cast<int>(preds.size());
  GammaEmp g;
  g.quantum.assign(n, 0.0);
  g.classical.assign(n, 0.0);
  std::vector<int> cntq(n), cntc(n);
  for (const auto& [h, d] : space.hd) {
    uint32_t truth = ms(enc.make(0, h, d));
    uint32_t false_bits = ~truth & ((n == 32) ? ~0u : ((1u << n) - 1));
    if (!false_bits) continue;
    ++g.states;
    for (int x = 0; x < M; ++x) {
      if (enc.dvalue(d, x) != kBot) continue;
      std::fill(cntq.begin(), cntq.end(), 0);
      std::fill(cntc.begin(), cntc.end(), 0);
      for (int y = 0; y < N; ++y) {
        uint64_t dy = enc.d_with(d, x, y);
        uint32_t tq = ms(enc.make(0, h, dy));
        uint32_t tc = ms(enc.make(0, history_with(enc, h, x, y), dy));
        for (int k = 0; k < n; ++k) {
          cntq[k] += tq >> k & 1u;
          cntc[k] += tc >> k & 1u;
        }
      }
      for (int k = 0; k < n; ++k) {
        if (!(false_bits >> k & 1u)) continue;
        g.quantum[k] = std::max(g.quantum[k], static_cast<double>(cntq[k]) / N);
        g.classical[k] = std::max(g.classical[k], static_cast<double>(cntc[k]) / N);
      }
    }
  }
  return g;
}

std::vector<CheckResult> suite_sampl(const SuiteOptions& o, const SuiteConstants& consts) {
  std::vector<GridPoint> grid = make_grid(o, {3, 4, 5}, {0, 1, 2});
  std::vector<std::vector<CheckResult>> per_point(grid.size());
  parallel_for(static_cast<int>(grid.size()), resolve_threads(o.threads), [&](int gi) {
    const GridPoint& pt = grid[gi];
    const double N = pt.N, c = pt.c, q = pt.q;
    const double fQ = consts.quantum_overlap_factor, fC = consts.classical_overlap_factor;
    OracleParams params = point_params(pt, o.w_dim);
    ConsistentSpace space = enumerate_consistent_space(params, pt.c, pt.q);
    PredTable table(space.enc);
    Preds P;

    // the five predicates the generic damping bounds instantiate
    std::vector<Predicate> hd_preds = {P.Q, P.QQ, P.H, P.QorH, P.QQorQH};
    const char* hd_names[] = {"CollQ", "CollQQ", "CollH", "CollQ+CollH", "CollQQ+CollQ.CollH"};
    double bound_gamma[] = {q / N, q / N, c / N, (c + q) / N, (c + q) / N};
    GammaEmp emp = empirical_gamma(space, table, hd_preds);

    enum {
      kNQ, kNQQ, kNH, kNQorH, kNQQorQH,   // complements (damping inputs)
      kHorC, kNotHorC,                     // the removal predicate and its complement
      kXH,                                 // x-dependent class
      kNClasses
    };
    std::vector<Predicate> xfree = {pnot(P.Q),      pnot(P.QQ), pnot(P.H), pnot(P.QorH),
                                    pnot(P.QQorQH), P.HorC,     P.notHorC};
    std::vector<Predicate> xdep = {P.XH};
    std::vector<uint32_t> cls = class_bits(space, table, xfree, xdep);

    MaskSet oQ(table, {P.Q}), oQQ(table, {P.QQ}), oH(table, {P.H});
    MaskSet oQorH(table, {P.QorH}), oQQorQH(table, {P.QQorQH});
    MaskSet oNotHorC(table, {P.notHorC}), oC(table, {P.C});

    // static checks: empirical transition probabilities against the claimed ones
    std::vector<CheckResult>& results = per_point[gi];
    double bound_gamma_c[] = {0.0, 0.0, q / N, q / N};  // CollH excluded classically
    int cls_idx[] = {0, 1, 3, 4};
    for (int k = 0; k < 5; ++k) {
      Check chk(std::string("empirical gamma^Q(") + hd_names[k] + ") <= claimed");
      chk.trials = emp.states;
      chk.maxv = emp.quantum[k] - bound_gamma[k];
      results.push_back(finish("sampl", pt, chk, o.tol));
    }
    for (int j = 0; j < 4; ++j) {
      int k = cls_idx[j];
      Check chk(std::string("empirical gamma^C(") + hd_names[k] + ") <= claimed");
      chk.trials = emp.states;
      chk.maxv = emp.classical[k] - bound_gamma_c[j];
      results.push_back(finish("sampl", pt, chk, o.tol));
    }

    struct QPass {
      int in;                // complement class bit (index into xfree)
      const MaskSet* out;    // predicate mask
      const Predicate* pred; // the predicate itself
      std::string name;
      double bound;          // claimed gamma parameter
      int emp;               // index into emp arrays, -1 = not covered
    };
    std::vector<QPass> qpasses = {
        {kNQ, &oQ, &P.Q, "CollQ", q / N, 0},
        {kNQQ, &oQQ, &P.QQ, "CollQQ", q / N, 1},
        {kNH, &oH, &P.H, "CollH", c / N, 2},
        {kNQorH, &oQorH, &P.QorH, "CollQ+CollH", (c + q) / N, 3},
        {kNQQorQH, &oQQorQH, &P.QQorQH, "CollQQ+CollQ.CollH", (c + q) / N, 4},
        {kHorC, &oNotHorC, &P.notHorC, "!(CollH+CollC)", c / N, -1},
    };
    // classical: only the predicates whose recorded transition cannot be faked
    // by copying a database value into the history
    std::vector<QPass> cpasses = {
        {kNQ, &oQ, &P.Q, "CollQ", 0.0, 0},
        {kNQQ, &oQQ, &P.QQ, "CollQQ", 0.0, 1},
        {kNQorH, &oQorH, &P.QorH, "CollQ+CollH", q / N, 3},
        {kNQQorQH, &oQQorQH, &P.QQorQH, "CollQQ+CollQ.CollH", q / N, 4},
        {kHorC, &oNotHorC, &P.notHorC, "!(CollH+CollC)", c / N, -1},
    };

    std::vector<Check> chks;
    for (const QPass& p : qpasses) {
      chks.emplace_back("Gamma^Q(" + p.name + ") <= sqrt(factor*gamma)");
      if (p.emp >= 0) chks.emplace_back("Gamma^Q(" + p.name + ") <= sqrt(factor*emp-gamma)");
    }
    for (const QPass& p : cpasses) {
      chks.emplace_back(p.bound == 0.0 ? "Gamma^C(" + p.name + ") = 0"
                                       : "Gamma^C(" + p.name + ") <= factor*gamma");
      if (p.emp >= 0) chks.emplace_back("Gamma^C(" + p.name + ") <= factor*emp-gamma");
    }
    chks.emplace_back("||P_H R^C P_X.H s||^2 <= (q/N)||P_X.H s||^2");
    chks.emplace_back("||P_C R^C P_!(H+C) s||^2 <= (factor*c/N)||P_!(H+C) s||^2");

    uint64_t base_seed = mix_seed(o.seed, 200 + gi);
    for (int done = 0; done < o.trials; done += kChunk) {
      int T = std::min(kChunk, o.trials - done);
      ChunkMatrix chunk = make_chunk(space, base_seed, done, T);
      std::vector<double> n2 = class_norms2_batch(chunk, cls, kNClasses);
      size_t ci = 0;
      for (const QPass& p : qpasses) {
        SubsetBatch in = gather(space, chunk, cls, p.in);
        std::vector<double> num2 = batch_pass(space.enc, in, T, QueryKind::Quantum, *p.out, true);
        for (int t = 0; t < T; ++t) {
          double gm = gamma_of(num2[t], n2[p.in * T + t], true);
          chks[ci].add(gm, std::sqrt(fQ * p.bound));
          if (p.emp >= 0) chks[ci + 1].add(gm, std::sqrt(fQ * emp.quantum[p.emp]));
        }
        ci += (p.emp >= 0) ? 2 : 1;
      }
      for (const QPass& p : cpasses) {
        SubsetBatch in = gather(space, chunk, cls, p.in);
        std::vector<double> num2 = batch_pass(space.enc, in, T, QueryKind::Classical, *p.out, true);
        for (int t = 0; t < T; ++t) {
          double gm = gamma_of(num2[t], n2[p.in * T + t], false);
          chks[ci].add(gm, p.bound == 0.0 ? 0.0 : fC * p.bound);
          if (p.emp >= 0) chks[ci + 1].add(gm, fC * emp.classical[p.emp]);
        }
        ci += (p.emp >= 0) ? 2 : 1;
      }
      SubsetBatch in_xh = gather(space, chunk, cls, kXH);
      std::vector<double> num_xh = batch_pass(space.enc, in_xh, T, QueryKind::Classical, oH, false);
      for (int t = 0; t < T; ++t) chks[ci].add(num_xh[t], (q / N) * n2[kXH * T + t]);
      ++ci;
      SubsetBatch in_nhc = gather(space, chunk, cls, kNotHorC);
      std::vector<double> num_hc = batch_pass(space.enc, in_nhc, T, QueryKind::Classical, oC, true);
      for (int t = 0; t < T; ++t) chks[ci].add(num_hc[t], (fC * c / N) * n2[kNotHorC * T + t]);
      ++ci;
    }

    // Adversarial column states: for sampled (h,d,x) columns, the superposition
    // over the database digit at x that maximizes the damping ratio (dominant
    // eigenvector of the transition Gram matrix).  Random states stay far from
    // the bounds; these approach them, so corrupting a bound constant is
    // actually caught.
    {
      const Encoding& enc = space.enc;
      MaskSet in_cls(table, xfree);
      size_t stride = std::max<size_t>(1, space.hd.size() / 60);
      for (size_t hdi = 0; hdi < space.hd.size(); hdi += stride) {
        auto [h, d] = space.hd[hdi];
        int x = -1;
        for (int xx = 0; xx < pt.M; ++xx)
          if (enc.dvalue(d, xx) == kBot) {
            x = xx;
            break;
          }
        if (x < 0) continue;
        uint64_t a = enc.alabel(x, 1, 0);  // p = 1: non-diagonal quantum branch
        // candidate digits whose (h,d') pair stays inside the enumerated space
        std::vector<uint64_t> cand;
        for (int z = kBot; z < pt.N; ++z) {
          uint64_t dz = enc.d_with(d, x, z);
          if (std::binary_search(space.hd.begin(), space.hd.end(), std::make_pair(h, dz)))
            cand.push_back(enc.make(a, h, dz));
        }
        for (QueryKind kind : {QueryKind::Quantum, QueryKind::Classical}) {
          // compressed image of each candidate basis state
          std::vector<SparseState> img;
          for (uint64_t code : cand) {
            SparseState b(params);
            b.terms.emplace_back(code, cplx(1.0, 0.0));
            img.push_back(apply_compressed(b, kind));
          }
          const std::vector<QPass>& passes = (kind == QueryKind::Quantum) ? qpasses : cpasses;
          size_t ci = 0;
          for (const QPass& p : passes) {
            size_t c0 = (kind == QueryKind::Classical)
                            ? ci + 11  // classical checks follow the 11 quantum ones
                            : ci;
            ci += (p.emp >= 0) ? 2 : 1;
            // keep the candidates inside the damping input class
            std::vector<int> keep;
            for (size_t z = 0; z < cand.size(); ++z)
              if (in_cls(cand[z]) >> p.in & 1u) keep.push_back(static_cast<int>(z));
            if (keep.empty()) continue;
            int m = static_cast<int>(keep.size());
            std::vector<SparseState> proj;
            for (int z : keep) proj.push_back(project(img[z], *p.pred));
            std::vector<cplx> G(m * m);
            for (int i2 = 0; i2 < m; ++i2)
              for (int j2 = 0; j2 < m; ++j2) G[i2 * m + j2] = inner_product(proj[i2], proj[j2]);
            // dominant eigenvector by power iteration
            std::vector<cplx> v(m, cplx(1.0, 0.0)), w(m);
            for (int it = 0; it < 64; ++it) {
              for (int i2 = 0; i2 < m; ++i2) {
                cplx s(0.0, 0.0);
                for (int j2 = 0; j2 < m; ++j2) s += G[i2 * m + j2] * v[j2];
                w[i2] = s;
              }
              double nn = 0.0;
              for (int i2 = 0; i2 < m; ++i2) nn += std::norm(w[i2]);
              if (nn <= 1e-30) break;
              double inv = 1.0 / std::sqrt(nn);
              for (int i2 = 0; i2 < m; ++i2) v[i2] = w[i2] * inv;
            }
            SparseState s(params);
            for (int i2 = 0; i2 < m; ++i2) s.terms.emplace_back(cand[keep[i2]], v[i2]);
            s.canonicalize();
            double gm = progress_gamma(*p.pred, s, kind);
            if (kind == QueryKind::Quantum) {
              chks[c0].add(gm, std::sqrt(fQ * p.bound));
              if (p.emp >= 0) chks[c0 + 1].add(gm, std::sqrt(fQ * emp.quantum[p.emp]));
            } else {
              chks[c0].add(gm, p.bound == 0.0 ? 0.0 : fC * p.bound);
              if (p.emp >= 0) chks[c0 + 1].add(gm, fC * emp.classical[p.emp]);
            }
          }
        }
      }
    }
    for (const Check& chk : chks) results.push_back(finish("sampl", pt, chk, o.tol));
  });
  std::vector<CheckResult> out;
  for (auto& v : per_point) out.insert(out.end(), v.begin(), v.end());
  return out;
}

// =============================================================================
// progress-search: per-query growth of the preimage-search projections
// =============================================================================

std::vector<CheckResult> suite_progress_search(const SuiteOptions& o,
                                               const SuiteConstants& consts) {
  std::vector<GridPoint> grid = make_grid(o, {3, 4, 5}, {0, 1, 2});
  std::vector<std::vector<CheckResult>> per_point(grid.size());
  parallel_for(static_cast<int>(grid.size()), resolve_threads(o.threads), [&](int gi) {
    const GridPoint& pt = grid[gi];
    const double N = pt.N;
    OracleParams params = point_params(pt, o.w_dim);
    ConsistentSpace space = enumerate_consistent_space(params, pt.c, pt.q);
    PredTable table(space.enc);
    Preds P;

    enum { kPreC, kPreQnC, kNClasses };
    std::vector<uint32_t> cls = class_bits(space, table, {P.preC, P.preQnC}, {});
    MaskSet oBoth(table, {P.preC, P.preQnC});
    MaskSet oPreC(table, {P.preC});

    std::vector<Check> chks = {
        Check("Delta^Q(PreC) = 0"),
        Check("Delta^Q(PreQ.!PreC) <= sqrt(factor/N)"),
        Check("Delta^C(PreC) <= 2||P_PreC R^C P_PreQ.!PreC s||^2 + 4/N"),
        Check("Delta^C(PreQ.!PreC) <= -||P_PreC R^C P_PreQ.!PreC s||^2"),
    };
    uint64_t base_seed = mix_seed(o.seed, 300 + gi);
    for (int done = 0; done < o.trials; done += kChunk) {
      int T = std::min(kChunk, o.trials - done);
      ChunkMatrix chunk = make_chunk(space, base_seed, done, T);
      SubsetBatch full = gather(space, chunk, cls, -1);
      SubsetBatch in_qnc = gather(space, chunk, cls, kPreQnC);
      std::vector<double> n2 = class_norms2_batch(chunk, cls, kNClasses);
      std::vector<double> aq = batch_pass(space.enc, full, T, QueryKind::Quantum, oBoth, false);
      std::vector<double> ac = batch_pass(space.enc, full, T, QueryKind::Classical, oBoth, false);
      std::vector<double> cross =
          batch_pass(space.enc, in_qnc, T, QueryKind::Classical, oPreC, true);
      for (int t = 0; t < T; ++t) {
        chks[0].add(std::abs(std::sqrt(aq[kPreC * T + t]) - std::sqrt(n2[kPreC * T + t])), 0.0);
        chks[1].add(std::sqrt(aq[kPreQnC * T + t]) - std::sqrt(n2[kPreQnC * T + t]),
                    std::sqrt(consts.quantum_overlap_factor / N));
        chks[2].add(ac[kPreC * T + t] - n2[kPreC * T + t], 2.0 * cross[t] + 4.0 / N);
        chks[3].add(ac[kPreQnC * T + t] - n2[kPreQnC * T + t], -cross[t]);
      }
    }
    for (const Check& chk : chks) per_point[gi].push_back(finish("progress-search", pt, chk, o.tol));
  });
  std::vector<CheckResult> out;
  for (auto& v : per_point) out.insert(out.end(), v.begin(), v.end());
  return out;
}

// =============================================================================
// progress-collision: per-query growth of the collision projections
// =============================================================================

std::vector<CheckResult> suite_progress_collision(const SuiteOptions& o, const SuiteConstants&) {
  std::vector<GridPoint> grid = make_grid(o, {3, 4, 5}, {0, 1, 2});
  std::vector<std::vector<CheckResult>> per_point(grid.size());
  parallel_for(static_cast<int>(grid.size()), resolve_threads(o.threads), [&](int gi) {
    const GridPoint& pt = grid[gi];
    const double N = pt.N, c = pt.c, q = pt.q;
    OracleParams params = point_params(pt, o.w_dim);
    ConsistentSpace space = enumerate_consistent_space(params, pt.c, pt.q);
    PredTable table(space.enc);
    Preds P;

    enum { kC, kHnC, kQnHnC, kQ, kQQ, kH, kQorH, kQQorQH, kQH, kNClasses };
    std::vector<Predicate> xfree = {P.C, P.HnC, P.QnHnC, P.Q,  P.QQ,
                                    P.H, P.QorH, P.QQorQH, P.QH};
    std::vector<uint32_t> cls = class_bits(space, table, xfree, {});
    // the full-pass mask order matches the class order for the first 8 entries
    MaskSet oFull(table, {P.C, P.HnC, P.QnHnC, P.Q, P.QQ, P.H, P.QorH, P.QQorQH});
    MaskSet oC(table, {P.C}), oHnC(table, {P.HnC});

    std::vector<Check> chks = {
        Check("Delta^Q(CollC) = 0"),
        Check("Delta^Q(CollH.!CollC) <= sqrt(10c/N)"),
        Check("Delta^Q(CollQ.!CollH.!CollC) <= sqrt(20(c+q)/N)"),
        Check("Delta^Q(CollQ.!CollH.!CollC) <= sqrt(10c/N)+sqrt(10q/N)"),
        Check("Delta^C(CollC) <= 2*crossHC + 4c/N"),
        Check("Delta^C(CollH.!CollC) <= -crossHC + 2*crossQH + 2sqrt(q/N)||P_Q s|| + 7q/N"),
        Check("Delta^C(CollQ.!CollH.!CollC) <= -crossQH + sqrt(8c/N)||P_Q s||||P_QH s|| + 2c/N"),
        Check("Delta^Q(CollQ) <= sqrt(10q/N)"),
        Check("Delta^Q(CollQQ) <= sqrt(10q/N)||P_Q s||"),
        Check("Delta^Q(CollQ+CollH) <= sqrt(10(c+q)/N)"),
        Check("Delta^Q(CollQQ+CollQ.CollH) <= sqrt(10(c+q)/N)||P_Q s|| + sqrt(10q/N)||P_H s||"),
        Check("Delta^C(CollQ) <= 0"),
        Check("Delta^C(CollQQ) <= 0"),
        Check("Delta^C(CollQ+CollH) <= sqrt(8q/N)||P_Q s|| + 5q/N"),
        Check("Delta^C(CollQQ+CollQ.CollH) <= (5q/N)||P_Q s||^2 + sqrt(3q/N)||P_QQ s||||P_Q s||"),
    };
    uint64_t base_seed = mix_seed(o.seed, 400 + gi);
    for (int done = 0; done < o.trials; done += kChunk) {
      int T = std::min(kChunk, o.trials - done);
      ChunkMatrix chunk = make_chunk(space, base_seed, done, T);
      SubsetBatch full = gather(space, chunk, cls, -1);
      SubsetBatch in_hnc = gather(space, chunk, cls, kHnC);
      SubsetBatch in_qnhnc = gather(space, chunk, cls, kQnHnC);
      std::vector<double> n2 = class_norms2_batch(chunk, cls, kNClasses);
      std::vector<double> baq = batch_pass(space.enc, full, T, QueryKind::Quantum, oFull, false);
      std::vector<double> bac = batch_pass(space.enc, full, T, QueryKind::Classical, oFull, false);
      std::vector<double> bHC = batch_pass(space.enc, in_hnc, T, QueryKind::Classical, oC, true);
      std::vector<double> bQH =
          batch_pass(space.enc, in_qnhnc, T, QueryKind::Classical, oHnC, true);
      for (int t = 0; t < T; ++t) {
      double crossHC = bHC[t];
      double crossQH = bQH[t];
      auto dq = [&](int k) { return std::sqrt(baq[k * T + t]) - std::sqrt(n2[k * T + t]); };
      auto dc = [&](int k) { return bac[k * T + t] - n2[k * T + t]; };
      double nq = std::sqrt(n2[kQ * T + t]), nh = std::sqrt(n2[kH * T + t]);
      double nqq = std::sqrt(n2[kQQ * T + t]), nqh = std::sqrt(n2[kQH * T + t]);
      chks[0].add(std::abs(dq(kC)), 0.0);
      chks[1].add(dq(kHnC), std::sqrt(10.0 * c / N));
      chks[2].add(dq(kQnHnC), std::sqrt(20.0 * (c + q) / N));
      chks[3].add(dq(kQnHnC), std::sqrt(10.0 * c / N) + std::sqrt(10.0 * q / N));
      chks[4].add(dc(kC), 2.0 * crossHC + 4.0 * c / N);
      chks[5].add(dc(kHnC), -crossHC + 2.0 * crossQH + 2.0 * std::sqrt(q / N) * nq + 7.0 * q / N);
      chks[6].add(dc(kQnHnC), -crossQH + std::sqrt(8.0 * c / N) * nq * nqh + 2.0 * c / N);
      chks[7].add(dq(kQ), std::sqrt(10.0 * q / N));
      chks[8].add(dq(kQQ), std::sqrt(10.0 * q / N) * nq);
      chks[9].add(dq(kQorH), std::sqrt(10.0 * (c + q) / N));
      chks[10].add(dq(kQQorQH), std::sqrt(10.0 * (c + q) / N) * nq + std::sqrt(10.0 * q / N) * nh);
      chks[11].add(dc(kQ), 0.0);
      chks[12].add(dc(kQQ), 0.0);
      chks[13].add(dc(kQorH), std::sqrt(8.0 * q / N) * nq + 5.0 * q / N);
      chks[14].add(dc(kQQorQH), (5.0 * q / N) * nq * nq + std::sqrt(3.0 * q / N) * nqq * nq);
      }
    }
    for (const Check& chk : chks)
      per_point[gi].push_back(finish("progress-collision", pt, chk, o.tol));
  });
  std::vector<CheckResult> out;
  for (auto& v : per_point) out.insert(out.end(), v.begin(), v.end());
  return out;
}

// =============================================================================
// recurrence: potential growth along built-in trajectories
// =============================================================================

struct RecProg {
  const char* name;
  int M, N, c, q;
};

std::vector<CheckResult> suite_recurrence(const SuiteOptions& o, const SuiteConstants&) {
  static const RecProg defaults[] = {
      {"classical-search", 4, 4, 3, 0},  {"classical-search", 3, 2, 2, 0},
      {"grover", 4, 2, 0, 2},            {"grover", 4, 4, 0, 2},
      {"hybrid-search", 4, 4, 2, 2},     {"hybrid-search", 4, 2, 1, 2},
      {"classical-birthday", 4, 4, 3, 0}, {"classical-birthday", 3, 2, 3, 0},
      {"bht-hybrid", 4, 4, 1, 2},        {"bht-hybrid", 4, 4, 2, 2},
      {"bht-hybrid", 4, 3, 2, 2},
  };
  std::vector<RecProg> progs(std::begin(defaults), std::end(defaults));
  std::vector<CheckResult> out(progs.size());
  parallel_for(static_cast<int>(progs.size()), resolve_threads(o.threads), [&](int i) {
    const RecProg& rp = progs[i];
    HybridProgram p = make_builtin(rp.name, rp.M, rp.N, rp.c, rp.q);
    bool collision = p.output.kind == OutputKind::CollisionFromHistory;
    double N = p.params.N;
    int ct = p.classical_queries(), qt = p.quantum_queries();
    std::vector<TraceRow> rows = trace_program(p, o.tol);
    Check chk(std::string(rp.name) + (collision ? " collision potential recurrence"
                                                : " search potential recurrence"));
    double prev = 0.0;
    for (const TraceRow& r : rows) {
      double viol;
      if (collision) {
        // classical rows carry no explicit constant; only quantum rows are checked
        viol = (r.kind == QueryKind::Quantum)
                   ? std::sqrt(r.psi) - (std::sqrt(prev) + 10.0 * std::sqrt((ct + qt) / N))
                   : 0.0;
      } else if (r.kind == QueryKind::Classical) {
        viol = r.psi - (prev + 4.0 / N);
      } else {
        viol = std::sqrt(r.psi) - (std::sqrt(prev) + 7.0 / std::sqrt(N));
      }
      chk.add(viol, 0.0);
      prev = r.psi;
    }
    GridPoint pt{rp.M, rp.N, ct, qt};
    out[i] = finish("recurrence", pt, chk, o.tol);
  });
  return out;
}

// =============================================================================
// hdpred: exhaustive classification of the history-database predicates
// =============================================================================

std::vector<CheckResult> suite_hdpred(const SuiteOptions& o, const SuiteConstants&) {
  GridPoint pt = o.has_point() ? GridPoint{o.M, o.N, o.c, o.q} : GridPoint{3, 3, 1, 2};
  OracleParams params = point_params(pt, o.w_dim);
  Preds P;
  std::vector<CheckResult> out;
  struct Case {
    Predicate pred;
    const char* name;
    bool expect_pass;
  };
  std::vector<Case> cases = {
      {P.Q, "CollQ is a history-database predicate", true},
      {P.QQ, "CollQQ is a history-database predicate", true},
      {P.H, "CollH is a history-database predicate", true},
      {P.QorH, "CollQ+CollH is a history-database predicate", true},
      {P.QQorQH, "CollQQ+CollQ.CollH is a history-database predicate", true},
      {P.notHorC, "!(CollH+CollC) fails database monotonicity", false},
  };
  for (const Case& cs : cases) {
    HdPredReport rep = check_hd_predicate(cs.pred, params, pt.c, pt.q);
    Check chk(cs.name);
    bool ok = cs.expect_pass ? rep.pass()
                             : (!rep.database_monotone && rep.monotone_counterexample.has_value());
    chk.add(ok ? 0.0 : 1.0, 0.0);
    out.push_back(finish("hdpred", pt, chk, o.tol));
  }
  // the query-register predicate is outside the definition's scope; checked at
  // a fixed small point where a counterexample is known to exist
  GridPoint xpt{3, 2, 1, 2};
  HdPredReport xrep = check_hd_predicate(P.X, point_params(xpt, 1), xpt.c, xpt.q);
  Check xchk("CollX is not a history-database predicate");
  xchk.add(xrep.pass() ? 1.0 : 0.0, 0.0);
  out.push_back(finish("hdpred", xpt, xchk, o.tol));
  return out;
}

}  // namespace

// =============================================================================
// public entry points
// =============================================================================

std::vector<TraceRow> trace_program(const HybridProgram& p, double tol) {
  Preds P;
  bool collision = p.output.kind == OutputKind::CollisionFromHistory;
  double N = p.params.N;
  int ct = p.classical_queries(), qt = p.quantum_queries();
  SparseState s = initial_state(p.params, Picture::Compressed);
  std::vector<TraceRow> rows;
  double prev = 0.0;
  int step = 0;
  for (const Step& st : p.steps) {
    if (st.kind == Step::Kind::Unitary) {
      s = apply_unitary(s, st.u);
      continue;
    }
    TraceRow r;
    r.step = ++step;
    r.kind = st.query;
    if (st.query == QueryKind::Classical) {
      if (collision) {
        r.cross_hc = cross_term(P.C, P.HnC, s, QueryKind::Classical);
        r.cross_qh = cross_term(P.HnC, P.QnHnC, s, QueryKind::Classical);
      } else {
        r.cross_hc = cross_term(P.preC, P.preQnC, s, QueryKind::Classical);
      }
    }
    s = apply_compressed(s, st.query);
    if (collision) {
      r.norm_c = norm2(project(s, P.C));
      r.norm_h_not_c = norm2(project(s, P.HnC));
      r.norm_q_not_h_not_c = norm2(project(s, P.QnHnC));
      r.psi = r.norm_c + 2.0 * r.norm_h_not_c + 4.0 * r.norm_q_not_h_not_c;
      r.recurrence_ok = (st.query == QueryKind::Classical) ||
                        std::sqrt(r.psi) <=
                            std::sqrt(prev) + 10.0 * std::sqrt((ct + qt) / N) + tol;
    } else {
      r.norm_c = norm2(project(s, P.preC));
      r.norm_q_not_h_not_c = norm2(project(s, P.preQnC));
      r.psi = r.norm_c + 2.0 * r.norm_q_not_h_not_c;
      r.recurrence_ok = (st.query == QueryKind::Classical)
                            ? r.psi <= prev + 4.0 / N + tol
                            : std::sqrt(r.psi) <= std::sqrt(prev) + 7.0 / std::sqrt(N) + tol;
    }
    r.delta = r.psi - prev;
    prev = r.psi;
    rows.push_back(r);
  }
  return rows;
}

std::vector<std::string> suite_names() {
  return {"record-lemmas", "indistinguishability", "consistency",        "ortho",     "sampl",
          "progress-search", "progress-collision",  "recurrence",        "hdpred"};
}

std::vector<CheckResult> run_suite(const std::string& name, const SuiteOptions& opts,
                                   const SuiteConstants& consts) {
  if (name == "record-lemmas") return suite_record_lemmas(opts, consts);
  if (name == "indistinguishability") return suite_indistinguishability(opts, consts);
  if (name == "consistency") return suite_consistency(opts, consts);
  if (name == "ortho") return suite_ortho(opts, consts);
  if (name == "sampl") return suite_sampl(opts, consts);
  if (name == "progress-search") return suite_progress_search(opts, consts);
  if (name == "progress-collision") return suite_progress_collision(opts, consts);
  if (name == "recurrence") return suite_recurrence(opts, consts);
  if (name == "hdpred") return suite_hdpred(opts, consts);
  throw ParamError("unknown suite: " + name);
}

bool all_pass(const std::vector<CheckResult>& results) {
  for (const CheckResult& r : results)
    if (!r.pass && r.skip_reason.empty()) return false;
  return true;
}

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out.push_back('\\');
    out.push_back(ch);
  }
  return out;
}

}  // namespace

std::string report_json(const std::vector<CheckResult>& results) {
  std::string out = "[\n";
  for (size_t i = 0; i < results.size(); ++i) {
    const CheckResult& r = results[i];
    out += "  {\"suite\":\"" + json_escape(r.suite) + "\",\"predicate\":\"" +
           json_escape(r.predicate) + "\",\"params\":{\"M\":" + std::to_string(r.M) +
           ",\"N\":" + std::to_string(r.N) + ",\"c\":" + std::to_string(r.c) +
           ",\"q\":" + std::to_string(r.q) + "},\"trials\":" + std::to_string(r.trials) +
           ",\"max_lhs_minus_rhs\":" + fmt17(r.max_lhs_minus_rhs) +
           ",\"pass\":" + (r.pass ? "true" : "false");
    if (!r.skip_reason.empty()) out += ",\"skip_reason\":\"" + json_escape(r.skip_reason) + "\"";
    out += i + 1 < results.size() ? "},\n" : "}\n";
  }
  out += "]\n";
  return out;
}

}  // namespace hco
