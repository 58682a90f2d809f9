#include "hco/programs.hpp"

#include <algorithm>
#include <cmath>

#include "hco/rng.hpp"

namespace hco {

namespace {

constexpr double kUnitaryTol = 1e-9;

}  // namespace

void verify_unitary(const AUnitary& u) {
  switch (u.kind) {
    case AUnitary::Kind::Permutation: {
      if (u.perm.size() != u.a_dim) throw ParamError("permutation size mismatch");
      std::vector<char> seen(u.a_dim, 0);
      for (uint64_t t : u.perm) {
        if (t >= u.a_dim || seen[t]) throw ParamError("permutation is not a bijection");
        seen[t] = 1;
      }
      return;
    }
    case AUnitary::Kind::Diagonal: {
      if (u.phases.size() != u.a_dim) throw ParamError("diagonal size mismatch");
      for (const cplx& z : u.phases)
        if (std::abs(std::abs(z) - 1.0) > kUnitaryTol)
          throw ParamError("diagonal entry is not unit modulus");
      return;
    }
    case AUnitary::Kind::Block: {
      size_t k = u.labels.size();
      if (u.mat.size() != k) throw ParamError("block matrix size mismatch");
      std::vector<char> seen(u.a_dim, 0);
      for (uint64_t l : u.labels) {
        if (l >= u.a_dim || seen[l]) throw ParamError("block labels must be distinct");
        seen[l] = 1;
      }
      for (size_t i = 0; i < k; ++i) {
        if (u.mat[i].size() != k) throw ParamError("block matrix is not square");
        for (size_t j = 0; j < k; ++j) {
          cplx dot(0.0, 0.0);
          for (size_t r = 0; r < k; ++r) dot += std::conj(u.mat[r][i]) * u.mat[r][j];
          cplx want = (i == j) ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
          if (std::abs(dot - want) > kUnitaryTol)
            throw ParamError("block matrix is not unitary");
        }
      }
      return;
    }
  }
}

AUnitary a_permutation(std::vector<uint64_t> perm) {
  AUnitary u;
  u.kind = AUnitary::Kind::Permutation;
  u.a_dim = perm.size();
  u.perm = std::move(perm);
  verify_unitary(u);
  return u;
}

AUnitary a_diagonal(std::vector<cplx> phases) {
  AUnitary u;
  u.kind = AUnitary::Kind::Diagonal;
  u.a_dim = phases.size();
  u.phases = std::move(phases);
  verify_unitary(u);
  return u;
}

AUnitary a_block(uint64_t a_dim, std::vector<uint64_t> labels,
                 std::vector<std::vector<cplx>> mat) {
  AUnitary u;
  u.kind = AUnitary::Kind::Block;
  u.a_dim = a_dim;
  u.labels = std::move(labels);
  u.mat = std::move(mat);
  verify_unitary(u);
  return u;
}

AUnitary a_adjoint(const AUnitary& u) {
  AUnitary out = u;
  switch (u.kind) {
    case AUnitary::Kind::Permutation:
      for (uint64_t a = 0; a < u.a_dim; ++a) out.perm[u.perm[a]] = a;
      break;
    case AUnitary::Kind::Diagonal:
      for (cplx& z : out.phases) z = std::conj(z);
      break;
    case AUnitary::Kind::Block:
      for (size_t i = 0; i < u.labels.size(); ++i)
        for (size_t j = 0; j < u.labels.size(); ++j) out.mat[i][j] = std::conj(u.mat[j][i]);
      break;
  }
  return out;
}

SparseState apply_unitary(const SparseState& s, const AUnitary& u) {
  const Encoding& enc = s.enc;
  if (u.a_dim != enc.a_dim) throw ParamError("unitary dimension does not match the registers");
  SparseState out(s.params);
  switch (u.kind) {
    case AUnitary::Kind::Diagonal: {
      out.terms = s.terms;
      for (auto& t : out.terms) t.second *= u.phases[enc.alabel_of(t.first)];
      return out;
    }
    case AUnitary::Kind::Permutation: {
      // terms are grouped by label (top code field): relocate whole groups
      struct Group {
        uint64_t target;
        size_t begin, end;
      };
      std::vector<Group> groups;
      size_t i = 0;
      while (i < s.terms.size()) {
        uint64_t a = enc.alabel_of(s.terms[i].first);
        size_t j = i;
        while (j < s.terms.size() && enc.alabel_of(s.terms[j].first) == a) ++j;
        groups.push_back({u.perm[a], i, j});
        i = j;
      }
      std::sort(groups.begin(), groups.end(),
                [](const Group& a, const Group& b) { return a.target < b.target; });
      out.terms.reserve(s.terms.size());
      for (const Group& g : groups) {
        uint64_t src = enc.alabel_of(s.terms[g.begin].first);
        int64_t shift = (static_cast<int64_t>(g.target) - static_cast<int64_t>(src)) *
                        static_cast<int64_t>(enc.drhr);
        for (size_t t = g.begin; t < g.end; ++t)
          out.terms.emplace_back(s.terms[t].first + shift, s.terms[t].second);
      }
      return out;
    }
    case AUnitary::Kind::Block: {
      std::vector<int32_t> col(enc.a_dim, -1);
      for (size_t j = 0; j < u.labels.size(); ++j) col[u.labels[j]] = static_cast<int32_t>(j);
      // nonzero entries per column, skipping exact zeros (register matrices
      // are typically block-sparse)
      std::vector<std::vector<std::pair<uint64_t, cplx>>> colnz(u.labels.size());
      for (size_t j = 0; j < u.labels.size(); ++j)
        for (size_t i = 0; i < u.labels.size(); ++i)
          if (u.mat[i][j] != cplx(0.0, 0.0)) colnz[j].emplace_back(u.labels[i], u.mat[i][j]);
      out.terms.reserve(s.terms.size() * 2);
      for (const auto& t : s.terms) {
        uint64_t a = enc.alabel_of(t.first);
        int32_t j = col[a];
        if (j < 0) {
          out.terms.push_back(t);
          continue;
        }
        uint64_t hd = t.first - a * enc.drhr;
        for (const auto& [ai, coef] : colnz[j])
          out.terms.emplace_back(hd + ai * enc.drhr, coef * t.second);
      }
      out.canonicalize();
      return out;
    }
  }
  return out;
}

AUnitary fourier_p(const Encoding& enc) {
  RootsTable roots(enc.params.N);
  int N = enc.params.N;
  double inv = 1.0 / std::sqrt(static_cast<double>(N));
  std::vector<uint64_t> labels;
  std::vector<std::vector<cplx>> mat(enc.a_dim, std::vector<cplx>(enc.a_dim, cplx(0.0, 0.0)));
  labels.reserve(enc.a_dim);
  for (uint64_t a = 0; a < enc.a_dim; ++a) labels.push_back(a);
  for (int x = 0; x < enc.params.M; ++x)
    for (int w = 0; w < enc.params.w_dim; ++w)
      for (int p = 0; p < N; ++p)
        for (int q = 0; q < N; ++q)
          mat[enc.alabel(x, q, w)][enc.alabel(x, p, w)] =
              roots.omega(static_cast<int64_t>(p) * q) * inv;
  return a_block(enc.a_dim, std::move(labels), std::move(mat));
}

AUnitary increment_x(const Encoding& enc) {
  std::vector<uint64_t> perm(enc.a_dim);
  for (int x = 0; x < enc.params.M; ++x)
    for (int p = 0; p < enc.params.N; ++p)
      for (int w = 0; w < enc.params.w_dim; ++w)
        perm[enc.alabel(x, p, w)] = enc.alabel((x + 1) % enc.params.M, p, w);
  return a_permutation(std::move(perm));
}

Step unitary_step(AUnitary u, std::string label) {
  Step s;
  s.kind = Step::Kind::Unitary;
  s.u = std::move(u);
  s.label = std::move(label);
  return s;
}

Step query_step(QueryKind k) {
  Step s;
  s.kind = Step::Kind::Query;
  s.query = k;
  s.label = (k == QueryKind::Quantum) ? "query-quantum" : "query-classical";
  return s;
}

int HybridProgram::classical_queries() const {
  int n = 0;
  for (const Step& s : steps)
    if (s.kind == Step::Kind::Query && s.query == QueryKind::Classical) ++n;
  return n;
}

int HybridProgram::quantum_queries() const {
  int n = 0;
  for (const Step& s : steps)
    if (s.kind == Step::Kind::Query && s.query == QueryKind::Quantum) ++n;
  return n;
}

SparseState initial_state(const OracleParams& params, Picture picture) {
  Encoding enc(params);
  uint64_t d = 0;
  for (int x = 0; x < params.M; ++x) d += static_cast<uint64_t>(params.N) * enc.dpow[x];
  SparseState s(params);
  s.terms.emplace_back(enc.make(enc.alabel(0, 0, 0), 0, d), cplx(1.0, 0.0));
  if (picture == Picture::Standard) s = apply_S_all(s);
  return s;
}

RunResult run_program(const HybridProgram& p, const RunOptions& opts) {
  if (p.classical_queries() > p.params.c_max)
    throw CapacityError("program makes more classical queries than there are history slots");
  RunResult out;
  SparseState cur = initial_state(p.params, opts.picture);
  for (const Step& step : p.steps) {
    if (step.kind == Step::Kind::Unitary) {
      cur = apply_unitary(cur, step.u);
    } else if (opts.picture == Picture::Compressed) {
      cur = apply_compressed(cur, step.query);
    } else {
      cur = (step.query == QueryKind::Quantum) ? apply_standard_quantum(cur)
                                               : apply_standard_classical(cur);
    }
    if (opts.prune_eps > 0.0) cur = prune(cur, opts.prune_eps);
    if (opts.keep_query_states && step.kind == Step::Kind::Query) out.after_query.push_back(cur);
  }
  out.final_state = std::move(cur);
  return out;
}

namespace {

bool output_accepts_history(const OutputSpec& spec, const History& h) {
  if (spec.kind == OutputKind::PreimageFromHistory) {
    for (const auto& r : h.filled)
      if (r.second == spec.target) return true;
    return false;
  }
  // CollisionFromHistory
  for (size_t i = 0; i < h.filled.size(); ++i)
    for (size_t j = i + 1; j < h.filled.size(); ++j)
      if (h.filled[i].first != h.filled[j].first && h.filled[i].second != kBot &&
          h.filled[i].second == h.filled[j].second)
        return true;
  return false;
}

}  // namespace

double success_probability(const HybridProgram& p, const SparseState& final_state,
                           Picture picture) {
  const Encoding& enc = final_state.enc;
  if (p.output.kind == OutputKind::ValueAtIndex) {
    SparseState full =
        (picture == Picture::Compressed) ? apply_S_all(final_state) : final_state;
    double acc = 0.0;
    for (const auto& t : full.terms)
      if (enc.dvalue(enc.d_of(t.first), p.output.index) == p.output.target)
        acc += std::norm(t.second);
    return acc;
  }
  // history decoders: the database uncompression cannot change the H marginal
  double acc = 0.0;
  uint64_t last_h = UINT64_MAX;
  bool last_ok = false;
  for (const auto& t : final_state.terms) {
    uint64_t h = enc.h_of(t.first);
    if (h != last_h) {
      last_h = h;
      last_ok = output_accepts_history(p.output, decode(enc, t.first).h);
    }
    if (last_ok) acc += std::norm(t.second);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// builtin algorithms
// ---------------------------------------------------------------------------

namespace {

// real orthogonal matrix sending basis vector 0 to the given unit vector
std::vector<std::vector<cplx>> householder_from_e0(const std::vector<double>& u) {
  size_t k = u.size();
  std::vector<double> v(k);
  v[0] = 1.0 - u[0];
  for (size_t i = 1; i < k; ++i) v[i] = -u[i];
  double n2 = 0.0;
  for (double d : v) n2 += d * d;
  std::vector<std::vector<cplx>> m(k, std::vector<cplx>(k, cplx(0.0, 0.0)));
  for (size_t i = 0; i < k; ++i) m[i][i] = cplx(1.0, 0.0);
  if (n2 < 1e-30) return m;
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j) m[i][j] -= cplx(2.0 * v[i] * v[j] / n2, 0.0);
  return m;
}

// lifts a matrix on a set of x values (at p = 0) to a block acting on those
// labels for every workspace value
AUnitary x_block(const Encoding& enc, const std::vector<int>& xs,
                 const std::vector<std::vector<cplx>>& xmat) {
  size_t k = xs.size();
  int wd = enc.params.w_dim;
  std::vector<uint64_t> labels;
  labels.reserve(k * wd);
  for (int w = 0; w < wd; ++w)
    for (int x : xs) labels.push_back(enc.alabel(x, 0, w));
  size_t kk = labels.size();
  std::vector<std::vector<cplx>> mat(kk, std::vector<cplx>(kk, cplx(0.0, 0.0)));
  for (int w = 0; w < wd; ++w)
    for (size_t i = 0; i < k; ++i)
      for (size_t j = 0; j < k; ++j) mat[w * k + i][w * k + j] = xmat[i][j];
  return a_block(enc.a_dim, std::move(labels), std::move(mat));
}

AUnitary prep_uniform_x(const Encoding& enc, int first_x) {
  int m = enc.params.M - first_x;
  std::vector<int> xs(m);
  for (int i = 0; i < m; ++i) xs[i] = first_x + i;
  std::vector<double> u(m, 1.0 / std::sqrt(static_cast<double>(m)));
  return x_block(enc, xs, householder_from_e0(u));
}

AUnitary diffusion_x(const Encoding& enc, int first_x) {
  int m = enc.params.M - first_x;
  std::vector<int> xs(m);
  for (int i = 0; i < m; ++i) xs[i] = first_x + i;
  std::vector<std::vector<cplx>> mat(m, std::vector<cplx>(m, cplx(2.0 / m, 0.0)));
  for (int i = 0; i < m; ++i) mat[i][i] -= cplx(1.0, 0.0);
  return x_block(enc, xs, mat);
}

AUnitary negate_p(const Encoding& enc) {
  std::vector<uint64_t> perm(enc.a_dim);
  int N = enc.params.N;
  for (int x = 0; x < enc.params.M; ++x)
    for (int p = 0; p < N; ++p)
      for (int w = 0; w < enc.params.w_dim; ++w)
        perm[enc.alabel(x, p, w)] = enc.alabel(x, (N - p) % N, w);
  return a_permutation(std::move(perm));
}

AUnitary swap_p01(const Encoding& enc) {
  std::vector<uint64_t> perm(enc.a_dim);
  for (int x = 0; x < enc.params.M; ++x)
    for (int p = 0; p < enc.params.N; ++p)
      for (int w = 0; w < enc.params.w_dim; ++w) {
        int p2 = (p == 0) ? 1 : (p == 1 ? 0 : p);
        perm[enc.alabel(x, p, w)] = enc.alabel(x, p2, w);
      }
  return a_permutation(std::move(perm));
}

AUnitary global_minus(const Encoding& enc) {
  return a_diagonal(std::vector<cplx>(enc.a_dim, cplx(-1.0, 0.0)));
}

// swaps the p register with workspace digit `slot` (base-N digits)
AUnitary stash_p_to_w(const Encoding& enc, int slot) {
  int N = enc.params.N;
  uint64_t div = 1;
  for (int i = 0; i < slot; ++i) div *= N;
  std::vector<uint64_t> perm(enc.a_dim);
  for (int x = 0; x < enc.params.M; ++x)
    for (int p = 0; p < N; ++p)
      for (int w = 0; w < enc.params.w_dim; ++w) {
        int digit = static_cast<int>((w / div) % N);
        int w2 = w + static_cast<int>((p - digit) * div);
        perm[enc.alabel(x, p, w)] = enc.alabel(x, digit, w2);
      }
  return a_permutation(std::move(perm));
}

// marks (phase -1) labels whose p equals one of the first `slots` workspace
// digits
AUnitary mark_p_in_w(const Encoding& enc, int slots) {
  int N = enc.params.N;
  std::vector<cplx> phases(enc.a_dim, cplx(1.0, 0.0));
  for (int x = 0; x < enc.params.M; ++x)
    for (int p = 0; p < N; ++p)
      for (int w = 0; w < enc.params.w_dim; ++w) {
        bool hit = false;
        int ww = w;
        for (int i = 0; i < slots; ++i) {
          if (ww % N == p) hit = true;
          ww /= N;
        }
        if (hit) phases[enc.alabel(x, p, w)] = cplx(-1.0, 0.0);
      }
  return a_diagonal(std::move(phases));
}

AUnitary mark_p0(const Encoding& enc) {
  std::vector<cplx> phases(enc.a_dim, cplx(1.0, 0.0));
  for (int x = 0; x < enc.params.M; ++x)
    for (int w = 0; w < enc.params.w_dim; ++w)
      phases[enc.alabel(x, 0, w)] = cplx(-1.0, 0.0);
  return a_diagonal(std::move(phases));
}

// compute P += D(x) (two oracle-free unitaries around one quantum query)
void push_additive_query(std::vector<Step>& steps, const AUnitary& f, const AUnitary& f_adj) {
  steps.push_back(unitary_step(f, "fourier"));
  steps.push_back(query_step(QueryKind::Quantum));
  steps.push_back(unitary_step(f_adj, "fourier-adj"));
}

// uncompute P -= D(x): conjugate the query by p-negation so the phase inverts
void push_additive_unquery(std::vector<Step>& steps, const AUnitary& f, const AUnitary& f_adj,
                           const AUnitary& neg) {
  steps.push_back(unitary_step(f, "fourier"));
  steps.push_back(unitary_step(neg, "negate-p"));
  steps.push_back(query_step(QueryKind::Quantum));
  steps.push_back(unitary_step(neg, "negate-p"));
  steps.push_back(unitary_step(f_adj, "fourier-adj"));
}

// quantum search phase over x >= first_x marking D(x) = 0, spending the
// given quantum query budget; assumes p = 0 on entry
void push_grover_phase(std::vector<Step>& steps, const Encoding& enc, int first_x, int q) {
  steps.push_back(unitary_step(prep_uniform_x(enc, first_x), "prep-uniform"));
  int N = enc.params.N;
  if (N == 2) {
    AUnitary swap = swap_p01(enc);
    AUnitary diff = diffusion_x(enc, first_x);
    AUnitary minus = global_minus(enc);
    for (int it = 0; it < q; ++it) {
      // with p = 1 the query phase is (-1)^{D(x)}; the global sign turns that
      // into marking D(x) = 0
      steps.push_back(unitary_step(swap, "set-p1"));
      steps.push_back(query_step(QueryKind::Quantum));
      steps.push_back(unitary_step(swap, "set-p0"));
      steps.push_back(unitary_step(minus, "global-sign"));
      steps.push_back(unitary_step(diff, "diffusion"));
    }
  } else {
    AUnitary f = fourier_p(enc);
    AUnitary f_adj = a_adjoint(f);
    AUnitary neg = negate_p(enc);
    AUnitary diff = diffusion_x(enc, first_x);
    AUnitary mark = mark_p0(enc);
    for (int it = 0; it < q / 2; ++it) {
      push_additive_query(steps, f, f_adj);
      steps.push_back(unitary_step(mark, "mark-zero"));
      push_additive_unquery(steps, f, f_adj, neg);
      steps.push_back(unitary_step(diff, "diffusion"));
    }
  }
}

int ipow(int b, int e) {
  int r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

HybridProgram make_classical_search(int M, int N, int c) {
  if (c > M) throw ParamError("classical search needs c <= M distinct lookups");
  HybridProgram p;
  p.name = "classical-search";
  p.params = OracleParams{M, N, c, 1};
  Encoding enc(p.params);
  AUnitary inc = increment_x(enc);
  for (int i = 0; i < c; ++i) {
    p.steps.push_back(query_step(QueryKind::Classical));
    if (i + 1 < c) p.steps.push_back(unitary_step(inc, "next-x"));
  }
  p.output = OutputSpec{OutputKind::PreimageFromHistory, 0, 0};
  return p;
}

HybridProgram make_classical_birthday(int M, int N, int c) {
  HybridProgram p = make_classical_search(M, N, c);
  p.name = "classical-birthday";
  p.output = OutputSpec{OutputKind::CollisionFromHistory, 0, 0};
  return p;
}

HybridProgram make_grover(int M, int N, int q) {
  HybridProgram p;
  p.name = "grover";
  p.params = OracleParams{M, N, 1, 1};
  Encoding enc(p.params);
  push_grover_phase(p.steps, enc, 0, q);
  // record the candidate; the answer is read off the history
  p.steps.push_back(query_step(QueryKind::Classical));
  p.output = OutputSpec{OutputKind::PreimageFromHistory, 0, 0};
  return p;
}

HybridProgram make_hybrid_search(int M, int N, int c, int q) {
  if (c >= M) throw ParamError("hybrid search needs c < M");
  HybridProgram p;
  p.name = "hybrid-search";
  p.params = OracleParams{M, N, c + 1, 1};
  Encoding enc(p.params);
  AUnitary inc = increment_x(enc);
  for (int i = 0; i < c; ++i) {
    p.steps.push_back(query_step(QueryKind::Classical));
    p.steps.push_back(unitary_step(inc, "next-x"));
  }
  push_grover_phase(p.steps, enc, c, q);
  p.steps.push_back(query_step(QueryKind::Classical));
  p.output = OutputSpec{OutputKind::PreimageFromHistory, 0, 0};
  return p;
}

HybridProgram make_bht(int M, int N, int c, int q, bool convert_cq) {
  int collect = c + (convert_cq ? q / 2 : 0);
  int grover_budget = convert_cq ? 0 : q;
  if (collect >= M) throw ParamError("collision collection needs c < M lookups");
  HybridProgram p;
  p.name = "bht-hybrid";
  p.params = OracleParams{M, N, collect + 1, ipow(N, collect)};
  Encoding enc(p.params);
  AUnitary inc = increment_x(enc);
  AUnitary f = fourier_p(enc);
  AUnitary f_adj = a_adjoint(f);
  for (int i = 0; i < collect; ++i) {
    // lookup leaves D(x) in the p register, then it is stashed in workspace
    // digit i so later marking can compare against it
    p.steps.push_back(unitary_step(f, "fourier"));
    p.steps.push_back(query_step(QueryKind::Classical));
    p.steps.push_back(unitary_step(f_adj, "fourier-adj"));
    p.steps.push_back(unitary_step(stash_p_to_w(enc, i), "stash-value"));
    p.steps.push_back(unitary_step(inc, "next-x"));
  }
  p.steps.push_back(unitary_step(prep_uniform_x(enc, collect), "prep-uniform"));
  if (grover_budget >= 2) {
    AUnitary neg = negate_p(enc);
    AUnitary diff = diffusion_x(enc, collect);
    AUnitary mark = mark_p_in_w(enc, collect);
    for (int it = 0; it < grover_budget / 2; ++it) {
      push_additive_query(p.steps, f, f_adj);
      p.steps.push_back(unitary_step(mark, "mark-collected"));
      push_additive_unquery(p.steps, f, f_adj, neg);
      p.steps.push_back(unitary_step(diff, "diffusion"));
    }
  }
  p.steps.push_back(query_step(QueryKind::Classical));
  p.output = OutputSpec{OutputKind::CollisionFromHistory, 0, 0};
  return p;
}

HybridProgram make_random_program(const OracleParams& params, int n_queries, uint64_t seed) {
  HybridProgram p;
  p.name = "random";
  p.params = params;
  Encoding enc(params);
  Rng rng(mix_seed(seed, 0x9e3779b97f4a7c15ull));
  int classical_left = params.c_max;

  auto random_block = [&]() {
    int k = 2 + static_cast<int>(rng.below(3));
    if (static_cast<uint64_t>(k) > enc.a_dim) k = static_cast<int>(enc.a_dim);
    std::vector<uint64_t> labels;
    while (static_cast<int>(labels.size()) < k) {
      uint64_t l = rng.below(enc.a_dim);
      if (std::find(labels.begin(), labels.end(), l) == labels.end()) labels.push_back(l);
    }
    std::sort(labels.begin(), labels.end());
    // Gram-Schmidt on a complex gaussian matrix
    std::vector<std::vector<cplx>> m(k, std::vector<cplx>(k));
    for (int j = 0; j < k; ++j) {
      for (int i = 0; i < k; ++i) m[i][j] = cplx(rng.gaussian(), rng.gaussian());
      for (int prev = 0; prev < j; ++prev) {
        cplx dot(0.0, 0.0);
        for (int i = 0; i < k; ++i) dot += std::conj(m[i][prev]) * m[i][j];
        for (int i = 0; i < k; ++i) m[i][j] -= dot * m[i][prev];
      }
      double n2 = 0.0;
      for (int i = 0; i < k; ++i) n2 += std::norm(m[i][j]);
      double inv = 1.0 / std::sqrt(n2);
      for (int i = 0; i < k; ++i) m[i][j] *= inv;
    }
    return a_block(enc.a_dim, std::move(labels), std::move(m));
  };

  for (int qi = 0; qi < n_queries; ++qi) {
    p.steps.push_back(unitary_step(random_block(), "random-block"));
    p.steps.push_back(unitary_step(random_block(), "random-block"));
    bool classical = classical_left > 0 && rng.below(2) == 0;
    if (classical) --classical_left;
    p.steps.push_back(query_step(classical ? QueryKind::Classical : QueryKind::Quantum));
  }
  p.steps.push_back(unitary_step(random_block(), "random-block"));
  p.output = OutputSpec{OutputKind::PreimageFromHistory, 0, 0};
  return p;
}

HybridProgram make_builtin(const std::string& name, int M, int N, int c, int q,
                           bool convert_cq) {
  if (name == "classical-search") return make_classical_search(M, N, c);
  if (name == "classical-birthday") return make_classical_birthday(M, N, c);
  if (name == "grover") return make_grover(M, N, q);
  if (name == "hybrid-search") return make_hybrid_search(M, N, c, q);
  if (name == "bht-hybrid") return make_bht(M, N, c, q, convert_cq);
  throw ParamError("unknown algorithm: " + name);
}

}  // namespace hco
