#include "hco/success.hpp"

#include <cmath>

namespace hco {

namespace {

struct Branch {
  std::vector<cplx> amp;                     // dense over the (x,p,w) labels
  std::vector<std::pair<int, int>> record;   // classical query transcript
};

void apply_unitary_dense(std::vector<cplx>& amp, const AUnitary& u) {
  switch (u.kind) {
    case AUnitary::Kind::Diagonal:
      for (size_t a = 0; a < amp.size(); ++a) amp[a] *= u.phases[a];
      return;
    case AUnitary::Kind::Permutation: {
      std::vector<cplx> out(amp.size(), cplx(0.0, 0.0));
      for (size_t a = 0; a < amp.size(); ++a) out[u.perm[a]] = amp[a];
      amp = std::move(out);
      return;
    }
    case AUnitary::Kind::Block: {
      size_t k = u.labels.size();
      std::vector<cplx> in(k);
      for (size_t j = 0; j < k; ++j) in[j] = amp[u.labels[j]];
      for (size_t i = 0; i < k; ++i) {
        cplx acc(0.0, 0.0);
        for (size_t j = 0; j < k; ++j) acc += u.mat[i][j] * in[j];
        amp[u.labels[i]] = acc;
      }
      return;
    }
  }
}

bool accepts(const OutputSpec& spec, const Branch& b, const std::vector<int>& db) {
  switch (spec.kind) {
    case OutputKind::PreimageFromHistory:
      for (const auto& r : b.record)
        if (r.second == spec.target) return true;
      return false;
    case OutputKind::CollisionFromHistory:
      for (size_t i = 0; i < b.record.size(); ++i)
        for (size_t j = i + 1; j < b.record.size(); ++j)
          if (b.record[i].first != b.record[j].first && b.record[i].second == b.record[j].second)
            return true;
      return false;
    case OutputKind::ValueAtIndex:
      return db[spec.index] == spec.target;
  }
  return false;
}

}  // namespace

double enumeration_success(const HybridProgram& p) {
  const OracleParams& params = p.params;
  Encoding enc(params);
  RootsTable roots(params.N);
  uint64_t n_db = 1;
  for (int x = 0; x < params.M; ++x) n_db *= params.N;
  if (n_db > (1u << 20)) throw SizeError("too many functions to enumerate");

  std::vector<double> per_db(n_db, 0.0);
  std::vector<int> db(params.M);
  for (uint64_t code = 0; code < n_db; ++code) {
    uint64_t cc = code;
    for (int x = 0; x < params.M; ++x) {
      db[x] = static_cast<int>(cc % params.N);
      cc /= params.N;
    }

    std::vector<Branch> branches(1);
    branches[0].amp.assign(enc.a_dim, cplx(0.0, 0.0));
    branches[0].amp[enc.alabel(0, 0, 0)] = cplx(1.0, 0.0);

    for (const Step& step : p.steps) {
      if (step.kind == Step::Kind::Unitary) {
        for (Branch& b : branches) apply_unitary_dense(b.amp, step.u);
        continue;
      }
      if (step.query == QueryKind::Quantum) {
        for (Branch& b : branches)
          for (uint64_t a = 0; a < enc.a_dim; ++a) {
            int x = enc.x_of_alabel(a);
            int pp = enc.p_of_alabel(a);
            b.amp[a] *= roots.omega(static_cast<int64_t>(pp) * db[x]);
          }
        continue;
      }
      // classical query: the record register measures x, so the run splits
      // into one branch per query index
      std::vector<Branch> next;
      for (Branch& b : branches) {
        for (int x = 0; x < params.M; ++x) {
          Branch nb;
          nb.amp.assign(enc.a_dim, cplx(0.0, 0.0));
          double w2 = 0.0;
          for (int pp = 0; pp < params.N; ++pp)
            for (int w = 0; w < params.w_dim; ++w) {
              uint64_t a = enc.alabel(x, pp, w);
              cplx v = b.amp[a] * roots.omega(static_cast<int64_t>(pp) * db[x]);
              nb.amp[a] = v;
              w2 += std::norm(v);
            }
          if (w2 == 0.0) continue;
          nb.record = b.record;
          nb.record.emplace_back(x, db[x]);
          next.push_back(std::move(nb));
        }
      }
      branches = std::move(next);
    }

    double acc = 0.0;
    for (const Branch& b : branches) {
      if (!accepts(p.output, b, db)) continue;
      for (const cplx& v : b.amp) acc += std::norm(v);
    }
    per_db[code] = acc;
  }

  // pairwise reduction: deterministic and accurate independent of n_db
  std::vector<double> acc = std::move(per_db);
  while (acc.size() > 1) {
    size_t half = (acc.size() + 1) / 2;
    for (size_t i = 0; i + half < acc.size(); ++i) acc[i] += acc[i + half];
    acc.resize(half);
  }
  return acc[0] / static_cast<double>(n_db);
}

double simulated_success(const HybridProgram& p, Picture picture) {
  RunOptions opts;
  opts.picture = picture;
  RunResult r = run_program(p, opts);
  return success_probability(p, r.final_state, picture);
}

}  // namespace hco
