#include "hco/enumerate.hpp"

#include <algorithm>

#include "hco/rng.hpp"

namespace hco {

namespace {

// generates every database consistent with the fixed history function view:
// digits at history indices are forced, up to q extra entries elsewhere
void gen_databases(const Encoding& enc, uint64_t h, uint64_t d_base,
                   const std::vector<int>& free_idx, int q,
                   std::vector<std::pair<uint64_t, uint64_t>>& out) {
  struct Frame {
    uint64_t d;
    size_t next;
    int left;
  };
  std::vector<Frame> stack;
  stack.push_back({d_base, 0, q});
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    out.emplace_back(h, f.d);
    if (f.left == 0) continue;
    for (size_t i = f.next; i < free_idx.size(); ++i) {
      int x = free_idx[i];
      for (int y = 0; y < enc.params.N; ++y)
        stack.push_back({f.d + (static_cast<uint64_t>(y) - enc.params.N) * enc.dpow[x],
                         i + 1, f.left - 1});
    }
  }
}

void gen_histories(const Encoding& enc, int c, int q,
                   uint64_t h, int level, std::vector<int>& fv,
                   std::vector<std::pair<uint64_t, uint64_t>>& out) {
  // emit all databases for the current history
  uint64_t d_base = 0;
  for (int x = 0; x < enc.params.M; ++x) d_base += static_cast<uint64_t>(enc.params.N) * enc.dpow[x];
  std::vector<int> free_idx;
  for (int x = 0; x < enc.params.M; ++x) {
    if (fv[x] == -2) {
      free_idx.push_back(x);
    } else if (fv[x] != kBot) {
      d_base += (static_cast<uint64_t>(fv[x]) - enc.params.N) * enc.dpow[x];
    }
  }
  gen_databases(enc, h, d_base, free_idx, q, out);

  if (level >= c) return;
  for (int x = 0; x < enc.params.M; ++x) {
    for (int yd = 0; yd <= enc.params.N; ++yd) {
      int y = (yd == enc.params.N) ? kBot : yd;
      if (fv[x] != -2 && fv[x] != y) continue;  // uniqueness
      int prev = fv[x];
      fv[x] = y;
      gen_histories(enc, c, q, h + enc.slot_code(x, y) * enc.hpow[level], level + 1, fv, out);
      fv[x] = prev;
    }
  }
}

}  // namespace

ConsistentSpace enumerate_consistent_space(const OracleParams& params, int c, int q) {
  if (c > params.c_max) throw ParamError("enumerate_consistent: c exceeds c_max");
  if (c < 0 || q < 0) throw ParamError("enumerate_consistent: negative c or q");
  ConsistentSpace sp;
  sp.params = params;
  sp.enc = Encoding(params);
  sp.c = c;
  sp.q = std::min(q, params.M);
  std::vector<int> fv(params.M, -2);  // -2 = unconstrained, kBot = forced absent
  gen_histories(sp.enc, c, sp.q, 0, 0, fv, sp.hd);
  std::sort(sp.hd.begin(), sp.hd.end());
  sp.codes.reserve(sp.hd.size() * sp.enc.a_dim);
  for (uint64_t a = 0; a < sp.enc.a_dim; ++a)
    for (const auto& [h, d] : sp.hd) sp.codes.push_back(sp.enc.make(a, h, d));
  return sp;
}

std::vector<BasisState> enumerate_consistent(const OracleParams& params, int c, int q) {
  ConsistentSpace sp = enumerate_consistent_space(params, c, q);
  std::vector<BasisState> out;
  out.reserve(sp.codes.size());
  for (uint64_t code : sp.codes) out.push_back(decode(sp.enc, code));
  return out;
}

SparseState random_state_in_A(const ConsistentSpace& space, uint64_t seed) {
  SparseState s(space.params);
  s.terms.reserve(space.dim());
  Rng rng(seed);
  double n2 = 0.0;
  for (uint64_t code : space.codes) {
    cplx a(rng.gaussian(), rng.gaussian());
    n2 += std::norm(a);
    s.terms.emplace_back(code, a);
  }
  double inv = 1.0 / std::sqrt(n2);
  for (auto& t : s.terms) t.second *= inv;
  return s;
}

SparseState random_state_in_A(const OracleParams& params, int c, int q, uint64_t seed) {
  return random_state_in_A(enumerate_consistent_space(params, c, q), seed);
}

}  // namespace hco
