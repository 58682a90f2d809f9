#include "hco/oracles.hpp"

#include <cmath>
#include <memory>

namespace hco {

RootsTable::RootsTable(int n) : N(n), w(n) {
  constexpr double two_pi = 6.283185307179586476925286766559;
  for (int k = 0; k < n; ++k) {
    double a = two_pi * k / n;
    w[k] = cplx(std::cos(a), std::sin(a));
  }
}

std::vector<cplx> fourier_state(int p, int N) {
  RootsTable roots(N);
  double inv = 1.0 / std::sqrt(static_cast<double>(N));
  std::vector<cplx> out(N);
  for (int y = 0; y < N; ++y) out[y] = roots.omega(static_cast<int64_t>(p) * y) * inv;
  return out;
}

SparseState apply_standard_quantum(const SparseState& s) {
  RootsTable roots(s.params.N);
  SparseState out = s;
  const Encoding& enc = s.enc;
  for (auto& t : out.terms) {
    uint64_t a = enc.alabel_of(t.first);
    int x = enc.x_of_alabel(a);
    int p = enc.p_of_alabel(a);
    int dv = enc.dvalue(enc.d_of(t.first), x);
    if (dv != kBot && p != 0) t.second *= roots.omega(static_cast<int64_t>(p) * dv);
  }
  return out;
}

SparseState apply_standard_classical(const SparseState& s) {
  RootsTable roots(s.params.N);
  const Encoding& enc = s.enc;
  SparseState out(s.params);
  out.terms.reserve(s.terms.size());
  for (const auto& t : s.terms) {
    uint64_t a = enc.alabel_of(t.first);
    uint64_t h = enc.h_of(t.first);
    uint64_t d = enc.d_of(t.first);
    int x = enc.x_of_alabel(a);
    int p = enc.p_of_alabel(a);
    int k = enc.fill_count(h);
    if (k >= s.params.c_max) throw CapacityError("classical query with no free history slot");
    int dv = enc.dvalue(d, x);
    cplx amp = t.second;
    if (dv != kBot && p != 0) amp *= roots.omega(static_cast<int64_t>(p) * dv);
    out.terms.emplace_back(enc.make(a, h + enc.slot_code(x, dv) * enc.hpow[k], d), amp);
  }
  out.canonicalize();
  return out;
}

namespace {

// S on one coordinate of one term: emits the image of |digit at x> under the
// swap of "absent" with the uniform superposition
template <class Emit>
void s_coord_expand(const Encoding& enc, uint64_t code, cplx amp, int x, Emit&& emit) {
  int N = enc.params.N;
  double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(N));
  uint64_t d = enc.d_of(code);
  int dv = enc.dvalue(d, x);
  uint64_t base = code - (d % (enc.dpow[x] * enc.rd) - d % enc.dpow[x]);  // digit at x zeroed
  uint64_t dpx = enc.dpow[x];
  if (dv == kBot) {
    for (int y = 0; y < N; ++y) emit(base + static_cast<uint64_t>(y) * dpx, amp * inv_sqrt);
  } else {
    emit(base + static_cast<uint64_t>(dv) * dpx, amp);
    emit(base + static_cast<uint64_t>(N) * dpx, amp * inv_sqrt);
    cplx m = amp / static_cast<double>(N);
    for (int y = 0; y < N; ++y) emit(base + static_cast<uint64_t>(y) * dpx, -m);
  }
}

bool history_contains(const Encoding& enc, uint64_t h, int x) {
  int y;
  return enc.h_lookup(h, x, y);
}

}  // namespace

SparseState apply_S(const SparseState& s) {
  const Encoding& enc = s.enc;
  SparseState out(s.params);
  out.terms.reserve(s.terms.size() * (s.params.N + 2));
  for (const auto& t : s.terms) {
    uint64_t a = enc.alabel_of(t.first);
    int x = enc.x_of_alabel(a);
    if (history_contains(enc, enc.h_of(t.first), x)) {
      out.terms.push_back(t);
    } else {
      s_coord_expand(enc, t.first, t.second, x,
                     [&](uint64_t c, cplx v) { out.terms.emplace_back(c, v); });
    }
  }
  out.canonicalize();
  return out;
}

SparseState apply_S_all(const SparseState& s) {
  SparseState cur = s;
  const Encoding& enc = s.enc;
  for (int x = 0; x < s.params.M; ++x) {
    SparseState next(s.params);
    next.terms.reserve(cur.terms.size() * (s.params.N + 2));
    for (const auto& t : cur.terms) {
      if (history_contains(enc, enc.h_of(t.first), x)) {
        next.terms.push_back(t);
      } else {
        s_coord_expand(enc, t.first, t.second, x,
                       [&](uint64_t c, cplx v) { next.terms.emplace_back(c, v); });
      }
    }
    next.canonicalize();
    cur = std::move(next);
  }
  return cur;
}

// ---------------------------------------------------------------------------
// fastpath kernel
//
// Terms are processed in groups sharing (x,p,w,H); within a group only the
// database varies, and every output database differs from an input one at the
// query coordinate only.  A dense scratch array indexed by database code
// merges amplitudes without any sorting or hashing.  For the classical oracle
// the appended history slot is determined by the output's value at x, so the
// output history is a function of (input group, output database) and the same
// scratch works.
// ---------------------------------------------------------------------------

namespace {

struct KernelCoefs {
  // indexed [p][y]
  std::vector<std::vector<cplx>> bot;  // omega(p y)/sqrt(N)
  // quantum case with a present value z: [p][z][y] = (1 - w^{pz} - w^{py})/N
  std::vector<std::vector<std::vector<cplx>>> q3;
  std::vector<std::vector<cplx>> diag;  // [p][z] = omega(p z)
  std::vector<cplx> cl3;                // [y] placeholder, filled per p
  RootsTable roots;
  double inv_sqrt;

  explicit KernelCoefs(int N) : roots(N), inv_sqrt(1.0 / std::sqrt(static_cast<double>(N))) {
    bot.assign(N, std::vector<cplx>(N));
    diag.assign(N, std::vector<cplx>(N));
    q3.assign(N, std::vector<std::vector<cplx>>(N, std::vector<cplx>(N)));
    for (int p = 0; p < N; ++p)
      for (int y = 0; y < N; ++y) {
        cplx wpy = roots.omega(static_cast<int64_t>(p) * y);
        bot[p][y] = wpy * inv_sqrt;
        diag[p][y] = wpy;
        for (int z = 0; z < N; ++z)
          q3[p][z][y] = (cplx(1.0, 0.0) - roots.omega(static_cast<int64_t>(p) * z) - wpy) /
                        static_cast<double>(N);
      }
  }
};

template <class Sink>
void run_fastpath(const SparseState& s, QueryKind kind, bool skip_diagonal, bool check_consistent,
                  Sink&& sink) {
  const Encoding& enc = s.enc;
  const int N = s.params.N;
  const uint64_t dr = enc.dr;
  static thread_local int coef_n = 0;
  static thread_local std::unique_ptr<KernelCoefs> coefs_tls;
  if (coef_n != N) {
    coefs_tls = std::make_unique<KernelCoefs>(N);
    coef_n = N;
  }
  const KernelCoefs& co = *coefs_tls;

  std::vector<cplx> scratch(dr, cplx(0.0, 0.0));
  std::vector<uint32_t> epoch(dr, 0);
  uint32_t cur_epoch = 0;
  std::vector<uint32_t> touched;

  const auto& terms = s.terms;
  size_t n = terms.size();
  size_t i = 0;
  while (i < n) {
    uint64_t g = terms[i].first / dr;
    uint64_t base_code = g * dr;
    uint64_t group_end_code = base_code + dr;
    size_t j = i;
    while (j < n && terms[j].first < group_end_code) ++j;

    uint64_t h = g % enc.hr;
    uint64_t a = g / enc.hr;
    int x = enc.x_of_alabel(a);
    int p = enc.p_of_alabel(a);
    int hy = 0;
    bool in_h = enc.h_lookup(h, x, hy);
    int k = enc.fill_count(h);
    uint64_t dpx = enc.dpow[x];

    // decoded history slots for the per-term consistency check
    int dom_x[32], dom_y[32], ndom = 0;
    if (check_consistent) {
      if (k > 32) throw SizeError("history capacity too large for the consistency check");
      uint64_t hh = h;
      for (int si = 0; si < k; ++si) {
        uint64_t slot = hh % enc.slot_radix;
        hh /= enc.slot_radix;
        enc.slot_decode(slot, dom_x[ndom], dom_y[ndom]);
        for (int t = 0; t < ndom; ++t)
          if (dom_x[t] == dom_x[ndom] && dom_y[t] != dom_y[ndom])
            throw ConsistencyError("history is not a function: " +
                                   to_string(decode(enc, terms[i].first)));
        ++ndom;
      }
    }
    auto check_term = [&](uint64_t d, uint64_t code) {
      for (int t = 0; t < ndom; ++t) {
        int dv = enc.dvalue(d, dom_x[t]);
        if (dv != dom_y[t])
          throw ConsistencyError("database disagrees with history: " +
                                 to_string(decode(enc, code)));
      }
    };

    bool diagonal = (kind == QueryKind::Quantum) ? (in_h || p == 0) : in_h;
    if (kind == QueryKind::Classical && k >= s.params.c_max)
      throw CapacityError("classical query with no free history slot");

    if (diagonal) {
      if (!skip_diagonal) {
        for (size_t t = i; t < j; ++t) {
          uint64_t d = terms[t].first - base_code;
          int dv = enc.dvalue(d, x);
          if (check_consistent) check_term(d, terms[t].first);
          cplx amp = terms[t].second;
          if (dv != kBot && p != 0) amp *= co.diag[p][dv];
          if (kind == QueryKind::Quantum) {
            sink(terms[t].first, amp);
          } else {
            sink(enc.make(a, h + enc.slot_code(x, dv) * enc.hpow[k], d), amp);
          }
        }
      } else if (check_consistent) {
        for (size_t t = i; t < j; ++t) check_term(terms[t].first - base_code, terms[t].first);
      }
      i = j;
      continue;
    }

    // fanout: accumulate into scratch keyed by output database
    ++cur_epoch;
    touched.clear();
    const std::vector<cplx>& cb = co.bot[p];
    for (size_t t = i; t < j; ++t) {
      uint64_t d = terms[t].first - base_code;
      if (check_consistent) check_term(d, terms[t].first);
      uint64_t dig = (d / dpx) % enc.rd;
      uint64_t d_base = d - dig * dpx;
      if (epoch[d_base] != cur_epoch) {
        epoch[d_base] = cur_epoch;
        touched.push_back(static_cast<uint32_t>(d_base));
        for (int y = 0; y <= N; ++y) scratch[d_base + static_cast<uint64_t>(y) * dpx] = cplx(0.0, 0.0);
      }
      cplx amp = terms[t].second;
      if (dig == static_cast<uint64_t>(N)) {
        // no recorded value: resample uniformly
        for (int y = 0; y < N; ++y) scratch[d_base + static_cast<uint64_t>(y) * dpx] += cb[y] * amp;
      } else {
        int z = static_cast<int>(dig);
        if (kind == QueryKind::Quantum) {
          scratch[d] += co.diag[p][z] * amp;
          scratch[d_base + static_cast<uint64_t>(N) * dpx] += co.diag[p][z] * co.inv_sqrt * amp;
          const std::vector<cplx>& v = co.q3[p][z];
          for (int y = 0; y < N; ++y) scratch[d_base + static_cast<uint64_t>(y) * dpx] += v[y] * amp;
        } else {
          scratch[d] += co.diag[p][z] * amp;
          scratch[d_base + static_cast<uint64_t>(N) * dpx] += co.inv_sqrt * amp;
          cplx m = amp / static_cast<double>(N);
          for (int y = 0; y < N; ++y)
            scratch[d_base + static_cast<uint64_t>(y) * dpx] -= co.diag[p][y] * m;
        }
      }
    }
    for (uint32_t db : touched) {
      for (int yd = 0; yd <= N; ++yd) {
        uint64_t dprime = db + static_cast<uint64_t>(yd) * dpx;
        cplx amp = scratch[dprime];
        if (amp == cplx(0.0, 0.0)) continue;
        if (kind == QueryKind::Quantum) {
          sink(base_code + dprime, amp);
        } else {
          int y = (yd == N) ? kBot : yd;
          sink(enc.make(a, h + enc.slot_code(x, y) * enc.hpow[k], dprime), amp);
        }
      }
    }
    i = j;
  }
}

// Batched kernel: same resampling rules, but each support code carries a row
// of T amplitudes (one per state).  The group/output bookkeeping is identical
// to run_fastpath; only the scratch entries become rows.  Used on enumerated
// consistent spaces, so no per-term consistency check.
template <class Sink>
void run_fastpath_batch(const Encoding& enc, const std::vector<uint64_t>& codes,
                        const std::vector<cplx>& amps, int T, QueryKind kind, bool skip_diagonal,
                        Sink&& sink) {
  const int N = enc.params.N;
  const uint64_t dr = enc.dr;
  static thread_local int coef_n = 0;
  static thread_local std::unique_ptr<KernelCoefs> coefs_tls;
  if (coef_n != N) {
    coefs_tls = std::make_unique<KernelCoefs>(N);
    coef_n = N;
  }
  const KernelCoefs& co = *coefs_tls;

  std::vector<cplx> scratch(dr * static_cast<size_t>(T), cplx(0.0, 0.0));
  std::vector<uint32_t> epoch(dr, 0);
  uint32_t cur_epoch = 0;
  std::vector<uint32_t> touched;
  std::vector<cplx> tmp(T);

  auto axpy = [T](cplx* dst, cplx coef, const cplx* src) {
    for (int t = 0; t < T; ++t) dst[t] += coef * src[t];
  };

  size_t n = codes.size();
  size_t i = 0;
  while (i < n) {
    uint64_t g = codes[i] / dr;
    uint64_t base_code = g * dr;
    uint64_t group_end_code = base_code + dr;
    size_t j = i;
    while (j < n && codes[j] < group_end_code) ++j;

    uint64_t h = g % enc.hr;
    uint64_t a = g / enc.hr;
    int x = enc.x_of_alabel(a);
    int p = enc.p_of_alabel(a);
    int hy = 0;
    bool in_h = enc.h_lookup(h, x, hy);
    int k = enc.fill_count(h);
    uint64_t dpx = enc.dpow[x];

    bool diagonal = (kind == QueryKind::Quantum) ? (in_h || p == 0) : in_h;
    if (kind == QueryKind::Classical && k >= enc.params.c_max)
      throw CapacityError("classical query with no free history slot");

    if (diagonal) {
      if (!skip_diagonal) {
        for (size_t t = i; t < j; ++t) {
          uint64_t d = codes[t] - base_code;
          int dv = enc.dvalue(d, x);
          cplx coef = (dv != kBot && p != 0) ? co.diag[p][dv] : cplx(1.0, 0.0);
          const cplx* src = &amps[t * T];
          for (int s = 0; s < T; ++s) tmp[s] = coef * src[s];
          if (kind == QueryKind::Quantum) {
            sink(codes[t], tmp.data());
          } else {
            sink(enc.make(a, h + enc.slot_code(x, dv) * enc.hpow[k], d), tmp.data());
          }
        }
      }
      i = j;
      continue;
    }

    ++cur_epoch;
    touched.clear();
    const std::vector<cplx>& cb = co.bot[p];
    for (size_t t = i; t < j; ++t) {
      uint64_t d = codes[t] - base_code;
      uint64_t dig = (d / dpx) % enc.rd;
      uint64_t d_base = d - dig * dpx;
      if (epoch[d_base] != cur_epoch) {
        epoch[d_base] = cur_epoch;
        touched.push_back(static_cast<uint32_t>(d_base));
        for (int y = 0; y <= N; ++y)
          std::fill_n(&scratch[(d_base + static_cast<uint64_t>(y) * dpx) * T], T, cplx(0.0, 0.0));
      }
      const cplx* src = &amps[t * T];
      if (dig == static_cast<uint64_t>(N)) {
        for (int y = 0; y < N; ++y)
          axpy(&scratch[(d_base + static_cast<uint64_t>(y) * dpx) * T], cb[y], src);
      } else {
        int z = static_cast<int>(dig);
        if (kind == QueryKind::Quantum) {
          axpy(&scratch[d * T], co.diag[p][z], src);
          axpy(&scratch[(d_base + static_cast<uint64_t>(N) * dpx) * T],
               co.diag[p][z] * co.inv_sqrt, src);
          const std::vector<cplx>& v = co.q3[p][z];
          for (int y = 0; y < N; ++y)
            axpy(&scratch[(d_base + static_cast<uint64_t>(y) * dpx) * T], v[y], src);
        } else {
          axpy(&scratch[d * T], co.diag[p][z], src);
          axpy(&scratch[(d_base + static_cast<uint64_t>(N) * dpx) * T], co.inv_sqrt, src);
          cplx m = cplx(1.0, 0.0) / static_cast<double>(N);
          for (int y = 0; y < N; ++y)
            axpy(&scratch[(d_base + static_cast<uint64_t>(y) * dpx) * T], -co.diag[p][y] * m, src);
        }
      }
    }
    for (uint32_t db : touched) {
      for (int yd = 0; yd <= N; ++yd) {
        uint64_t dprime = db + static_cast<uint64_t>(yd) * dpx;
        const cplx* row = &scratch[dprime * T];
        bool nonzero = false;
        for (int t = 0; t < T; ++t)
          if (row[t] != cplx(0.0, 0.0)) {
            nonzero = true;
            break;
          }
        if (!nonzero) continue;
        if (kind == QueryKind::Quantum) {
          sink(base_code + dprime, row);
        } else {
          int y = (yd == N) ? kBot : yd;
          sink(enc.make(a, h + enc.slot_code(x, y) * enc.hpow[k], dprime), row);
        }
      }
    }
    i = j;
  }
}

}  // namespace

SparseState apply_compressed(const SparseState& s, QueryKind kind, ApplyMode mode) {
  if (mode == ApplyMode::Composed) {
    SparseState mid = apply_S(s);
    mid = (kind == QueryKind::Quantum) ? apply_standard_quantum(mid) : apply_standard_classical(mid);
    return apply_S(mid);
  }
  SparseState out(s.params);
  out.terms.reserve(s.terms.size() * 2);
  run_fastpath(s, kind, /*skip_diagonal=*/false, /*check_consistent=*/true,
               [&](uint64_t c, cplx v) { out.terms.emplace_back(c, v); });
  out.canonicalize();
  return out;
}

std::vector<double> compressed_masked_norms(const SparseState& s, QueryKind kind,
                                            const std::function<uint32_t(uint64_t)>& mask_bits,
                                            int nmasks, bool skip_diagonal) {
  std::vector<double> acc(nmasks, 0.0);
  run_fastpath(s, kind, skip_diagonal, /*check_consistent=*/false, [&](uint64_t c, cplx v) {
    uint32_t bits = mask_bits(c);
    if (!bits) return;
    double a2 = std::norm(v);
    while (bits) {
      acc[__builtin_ctz(bits)] += a2;
      bits &= bits - 1;
    }
  });
  return acc;
}

cplx compressed_dot(const SparseState& s, QueryKind kind,
                    const std::unordered_map<uint64_t, cplx>& v) {
  cplx acc(0.0, 0.0);
  run_fastpath(s, kind, /*skip_diagonal=*/false, /*check_consistent=*/false,
               [&](uint64_t c, cplx amp) {
                 auto it = v.find(c);
                 if (it != v.end()) acc += std::conj(it->second) * amp;
               });
  return acc;
}

std::vector<double> compressed_masked_norms_batch(
    const Encoding& enc, const std::vector<uint64_t>& codes, const std::vector<cplx>& amps,
    int n_states, QueryKind kind, const std::function<uint32_t(uint64_t)>& mask_bits, int nmasks,
    bool skip_diagonal) {
  std::vector<double> acc(static_cast<size_t>(nmasks) * n_states, 0.0);
  run_fastpath_batch(enc, codes, amps, n_states, kind, skip_diagonal,
                     [&](uint64_t c, const cplx* row) {
                       uint32_t bits = mask_bits(c);
                       if (!bits) return;
                       while (bits) {
                         double* a = &acc[static_cast<size_t>(__builtin_ctz(bits)) * n_states];
                         for (int t = 0; t < n_states; ++t) a[t] += std::norm(row[t]);
                         bits &= bits - 1;
                       }
                     });
  return acc;
}

std::vector<cplx> compressed_pair_dot_batch(const Encoding& enc,
                                            const std::vector<uint64_t>& codes_u,
                                            const std::vector<cplx>& amps_u,
                                            const std::vector<uint64_t>& codes_v,
                                            const std::vector<cplx>& amps_v, int n_states,
                                            QueryKind kind) {
  // materialize R v_t, then stream R u_t against it
  std::unordered_map<uint64_t, std::vector<cplx>> image;
  image.reserve(codes_v.size() * 2);
  run_fastpath_batch(enc, codes_v, amps_v, n_states, kind, false,
                     [&](uint64_t c, const cplx* row) {
                       auto [it, fresh] = image.try_emplace(c);
                       if (fresh) it->second.assign(row, row + n_states);
                       else
                         for (int t = 0; t < n_states; ++t) it->second[t] += row[t];
                     });
  std::vector<cplx> acc(n_states, cplx(0.0, 0.0));
  run_fastpath_batch(enc, codes_u, amps_u, n_states, kind, false,
                     [&](uint64_t c, const cplx* row) {
                       auto it = image.find(c);
                       if (it == image.end()) return;
                       for (int t = 0; t < n_states; ++t)
                         acc[t] += std::conj(it->second[t]) * row[t];
                     });
  return acc;
}

}  // namespace hco
