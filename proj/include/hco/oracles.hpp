#pragma once

#include <functional>
#include <unordered_map>
#include <vector>

#include "hco/state.hpp"

namespace hco {

enum class QueryKind { Quantum, Classical };
enum class ApplyMode { Fastpath, Composed };

// powers of omega_N = exp(2*pi*i/N)
struct RootsTable {
  int N = 0;
  std::vector<cplx> w;

  RootsTable() = default;
  explicit RootsTable(int n);
  cplx omega(int64_t k) const {
    int64_t r = k % N;
    if (r < 0) r += N;
    return w[static_cast<size_t>(r)];
  }
};

// |p-hat> = (1/sqrt(N)) sum_y omega^{p y} |y>
std::vector<cplx> fourier_state(int p, int N);

// standard purified oracles: phase omega^{p D(x)} (1 on absent values);
// the classical one also appends (x, D(x)) to the history
SparseState apply_standard_quantum(const SparseState& s);
SparseState apply_standard_classical(const SparseState& s);

// local (un)compression: swaps "absent" with the uniform superposition on the
// term's own query coordinate unless x is in the history; self-inverse
SparseState apply_S(const SparseState& s);
// same swap on every coordinate outside the history
SparseState apply_S_all(const SparseState& s);

// compressed oracles R = S O S.  Fastpath applies the per-term resampling
// rules directly (requires consistent support); Composed is the reference
// implementation by actual conjugation.
SparseState apply_compressed(const SparseState& s, QueryKind kind,
                             ApplyMode mode = ApplyMode::Fastpath);

// ---- fused fastpath sinks used by the progress module ----

// All squared norms ||Mask_j R s||^2 in one pass: mask_bits(code) returns the
// set of masks containing the output code.  With skip_diagonal, input terms
// whose image is a phase times themselves (quantum: x in H or p = 0) or a
// duplicate history append (classical: x in H) are dropped; see the progress
// module for when that is sound.
std::vector<double> compressed_masked_norms(const SparseState& s, QueryKind kind,
                                            const std::function<uint32_t(uint64_t)>& mask_bits,
                                            int nmasks, bool skip_diagonal);

// <v, R s> with v given as a lookup table
cplx compressed_dot(const SparseState& s, QueryKind kind,
                    const std::unordered_map<uint64_t, cplx>& v);

// ---- batched variants ----
//
// Many states pushed through one kernel pass: the states share the sorted
// support `codes`, and amps is row-major (amps[i*n_states + t] is state t's
// amplitude on codes[i]).  The per-code work (group bookkeeping, mask lookups)
// is paid once instead of once per state, which is what makes the big
// verification grids affordable.

// squared norms per (mask, state), mask-major: out[m*n_states + t]
std::vector<double> compressed_masked_norms_batch(
    const Encoding& enc, const std::vector<uint64_t>& codes, const std::vector<cplx>& amps,
    int n_states, QueryKind kind, const std::function<uint32_t(uint64_t)>& mask_bits, int nmasks,
    bool skip_diagonal);

// <R v_t, R u_t> per state; the v side is materialized, so pass the smaller
// state family as v
std::vector<cplx> compressed_pair_dot_batch(const Encoding& enc,
                                            const std::vector<uint64_t>& codes_u,
                                            const std::vector<cplx>& amps_u,
                                            const std::vector<uint64_t>& codes_v,
                                            const std::vector<cplx>& amps_v, int n_states,
                                            QueryKind kind);

}  // namespace hco
