#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "hco/basis.hpp"
#include "hco/params.hpp"

namespace hco {

using cplx = std::complex<double>;
using Term = std::pair<uint64_t, cplx>;

// Sparse superposition over packed basis codes, kept sorted by code with
// exact zeros removed.  Sorting by code groups (x,p,w,H)-equal terms
// contiguously (database digits are the low field), which the oracle kernels
// exploit.
struct SparseState {
  OracleParams params;
  Encoding enc;
  std::vector<Term> terms;  // sorted by code, no exact-zero amplitudes

  SparseState() = default;
  explicit SparseState(const OracleParams& p) : params(p), enc(p) {}

  static SparseState basis(const OracleParams& p, const BasisState& b);

  // sorts, merges duplicate codes, drops exact zeros
  void canonicalize();

  cplx amplitude(uint64_t code) const;
  bool empty() const { return terms.empty(); }
  size_t size() const { return terms.size(); }
};

void check_same_params(const SparseState& a, const SparseState& b);

cplx inner_product(const SparseState& a, const SparseState& b);
SparseState lincomb(cplx alpha, const SparseState& a, cplx beta, const SparseState& b);
double norm2(const SparseState& s);
double norm(const SparseState& s);
SparseState normalized(const SparseState& s);
// drops amplitudes with |a| <= eps (explicit opt-in; never used by the suites)
SparseState prune(const SparseState& s, double eps = 1e-12);

}  // namespace hco
