#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "hco/state.hpp"

namespace hco {

// Enumerated basis of the consistent subspace A_{c,q}: every structurally
// consistent (H,D) pair with fill(H) <= c and at most q database entries
// outside H, crossed with all (x,p,w).
struct ConsistentSpace {
  OracleParams params;
  Encoding enc;
  int c = 0, q = 0;
  std::vector<std::pair<uint64_t, uint64_t>> hd;  // (h,d) pairs, sorted
  std::vector<uint64_t> codes;                    // all basis codes, sorted

  size_t dim() const { return codes.size(); }
};

ConsistentSpace enumerate_consistent_space(const OracleParams& params, int c, int q);

// decoded convenience wrapper (order matches the code list)
std::vector<BasisState> enumerate_consistent(const OracleParams& params, int c, int q);

// unit-norm state over A_{c,q} with iid standard-normal real/imag amplitudes
SparseState random_state_in_A(const OracleParams& params, int c, int q, uint64_t seed);
SparseState random_state_in_A(const ConsistentSpace& space, uint64_t seed);

}  // namespace hco
