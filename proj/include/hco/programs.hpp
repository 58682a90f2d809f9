#pragma once

#include <string>
#include <vector>

#include "hco/oracles.hpp"

namespace hco {

// Unitaries on the query-side registers (x, p, w), identified by their packed
// label a = alabel(x,p,w).  The oracle registers H and D are untouchable by
// programs; only queries act on them.
struct AUnitary {
  enum class Kind { Permutation, Diagonal, Block };
  Kind kind = Kind::Permutation;
  uint64_t a_dim = 0;

  std::vector<uint64_t> perm;    // Permutation: target label per source label
  std::vector<cplx> phases;      // Diagonal: unit-modulus factor per label
  std::vector<uint64_t> labels;  // Block: the labels the dense matrix acts on
  std::vector<std::vector<cplx>> mat;  // Block: mat[i][j] maps labels[j] -> labels[i]
};

// constructors verify unitarity (to 1e-9) and throw ParamError otherwise
AUnitary a_permutation(std::vector<uint64_t> perm);
AUnitary a_diagonal(std::vector<cplx> phases);
AUnitary a_block(uint64_t a_dim, std::vector<uint64_t> labels,
                 std::vector<std::vector<cplx>> mat);
AUnitary a_adjoint(const AUnitary& u);
void verify_unitary(const AUnitary& u);

SparseState apply_unitary(const SparseState& s, const AUnitary& u);

// ---- common unitary builders ----

// Fourier transform on the p register: |p> -> sum_q w^{pq}/sqrt(N) |q>
AUnitary fourier_p(const Encoding& enc);
// x -> x+1 (mod M)
AUnitary increment_x(const Encoding& enc);

// ---- hybrid programs ----

enum class Picture { Compressed, Standard };

enum class OutputKind {
  PreimageFromHistory,   // success: some history record (x, target)
  CollisionFromHistory,  // success: records (x1,y), (x2,y), x1 != x2, y != bottom
  ValueAtIndex,          // success: D(index) == target (reads the database)
};
struct OutputSpec {
  OutputKind kind = OutputKind::PreimageFromHistory;
  int index = 0;
  int target = 0;
};

struct Step {
  enum class Kind { Unitary, Query };
  Kind kind = Kind::Unitary;
  QueryKind query = QueryKind::Quantum;
  AUnitary u;
  std::string label;
};
Step unitary_step(AUnitary u, std::string label);
Step query_step(QueryKind k);

struct HybridProgram {
  std::string name;
  OracleParams params;
  std::vector<Step> steps;
  OutputSpec output;

  int classical_queries() const;
  int quantum_queries() const;
};

struct RunOptions {
  Picture picture = Picture::Compressed;
  bool keep_query_states = false;  // record the state after every query
  double prune_eps = 0.0;          // optional amplitude pruning between steps
};
struct RunResult {
  SparseState final_state;
  std::vector<SparseState> after_query;  // filled when keep_query_states
};

// |x=0,p=0,w=0,H all stars,D empty>; the standard picture starts with the
// database register fully uncompressed (uniform over all functions)
SparseState initial_state(const OracleParams& params, Picture picture);

RunResult run_program(const HybridProgram& p, const RunOptions& opts = {});

// probability that the output decoder accepts a measurement of the final
// state.  History-based decoders read H directly (the uncompression acts only
// on the database, so the H marginal is the same in both pictures);
// ValueAtIndex uncompresses first in the compressed picture.
double success_probability(const HybridProgram& p, const SparseState& final_state,
                           Picture picture);

// ---- builtin algorithms ----

// c lookups at x = 0..c-1, preimage search read off the history
HybridProgram make_classical_search(int M, int N, int c);
// amplitude amplification toward D(x) = 0 with a quantum budget of q queries
// and one final classical query recording the answer
HybridProgram make_grover(int M, int N, int q);
// c lookups at x = 0..c-1, collision read off the history
HybridProgram make_classical_birthday(int M, int N, int c);
// c classical collection lookups, then a quantum search for an index colliding
// with the collected values, then one classical query recording it.
// convert_cq trades the quantum budget for floor(q/2) extra collection lookups.
HybridProgram make_bht(int M, int N, int c, int q, bool convert_cq = false);
// c classical lookups then a quantum search over the remaining indices,
// preimage output
HybridProgram make_hybrid_search(int M, int N, int c, int q);
// seeded random program: random small block unitaries between n_queries
// random-kind queries (used by the indistinguishability checks)
HybridProgram make_random_program(const OracleParams& params, int n_queries, uint64_t seed);

// lookup by CLI name; throws ParamError on unknown names
HybridProgram make_builtin(const std::string& name, int M, int N, int c, int q,
                           bool convert_cq = false);

}  // namespace hco
