#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hco/state.hpp"

namespace hco {

// PreQ/PreC are the preimage-search predicates (a zero value known only in D /
// recorded in H); the Coll* family are the collision predicates.  Search and
// collision predicates are distinct even where the underlying letters collide.
enum class Atom { PreQ, PreC, CollQ, CollH, CollC, CollQQ, CollX };

struct Predicate {
  enum class Kind { AtomK, Not, And, Or };
  Kind kind = Kind::AtomK;
  Atom atom = Atom::PreQ;
  std::shared_ptr<const Predicate> a, b;
};

Predicate patom(Atom a);
Predicate pnot(const Predicate& p);
Predicate pand(const Predicate& a, const Predicate& b);
Predicate por(const Predicate& a, const Predicate& b);
bool has_x_atom(const Predicate& p);
std::string to_string(const Predicate& p);

// truth on one basis state; every atom requires history-database consistency
// (uniqueness + equality), so all atoms are false on inconsistent states.
// Combination trees use plain boolean semantics.
bool eval_predicate(const Predicate& p, const BasisState& b);

// keeps exactly the support terms where the predicate holds
SparseState project(const SparseState& s, const Predicate& p);

// ---- dense per-(H,D) predicate bits, used by the inequality suites ----

// bit layout of the per-(h,d) byte; atom bits are 0 unless the pair is
// history-database consistent
enum : uint8_t {
  kBitConsistent = 1u << 0,
  kBitPreQ = 1u << 1,
  kBitPreC = 1u << 2,
  kBitCollQ = 1u << 3,
  kBitCollQQ = 1u << 4,
  kBitCollH = 1u << 5,
  kBitCollC = 1u << 6,
};

class PredTable {
 public:
  explicit PredTable(const Encoding& enc);

  uint8_t bits(uint64_t h, uint64_t d) { return row(h)[d]; }
  // 0: no hybrid collision; 1+x: every hybrid collision's unrecorded endpoint
  // is x; 255: two or more distinct unrecorded endpoints
  uint8_t xinfo(uint64_t h, uint64_t d) { return xrow(h)[d]; }
  uint32_t dom_mask(uint64_t h);  // bitmask of indices recorded in h

  const uint8_t* row(uint64_t h);
  const uint8_t* xrow(uint64_t h);

  // full atom evaluation on a packed code (CollX needs the x register)
  bool eval(const Predicate& p, uint64_t code);

  const Encoding& enc() const { return enc_; }

 private:
  int32_t row_index(uint64_t h);
  void fill_row(uint64_t h, int32_t idx);

  Encoding enc_;
  std::vector<int32_t> hrow_;     // h -> row index, -1 when not filled yet
  std::vector<uint8_t> bits_;     // rows of size dr
  std::vector<uint8_t> xinfo_;    // rows of size dr
  std::vector<uint32_t> dommask_; // per row
};

// compiled list of X-free predicates evaluated in one byte lookup per code
class MaskSet {
 public:
  MaskSet(PredTable& table, const std::vector<Predicate>& preds);
  uint32_t operator()(uint64_t code) const;
  int size() const { return n_; }

 private:
  PredTable* table_;
  uint64_t dr_, hr_;
  int n_;
  uint32_t truth_[128];
};

struct HdPredReport {
  bool history_invariant = true;
  bool database_monotone = true;
  std::optional<std::string> invariance_counterexample;
  std::optional<std::string> monotone_counterexample;  // "state -> modified state"
  bool pass() const { return history_invariant && database_monotone; }
};

// exhaustive check of the history-invariance and database-monotonicity
// properties over all consistent basis states at (c,q).  Monotone replacements
// happen at coordinates outside the history (filling a history-recorded bottom
// would break the equality condition for every predicate at once).
HdPredReport check_hd_predicate(const Predicate& p, const OracleParams& params, int c, int q);

}  // namespace hco
