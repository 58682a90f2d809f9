#pragma once

#include "hco/oracles.hpp"
#include "hco/predicates.hpp"

namespace hco {

// Progress of one query: how much weight the predicate's projector gains.
// Quantum progress is measured in norms, classical progress in squared norms.
//   quantum:   ||P R s|| - ||P s||
//   classical: ||P R s||^2 - ||P s||^2
double progress_delta(const Predicate& p, const SparseState& s, QueryKind kind);

// Damping ratio: the predicate weight created out of the predicate-false part.
//   quantum:   ||P R (I-P) s|| / ||(I-P) s||
//   classical: ||P R (I-P) s||^2 / ||(I-P) s||^2
// Zero by convention when the false part is (numerically) empty.
double progress_gamma(const Predicate& p, const SparseState& s, QueryKind kind);

// ||P_into R P_from s||^2: weight transferred between predicate classes
double cross_term(const Predicate& into, const Predicate& from, const SparseState& s,
                  QueryKind kind);

// preimage-search potential: ||P_PreC s||^2 + 2 ||P_{PreQ & !PreC} s||^2
double potential_search(const SparseState& s);

// collision-finding potential:
// ||P_C s||^2 + 2 ||P_{H & !C} s||^2 + 4 ||P_{Q & !H & !C} s||^2
double potential_collision(const SparseState& s);

}  // namespace hco
