#include "hco/progress.hpp"

#include <cmath>

namespace hco {

double progress_delta(const Predicate& p, const SparseState& s, QueryKind kind) {
  SparseState rs = apply_compressed(s, kind);
  double after = norm2(project(rs, p));
  double before = norm2(project(s, p));
  if (kind == QueryKind::Quantum) return std::sqrt(after) - std::sqrt(before);
  return after - before;
}

double progress_gamma(const Predicate& p, const SparseState& s, QueryKind kind) {
  SparseState falsepart = project(s, pnot(p));
  double denom2 = norm2(falsepart);
  if (denom2 <= 1e-12 * 1e-12) return 0.0;
  double num2 = norm2(project(apply_compressed(falsepart, kind), p));
  if (kind == QueryKind::Quantum) return std::sqrt(num2 / denom2);
  return num2 / denom2;
}

double cross_term(const Predicate& into, const Predicate& from, const SparseState& s,
                  QueryKind kind) {
  SparseState part = project(s, from);
  return norm2(project(apply_compressed(part, kind), into));
}

double potential_search(const SparseState& s) {
  Predicate pre_c = patom(Atom::PreC);
  Predicate pre_q_only = pand(patom(Atom::PreQ), pnot(pre_c));
  return norm2(project(s, pre_c)) + 2.0 * norm2(project(s, pre_q_only));
}

double potential_collision(const SparseState& s) {
  Predicate c = patom(Atom::CollC);
  Predicate h = patom(Atom::CollH);
  Predicate q = patom(Atom::CollQ);
  Predicate h_only = pand(h, pnot(c));
  Predicate q_only = pand(q, pand(pnot(h), pnot(c)));
  return norm2(project(s, c)) + 2.0 * norm2(project(s, h_only)) + 4.0 * norm2(project(s, q_only));
}

}  // namespace hco
