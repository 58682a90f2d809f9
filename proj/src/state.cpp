#include "hco/state.hpp"

#include <algorithm>
#include <cmath>

namespace hco {

SparseState SparseState::basis(const OracleParams& p, const BasisState& b) {
  SparseState s(p);
  s.terms.emplace_back(encode(s.enc, b), cplx(1.0, 0.0));
  return s;
}

void SparseState::canonicalize() {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.first < b.first; });
  size_t out = 0;
  size_t i = 0;
  while (i < terms.size()) {
    uint64_t code = terms[i].first;
    cplx a = terms[i].second;
    ++i;
    while (i < terms.size() && terms[i].first == code) {
      a += terms[i].second;
      ++i;
    }
    if (a != cplx(0.0, 0.0)) terms[out++] = {code, a};
  }
  terms.resize(out);
}

cplx SparseState::amplitude(uint64_t code) const {
  auto it = std::lower_bound(terms.begin(), terms.end(), code,
                             [](const Term& t, uint64_t c) { return t.first < c; });
  if (it != terms.end() && it->first == code) return it->second;
  return cplx(0.0, 0.0);
}

void check_same_params(const SparseState& a, const SparseState& b) {
  if (a.params != b.params) throw ParamError("states have mismatched oracle params");
}

cplx inner_product(const SparseState& a, const SparseState& b) {
  check_same_params(a, b);
  cplx acc(0.0, 0.0);
  size_t i = 0, j = 0;
  while (i < a.terms.size() && j < b.terms.size()) {
    uint64_t ca = a.terms[i].first, cb = b.terms[j].first;
    if (ca == cb) {
      acc += std::conj(a.terms[i].second) * b.terms[j].second;
      ++i;
      ++j;
    } else if (ca < cb) {
      ++i;
    } else {
      ++j;
    }
  }
  return acc;
}

SparseState lincomb(cplx alpha, const SparseState& a, cplx beta, const SparseState& b) {
  check_same_params(a, b);
  SparseState out(a.params);
  out.terms.reserve(a.terms.size() + b.terms.size());
  size_t i = 0, j = 0;
  while (i < a.terms.size() || j < b.terms.size()) {
    if (j == b.terms.size() || (i < a.terms.size() && a.terms[i].first < b.terms[j].first)) {
      cplx v = alpha * a.terms[i].second;
      if (v != cplx(0.0, 0.0)) out.terms.emplace_back(a.terms[i].first, v);
      ++i;
    } else if (i == a.terms.size() || b.terms[j].first < a.terms[i].first) {
      cplx v = beta * b.terms[j].second;
      if (v != cplx(0.0, 0.0)) out.terms.emplace_back(b.terms[j].first, v);
      ++j;
    } else {
      cplx v = alpha * a.terms[i].second + beta * b.terms[j].second;
      if (v != cplx(0.0, 0.0)) out.terms.emplace_back(a.terms[i].first, v);
      ++i;
      ++j;
    }
  }
  return out;
}

double norm2(const SparseState& s) {
  double acc = 0.0;
  for (const auto& t : s.terms) acc += std::norm(t.second);
  return acc;
}

double norm(const SparseState& s) { return std::sqrt(norm2(s)); }

SparseState normalized(const SparseState& s) {
  double n = norm(s);
  if (n == 0.0) throw ParamError("cannot normalize the zero state");
  SparseState out = s;
  for (auto& t : out.terms) t.second /= n;
  return out;
}

SparseState prune(const SparseState& s, double eps) {
  SparseState out(s.params);
  out.terms.reserve(s.terms.size());
  for (const auto& t : s.terms)
    if (std::abs(t.second) > eps) out.terms.push_back(t);
  return out;
}

}  // namespace hco
