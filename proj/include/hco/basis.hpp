#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "hco/params.hpp"

namespace hco {

// Partial function [M] -> [N]; absent indices are "bottom".
struct Database {
  // sorted by index, values in [0,N); no kBot stored
  std::vector<std::pair<int, int>> entries;

  int value(int x) const {
    for (const auto& e : entries)
      if (e.first == x) return e.second;
    return kBot;
  }

  friend bool operator==(const Database& a, const Database& b) { return a.entries == b.entries; }
};

// D_{x<-y}: replace the entry at x (remove when y = bottom).
Database db_set(const Database& d, int x, int y, int M);

// Append-only record of classical queries: c_max slots, filled prefix then stars.
struct History {
  int c_max = 0;
  std::vector<std::pair<int, int>> filled;  // (x, y-or-kBot) in insertion order

  bool contains(int x) const {
    for (const auto& s : filled)
      if (s.first == x) return true;
    return false;
  }
  // function view; found=false when x not in H
  bool lookup(int x, int& y) const {
    for (const auto& s : filled)
      if (s.first == x) {
        y = s.second;
        return true;
      }
    return false;
  }
  int stars() const { return c_max - static_cast<int>(filled.size()); }

  friend bool operator==(const History& a, const History& b) {
    return a.c_max == b.c_max && a.filled == b.filled;
  }
};

// H_{x<-y}: write (x,y) into the leftmost star slot.
History history_append(const History& h, int x, int y);

struct BasisState {
  int x = 0, p = 0, w = 0;
  History h;
  Database d;

  friend bool operator==(const BasisState& a, const BasisState& b) {
    return a.x == b.x && a.p == b.p && a.w == b.w && a.h == b.h && a.d == b.d;
  }
};

// The four conditions of the consistency definition.  The database-size
// condition counts entries at indices outside the history against q: classical
// queries leave their sampled value in both H and D, so history-backed entries
// are budgeted by c (the fill bound), not q.
bool is_consistent(const BasisState& b, int c, int q);

// uniqueness + prefix + equality only (consistent for some c,q); this is the
// "history-database consistent" requirement predicates use
bool is_structurally_consistent(const BasisState& b);

// `x|p|w|H:(x1,y1),...,*k|D:{x->y,...}` with bottom rendered `_`, star `*`
std::string to_string(const BasisState& b);
BasisState parse_basis_state(const std::string& text, const OracleParams& params);

uint64_t encode(const Encoding& enc, const BasisState& b);
BasisState decode(const Encoding& enc, uint64_t code);

}  // namespace hco
