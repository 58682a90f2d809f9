#include "hco/predicates.hpp"

#include <algorithm>

#include "hco/enumerate.hpp"

namespace hco {

Predicate patom(Atom a) {
  Predicate p;
  p.kind = Predicate::Kind::AtomK;
  p.atom = a;
  return p;
}
Predicate pnot(const Predicate& p) {
  Predicate out;
  out.kind = Predicate::Kind::Not;
  out.a = std::make_shared<Predicate>(p);
  return out;
}
Predicate pand(const Predicate& a, const Predicate& b) {
  Predicate out;
  out.kind = Predicate::Kind::And;
  out.a = std::make_shared<Predicate>(a);
  out.b = std::make_shared<Predicate>(b);
  return out;
}
Predicate por(const Predicate& a, const Predicate& b) {
  Predicate out;
  out.kind = Predicate::Kind::Or;
  out.a = std::make_shared<Predicate>(a);
  out.b = std::make_shared<Predicate>(b);
  return out;
}

bool has_x_atom(const Predicate& p) {
  switch (p.kind) {
    case Predicate::Kind::AtomK:
      return p.atom == Atom::CollX;
    case Predicate::Kind::Not:
      return has_x_atom(*p.a);
    default:
      return has_x_atom(*p.a) || has_x_atom(*p.b);
  }
}

std::string to_string(const Predicate& p) {
  switch (p.kind) {
    case Predicate::Kind::AtomK:
      switch (p.atom) {
        case Atom::PreQ: return "PreQ";
        case Atom::PreC: return "PreC";
        case Atom::CollQ: return "CollQ";
        case Atom::CollH: return "CollH";
        case Atom::CollC: return "CollC";
        case Atom::CollQQ: return "CollQQ";
        case Atom::CollX: return "CollX";
      }
      return "?";
    case Predicate::Kind::Not:
      return "!(" + to_string(*p.a) + ")";
    case Predicate::Kind::And:
      return "(" + to_string(*p.a) + "*" + to_string(*p.b) + ")";
    case Predicate::Kind::Or:
      return "(" + to_string(*p.a) + "+" + to_string(*p.b) + ")";
  }
  return "?";
}

namespace {

struct AtomTruths {
  bool consistent = false;
  bool pre_q = false, pre_c = false;
  bool coll_q = false, coll_qq = false, coll_h = false, coll_c = false;
  int hyb_endpoints = 0;  // distinct unrecorded endpoints over hybrid collisions
  int hyb_x = -1;
};

AtomTruths atom_truths(const BasisState& b) {
  AtomTruths t;
  t.consistent = is_structurally_consistent(b);
  if (!t.consistent) return t;
  for (const auto& s : b.h.filled)
    if (s.second == 0) t.pre_c = true;
  long qpairs = 0;
  std::vector<std::pair<int, int>> db_only;  // (x, value)
  std::vector<int> hvals;
  for (const auto& s : b.h.filled)
    if (s.second != kBot) hvals.push_back(s.second);
  for (const auto& e : b.d.entries) {
    if (b.h.contains(e.first)) continue;
    if (e.second == 0) t.pre_q = true;
    for (const auto& o : db_only)
      if (o.second == e.second) ++qpairs;
    bool hyb = std::find(hvals.begin(), hvals.end(), e.second) != hvals.end();
    if (hyb) {
      if (t.hyb_endpoints == 0 || t.hyb_x != e.first) ++t.hyb_endpoints;
      t.hyb_x = e.first;
    }
    db_only.emplace_back(e.first, e.second);
  }
  t.coll_q = qpairs >= 1;
  t.coll_qq = qpairs >= 2;
  t.coll_h = t.hyb_endpoints > 0;
  // classical collision: two distinct recorded indices with the same value
  const auto& f = b.h.filled;
  for (size_t i = 0; i < f.size() && !t.coll_c; ++i)
    for (size_t j = i + 1; j < f.size(); ++j)
      if (f[i].first != f[j].first && f[i].second != kBot && f[i].second == f[j].second) {
        t.coll_c = true;
        break;
      }
  return t;
}

bool eval_with(const Predicate& p, const AtomTruths& t, const BasisState& b) {
  switch (p.kind) {
    case Predicate::Kind::AtomK:
      if (!t.consistent) return false;
      switch (p.atom) {
        case Atom::PreQ: return t.pre_q;
        case Atom::PreC: return t.pre_c;
        case Atom::CollQ: return t.coll_q;
        case Atom::CollQQ: return t.coll_qq;
        case Atom::CollH: return t.coll_h;
        case Atom::CollC: return t.coll_c;
        case Atom::CollX:
          return !b.h.contains(b.x) && (t.hyb_endpoints == 0 || (t.hyb_endpoints == 1 && t.hyb_x == b.x));
      }
      return false;
    case Predicate::Kind::Not:
      return !eval_with(*p.a, t, b);
    case Predicate::Kind::And:
      return eval_with(*p.a, t, b) && eval_with(*p.b, t, b);
    case Predicate::Kind::Or:
      return eval_with(*p.a, t, b) || eval_with(*p.b, t, b);
  }
  return false;
}

}  // namespace

bool eval_predicate(const Predicate& p, const BasisState& b) {
  return eval_with(p, atom_truths(b), b);
}

SparseState project(const SparseState& s, const Predicate& p) {
  SparseState out(s.params);
  out.terms.reserve(s.terms.size());
  for (const auto& t : s.terms)
    if (eval_predicate(p, decode(s.enc, t.first))) out.terms.push_back(t);
  return out;
}

// ---------------------------------------------------------------------------
// PredTable
// ---------------------------------------------------------------------------

PredTable::PredTable(const Encoding& enc) : enc_(enc) {
  if (enc.hr > (1u << 26)) throw SizeError("history space too large for the predicate table");
  if (enc.params.N > 16 || enc.params.M > 32)
    throw SizeError("register geometry too large for the predicate table");
  hrow_.assign(enc.hr, -1);
}

int32_t PredTable::row_index(uint64_t h) {
  int32_t idx = hrow_[h];
  if (idx < 0) {
    idx = static_cast<int32_t>(dommask_.size());
    hrow_[h] = idx;
    bits_.resize(bits_.size() + enc_.dr);
    xinfo_.resize(xinfo_.size() + enc_.dr);
    dommask_.push_back(0);
    fill_row(h, idx);
  }
  return idx;
}

const uint8_t* PredTable::row(uint64_t h) {
  // row_index may grow bits_, so it must run before data() is taken
  size_t idx = static_cast<size_t>(row_index(h));
  return bits_.data() + idx * enc_.dr;
}
const uint8_t* PredTable::xrow(uint64_t h) {
  size_t idx = static_cast<size_t>(row_index(h));
  return xinfo_.data() + idx * enc_.dr;
}
uint32_t PredTable::dom_mask(uint64_t h) { return dommask_[row_index(h)]; }

void PredTable::fill_row(uint64_t h, int32_t idx) {
  const int M = enc_.params.M;
  const int N = enc_.params.N;
  uint8_t* out = bits_.data() + static_cast<size_t>(idx) * enc_.dr;
  uint8_t* xout = xinfo_.data() + static_cast<size_t>(idx) * enc_.dr;

  // decode the history once
  int forced[32];  // digit forced at each coordinate, -1 = free
  for (int x = 0; x < M; ++x) forced[x] = -1;
  bool h_ok = true;
  bool pre_c = false, coll_c = false;
  std::vector<char> hval(N, 0);
  uint32_t dom = 0;
  {
    uint64_t hh = h;
    for (int i = 0; i < enc_.params.c_max; ++i) {
      uint64_t slot = hh % enc_.slot_radix;
      hh /= enc_.slot_radix;
      if (slot == 0) {
        if (hh != 0) h_ok = false;  // prefix discipline
        break;
      }
      int sx, sy;
      enc_.slot_decode(slot, sx, sy);
      int dig = (sy == kBot) ? N : sy;
      if (forced[sx] != -1 && forced[sx] != dig) h_ok = false;  // uniqueness
      if (sy != kBot) {
        if (sy == 0) pre_c = true;
        if ((dom >> sx & 1u) == 0 && hval[sy]) coll_c = true;  // distinct index, same value
        hval[sy] = 1;
      }
      forced[sx] = dig;
      dom |= 1u << sx;
    }
  }
  dommask_[idx] = dom;
  if (!h_ok) {
    std::fill(out, out + enc_.dr, 0);
    std::fill(xout, xout + enc_.dr, 0);
    return;
  }
  uint8_t base = kBitConsistent | (pre_c ? kBitPreC : 0) | (coll_c ? kBitCollC : 0);

  // sweep all databases, keeping incremental counters over the coordinates
  // outside the history; digits at history coordinates must match
  struct Frame {
    int cnt[16];      // db-only count per value
    int qpairs;
    int hyb_n;        // db-only entries whose value is recorded in h
    int hyb_x;
    bool pre_q;
  };
  Frame fr;
  std::fill(std::begin(fr.cnt), std::end(fr.cnt), 0);
  fr.qpairs = 0;
  fr.hyb_n = 0;
  fr.hyb_x = -1;
  fr.pre_q = false;

  // recursive lambda over coordinates from the top; d accumulates the code
  auto rec = [&](auto&& self, int x, uint64_t d, Frame f) -> void {
    if (x < 0) {
      uint8_t b = base;
      if (f.qpairs >= 1) b |= kBitCollQ;
      if (f.qpairs >= 2) b |= kBitCollQQ;
      if (f.hyb_n >= 1) b |= kBitCollH;
      if (f.pre_q) b |= kBitPreQ;
      out[d] = b;
      xout[d] = (f.hyb_n == 0) ? 0 : (f.hyb_n == 1 ? static_cast<uint8_t>(1 + f.hyb_x) : 255);
      return;
    }
    uint64_t dpx = enc_.dpow[x];
    if (forced[x] != -1) {
      // only the matching digit is consistent; other digits give all-false rows
      self(self, x - 1, d + static_cast<uint64_t>(forced[x]) * dpx, f);
      for (int dig = 0; dig <= N; ++dig) {
        if (dig == forced[x]) continue;
        uint64_t lo = d + static_cast<uint64_t>(dig) * dpx;
        std::fill(out + lo, out + lo + dpx, 0);
        std::fill(xout + lo, xout + lo + dpx, 0);
      }
      return;
    }
    // free coordinate: absent digit first, then each value
    self(self, x - 1, d + static_cast<uint64_t>(N) * dpx, f);
    for (int v = 0; v < N; ++v) {
      Frame g = f;
      g.qpairs += g.cnt[v];
      g.cnt[v] += 1;
      if (hval[v]) {
        if (g.hyb_n == 0 || g.hyb_x != x) ++g.hyb_n;
        g.hyb_x = x;
      }
      if (v == 0) g.pre_q = true;
      self(self, x - 1, d + static_cast<uint64_t>(v) * dpx, g);
    }
  };
  rec(rec, M - 1, 0, fr);
}

namespace {

bool eval_bits(const Predicate& p, uint8_t bits, uint8_t xi, int x, uint32_t dom) {
  switch (p.kind) {
    case Predicate::Kind::AtomK:
      switch (p.atom) {
        case Atom::PreQ: return bits & kBitPreQ;
        case Atom::PreC: return bits & kBitPreC;
        case Atom::CollQ: return bits & kBitCollQ;
        case Atom::CollQQ: return bits & kBitCollQQ;
        case Atom::CollH: return bits & kBitCollH;
        case Atom::CollC: return bits & kBitCollC;
        case Atom::CollX:
          return (bits & kBitConsistent) && ((dom >> x & 1u) == 0) &&
                 (xi == 0 || xi == static_cast<uint8_t>(1 + x));
      }
      return false;
    case Predicate::Kind::Not:
      return !eval_bits(*p.a, bits, xi, x, dom);
    case Predicate::Kind::And:
      return eval_bits(*p.a, bits, xi, x, dom) && eval_bits(*p.b, bits, xi, x, dom);
    case Predicate::Kind::Or:
      return eval_bits(*p.a, bits, xi, x, dom) || eval_bits(*p.b, bits, xi, x, dom);
  }
  return false;
}

}  // namespace

bool PredTable::eval(const Predicate& p, uint64_t code) {
  uint64_t h = enc_.h_of(code);
  uint64_t d = enc_.d_of(code);
  int x = enc_.x_of_alabel(enc_.alabel_of(code));
  int32_t idx = row_index(h);
  return eval_bits(p, bits_[static_cast<size_t>(idx) * enc_.dr + d],
                   xinfo_[static_cast<size_t>(idx) * enc_.dr + d], x, dommask_[idx]);
}

MaskSet::MaskSet(PredTable& table, const std::vector<Predicate>& preds)
    : table_(&table), dr_(table.enc().dr), hr_(table.enc().hr), n_(static_cast<int>(preds.size())) {
  if (n_ > 32) throw SizeError("too many masks");
  for (const auto& p : preds)
    if (has_x_atom(p)) throw ParamError("MaskSet predicates must be free of the X atom");
  for (int bits = 0; bits < 128; ++bits) {
    uint32_t v = 0;
    for (int i = 0; i < n_; ++i)
      if (eval_bits(preds[i], static_cast<uint8_t>(bits), 0, 0, 0)) v |= 1u << i;
    truth_[bits] = v;
  }
}

uint32_t MaskSet::operator()(uint64_t code) const {
  uint64_t d = code % dr_;
  uint64_t h = (code / dr_) % hr_;
  return truth_[table_->bits(h, d) & 0x7f];
}

// ---------------------------------------------------------------------------
// hd-predicate classification
// ---------------------------------------------------------------------------

namespace {

// all histories (ordered, within capacity) whose function view equals that of h
std::vector<History> equivalent_histories(const History& h) {
  std::vector<std::pair<int, int>> fv;
  for (const auto& s : h.filled) {
    bool seen = false;
    for (const auto& f : fv) seen = seen || f == s;
    if (!seen) fv.push_back(s);
  }
  std::vector<History> out;
  std::vector<std::pair<int, int>> cur;
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(cur.size()) >= static_cast<int>(fv.size())) {
      // covered check
      bool covered = true;
      for (const auto& f : fv) {
        bool found = false;
        for (const auto& c : cur) found = found || c == f;
        covered = covered && found;
      }
      if (covered) {
        History hh;
        hh.c_max = h.c_max;
        hh.filled = cur;
        out.push_back(hh);
      }
    }
    if (static_cast<int>(cur.size()) >= h.c_max) return;
    for (const auto& f : fv) {
      cur.push_back(f);
      self(self);
      cur.pop_back();
    }
  };
  rec(rec);
  return out;
}

}  // namespace

HdPredReport check_hd_predicate(const Predicate& p, const OracleParams& params, int c, int q) {
  HdPredReport rep;
  std::vector<BasisState> space = enumerate_consistent(params, c, q);
  for (const auto& b : space) {
    bool truth = eval_predicate(p, b);
    if (rep.history_invariant) {
      for (const History& hh : equivalent_histories(b.h)) {
        BasisState b2 = b;
        b2.h = hh;
        if (eval_predicate(p, b2) != truth) {
          rep.history_invariant = false;
          rep.invariance_counterexample = to_string(b) + " vs " + to_string(b2);
          break;
        }
      }
    }
    if (truth && rep.database_monotone) {
      for (int x = 0; x < params.M && rep.database_monotone; ++x) {
        if (b.d.value(x) != kBot || b.h.contains(x)) continue;
        for (int y = 0; y < params.N; ++y) {
          BasisState b2 = b;
          b2.d = db_set(b.d, x, y, params.M);
          if (!eval_predicate(p, b2)) {
            rep.database_monotone = false;
            rep.monotone_counterexample = to_string(b) + " -> " + to_string(b2);
            break;
          }
        }
      }
    }
    if (!rep.history_invariant && !rep.database_monotone) break;
  }
  return rep;
}

}  // namespace hco
