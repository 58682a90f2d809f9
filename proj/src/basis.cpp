#include "hco/basis.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <sstream>

namespace hco {

Database db_set(const Database& d, int x, int y, int M) {
  if (x < 0 || x >= M) throw ParamError("db_set: index out of range");
  Database out;
  out.entries.reserve(d.entries.size() + 1);
  bool placed = false;
  for (const auto& e : d.entries) {
    if (e.first == x) {
      if (y != kBot) {
        out.entries.emplace_back(x, y);
      }
      placed = true;
    } else {
      if (!placed && e.first > x && y != kBot) {
        out.entries.emplace_back(x, y);
        placed = true;
      }
      out.entries.push_back(e);
    }
  }
  if (!placed && y != kBot) out.entries.emplace_back(x, y);
  return out;
}

History history_append(const History& h, int x, int y) {
  if (static_cast<int>(h.filled.size()) >= h.c_max)
    throw CapacityError("history_append: no star slot remaining");
  History out = h;
  out.filled.emplace_back(x, y);
  return out;
}

bool is_structurally_consistent(const BasisState& b) {
  // uniqueness: the filled slots form a function of x
  const auto& f = b.h.filled;
  for (size_t i = 0; i < f.size(); ++i)
    for (size_t j = i + 1; j < f.size(); ++j)
      if (f[i].first == f[j].first && f[i].second != f[j].second) return false;
  // equality: D agrees with H wherever H is defined (including (x, bottom))
  for (const auto& s : f)
    if (b.d.value(s.first) != s.second) return false;
  return true;
}

bool is_consistent(const BasisState& b, int c, int q) {
  if (static_cast<int>(b.h.filled.size()) > c) return false;
  int db_only = 0;
  for (const auto& e : b.d.entries)
    if (!b.h.contains(e.first)) ++db_only;
  if (db_only > q) return false;
  return is_structurally_consistent(b);
}

std::string to_string(const BasisState& b) {
  std::ostringstream os;
  os << b.x << '|' << b.p << '|' << b.w << "|H:";
  bool first = true;
  for (const auto& s : b.h.filled) {
    if (!first) os << ',';
    first = false;
    os << '(' << s.first << ',';
    if (s.second == kBot)
      os << '_';
    else
      os << s.second;
    os << ')';
  }
  if (b.h.stars() > 0) {
    if (!first) os << ',';
    os << '*' << b.h.stars();
  }
  os << "|D:{";
  first = true;
  for (const auto& e : b.d.entries) {
    if (!first) os << ',';
    first = false;
    os << e.first << "->" << e.second;
  }
  os << '}';
  return os.str();
}

namespace {

[[noreturn]] void bad(const std::string& text) {
  throw ParamError("parse_basis_state: malformed input: " + text);
}

}  // namespace

BasisState parse_basis_state(const std::string& text, const OracleParams& params) {
  BasisState b;
  b.h.c_max = params.c_max;
  std::istringstream is(text);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(is, part, '|')) parts.push_back(part);
  if (parts.size() != 5) bad(text);
  b.x = std::atoi(parts[0].c_str());
  b.p = std::atoi(parts[1].c_str());
  b.w = std::atoi(parts[2].c_str());
  const std::string& hs = parts[3];
  if (hs.rfind("H:", 0) != 0) bad(text);
  size_t i = 2;
  int stars = 0;
  while (i < hs.size()) {
    if (hs[i] == ',') {
      ++i;
      continue;
    }
    if (hs[i] == '*') {
      stars = std::atoi(hs.c_str() + i + 1);
      break;
    }
    if (hs[i] != '(') bad(text);
    size_t close = hs.find(')', i);
    if (close == std::string::npos) bad(text);
    std::string pair = hs.substr(i + 1, close - i - 1);
    size_t comma = pair.find(',');
    if (comma == std::string::npos) bad(text);
    int px = std::atoi(pair.substr(0, comma).c_str());
    std::string ys = pair.substr(comma + 1);
    int py = (ys == "_") ? kBot : std::atoi(ys.c_str());
    b.h.filled.emplace_back(px, py);
    i = close + 1;
  }
  if (static_cast<int>(b.h.filled.size()) + stars != params.c_max) bad(text);
  const std::string& ds = parts[4];
  if (ds.rfind("D:{", 0) != 0 || ds.back() != '}') bad(text);
  std::string body = ds.substr(3, ds.size() - 4);
  std::istringstream db(body);
  std::string ent;
  while (std::getline(db, ent, ',')) {
    size_t arrow = ent.find("->");
    if (arrow == std::string::npos) bad(text);
    b.d.entries.emplace_back(std::atoi(ent.substr(0, arrow).c_str()),
                             std::atoi(ent.substr(arrow + 2).c_str()));
  }
  std::sort(b.d.entries.begin(), b.d.entries.end());
  return b;
}

uint64_t encode(const Encoding& enc, const BasisState& b) {
  uint64_t d = 0;
  for (int x = 0; x < enc.params.M; ++x) d += static_cast<uint64_t>(enc.params.N) * enc.dpow[x];
  for (const auto& e : b.d.entries) d += (static_cast<uint64_t>(e.second) - enc.params.N) * enc.dpow[e.first];
  uint64_t h = 0;
  for (size_t i = 0; i < b.h.filled.size(); ++i)
    h += enc.slot_code(b.h.filled[i].first, b.h.filled[i].second) * enc.hpow[i];
  return enc.make(enc.alabel(b.x, b.p, b.w), h, d);
}

BasisState decode(const Encoding& enc, uint64_t code) {
  BasisState b;
  uint64_t a = enc.alabel_of(code);
  b.x = enc.x_of_alabel(a);
  b.p = enc.p_of_alabel(a);
  b.w = enc.w_of_alabel(a);
  b.h.c_max = enc.params.c_max;
  uint64_t h = enc.h_of(code);
  for (int i = 0; i < enc.params.c_max; ++i) {
    uint64_t s = h % enc.slot_radix;
    h /= enc.slot_radix;
    if (s == 0) break;
    int sx, sy;
    enc.slot_decode(s, sx, sy);
    b.h.filled.emplace_back(sx, sy);
  }
  uint64_t d = enc.d_of(code);
  for (int x = 0; x < enc.params.M; ++x) {
    int v = enc.dvalue(d, x);
    if (v != kBot) b.d.entries.emplace_back(x, v);
  }
  return b;
}

}  // namespace hco
