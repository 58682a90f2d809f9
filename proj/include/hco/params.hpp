#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

// Register geometry and the packed integer encoding of basis states.
//
// A basis state |x,p,w,H,D> is packed into a uint64 code with the database
// digits lowest, then the history slots, then the (x,p,w) part:
//
//   code = d + DR * (h + HR * (w + W * (p + N * x)))
//
// where d is the database in mixed radix N+1 per coordinate (digit N = "absent"),
// h is the history in radix 1 + M*(N+1) per slot (slot 0 = empty), and
// DR = (N+1)^M, HR = slot_radix^c_max.  Sorting states by code groups terms
// that share (x,p,w,H) contiguously with the database varying fastest, which
// is what the oracle kernels rely on.

namespace hco {

// value-or-bottom convention in the unpacked API: y in [0,N) or kBot for "absent"
inline constexpr int kBot = -1;

struct ParamError : std::runtime_error {
  explicit ParamError(const std::string& m) : std::runtime_error("param error: " + m) {}
};
struct CapacityError : std::runtime_error {
  explicit CapacityError(const std::string& m) : std::runtime_error("capacity error: " + m) {}
};
struct ConsistencyError : std::runtime_error {
  explicit ConsistencyError(const std::string& m) : std::runtime_error("consistency error: " + m) {}
};
struct SizeError : std::runtime_error {
  explicit SizeError(const std::string& m) : std::runtime_error("size error: " + m) {}
};

struct OracleParams {
  int M = 1;      // domain size, x in [M]
  int N = 2;      // range size, p and values in [N]
  int c_max = 0;  // history slots
  int w_dim = 1;  // workspace dimension

  void validate() const {
    if (M < 1) throw ParamError("M must be >= 1");
    if (N < 2) throw ParamError("N must be >= 2");
    if (c_max < 0) throw ParamError("c_max must be >= 0");
    if (w_dim < 1) throw ParamError("w_dim must be >= 1");
  }

  friend bool operator==(const OracleParams& a, const OracleParams& b) {
    return a.M == b.M && a.N == b.N && a.c_max == b.c_max && a.w_dim == b.w_dim;
  }
  friend bool operator!=(const OracleParams& a, const OracleParams& b) { return !(a == b); }
};

class Encoding {
 public:
  OracleParams params;
  uint64_t rd = 0;          // N+1, radix of one database digit
  uint64_t dr = 0;          // rd^M
  uint64_t slot_radix = 0;  // 1 + M*(N+1)
  uint64_t hr = 0;          // slot_radix^c_max
  uint64_t drhr = 0;        // dr*hr
  uint64_t a_dim = 0;       // M*N*w_dim
  uint64_t total = 0;       // a_dim*drhr
  std::vector<uint64_t> dpow;  // rd^x
  std::vector<uint64_t> hpow;  // slot_radix^i

  Encoding() = default;

  explicit Encoding(const OracleParams& p) : params(p) {
    p.validate();
    rd = static_cast<uint64_t>(p.N) + 1;
    slot_radix = 1 + static_cast<uint64_t>(p.M) * rd;
    dpow.resize(p.M + 1);
    dpow[0] = 1;
    for (int i = 0; i < p.M; ++i) dpow[i + 1] = checked_mul(dpow[i], rd);
    dr = dpow[p.M];
    hpow.resize(p.c_max + 1);
    hpow[0] = 1;
    for (int i = 0; i < p.c_max; ++i) hpow[i + 1] = checked_mul(hpow[i], slot_radix);
    hr = hpow[p.c_max];
    drhr = checked_mul(dr, hr);
    a_dim = static_cast<uint64_t>(p.M) * p.N * p.w_dim;
    total = checked_mul(drhr, a_dim);
  }

  // ---- (x,p,w) label ("A label"), the top field of the code ----
  uint64_t alabel(int x, int p, int w) const {
    return static_cast<uint64_t>(w) +
           static_cast<uint64_t>(params.w_dim) * (static_cast<uint64_t>(p) + static_cast<uint64_t>(params.N) * x);
  }
  int x_of_alabel(uint64_t a) const { return static_cast<int>(a / (static_cast<uint64_t>(params.w_dim) * params.N)); }
  int p_of_alabel(uint64_t a) const { return static_cast<int>((a / params.w_dim) % params.N); }
  int w_of_alabel(uint64_t a) const { return static_cast<int>(a % params.w_dim); }

  uint64_t make(uint64_t a, uint64_t h, uint64_t d) const { return d + dr * (h + hr * a); }
  uint64_t alabel_of(uint64_t code) const { return code / drhr; }
  uint64_t h_of(uint64_t code) const { return (code / dr) % hr; }
  uint64_t d_of(uint64_t code) const { return code % dr; }

  // ---- database digits ----
  // digit value N means "absent"; dvalue returns kBot for it
  int dvalue(uint64_t d, int x) const {
    int v = static_cast<int>((d / dpow[x]) % rd);
    return v == params.N ? kBot : v;
  }
  uint64_t d_with(uint64_t d, int x, int y) const {  // y in [0,N) or kBot
    uint64_t digit = (y == kBot) ? static_cast<uint64_t>(params.N) : static_cast<uint64_t>(y);
    uint64_t cur = (d / dpow[x]) % rd;
    return d + (digit - cur) * dpow[x];
  }

  // ---- history slots ----
  // slot 0 is empty (*); otherwise 1 + x*(N+1) + ydigit
  uint64_t slot_code(int x, int y) const {
    uint64_t digit = (y == kBot) ? static_cast<uint64_t>(params.N) : static_cast<uint64_t>(y);
    return 1 + static_cast<uint64_t>(x) * rd + digit;
  }
  // decodes slot into (x, y); pre: slot != 0
  void slot_decode(uint64_t slot, int& x, int& y) const {
    uint64_t v = slot - 1;
    x = static_cast<int>(v / rd);
    int digit = static_cast<int>(v % rd);
    y = (digit == params.N) ? kBot : digit;
  }
  uint64_t slot_at(uint64_t h, int i) const { return (h / hpow[i]) % slot_radix; }

  // number of filled slots assuming prefix discipline
  int fill_count(uint64_t h) const {
    int k = 0;
    while (k < params.c_max && slot_at(h, k) != 0) ++k;
    return k;
  }

  // H(x): the history value at x, or found=false if x not in H.
  // Scans the filled prefix; with uniqueness the first hit is the function view.
  bool h_lookup(uint64_t h, int x, int& y) const {
    for (int i = 0; i < params.c_max; ++i) {
      uint64_t s = h % slot_radix;
      h /= slot_radix;
      if (s == 0) break;
      int sx, sy;
      slot_decode(s, sx, sy);
      if (sx == x) {
        y = sy;
        return true;
      }
    }
    return false;
  }

 private:
  static uint64_t checked_mul(uint64_t a, uint64_t b) {
    if (b != 0 && a > UINT64_MAX / b) throw SizeError("register space does not fit in 64-bit codes");
    return a * b;
  }
};

}  // namespace hco
