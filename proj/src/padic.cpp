#include "pgonal/padic.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <tuple>

namespace pgonal {

namespace {

using int128 = __int128;

BigInt pow_big(long long p, int e) {
  BigInt r = 1;
  for (int i = 0; i < e; ++i) r *= p;
  return r;
}

// extended euclid inverse of u mod m, u a unit
BigInt mod_inverse(BigInt u, const BigInt& m) {
  u %= m;
  if (u < 0) u += m;
  BigInt r0 = m, r1 = u, s0 = 0, s1 = 1;
  while (r1 != 0) {
    BigInt q = r0 / r1;
    r0 -= q * r1;
    std::swap(r0, r1);
    s0 -= q * s1;
    std::swap(s0, s1);
  }
  if (r0 != 1) throw DomainError("mod_inverse: not a unit");
  s0 %= m;
  if (s0 < 0) s0 += m;
  return s0;
}

int legendre(long long p, const BigInt& u) {
  BigInt r = u % p;
  if (r < 0) r += p;
  long long a = static_cast<long long>(r);
  if (a == 0) return 0;
  return mod_pow(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

long long least_nonresidue(long long p) {
  for (long long a = 2;; ++a) {
    if (mod_pow(a, (p - 1) / 2, p) == p - 1) return a;
  }
}

}  // namespace

PAdicContext::PAdicContext(long long prime, int precision) : p(prime), e(precision) {
  if (!is_prime(p)) throw DomainError("PAdicContext: p must be prime");
  if (e < 1) throw DomainError("PAdicContext: precision must be >= 1");
}

BigInt PAdicContext::modulus() const { return pow_big(p, e); }

GramMatrix::GramMatrix(int dim) : mat_(dim) {
  if (dim < 1) throw DomainError("GramMatrix: dimension must be >= 1");
}

GramMatrix GramMatrix::from_rows(const std::vector<std::vector<long long>>& rows) {
  const int n = static_cast<int>(rows.size());
  GramMatrix g(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n) throw DomainError("GramMatrix: not square");
    for (int j = 0; j < n; ++j) g.mat_.at(i, j) = rows[i][j];
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (g.mat_.at(i, j) != g.mat_.at(j, i)) throw DomainError("GramMatrix: not symmetric");
  return g;
}

GramMatrix GramMatrix::from_matrix(const Matrix& m) {
  GramMatrix g(m.n);
  g.mat_ = m;
  for (int i = 0; i < m.n; ++i)
    for (int j = i + 1; j < m.n; ++j)
      if (g.mat_.at(i, j) != g.mat_.at(j, i)) throw DomainError("GramMatrix: not symmetric");
  return g;
}

void GramMatrix::set(int i, int j, const BigInt& v) {
  mat_.at(i, j) = v;
  mat_.at(j, i) = v;
}

int ord(long long p, const BigInt& x) {
  if (!is_prime(p)) throw DomainError("ord: p must be prime");
  if (x == 0) return kOrdInfinity;
  BigInt a = boost::multiprecision::abs(x);
  int v = 0;
  while (a % p == 0) {
    a /= p;
    ++v;
  }
  return v;
}

int ord(long long p, const BigRat& x) {
  if (x == 0) return kOrdInfinity;
  return ord(p, numerator(x)) - ord(p, denominator(x));
}

int ord(long long p, long long x) { return ord(p, BigInt(x)); }

SquareClass square_class(long long p, const BigInt& u) {
  if (!is_prime(p)) throw DomainError("square_class: p must be prime");
  if (ord(p, u) != 0) throw DomainError("square_class: argument must be a p-adic unit");
  SquareClass c;
  c.p = p;
  c.valuation_parity = 0;
  if (p == 2) {
    BigInt r = u % 8;
    if (r < 0) r += 8;
    c.representative = static_cast<long long>(r);
  } else {
    c.representative = legendre(p, u) == 1 ? 1 : least_nonresidue(p);
  }
  return c;
}

SquareClass square_class_of(long long p, const BigInt& x) {
  if (x == 0) throw DomainError("square_class_of: argument must be nonzero");
  int v = ord(p, x);
  SquareClass c = square_class(p, x / pow_big(p, v));
  c.valuation_parity = v & 1;
  return c;
}

// ---------------------------------------------------------------------------
// Jordan decomposition

namespace {

struct JordanWork {
  long long p;
  int e;
  BigInt pe;
  Matrix w;  // symmetric working copy, entries in [0, pe)
  Matrix t;  // accumulated transform

  int vord(const BigInt& x) const {
    if (x == 0) return e;
    return std::min(ord(p, x), e);
  }

  BigInt red(const BigInt& x) const {
    BigInt r = x % pe;
    if (r < 0) r += pe;
    return r;
  }

  void swap_cols(int i, int j) {
    if (i == j) return;
    const int n = w.n;
    for (int r = 0; r < n; ++r) std::swap(w.at(r, i), w.at(r, j));
    for (int c = 0; c < n; ++c) std::swap(w.at(i, c), w.at(j, c));
    for (int r = 0; r < n; ++r) std::swap(t.at(r, i), t.at(r, j));
  }

  // col_dst += f * col_src (and the mirrored row op)
  void add_col(int dst, int src, const BigInt& f) {
    const int n = w.n;
    for (int r = 0; r < n; ++r) w.at(r, dst) = red(w.at(r, dst) + f * w.at(r, src));
    for (int c = 0; c < n; ++c) w.at(dst, c) = red(w.at(dst, c) + f * w.at(src, c));
    for (int r = 0; r < n; ++r) t.at(r, dst) = red(t.at(r, dst) + f * t.at(r, src));
  }
};

}  // namespace

JordanDecomposition jordan_decompose(const GramMatrix& g, const PAdicContext& ctx) {
  const int n = g.dim();
  const BigInt det = g.det();
  if (det == 0) throw DomainError("jordan_decompose: singular Gram matrix");
  const int vdet = ord(ctx.p, det);
  if (ctx.e <= 2 * vdet + 4)
    throw PrecisionError("jordan_decompose: insufficient precision, need e > 2 ord_p(det) + 4");

  JordanWork jw{ctx.p, ctx.e, ctx.modulus(), Matrix(n), Matrix::identity(n)};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) jw.w.at(i, j) = jw.red(g.at(i, j));

  JordanDecomposition out;
  int col = 0;
  while (col < n) {
    // pivot of minimal valuation, diagonal preferred
    int best = jw.e + 1, bi = -1, bj = -1;
    for (int i = col; i < n; ++i) {
      int v = jw.vord(jw.w.at(i, i));
      if (v < best) best = v, bi = i, bj = i;
    }
    for (int i = col; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        int v = jw.vord(jw.w.at(i, j));
        if (v < best) best = v, bi = i, bj = j;
      }
    }
    if (best >= jw.e) throw PrecisionError("jordan_decompose: pivot lost to precision");

    if (bi != bj && ctx.p != 2) {
      // surface a diagonal pivot; all diagonals have larger valuation here
      jw.add_col(bi, bj, 1);
      bj = bi;
    }

    if (bi == bj) {
      jw.swap_cols(col, bi);
      const int v = jw.vord(jw.w.at(col, col));
      const BigInt pv = pow_big(ctx.p, v);
      const BigInt unit = jw.w.at(col, col) / pv;
      const BigInt inv = mod_inverse(unit, jw.pe);
      for (int l = col + 1; l < n; ++l) {
        if (jw.w.at(col, l) == 0) continue;
        BigInt f = jw.red((jw.w.at(col, l) / pv) * inv);
        jw.add_col(l, col, jw.pe - f);
      }
      JordanBlock b;
      b.scale = v;
      b.dim = 1;
      b.unit[0] = unit;
      out.blocks.push_back(std::move(b));
      col += 1;
    } else {
      // p = 2 even block; bj > bi >= col, and bj lands at col+1 untouched by
      // the first swap (bj != col, bj != bi)
      if (bi != col) jw.swap_cols(col, bi);
      if (bj != col + 1) jw.swap_cols(col + 1, bj);
      const int v = jw.vord(jw.w.at(col, col + 1));
      const BigInt pv = pow_big(ctx.p, v);
      BigInt u00 = jw.w.at(col, col) / pv;
      BigInt u01 = jw.w.at(col, col + 1) / pv;
      BigInt u11 = jw.w.at(col + 1, col + 1) / pv;
      BigInt bdet = jw.red(u00 * u11 - u01 * u01);
      const BigInt dinv = mod_inverse(bdet, jw.pe);
      for (int l = col + 2; l < n; ++l) {
        BigInt w0 = jw.w.at(col, l) / pv;
        BigInt w1 = jw.w.at(col + 1, l) / pv;
        if (w0 == 0 && w1 == 0) continue;
        BigInt z0 = jw.red(dinv * (u11 * w0 - u01 * w1));
        BigInt z1 = jw.red(dinv * (u00 * w1 - u01 * w0));
        jw.add_col(l, col, jw.pe - z0);
        jw.add_col(l, col + 1, jw.pe - z1);
      }
      JordanBlock b;
      b.scale = v;
      b.dim = 2;
      b.unit[0] = jw.w.at(col, col) / pv;
      b.unit[1] = jw.w.at(col, col + 1) / pv;
      b.unit[2] = jw.w.at(col + 1, col) / pv;
      b.unit[3] = jw.w.at(col + 1, col + 1) / pv;
      out.blocks.push_back(std::move(b));
      col += 2;
    }
  }
  out.transform = std::move(jw.t);
  return out;
}

// ---------------------------------------------------------------------------
// diagonal representation

namespace {

// odd p: exact decision by scale stratification
bool diag_represents_odd(long long p, const std::vector<BigInt>& coeffs, BigInt c) {
  if (c == 0) return true;
  std::vector<std::pair<int, int>> coords;  // (scale, legendre of unit part)
  coords.reserve(coeffs.size());
  for (const BigInt& b : coeffs) {
    int v = ord(p, b);
    coords.emplace_back(v, legendre(p, b / pow_big(p, v)));
  }
  const int lm1 = legendre(p, BigInt(-1));
  while (true) {
    if (c == 0) return true;
    std::vector<int> units;
    for (auto& [v, l] : coords)
      if (v == 0) units.push_back(l);
    if (units.size() >= 3) return true;
    if (units.size() == 2 && lm1 * units[0] * units[1] == 1) return true;
    const int vc = ord(p, c);
    if (vc == 0) {
      if (units.empty()) return false;
      if (units.size() == 1) return legendre(p, c) * units[0] == 1;
      return true;  // a binary unit form represents every unit
    }
    // unit part anisotropic of rank <= 2: unit coords vanish mod p
    for (auto& [v, l] : coords) v = (v == 0) ? 1 : v - 1;
    c /= p;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// quadratic polynomials and the lifting decider

QuadraticPoly::QuadraticPoly(int t)
    : num_vars(t), quad(static_cast<size_t>(t) * (t + 1) / 2), linear(t) {
  if (t < 0) throw DomainError("QuadraticPoly: negative variable count");
}

int QuadraticPoly::pack(int i, int j) const {
  // i <= j; row-major upper triangle
  return i * num_vars - i * (i - 1) / 2 + (j - i);
}

BigInt& QuadraticPoly::quad_at(int i, int j) { return quad[pack(i, j)]; }
const BigInt& QuadraticPoly::quad_at(int i, int j) const { return quad[pack(i, j)]; }

QuadraticPoly QuadraticPoly::diagonal(const std::vector<BigInt>& coeffs, const BigInt& c) {
  QuadraticPoly q(static_cast<int>(coeffs.size()));
  for (int i = 0; i < q.num_vars; ++i) q.quad_at(i, i) = coeffs[i];
  q.constant = -c;
  return q;
}

BigInt QuadraticPoly::eval(const std::vector<BigInt>& y) const {
  BigInt s = constant;
  for (int i = 0; i < num_vars; ++i) {
    s += linear[i] * y[i];
    for (int j = i; j < num_vars; ++j) s += quad_at(i, j) * y[i] * y[j];
  }
  return s;
}

std::vector<BigInt> QuadraticPoly::gradient(const std::vector<BigInt>& y) const {
  std::vector<BigInt> g(linear.begin(), linear.end());
  for (int i = 0; i < num_vars; ++i) {
    g[i] += 2 * quad_at(i, i) * y[i];
    for (int j = i + 1; j < num_vars; ++j) {
      g[i] += quad_at(i, j) * y[j];
      g[j] += quad_at(i, j) * y[i];
    }
  }
  return g;
}

namespace {

// Hessian 2M (integer), M the quadratic-part matrix
Matrix poly_hessian(const QuadraticPoly& q) {
  Matrix h(q.num_vars);
  for (int i = 0; i < q.num_vars; ++i) {
    h.at(i, i) = 2 * q.quad_at(i, i);
    for (int j = i + 1; j < q.num_vars; ++j) {
      h.at(i, j) = q.quad_at(i, j);
      h.at(j, i) = q.quad_at(i, j);
    }
  }
  return h;
}

// value at the critical point, when the quadratic part is nonsingular
struct Vertex {
  bool exists = false;
  std::vector<BigRat> point;
  BigRat value;
};

Vertex poly_vertex(const QuadraticPoly& q) {
  Vertex v;
  const int t = q.num_vars;
  bool linear_zero = true;
  for (const BigInt& l : q.linear) linear_zero &= (l == 0);
  if (linear_zero) {
    v.exists = true;
    v.point.assign(t, BigRat(0));
    v.value = BigRat(q.constant);
    return v;
  }
  Matrix h = poly_hessian(q);
  if (determinant(h) == 0) return v;
  std::vector<BigInt> rhs(t);
  for (int i = 0; i < t; ++i) rhs[i] = -q.linear[i];
  v.point = solve_rational(h, rhs);
  v.exists = true;
  // evaluate over the rationals
  BigRat s = BigRat(q.constant);
  for (int i = 0; i < t; ++i) {
    s += BigRat(q.linear[i]) * v.point[i];
    for (int j = i; j < t; ++j) s += BigRat(q.quad_at(i, j)) * v.point[i] * v.point[j];
  }
  v.value = s;
  return v;
}

struct LiftState {
  std::array<long long, 8> y{};

  friend bool operator<(const LiftState& a, const LiftState& b) { return a.y < b.y; }
  friend bool operator==(const LiftState& a, const LiftState& b) { return a.y == b.y; }
};

constexpr size_t kStateLimit = 2'000'000;
constexpr long long kFanLimit = 20'000'000;

// reduced-coefficient evaluation mod p^w, all in int64/int128
struct ReducedPoly {
  int t;
  long long mod;  // p^w
  std::vector<long long> quad;  // packed
  std::vector<long long> lin;
  long long cons;

  long long mul(long long a, long long b) const {
    return static_cast<long long>(static_cast<int128>(a) * b % mod);
  }

  long long eval(const LiftState& s) const {
    int128 acc = cons;
    int idx = 0;
    for (int i = 0; i < t; ++i) {
      acc += static_cast<int128>(lin[i]) * (s.y[i] % mod);
      for (int j = i; j < t; ++j, ++idx)
        acc += static_cast<int128>(quad[idx]) * mul(s.y[i], s.y[j]);
      acc %= mod;
    }
    long long r = static_cast<long long>(acc % mod);
    return r < 0 ? r + mod : r;
  }

  void grad(const LiftState& s, std::array<long long, 8>& g) const {
    for (int i = 0; i < t; ++i) g[i] = lin[i];
    int idx = 0;
    for (int i = 0; i < t; ++i) {
      for (int j = i; j < t; ++j, ++idx) {
        if (i == j) {
          g[i] = (g[i] + 2 * static_cast<int128>(quad[idx]) * s.y[i]) % mod;
        } else {
          g[i] = (g[i] + static_cast<int128>(quad[idx]) * s.y[j]) % mod;
          g[j] = (g[j] + static_cast<int128>(quad[idx]) * s.y[i]) % mod;
        }
      }
    }
    for (int i = 0; i < t; ++i)
      if (g[i] < 0) g[i] += mod;
  }
};

int ord_ll(long long p, long long x, int cap_at) {
  if (x == 0) return cap_at;
  int v = 0;
  while (x % p == 0 && v < cap_at) {
    x /= p;
    ++v;
  }
  return v;
}

}  // namespace

int default_lifting_cap(long long p, const QuadraticPoly& q) {
  Vertex v = poly_vertex(q);
  BigInt scale = 4;
  Matrix h = poly_hessian(q);
  BigInt dh = determinant(h);
  if (dh != 0) scale *= dh * dh;
  BigInt cpart = 1;
  if (v.exists && v.value != 0) {
    cpart = numerator(v.value);
  } else if (!v.exists && q.constant != 0) {
    cpart = q.constant;
  }
  int cap = ord(p, BigInt(scale * cpart)) + 6;
  return std::max(cap, 8);
}

bool poly_equation_solvable(long long p, const QuadraticPoly& q, int cap) {
  if (!is_prime(p)) throw DomainError("poly_equation_solvable: p must be prime");
  if (cap < 1) throw DomainError("poly_equation_solvable: cap must be >= 1");
  const int t = q.num_vars;
  if (t == 0) return q.constant == 0;
  if (t > 8) throw DomainError("poly_equation_solvable: more than 8 variables unsupported");
  if (q.constant == 0) return true;

  // an integral singular solution is invisible to the gradient certificate
  Vertex vx = poly_vertex(q);
  if (vx.exists && vx.value == 0) {
    bool integral = true;
    for (const BigRat& c : vx.point) integral &= (ord(p, denominator(c)) == 0);
    if (integral) return true;
  }

  // working modulus p^(cap+2), native range
  int w = cap + 2;
  long long mod = 1;
  for (int i = 0; i < w; ++i) {
    if (mod > (3LL << 60) / p) throw PrecisionError("poly_equation_solvable: cap exceeds native precision");
    mod *= p;
  }
  ReducedPoly rp;
  rp.t = t;
  rp.mod = mod;
  rp.cons = static_cast<long long>(((q.constant % mod) + mod) % mod);
  rp.quad.resize(q.quad.size());
  rp.lin.resize(t);
  for (size_t i = 0; i < q.quad.size(); ++i)
    rp.quad[i] = static_cast<long long>(((q.quad[i] % mod) + mod) % mod);
  for (int i = 0; i < t; ++i)
    rp.lin[i] = static_cast<long long>(((q.linear[i] % mod) + mod) % mod);

  long long fan = 1;
  for (int i = 0; i < t; ++i) {
    fan *= p;
    if (fan > kFanLimit) throw PrecisionError("poly_equation_solvable: branch factor too large");
  }

  // level 1: residues mod p with Q = 0 mod p
  std::vector<LiftState> states;
  {
    LiftState s;
    for (long long d = 0; d < fan; ++d) {
      long long dd = d;
      for (int i = 0; i < t; ++i) {
        s.y[i] = dd % p;
        dd /= p;
      }
      if (rp.eval(s) % p == 0) states.push_back(s);
    }
  }

  long long ph = p;  // p^h with h = 1
  long long pj1 = p;
  std::array<long long, 8> g;
  std::vector<LiftState> next;
  auto compact = [&next]() {
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
  };
  for (int j = 1; j < cap; ++j) {
    if (states.empty()) return false;
    pj1 *= p;  // p^(j+1)
    const bool fanning = (j % 2) == 1;  // h grows entering even levels
    next.clear();
    for (const LiftState& s : states) {
      rp.grad(s, g);
      int v = w;
      for (int i = 0; i < t; ++i) v = std::min(v, ord_ll(p, g[i], w));
      if (2 * v < j) return true;
      if (rp.eval(s) % pj1 != 0) continue;
      if (!fanning) {
        next.push_back(s);
      } else {
        LiftState c = s;
        for (long long d = 0; d < fan; ++d) {
          long long dd = d;
          for (int i = 0; i < t; ++i) {
            c.y[i] = s.y[i] + (dd % p) * ph;
            dd /= p;
          }
          next.push_back(c);
          if (next.size() > kStateLimit * 4) {
            compact();
            if (next.size() > kStateLimit * 2)
              throw PrecisionError("poly_equation_solvable: frontier limit exceeded");
          }
        }
      }
    }
    compact();
    if (next.size() > kStateLimit)
      throw PrecisionError("poly_equation_solvable: frontier limit exceeded");
    states.swap(next);
    if (fanning) ph *= p;
  }
  if (states.empty()) return false;
  throw PrecisionError("poly_equation_solvable: lifting cap exceeded, raise the cap");
}

bool diag_represents(long long p, const std::vector<BigInt>& coeffs, const BigInt& c) {
  if (!is_prime(p)) throw DomainError("diag_represents: p must be prime");
  if (coeffs.empty()) throw DomainError("diag_represents: empty coefficient tuple");
  for (const BigInt& b : coeffs)
    if (b == 0) throw DomainError("diag_represents: coefficients must be nonzero");
  if (c == 0) return true;
  if (p != 2) return diag_represents_odd(p, coeffs, c);
  QuadraticPoly q = QuadraticPoly::diagonal(coeffs, c);
  int cap = 2;  // ord_2(4)
  for (const BigInt& b : coeffs) cap += ord(2, b);
  cap += ord(2, c) + 4;
  return poly_equation_solvable(2, q, cap);
}

}  // namespace pgonal
