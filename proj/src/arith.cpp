#include "cy3level/arith.hpp"

#include <algorithm>
#include <numeric>

namespace cy3 {

i64 checked_add(i64 a, i64 b) {
  i64 r;
  if (__builtin_add_overflow(a, b, &r))
    throw overflow_error("integer overflow in addition");
  return r;
}

i64 checked_mul(i64 a, i64 b) {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r))
    throw overflow_error("integer overflow in multiplication");
  return r;
}

i64 checked_pow(i64 b, i64 e) {
  if (e < 0) throw domain_error("checked_pow: negative exponent");
  i64 r = 1;
  for (i64 i = 0; i < e; ++i) r = checked_mul(r, b);
  return r;
}

i64 isqrt(i64 n) {
  if (n < 0) throw domain_error("isqrt: negative argument");
  if (n < 2) return n;
  i64 x = n, y = (x + 1) / 2;
  while (y < x) {
    x = y;
    y = (x + n / x) / 2;
  }
  return x;
}

bool is_prime(i64 n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (i64 d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

i64 Factorization::value() const {
  i64 v = 1;
  for (auto [p, e] : factors) v = checked_mul(v, checked_pow(p, e));
  return v;
}

int Factorization::exponent_of(i64 p) const {
  auto it = factors.find(p);
  return it == factors.end() ? 0 : it->second;
}

Factorization factorize(i64 n) {
  if (n < 1) throw domain_error("factorize: argument must be positive");
  Factorization f;
  for (i64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) f.factors[p] = e;
  }
  if (n > 1) f.factors[n] += 1;
  return f;
}

std::vector<i64> divisors(const Factorization& f) {
  std::vector<i64> ds{1};
  for (auto [p, e] : f.factors) {
    std::size_t base = ds.size();
    i64 q = 1;
    for (int i = 1; i <= e; ++i) {
      q = checked_mul(q, p);
      for (std::size_t j = 0; j < base; ++j) ds.push_back(checked_mul(ds[j], q));
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

namespace {
// (a|2): 0 for even a; +1 for a = +-1 mod 8; -1 for a = +-3 mod 8.
int kron2(i64 a) {
  i64 m = ((a % 8) + 8) % 8;
  if (m % 2 == 0) return 0;
  return (m == 1 || m == 7) ? 1 : -1;
}
}  // namespace

int kronecker(i64 a, i64 n) {
  if (n == 0) throw domain_error("kronecker: n must be nonzero");
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;  // (a|-1)
  }
  while (n % 2 == 0) {
    n /= 2;
    int k2 = kron2(a);
    if (k2 == 0) return 0;
    result *= k2;
  }
  // Jacobi symbol (a|n) for odd n >= 1 by quadratic reciprocity.
  a = ((a % n) + n) % n;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      i64 m = n % 8;
      if (m == 3 || m == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

i64 euler_phi(i64 n) {
  if (n < 1) throw domain_error("euler_phi: argument must be positive");
  i64 r = n;
  for (auto [p, e] : factorize(n).factors) r = r / p * (p - 1);
  return r;
}

i64 pow_mod(i64 b, i64 e, i64 m) {
  if (m < 1) throw domain_error("pow_mod: modulus must be positive");
  if (e < 0) throw domain_error("pow_mod: negative exponent");
  b = ((b % m) + m) % m;
  i64 r = 1 % m;
  while (e) {
    if (e & 1) r = checked_mul(r, b) % m;
    b = checked_mul(b, b) % m;
    e >>= 1;
  }
  return r;
}

i64 inv_mod(i64 a, i64 m) {
  if (m < 1) throw domain_error("inv_mod: modulus must be positive");
  i64 g = m, x = 0, x1 = 1, a1 = ((a % m) + m) % m;
  while (a1 != 0) {
    i64 q = g / a1;
    g -= q * a1;
    std::swap(g, a1);
    x -= q * x1;
    std::swap(x, x1);
  }
  if (g != 1) throw domain_error("inv_mod: argument not invertible");
  return ((x % m) + m) % m;
}

namespace {
// Lift r (coprime residue mod q) to the residue mod M that is r mod q and
// 1 mod M/q, where q || M.
i64 crt_lift(i64 r, i64 q, i64 M) {
  i64 Mq = M / q;
  if (Mq == 1) return ((r % M) + M) % M;
  i64 inv = inv_mod(Mq % q, q);
  return (1 + Mq * ((((r - 1) % q + q) % q) * inv % q)) % M;
}

i64 mult_order(i64 g, i64 M) {
  i64 o = 1, x = g % M;
  while (x != 1 % M) {
    x = checked_mul(x, g) % M;
    ++o;
  }
  return o;
}

i64 primitive_root_prime_power(i64 p, int e) {
  i64 q = checked_pow(p, e);
  i64 phi = q / p * (p - 1);
  auto fac = factorize(phi);
  for (i64 g = 2; g < q; ++g) {
    if (g % p == 0) continue;
    bool ok = true;
    for (auto [r, _] : fac.factors)
      if (pow_mod(g, phi / r, q) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  throw domain_error("primitive root search failed");
}
}  // namespace

UnitGroup unit_group(i64 M) {
  if (M < 1) throw domain_error("unit_group: modulus must be positive");
  UnitGroup ug;
  ug.modulus = M;
  if (M <= 2) return ug;  // trivial group
  for (auto [p, e] : factorize(M).factors) {
    i64 q = checked_pow(p, e);
    if (p == 2) {
      if (e == 1) continue;
      if (e == 2) {
        ug.generators.emplace_back(crt_lift(3, q, M), 2);
      } else {
        ug.generators.emplace_back(crt_lift(q - 1, q, M), 2);
        ug.generators.emplace_back(crt_lift(5, q, M), i64(1) << (e - 2));
      }
    } else {
      i64 g = primitive_root_prime_power(p, e);
      ug.generators.emplace_back(crt_lift(g, q, M), q / p * (p - 1));
    }
  }
  for (auto [g, o] : ug.generators) {
    if (mult_order(g, M) != o)
      throw domain_error("unit_group: generator order mismatch");
  }
  return ug;
}

std::vector<i64> unit_dlog(const UnitGroup& ug, i64 x) {
  i64 M = ug.modulus;
  x = ((x % M) + M) % M;
  if (std::gcd(x, M) != 1)
    throw domain_error("unit_dlog: argument not coprime to modulus");
  std::size_t n = ug.generators.size();
  std::vector<i64> exps(n, 0);
  // Odometer enumeration over all exponent vectors; M is small here.
  while (true) {
    i64 v = 1;
    for (std::size_t i = 0; i < n; ++i)
      v = checked_mul(v, pow_mod(ug.generators[i].first, exps[i], M)) % M;
    if (v == x % M) return exps;
    std::size_t i = 0;
    for (; i < n; ++i) {
      if (++exps[i] < ug.generators[i].second) break;
      exps[i] = 0;
    }
    if (i == n) throw domain_error("unit_dlog: element not generated");
  }
}

}  // namespace cy3
