#pragma once
// Exact integer utilities: factorization, divisors, Kronecker symbol, and
// the unit-group structure of (Z/MZ)*. All arithmetic is exact 64-bit with
// overflow detection; nothing here uses floating point.

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cy3 {

using i64 = std::int64_t;

// Thrown for violated preconditions (non-prime input, zero modulus, ...).
class domain_error : public std::runtime_error {
 public:
  explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when a computation would exceed 64-bit range.
class overflow_error : public std::runtime_error {
 public:
  explicit overflow_error(const std::string& msg) : std::runtime_error(msg) {}
};

i64 checked_add(i64 a, i64 b);
i64 checked_mul(i64 a, i64 b);
// b^e with overflow checking; e >= 0.
i64 checked_pow(i64 b, i64 e);

// floor(sqrt(n)) for n >= 0, exact.
i64 isqrt(i64 n);

bool is_prime(i64 n);

// A positive integer as an ordered map prime -> exponent (>= 1).
struct Factorization {
  std::map<i64, int> factors;

  // Reconstructs the integer exactly.
  i64 value() const;
  int exponent_of(i64 p) const;
  bool operator==(const Factorization&) const = default;
};

// Trial division; 1 <= n. n < 1 raises domain_error.
Factorization factorize(i64 n);

// All positive divisors of value(f), strictly increasing.
std::vector<i64> divisors(const Factorization& f);

// Kronecker symbol (a|n); full semantics for any a and n != 0.
int kronecker(i64 a, i64 n);

// Euler phi.
i64 euler_phi(i64 n);

// b^e mod m, m >= 1, e >= 0.
i64 pow_mod(i64 b, i64 e, i64 m);

// Inverse of a mod m (gcd(a, m) = 1 required; domain_error otherwise).
i64 inv_mod(i64 a, i64 m);

// (Z/MZ)* as an internal direct product of cyclic groups.
struct UnitGroup {
  i64 modulus = 1;
  // (residue class, multiplicative order); product of orders = phi(M).
  std::vector<std::pair<i64, i64>> generators;
};

// Built via CRT from prime-power components: (Z/2)* trivial, (Z/4)* = Z/2,
// (Z/2^k)* = Z/2 x Z/2^(k-2) for k >= 3, (Z/p^k)* cyclic for odd p.
UnitGroup unit_group(i64 M);

// Exponent vector of x (coprime to M) with respect to ug.generators.
// Brute-force enumeration; intended for small M (character work, M <= ~10^4).
std::vector<i64> unit_dlog(const UnitGroup& ug, i64 x);

}  // namespace cy3
