#include "cy3level/conductor.hpp"

namespace cy3 {

int serre_exponent(i64 p) {
  if (!is_prime(p))
    throw domain_error("serre_exponent: " + std::to_string(p) + " is not prime");
  if (p == 2) return 8;
  if (p == 3) return 5;
  return 2;
}

BoundTable serre_bound(const std::set<i64>& S) {
  BoundTable bt;
  bt.bad_primes = S;
  for (i64 p : S) {
    int b = serre_exponent(p);
    bt.exponents[p] = b;
    bt.B.factors[p] = b;
  }
  return bt;
}

std::vector<i64> candidate_levels(const BoundTable& bt) { return divisors(bt.B); }

bool carayol_allowed(int e_resid, int e_full) {
  if (e_resid == e_full) return true;
  return (e_resid == 0 && e_full == 1) || (e_resid == 0 && e_full == 2) ||
         (e_resid == 1 && e_full == 2);
}

int forced_residual_exponent(int e_full) { return e_full >= 3 ? e_full : 0; }

}  // namespace cy3
