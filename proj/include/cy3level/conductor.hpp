#pragma once
// Conductor exponent bounds for the bad primes, candidate-level enumeration,
// and the allowed residual-vs-full conductor exponent pairs.

#include <set>
#include <vector>

#include "cy3level/arith.hpp"

namespace cy3 {

struct BoundTable {
  std::set<i64> bad_primes;
  std::map<i64, int> exponents;  // b_p for exactly the primes in bad_primes
  Factorization B;               // prod p^{b_p}
};

// 8 for p = 2, 5 for p = 3, 2 for any other prime. Non-prime: domain_error.
int serre_exponent(i64 p);

// BoundTable with the serre_exponent caps. Non-prime element: domain_error.
BoundTable serre_bound(const std::set<i64>& S);

// Exactly divisors(B), ascending.
std::vector<i64> candidate_levels(const BoundTable& bt);

// True iff e_resid = e_full or (e_resid, e_full) in {(0,1), (0,2), (1,2)}.
bool carayol_allowed(int e_resid, int e_full);

// Minimum e_resid with carayol_allowed(e_resid, e_full):
// 0 for e_full <= 2, e_full for e_full >= 3.
int forced_residual_exponent(int e_full);

}  // namespace cy3
