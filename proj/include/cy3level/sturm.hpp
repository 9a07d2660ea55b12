#pragma once
// Index of Gamma0(N), Sturm bound, genus of X0(N), and cusp-form / new-
// subspace dimensions. Everything through exact integer identities.

#include "cy3level/arith.hpp"

namespace cy3 {

struct Gamma0Data {
  i64 N = 1;
  i64 mu = 1;      // index [SL2(Z) : Gamma0(N)]
  i64 nu2 = 1;     // elliptic points of order 2
  i64 nu3 = 1;     // elliptic points of order 3
  i64 nu_inf = 1;  // cusps
  i64 g = 0;       // genus, from 12g = 12 + mu - 3 nu2 - 4 nu3 - 6 nu_inf
};

// N >= 1; domain_error otherwise. The 12 | ... identity is asserted.
Gamma0Data gamma0_data(i64 N);

// ceil(k * mu(N) / 12); k even, k >= 2 (domain_error otherwise).
i64 sturm_bound(i64 N, i64 k);

// dim S_k(Gamma0(N)): genus for k = 2; the standard valence-formula
// expression for even k >= 4.
i64 dim_cusp(i64 N, i64 k);

// dim of the new subspace, via the Moebius-like convolution
// sum_{d | N} beta(N/d) dim_cusp(d, k), beta multiplicative with
// beta(p) = -2, beta(p^2) = 1, beta(p^e) = 0 for e >= 3.
i64 dim_new(i64 N, i64 k);

}  // namespace cy3
