#include "cy3level/sturm.hpp"

#include <numeric>

namespace cy3 {

namespace {
void require_weight(i64 k) {
  if (k < 2 || k % 2 != 0)
    throw domain_error("weight must be even and >= 2, got " + std::to_string(k));
}
}  // namespace

Gamma0Data gamma0_data(i64 N) {
  if (N < 1) throw domain_error("gamma0_data: level must be positive");
  Gamma0Data d;
  d.N = N;
  auto fac = factorize(N);

  d.mu = N;
  for (auto [p, e] : fac.factors) d.mu = d.mu / p * (p + 1);

  if (N % 4 == 0) {
    d.nu2 = 0;
  } else {
    d.nu2 = 1;
    // The p = 2 factor is 1 (the symbol (-1|.) degenerates at 2); odd primes
    // contribute 1 + (-1|p).
    for (auto [p, e] : fac.factors)
      if (p != 2) d.nu2 *= 1 + kronecker(-1, p);
  }

  if (N % 9 == 0) {
    d.nu3 = 0;
  } else {
    d.nu3 = 1;
    for (auto [p, e] : fac.factors) d.nu3 *= 1 + kronecker(-3, p);
  }

  d.nu_inf = 0;
  for (i64 dd : divisors(fac)) d.nu_inf += euler_phi(std::gcd(dd, N / dd));

  i64 twelve_g = 12 + d.mu - 3 * d.nu2 - 4 * d.nu3 - 6 * d.nu_inf;
  if (twelve_g % 12 != 0)
    throw domain_error("gamma0_data: genus identity not divisible by 12 at N=" +
                       std::to_string(N));
  d.g = twelve_g / 12;
  if (d.g < 0)
    throw domain_error("gamma0_data: negative genus at N=" + std::to_string(N));
  return d;
}

i64 sturm_bound(i64 N, i64 k) {
  require_weight(k);
  i64 mu = gamma0_data(N).mu;
  return (checked_mul(k, mu) + 11) / 12;
}

i64 dim_cusp(i64 N, i64 k) {
  require_weight(k);
  Gamma0Data d = gamma0_data(N);
  if (k == 2) return d.g;
  i64 dim = (k - 1) * (d.g - 1) + (k / 2 - 1) * d.nu_inf + d.nu2 * (k / 4) +
            d.nu3 * (k / 3);
  if (dim < 0)
    throw domain_error("dim_cusp: negative dimension at N=" + std::to_string(N));
  return dim;
}

namespace {
// Multiplicative beta: beta(1)=1, beta(p)=-2, beta(p^2)=1, beta(p^e>=3)=0.
i64 beta(i64 n) {
  i64 b = 1;
  for (auto [p, e] : factorize(n).factors) {
    if (e == 1)
      b *= -2;
    else if (e == 2)
      b *= 1;
    else
      return 0;
  }
  return b;
}
}  // namespace

i64 dim_new(i64 N, i64 k) {
  require_weight(k);
  i64 total = 0;
  for (i64 d : divisors(factorize(N))) total += beta(N / d) * dim_cusp(d, k);
  if (total < 0)
    throw domain_error("dim_new: negative dimension at N=" + std::to_string(N));
  return total;
}

}  // namespace cy3
