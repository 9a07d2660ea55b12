#pragma once
// Mod-ell residual computations: trace reduction, cyclotomic twisting,
// enumeration of characters into F_ell^*, and the reducible-decomposition
// fit search.

#include <iosfwd>
#include <memory>

#include "cy3level/arith.hpp"

namespace cy3 {

// Bad-prime set S plus Frobenius traces t_p at good primes.
struct TraceData {
  std::set<i64> bad;
  std::map<i64, i64> traces;
};

// Trace file: one line "bad <p> <p> ...", then lines "t <p> <int>".
// Enforces: primes only, keys disjoint from the bad set, |t_p| within the
// Weil bound floor(2 p^(3/2)). Throws parse_error.
TraceData parse_traces(std::istream& in);
TraceData parse_traces_file(const std::string& path);

struct ResidueTraces {
  i64 ell = 5;
  std::map<i64, i64> residues;  // values in [0, ell)
};

// residues[p] = t_p mod ell; an entry at p = ell is dropped.
ResidueTraces reduce_traces(const TraceData& td, i64 ell);

// residues[p] <- p^power * residues[p] mod ell (any integer power; keys are
// coprime to ell so negative powers are well-defined).
ResidueTraces twist_residues(const ResidueTraces& rt, i64 power);

// Representative of r mod ell in the balanced range -floor(ell/2)..floor(ell/2)
// (display only; storage is always [0, ell)).
i64 balanced_rep(i64 r, i64 ell);

namespace detail {
struct CharContext;  // shared per-(M, ell) tables
}

// A character (Z/MZ)* -> F_ell^*, realized as a generator-exponent vector:
// chi(g_i) = w^{c_i} with w the smallest generator of F_ell^*.
class Character {
 public:
  i64 modulus() const;
  i64 ell() const;
  const std::vector<i64>& exponents() const { return c_; }

  // Value at x coprime to M (domain_error otherwise), as an element of F_ell^*.
  i64 eval(i64 x) const;
  Character inverse() const;
  bool is_trivial() const;

  // Conductor exponent at a prime p (0 if the restriction to the p-component
  // is trivial). p = 2 uses the 2-power component structure.
  int conductor_exponent_at(i64 p) const;

  bool operator==(const Character& o) const;

 private:
  friend std::vector<Character> enumerate_characters(i64 M, i64 ell);
  Character(std::shared_ptr<const detail::CharContext> ctx, std::vector<i64> c);
  std::shared_ptr<const detail::CharContext> ctx_;
  std::vector<i64> c_;
};

// All homomorphisms (Z/MZ)* -> F_ell^*; count = prod gcd(order(g_i), ell-1).
std::vector<Character> enumerate_characters(i64 M, i64 ell);

// A reducible decomposition eps.chi^i (+) eps^{-1}.chi^j fitting the residue
// traces: t_p = eps(p) p^i + eps(p)^{-1} p^j mod ell for all supplied p,
// with i + j = 3 mod (ell-1).
struct CharacterFit {
  Character eps;
  int conductor_2_part = 0;
  int i = 0;
  int j = 0;
};

// Fit search over characters of modulus M = (16 if 2 in S) * (prod of odd
// p in S, p != ell) * ell. Every returned fit is re-verified by direct
// evaluation before being returned.
std::vector<CharacterFit> reducible_fits(const ResidueTraces& rt,
                                         const std::set<i64>& S, i64 ell);

// True iff some fit's character has nonzero conductor exponent at p.
bool fits_ramified_at(const std::vector<CharacterFit>& fits, i64 p);

}  // namespace cy3
