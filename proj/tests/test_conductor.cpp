#include <doctest.h>

#include "cy3level/conductor.hpp"

using namespace cy3;

TEST_CASE("serre_exponent caps: 8 at 2, 5 at 3, 2 beyond") {
  CHECK(serre_exponent(2) == 8);
  CHECK(serre_exponent(3) == 5);
  CHECK(serre_exponent(5) == 2);
  CHECK(serre_exponent(7) == 2);
  CHECK(serre_exponent(97) == 2);
  CHECK_THROWS_AS(serre_exponent(1), domain_error);
  CHECK_THROWS_AS(serre_exponent(4), domain_error);
  CHECK_THROWS_AS(serre_exponent(-3), domain_error);
}

TEST_CASE("serre_bound tables for the three bundled prime sets") {
  BoundTable b2 = serre_bound({2});
  CHECK(b2.B.value() == 256);
  CHECK(b2.exponents == std::map<i64, int>{{2, 8}});

  BoundTable b5 = serre_bound({5});
  CHECK(b5.B.value() == 25);

  BoundTable b25 = serre_bound({2, 5});
  CHECK(b25.B.value() == 6400);
  CHECK(b25.bad_primes == std::set<i64>{2, 5});
  CHECK(b25.exponents == std::map<i64, int>{{2, 8}, {5, 2}});

  CHECK(serre_bound({2, 3, 5}).B.value() == 256LL * 243 * 25);
  CHECK(serre_bound({}).B.value() == 1);
  CHECK_THROWS_AS(serre_bound({2, 6}), domain_error);
}

TEST_CASE("serre_bound is multiplicative over disjoint prime sets") {
  const std::set<i64> sets[] = {{2}, {3}, {5}, {7, 11}, {13}};
  for (const auto& s1 : sets)
    for (const auto& s2 : sets) {
      bool disjoint = true;
      for (i64 p : s1)
        if (s2.count(p)) disjoint = false;
      if (!disjoint) continue;
      std::set<i64> u = s1;
      u.insert(s2.begin(), s2.end());
      CHECK(serre_bound(u).B.value() ==
            serre_bound(s1).B.value() * serre_bound(s2).B.value());
    }
}

TEST_CASE("candidate_levels are exactly the ascending divisors of B") {
  CHECK(candidate_levels(serre_bound({5})) == std::vector<i64>{1, 5, 25});

  std::vector<i64> two = candidate_levels(serre_bound({2}));
  CHECK(two.size() == 9);
  CHECK(two.front() == 1);
  CHECK(two.back() == 256);

  CHECK(candidate_levels(serre_bound({})) == std::vector<i64>{1});

  std::vector<i64> both = candidate_levels(serre_bound({2, 5}));
  CHECK(both.size() == 27);
  CHECK(both.back() == 6400);
  for (size_t i = 1; i < both.size(); ++i) CHECK(both[i - 1] < both[i]);
  for (i64 d : both) CHECK(6400 % d == 0);
}

TEST_CASE("carayol_allowed: equality plus the three drop pairs") {
  CHECK(carayol_allowed(0, 1));
  CHECK(carayol_allowed(0, 2));
  CHECK(carayol_allowed(1, 2));
  CHECK(carayol_allowed(3, 3));
  CHECK_FALSE(carayol_allowed(2, 3));
  CHECK_FALSE(carayol_allowed(0, 3));
  CHECK_FALSE(carayol_allowed(1, 3));
  CHECK_FALSE(carayol_allowed(0, 4));
  for (int e = 0; e <= 10; ++e) {
    CHECK(carayol_allowed(e, e));          // reflexive
    for (int ep = e + 1; ep <= 10; ++ep)
      CHECK_FALSE(carayol_allowed(ep, e));  // never increases
  }
}

TEST_CASE("forced_residual_exponent is the minimal allowed residual exponent") {
  CHECK(forced_residual_exponent(0) == 0);
  CHECK(forced_residual_exponent(1) == 0);
  CHECK(forced_residual_exponent(2) == 0);
  CHECK(forced_residual_exponent(3) == 3);
  CHECK(forced_residual_exponent(4) == 4);
  CHECK(forced_residual_exponent(8) == 8);
  for (int e = 0; e <= 10; ++e) {
    int f = forced_residual_exponent(e);
    CHECK(carayol_allowed(f, e));
    for (int smaller = 0; smaller < f; ++smaller)
      CHECK_FALSE(carayol_allowed(smaller, e));
  }
}
