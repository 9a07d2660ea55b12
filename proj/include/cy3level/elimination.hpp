#pragma once
// The elimination algorithm, Sturm certification, the twist-descent procedure
// for levels divisible by 16, and the top-level identification orchestrator.

#include <optional>
#include <string>
#include <vector>

#include "cy3level/conductor.hpp"
#include "cy3level/newform_db.hpp"
#include "cy3level/residual.hpp"

namespace cy3 {

enum class Status { eliminated, surviving, certified, auto_eliminated, cannot_certify };

std::string status_token(Status s);

struct Verdict {
  std::string label;
  i64 level = 0;
  Status status = Status::surviving;
  // Witness for eliminated: smallest comparison prime with a mismatch.
  std::optional<i64> p, expected, found;
  std::string reason;        // auto-eliminated / cannot-certify token
  std::optional<i64> T;      // certified: the Sturm bound used
  std::string note;          // certified: convention note

  std::string wire() const;  // one "VERDICT ..." line
};

enum class Conclusion {
  unique_level,
  multiple_survivors,
  no_survivors,
  sixteen_excluded,
  conditional,
};

struct EliminationReport {
  std::vector<Verdict> verdicts;  // ordered by (level, label)
  Conclusion conclusion = Conclusion::no_survivors;
  i64 unique_N = 0;                     // when conclusion == unique_level
  std::vector<std::string> survivors;   // labels
  bool warning_empty_candidates = false;

  // Parameter echo.
  i64 B = 0;
  i64 weight = 0;
  std::optional<i64> ell;  // modular-residue mode

  std::string conclusion_token() const;
  std::vector<std::string> wire_lines() const;
};

// Exact-eigenvalue elimination over the candidate levels at weight k.
// Comparison primes: keys of td outside S with p not dividing B. deg > 1
// records are auto-eliminated (exact mode requires rational coefficients);
// deg = 1 records are eliminated at the smallest witnessing prime; missing
// data at a prime never eliminates.
EliminationReport eliminate_exact(const Dataset& ds, const TraceData& td,
                                  const std::set<i64>& levels, i64 k, i64 B);

// Sturm certification of one record at bound level B: compares a_p = t_p for
// every prime p <= T = sturm_bound(B, k) with p not dividing B. Missing data
// yields a cannot-certify verdict (distinct from elimination).
Verdict certify(const Dataset& ds, const TraceData& td, const std::string& label,
                i64 B, i64 k);

// Mod-ell elimination: deg = 1 records compare a_p mod ell, deg > 1 records
// with res5 = none are auto-eliminated, deg > 1 with res5 = ok compare stored
// residues (their modulus must equal rt.ell; mismatch is a data error).
EliminationReport eliminate_mod(const Dataset& ds, const ResidueTraces& rt,
                                const std::set<i64>& levels, i64 k);

struct DescentResult {
  EliminationReport report;          // the weight-2 eliminate_mod run
  bool sixteen_excluded = false;     // no survivors on the examined subset
  bool conditional = false;          // completeness claims incomplete
  std::vector<i64> gaps;             // levels lacking completeness claims
  std::vector<CharacterFit> fits;    // reducibility side-analysis
  bool fits_ramified_2 = false;      // must be false for the descent to stand
  std::vector<std::string> wire_lines() const;
};

// Twist-descent analysis: tests whether the residual representation twisted
// by the cyclotomic character matches any weight-2 newform at a level with
// 2-exponent >= required_2_exponent dividing the bound. Requires
// required_2_exponent >= 3 (so the residual conductor exponent is forced).
DescentResult twist_descent(const Dataset& ds_w2, const TraceData& td,
                            const BoundTable& bt, int required_2_exponent,
                            i64 ell);

struct IdentifyResult {
  BoundTable bt;
  std::optional<DescentResult> descent;
  i64 effective_B = 0;  // bound after any descent restriction
  EliminationReport elimination;  // weight-4 exact elimination
  std::optional<Verdict> certification;  // Sturm attempt on a unique survivor
  bool conditional = false;
  int exit_code = 0;
  std::vector<std::string> wire_lines() const;
};

// Full pipeline: serre_bound(S); twist descent when 2 is bad and weight-2
// data is supplied (success restricts the 2-exponent of the bound to 3);
// exact elimination at weight 4 over the candidate levels; certification
// attempt on a unique survivor.
IdentifyResult identify(const Dataset& ds_w4, const Dataset* ds_w2,
                        const TraceData& td);

}  // namespace cy3
