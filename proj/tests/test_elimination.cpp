#include <doctest.h>

#include <sstream>

#include "cy3level/elimination.hpp"

using namespace cy3;

namespace {

const std::string kData = CY3_DATA_DIR;

Dataset w4() { return parse_db_file(kData + "/weight4.nf"); }
Dataset w2() { return parse_db_file(kData + "/weight2.nf"); }
TraceData x1() { return parse_traces_file(kData + "/x1.traces"); }
TraceData x2() { return parse_traces_file(kData + "/x2.traces"); }
TraceData x3() { return parse_traces_file(kData + "/x3.traces"); }

std::set<i64> level_set(const BoundTable& bt) {
  std::vector<i64> v = candidate_levels(bt);
  return {v.begin(), v.end()};
}

const Verdict& verdict_for(const EliminationReport& rep, const std::string& label) {
  for (const auto& v : rep.verdicts)
    if (v.label == label) return v;
  static Verdict none;
  REQUIRE(false);
  return none;
}

}  // namespace

TEST_CASE("exact elimination over levels dividing 256 leaves only the level-8 form") {
  Dataset ds = w4();
  EliminationReport rep =
      eliminate_exact(ds, x1(), level_set(serre_bound({2})), 4, 256);

  CHECK(rep.conclusion == Conclusion::unique_level);
  CHECK(rep.unique_N == 8);
  CHECK(rep.survivors == std::vector<std::string>{"8.4.a"});
  CHECK(rep.verdicts.size() == 32);

  const Verdict& v16 = verdict_for(rep, "16.4.a");
  CHECK(v16.status == Status::eliminated);
  CHECK(v16.p == 3);
  CHECK(v16.expected == -4);
  CHECK(v16.found == 4);
  CHECK(v16.wire() == "VERDICT 16.4.a eliminated p=3 expected=-4 found=4");

  // 64.4.b agrees at p=3 and falls at p=5: the witness is the smallest prime.
  const Verdict& v64b = verdict_for(rep, "64.4.b");
  CHECK(v64b.p == 5);
  CHECK(v64b.expected == -2);
  CHECK(v64b.found == 2);

  const Verdict& v256a = verdict_for(rep, "256.4.a");
  CHECK(v256a.found == -10);

  // Every non-rational record is auto-eliminated in exact mode.
  int auto_count = 0;
  for (const auto& v : rep.verdicts)
    if (v.status == Status::auto_eliminated) {
      ++auto_count;
      CHECK(v.reason == "nonrational");
    }
  CHECK(auto_count == 10);

  CHECK(rep.wire_lines().back() == "CONCLUSION unique-level 8");
}

TEST_CASE("exact elimination over divisors of 200 leaves only the level-50 form") {
  // Widening the level set beyond the divisors of B must not change the
  // surviving label: the extra records are eliminated by the same traces.
  EliminationReport rep =
      eliminate_exact(w4(), x3(), level_set(serre_bound({2, 5})), 4, 200);
  EliminationReport rep200 = eliminate_exact(
      w4(), x3(), std::set<i64>{1, 2, 4, 5, 8, 10, 20, 25, 40, 50, 100, 200},
      4, 200);
  CHECK(rep200.conclusion == Conclusion::unique_level);
  CHECK(rep200.unique_N == 50);
  CHECK(rep200.survivors == std::vector<std::string>{"50.4.b"});
  CHECK(rep200.verdicts.size() == 31);

  const Verdict& v25c = verdict_for(rep200, "25.4.c");
  CHECK(v25c.status == Status::eliminated);
  CHECK(v25c.p == 7);  // survives p=3, falls at p=7
  CHECK(v25c.expected == -26);
  CHECK(v25c.found == -6);

  CHECK(rep.survivors == std::vector<std::string>{"50.4.b"});
}

TEST_CASE("records never lose to their own trace data, and missing data never eliminates") {
  std::istringstream db(
      "newform N=8 k=4 label=8.4.a deg=1\n"
      "a 3 -4\n"
      "a 7 24\n"  // no a_5 stored
      "end\n");
  Dataset ds = parse_db(db);
  TraceData td;
  td.bad = {2};
  td.traces = {{3, -4}, {5, 999000}, {7, 24}};  // t_5 would mismatch anything
  // Weil bound is checked at parse time only; synthetic map bypasses it.
  EliminationReport rep = eliminate_exact(ds, td, {8}, 4, 256);
  CHECK(rep.conclusion == Conclusion::unique_level);
  CHECK(rep.verdicts[0].status == Status::surviving);
}

TEST_CASE("comparison skips bad primes and primes dividing B") {
  std::istringstream db(
      "newform N=8 k=4 label=8.4.a deg=1\n"
      "a 3 -4\n"
      "end\n");
  Dataset ds = parse_db(db);
  TraceData td;
  td.bad = {7};
  td.traces = {{2, 5}, {3, -4}, {5, 1}};
  // B = 2^8 * 5^2 * 7^2: p = 2 and p = 5 divide B, p = 7 is bad; only p = 3
  // can eliminate, and it matches.
  EliminationReport rep = eliminate_exact(ds, td, {8}, 4, 6400 * 49);
  CHECK(rep.verdicts[0].status == Status::surviving);
}

TEST_CASE("an empty candidate set concludes no-survivors with a warning") {
  EliminationReport rep = eliminate_exact(w4(), x1(), {}, 4, 256);
  CHECK(rep.conclusion == Conclusion::no_survivors);
  CHECK(rep.warning_empty_candidates);
  CHECK(rep.verdicts.empty());
  CHECK(rep.conclusion_token() == "no-survivors");
}

TEST_CASE("multiple survivors are reported, never silently resolved") {
  std::istringstream db(
      "newform N=8 k=4 label=8.4.a deg=1\na 3 -4\nend\n"
      "newform N=16 k=4 label=16.4.x deg=1\na 3 -4\nend\n");
  Dataset ds = parse_db(db);
  TraceData td;
  td.bad = {2};
  td.traces = {{3, -4}};
  EliminationReport rep = eliminate_exact(ds, td, {8, 16}, 4, 256);
  CHECK(rep.conclusion == Conclusion::multiple_survivors);
  CHECK(rep.survivors == std::vector<std::string>{"8.4.a", "16.4.x"});
  CHECK(rep.conclusion_token() == "multiple-survivors");
}

TEST_CASE("certification: success at the true level bound") {
  // B = 8, k = 4: T = 4, so only p = 3 must agree (2 divides B).
  Verdict v = certify(w4(), x1(), "8.4.a", 8, 4);
  CHECK(v.status == Status::certified);
  CHECK(v.T == 4);
  CHECK(v.wire() == "VERDICT 8.4.a certified T=4");
  CHECK(v.note.find("p<=T") != std::string::npos);
}

TEST_CASE("certification: missing data is cannot-certify, not elimination") {
  // B = 25, k = 4: T = 10, needs p in {2, 3, 7}; the traces stop at 3.
  Verdict v = certify(w4(), x2(), "25.4.c", 25, 4);
  CHECK(v.status == Status::cannot_certify);
  CHECK(v.T == 10);
  CHECK(v.reason == "missing-data-p=7");
  CHECK(v.wire() == "VERDICT 25.4.c cannot-certify reason=missing-data-p=7");
}

TEST_CASE("certification: completeness is checked before any comparison") {
  // 25.4.a disagrees with the traces already at p = 2, but the data does not
  // reach p = 7 <= T, so the verdict is cannot-certify, not eliminated.
  Verdict v = certify(w4(), x2(), "25.4.a", 25, 4);
  CHECK(v.status == Status::cannot_certify);
  CHECK(v.reason == "missing-data-p=7");
}

TEST_CASE("certification: a mismatch eliminates with the witness recorded") {
  // B = 8, T = 4: p = 3 is the only comparison prime, so the data is
  // complete and the disagreement becomes an elimination witness.
  TraceData td;
  td.bad = {2};
  td.traces = {{3, 4}};
  Verdict v = certify(w4(), td, "8.4.a", 8, 4);
  CHECK(v.status == Status::eliminated);
  CHECK(v.p == 3);
  CHECK(v.expected == 4);
  CHECK(v.found == -4);
  CHECK(v.wire() == "VERDICT 8.4.a eliminated p=3 expected=4 found=-4");
  CHECK_THROWS_AS(certify(w4(), td, "no-such-label", 8, 4), domain_error);
}

TEST_CASE("mod-ell elimination: residue filter, stored residues, modulus checks") {
  Dataset ds = w2();
  ResidueTraces rt = twist_residues(reduce_traces(x3(), 5), 1);
  std::set<i64> levels;
  for (i64 d : candidate_levels(serre_bound({2, 5})))
    if (d % 16 == 0) levels.insert(d);
  EliminationReport rep = eliminate_mod(ds, rt, levels, 2);

  CHECK(rep.conclusion == Conclusion::no_survivors);
  CHECK(rep.verdicts.size() == 57);
  CHECK(rep.survivors.empty());
  CHECK(rep.ell == 5);

  const Verdict& filtered = verdict_for(rep, "160.2.c");
  CHECK(filtered.status == Status::auto_eliminated);
  CHECK(filtered.reason == "residue-degree-filter");

  // A non-rational record with usable residues is eliminated by comparison.
  const Verdict& v640i = verdict_for(rep, "640.2.i");
  CHECK(v640i.status == Status::eliminated);
  CHECK(v640i.p == 7);
  CHECK(v640i.expected == 3);
  CHECK(v640i.found == 4);

  // Stored residues at the wrong modulus are a data error.
  std::istringstream bad(
      "newform N=32 k=2 label=z deg=2 res5=ok\n"
      "am 3 2 7\n"
      "end\n");
  Dataset bad_ds = parse_db(bad);
  CHECK_THROWS_AS(eliminate_mod(bad_ds, rt, {32}, 2), domain_error);

  // A record whose residues match exactly survives.
  std::istringstream match(
      "newform N=32 k=2 label=m deg=2 res5=ok\n"
      "am 3 4 5\n"
      "am 7 3 5\n"
      "end\n");
  Dataset match_ds = parse_db(match);
  EliminationReport rep2 = eliminate_mod(match_ds, rt, {32}, 2);
  CHECK(rep2.conclusion == Conclusion::unique_level);
  CHECK(rep2.verdicts[0].status == Status::surviving);
}

TEST_CASE("twist descent excludes the 16-divisible levels, conditionally on coverage") {
  DescentResult res = twist_descent(w2(), x3(), serre_bound({2, 5}), 4, 5);
  CHECK(res.sixteen_excluded);
  CHECK(res.conditional);
  CHECK(res.gaps == std::vector<i64>{1280, 1600, 3200, 6400});
  CHECK(res.fits.size() == 8);
  CHECK_FALSE(res.fits_ramified_2);
  CHECK(res.report.verdicts.size() == 57);
  CHECK(res.report.conclusion == Conclusion::conditional);

  std::vector<std::string> lines = res.wire_lines();
  CHECK(lines.back() == "CONCLUSION conditional");
  bool subset_line = false, gaps_line = false;
  for (const auto& l : lines) {
    if (l == "SUBSET sixteen-excluded") subset_line = true;
    if (l == "GAPS 1280 1600 3200 6400") gaps_line = true;
  }
  CHECK(subset_line);
  CHECK(gaps_line);

  CHECK_THROWS_AS(twist_descent(w2(), x3(), serre_bound({2, 5}), 2, 5),
                  domain_error);
}

TEST_CASE("twist descent with full coverage is unconditional; survivors block it") {
  // Full coverage: add completeness claims for the four missing levels
  // (their new subspaces at those sizes are irrelevant to the claim check
  // only if consistent; patch the dataset by adding matching records is
  // overkill -- instead restrict the bound so no gaps exist).
  BoundTable bt = serre_bound({2});  // B = 256: levels 16..256, all covered
  DescentResult res = twist_descent(w2(), x3(), bt, 4, 5);
  CHECK(res.sixteen_excluded);
  CHECK_FALSE(res.conditional);
  CHECK(res.gaps.empty());
  CHECK(res.report.conclusion == Conclusion::sixteen_excluded);
  CHECK(res.wire_lines().back() == "CONCLUSION sixteen-excluded");

  // A synthetic record matching the twisted residues produces a survivor and
  // the descent becomes inconclusive.
  Dataset ds = w2();
  NewformRecord fake;
  fake.N = 32;
  fake.k = 2;
  fake.label = "32.2.fake";
  fake.deg = 1;
  ResidueTraces rt = twist_residues(reduce_traces(x3(), 5), 1);
  for (auto [p, r] : rt.residues) fake.exact_ap[p] = r;  // a_p = residue
  ds.records.push_back(fake);
  DescentResult res2 = twist_descent(ds, x3(), bt, 4, 5);
  CHECK_FALSE(res2.sixteen_excluded);
  CHECK(res2.report.survivors == std::vector<std::string>{"32.2.fake"});
  bool survivors_line = false;
  for (const auto& l : res2.wire_lines())
    if (l == "SURVIVORS 32.2.fake") survivors_line = true;
  CHECK(survivors_line);
}

TEST_CASE("identify: the three bundled examples end to end") {
  IdentifyResult r1 = identify(w4(), nullptr, x1());
  CHECK(r1.bt.B.value() == 256);
  CHECK(r1.effective_B == 256);
  CHECK_FALSE(r1.descent.has_value());
  CHECK(r1.elimination.conclusion == Conclusion::unique_level);
  CHECK(r1.elimination.unique_N == 8);
  CHECK(r1.exit_code == 0);
  REQUIRE(r1.certification.has_value());
  CHECK(r1.certification->status == Status::cannot_certify);
  CHECK(r1.certification->reason == "missing-data-p=11");

  IdentifyResult r2 = identify(w4(), nullptr, x2());
  CHECK(r2.effective_B == 25);
  CHECK(r2.elimination.unique_N == 25);
  CHECK(r2.exit_code == 0);
  REQUIRE(r2.certification.has_value());
  CHECK(r2.certification->status == Status::cannot_certify);
  CHECK(r2.certification->T == 10);
  CHECK(r2.certification->reason == "missing-data-p=7");

  Dataset ds2 = w2();
  IdentifyResult r3 = identify(w4(), &ds2, x3());
  CHECK(r3.bt.B.value() == 6400);
  REQUIRE(r3.descent.has_value());
  CHECK(r3.descent->sixteen_excluded);
  CHECK(r3.effective_B == 200);
  CHECK(r3.elimination.conclusion == Conclusion::unique_level);
  CHECK(r3.elimination.unique_N == 50);
  CHECK(r3.conditional);
  CHECK(r3.exit_code == 2);

  std::vector<std::string> lines = r3.wire_lines();
  CHECK(lines.front() == "BOUND B=6400");
  CHECK(lines.back() == "CONCLUSION unique-level 50");
  bool restricted = false;
  for (const auto& l : lines)
    if (l == "RESTRICTED B=200") restricted = true;
  CHECK(restricted);
}

TEST_CASE("identify certifies the survivor when the data reaches the Sturm bound") {
  // Synthetic: one record at level 8, bound restricted to 8 by S = {2} with
  // a dataset claiming completeness only there -- use direct certify via
  // identify by supplying traces past T. T = sturm_bound(256, 4) = 128
  // is out of reach of fixtures, so build a tiny world: S = {}, B = 1,
  // T = sturm_bound(1, 4) = 1, no comparison primes at all.
  std::istringstream db("newform N=1 k=4 label=1.4.x deg=1\nend\n");
  Dataset ds = parse_db(db);
  TraceData td;
  td.traces = {{3, 0}};
  IdentifyResult r = identify(ds, nullptr, td);
  CHECK(r.effective_B == 1);
  CHECK(r.elimination.conclusion == Conclusion::unique_level);
  REQUIRE(r.certification.has_value());
  CHECK(r.certification->status == Status::certified);
  CHECK(r.certification->T == 1);
  // The certified verdict replaces the surviving one in the report.
  CHECK(r.elimination.verdicts[0].status == Status::certified);
  CHECK(r.exit_code == 0);
}

TEST_CASE("identify refuses empty trace data") {
  TraceData td;
  CHECK_THROWS_AS(identify(w4(), nullptr, td), domain_error);
}

TEST_CASE("wire tokens are stable") {
  CHECK(status_token(Status::eliminated) == "eliminated");
  CHECK(status_token(Status::surviving) == "surviving");
  CHECK(status_token(Status::certified) == "certified");
  CHECK(status_token(Status::auto_eliminated) == "auto-eliminated");
  CHECK(status_token(Status::cannot_certify) == "cannot-certify");

  EliminationReport rep;
  rep.conclusion = Conclusion::unique_level;
  rep.unique_N = 50;
  CHECK(rep.conclusion_token() == "unique-level 50");
  rep.conclusion = Conclusion::sixteen_excluded;
  CHECK(rep.conclusion_token() == "sixteen-excluded");
  rep.conclusion = Conclusion::conditional;
  CHECK(rep.conclusion_token() == "conditional");
}
