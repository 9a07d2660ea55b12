#include "cy3level/elimination.hpp"

#include <algorithm>
#include <sstream>

#include "cy3level/sturm.hpp"

namespace cy3 {

std::string status_token(Status s) {
  switch (s) {
    case Status::eliminated: return "eliminated";
    case Status::surviving: return "surviving";
    case Status::certified: return "certified";
    case Status::auto_eliminated: return "auto-eliminated";
    case Status::cannot_certify: return "cannot-certify";
  }
  return "?";
}

std::string Verdict::wire() const {
  std::ostringstream o;
  o << "VERDICT " << label << ' ' << status_token(status);
  if (status == Status::eliminated && p)
    o << " p=" << *p << " expected=" << *expected << " found=" << *found;
  if (status == Status::certified && T) o << " T=" << *T;
  if (!reason.empty()) o << " reason=" << reason;
  return o.str();
}

std::string EliminationReport::conclusion_token() const {
  switch (conclusion) {
    case Conclusion::unique_level: return "unique-level " + std::to_string(unique_N);
    case Conclusion::multiple_survivors: return "multiple-survivors";
    case Conclusion::no_survivors: return "no-survivors";
    case Conclusion::sixteen_excluded: return "sixteen-excluded";
    case Conclusion::conditional: return "conditional";
  }
  return "?";
}

std::vector<std::string> EliminationReport::wire_lines() const {
  std::vector<std::string> out;
  for (const auto& v : verdicts) out.push_back(v.wire());
  out.push_back("CONCLUSION " + conclusion_token());
  return out;
}

namespace {

void finalize_conclusion(EliminationReport& rep) {
  rep.survivors.clear();
  i64 level = 0;
  for (const auto& v : rep.verdicts)
    if (v.status == Status::surviving || v.status == Status::certified) {
      rep.survivors.push_back(v.label);
      level = v.level;
    }
  if (rep.verdicts.empty()) {
    rep.conclusion = Conclusion::no_survivors;
    rep.warning_empty_candidates = true;
  } else if (rep.survivors.empty()) {
    rep.conclusion = Conclusion::no_survivors;
  } else if (rep.survivors.size() == 1) {
    rep.conclusion = Conclusion::unique_level;
    rep.unique_N = level;
  } else {
    rep.conclusion = Conclusion::multiple_survivors;
  }
}

}  // namespace

EliminationReport eliminate_exact(const Dataset& ds, const TraceData& td,
                                  const std::set<i64>& levels, i64 k, i64 B) {
  EliminationReport rep;
  rep.B = B;
  rep.weight = k;
  std::vector<i64> cmp;
  for (auto [p, t] : td.traces)
    if (!td.bad.count(p) && B % p != 0) cmp.push_back(p);  // sorted: map order

  for (const NewformRecord* r : query(ds, levels, k)) {
    Verdict v;
    v.label = r->label;
    v.level = r->N;
    if (r->deg > 1) {
      v.status = Status::auto_eliminated;
      v.reason = "nonrational";
    } else {
      v.status = Status::surviving;
      for (i64 p : cmp) {
        auto it = r->exact_ap.find(p);
        if (it == r->exact_ap.end()) continue;  // missing data never eliminates
        if (it->second != td.traces.at(p)) {
          v.status = Status::eliminated;
          v.p = p;
          v.expected = td.traces.at(p);
          v.found = it->second;
          break;
        }
      }
    }
    rep.verdicts.push_back(std::move(v));
  }
  finalize_conclusion(rep);
  return rep;
}

Verdict certify(const Dataset& ds, const TraceData& td, const std::string& label,
                i64 B, i64 k) {
  const NewformRecord* r = ds.find(label);
  if (!r) throw domain_error("certify: no record with label '" + label + "'");
  Verdict v;
  v.label = r->label;
  v.level = r->N;
  if (r->deg > 1) {
    v.status = Status::cannot_certify;
    v.reason = "nonrational";
    return v;
  }
  i64 T = sturm_bound(B, k);
  v.T = T;
  // All primes p <= T with p not dividing B must be comparable.
  for (i64 p = 2; p <= T; ++p) {
    if (!is_prime(p) || B % p == 0) continue;
    bool have_t = td.traces.count(p) != 0;
    bool have_a = r->exact_ap.count(p) != 0;
    if (!have_t || !have_a) {
      v.status = Status::cannot_certify;
      v.reason = "missing-data-p=" + std::to_string(p);
      return v;
    }
  }
  for (i64 p = 2; p <= T; ++p) {
    if (!is_prime(p) || B % p == 0) continue;
    if (r->exact_ap.at(p) != td.traces.at(p)) {
      v.status = Status::eliminated;
      v.p = p;
      v.expected = td.traces.at(p);
      v.found = r->exact_ap.at(p);
      return v;
    }
  }
  v.status = Status::certified;
  v.note = "T computed at bound B=" + std::to_string(B) +
           "; compared every prime p<=T with p not dividing B";
  return v;
}

EliminationReport eliminate_mod(const Dataset& ds, const ResidueTraces& rt,
                                const std::set<i64>& levels, i64 k) {
  EliminationReport rep;
  rep.weight = k;
  rep.ell = rt.ell;
  for (const NewformRecord* r : query(ds, levels, k)) {
    Verdict v;
    v.label = r->label;
    v.level = r->N;
    if (r->deg > 1 && r->res5 == Res5::none) {
      v.status = Status::auto_eliminated;
      v.reason = "residue-degree-filter";
      rep.verdicts.push_back(std::move(v));
      continue;
    }
    v.status = Status::surviving;
    for (auto [p, want] : rt.residues) {
      std::optional<i64> have;
      if (r->deg == 1) {
        auto it = r->exact_ap.find(p);
        if (it != r->exact_ap.end())
          have = ((it->second % rt.ell) + rt.ell) % rt.ell;
      } else {
        auto it = r->residue_ap.find(p);
        if (it != r->residue_ap.end()) {
          if (it->second.modulus != rt.ell)
            throw domain_error("eliminate_mod: stored residue modulus " +
                               std::to_string(it->second.modulus) +
                               " does not match ell=" + std::to_string(rt.ell) +
                               " (record " + r->label + ")");
          have = it->second.residue;
        }
      }
      if (have && *have != want) {
        v.status = Status::eliminated;
        v.p = p;
        v.expected = want;
        v.found = *have;
        break;
      }
    }
    rep.verdicts.push_back(std::move(v));
  }
  finalize_conclusion(rep);
  return rep;
}

std::vector<std::string> DescentResult::wire_lines() const {
  std::vector<std::string> out;
  for (const auto& v : report.verdicts) out.push_back(v.wire());
  out.push_back(std::string("REDUCIBLE-RAMIFIED-AT-2 ") +
                (fits_ramified_2 ? "true" : "false"));
  if (fits_ramified_2) {
    out.push_back("NOTE reducible-fit-ramified-at-2-blocks-descent");
    out.push_back("CONCLUSION conditional");
    return out;
  }
  if (!report.survivors.empty()) {
    std::string s = "SURVIVORS";
    for (const auto& lab : report.survivors) s += " " + lab;
    out.push_back(s);
    out.push_back("CONCLUSION multiple-survivors");
    return out;
  }
  if (conditional) {
    out.push_back("SUBSET sixteen-excluded");
    std::string g = "GAPS";
    for (i64 d : gaps) g += " " + std::to_string(d);
    out.push_back(g);
    out.push_back("CONCLUSION conditional");
  } else {
    out.push_back("CONCLUSION sixteen-excluded");
  }
  return out;
}

DescentResult twist_descent(const Dataset& ds_w2, const TraceData& td,
                            const BoundTable& bt, int required_2_exponent,
                            i64 ell) {
  if (required_2_exponent < 3)
    throw domain_error(
        "twist_descent: required_2_exponent must be >= 3 (the residual "
        "conductor exponent is only forced there)");
  if (ell != 5) throw domain_error("twist_descent: only ell = 5 is supported");

  DescentResult res;
  ResidueTraces rt0 = reduce_traces(td, ell);
  res.fits = reducible_fits(rt0, td.bad, ell);
  res.fits_ramified_2 = fits_ramified_at(res.fits, 2);

  ResidueTraces rt = twist_residues(rt0, 1);
  std::set<i64> levels;
  for (i64 d : candidate_levels(bt)) {
    i64 v2 = 0, m = d;
    while (m % 2 == 0) {
      m /= 2;
      ++v2;
    }
    if (v2 >= required_2_exponent) levels.insert(d);
  }
  res.report = eliminate_mod(ds_w2, rt, levels, 2);
  res.report.B = bt.B.value();

  for (i64 d : levels)
    if (!ds_w2.is_complete(d, 2)) res.gaps.push_back(d);
  res.conditional = !res.gaps.empty();

  bool no_survivors = res.report.survivors.empty() && !res.report.verdicts.empty();
  res.sixteen_excluded = no_survivors && !res.fits_ramified_2;
  if (res.sixteen_excluded)
    res.report.conclusion = res.conditional ? Conclusion::conditional
                                            : Conclusion::sixteen_excluded;
  return res;
}

std::vector<std::string> IdentifyResult::wire_lines() const {
  std::vector<std::string> out;
  out.push_back("BOUND B=" + std::to_string(bt.B.value()));
  if (descent) {
    out.push_back("DESCENT begin");
    for (const auto& l : descent->wire_lines()) out.push_back("  " + l);
    out.push_back("DESCENT end");
    if (descent->sixteen_excluded)
      out.push_back("RESTRICTED B=" + std::to_string(effective_B));
  }
  for (const auto& v : elimination.verdicts) out.push_back(v.wire());
  if (certification && certification->status == Status::cannot_certify) {
    std::string n = "NOTE certification-incomplete reason=" +
                    certification->reason;
    if (certification->T) n += " T=" + std::to_string(*certification->T);
    out.push_back(n);
  }
  if (conditional) {
    std::string n = "NOTE conditional-on-completeness";
    if (descent)
      for (i64 d : descent->gaps) n += " " + std::to_string(d);
    out.push_back(n);
  }
  out.push_back("CONCLUSION " + elimination.conclusion_token());
  return out;
}

IdentifyResult identify(const Dataset& ds_w4, const Dataset* ds_w2,
                        const TraceData& td) {
  if (td.traces.empty()) throw domain_error("identify: no traces supplied");
  IdentifyResult res;
  res.bt = serre_bound(td.bad);
  Factorization effective = res.bt.B;

  if (td.bad.count(2) && ds_w2 != nullptr) {
    res.descent = twist_descent(*ds_w2, td, res.bt, 4, 5);
    if (res.descent->sixteen_excluded) {
      effective.factors[2] = 3;  // 2-part of the conductor is at most 8
      res.conditional = res.descent->conditional;
    }
  }
  res.effective_B = effective.value();

  std::set<i64> levels;
  for (i64 d : divisors(effective)) levels.insert(d);
  res.elimination = eliminate_exact(ds_w4, td, levels, 4, res.effective_B);

  if (res.elimination.conclusion == Conclusion::unique_level) {
    const std::string& lab = res.elimination.survivors.front();
    Verdict cert = certify(ds_w4, td, lab, res.effective_B, 4);
    res.certification = cert;
    if (cert.status == Status::certified || cert.status == Status::eliminated) {
      for (auto& v : res.elimination.verdicts)
        if (v.label == lab) v = cert;
      finalize_conclusion(res.elimination);
    }
    // cannot-certify leaves the surviving verdict in place.
  }

  bool inconclusive =
      res.elimination.conclusion == Conclusion::multiple_survivors;
  res.exit_code = (res.conditional || inconclusive) ? 2 : 0;
  return res;
}

}  // namespace cy3
