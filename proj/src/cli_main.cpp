// cy3level: determine the level of the weight-4 newform attached to a
// modular rigid Calabi-Yau threefold from its bad primes and Frobenius
// traces. Batch CLI; all data comes from local files.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cy3level/conductor.hpp"
#include "cy3level/elimination.hpp"
#include "cy3level/newform_db.hpp"
#include "cy3level/residual.hpp"
#include "cy3level/sturm.hpp"

namespace {

using cy3::i64;

std::set<i64> parse_prime_list(const std::string& s) {
  std::set<i64> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    size_t pos = 0;
    long long v = std::stoll(tok, &pos);
    if (pos != tok.size())
      throw cy3::domain_error("--primes: bad integer '" + tok + "'");
    out.insert(static_cast<i64>(v));
  }
  if (out.empty()) throw cy3::domain_error("--primes: empty list");
  return out;
}

cy3::Dataset load_validated_db(const std::string& path) {
  cy3::Dataset ds = cy3::parse_db_file(path);
  std::vector<std::string> bad = cy3::validate(ds);
  if (!bad.empty()) {
    std::ostringstream o;
    o << path << ": dataset invalid:";
    for (const auto& m : bad) o << "\n  " << m;
    throw cy3::domain_error(o.str());
  }
  return ds;
}

int cmd_bound(const std::string& primes) {
  cy3::BoundTable bt = cy3::serre_bound(parse_prime_list(primes));
  std::cout << "S = {";
  bool first = true;
  for (i64 p : bt.bad_primes) {
    if (!first) std::cout << ", ";
    std::cout << p;
    first = false;
  }
  std::cout << "}\n";
  for (i64 p : bt.bad_primes)
    std::cout << "b_" << p << " = " << bt.exponents.at(p) << "\n";
  std::cout << "B = " << bt.B.value() << "\n";
  std::vector<i64> levels = cy3::candidate_levels(bt);
  std::cout << "candidate levels (" << levels.size() << "):";
  for (i64 d : levels) std::cout << ' ' << d;
  std::cout << "\n";
  return 0;
}

int cmd_sturm(i64 N, i64 k) {
  cy3::Gamma0Data g = cy3::gamma0_data(N);
  std::cout << "mu=" << g.mu << " T=" << cy3::sturm_bound(N, k) << "\n";
  return 0;
}

int cmd_dims(i64 N, i64 k) {
  cy3::Gamma0Data g = cy3::gamma0_data(N);
  std::cout << "N=" << N << " k=" << k << "\n"
            << "mu=" << g.mu << "\n"
            << "nu2=" << g.nu2 << "\n"
            << "nu3=" << g.nu3 << "\n"
            << "nu_inf=" << g.nu_inf << "\n"
            << "g=" << g.g << "\n"
            << "dim_cusp=" << cy3::dim_cusp(N, k) << "\n"
            << "dim_new=" << cy3::dim_new(N, k) << "\n";
  return 0;
}

int cmd_validate(const std::vector<std::string>& files) {
  bool any = false;
  for (const auto& f : files) {
    cy3::Dataset ds = cy3::parse_db_file(f);
    std::vector<std::string> bad = cy3::validate(ds);
    if (bad.empty()) {
      std::cout << f << ": OK (" << ds.records.size() << " records, "
                << ds.complete.size() << " completeness claims)\n";
    } else {
      any = true;
      for (const auto& m : bad) std::cout << f << ": " << m << "\n";
    }
  }
  return any ? 1 : 0;
}

int cmd_identify(const std::string& traces, const std::string& w4,
                 const std::string& w2) {
  cy3::TraceData td = cy3::parse_traces_file(traces);
  cy3::Dataset ds4 = load_validated_db(w4);
  cy3::Dataset ds2;
  bool have_w2 = !w2.empty();
  if (have_w2) ds2 = load_validated_db(w2);
  cy3::IdentifyResult res =
      cy3::identify(ds4, have_w2 ? &ds2 : nullptr, td);
  for (const auto& l : res.wire_lines()) std::cout << l << "\n";
  return res.exit_code;
}

int cmd_twist_descent(const std::string& traces, const std::string& w2,
                      i64 factor) {
  if (factor < 8) throw cy3::domain_error("--factor must be at least 8");
  int v2 = 0;
  i64 m = factor;
  while (m % 2 == 0) {
    m /= 2;
    ++v2;
  }
  if (m != 1) throw cy3::domain_error("--factor must be a power of 2");
  cy3::TraceData td = cy3::parse_traces_file(traces);
  cy3::Dataset ds2 = load_validated_db(w2);
  cy3::BoundTable bt = cy3::serre_bound(td.bad);
  cy3::DescentResult res = cy3::twist_descent(ds2, td, bt, v2, 5);
  for (const auto& l : res.wire_lines()) std::cout << l << "\n";
  if (res.sixteen_excluded && !res.conditional) return 0;
  return 2;
}

int cmd_reducible(const std::string& traces, i64 ell) {
  cy3::TraceData td = cy3::parse_traces_file(traces);
  cy3::ResidueTraces rt = cy3::reduce_traces(td, ell);
  std::vector<cy3::CharacterFit> fits = cy3::reducible_fits(rt, td.bad, ell);
  std::cout << "FITS " << fits.size() << "\n";
  for (const auto& f : fits) {
    std::cout << "FIT M=" << f.eps.modulus() << " exps=[";
    for (size_t t = 0; t < f.eps.exponents().size(); ++t) {
      if (t) std::cout << ',';
      std::cout << f.eps.exponents()[t];
    }
    std::cout << "] i=" << f.i << " j=" << f.j << " c2=" << f.conductor_2_part
              << "\n";
  }
  std::cout << "RAMIFIED-AT-2 "
            << (cy3::fits_ramified_at(fits, 2) ? "true" : "false") << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "cy3level: level identification for weight-4 newforms attached to "
      "rigid Calabi-Yau threefolds"};
  app.require_subcommand(1);

  std::string primes, traces, w4db, w2db;
  std::vector<std::string> files;
  i64 level = 0, weight = 4, factor = 16, modulus = 5;

  CLI::App* bound = app.add_subcommand("bound", "Conductor bound B and candidate levels");
  bound->add_option("--primes", primes, "comma-separated bad primes")->required();

  CLI::App* sturm = app.add_subcommand("sturm", "Index mu and Sturm bound T");
  sturm->add_option("--level", level)->required();
  sturm->add_option("--weight", weight)->required();

  CLI::App* dims = app.add_subcommand("dims", "Gamma0(N) invariants and dimensions");
  dims->add_option("--level", level)->required();
  dims->add_option("--weight", weight)->required();

  CLI::App* validate = app.add_subcommand("validate-db", "Validate dataset files");
  validate->add_option("files", files, "dataset files")->required();

  CLI::App* identify = app.add_subcommand("identify", "Full level-identification pipeline");
  identify->add_option("--traces", traces)->required();
  identify->add_option("--w4-db", w4db)->required();
  identify->add_option("--w2-db", w2db);

  CLI::App* descent = app.add_subcommand("twist-descent", "Weight-2 twist-descent analysis");
  descent->add_option("--traces", traces)->required();
  descent->add_option("--w2-db", w2db)->required();
  descent->add_option("--factor", factor, "2-power level factor (default 16)");

  CLI::App* reducible = app.add_subcommand("reducible", "Reducible-decomposition fit search");
  reducible->add_option("--traces", traces)->required();
  reducible->add_option("--modulus", modulus, "residual modulus (default 5)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (bound->parsed()) return cmd_bound(primes);
    if (sturm->parsed()) return cmd_sturm(level, weight);
    if (dims->parsed()) return cmd_dims(level, weight);
    if (validate->parsed()) return cmd_validate(files);
    if (identify->parsed()) return cmd_identify(traces, w4db, w2db);
    if (descent->parsed()) return cmd_twist_descent(traces, w2db, factor);
    if (reducible->parsed()) return cmd_reducible(traces, modulus);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
