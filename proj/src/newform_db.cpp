#include "cy3level/newform_db.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "cy3level/sturm.hpp"

namespace cy3 {

namespace {

constexpr i64 kMaxLevel = 10'000'000;
constexpr i64 kMaxWeight = 100;

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::string cur;
  for (char ch : line) {
    if (ch == '#') break;
    if (ch == ' ' || ch == '\t' || ch == '\r') {
      if (!cur.empty()) toks.push_back(std::move(cur)), cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) toks.push_back(std::move(cur));
  return toks;
}

i64 parse_int(const std::string& s, int line, const std::string& what) {
  i64 v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw parse_error(line, "malformed integer for " + what + ": '" + s + "'");
  return v;
}

std::string expect_kv(const std::string& tok, const std::string& key, int line) {
  if (tok.rfind(key + "=", 0) != 0)
    throw parse_error(line, "expected " + key + "=..., got '" + tok + "'");
  std::string v = tok.substr(key.size() + 1);
  if (v.empty()) throw parse_error(line, "empty value for " + key);
  return v;
}

}  // namespace

bool Dataset::is_complete(i64 N, i64 k) const {
  for (const auto& c : complete)
    if (c.N == N && c.k == k) return true;
  return false;
}

const NewformRecord* Dataset::find(const std::string& label) const {
  for (const auto& r : records)
    if (r.label == label) return &r;
  return nullptr;
}

Dataset parse_db(std::istream& in) {
  Dataset ds;
  std::set<std::string> seen_labels;
  std::set<std::pair<i64, i64>> seen_claims;
  std::optional<NewformRecord> open;  // block under construction
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    const std::string& kw = toks[0];

    if (kw == "newform") {
      if (open) throw parse_error(lineno, "newform block not closed by 'end'");
      if (toks.size() != 5 && toks.size() != 6)
        throw parse_error(lineno, "newform header needs N= k= label= deg= [res5=]");
      NewformRecord r;
      r.N = parse_int(expect_kv(toks[1], "N", lineno), lineno, "N");
      r.k = parse_int(expect_kv(toks[2], "k", lineno), lineno, "k");
      r.label = expect_kv(toks[3], "label", lineno);
      r.deg = static_cast<int>(parse_int(expect_kv(toks[4], "deg", lineno), lineno, "deg"));
      if (r.N < 1 || r.N > kMaxLevel) throw parse_error(lineno, "level out of range");
      if (r.k < 1 || r.k > kMaxWeight) throw parse_error(lineno, "weight out of range");
      if (r.deg < 1) throw parse_error(lineno, "deg must be positive");
      if (toks.size() == 6) {
        if (r.deg == 1)
          throw parse_error(lineno, "res5 is only allowed when deg > 1");
        std::string v = expect_kv(toks[5], "res5", lineno);
        if (v == "ok")
          r.res5 = Res5::ok;
        else if (v == "none")
          r.res5 = Res5::none;
        else
          throw parse_error(lineno, "res5 must be 'ok' or 'none', got '" + v + "'");
      } else if (r.deg > 1) {
        throw parse_error(lineno, "res5 is required when deg > 1");
      }
      if (!seen_labels.insert(r.label).second)
        throw parse_error(lineno, "duplicate label '" + r.label + "'");
      open = std::move(r);
    } else if (kw == "a") {
      if (!open) throw parse_error(lineno, "'a' outside a newform block");
      if (open->deg != 1)
        throw parse_error(lineno, "'a' lines require deg = 1 (use 'am')");
      if (toks.size() != 3) throw parse_error(lineno, "'a' needs: a <p> <int>");
      i64 p = parse_int(toks[1], lineno, "p");
      if (!is_prime(p)) throw parse_error(lineno, "a: index must be prime");
      if (open->exact_ap.count(p))
        throw parse_error(lineno, "duplicate eigenvalue at p=" + std::to_string(p));
      open->exact_ap[p] = parse_int(toks[2], lineno, "a_p");
    } else if (kw == "am") {
      if (!open) throw parse_error(lineno, "'am' outside a newform block");
      if (open->deg == 1 || open->res5 != Res5::ok)
        throw parse_error(lineno, "'am' lines require deg > 1 and res5=ok");
      if (toks.size() != 4)
        throw parse_error(lineno, "'am' needs: am <p> <residue> <modulus>");
      i64 p = parse_int(toks[1], lineno, "p");
      if (!is_prime(p)) throw parse_error(lineno, "am: index must be prime");
      ResidueValue rv;
      rv.residue = parse_int(toks[2], lineno, "residue");
      rv.modulus = parse_int(toks[3], lineno, "modulus");
      if (rv.modulus < 2) throw parse_error(lineno, "modulus must be >= 2");
      if (rv.residue < 0 || rv.residue >= rv.modulus)
        throw parse_error(lineno, "residue out of range [0, modulus)");
      if (open->residue_ap.count(p))
        throw parse_error(lineno, "duplicate residue at p=" + std::to_string(p));
      open->residue_ap[p] = rv;
    } else if (kw == "end") {
      if (!open) throw parse_error(lineno, "'end' without open newform block");
      if (toks.size() != 1) throw parse_error(lineno, "'end' takes no arguments");
      ds.records.push_back(std::move(*open));
      open.reset();
    } else if (kw == "complete") {
      if (open) throw parse_error(lineno, "'complete' inside a newform block");
      if (toks.size() != 3) throw parse_error(lineno, "complete needs N= k=");
      CompletenessClaim c;
      c.N = parse_int(expect_kv(toks[1], "N", lineno), lineno, "N");
      c.k = parse_int(expect_kv(toks[2], "k", lineno), lineno, "k");
      if (c.N < 1 || c.N > kMaxLevel) throw parse_error(lineno, "level out of range");
      if (c.k < 1 || c.k > kMaxWeight) throw parse_error(lineno, "weight out of range");
      if (!seen_claims.insert({c.N, c.k}).second)
        throw parse_error(lineno, "duplicate completeness claim");
      ds.complete.push_back(c);
    } else {
      throw parse_error(lineno, "unknown keyword '" + kw + "'");
    }
  }
  if (open) throw parse_error(lineno, "unterminated newform block at end of input");
  return ds;
}

Dataset parse_db_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset file: " + path);
  try {
    return parse_db(in);
  } catch (const parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

std::string serialize(const Dataset& ds) {
  std::ostringstream out;
  for (const auto& r : ds.records) {
    out << "newform N=" << r.N << " k=" << r.k << " label=" << r.label
        << " deg=" << r.deg;
    if (r.deg > 1) out << " res5=" << (r.res5 == Res5::ok ? "ok" : "none");
    out << '\n';
    for (auto [p, a] : r.exact_ap) out << "a " << p << ' ' << a << '\n';
    for (auto [p, rv] : r.residue_ap)
      out << "am " << p << ' ' << rv.residue << ' ' << rv.modulus << '\n';
    out << "end\n";
  }
  for (const auto& c : ds.complete)
    out << "complete N=" << c.N << " k=" << c.k << '\n';
  return out.str();
}

std::optional<i64> ramanujan_bound(i64 p, i64 k) {
  __int128 v = 4;
  for (i64 i = 0; i < k - 1; ++i) {
    v *= p;
    if (v > __int128(INT64_MAX)) return std::nullopt;
  }
  return isqrt(static_cast<i64>(v));
}

std::vector<std::string> validate(const Dataset& ds) {
  std::vector<std::string> out;
  std::set<std::string> labels;
  for (const auto& r : ds.records) {
    if (!labels.insert(r.label).second)
      out.push_back("duplicate label '" + r.label + "'");
    if (r.k % 2 != 0 || r.k < 2)
      out.push_back("record " + r.label + ": unsupported odd or small weight " +
                    std::to_string(r.k));
    if (r.deg == 1) {
      if (r.res5 != Res5::not_applicable)
        out.push_back("record " + r.label + ": res5 set on a deg-1 record");
      if (!r.residue_ap.empty())
        out.push_back("record " + r.label + ": residue lines on a deg-1 record");
      for (auto [p, a] : r.exact_ap) {
        auto bound = ramanujan_bound(p, r.k);
        if (bound && (a > *bound || a < -*bound))
          out.push_back("record " + r.label +
                        ": Ramanujan bound exceeded at p=" + std::to_string(p) +
                        " (|" + std::to_string(a) + "| > " +
                        std::to_string(*bound) + ")");
      }
    } else {
      if (r.res5 == Res5::not_applicable)
        out.push_back("record " + r.label + ": missing res5 on a deg>1 record");
      if (!r.exact_ap.empty())
        out.push_back("record " + r.label + ": exact eigenvalues on a deg>1 record");
      if (r.res5 == Res5::none && !r.residue_ap.empty())
        out.push_back("record " + r.label + ": residue lines with res5=none");
      for (auto [p, rv] : r.residue_ap)
        if (rv.residue < 0 || rv.residue >= rv.modulus || rv.modulus < 2)
          out.push_back("record " + r.label + ": residue out of range at p=" +
                        std::to_string(p));
    }
  }
  for (const auto& c : ds.complete) {
    if (c.k % 2 != 0 || c.k < 2) {
      out.push_back("completeness claim (" + std::to_string(c.N) + ", " +
                    std::to_string(c.k) + "): unsupported weight");
      continue;
    }
    i64 want = dim_new(c.N, c.k);
    i64 got = 0, count = 0;
    for (const auto& r : ds.records)
      if (r.N == c.N && r.k == c.k) {
        got += r.deg;
        ++count;
      }
    if (count > want)
      out.push_back("completeness claim (" + std::to_string(c.N) + ", " +
                    std::to_string(c.k) + "): " + std::to_string(count) +
                    " records > dim_new " + std::to_string(want));
    if (got != want)
      out.push_back("completeness claim (" + std::to_string(c.N) + ", " +
                    std::to_string(c.k) + "): degree sum " + std::to_string(got) +
                    " != dim_new " + std::to_string(want));
  }
  return out;
}

std::vector<const NewformRecord*> query(const Dataset& ds,
                                        const std::set<i64>& levels, i64 k) {
  std::vector<const NewformRecord*> out;
  for (const auto& r : ds.records)
    if (r.k == k && levels.count(r.N)) out.push_back(&r);
  std::sort(out.begin(), out.end(),
            [](const NewformRecord* a, const NewformRecord* b) {
              if (a->N != b->N) return a->N < b->N;
              return a->label < b->label;
            });
  return out;
}

}  // namespace cy3
