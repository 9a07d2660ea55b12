#include "cy3level/residual.hpp"

#include <charconv>
#include <fstream>
#include <numeric>

#include "cy3level/newform_db.hpp"  // parse_error, ramanujan-style bound helper

namespace cy3 {

namespace {
i64 parse_int_tok(const std::string& s, int line, const std::string& what) {
  i64 v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw parse_error(line, "malformed integer for " + what + ": '" + s + "'");
  return v;
}

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
}  // namespace

TraceData parse_traces(std::istream& in) {
  TraceData td;
  bool have_bad = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    if (toks[0] == "bad") {
      if (have_bad) throw parse_error(lineno, "duplicate 'bad' line");
      for (std::size_t i = 1; i < toks.size(); ++i) {
        i64 p = parse_int_tok(toks[i], lineno, "bad prime");
        if (!is_prime(p)) throw parse_error(lineno, "'bad' entries must be prime");
        td.bad.insert(p);
      }
      have_bad = true;
    } else if (toks[0] == "t") {
      if (!have_bad)
        throw parse_error(lineno, "'t' line before the 'bad' line");
      if (toks.size() != 3) throw parse_error(lineno, "'t' needs: t <p> <int>");
      i64 p = parse_int_tok(toks[1], lineno, "p");
      i64 t = parse_int_tok(toks[2], lineno, "t_p");
      if (!is_prime(p)) throw parse_error(lineno, "trace index must be prime");
      if (td.bad.count(p))
        throw parse_error(lineno, "trace given at a bad prime p=" + std::to_string(p));
      if (td.traces.count(p))
        throw parse_error(lineno, "duplicate trace at p=" + std::to_string(p));
      auto weil = ramanujan_bound(p, 4);  // floor(2 p^{3/2})
      if (weil && (t > *weil || t < -*weil))
        throw parse_error(lineno, "trace at p=" + std::to_string(p) +
                                      " violates the Weil bound");
      td.traces[p] = t;
    } else {
      throw parse_error(lineno, "unknown keyword '" + toks[0] + "'");
    }
  }
  if (!have_bad) throw parse_error(lineno, "missing 'bad' line");
  return td;
}

TraceData parse_traces_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace file: " + path);
  try {
    return parse_traces(in);
  } catch (const parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

ResidueTraces reduce_traces(const TraceData& td, i64 ell) {
  if (ell < 2 || !is_prime(ell)) throw domain_error("reduce_traces: ell must be prime");
  ResidueTraces rt;
  rt.ell = ell;
  for (auto [p, t] : td.traces) {
    if (p == ell) continue;  // dropped by contract
    rt.residues[p] = ((t % ell) + ell) % ell;
  }
  return rt;
}

ResidueTraces twist_residues(const ResidueTraces& rt, i64 power) {
  ResidueTraces out;
  out.ell = rt.ell;
  i64 phi = rt.ell - 1;
  i64 e = ((power % phi) + phi) % phi;
  for (auto [p, r] : rt.residues)
    out.residues[p] = pow_mod(p, e, rt.ell) * r % rt.ell;
  return out;
}

i64 balanced_rep(i64 r, i64 ell) {
  i64 half = ell / 2;
  i64 m = ((r % ell) + ell) % ell;
  return m > half ? m - ell : m;
}

// ---------------------------------------------------------------------------
// Characters
// ---------------------------------------------------------------------------

namespace detail {
struct CharContext {
  i64 M = 1;
  i64 ell = 5;
  i64 w = 2;  // generator of F_ell^*
  UnitGroup ug;
  std::vector<i64> gen_prime;  // prime component each generator belongs to
  std::map<i64, std::vector<i64>> dlog;  // residue -> exponent vector
};
}  // namespace detail

namespace {

i64 find_f_ell_generator(i64 ell) {
  for (i64 a = 2; a < ell; ++a) {
    bool ok = true;
    for (i64 d = 1; d < ell - 1; ++d)
      if ((ell - 1) % d == 0 && d < ell - 1 && pow_mod(a, d, ell) == 1) {
        ok = false;
        break;
      }
    if (ok) return a;
  }
  throw domain_error("no generator of F_ell^*");
}

std::shared_ptr<const detail::CharContext> make_context(i64 M, i64 ell) {
  if (M < 1) throw domain_error("enumerate_characters: modulus must be positive");
  if (!is_prime(ell) || ell < 3 || ell > 13)
    throw domain_error("enumerate_characters: ell must be an odd prime <= 13");
  auto ctx = std::make_shared<detail::CharContext>();
  ctx->M = M;
  ctx->ell = ell;
  ctx->w = find_f_ell_generator(ell);
  ctx->ug = unit_group(M);
  for (auto [g, o] : ctx->ug.generators) {
    i64 belongs = 0;
    for (auto [p, e] : factorize(M).factors) {
      i64 q = checked_pow(p, e);
      if (g % q != 1 % q) belongs = p;
    }
    ctx->gen_prime.push_back(belongs);
  }
  // Full discrete-log table by odometer enumeration (phi(M) entries).
  std::size_t n = ctx->ug.generators.size();
  std::vector<i64> exps(n, 0);
  while (true) {
    i64 v = 1 % M;
    for (std::size_t i = 0; i < n; ++i)
      v = checked_mul(v, pow_mod(ctx->ug.generators[i].first, exps[i], M)) % M;
    ctx->dlog.emplace(v, exps);
    std::size_t i = 0;
    for (; i < n; ++i) {
      if (++exps[i] < ctx->ug.generators[i].second) break;
      exps[i] = 0;
    }
    if (i == n) break;
  }
  if (ctx->dlog.size() != static_cast<std::size_t>(euler_phi(M)))
    throw domain_error("character table: unit group enumeration incomplete");
  return ctx;
}

}  // namespace

Character::Character(std::shared_ptr<const detail::CharContext> ctx,
                     std::vector<i64> c)
    : ctx_(std::move(ctx)), c_(std::move(c)) {}

i64 Character::modulus() const { return ctx_->M; }
i64 Character::ell() const { return ctx_->ell; }

i64 Character::eval(i64 x) const {
  i64 M = ctx_->M;
  i64 xm = ((x % M) + M) % M;
  auto it = ctx_->dlog.find(xm);
  if (it == ctx_->dlog.end())
    throw domain_error("character evaluated at argument not coprime to modulus");
  i64 t = 0, lm1 = ctx_->ell - 1;
  for (std::size_t i = 0; i < c_.size(); ++i)
    t = (t + it->second[i] * c_[i]) % lm1;
  return pow_mod(ctx_->w, t, ctx_->ell);
}

Character Character::inverse() const {
  std::vector<i64> inv(c_.size());
  i64 lm1 = ctx_->ell - 1;
  for (std::size_t i = 0; i < c_.size(); ++i) inv[i] = (lm1 - c_[i]) % lm1;
  return Character(ctx_, std::move(inv));
}

bool Character::is_trivial() const {
  for (i64 c : c_)
    if (c != 0) return false;
  return true;
}

bool Character::operator==(const Character& o) const {
  return ctx_->M == o.ctx_->M && ctx_->ell == o.ctx_->ell && c_ == o.c_;
}

int Character::conductor_exponent_at(i64 p) const {
  int vp = 0;
  i64 M = ctx_->M;
  while (M % p == 0) {
    M /= p;
    ++vp;
  }
  if (vp == 0) return 0;  // p does not divide the modulus
  i64 lm1 = ctx_->ell - 1;
  if (p == 2) {
    // Component structure: trivial (vp=1); <3> order 2 (vp=2);
    // <-1> x <5> (vp>=3). Conductor: 0 if trivial; 4 if it factors through
    // (Z/4)*; 2^(t+2) when chi(5) has order 2^t > 1. The <-1> generator is
    // recognized by its residue -1 mod 2^vp (order comparison would not
    // distinguish the two generators at modulus 8).
    i64 q = checked_pow(2, vp);
    i64 ord5 = 1, ordm1 = 1;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (ctx_->gen_prime[i] != 2) continue;
      i64 value_order = c_[i] == 0 ? 1 : lm1 / std::gcd(c_[i], lm1);
      bool is_minus_one = (ctx_->ug.generators[i].first % q) == q - 1;
      if (is_minus_one)
        ordm1 = std::max(ordm1, value_order);
      else
        ord5 = value_order;
    }
    if (ord5 > 1) {
      int t = 0;
      i64 o = ord5;
      while (o > 1) {
        o /= 2;
        ++t;
      }
      return t + 2;
    }
    return ordm1 > 1 ? 2 : 0;
  }
  // Odd p: cyclic component; order of the image determines the exponent:
  // smallest f >= 1 with order | p^(f-1)(p-1), or 0 when trivial.
  i64 ord = 1;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (ctx_->gen_prime[i] != p || c_[i] == 0) continue;
    ord = lm1 / std::gcd(c_[i], lm1);
  }
  if (ord == 1) return 0;
  i64 quot_order = p - 1;
  for (int f = 1; f <= vp; ++f) {
    if (quot_order % ord == 0) return f;
    quot_order *= p;
  }
  throw domain_error("conductor exponent computation failed");
}

std::vector<Character> enumerate_characters(i64 M, i64 ell) {
  auto ctx = make_context(M, ell);
  i64 lm1 = ell - 1;
  std::vector<std::vector<i64>> choices;
  for (auto [g, o] : ctx->ug.generators) {
    std::vector<i64> cs;
    for (i64 c = 0; c < lm1; ++c)
      if ((c * o) % lm1 == 0) cs.push_back(c);
    choices.push_back(std::move(cs));
  }
  std::vector<Character> out;
  std::vector<std::size_t> idx(choices.size(), 0);
  while (true) {
    std::vector<i64> c(choices.size());
    for (std::size_t i = 0; i < choices.size(); ++i) c[i] = choices[i][idx[i]];
    out.push_back(Character(ctx, std::move(c)));
    std::size_t i = 0;
    for (; i < choices.size(); ++i) {
      if (++idx[i] < choices[i].size()) break;
      idx[i] = 0;
    }
    if (i == choices.size()) break;
  }
  return out;
}

std::vector<CharacterFit> reducible_fits(const ResidueTraces& rt,
                                         const std::set<i64>& S, i64 ell) {
  i64 M = ell;
  if (S.count(2)) M = checked_mul(M, 16);
  for (i64 p : S)
    if (p % 2 == 1 && p != ell) M = checked_mul(M, p);
  i64 lm1 = ell - 1;

  std::vector<CharacterFit> fits;
  for (const Character& eps : enumerate_characters(M, ell)) {
    Character eps_inv = eps.inverse();
    for (int i = 0; i < lm1; ++i) {
      int j = static_cast<int>((((3 - i) % lm1) + lm1) % lm1);
      bool ok = true;
      for (auto [p, r] : rt.residues) {
        i64 lhs = (eps.eval(p) * pow_mod(p, i, ell) +
                   eps_inv.eval(p) * pow_mod(p, j, ell)) %
                  ell;
        if (lhs != r) {
          ok = false;
          break;
        }
      }
      if (ok)
        fits.push_back(CharacterFit{eps, eps.conductor_exponent_at(2), i, j});
    }
  }
  // Self-verification pass: every fit must reproduce all residues exactly.
  for (const auto& f : fits) {
    Character inv = f.eps.inverse();
    for (auto [p, r] : rt.residues) {
      i64 lhs = (f.eps.eval(p) * pow_mod(p, f.i, ell) +
                 inv.eval(p) * pow_mod(p, f.j, ell)) %
                ell;
      if (lhs != r) throw domain_error("reducible_fits: self-verification failed");
    }
  }
  return fits;
}

bool fits_ramified_at(const std::vector<CharacterFit>& fits, i64 p) {
  for (const auto& f : fits)
    if (f.eps.conductor_exponent_at(p) != 0) return true;
  return false;
}

}  // namespace cy3
