#pragma once
// Parse, validate, and query newform eigenvalue datasets (line-oriented text
// files). Parsing is strict; validation reports invariant violations as data.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cy3level/arith.hpp"

namespace cy3 {

class parse_error : public std::runtime_error {
 public:
  parse_error(int line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

enum class Res5 { not_applicable, ok, none };

struct ResidueValue {
  i64 residue = 0;
  i64 modulus = 0;
  bool operator==(const ResidueValue&) const = default;
};

struct NewformRecord {
  i64 N = 0;
  i64 k = 0;
  std::string label;
  int deg = 1;
  Res5 res5 = Res5::not_applicable;
  std::map<i64, i64> exact_ap;           // present iff deg == 1
  std::map<i64, ResidueValue> residue_ap;  // deg > 1 with res5 == ok
  bool operator==(const NewformRecord&) const = default;
};

struct CompletenessClaim {
  i64 N = 0;
  i64 k = 0;
  bool operator==(const CompletenessClaim&) const = default;
};

struct Dataset {
  std::vector<NewformRecord> records;
  std::vector<CompletenessClaim> complete;

  bool is_complete(i64 N, i64 k) const;
  const NewformRecord* find(const std::string& label) const;
  bool operator==(const Dataset&) const = default;
};

// Strict parser for the dataset grammar ('#' comments, blank lines ignored,
// unknown keywords are errors). Throws parse_error.
Dataset parse_db(std::istream& in);
Dataset parse_db_file(const std::string& path);

// Canonical text form; parse(serialize(ds)) == ds.
std::string serialize(const Dataset& ds);

// All invariant violations (empty iff the dataset is valid): Ramanujan bound
// per deg-1 eigenvalue, residue ranges, label uniqueness, and completeness
// claims checked against dim_new by degree sum.
std::vector<std::string> validate(const Dataset& ds);

// Records with level in `levels` and weight k, ordered by (level, label).
std::vector<const NewformRecord*> query(const Dataset& ds,
                                        const std::set<i64>& levels, i64 k);

// floor(2 p^((k-1)/2)) as an exact integer: isqrt(4 p^(k-1}).
// Returns nullopt when 4 p^(k-1) exceeds 64-bit range (bound unenforceable,
// treated as satisfied).
std::optional<i64> ramanujan_bound(i64 p, i64 k);

}  // namespace cy3
