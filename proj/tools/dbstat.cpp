// dbstat: print per-(level, weight) statistics for a newform dataset file --
// record counts, degree sums, the new-subspace dimension, and whether a
// completeness claim is present. Useful when extending the shipped tables.

#include <iostream>
#include <map>

#include "cy3level/newform_db.hpp"
#include "cy3level/sturm.hpp"

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: dbstat <dataset-file>...\n";
    return 1;
  }
  try {
    for (int i = 1; i < argc; ++i) {
      cy3::Dataset ds = cy3::parse_db_file(argv[i]);
      std::map<std::pair<cy3::i64, cy3::i64>, std::pair<int, int>> agg;
      for (const auto& r : ds.records) {
        auto& [count, degsum] = agg[{r.N, r.k}];
        ++count;
        degsum += r.deg;
      }
      std::cout << argv[i] << ":\n";
      for (const auto& [key, val] : agg) {
        auto [N, k] = key;
        auto [count, degsum] = val;
        std::cout << "  N=" << N << " k=" << k << " records=" << count
                  << " degree-sum=" << degsum
                  << " dim-new=" << cy3::dim_new(N, k)
                  << (ds.is_complete(N, k) ? " complete" : " partial") << "\n";
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
