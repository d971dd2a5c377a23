#pragma once

#include <string>
#include <vector>

#include "pgonal/forms.hpp"
#include "pgonal/numeric.hpp"

namespace pgonal {

/// Integers locally represented but not represented, up to a scan bound.
/// max_exception is 0 when none were found within the bound; "none found
/// within bound" is never upgraded to "proven none".
struct ExceptionReport {
  int m = 3;
  std::vector<long long> coeffs;
  long long bound = 0;
  std::vector<long long> exceptions;
  long long max_exception = 0;
  BigRat ratio = 0;  // max_exception / (m-2)^3
  int version = 1;
};

struct GrowthRow {
  int m = 3;
  long long max_exception = 0;
  BigRat ratio = 0;
};

struct GrowthFit {
  std::vector<GrowthRow> rows;
  BigRat min_ratio = 0;
  BigRat max_ratio = 0;
  BigRat mean_ratio = 0;
};

struct ScanOptions {
  int threads = 1;
  std::string checkpoint_path;        // empty disables checkpointing
  long long checkpoint_every = 10000;
  long long stop_after = -1;          // stop once this N is checkpointed (testing)
};

ExceptionReport exception_scan(const MgonalForm& form, long long bound,
                               const ScanOptions& options = {});

GrowthFit growth_scan(const std::vector<long long>& coeffs, const std::vector<int>& ms,
                      int multiplier, const ScanOptions& options = {});

/// All N = A(m-2)+B, any 0 <= B <= m-3, with cs_admissible false but
/// locally_represented true; each is re-verified unrepresented.
std::vector<long long> optimality_probe(const std::vector<long long>& coeffs, int m);

/// exception_scan for <1,1,1,1>_m; requires m = 0 mod 4 and m > 8.
ExceptionReport rank4_remark_check(int m, long long bound,
                                   const ScanOptions& options = {});

std::string report_to_json(const ExceptionReport& report);
std::string report_to_csv(const ExceptionReport& report);
void save_report(const std::string& path, const ExceptionReport& report);
ExceptionReport load_report(const std::string& path);

}  // namespace pgonal
