#include "pgonal/survey.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "pgonal/locality.hpp"

namespace pgonal {

namespace {

using ordered_json = nlohmann::ordered_json;

long long checked_ll(const BigInt& v, const char* what) {
  if (v > INT64_MAX || v < INT64_MIN) throw DomainError(std::string(what) + ": out of range");
  return static_cast<long long>(v);
}

BigRat exception_ratio(int m, long long max_exception) {
  BigInt den = BigInt(m - 2) * (m - 2) * (m - 2);
  return BigRat(BigInt(max_exception), den);
}

ordered_json form_json(int m, const std::vector<long long>& coeffs) {
  ordered_json f;
  f["m"] = m;
  f["coeffs"] = coeffs;
  return f;
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError("cannot open for writing: " + path);
  out << data;
}

ordered_json parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open: " + path);
  try {
    return ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& ex) {
    throw ParseError(std::string("malformed JSON in ") + path + ": " + ex.what());
  }
}

std::string checkpoint_to_json(const MgonalForm& form, long long bound, long long last_n,
                               const std::vector<long long>& exceptions) {
  ordered_json j;
  j["version"] = 1;
  j["kind"] = "checkpoint";
  j["form"] = form_json(form.m, form.coeffs);
  j["bound"] = bound;
  j["last_n"] = last_n;
  j["exceptions"] = exceptions;
  return j.dump() + "\n";
}

struct ChunkPlan {
  long long start = 0;  // first N of chunk 0
  long long end = 0;    // inclusive scan end
  long long size = 10000;
  long long count = 0;

  long long lo(long long c) const { return start + c * size; }
  long long hi(long long c) const { return std::min(end, start + (c + 1) * size - 1); }
};

}  // namespace

ExceptionReport exception_scan(const MgonalForm& form, long long bound,
                               const ScanOptions& options) {
  if (bound < 0) throw DomainError("exception_scan: bound must be >= 0");
  if (options.threads < 1) throw DomainError("exception_scan: thread count must be >= 1");

  ExceptionReport report;
  report.m = form.m;
  report.coeffs = form.coeffs;
  report.bound = bound;

  long long start_n = 0;
  if (!options.checkpoint_path.empty() && std::ifstream(options.checkpoint_path).good()) {
    ordered_json j = parse_file(options.checkpoint_path);
    if (!j.contains("kind") || j["kind"] != "checkpoint" || !j.contains("form") ||
        !j.contains("bound") || !j.contains("last_n") || !j.contains("exceptions"))
      throw ParseError("checkpoint missing required fields: " + options.checkpoint_path);
    if (j["form"] != form_json(form.m, form.coeffs) || j["bound"].get<long long>() != bound)
      throw ParseError("checkpoint does not match the requested scan: " +
                       options.checkpoint_path);
    report.exceptions = j["exceptions"].get<std::vector<long long>>();
    start_n = j["last_n"].get<long long>() + 1;
  }

  long long end_n = bound;
  if (options.stop_after >= 0) end_n = std::min(end_n, options.stop_after);

  if (start_n <= end_n) {
    const RepresentableSet rset(form, bound);

    ChunkPlan plan;
    plan.start = start_n;
    plan.end = end_n;
    plan.size = std::max<long long>(options.checkpoint_every, 1);
    plan.count = (end_n - start_n) / plan.size + 1;

    std::vector<std::vector<long long>> results(static_cast<size_t>(plan.count));
    std::vector<char> done(static_cast<size_t>(plan.count), 0);
    std::atomic<long long> next{0};
    std::mutex mu;
    std::condition_variable cv;

    auto worker = [&]() {
      for (;;) {
        const long long c = next.fetch_add(1);
        if (c >= plan.count) return;
        std::vector<long long> found;
        for (long long n = plan.lo(c); n <= plan.hi(c); ++n) {
          if (!rset.contains(n) && locally_represented(form, n)) found.push_back(n);
        }
        {
          std::lock_guard<std::mutex> lock(mu);
          results[static_cast<size_t>(c)] = std::move(found);
          done[static_cast<size_t>(c)] = 1;
        }
        cv.notify_one();
      }
    };

    std::vector<std::thread> pool;
    const int nthreads = std::min<long long>(options.threads, plan.count);
    pool.reserve(static_cast<size_t>(nthreads));
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);

    // merge completed chunks in order, checkpointing at each boundary
    long long merged = 0;
    {
      std::unique_lock<std::mutex> lock(mu);
      while (merged < plan.count) {
        cv.wait(lock, [&] { return done[static_cast<size_t>(merged)] != 0; });
        while (merged < plan.count && done[static_cast<size_t>(merged)]) {
          auto& chunk = results[static_cast<size_t>(merged)];
          report.exceptions.insert(report.exceptions.end(), chunk.begin(), chunk.end());
          chunk.clear();
          if (!options.checkpoint_path.empty()) {
            write_file(options.checkpoint_path,
                       checkpoint_to_json(form, bound, plan.hi(merged), report.exceptions));
          }
          ++merged;
        }
      }
    }
    for (auto& t : pool) t.join();
  }

  report.max_exception = report.exceptions.empty() ? 0 : report.exceptions.back();
  report.ratio = exception_ratio(form.m, report.max_exception);
  return report;
}

GrowthFit growth_scan(const std::vector<long long>& coeffs, const std::vector<int>& ms,
                      int multiplier, const ScanOptions& options) {
  if (coeffs.size() < 6) throw DomainError("growth_scan: rank must be >= 6");
  if (multiplier < 1) throw DomainError("growth_scan: multiplier must be >= 1");
  std::set<int> seen;
  GrowthFit fit;
  for (int m : ms) {
    if (!seen.insert(m).second) throw DomainError("growth_scan: duplicate m in range");
    const MgonalForm form(m, coeffs);
    const __int128 bound_wide =
        static_cast<__int128>(multiplier) * (m - 2) * (m - 2) * (m - 2);
    if (bound_wide > INT64_MAX) throw DomainError("growth_scan: bound out of range");
    ScanOptions per_m = options;
    per_m.checkpoint_path.clear();  // checkpoints are per-scan artifacts
    ExceptionReport rep = exception_scan(form, static_cast<long long>(bound_wide), per_m);
    fit.rows.push_back({m, rep.max_exception, rep.ratio});
  }
  if (!fit.rows.empty()) {
    fit.min_ratio = fit.max_ratio = fit.rows.front().ratio;
    BigRat sum = 0;
    for (const GrowthRow& r : fit.rows) {
      fit.min_ratio = std::min(fit.min_ratio, r.ratio);
      fit.max_ratio = std::max(fit.max_ratio, r.ratio);
      sum += r.ratio;
    }
    fit.mean_ratio = sum / static_cast<int>(fit.rows.size());
  }
  return fit;
}

std::vector<long long> optimality_probe(const std::vector<long long>& coeffs, int m) {
  if (coeffs.size() < 6) throw DomainError("optimality_probe: rank must be >= 6");
  const MgonalForm form(m, coeffs);
  std::vector<long long> flagged;
  for (long long b = 0; b <= m - 3; ++b) {
    for (long long a = 0;; ++a) {
      const long long n = a * (m - 2) + b;
      if (cs_admissible(form, n)) break;  // admissibility is monotone in A
      if (locally_represented(form, n)) flagged.push_back(n);
    }
  }
  std::sort(flagged.begin(), flagged.end());
  if (!flagged.empty()) {
    // every flagged N must be globally unrepresented
    const RepresentableSet rset(form, flagged.back());
    for (long long n : flagged) {
      if (rset.contains(n))
        throw std::logic_error("optimality_probe: flagged N has a witness");
    }
  }
  return flagged;
}

ExceptionReport rank4_remark_check(int m, long long bound, const ScanOptions& options) {
  if (m % 4 != 0 || m <= 8)
    throw DomainError("rank4_remark_check: requires m = 0 mod 4 and m > 8");
  return exception_scan(MgonalForm(m, {1, 1, 1, 1}), bound, options);
}

std::string report_to_json(const ExceptionReport& report) {
  ordered_json j;
  j["form"] = form_json(report.m, report.coeffs);
  j["bound"] = report.bound;
  j["exceptions"] = report.exceptions;
  j["max_exception"] = report.max_exception;
  j["ratio_num"] = checked_ll(numerator(report.ratio), "ratio_num");
  j["ratio_den"] = checked_ll(denominator(report.ratio), "ratio_den");
  j["version"] = report.version;
  return j.dump() + "\n";
}

std::string report_to_csv(const ExceptionReport& report) {
  std::ostringstream out;
  out << "N,A,B,locally_represented,represented\n";
  for (long long n : report.exceptions) {
    const TargetDecomposition t = decompose(report.m, n);
    out << n << ',' << t.a << ',' << t.b << ",1,0\n";
  }
  return out.str();
}

void save_report(const std::string& path, const ExceptionReport& report) {
  write_file(path, report_to_json(report));
}

ExceptionReport load_report(const std::string& path) {
  ordered_json j = parse_file(path);
  for (const char* key : {"form", "bound", "exceptions", "max_exception", "ratio_num",
                          "ratio_den", "version"}) {
    if (!j.contains(key)) throw ParseError(std::string("report missing field '") + key +
                                           "': " + path);
  }
  if (!j["form"].contains("m") || !j["form"].contains("coeffs"))
    throw ParseError("report form descriptor incomplete: " + path);
  ExceptionReport r;
  try {
    r.m = j["form"]["m"].get<int>();
    r.coeffs = j["form"]["coeffs"].get<std::vector<long long>>();
    r.bound = j["bound"].get<long long>();
    r.exceptions = j["exceptions"].get<std::vector<long long>>();
    r.max_exception = j["max_exception"].get<long long>();
    r.ratio = BigRat(BigInt(j["ratio_num"].get<long long>()),
                     BigInt(j["ratio_den"].get<long long>()));
    r.version = j["version"].get<int>();
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("report field of wrong type in ") + path + ": " + ex.what());
  }
  if (!std::is_sorted(r.exceptions.begin(), r.exceptions.end()))
    throw ParseError("report exceptions not ascending: " + path);
  const long long expect_max = r.exceptions.empty() ? 0 : r.exceptions.back();
  if (r.max_exception != expect_max || (!r.exceptions.empty() && r.exceptions.back() > r.bound))
    throw ParseError("report internally inconsistent: " + path);
  return r;
}

}  // namespace pgonal
