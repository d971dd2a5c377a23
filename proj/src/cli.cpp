#include "pgonal/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "pgonal/forms.hpp"
#include "pgonal/locality.hpp"
#include "pgonal/survey.hpp"

namespace pgonal {

namespace {

using ordered_json = nlohmann::ordered_json;

std::vector<long long> parse_ll_list(const std::string& text, const char* what) {
  std::vector<long long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t pos = 0;
      out.push_back(std::stoll(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw DomainError(std::string(what) + ": cannot parse integer '" + item + "'");
    }
  }
  if (out.empty()) throw DomainError(std::string(what) + ": empty list");
  return out;
}

std::vector<int> parse_m_range(const std::string& text) {
  const auto colon = text.find(':');
  std::vector<int> out;
  if (colon != std::string::npos) {
    int lo = 0, hi = 0;
    try {
      lo = std::stoi(text.substr(0, colon));
      hi = std::stoi(text.substr(colon + 1));
    } catch (const std::exception&) {
      throw DomainError("--m-range: expected lo:hi or a comma list");
    }
    if (lo > hi) throw DomainError("--m-range: lo exceeds hi");
    for (int m = lo; m <= hi; ++m) out.push_back(m);
  } else {
    for (long long v : parse_ll_list(text, "--m-range")) out.push_back(static_cast<int>(v));
  }
  return out;
}

// K may exceed any native width; numbers up to 2^53 stay numeric in JSON
ordered_json big_to_json(const BigInt& v) {
  if (v >= 0 && v <= BigInt(1) << 53) return static_cast<long long>(v);
  return v.str();
}

void emit(std::ostream& out, const std::string& output_path, const std::string& payload) {
  if (output_path.empty()) {
    out << payload;
    return;
  }
  std::ofstream f(output_path, std::ios::binary | std::ios::trunc);
  if (!f) throw ParseError("cannot open for writing: " + output_path);
  f << payload;
}

std::string default_checkpoint_path(const std::string& cmd, int m,
                                    const std::vector<long long>& coeffs, long long bound) {
  const char* dir = std::getenv("PGONAL_CACHE_DIR");
  if (dir == nullptr || *dir == '\0') return {};
  std::ostringstream name;
  name << dir << "/pgonal-" << cmd << "-m" << m << "-c";
  for (size_t i = 0; i < coeffs.size(); ++i) name << (i ? "_" : "") << coeffs[i];
  name << "-b" << bound << ".json";
  return name.str();
}

std::string report_text(const ExceptionReport& r) {
  std::ostringstream out;
  out << "form <";
  for (size_t i = 0; i < r.coeffs.size(); ++i) out << (i ? "," : "") << r.coeffs[i];
  out << ">_" << r.m << "  bound " << r.bound << "\n";
  out << "exceptions (" << r.exceptions.size() << "):";
  for (long long n : r.exceptions) out << ' ' << n;
  out << "\nmax_exception " << r.max_exception << "  ratio " << numerator(r.ratio) << "/"
      << denominator(r.ratio) << "\n";
  return out.str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"pgonal: representation of integers by generalized m-gonal forms"};
  app.require_subcommand(1);

  struct {
    int m = 0;
    std::string coeffs, xs, nstr, mrange, checkpoint, output;
    long long n = 0, bound = 0, a = 0, b = 0;
    long long p = 0;
    int threads = 1, multiplier = 20;
    bool json = false, csv = false;
    bool have_ab = false;
  } cfg;

  auto add_json = [&](CLI::App* sub) { sub->add_flag("--json", cfg.json, "JSON output"); };
  auto add_report_fmt = [&](CLI::App* sub) {
    add_json(sub);
    sub->add_flag("--csv", cfg.csv, "CSV output");
    sub->add_option("--output", cfg.output, "write output to a file");
    sub->add_option("--threads", cfg.threads, "worker threads for the scan");
    sub->add_option("--checkpoint", cfg.checkpoint,
                    "checkpoint file (default from PGONAL_CACHE_DIR)");
  };

  CLI::App* c_eval = app.add_subcommand("eval", "evaluate the form at a tuple");
  c_eval->add_option("--m", cfg.m)->required();
  c_eval->add_option("--coeffs", cfg.coeffs, "comma-separated weights; order is preserved")->required();
  c_eval->add_option("--x", cfg.xs, "comma-separated tuple")->required();
  add_json(c_eval);

  CLI::App* c_rep = app.add_subcommand("represents", "search for a witness of N");
  c_rep->add_option("--m", cfg.m)->required();
  c_rep->add_option("--coeffs", cfg.coeffs)->required();
  c_rep->add_option("--n", cfg.n)->required();
  add_json(c_rep);

  CLI::App* c_loc = app.add_subcommand("local", "local representation decider");
  c_loc->add_option("--m", cfg.m)->required();
  c_loc->add_option("--coeffs", cfg.coeffs)->required();
  c_loc->add_option("--n", cfg.n)->required();
  c_loc->add_option("--p", cfg.p, "restrict to a single prime");
  add_json(c_loc);

  CLI::App* c_kb = app.add_subcommand("kbudget", "budget K(a) for the auxiliary k search");
  c_kb->add_option("--coeffs", cfg.coeffs,
                   "weights; K depends on their order (first entry pivots the reduction)")
      ->required();
  add_json(c_kb);

  CLI::App* c_fk = app.add_subcommand("findk", "smallest k making the system locally solvable");
  c_fk->add_option("--m", cfg.m)->required();
  c_fk->add_option("--coeffs", cfg.coeffs)->required();
  c_fk->add_option("--n", cfg.nstr, "target N (decomposed as A(m-2)+B)");
  c_fk->add_option("--A", cfg.a);
  c_fk->add_option("--B", cfg.b);
  add_json(c_fk);

  CLI::App* c_exc = app.add_subcommand("exceptions", "scan for locally-represented gaps");
  c_exc->add_option("--m", cfg.m)->required();
  c_exc->add_option("--coeffs", cfg.coeffs)->required();
  c_exc->add_option("--bound", cfg.bound)->required();
  add_report_fmt(c_exc);

  CLI::App* c_gr = app.add_subcommand("growth", "max-exception growth across m");
  c_gr->add_option("--coeffs", cfg.coeffs)->required();
  c_gr->add_option("--m-range", cfg.mrange, "lo:hi or comma list")->required();
  c_gr->add_option("--multiplier", cfg.multiplier, "scan bound per m is multiplier*(m-2)^3");
  add_report_fmt(c_gr);

  CLI::App* c_r4 = app.add_subcommand("rank4", "exception scan for <1,1,1,1>_m, m = 0 mod 4");
  c_r4->add_option("--m", cfg.m)->required();
  c_r4->add_option("--bound", cfg.bound)->required();
  add_report_fmt(c_r4);

  CLI::App* c_pr = app.add_subcommand("probe-optimality", "never-represented N flagged at the real place");
  c_pr->add_option("--m", cfg.m)->required();
  c_pr->add_option("--coeffs", cfg.coeffs)->required();
  add_json(c_pr);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& ex) {
    err << "usage error: " << ex.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (app.got_subcommand(c_eval)) {
      const MgonalForm form(cfg.m, parse_ll_list(cfg.coeffs, "--coeffs"));
      const long long v = evaluate(form, parse_ll_list(cfg.xs, "--x"));
      if (cfg.json) {
        ordered_json j;
        j["value"] = v;
        out << j.dump() << "\n";
      } else {
        out << v << "\n";
      }
      return 0;
    }

    if (app.got_subcommand(c_rep)) {
      const MgonalForm form(cfg.m, parse_ll_list(cfg.coeffs, "--coeffs"));
      const auto w = represents(form, cfg.n);
      if (cfg.json) {
        ordered_json j;
        j["represented"] = w.has_value();
        if (w) j["witness"] = w->xs;
        out << j.dump() << "\n";
      } else if (w) {
        out << "represented, witness";
        for (long long x : w->xs) out << ' ' << x;
        out << "\n";
      } else {
        out << "not represented\n";
      }
      return 0;
    }

    if (app.got_subcommand(c_loc)) {
      const MgonalForm form(cfg.m, parse_ll_list(cfg.coeffs, "--coeffs"));
      if (c_loc->count("--p") > 0) {
        const LocalVerdict v = local_represents_at(form, cfg.n, cfg.p);
        if (cfg.json) {
          ordered_json j;
          j["p"] = v.p;
          j["representable"] = v.representable;
          j["reason"] = to_string(v.reason);
          out << j.dump() << "\n";
        } else {
          out << (v.representable ? "representable" : "not representable") << " at p=" << v.p
              << " (" << to_string(v.reason) << ")\n";
        }
      } else {
        const bool loc = locally_represented(form, cfg.n);
        if (cfg.json) {
          ordered_json j;
          j["locally_represented"] = loc;
          out << j.dump() << "\n";
        } else {
          out << (loc ? "locally represented" : "not locally represented") << "\n";
        }
      }
      return 0;
    }

    if (app.got_subcommand(c_kb)) {
      const MgonalForm form(3, parse_ll_list(cfg.coeffs, "--coeffs"));
      const KBudget kb = k_budget(form);
      if (cfg.json) {
        ordered_json j;
        j["K"] = big_to_json(kb.budget);
        j["T"] = kb.odd_primes;
        out << j.dump() << "\n";
      } else {
        out << "K " << kb.budget.str() << "  T";
        if (kb.odd_primes.empty()) out << " (empty)";
        for (long long p : kb.odd_primes) out << ' ' << p;
        out << "\n";
      }
      return 0;
    }

    if (app.got_subcommand(c_fk)) {
      const MgonalForm form(cfg.m, parse_ll_list(cfg.coeffs, "--coeffs"));
      long long a = cfg.a, b = cfg.b;
      if (c_fk->count("--n") > 0) {
        if (c_fk->count("--A") > 0 || c_fk->count("--B") > 0)
          throw DomainError("findk: give either --n or --A/--B, not both");
        const TargetDecomposition t = decompose(cfg.m, std::stoll(cfg.nstr));
        a = t.a;
        b = t.b;
      } else if (c_fk->count("--A") == 0 || c_fk->count("--B") == 0) {
        throw DomainError("findk: need --n or both --A and --B");
      }
      const KBudget kb = k_budget(form);
      const auto k = find_k(form, a, b);
      if (!k) err << "warning: no k in [0, K) — budget lemma violation on this instance\n";
      if (cfg.json) {
        ordered_json j;
        j["A"] = a;
        j["B"] = b;
        j["K"] = big_to_json(kb.budget);
        j["T"] = kb.odd_primes;
        if (k)
          j["k"] = big_to_json(*k);
        else
          j["k"] = nullptr;
        out << j.dump() << "\n";
      } else if (k) {
        out << "k " << k->str() << "\n";
      } else {
        out << "no admissible k within the budget\n";
      }
      return 0;
    }

    auto run_scan = [&](const char* name, const MgonalForm& form, long long bound) {
      ScanOptions opt;
      opt.threads = cfg.threads;
      opt.checkpoint_path = !cfg.checkpoint.empty()
                                ? cfg.checkpoint
                                : default_checkpoint_path(name, form.m, form.coeffs, bound);
      const ExceptionReport r = exception_scan(form, bound, opt);
      emit(out, cfg.output, cfg.csv ? report_to_csv(r) : cfg.json ? report_to_json(r)
                                                                  : report_text(r));
    };

    if (app.got_subcommand(c_exc)) {
      run_scan("exceptions", MgonalForm(cfg.m, parse_ll_list(cfg.coeffs, "--coeffs")),
               cfg.bound);
      return 0;
    }

    if (app.got_subcommand(c_r4)) {
      if (cfg.m % 4 != 0 || cfg.m <= 8)
        throw DomainError("rank4: requires m = 0 mod 4 and m > 8");
      run_scan("rank4", MgonalForm(cfg.m, {1, 1, 1, 1}), cfg.bound);
      return 0;
    }

    if (app.got_subcommand(c_gr)) {
      ScanOptions opt;
      opt.threads = cfg.threads;
      const GrowthFit fit = growth_scan(parse_ll_list(cfg.coeffs, "--coeffs"),
                                        parse_m_range(cfg.mrange), cfg.multiplier, opt);
      std::string payload;
      if (cfg.json) {
        ordered_json j;
        j["rows"] = ordered_json::array();
        for (const GrowthRow& r : fit.rows) {
          ordered_json row;
          row["m"] = r.m;
          row["max_exception"] = r.max_exception;
          row["ratio_num"] = static_cast<long long>(numerator(r.ratio));
          row["ratio_den"] = static_cast<long long>(denominator(r.ratio));
          j["rows"].push_back(row);
        }
        j["min_ratio"] = {static_cast<long long>(numerator(fit.min_ratio)),
                          static_cast<long long>(denominator(fit.min_ratio))};
        j["max_ratio"] = {static_cast<long long>(numerator(fit.max_ratio)),
                          static_cast<long long>(denominator(fit.max_ratio))};
        j["mean_ratio"] = {static_cast<long long>(numerator(fit.mean_ratio)),
                           static_cast<long long>(denominator(fit.mean_ratio))};
        payload = j.dump() + "\n";
      } else if (cfg.csv) {
        std::ostringstream ss;
        ss << "m,max_exception,ratio_num,ratio_den\n";
        for (const GrowthRow& r : fit.rows)
          ss << r.m << ',' << r.max_exception << ',' << numerator(r.ratio) << ','
             << denominator(r.ratio) << "\n";
        payload = ss.str();
      } else {
        std::ostringstream ss;
        for (const GrowthRow& r : fit.rows)
          ss << "m=" << r.m << "  E=" << r.max_exception << "  ratio=" << numerator(r.ratio)
             << "/" << denominator(r.ratio) << "\n";
        payload = ss.str();
      }
      emit(out, cfg.output, payload);
      return 0;
    }

    if (app.got_subcommand(c_pr)) {
      const auto coeffs = parse_ll_list(cfg.coeffs, "--coeffs");
      const auto flagged = optimality_probe(coeffs, cfg.m);
      if (cfg.json) {
        ordered_json j;
        j["m"] = cfg.m;
        j["coeffs"] = coeffs;
        j["flagged"] = flagged;
        out << j.dump() << "\n";
      } else {
        out << "never represented (" << flagged.size() << "):";
        for (long long n : flagged) out << ' ' << n;
        out << "\n";
      }
      return 0;
    }
  } catch (const PrecisionError& ex) {
    err << "precision error: " << ex.what() << "\n";
    return 3;
  } catch (const DomainError& ex) {
    err << "error: " << ex.what() << "\n";
    return 2;
  } catch (const ParseError& ex) {
    err << "error: " << ex.what() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace pgonal
