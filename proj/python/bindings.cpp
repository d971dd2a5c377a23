#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pgonal/forms.hpp"
#include "pgonal/locality.hpp"
#include "pgonal/padic.hpp"
#include "pgonal/survey.hpp"

namespace py = pybind11;
using namespace pgonal;

namespace {

py::int_ big_to_py(const BigInt& v) {
  const std::string s = v.str();
  PyObject* obj = PyLong_FromString(s.c_str(), nullptr, 10);
  if (obj == nullptr) throw py::error_already_set();
  return py::reinterpret_steal<py::int_>(obj);
}

py::object rat_to_py(const BigRat& q) {
  py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(big_to_py(numerator(q)), big_to_py(denominator(q)));
}

BigInt big_from_py(const py::int_& v) {
  return BigInt(static_cast<std::string>(py::str(static_cast<const py::object&>(v))));
}

py::dict report_to_dict(const ExceptionReport& r) {
  py::dict d;
  d["m"] = r.m;
  d["coeffs"] = r.coeffs;
  d["bound"] = r.bound;
  d["exceptions"] = r.exceptions;
  d["max_exception"] = r.max_exception;
  d["ratio"] = rat_to_py(r.ratio);
  d["version"] = r.version;
  return d;
}

}  // namespace

PYBIND11_MODULE(_pgonal, m) {
  m.doc() = "Representation of integers by generalized m-gonal forms";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<PrecisionError>(m, "PrecisionError", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  m.def("polygonal_number", &polygonal_number, py::arg("m"), py::arg("x"));

  m.def(
      "evaluate",
      [](int m, const std::vector<long long>& coeffs, const std::vector<long long>& xs) {
        return evaluate(MgonalForm(m, coeffs), xs);
      },
      py::arg("m"), py::arg("coeffs"), py::arg("xs"));

  m.def(
      "decompose",
      [](int m, long long n) {
        TargetDecomposition t = decompose(m, n);
        return py::make_tuple(t.a, t.b);
      },
      py::arg("m"), py::arg("n"));

  m.def(
      "represents",
      [](int m, const std::vector<long long>& coeffs, long long n) -> py::object {
        auto w = represents(MgonalForm(m, coeffs), n);
        if (!w) return py::none();
        return py::cast(w->xs);
      },
      py::arg("m"), py::arg("coeffs"), py::arg("n"));

  m.def(
      "cs_admissible",
      [](int m, const std::vector<long long>& coeffs, long long n) {
        return cs_admissible(MgonalForm(m, coeffs), n);
      },
      py::arg("m"), py::arg("coeffs"), py::arg("n"));

  m.def(
      "ord",
      [](long long p, const py::int_& num, const py::int_& den) {
        BigRat q(big_from_py(num), big_from_py(den));
        int v = ord(p, q);
        if (v == kOrdInfinity) return py::object(py::none());
        return py::object(py::int_(v));
      },
      py::arg("p"), py::arg("num"), py::arg("den") = py::int_(1),
      "p-adic valuation; None encodes the valuation of 0");

  m.def(
      "square_class",
      [](long long p, const py::int_& u) {
        SquareClass c = square_class(p, big_from_py(u));
        py::dict d;
        d["p"] = c.p;
        d["representative"] = c.representative;
        d["valuation_parity"] = c.valuation_parity;
        return d;
      },
      py::arg("p"), py::arg("u"));

  m.def(
      "diag_represents",
      [](long long p, const std::vector<long long>& coeffs, const py::int_& c) {
        std::vector<BigInt> b(coeffs.begin(), coeffs.end());
        return diag_represents(p, b, big_from_py(c));
      },
      py::arg("p"), py::arg("coeffs"), py::arg("c"));

  m.def(
      "jordan_decompose",
      [](long long p, int e, const std::vector<std::vector<long long>>& rows) {
        JordanDecomposition jd = jordan_decompose(GramMatrix::from_rows(rows), PAdicContext(p, e));
        py::list blocks;
        for (const JordanBlock& b : jd.blocks) {
          py::list entries;
          for (int i = 0; i < b.dim * b.dim; ++i) entries.append(big_to_py(b.unit[i]));
          blocks.append(py::make_tuple(b.scale, b.dim, entries));
        }
        py::list transform;
        for (int i = 0; i < jd.transform.n; ++i) {
          py::list row;
          for (int j = 0; j < jd.transform.n; ++j) row.append(big_to_py(jd.transform.at(i, j)));
          transform.append(row);
        }
        py::dict d;
        d["transform"] = transform;
        d["blocks"] = blocks;
        return d;
      },
      py::arg("p"), py::arg("e"), py::arg("gram"));

  m.def(
      "reduced_data",
      [](const std::vector<long long>& coeffs) {
        ReducedQuadraticData rd = reduced_data(MgonalForm(3, coeffs));
        py::dict d;
        d["det"] = big_to_py(rd.det);
        py::list shift;
        for (const BigRat& r : rd.shift) shift.append(rat_to_py(r));
        d["shift"] = shift;
        d["scalar"] = rat_to_py(rd.scalar);
        return d;
      },
      py::arg("coeffs"));

  m.def(
      "local_represents_at",
      [](int m, const std::vector<long long>& coeffs, long long n, long long p) {
        LocalVerdict v = local_represents_at(MgonalForm(m, coeffs), n, p);
        return py::make_tuple(v.representable, std::string(to_string(v.reason)));
      },
      py::arg("m"), py::arg("coeffs"), py::arg("n"), py::arg("p"));

  m.def(
      "locally_represented",
      [](int m, const std::vector<long long>& coeffs, long long n) {
        return locally_represented(MgonalForm(m, coeffs), n);
      },
      py::arg("m"), py::arg("coeffs"), py::arg("n"));

  m.def(
      "system_locally_solvable",
      [](int m, const std::vector<long long>& coeffs, long long a, long long b,
         const py::int_& k, long long p) {
        return system_locally_solvable(MgonalForm(m, coeffs), a, b, big_from_py(k), p);
      },
      py::arg("m"), py::arg("coeffs"), py::arg("a"), py::arg("b"), py::arg("k"), py::arg("p"));

  m.def(
      "guaranteed_any_k",
      [](const std::vector<long long>& coeffs, long long p) {
        return guaranteed_any_k(MgonalForm(3, coeffs), p);
      },
      py::arg("coeffs"), py::arg("p"));

  m.def(
      "k_budget",
      [](const std::vector<long long>& coeffs) {
        KBudget kb = k_budget(MgonalForm(3, coeffs));
        py::dict d;
        d["K"] = big_to_py(kb.budget);
        d["T"] = kb.odd_primes;
        py::dict exps;
        for (auto& [p, e] : kb.exponents) exps[py::int_(p)] = e;
        d["exponents"] = exps;
        return d;
      },
      py::arg("coeffs"));

  m.def(
      "find_k",
      [](int m, const std::vector<long long>& coeffs, long long a, long long b) -> py::object {
        auto k = find_k(MgonalForm(m, coeffs), a, b);
        if (!k) return py::none();
        return big_to_py(*k);
      },
      py::arg("m"), py::arg("coeffs"), py::arg("a"), py::arg("b"));

  m.def(
      "k_period_check",
      [](int m, const std::vector<long long>& coeffs, long long a, long long b, long long p,
         const py::int_& k, int trials) {
        return k_period_check(MgonalForm(m, coeffs), a, b, p, big_from_py(k), trials);
      },
      py::arg("m"), py::arg("coeffs"), py::arg("a"), py::arg("b"), py::arg("p"), py::arg("k"),
      py::arg("trials") = 8);

  m.def(
      "exception_scan",
      [](int m, const std::vector<long long>& coeffs, long long bound, int threads,
         const std::string& checkpoint) {
        ScanOptions opt;
        opt.threads = threads;
        opt.checkpoint_path = checkpoint;
        return report_to_dict(exception_scan(MgonalForm(m, coeffs), bound, opt));
      },
      py::arg("m"), py::arg("coeffs"), py::arg("bound"), py::arg("threads") = 1,
      py::arg("checkpoint") = std::string());

  m.def(
      "growth_scan",
      [](const std::vector<long long>& coeffs, const std::vector<int>& ms, int multiplier,
         int threads) {
        ScanOptions opt;
        opt.threads = threads;
        GrowthFit fit = growth_scan(coeffs, ms, multiplier, opt);
        py::list rows;
        for (const GrowthRow& r : fit.rows)
          rows.append(py::make_tuple(r.m, r.max_exception, rat_to_py(r.ratio)));
        py::dict d;
        d["rows"] = rows;
        d["min_ratio"] = rat_to_py(fit.min_ratio);
        d["max_ratio"] = rat_to_py(fit.max_ratio);
        d["mean_ratio"] = rat_to_py(fit.mean_ratio);
        return d;
      },
      py::arg("coeffs"), py::arg("ms"), py::arg("multiplier") = 20, py::arg("threads") = 1);

  m.def("optimality_probe", &optimality_probe, py::arg("coeffs"), py::arg("m"));

  m.def(
      "rank4_remark_check",
      [](int m, long long bound) { return report_to_dict(rank4_remark_check(m, bound)); },
      py::arg("m"), py::arg("bound"));

  m.def(
      "save_report",
      [](const std::string& path, int m, const std::vector<long long>& coeffs, long long bound,
         int threads) {
        ScanOptions opt;
        opt.threads = threads;
        save_report(path, exception_scan(MgonalForm(m, coeffs), bound, opt));
      },
      py::arg("path"), py::arg("m"), py::arg("coeffs"), py::arg("bound"), py::arg("threads") = 1,
      "run a scan and persist the report");

  m.def(
      "load_report",
      [](const std::string& path) { return report_to_dict(load_report(path)); },
      py::arg("path"));
}
