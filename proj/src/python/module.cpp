#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qtrade/errors.hpp"
#include "qtrade/json_io.hpp"
#include "qtrade/search.hpp"
#include "qtrade/spectra.hpp"
#include "qtrade/trades.hpp"

namespace py = pybind11;
using namespace qtrade;

namespace {

py::int_ to_pyint(const BigInt& x) {
    PyObject* obj = PyLong_FromString(x.str().c_str(), nullptr, 10);
    if (!obj) throw py::error_already_set();
    return py::reinterpret_steal<py::int_>(obj);
}

py::object to_fraction(const BigRat& x) {
    py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(to_pyint(boost::multiprecision::numerator(x)),
                    to_pyint(boost::multiprecision::denominator(x)));
}

FieldPtr field_for(unsigned q) { return FieldSpec::from_order(q); }

std::vector<std::vector<int>> rows_of(const CanonicalSubspace& s) {
    std::vector<std::vector<int>> rows(s.dim(), std::vector<int>(s.ambient()));
    for (int r = 0; r < s.dim(); ++r)
        for (int c = 0; c < s.ambient(); ++c) rows[r][c] = static_cast<int>(s.basis().at(r, c));
    return rows;
}

CanonicalSubspace subspace_from_rows(unsigned q, int v,
                                     const std::vector<std::vector<int>>& rows) {
    FieldPtr f = field_for(q);
    MatrixGF m(static_cast<int>(rows.size()), v, f);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (static_cast<int>(rows[r].size()) != v)
            throw OutOfRange("row length does not match the ambient dimension");
        for (int c = 0; c < v; ++c) {
            int e = rows[r][c];
            if (e < 0 || e >= static_cast<int>(q)) throw OutOfRange("entry outside the field");
            m.at(static_cast<int>(r), c) = static_cast<Fe>(e);
        }
    }
    return CanonicalSubspace::from_spanning(m);
}

TradeParams params_for(unsigned q, int t, int k, int v) {
    return TradeParams::make(field_for(q), t, k, v);
}

py::dict report_to_dict(const VerifyReport& r) {
    py::list violations;
    for (const Violation& viol : r.violations)
        violations.append(py::make_tuple(viol.x, viol.count0, viol.count1));
    py::dict d;
    d["s"] = r.s;
    d["balanced"] = r.balanced;
    d["violations"] = std::move(violations);
    return d;
}

SignedFunction function_from_pairs(
    unsigned q, int v, int k,
    const std::vector<std::pair<CanonicalSubspace, int>>& entries) {
    SignedFunction phi;
    phi.field = field_for(q);
    phi.v = v;
    phi.k = k;
    for (const auto& [s, val] : entries) {
        if (val == 0) throw OutOfRange("support values must be nonzero");
        if (s.ambient() != v || s.dim() != k)
            throw ParamsMismatch("support member has the wrong dimensions");
        phi.support[s] = val;
    }
    return phi;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "subspace bitrades in Grassmann graphs";

    py::register_exception<Error>(m, "QtradeError");

    py::class_<CanonicalSubspace>(m, "Subspace")
        .def_static("from_rows", &subspace_from_rows, py::arg("q"), py::arg("v"),
                    py::arg("rows"), "Canonicalize a spanning set")
        .def_property_readonly("dim", &CanonicalSubspace::dim)
        .def_property_readonly("ambient", &CanonicalSubspace::ambient)
        .def_property_readonly("q", [](const CanonicalSubspace& s) { return s.field()->q(); })
        .def("rows", &rows_of)
        .def("__eq__",
             [](const CanonicalSubspace& a, const CanonicalSubspace& b) { return a == b; })
        .def("__lt__",
             [](const CanonicalSubspace& a, const CanonicalSubspace& b) { return a < b; })
        .def("__hash__",
             [](const CanonicalSubspace& s) { return py::hash(py::str(subspace_compact(s))); })
        .def("__repr__", [](const CanonicalSubspace& s) {
            return "Subspace(" + subspace_compact(s) + ")";
        });

    py::class_<Bitrade>(m, "Bitrade")
        .def_property_readonly("q", [](const Bitrade& b) { return b.params.q(); })
        .def_property_readonly("t", [](const Bitrade& b) { return b.params.t; })
        .def_property_readonly("k", [](const Bitrade& b) { return b.params.k; })
        .def_property_readonly("v", [](const Bitrade& b) { return b.params.v; })
        .def_property_readonly("t0", [](const Bitrade& b) { return b.t0; })
        .def_property_readonly("t1", [](const Bitrade& b) { return b.t1; })
        .def_property_readonly("cardinality", &Bitrade::cardinality)
        .def("to_json", [](const Bitrade& b) { return bitrade_to_json(b).dump(2); })
        .def_static("from_json", [](const std::string& text) {
            return bitrade_from_json(Json::parse(text));
        });

    m.def("gaussian_binomial",
          [](int n, int j, unsigned q) { return to_pyint(gaussian_binomial(n, j, q)); },
          py::arg("n"), py::arg("j"), py::arg("q"));

    m.def("min_cardinality",
          [](unsigned q, int t) { return to_pyint(min_cardinality(q, t)); }, py::arg("q"),
          py::arg("t"));

    m.def("expected_min_distribution",
          [](unsigned q, int t) {
              py::list out;
              for (const BigInt& x : expected_min_distribution(q, t)) out.append(to_pyint(x));
              return out;
          },
          py::arg("q"), py::arg("t"));

    m.def("grassmann_eigenvalue",
          [](int j, unsigned q, int v, int k) {
              return to_pyint(grassmann_eigenvalue(j, GrassmannParams::make(q, v, k)));
          },
          py::arg("j"), py::arg("q"), py::arg("v"), py::arg("k"));

    m.def("enumerate_subspaces",
          [](unsigned q, int v, int i) {
              return enumerate_subspaces(v, i, field_for(q), ScaleGuard::from_env());
          },
          py::arg("q"), py::arg("v"), py::arg("i"));

    m.def("grassmann_distance", &grassmann_distance, py::arg("x"), py::arg("y"));
    m.def("covers", &covers, py::arg("x"), py::arg("y"));

    m.def("hat_set",
          [](const CanonicalSubspace& x, int k) { return hat_set(x, k, ScaleGuard::from_env()); },
          py::arg("x"), py::arg("k"));

    m.def("construct_minimum",
          [](unsigned q, int t, int k, int v, std::optional<std::vector<int>> basis_choice) {
              return construct_minimum(params_for(q, t, k, v), basis_choice);
          },
          py::arg("q"), py::arg("t"), py::arg("k"), py::arg("v"),
          py::arg("basis_choice") = std::nullopt);

    m.def("verify_bitrade",
          [](const Bitrade& b, int s, int threads) {
              return report_to_dict(verify_bitrade(b, s, threads));
          },
          py::arg("bitrade"), py::arg("s"), py::arg("threads") = 1);

    m.def("weight_distribution",
          [](const Bitrade& b, std::optional<CanonicalSubspace> zprime, int threads) {
              const TradeParams& p = b.params;
              CanonicalSubspace z = [&] {
                  if (zprime) return *zprime;
                  std::vector<int> first(p.t + 1);
                  for (int i = 0; i <= p.t; ++i) first[i] = i;
                  return coordinate_subspace(p.v, p.field, first);
              }();
              GrassmannGraph g(p.field, p.v, p.k, ScaleGuard::from_env());
              SignedFunction phi = SignedFunction::from_bitrade(b);
              auto shat = hat_set(z, p.k, ScaleGuard::from_env());
              return weight_distribution(phi, shat, g, threads).values;
          },
          py::arg("bitrade"), py::arg("zprime") = std::nullopt, py::arg("threads") = 1);

    m.def("intersection_numbers",
          [](unsigned q, int v, int k, const CanonicalSubspace& x, int threads) {
              FieldPtr f = field_for(q);
              GrassmannGraph g(f, v, k, ScaleGuard::from_env());
              auto nums = intersection_numbers(g, hat_set(x, k, ScaleGuard::from_env()), threads);
              py::list rows;
              for (const auto& row : nums.rows)
                  rows.append(py::make_tuple(row.down, row.same, row.up));
              py::dict d;
              d["regular"] = nums.regular;
              d["rows"] = std::move(rows);
              d["shell_sizes"] = nums.shell_sizes;
              return d;
          },
          py::arg("q"), py::arg("v"), py::arg("k"), py::arg("x"), py::arg("threads") = 1);

    m.def("predicted_distribution",
          [](py::int_ theta, const std::vector<std::tuple<long long, long long, long long>>& rows,
             int r) {
              IntersectionNumbers nums;
              nums.regular = true;
              for (const auto& [down, same, up] : rows) nums.rows.push_back({down, same, up});
              BigInt th(py::cast<std::string>(py::str(theta)));
              py::list out;
              for (const BigRat& w : predicted_distribution(th, nums, r))
                  out.append(to_fraction(w));
              return out;
          },
          py::arg("theta"), py::arg("rows"), py::arg("r"));

    m.def("hat_inner_products",
          [](const Bitrade& b, int j, int threads) {
              SignedFunction phi = SignedFunction::from_bitrade(b);
              py::list out;
              for (const auto& [x, val] : hat_inner_products(phi, j, threads))
                  out.append(py::make_tuple(x, val));
              return out;
          },
          py::arg("bitrade"), py::arg("j"), py::arg("threads") = 1);

    m.def("signed_hat_inner_products",
          [](unsigned q, int v, int k,
             const std::vector<std::pair<CanonicalSubspace, int>>& support, int j, int threads) {
              SignedFunction phi = function_from_pairs(q, v, k, support);
              py::list out;
              for (const auto& [x, val] : hat_inner_products(phi, j, threads))
                  out.append(py::make_tuple(x, val));
              return out;
          },
          py::arg("q"), py::arg("v"), py::arg("k"), py::arg("support"), py::arg("j"),
          py::arg("threads") = 1);

    m.def("adjacency_eigenvalues",
          [](unsigned q, int v, int k, double tol, int threads) {
              GrassmannGraph g(field_for(q), v, k, ScaleGuard::from_env());
              return adjacency_eigenvalues(g, tol, threads);
          },
          py::arg("q"), py::arg("v"), py::arg("k"), py::arg("tol") = 1e-6,
          py::arg("threads") = 1);

    m.def("search_below",
          [](unsigned q, int t, int k, int v, long long bound, std::uint64_t node_cap) {
              SearchOptions opts;
              opts.node_cap = node_cap;
              SearchVerdict verdict =
                  search_below(params_for(q, t, k, v), BigInt(bound), opts, ScaleGuard::from_env());
              py::dict d;
              d["found"] = verdict.found ? py::cast(*verdict.found) : py::none();
              d["exhausted"] = verdict.exhausted;
              d["nodes_visited"] = verdict.nodes_visited;
              d["wall_time_ms"] = verdict.wall_time_ms;
              return d;
          },
          py::arg("q"), py::arg("t"), py::arg("k"), py::arg("v"), py::arg("bound"),
          py::arg("node_cap") = 0);
}
