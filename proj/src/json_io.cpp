#include "qtrade/json_io.hpp"

#include <algorithm>
#include <sstream>

#include "qtrade/errors.hpp"

namespace qtrade {

std::string big_to_string(const BigInt& x) { return x.str(); }

Json subspace_to_json(const CanonicalSubspace& s) {
    Json rows = Json::array();
    for (int r = 0; r < s.dim(); ++r) {
        Json row = Json::array();
        for (int c = 0; c < s.ambient(); ++c) row.push_back(s.basis().at(r, c));
        rows.push_back(std::move(row));
    }
    return Json{{"v", s.ambient()}, {"dim", s.dim()}, {"rows", std::move(rows)}};
}

CanonicalSubspace subspace_from_json(const Json& j, const FieldPtr& field) {
    if (!j.is_object() || !j.contains("v") || !j.contains("dim") || !j.contains("rows"))
        throw ParamsMismatch("subspace object needs v, dim, and rows");
    const int v = j.at("v").get<int>();
    const int dim = j.at("dim").get<int>();
    const auto& rows = j.at("rows");
    if (!rows.is_array() || static_cast<int>(rows.size()) != dim)
        throw ParamsMismatch("row count does not match the declared dimension");
    MatrixGF m(dim, v, field);
    for (int r = 0; r < dim; ++r) {
        const auto& row = rows.at(r);
        if (!row.is_array() || static_cast<int>(row.size()) != v)
            throw ParamsMismatch("row length does not match the ambient dimension");
        for (int c = 0; c < v; ++c) {
            long long e = row.at(c).get<long long>();
            if (e < 0 || e >= static_cast<long long>(field->q()))
                throw ParamsMismatch("entry outside the field");
            m.at(r, c) = static_cast<Fe>(e);
        }
    }
    CanonicalSubspace s = CanonicalSubspace::from_spanning(m);
    if (s.dim() != dim) throw ParamsMismatch("rows are linearly dependent");
    return s;
}

std::string subspace_compact(const CanonicalSubspace& s) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    for (int r = 0; r < s.dim(); ++r) {
        if (r > 0) out += ';';
        for (int c = 0; c < s.ambient(); ++c) out += digits[s.basis().at(r, c) & 0xf];
    }
    return out;
}

Json bitrade_to_json(const Bitrade& b) {
    Json t0 = Json::array(), t1 = Json::array();
    for (const CanonicalSubspace& y : b.t0) t0.push_back(subspace_to_json(y));
    for (const CanonicalSubspace& y : b.t1) t1.push_back(subspace_to_json(y));
    return Json{{"params",
                 {{"q", b.params.q()}, {"t", b.params.t}, {"k", b.params.k}, {"v", b.params.v}}},
                {"t0", std::move(t0)},
                {"t1", std::move(t1)}};
}

Bitrade bitrade_from_json(const Json& j, unsigned max_field_order) {
    if (!j.is_object() || !j.contains("params") || !j.contains("t0") || !j.contains("t1"))
        throw ParamsMismatch("bitrade object needs params, t0, and t1");
    const auto& pj = j.at("params");
    for (const char* key : {"q", "t", "k", "v"})
        if (!pj.contains(key)) throw ParamsMismatch("params needs q, t, k, and v");
    FieldPtr field = FieldSpec::from_order(pj.at("q").get<unsigned>(), max_field_order);
    TradeParams params = TradeParams::make(field, pj.at("t").get<int>(), pj.at("k").get<int>(),
                                           pj.at("v").get<int>());

    Bitrade b;
    b.params = params;
    auto load = [&](const Json& arr, std::vector<CanonicalSubspace>& family) {
        if (!arr.is_array()) throw ParamsMismatch("bitrade parts must be arrays");
        for (const auto& entry : arr) {
            CanonicalSubspace s = subspace_from_json(entry, field);
            if (s.ambient() != params.v || s.dim() != params.k)
                throw ParamsMismatch("member dimensions do not match the parameters");
            family.push_back(std::move(s));
        }
        std::sort(family.begin(), family.end());
    };
    load(j.at("t0"), b.t0);
    load(j.at("t1"), b.t1);
    return b;
}

Json report_to_json(const VerifyReport& r) {
    Json violations = Json::array();
    for (const Violation& viol : r.violations)
        violations.push_back(Json{{"x", subspace_to_json(viol.x)},
                                  {"count0", viol.count0},
                                  {"count1", viol.count1}});
    return Json{{"s", r.s}, {"balanced", r.balanced}, {"violations", std::move(violations)}};
}

std::string report_to_text(const VerifyReport& r) {
    std::ostringstream os;
    os << "s=" << r.s << " balanced=" << (r.balanced ? "yes" : "no") << "\n";
    for (const Violation& viol : r.violations)
        os << "violation x=" << subspace_compact(viol.x) << " count0=" << viol.count0
           << " count1=" << viol.count1 << "\n";
    return os.str();
}

Json wdist_to_json(const WeightDistribution& wd, const CanonicalSubspace& zprime,
                   const TradeParams& params) {
    return Json{{"reference", "hat(Z')"},
                {"dims",
                 {{"q", params.q()},
                  {"v", params.v},
                  {"k", params.k},
                  {"z_dim", zprime.dim()}}},
                {"zprime", subspace_to_json(zprime)},
                {"values", wd.values}};
}

Json intersection_to_json(const IntersectionNumbers& nums, const CanonicalSubspace& x,
                          unsigned q, int v, int k) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < nums.rows.size(); ++i)
        rows.push_back(Json{{"i", i},
                            {"down", nums.rows[i].down},
                            {"same", nums.rows[i].same},
                            {"up", nums.rows[i].up}});
    return Json{{"q", q},
                {"v", v},
                {"k", k},
                {"x", subspace_to_json(x)},
                {"regular", nums.regular},
                {"shell_sizes", nums.shell_sizes},
                {"rows", std::move(rows)}};
}

Json verdict_to_json(const SearchVerdict& verdict, const TradeParams& params,
                     const BigInt& bound) {
    Json found = verdict.found ? bitrade_to_json(*verdict.found) : Json(nullptr);
    return Json{{"params",
                 {{"q", params.q()}, {"t", params.t}, {"k", params.k}, {"v", params.v}}},
                {"bound", big_to_string(bound)},
                {"found", std::move(found)},
                {"exhausted", verdict.exhausted},
                {"nodes_visited", verdict.nodes_visited},
                {"wall_time_ms", verdict.wall_time_ms}};
}

}  // namespace qtrade
