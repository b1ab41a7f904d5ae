#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "qtrade/errors.hpp"
#include "qtrade/json_io.hpp"
#include "qtrade/parallel.hpp"
#include "qtrade/search.hpp"
#include "qtrade/spectra.hpp"
#include "qtrade/trades.hpp"

namespace {

using namespace qtrade;

struct CommonOpts {
    std::string format = "json";
    std::string out;
    int threads = 0;
    bool scale_override = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();
    cmd->add_option("--out", o.out, "Write output to this file instead of stdout");
    cmd->add_option("--threads", o.threads, "Worker threads (0 = all cores)")
        ->capture_default_str();
    cmd->add_flag("--scale-override", o.scale_override, "Lift the vertex-count guard");
}

void emit(const CommonOpts& o, const std::string& payload) {
    if (o.out.empty()) {
        std::cout << payload;
        if (!payload.empty() && payload.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw Error("cannot open output file " + o.out);
    f << payload;
}

Json read_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParamsMismatch("cannot open input file " + path);
    return Json::parse(f);
}

std::string dump(const Json& j) { return j.dump(2); }

// ---- identity ----------------------------------------------------------

BigInt sum_form(unsigned q, int t) {
    BigInt sum = 0;
    for (int j = 0; j <= t + 1; ++j)
        sum += boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(j * (j - 1) / 2)) *
               gaussian_binomial(t + 1, j, q);
    return sum;
}

int cmd_identity(const CommonOpts& o, const std::vector<unsigned>& qs, int t_max) {
    if (t_max < 0) throw OutOfRange("t-max must be nonnegative");
    struct Row {
        unsigned q;
        int t;
        BigInt product, sum;
    };
    std::vector<Row> rows;
    for (unsigned q : qs) {
        if (!is_prime_power(q))
            throw InadmissibleParams("q = " + std::to_string(q) + " is not a prime power");
        for (int t = 0; t <= t_max; ++t) rows.push_back({q, t, min_cardinality(q, t), sum_form(q, t)});
    }
    bool all_equal = true;
    for (const Row& r : rows) all_equal = all_equal && r.product == r.sum;

    std::ostringstream os;
    if (o.format == "json") {
        Json arr = Json::array();
        for (const Row& r : rows)
            arr.push_back(Json{{"q", r.q},
                               {"t", r.t},
                               {"product", big_to_string(r.product)},
                               {"sum", big_to_string(r.sum)},
                               {"equal", r.product == r.sum}});
        os << dump(Json{{"rows", std::move(arr)}, {"all_equal", all_equal}});
    } else if (o.format == "csv") {
        os << "q,t,product,sum,equal\n";
        for (const Row& r : rows)
            os << r.q << ',' << r.t << ',' << r.product.str() << ',' << r.sum.str() << ','
               << (r.product == r.sum ? "true" : "false") << '\n';
    } else {
        for (const Row& r : rows)
            os << "q=" << r.q << " t=" << r.t << "  product=" << r.product.str()
               << "  sum=" << r.sum.str() << "  " << (r.product == r.sum ? "equal" : "MISMATCH")
               << '\n';
    }
    emit(o, os.str());
    return all_equal ? 0 : 3;
}

// ---- enumerate ---------------------------------------------------------

int cmd_enumerate(const CommonOpts& o, unsigned q, int v, int i) {
    FieldPtr field = FieldSpec::from_order(q);
    auto subs = enumerate_subspaces(v, i, field, ScaleGuard::from_env(o.scale_override));

    std::ostringstream os;
    if (o.format == "json") {
        Json arr = Json::array();
        for (const auto& s : subs) arr.push_back(subspace_to_json(s));
        os << dump(Json{{"q", q},
                        {"v", v},
                        {"i", i},
                        {"count", static_cast<std::uint64_t>(subs.size())},
                        {"subspaces", std::move(arr)}});
    } else if (o.format == "csv") {
        os << "index,dim,basis\n";
        for (std::size_t idx = 0; idx < subs.size(); ++idx)
            os << idx << ',' << subs[idx].dim() << ',' << subspace_compact(subs[idx]) << '\n';
    } else {
        os << "Gr(" << i << ") of GF(" << q << ")^" << v << ": " << subs.size()
           << " subspaces\n";
        for (std::size_t idx = 0; idx < subs.size(); ++idx)
            os << idx << ": " << subspace_compact(subs[idx]) << '\n';
    }
    emit(o, os.str());
    return 0;
}

// ---- construct ---------------------------------------------------------

int cmd_construct(const CommonOpts& o, unsigned q, int t, int k, int v) {
    TradeParams params = TradeParams::make(FieldSpec::from_order(q), t, k, v);
    Bitrade b = construct_minimum(params);

    std::ostringstream os;
    if (o.format == "json") {
        os << dump(bitrade_to_json(b));
    } else if (o.format == "csv") {
        os << "family,index,basis\n";
        for (std::size_t i = 0; i < b.t0.size(); ++i)
            os << "0," << i << ',' << subspace_compact(b.t0[i]) << '\n';
        for (std::size_t i = 0; i < b.t1.size(); ++i)
            os << "1," << i << ',' << subspace_compact(b.t1[i]) << '\n';
    } else {
        os << "minimum bitrade q=" << q << " t=" << t << " k=" << k << " v=" << v
           << "  cardinality=" << b.cardinality() << " (expected "
           << min_cardinality(q, t).str() << ")\n";
        os << "T0:\n";
        for (const auto& y : b.t0) os << "  " << subspace_compact(y) << '\n';
        os << "T1:\n";
        for (const auto& y : b.t1) os << "  " << subspace_compact(y) << '\n';
    }
    emit(o, os.str());
    return 0;
}

// ---- verify ------------------------------------------------------------

int cmd_verify(const CommonOpts& o, const std::string& file, int s) {
    Bitrade b = bitrade_from_json(read_json_file(file));
    std::vector<int> levels;
    if (s >= 0) {
        levels.push_back(s);
    } else {
        for (int lv = 0; lv <= b.params.t; ++lv) levels.push_back(lv);
    }

    bool all_balanced = true;
    std::vector<VerifyReport> reports;
    for (int lv : levels) {
        reports.push_back(verify_bitrade(b, lv, o.threads));
        all_balanced = all_balanced && reports.back().balanced;
    }

    std::ostringstream os;
    if (o.format == "json") {
        Json arr = Json::array();
        for (const auto& r : reports) arr.push_back(report_to_json(r));
        os << dump(Json{{"params",
                         {{"q", b.params.q()},
                          {"t", b.params.t},
                          {"k", b.params.k},
                          {"v", b.params.v}}},
                        {"balanced", all_balanced},
                        {"reports", std::move(arr)}});
    } else if (o.format == "csv") {
        os << "s,balanced,violations\n";
        for (const auto& r : reports)
            os << r.s << ',' << (r.balanced ? "true" : "false") << ',' << r.violations.size()
               << '\n';
    } else {
        for (const auto& r : reports) os << report_to_text(r);
        os << (all_balanced ? "balanced\n" : "NOT balanced\n");
    }
    emit(o, os.str());
    return all_balanced ? 0 : 3;
}

// ---- wdist -------------------------------------------------------------

Json wdist_entry(const Bitrade& b, const SignedFunction& phi, GrassmannGraph& g,
                 const CanonicalSubspace& zprime, const std::vector<BigInt>& expected,
                 const ScaleGuard& guard, int threads) {
    auto shat = hat_set(zprime, b.params.k, guard);
    WeightDistribution wd = weight_distribution(phi, shat, g, threads);
    Json entry = wdist_to_json(wd, zprime, b.params);

    // Integer proportionality to the closed-form tuple, sign included.
    bool proportional = wd.values.size() == expected.size();
    std::optional<BigInt> multiple;
    if (proportional) {
        BigInt m = wd.values[0];  // expected[0] == 1
        for (std::size_t j = 0; j < expected.size() && proportional; ++j)
            proportional = BigInt(wd.values[j]) == m * expected[j];
        if (proportional) multiple = m;
    }
    entry["expected"] = [&] {
        Json arr = Json::array();
        for (const BigInt& e : expected) arr.push_back(big_to_string(e));
        return arr;
    }();
    entry["proportional"] = proportional;
    entry["multiple"] = multiple ? Json(big_to_string(*multiple)) : Json(nullptr);
    return entry;
}

int cmd_wdist(const CommonOpts& o, const std::string& file, long long seed, bool have_seed) {
    Bitrade b = bitrade_from_json(read_json_file(file));
    const TradeParams& p = b.params;
    ScaleGuard guard = ScaleGuard::from_env(o.scale_override);
    GrassmannGraph g(p.field, p.v, p.k, guard);
    SignedFunction phi = SignedFunction::from_bitrade(b);
    std::vector<BigInt> expected = expected_min_distribution(p.q(), p.t);

    std::vector<int> first(p.t + 1);
    for (int i = 0; i <= p.t; ++i) first[i] = i;
    CanonicalSubspace canonical_z = coordinate_subspace(p.v, p.field, first);

    Json result;
    result["canonical"] = wdist_entry(b, phi, g, canonical_z, expected, guard, o.threads);

    if (have_seed) {
        auto zs = enumerate_subspaces(p.v, p.t + 1, p.field, guard);
        std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
        Json samples = Json::array();
        for (int n = 0; n < 10; ++n) {
            std::size_t pick = rng() % zs.size();
            samples.push_back(wdist_entry(b, phi, g, zs[pick], expected, guard, o.threads));
        }
        result["samples"] = std::move(samples);
    }

    std::ostringstream os;
    if (o.format == "json") {
        os << dump(result);
    } else if (o.format == "csv") {
        os << "reference,values,proportional,multiple\n";
        auto line = [&](const Json& e) {
            os << e["zprime"]["dim"].get<int>() << "-dim,";
            const auto& vals = e["values"];
            for (std::size_t j = 0; j < vals.size(); ++j)
                os << (j ? " " : "") << vals[j].get<long long>();
            os << ',' << (e["proportional"].get<bool>() ? "true" : "false") << ','
               << (e["multiple"].is_null() ? "-" : e["multiple"].get<std::string>()) << '\n';
        };
        line(result["canonical"]);
        if (result.contains("samples"))
            for (const auto& e : result["samples"]) line(e);
    } else {
        const auto& e = result["canonical"];
        os << "weight distribution w.r.t. hat(Z'), Z' = " << subspace_compact(canonical_z)
           << "\n";
        os << "  j :";
        for (std::size_t j = 0; j < e["values"].size(); ++j) os << ' ' << j;
        os << "\n  W :";
        for (const auto& w : e["values"]) os << ' ' << w.get<long long>();
        os << "\n  formula terms:";
        for (const auto& x : e["expected"]) os << ' ' << x.get<std::string>();
        os << "\n  proportional=" << (e["proportional"].get<bool>() ? "yes" : "no");
        if (!e["multiple"].is_null()) os << " multiple=" << e["multiple"].get<std::string>();
        os << '\n';
    }
    emit(o, os.str());
    return 0;
}

// ---- crs ---------------------------------------------------------------

int cmd_crs(const CommonOpts& o, unsigned q, int v, int k, int i, const std::string& xfile) {
    FieldPtr field = FieldSpec::from_order(q);
    ScaleGuard guard = ScaleGuard::from_env(o.scale_override);

    CanonicalSubspace x = [&] {
        if (!xfile.empty()) return subspace_from_json(read_json_file(xfile), field);
        if (i < 0) throw ParamsMismatch("pass --i or a subspace file for the reference");
        std::vector<int> first(i);
        for (int c = 0; c < i; ++c) first[c] = c;
        return coordinate_subspace(v, field, first);
    }();
    if (x.ambient() != v) throw ParamsMismatch("reference subspace has the wrong ambient");

    BigInt n = gaussian_binomial(v, k, q);
    if (!o.scale_override && n > 20000)
        throw ScaleGuardExceeded("adjacency for " + n.str() +
                                 " vertices; pass --scale-override to force");
    GrassmannGraph g(field, v, k, guard);
    auto shat = hat_set(x, k, guard);
    IntersectionNumbers nums = intersection_numbers(g, shat, o.threads);

    std::ostringstream os;
    if (o.format == "json") {
        os << dump(intersection_to_json(nums, x, q, v, k));
    } else if (o.format == "csv") {
        os << "i,size,down,same,up\n";
        for (std::size_t idx = 0; idx < nums.shell_sizes.size(); ++idx) {
            os << idx << ',' << nums.shell_sizes[idx] << ',';
            if (idx < nums.rows.size())
                os << nums.rows[idx].down << ',' << nums.rows[idx].same << ','
                   << nums.rows[idx].up;
            else
                os << ",,";
            os << '\n';
        }
    } else {
        os << "hat set of " << subspace_compact(x) << " in J_" << q << "(" << v << "," << k
           << "): " << (nums.regular ? "completely regular" : "NOT regular") << '\n';
        for (std::size_t idx = 0; idx < nums.rows.size(); ++idx)
            os << "  shell " << idx << " size=" << nums.shell_sizes[idx]
               << " down=" << nums.rows[idx].down << " same=" << nums.rows[idx].same
               << " up=" << nums.rows[idx].up << '\n';
    }
    emit(o, os.str());
    return 0;
}

// ---- spectrum ----------------------------------------------------------

int cmd_spectrum(const CommonOpts& o, unsigned q, int v, int k) {
    FieldPtr field = FieldSpec::from_order(q);
    GrassmannParams gp = GrassmannParams::make(q, v, k);
    std::vector<BigInt> formula;
    for (int j = 0; j <= gp.kbar(); ++j) formula.push_back(grassmann_eigenvalue(j, gp));

    BigInt n = gaussian_binomial(v, k, q);
    std::optional<std::vector<double>> numeric;
    std::optional<bool> match;
    if (n <= 2000) {
        GrassmannGraph g(field, v, k, ScaleGuard::from_env(o.scale_override));
        numeric = adjacency_eigenvalues(g, 1e-6, o.threads);
        bool ok = numeric->size() == formula.size();
        for (std::size_t j = 0; ok && j < formula.size(); ++j) {
            double expect = static_cast<double>(formula[j]);
            ok = std::abs((*numeric)[j] - expect) <= 1e-6 * std::max(1.0, std::abs(expect));
        }
        match = ok;
    }

    std::ostringstream os;
    if (o.format == "json") {
        Json fj = Json::array();
        for (const BigInt& x : formula) fj.push_back(big_to_string(x));
        Json j{{"q", q},
               {"v", v},
               {"k", k},
               {"vertices", big_to_string(n)},
               {"formula", std::move(fj)},
               {"numeric", numeric ? Json(*numeric) : Json(nullptr)},
               {"match", match ? Json(*match) : Json(nullptr)}};
        os << dump(j);
    } else if (o.format == "csv") {
        os << "j,formula,numeric\n";
        for (std::size_t j = 0; j < formula.size(); ++j) {
            os << j << ',' << formula[j].str() << ',';
            if (numeric && j < numeric->size()) os << (*numeric)[j];
            os << '\n';
        }
    } else {
        os << "spectrum of J_" << q << "(" << v << "," << k << "), " << n.str()
           << " vertices\n  formula:";
        for (const BigInt& x : formula) os << ' ' << x.str();
        os << '\n';
        if (numeric) {
            os << "  numeric:";
            for (double x : *numeric) os << ' ' << x;
            os << "\n  match=" << (*match ? "yes" : "no") << '\n';
        } else {
            os << "  numeric: skipped (more than 2000 vertices)\n";
        }
    }
    emit(o, os.str());
    return match && !*match ? 3 : 0;
}

// ---- search ------------------------------------------------------------

int cmd_search(const CommonOpts& o, unsigned q, int t, int k, int v, long long bound,
               std::uint64_t node_cap) {
    TradeParams params = TradeParams::make(FieldSpec::from_order(q), t, k, v);
    SearchOptions opts;
    opts.node_cap = node_cap;
    SearchVerdict verdict =
        search_below(params, BigInt(bound), opts, ScaleGuard::from_env(o.scale_override));

    std::ostringstream os;
    if (o.format == "json") {
        os << dump(verdict_to_json(verdict, params, BigInt(bound)));
    } else if (o.format == "csv") {
        os << "bound,found,cardinality,exhausted,nodes\n"
           << bound << ',' << (verdict.found ? "true" : "false") << ','
           << (verdict.found ? std::to_string(verdict.found->cardinality()) : "") << ','
           << (verdict.exhausted ? "true" : "false") << ',' << verdict.nodes_visited << '\n';
    } else {
        os << "search below " << bound << " in T_" << q << "(" << t << "," << k << "," << v
           << "): ";
        if (verdict.found)
            os << "found cardinality " << verdict.found->cardinality();
        else if (verdict.exhausted)
            os << "exhausted, none";
        else
            os << "inconclusive (cap hit)";
        os << "; nodes=" << verdict.nodes_visited << " wall_ms=" << verdict.wall_time_ms
           << '\n';
    }
    emit(o, os.str());
    return verdict.inconclusive() ? 5 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"minimum subspace bitrades in Grassmann graphs"};
    app.require_subcommand(1);

    std::function<int()> action;

    // identity
    {
        auto* cmd = app.add_subcommand("identity",
                                       "Check the cardinality product/sum identity over a grid");
        auto opts = std::make_shared<CommonOpts>();
        auto qs = std::make_shared<std::vector<unsigned>>(
            std::vector<unsigned>{2, 3, 4, 5, 7, 8, 9});
        auto t_max = std::make_shared<int>(6);
        cmd->add_option("--q", *qs, "Field orders, comma separated")
            ->delimiter(',')
            ->capture_default_str();
        cmd->add_option("--t-max", *t_max, "Largest t")->capture_default_str();
        add_common(cmd, *opts);
        cmd->callback([=, &action] {
            action = [=] { return cmd_identity(*opts, *qs, *t_max); };
        });
    }

    // enumerate
    {
        auto* cmd = app.add_subcommand("enumerate", "List Gr(i) of GF(q)^v in canonical order");
        auto opts = std::make_shared<CommonOpts>();
        auto q = std::make_shared<unsigned>(2);
        auto v = std::make_shared<int>(0);
        auto i = std::make_shared<int>(0);
        cmd->add_option("--q", *q, "Field order")->required();
        cmd->add_option("--v", *v, "Ambient dimension")->required();
        cmd->add_option("--i", *i, "Subspace dimension")->required();
        add_common(cmd, *opts);
        cmd->callback([=, &action] {
            action = [=] { return cmd_enumerate(*opts, *q, *v, *i); };
        });
    }

    // construct
    {
        auto* cmd = app.add_subcommand("construct", "Build the minimum bitrade");
        auto opts = std::make_shared<CommonOpts>();
        auto q = std::make_shared<unsigned>(2);
        auto t = std::make_shared<int>(0);
        auto k = std::make_shared<int>(0);
        auto v = std::make_shared<int>(0);
        cmd->add_option("--q", *q, "Field order")->required();
        cmd->add_option("--t", *t, "Covered dimension")->required();
        cmd->add_option("--k", *k, "Member dimension")->required();
        cmd->add_option("--v", *v, "Ambient dimension")->required();
        add_common(cmd, *opts);
        cmd->callback([=, &action] {
            action = [=] { return cmd_construct(*opts, *q, *t, *k, *v); };
        });
    }

    // verify
    {
        auto* cmd = app.add_subcommand("verify", "Check covering balance of a bitrade file");
        auto opts = std::make_shared<CommonOpts>();
        auto file = std::make_shared<std::string>();
        auto s = std::make_shared<int>(-1);
        cmd->add_option("file", *file, "Bitrade JSON file")->required();
        cmd->add_option("--s", *s, "Single level to check (default: all 0..t)");
        add_common(cmd, *opts);
        cmd->callback([=, &action] {
            action = [=] { return cmd_verify(*opts, *file, *s); };
        });
    }

    // wdist
    {
        auto* cmd = app.add_subcommand(
            "wdist", "Weight distribution of a bitrade w.r.t. the canonical hat set");
        auto opts = std::make_shared<CommonOpts>();
        auto file = std::make_shared<std::string>();
        auto seed = std::make_shared<long long>(0);
        cmd->add_option("file", *file, "Bitrade JSON file")->required();
        auto* seed_opt =
            cmd->add_option("--seed", *seed, "Also sample 10 random reference subspaces");
        add_common(cmd, *opts);
        cmd->callback([=, &action] {
            bool have_seed = seed_opt->count() > 0;
            action = [=] { return cmd_wdist(*opts, *file, *seed, have_seed); };
        });
    }

    // crs
    {
        auto* cmd = app.add_subcommand(
            "crs", "Intersection numbers of a hat set's distance partition");
        auto opts = std::make_shared<CommonOpts>();
        auto q = std::make_shared<unsigned>(2);
        auto v = std::make_shared<int>(0);
        auto k = std::make_shared<int>(0);
        auto i = std::make_shared<int>(-1);
        auto xfile = std::make_shared<std::string>();
        cmd->add_option("--q", *q, "Field order")->required();
        cmd->add_option("--v", *v, "Ambient dimension")->required();
        cmd->add_option("--k", *k, "Vertex dimension")->required();
        cmd->add_option("--i", *i, "Reference dim (first i coordinates)");
        cmd->add_option("file", *xfile, "Subspace JSON file for the reference");
        add_common(cmd, *opts);
        cmd->callback([=, &action] {
            action = [=] { return cmd_crs(*opts, *q, *v, *k, *i, *xfile); };
        });
    }

    // spectrum
    {
        auto* cmd = app.add_subcommand(
            "spectrum", "Eigenvalues by formula, cross-checked numerically when small");
        auto opts = std::make_shared<CommonOpts>();
        auto q = std::make_shared<unsigned>(2);
        auto v = std::make_shared<int>(0);
        auto k = std::make_shared<int>(0);
        cmd->add_option("--q", *q, "Field order")->required();
        cmd->add_option("--v", *v, "Ambient dimension")->required();
        cmd->add_option("--k", *k, "Vertex dimension")->required();
        add_common(cmd, *opts);
        cmd->callback([=, &action] {
            action = [=] { return cmd_spectrum(*opts, *q, *v, *k); };
        });
    }

    // search
    {
        auto* cmd = app.add_subcommand("search",
                                       "Branch-and-bound hunt for bitrades below a bound");
        auto opts = std::make_shared<CommonOpts>();
        auto q = std::make_shared<unsigned>(2);
        auto t = std::make_shared<int>(0);
        auto k = std::make_shared<int>(0);
        auto v = std::make_shared<int>(0);
        auto bound = std::make_shared<long long>(0);
        auto node_cap = std::make_shared<std::uint64_t>(0);
        cmd->add_option("--q", *q, "Field order")->required();
        cmd->add_option("--t", *t, "Covered dimension")->required();
        cmd->add_option("--k", *k, "Member dimension")->required();
        cmd->add_option("--v", *v, "Ambient dimension")->required();
        cmd->add_option("--bound", *bound, "Strict cardinality bound")->required();
        cmd->add_option("--node-cap", *node_cap,
                        "Abort after this many search nodes (0 = unlimited)");
        add_common(cmd, *opts);
        cmd->callback([=, &action] {
            action = [=] { return cmd_search(*opts, *q, *t, *k, *v, *bound, *node_cap); };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        return action();
    } catch (const ScaleGuardExceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const Json::exception& e) {
        std::cerr << "error: malformed input: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
}
