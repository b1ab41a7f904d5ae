#include <doctest.h>

#include "qtrade/json_io.hpp"

using namespace qtrade;

namespace {

TradeParams tp(unsigned q, int t, int k, int v) {
    return TradeParams::make(FieldSpec::from_order(q), t, k, v);
}

}  // namespace

TEST_CASE("subspace serialization round trips") {
    FieldPtr f3 = FieldSpec::from_order(3);
    for (const CanonicalSubspace& s : enumerate_subspaces(4, 2, f3)) {
        Json j = subspace_to_json(s);
        CHECK(j.at("v") == 4);
        CHECK(j.at("dim") == 2);
        CHECK(subspace_from_json(j, f3) == s);
    }
}

TEST_CASE("subspace parsing accepts any spanning set of the declared dimension") {
    FieldPtr f2 = FieldSpec::from_order(2);
    Json j = {{"v", 3}, {"dim", 2}, {"rows", {{1, 1, 0}, {1, 0, 1}}}};
    CanonicalSubspace s = subspace_from_json(j, f2);
    CHECK(s.dim() == 2);
    CHECK(s.basis().at(0, 0) == 1);  // canonicalized to RREF
}

TEST_CASE("subspace parsing rejects malformed input") {
    FieldPtr f2 = FieldSpec::from_order(2);
    CHECK_THROWS_AS((void)subspace_from_json(Json{{"v", 3}}, f2), ParamsMismatch);
    Json bad_entry = {{"v", 3}, {"dim", 1}, {"rows", {{0, 2, 0}}}};
    CHECK_THROWS_AS((void)subspace_from_json(bad_entry, f2), ParamsMismatch);
    Json bad_len = {{"v", 3}, {"dim", 1}, {"rows", {{1, 0}}}};
    CHECK_THROWS_AS((void)subspace_from_json(bad_len, f2), ParamsMismatch);
    Json dependent = {{"v", 3}, {"dim", 2}, {"rows", {{1, 0, 1}, {1, 0, 1}}}};
    CHECK_THROWS_AS((void)subspace_from_json(dependent, f2), ParamsMismatch);
    Json miscount = {{"v", 3}, {"dim", 2}, {"rows", {{1, 0, 1}}}};
    CHECK_THROWS_AS((void)subspace_from_json(miscount, f2), ParamsMismatch);
}

TEST_CASE("compact form prints rows of hex digits") {
    FieldPtr f2 = FieldSpec::from_order(2);
    CHECK(subspace_compact(coordinate_subspace(4, f2, {0, 2})) == "1000;0010");
    CHECK(subspace_compact(zero_subspace(3, f2)).empty());
}

TEST_CASE("bitrade serialization round trips") {
    Bitrade b = construct_minimum(tp(2, 1, 2, 4));
    Json j = bitrade_to_json(b);
    CHECK(j.at("params").at("q") == 2);
    CHECK(j.at("params").at("t") == 1);
    CHECK(j.at("t0").size() == 3);
    Bitrade back = bitrade_from_json(j);
    CHECK(back.t0 == b.t0);
    CHECK(back.t1 == b.t1);
    CHECK(back.params.t == b.params.t);
    CHECK(back.params.field->same_field(*b.params.field));
}

TEST_CASE("bitrade parsing sorts members into enumeration order") {
    Json j = {{"params", {{"q", 2}, {"t", 0}, {"k", 1}, {"v", 2}}},
              {"t0", {{{"v", 2}, {"dim", 1}, {"rows", {{0, 1}}}}}},
              {"t1", {{{"v", 2}, {"dim", 1}, {"rows", {{1, 0}}}}}}};
    Bitrade b = bitrade_from_json(j);
    CHECK(b.t0.size() == 1);
    CHECK(b.t0[0].pivots() == std::vector<int>{1});
}

TEST_CASE("bitrade parsing rejects structural damage") {
    CHECK_THROWS_AS((void)bitrade_from_json(Json{{"t0", Json::array()}}), ParamsMismatch);
    Json bad_params = {{"params", {{"q", 2}, {"t", 1}, {"k", 2}}},
                       {"t0", Json::array()},
                       {"t1", Json::array()}};
    CHECK_THROWS_AS((void)bitrade_from_json(bad_params), ParamsMismatch);
    Json inadmissible = {{"params", {{"q", 2}, {"t", 1}, {"k", 2}, {"v", 3}}},
                         {"t0", Json::array()},
                         {"t1", Json::array()}};
    CHECK_THROWS_AS((void)bitrade_from_json(inadmissible), InadmissibleParams);
    Json wrong_dim = {{"params", {{"q", 2}, {"t", 1}, {"k", 2}, {"v", 4}}},
                      {"t0", {{{"v", 4}, {"dim", 1}, {"rows", {{1, 0, 0, 0}}}}}},
                      {"t1", Json::array()}};
    CHECK_THROWS_AS((void)bitrade_from_json(wrong_dim), ParamsMismatch);
    Json bad_field = {{"params", {{"q", 6}, {"t", 1}, {"k", 2}, {"v", 4}}},
                      {"t0", Json::array()},
                      {"t1", Json::array()}};
    CHECK_THROWS_AS((void)bitrade_from_json(bad_field), InadmissibleParams);
}

TEST_CASE("verification reports serialize with certificates") {
    FieldPtr f2 = FieldSpec::from_order(2);
    TradeParams p = tp(2, 1, 2, 4);
    Bitrade imbalanced{p,
                       {coordinate_subspace(4, f2, {0, 1})},
                       {coordinate_subspace(4, f2, {0, 2})}};
    VerifyReport r = verify_bitrade(imbalanced, 1);
    Json j = report_to_json(r);
    CHECK(j.at("s") == 1);
    CHECK(j.at("balanced") == false);
    CHECK(j.at("violations").size() == 4);
    CHECK(j.at("violations").at(0).contains("x"));
    CHECK(j.at("violations").at(0).contains("count0"));

    std::string text = report_to_text(r);
    CHECK(text.find("s=1 balanced=no") == 0);
    CHECK(text.find("violation x=") != std::string::npos);

    VerifyReport ok = verify_bitrade(construct_minimum(p), 1);
    CHECK(report_to_text(ok) == "s=1 balanced=yes\n");
}

TEST_CASE("weight distribution serializes its frame") {
    TradeParams p = tp(2, 1, 2, 4);
    WeightDistribution wd;
    wd.reference_set_dim = 2;
    wd.values = {1, -3, 2};
    Json j = wdist_to_json(wd, coordinate_subspace(4, p.field, {0, 1}), p);
    CHECK(j.at("reference") == "hat(Z')");
    CHECK(j.at("dims").at("z_dim") == 2);
    CHECK(j.at("values") == Json::array({1, -3, 2}));
}

TEST_CASE("intersection numbers serialize rows when regular") {
    IntersectionNumbers nums;
    nums.regular = true;
    nums.rows = {{0, 0, 18}, {1, 9, 8}, {9, 9, 0}};
    nums.shell_sizes = {1, 18, 16};
    FieldPtr f2 = FieldSpec::from_order(2);
    Json j = intersection_to_json(nums, coordinate_subspace(4, f2, {0, 1}), 2, 4, 2);
    CHECK(j.at("regular") == true);
    CHECK(j.at("rows").size() == 3);
    CHECK(j.at("rows").at(1).at("down") == 1);
    CHECK(j.at("rows").at(1).at("i") == 1);
    CHECK(j.at("shell_sizes") == Json::array({1, 18, 16}));
}

TEST_CASE("search verdicts serialize bounds as strings") {
    TradeParams p = tp(2, 0, 1, 2);
    SearchVerdict verdict = search_below(p, BigInt(3));
    Json j = verdict_to_json(verdict, p, BigInt(3));
    CHECK(j.at("bound") == "3");
    CHECK(j.at("found").is_object());
    CHECK(j.at("exhausted") == false);
    CHECK(j.at("nodes_visited").get<std::uint64_t>() == verdict.nodes_visited);

    SearchVerdict none = search_below(p, BigInt(2));
    Json j2 = verdict_to_json(none, p, BigInt(2));
    CHECK(j2.at("found").is_null());
    CHECK(j2.at("exhausted") == true);
}

TEST_CASE("big integers render as decimal strings") {
    CHECK(big_to_string(BigInt(0)) == "0");
    CHECK(big_to_string(BigInt(-7)) == "-7");
    BigInt huge = boost::multiprecision::pow(BigInt(10), 30) + 1;
    CHECK(big_to_string(huge) == "1000000000000000000000000000001");
}
