#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <set>
#include <vector>

#include "qtrade/grassmann.hpp"

using namespace qtrade;

namespace {

CanonicalSubspace span_of(const FieldPtr& f, int v, std::vector<std::vector<Fe>> rows) {
    MatrixGF m(static_cast<int>(rows.size()), v, f);
    for (size_t r = 0; r < rows.size(); ++r)
        for (int c = 0; c < v; ++c) m.at(static_cast<int>(r), c) = rows[r][c];
    return CanonicalSubspace::from_spanning(m);
}

}  // namespace

TEST_CASE("gaussian binomials match known values") {
    CHECK(gaussian_binomial(1, 0, 2) == 1);
    CHECK(gaussian_binomial(1, 1, 2) == 1);
    CHECK(gaussian_binomial(4, 1, 2) == 15);
    CHECK(gaussian_binomial(4, 2, 2) == 35);
    CHECK(gaussian_binomial(5, 2, 2) == 155);
    CHECK(gaussian_binomial(6, 2, 2) == 651);
    CHECK(gaussian_binomial(6, 3, 2) == 1395);
    CHECK(gaussian_binomial(4, 2, 3) == 130);
    CHECK(gaussian_binomial(2, 1, 9) == 10);
}

TEST_CASE("gaussian binomial symmetry and Pascal recurrences") {
    for (unsigned q : {2u, 3u, 4u, 5u}) {
        for (int n = 0; n <= 8; ++n)
            for (int j = 0; j <= n; ++j) {
                CAPTURE(q);
                CAPTURE(n);
                CAPTURE(j);
                CHECK(gaussian_binomial(n, j, q) == gaussian_binomial(n, n - j, q));
                if (j >= 1 && j < n) {
                    BigInt qp = 1;
                    for (int i = 0; i < j; ++i) qp *= q;
                    CHECK(gaussian_binomial(n, j, q) ==
                          qp * gaussian_binomial(n - 1, j, q) +
                              gaussian_binomial(n - 1, j - 1, q));
                } else if (j == n) {
                    CHECK(gaussian_binomial(n, j, q) == 1);
                }
            }
    }
}

TEST_CASE("gaussian binomial rejects bad arguments") {
    CHECK_THROWS_AS((void)gaussian_binomial(3, -1, 2), OutOfRange);
    CHECK_THROWS_AS((void)gaussian_binomial(3, 4, 2), OutOfRange);
    CHECK_THROWS_AS((void)gaussian_binomial(3, 1, 1), OutOfRange);
}

TEST_CASE("from_spanning canonicalizes spanning sets of the same subspace") {
    FieldPtr f2 = FieldSpec::from_order(2);
    CanonicalSubspace a = span_of(f2, 4, {{1, 0, 1, 1}, {0, 1, 1, 0}});
    CanonicalSubspace b = span_of(f2, 4, {{1, 1, 0, 1}, {0, 1, 1, 0}, {1, 0, 1, 1}});
    CHECK(a == b);
    CHECK(a.dim() == 2);
    CHECK(a.ambient() == 4);
}

TEST_CASE("enumeration counts match gaussian binomials") {
    for (unsigned q : {2u, 3u}) {
        FieldPtr f = FieldSpec::from_order(q);
        for (int v = 1; v <= (q == 2 ? 6 : 4); ++v)
            for (int i = 0; i <= v; ++i) {
                CAPTURE(q);
                CAPTURE(v);
                CAPTURE(i);
                auto all = enumerate_subspaces(v, i, f);
                CHECK(BigInt(all.size()) == gaussian_binomial(v, i, q));
            }
    }
}

TEST_CASE("enumeration is strictly sorted and duplicate free") {
    FieldPtr f3 = FieldSpec::from_order(3);
    auto all = enumerate_subspaces(4, 2, f3);
    REQUIRE(all.size() == 130);
    for (size_t i = 1; i < all.size(); ++i) {
        CHECK(all[i - 1] < all[i]);
        CHECK_FALSE(all[i] == all[i - 1]);
    }
}

TEST_CASE("the first subspaces in enumeration order are the coordinate ones") {
    FieldPtr f2 = FieldSpec::from_order(2);
    auto all = enumerate_subspaces(4, 2, f2);
    CHECK(all[0] == coordinate_subspace(4, f2, {0, 1}));
    // Second: pivots {0,1}, last free cell bumped.
    CanonicalSubspace second = span_of(f2, 4, {{1, 0, 0, 0}, {0, 1, 0, 1}});
    CHECK(all[1] == second);
}

TEST_CASE("zero and full subspaces enumerate once") {
    FieldPtr f2 = FieldSpec::from_order(2);
    auto zero = enumerate_subspaces(5, 0, f2);
    REQUIRE(zero.size() == 1);
    CHECK(zero[0] == zero_subspace(5, f2));
    auto full = enumerate_subspaces(3, 3, f2);
    REQUIRE(full.size() == 1);
    CHECK(full[0].dim() == 3);
}

TEST_CASE("grassmann distance equals codimension of the meet") {
    FieldPtr f2 = FieldSpec::from_order(2);
    CanonicalSubspace a = coordinate_subspace(4, f2, {0, 1});
    CanonicalSubspace b = coordinate_subspace(4, f2, {0, 2});
    CanonicalSubspace c = coordinate_subspace(4, f2, {2, 3});
    CHECK(grassmann_distance(a, a) == 0);
    CHECK(grassmann_distance(a, b) == 1);
    CHECK(grassmann_distance(a, c) == 2);
    CHECK_THROWS_AS((void)grassmann_distance(a, coordinate_subspace(4, f2, {0})),
                    DimensionMismatch);
}

TEST_CASE("distance satisfies the triangle inequality on samples") {
    FieldPtr f2 = FieldSpec::from_order(2);
    auto all = enumerate_subspaces(4, 2, f2);
    for (size_t i = 0; i < all.size(); i += 3)
        for (size_t j = 0; j < all.size(); j += 5)
            for (size_t l = 0; l < all.size(); l += 7) {
                int dij = grassmann_distance(all[i], all[j]);
                int djl = grassmann_distance(all[j], all[l]);
                int dil = grassmann_distance(all[i], all[l]);
                CHECK(dil <= dij + djl);
            }
}

TEST_CASE("graph distance agrees with the subspace metric") {
    for (auto [v, k] : {std::pair{4, 2}, std::pair{5, 2}}) {
        FieldPtr f2 = FieldSpec::from_order(2);
        GrassmannGraph g(f2, v, k);
        g.build_adjacency();
        const auto& verts = g.vertices();
        // BFS from vertex 0.
        std::vector<int> dist(verts.size(), -1);
        std::vector<int> queue{0};
        dist[0] = 0;
        for (size_t head = 0; head < queue.size(); ++head) {
            int u = queue[head];
            for (int w : g.adjacency()[u])
                if (dist[w] < 0) {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
        }
        for (size_t i = 0; i < verts.size(); ++i) {
            CAPTURE(v);
            CAPTURE(i);
            CHECK(dist[i] == grassmann_distance(verts[0], verts[i]));
        }
    }
}

TEST_CASE("eigenvalues of small graphs") {
    GrassmannParams p42 = GrassmannParams::make(2, 4, 2);
    CHECK(grassmann_eigenvalue(0, p42) == 18);
    CHECK(grassmann_eigenvalue(1, p42) == 3);
    CHECK(grassmann_eigenvalue(2, p42) == -3);
    GrassmannParams p52 = GrassmannParams::make(2, 5, 2);
    CHECK(grassmann_eigenvalue(0, p52) == 42);
    CHECK(grassmann_eigenvalue(1, p52) == 11);
    CHECK(grassmann_eigenvalue(2, p52) == -3);
    CHECK_THROWS_AS((void)grassmann_eigenvalue(3, p42), OutOfRange);
    CHECK_THROWS_AS((void)grassmann_eigenvalue(-1, p42), OutOfRange);
}

TEST_CASE("eigenvalues strictly decrease in j") {
    for (unsigned q : {2u, 3u, 4u}) {
        for (auto [v, k] : {std::pair{6, 2}, std::pair{6, 3}, std::pair{7, 3}}) {
            GrassmannParams p = GrassmannParams::make(q, v, k);
            for (int j = 1; j <= p.kbar(); ++j)
                CHECK(grassmann_eigenvalue(j - 1, p) > grassmann_eigenvalue(j, p));
        }
    }
}

TEST_CASE("degree matches the j = 0 eigenvalue by direct count") {
    FieldPtr f2 = FieldSpec::from_order(2);
    GrassmannGraph g(f2, 4, 2);
    g.build_adjacency();
    for (const auto& nbrs : g.adjacency()) CHECK(static_cast<long long>(nbrs.size()) == 18);
    CHECK(g.degree() == 18);
}

TEST_CASE("covers answers containment and rejects inverted dimensions") {
    FieldPtr f2 = FieldSpec::from_order(2);
    CanonicalSubspace line = coordinate_subspace(4, f2, {0});
    CanonicalSubspace plane = coordinate_subspace(4, f2, {0, 1});
    CHECK(covers(line, plane));
    CHECK_FALSE(covers(coordinate_subspace(4, f2, {2}), plane));
    CHECK(covers(plane, plane));
    CHECK(covers(zero_subspace(4, f2), plane));
    CHECK_THROWS_AS((void)covers(plane, line), DimensionMismatch);
}

TEST_CASE("hat_set lists exactly the superspaces") {
    FieldPtr f2 = FieldSpec::from_order(2);
    CanonicalSubspace line = coordinate_subspace(4, f2, {0});
    auto hat = hat_set(line, 2);
    // [3 over 1]_2 = 7 planes through a line in F_2^4.
    REQUIRE(hat.size() == 7);
    CHECK(std::ranges::is_sorted(hat, [](const auto& a, const auto& b) { return a < b; }));
    auto all = enumerate_subspaces(4, 2, f2);
    size_t direct = 0;
    for (const auto& y : all)
        if (covers(line, y)) {
            ++direct;
            CHECK(std::ranges::find(hat, y) != hat.end());
        }
    CHECK(direct == hat.size());
}

TEST_CASE("hat_set of the zero subspace is the whole level") {
    FieldPtr f2 = FieldSpec::from_order(2);
    auto hat = hat_set(zero_subspace(4, f2), 2);
    CHECK(hat.size() == 35);
    CHECK_THROWS_AS((void)hat_set(coordinate_subspace(4, f2, {0, 1, 2}), 2),
                    DimensionMismatch);
}

TEST_CASE("hat_set respects arbitrary base subspaces") {
    FieldPtr f3 = FieldSpec::from_order(3);
    CanonicalSubspace x = span_of(f3, 4, {{1, 2, 0, 1}});
    auto hat = hat_set(x, 2);
    CHECK(hat.size() == 13);  // [3 over 1]_3
    for (const auto& y : hat) {
        CHECK(y.dim() == 2);
        CHECK(covers(x, y));
    }
}

TEST_CASE("scale guard refuses large enumerations unless overridden") {
    FieldPtr f2 = FieldSpec::from_order(2);
    ScaleGuard tiny{.max_vertices = 10, .override_enabled = false};
    CHECK_THROWS_AS((void)enumerate_subspaces(4, 2, f2, tiny), ScaleGuardExceeded);
    ScaleGuard lifted{.max_vertices = 10, .override_enabled = true};
    CHECK(enumerate_subspaces(4, 2, f2, lifted).size() == 35);
}

TEST_CASE("scale guard reads the environment") {
    ::setenv("QTRADE_MAX_VERTICES", "123", 1);
    CHECK(ScaleGuard::from_env().max_vertices == 123);
    ::unsetenv("QTRADE_MAX_VERTICES");
    CHECK(ScaleGuard::from_env().max_vertices == 10'000'000);
}

TEST_CASE("graph vertex lookup inverts enumeration") {
    FieldPtr f2 = FieldSpec::from_order(2);
    GrassmannGraph g(f2, 5, 2);
    for (int i = 0; i < g.size(); i += 11) CHECK(g.index_of(g.vertices()[i]) == i);
    CHECK_THROWS_AS((void)g.index_of(coordinate_subspace(5, f2, {0})), OutOfRange);
}

TEST_CASE("adjacency is symmetric and matches the rank test") {
    FieldPtr f3 = FieldSpec::from_order(3);
    GrassmannGraph g(f3, 4, 2);
    g.build_adjacency(2);
    const auto& adj = g.adjacency();
    for (int i = 0; i < g.size(); ++i)
        for (int j : adj[i]) {
            CHECK(grassmann_distance(g.vertices()[i], g.vertices()[j]) == 1);
            CHECK(std::ranges::find(adj[j], i) != adj[j].end());
        }
}

TEST_CASE("grassmann params validate 0 < k < v") {
    CHECK_THROWS_AS((void)GrassmannParams::make(2, 4, 0), InadmissibleParams);
    CHECK_THROWS_AS((void)GrassmannParams::make(2, 4, 4), InadmissibleParams);
    CHECK(GrassmannParams::make(2, 5, 2).kbar() == 2);
    CHECK(GrassmannParams::make(2, 5, 3).kbar() == 2);
}
