#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "qtrade/linalg.hpp"

using namespace qtrade;

namespace {

MatrixGF from_rows(const FieldPtr& f, int cols, std::vector<std::vector<Fe>> rows) {
    MatrixGF m(static_cast<int>(rows.size()), cols, f);
    for (size_t r = 0; r < rows.size(); ++r)
        for (int c = 0; c < cols; ++c) m.at(static_cast<int>(r), c) = rows[r][c];
    return m;
}

// All vectors of the row space, by brute-force span. Small spaces only.
std::set<std::vector<Fe>> span_vectors(const MatrixGF& m) {
    const FieldPtr& f = m.field();
    const unsigned q = f->q();
    std::set<std::vector<Fe>> out;
    std::vector<Fe> coeff(m.rows(), 0);
    while (true) {
        std::vector<Fe> vec(m.cols(), 0);
        for (int r = 0; r < m.rows(); ++r)
            for (int c = 0; c < m.cols(); ++c)
                vec[c] = f->add(vec[c], f->mul(coeff[r], m.at(r, c)));
        out.insert(vec);
        int i = m.rows() - 1;
        while (i >= 0 && coeff[i] == q - 1) coeff[i--] = 0;
        if (i < 0) break;
        ++coeff[i];
    }
    return out;
}

bool is_rref(const MatrixGF& m, const std::vector<int>& pivots) {
    if (static_cast<int>(pivots.size()) != m.rows()) return false;
    for (int r = 0; r < m.rows(); ++r) {
        int p = pivots[r];
        if (r > 0 && p <= pivots[r - 1]) return false;
        for (int c = 0; c < p; ++c)
            if (m.at(r, c) != 0) return false;
        if (m.at(r, p) != 1) return false;
        for (int r2 = 0; r2 < m.rows(); ++r2)
            if (r2 != r && m.at(r2, p) != 0) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("rref produces a reduced echelon basis of the same row space") {
    FieldPtr f3 = FieldSpec::from_order(3);
    MatrixGF m = from_rows(f3, 4, {{1, 2, 0, 1}, {2, 1, 1, 0}, {0, 0, 1, 2}});
    RrefResult r = rref(m);
    CHECK(r.rank == 3);
    CHECK(is_rref(r.reduced, r.pivots));
    CHECK(span_vectors(m) == span_vectors(r.reduced));
}

TEST_CASE("rref drops dependent rows") {
    FieldPtr f2 = FieldSpec::from_order(2);
    MatrixGF m = from_rows(f2, 3, {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}});
    RrefResult r = rref(m);
    CHECK(r.rank == 2);
    CHECK(r.reduced.rows() == 2);
    CHECK(r.pivots == std::vector<int>{0, 1});
}

TEST_CASE("rref is idempotent and canonical") {
    FieldPtr f2 = FieldSpec::from_order(2);
    // Two spanning sets of the same plane.
    MatrixGF a = from_rows(f2, 4, {{1, 0, 1, 1}, {0, 1, 1, 0}});
    MatrixGF b = from_rows(f2, 4, {{1, 1, 0, 1}, {0, 1, 1, 0}});
    RrefResult ra = rref(a);
    RrefResult rb = rref(b);
    CHECK(ra.reduced == rb.reduced);
    RrefResult again = rref(ra.reduced);
    CHECK(again.reduced == ra.reduced);
}

TEST_CASE("packed and generic elimination agree on random GF(2) matrices") {
    FieldPtr f2 = FieldSpec::from_order(2);
    std::mt19937_64 rng(0x51ab5eedULL);
    for (int trial = 0; trial < 10000; ++trial) {
        int rows = 1 + static_cast<int>(rng() % 6);
        int cols = 1 + static_cast<int>(rng() % 12);
        MatrixGF m(rows, cols, f2);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) m.at(r, c) = static_cast<Fe>(rng() & 1);
        RrefResult fast = rref(m);
        RrefResult slow = rref_generic(m);
        REQUIRE(fast.rank == slow.rank);
        REQUIRE(fast.pivots == slow.pivots);
        REQUIRE(fast.reduced == slow.reduced);
    }
}

TEST_CASE("rank and stacking") {
    FieldPtr f2 = FieldSpec::from_order(2);
    MatrixGF a = from_rows(f2, 4, {{1, 0, 0, 0}, {0, 1, 0, 0}});
    MatrixGF b = from_rows(f2, 4, {{0, 1, 0, 0}, {0, 0, 1, 0}});
    MatrixGF s = stack_rows(a, b);
    CHECK(s.rows() == 4);
    CHECK(rank_of(s) == 3);
    MatrixGF c = from_rows(f2, 3, {{1, 0, 0}});
    CHECK_THROWS_AS((void)stack_rows(a, c), AmbientMismatch);
}

TEST_CASE("intersection matches the brute-force common vectors") {
    for (unsigned q : {2u, 3u}) {
        FieldPtr f = FieldSpec::from_order(q);
        std::mt19937_64 rng(17 + q);
        for (int trial = 0; trial < 300; ++trial) {
            int v = 4 + static_cast<int>(rng() % 2);
            auto rand_matrix = [&](int rows) {
                MatrixGF m(rows, v, f);
                for (int r = 0; r < rows; ++r)
                    for (int c = 0; c < v; ++c) m.at(r, c) = static_cast<Fe>(rng() % q);
                return m;
            };
            MatrixGF a = rand_matrix(1 + static_cast<int>(rng() % 3));
            MatrixGF b = rand_matrix(1 + static_cast<int>(rng() % 3));
            MatrixGF meet = intersect(a, b);

            std::set<std::vector<Fe>> va = span_vectors(a);
            std::set<std::vector<Fe>> vb = span_vectors(b);
            std::set<std::vector<Fe>> common;
            std::ranges::set_intersection(va, vb, std::inserter(common, common.begin()));
            CHECK(span_vectors(meet) == common);
        }
    }
}

TEST_CASE("dimension formula dim(A)+dim(B) = dim(A+B)+dim(A∩B)") {
    FieldPtr f2 = FieldSpec::from_order(2);
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 500; ++trial) {
        auto rand_matrix = [&](int rows) {
            MatrixGF m(rows, 5, f2);
            for (int r = 0; r < rows; ++r)
                for (int c = 0; c < 5; ++c) m.at(r, c) = static_cast<Fe>(rng() & 1);
            return m;
        };
        MatrixGF a = rand_matrix(1 + static_cast<int>(rng() % 4));
        MatrixGF b = rand_matrix(1 + static_cast<int>(rng() % 4));
        int da = rank_of(a);
        int db = rank_of(b);
        int dsum = sum_space(a, b).rows();
        int dmeet = intersect(a, b).rows();
        CHECK(da + db == dsum + dmeet);
    }
}

TEST_CASE("in_rowspace answers membership against an RREF basis") {
    FieldPtr f3 = FieldSpec::from_order(3);
    MatrixGF m = from_rows(f3, 4, {{1, 0, 2, 1}, {0, 1, 1, 2}});
    RrefResult r = rref(m);
    std::vector<Fe> inside = {1, 1, 0, 0};  // row0 + row1
    for (int c = 0; c < 4; ++c) inside[c] = f3->add(m.at(0, c), m.at(1, c));
    CHECK(in_rowspace(r.reduced, r.pivots, inside));
    std::vector<Fe> outside = {0, 0, 1, 0};
    CHECK_FALSE(in_rowspace(r.reduced, r.pivots, outside));
    std::vector<Fe> zero = {0, 0, 0, 0};
    CHECK(in_rowspace(r.reduced, r.pivots, zero));
}

TEST_CASE("empty matrices behave as the zero space") {
    FieldPtr f2 = FieldSpec::from_order(2);
    MatrixGF z(0, 4, f2);
    CHECK(rank_of(z) == 0);
    RrefResult r = rref(z);
    CHECK(r.rank == 0);
    CHECK(r.reduced.rows() == 0);
    MatrixGF a = from_rows(f2, 4, {{1, 0, 0, 0}});
    CHECK(intersect(a, z).rows() == 0);
    CHECK(sum_space(a, z).rows() == 1);
}
