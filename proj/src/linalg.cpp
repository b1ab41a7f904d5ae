#include "qtrade/linalg.hpp"

#include <algorithm>
#include <cstdint>

namespace qtrade {

MatrixGF::MatrixGF(int rows, int cols, FieldPtr field)
    : rows_(rows), cols_(cols), field_(std::move(field)),
      data_(static_cast<size_t>(rows) * cols, 0) {
    if (cols_ < 1 || rows_ < 0) throw OutOfRange("matrix needs rows >= 0, cols >= 1");
}

MatrixGF::MatrixGF(int rows, int cols, FieldPtr field, std::vector<Fe> entries)
    : rows_(rows), cols_(cols), field_(std::move(field)), data_(std::move(entries)) {
    if (cols_ < 1 || rows_ < 0) throw OutOfRange("matrix needs rows >= 0, cols >= 1");
    if (data_.size() != static_cast<size_t>(rows_) * cols_)
        throw OutOfRange("entry count does not match matrix shape");
    for (Fe e : data_) field_->check_element(e);
}

bool MatrixGF::operator==(const MatrixGF& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ &&
           field_->same_field(*other.field_) && data_ == other.data_;
}

void require_same_ambient(const MatrixGF& a, const MatrixGF& b) {
    if (a.cols() != b.cols() || !a.field()->same_field(*b.field()))
        throw AmbientMismatch("operands live in different ambient spaces");
}

namespace {

RrefResult rref_packed_q2(const MatrixGF& m) {
    const int rows = m.rows(), cols = m.cols();
    std::vector<std::uint64_t> w(static_cast<size_t>(rows), 0);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (m.at(r, c)) w[static_cast<size_t>(r)] |= std::uint64_t{1} << c;

    std::vector<int> pivots;
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int p = -1;
        for (int r = rank; r < rows; ++r)
            if ((w[static_cast<size_t>(r)] >> c) & 1) { p = r; break; }
        if (p < 0) continue;
        std::swap(w[static_cast<size_t>(rank)], w[static_cast<size_t>(p)]);
        for (int r = 0; r < rows; ++r)
            if (r != rank && ((w[static_cast<size_t>(r)] >> c) & 1))
                w[static_cast<size_t>(r)] ^= w[static_cast<size_t>(rank)];
        pivots.push_back(c);
        ++rank;
    }

    MatrixGF out(rank, cols, m.field());
    for (int r = 0; r < rank; ++r)
        for (int c = 0; c < cols; ++c)
            out.at(r, c) = static_cast<Fe>((w[static_cast<size_t>(r)] >> c) & 1);
    return {std::move(out), rank, std::move(pivots)};
}

}  // namespace

RrefResult rref_generic(const MatrixGF& m) {
    const FieldSpec& f = *m.field();
    MatrixGF a = m;
    const int rows = a.rows(), cols = a.cols();
    std::vector<int> pivots;
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int p = -1;
        for (int r = rank; r < rows; ++r)
            if (a.at(r, c) != 0) { p = r; break; }
        if (p < 0) continue;
        if (p != rank)
            for (int j = 0; j < cols; ++j) std::swap(a.at(p, j), a.at(rank, j));
        Fe scale = f.inv(a.at(rank, c));
        if (scale != 1)
            for (int j = c; j < cols; ++j) a.at(rank, j) = f.mul(scale, a.at(rank, j));
        for (int r = 0; r < rows; ++r) {
            if (r == rank) continue;
            Fe factor = a.at(r, c);
            if (factor == 0) continue;
            for (int j = c; j < cols; ++j)
                a.at(r, j) = f.sub(a.at(r, j), f.mul(factor, a.at(rank, j)));
        }
        pivots.push_back(c);
        ++rank;
    }
    MatrixGF out(rank, cols, m.field());
    for (int r = 0; r < rank; ++r)
        for (int c = 0; c < cols; ++c) out.at(r, c) = a.at(r, c);
    return {std::move(out), rank, std::move(pivots)};
}

RrefResult rref(const MatrixGF& m) {
    if (m.field()->q() == 2 && m.cols() <= 64) return rref_packed_q2(m);
    return rref_generic(m);
}

MatrixGF stack_rows(const MatrixGF& a, const MatrixGF& b) {
    require_same_ambient(a, b);
    MatrixGF out(a.rows() + b.rows(), a.cols(), a.field());
    for (int r = 0; r < a.rows(); ++r)
        for (int c = 0; c < a.cols(); ++c) out.at(r, c) = a.at(r, c);
    for (int r = 0; r < b.rows(); ++r)
        for (int c = 0; c < b.cols(); ++c) out.at(a.rows() + r, c) = b.at(r, c);
    return out;
}

int rank_of(const MatrixGF& m) { return rref(m).rank; }

MatrixGF intersect(const MatrixGF& a, const MatrixGF& b) {
    require_same_ambient(a, b);
    const int v = a.cols();
    MatrixGF doubled(a.rows() + b.rows(), 2 * v, a.field());
    for (int r = 0; r < a.rows(); ++r)
        for (int c = 0; c < v; ++c) {
            doubled.at(r, c) = a.at(r, c);
            doubled.at(r, v + c) = a.at(r, c);
        }
    for (int r = 0; r < b.rows(); ++r)
        for (int c = 0; c < v; ++c) doubled.at(a.rows() + r, c) = b.at(r, c);

    RrefResult red = rref(doubled);
    std::vector<Fe> kept;
    int kept_rows = 0;
    for (int r = 0; r < red.rank; ++r) {
        if (red.pivots[static_cast<size_t>(r)] < v) continue;
        for (int c = 0; c < v; ++c) kept.push_back(red.reduced.at(r, v + c));
        ++kept_rows;
    }
    MatrixGF candidate(kept_rows, v, a.field(), std::move(kept));
    return rref(candidate).reduced;
}

MatrixGF sum_space(const MatrixGF& a, const MatrixGF& b) {
    return rref(stack_rows(a, b)).reduced;
}

bool in_rowspace(const MatrixGF& rref_basis, const std::vector<int>& pivots,
                 std::span<const Fe> vec) {
    const FieldSpec& f = *rref_basis.field();
    std::vector<Fe> residue(vec.begin(), vec.end());
    for (size_t i = 0; i < pivots.size(); ++i) {
        Fe coeff = residue[static_cast<size_t>(pivots[i])];
        if (coeff == 0) continue;
        for (int c = pivots[i]; c < rref_basis.cols(); ++c)
            residue[static_cast<size_t>(c)] =
                f.sub(residue[static_cast<size_t>(c)],
                      f.mul(coeff, rref_basis.at(static_cast<int>(i), c)));
    }
    return std::all_of(residue.begin(), residue.end(), [](Fe e) { return e == 0; });
}

}  // namespace qtrade
