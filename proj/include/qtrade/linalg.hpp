#pragma once

#include <span>
#include <vector>

#include "qtrade/gf.hpp"

namespace qtrade {

// Dense matrix over GF(q). Immutable by convention once built; all
// operations below return fresh values.
class MatrixGF {
public:
    MatrixGF(int rows, int cols, FieldPtr field);
    MatrixGF(int rows, int cols, FieldPtr field, std::vector<Fe> entries);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const FieldPtr& field() const { return field_; }

    Fe at(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }
    Fe& at(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
    std::span<const Fe> row(int r) const {
        return {data_.data() + static_cast<size_t>(r) * cols_, static_cast<size_t>(cols_)};
    }
    const std::vector<Fe>& entries() const { return data_; }

    bool operator==(const MatrixGF& other) const;

private:
    int rows_;
    int cols_;
    FieldPtr field_;
    std::vector<Fe> data_;
};

struct RrefResult {
    MatrixGF reduced;          // unique RREF of the row space, zero rows removed
    int rank = 0;
    std::vector<int> pivots;   // strictly increasing pivot columns
};

// Dispatches to a bit-packed path for q = 2 (cols <= 64), generic
// elimination otherwise. Both produce the identical canonical form.
RrefResult rref(const MatrixGF& m);
RrefResult rref_generic(const MatrixGF& m);

MatrixGF stack_rows(const MatrixGF& a, const MatrixGF& b);  // AmbientMismatch
int rank_of(const MatrixGF& m);

// RREF basis of rowspace(a) ∩ rowspace(b), via elimination of the doubled
// system [A|A; B|0]; the zero-left rows carry the intersection.
MatrixGF intersect(const MatrixGF& a, const MatrixGF& b);

// RREF basis of rowspace(a) + rowspace(b).
MatrixGF sum_space(const MatrixGF& a, const MatrixGF& b);

// vec reduced against an RREF basis lands on zero iff it lies in the span.
bool in_rowspace(const MatrixGF& rref_basis, const std::vector<int>& pivots,
                 std::span<const Fe> vec);

void require_same_ambient(const MatrixGF& a, const MatrixGF& b);

}  // namespace qtrade
