#pragma once

#include <gmpxx.h>

#include <vector>

#include "bsc/errors.hpp"

namespace bsc {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;

// Dense exact integer matrix.
class IntMat {
  public:
    IntMat() = default;
    IntMat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}

    static IntMat identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Int& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    const Int& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

    bool operator==(const IntMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
    bool operator!=(const IntMat& o) const { return !(*this == o); }

    IntMat operator*(const IntMat& o) const;
    IntVec operator*(const IntVec& v) const;
    IntMat transposed() const;
    bool is_identity() const;
    bool is_antisymmetric() const;

    // A^T J A == J
    bool is_symplectic(const IntMat& J) const;

    Int trace() const;

  private:
    int rows_ = 0, cols_ = 0;
    std::vector<Int> a_;
};

// Fraction-free determinant (Bareiss).
Int det(const IntMat& m);

// Inverse of a matrix with det = +-1; throws if not unimodular.
IntMat inverse_unimodular(const IntMat& m);

// Smith normal form invariant factors (nonzero diagonal entries, divisibility-ordered).
std::vector<Int> snf_invariants(const IntMat& m);

// multiplicative order of a square matrix, searched up to `limit`; 0 if none found
int matrix_order(const IntMat& m, int limit);

IntVec add(const IntVec& a, const IntVec& b);
IntVec sub(const IntVec& a, const IntVec& b);
IntVec scale(const IntVec& a, const Int& c);
bool is_zero(const IntVec& a);

// canonical sign: first nonzero entry positive (identity on the zero vector)
IntVec canonical_sign(const IntVec& a);

}  // namespace bsc
