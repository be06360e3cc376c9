#pragma once

// Exact integer matrices: Smith normal form with transforms, determinants,
// integer kernels, and the inertia of symmetric matrices.

#include <vector>

#include "rtinv/cyclotomic.hpp"

namespace rtinv {

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {}
    static IntMatrix identity(int n);
    static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    BigInt& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
    const BigInt& operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

    IntMatrix transposed() const;
    bool is_symmetric() const;
    bool is_diagonal() const;
    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<BigInt> data_;
};

struct SmithForm {
    IntMatrix U, D, V;  // U * M * V = D

    /// Diagonal entries d_1 | d_2 | ... (nonnegative), length min(rows, cols).
    std::vector<BigInt> diagonal() const;
};

SmithForm smith_normal_form(const IntMatrix& m);

/// Exact determinant (Bareiss fraction-free elimination).
BigInt determinant(const IntMatrix& m);

/// U*M*V == D, U and V unimodular, D diagonal with the divisibility chain.
bool verify_smith(const IntMatrix& m, const SmithForm& f);

/// Columns form a Z-basis of {x in Z^cols : M x = 0}.
IntMatrix integer_kernel(const IntMatrix& m);

struct Inertia {
    int positive = 0;
    int negative = 0;
    int zero = 0;
};

/// Inertia of a symmetric matrix by exact congruent diagonalization over Q.
Inertia inertia(const IntMatrix& m);

}  // namespace rtinv
