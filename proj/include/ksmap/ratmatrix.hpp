#pragma once

#include <string>
#include <vector>

#include "ksmap/multirational.hpp"

namespace ksmap {

using RatVector = std::vector<MultiRational>;

/// Dense row-major matrix over Q(t1, t2, l1, l2).
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(int rows, int cols);
    static RatMatrix identity(int n);
    static RatMatrix from_rows(const std::vector<RatVector>& rows);
    static RatMatrix from_columns(const std::vector<RatVector>& cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    MultiRational& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    const MultiRational& operator()(int i, int j) const {
        return a_[static_cast<std::size_t>(i) * cols_ + j];
    }
    RatVector column(int j) const;

    RatMatrix transpose() const;
    RatMatrix block(int r0, int c0, int nr, int nc) const;
    void set_block(int r0, int c0, const RatMatrix& b);
    RatMatrix hconcat(const RatMatrix& b) const;
    RatMatrix vconcat(const RatMatrix& b) const;

    RatMatrix operator-() const;
    friend RatMatrix operator+(const RatMatrix& a, const RatMatrix& b);
    friend RatMatrix operator-(const RatMatrix& a, const RatMatrix& b);
    friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
    friend RatMatrix operator*(const MultiRational& c, const RatMatrix& a);
    friend RatVector operator*(const RatMatrix& a, const RatVector& v);
    friend bool operator==(const RatMatrix& a, const RatMatrix& b);

    bool is_zero() const;
    bool is_symmetric() const;
    bool depends_on(int v) const;
    /// Entrywise derivative with respect to variable v.
    RatMatrix derivative(int v) const;
    RatMatrix substitute(int v, const BigRational& value) const;
    std::vector<std::vector<BigRational>> evaluate(
        const std::array<BigRational, kNumVars>& point) const;

    std::vector<std::vector<std::string>> to_strings(
        const VarNames& names = default_var_names()) const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<MultiRational> a_;
};

/// Generic rank over the rational function field (fraction-free Bareiss).
int rank(const RatMatrix& m);

/// Basis of the right kernel; each vector is cleared to polynomial entries
/// with content 1. Count is cols - rank.
std::vector<RatVector> kernel_basis(const RatMatrix& m);

MultiRational determinant(const RatMatrix& m);

/// Throws AlgebraError("singular matrix") when m is not invertible.
RatMatrix inverse(const RatMatrix& m);

}  // namespace ksmap
