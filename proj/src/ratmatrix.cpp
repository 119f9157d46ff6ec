#include "ksmap/ratmatrix.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "ksmap/errors.hpp"

namespace ksmap {

RatMatrix::RatMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {
    if (rows < 0 || cols < 0) throw AlgebraError("negative matrix dimension");
}

RatMatrix RatMatrix::identity(int n) {
    RatMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<RatVector>& rows) {
    const int nr = static_cast<int>(rows.size());
    const int nc = nr == 0 ? 0 : static_cast<int>(rows[0].size());
    RatMatrix m(nr, nc);
    for (int i = 0; i < nr; ++i) {
        if (static_cast<int>(rows[i].size()) != nc) throw AlgebraError("ragged matrix rows");
        for (int j = 0; j < nc; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

RatMatrix RatMatrix::from_columns(const std::vector<RatVector>& cols) {
    const int nc = static_cast<int>(cols.size());
    const int nr = nc == 0 ? 0 : static_cast<int>(cols[0].size());
    RatMatrix m(nr, nc);
    for (int j = 0; j < nc; ++j) {
        if (static_cast<int>(cols[j].size()) != nr) throw AlgebraError("ragged matrix columns");
        for (int i = 0; i < nr; ++i) m(i, j) = cols[j][i];
    }
    return m;
}

RatVector RatMatrix::column(int j) const {
    RatVector v(static_cast<std::size_t>(rows_));
    for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

RatMatrix RatMatrix::transpose() const {
    RatMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

RatMatrix RatMatrix::block(int r0, int c0, int nr, int nc) const {
    if (r0 < 0 || c0 < 0 || r0 + nr > rows_ || c0 + nc > cols_) {
        throw AlgebraError("block out of range");
    }
    RatMatrix b(nr, nc);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
}

void RatMatrix::set_block(int r0, int c0, const RatMatrix& b) {
    if (r0 < 0 || c0 < 0 || r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) {
        throw AlgebraError("block out of range");
    }
    for (int i = 0; i < b.rows_; ++i)
        for (int j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

RatMatrix RatMatrix::hconcat(const RatMatrix& b) const {
    if (rows_ != b.rows_) throw AlgebraError("hconcat row mismatch");
    RatMatrix m(rows_, cols_ + b.cols_);
    m.set_block(0, 0, *this);
    m.set_block(0, cols_, b);
    return m;
}

RatMatrix RatMatrix::vconcat(const RatMatrix& b) const {
    if (cols_ != b.cols_) throw AlgebraError("vconcat column mismatch");
    RatMatrix m(rows_ + b.rows_, cols_);
    m.set_block(0, 0, *this);
    m.set_block(rows_, 0, b);
    return m;
}

RatMatrix RatMatrix::operator-() const {
    RatMatrix m = *this;
    for (auto& e : m.a_) e = -e;
    return m;
}

RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw AlgebraError("matrix shape mismatch");
    RatMatrix m(a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.a_.size(); ++k) m.a_[k] = a.a_[k] + b.a_[k];
    return m;
}

RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw AlgebraError("matrix shape mismatch");
    RatMatrix m(a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.a_.size(); ++k) m.a_[k] = a.a_[k] - b.a_[k];
    return m;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols_ != b.rows_) throw AlgebraError("matrix product shape mismatch");
    RatMatrix m(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i) {
        for (int j = 0; j < b.cols_; ++j) {
            MultiRational s;
            for (int k = 0; k < a.cols_; ++k) {
                if (a(i, k).is_zero() || b(k, j).is_zero()) continue;
                s += a(i, k) * b(k, j);
            }
            m(i, j) = std::move(s);
        }
    }
    return m;
}

RatMatrix operator*(const MultiRational& c, const RatMatrix& a) {
    RatMatrix m(a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.a_.size(); ++k) m.a_[k] = c * a.a_[k];
    return m;
}

RatVector operator*(const RatMatrix& a, const RatVector& v) {
    if (static_cast<int>(v.size()) != a.cols_) throw AlgebraError("matrix-vector shape mismatch");
    RatVector out(static_cast<std::size_t>(a.rows_));
    for (int i = 0; i < a.rows_; ++i) {
        for (int k = 0; k < a.cols_; ++k) {
            if (a(i, k).is_zero() || v[k].is_zero()) continue;
            out[i] += a(i, k) * v[k];
        }
    }
    return out;
}

bool operator==(const RatMatrix& a, const RatMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
}

bool RatMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const MultiRational& e) { return e.is_zero(); });
}

bool RatMatrix::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = i + 1; j < cols_; ++j)
            if (!((*this)(i, j) == (*this)(j, i))) return false;
    return true;
}

bool RatMatrix::depends_on(int v) const {
    return std::any_of(a_.begin(), a_.end(), [v](const MultiRational& e) { return e.depends_on(v); });
}

RatMatrix RatMatrix::derivative(int v) const {
    RatMatrix m(rows_, cols_);
    for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] = a_[k].derivative(v);
    return m;
}

RatMatrix RatMatrix::substitute(int v, const BigRational& value) const {
    RatMatrix m(rows_, cols_);
    for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] = a_[k].substitute(v, value);
    return m;
}

std::vector<std::vector<BigRational>> RatMatrix::evaluate(
    const std::array<BigRational, kNumVars>& point) const {
    std::vector<std::vector<BigRational>> out(static_cast<std::size_t>(rows_),
                                              std::vector<BigRational>(static_cast<std::size_t>(cols_)));
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out[i][j] = (*this)(i, j).evaluate(point);
    return out;
}

std::vector<std::vector<std::string>> RatMatrix::to_strings(const VarNames& names) const {
    std::vector<std::vector<std::string>> out(static_cast<std::size_t>(rows_));
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out[i].push_back((*this)(i, j).to_string(names));
    return out;
}

// ---------------------------------------------------------------------------
// Fraction-free elimination

namespace {

struct Echelon {
    std::vector<std::vector<MultiPoly>> a;  // row-major, permuted
    std::vector<int> col_perm;              // permuted column k is original column col_perm[k]
    std::vector<MultiRational> row_scale;   // original row i was multiplied by row_scale[i]
    int rank = 0;
    int sign = 1;
};

// Clear denominators of a row and strip its polynomial content.
std::vector<MultiPoly> clear_row(const RatMatrix& m, int i, MultiRational& scale) {
    MultiPoly l(1);
    for (int j = 0; j < m.cols(); ++j) {
        const MultiPoly& d = m(i, j).den();
        if (d.is_constant()) continue;
        const MultiPoly g = gcd(l, d);
        l = l * div_exact(d, g);
    }
    std::vector<MultiPoly> row;
    row.reserve(static_cast<std::size_t>(m.cols()));
    MultiPoly content;
    for (int j = 0; j < m.cols(); ++j) {
        const MultiRational& e = m(i, j);
        if (e.is_zero()) {
            row.emplace_back();
            continue;
        }
        row.push_back(e.num() * div_exact(l, e.den()));
        content = content.is_zero() ? row.back().monic() : gcd(content, row.back());
    }
    if (content.is_zero()) content = MultiPoly(1);
    if (!content.is_constant()) {
        for (auto& e : row)
            if (!e.is_zero()) e = div_exact(e, content);
    }
    scale = MultiRational(l, content);
    return row;
}

Echelon fraction_free_echelon(const RatMatrix& m) {
    Echelon e;
    const int n = m.rows();
    const int c = m.cols();
    e.row_scale.resize(static_cast<std::size_t>(n));
    e.a.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) e.a.push_back(clear_row(m, i, e.row_scale[i]));
    e.col_perm.resize(static_cast<std::size_t>(c));
    std::iota(e.col_perm.begin(), e.col_perm.end(), 0);

    MultiPoly prev(1);
    int k = 0;
    for (; k < std::min(n, c); ++k) {
        // Pivot: nonzero entry of lowest total degree, then fewest terms.
        int pi = -1, pj = -1;
        int best_deg = 0;
        std::size_t best_size = 0;
        for (int i = k; i < n; ++i) {
            for (int j = k; j < c; ++j) {
                const MultiPoly& x = e.a[i][j];
                if (x.is_zero()) continue;
                const int d = x.total_degree();
                if (pi < 0 || d < best_deg || (d == best_deg && x.size() < best_size)) {
                    pi = i;
                    pj = j;
                    best_deg = d;
                    best_size = x.size();
                }
            }
        }
        if (pi < 0) break;
        if (pi != k) {
            std::swap(e.a[pi], e.a[k]);
            e.sign = -e.sign;
        }
        if (pj != k) {
            for (auto& row : e.a) std::swap(row[pj], row[k]);
            std::swap(e.col_perm[pj], e.col_perm[k]);
            e.sign = -e.sign;
        }
        const MultiPoly& piv = e.a[k][k];
        for (int i = k + 1; i < n; ++i) {
            const MultiPoly aik = e.a[i][k];
            for (int j = k + 1; j < c; ++j) {
                MultiPoly v = piv * e.a[i][j];
                if (!aik.is_zero() && !e.a[k][j].is_zero()) v -= aik * e.a[k][j];
                e.a[i][j] = prev.is_constant() ? v * BigRational(1 / prev.constant_value())
                                               : div_exact(v, prev);
            }
            e.a[i][k] = MultiPoly{};
        }
        prev = piv;
    }
    e.rank = k;
    return e;
}

}  // namespace

int rank(const RatMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    return fraction_free_echelon(m).rank;
}

std::vector<RatVector> kernel_basis(const RatMatrix& m) {
    const int c = m.cols();
    std::vector<RatVector> basis;
    if (c == 0) return basis;
    if (m.rows() == 0) {
        for (int j = 0; j < c; ++j) {
            RatVector v(static_cast<std::size_t>(c));
            v[j] = 1;
            basis.push_back(std::move(v));
        }
        return basis;
    }
    const Echelon e = fraction_free_echelon(m);
    const int r = e.rank;
    for (int q = r; q < c; ++q) {
        // Back substitution on the leading r x r upper-triangular block.
        RatVector z(static_cast<std::size_t>(r));
        for (int i = r - 1; i >= 0; --i) {
            MultiRational s = -MultiRational(e.a[i][q]);
            for (int j = i + 1; j < r; ++j) {
                if (e.a[i][j].is_zero() || z[j].is_zero()) continue;
                s -= MultiRational(e.a[i][j]) * z[j];
            }
            z[i] = s / MultiRational(e.a[i][i]);
        }
        RatVector permuted(static_cast<std::size_t>(c));
        for (int i = 0; i < r; ++i) permuted[i] = z[i];
        permuted[q] = 1;
        RatVector v(static_cast<std::size_t>(c));
        for (int k = 0; k < c; ++k) v[e.col_perm[k]] = permuted[k];

        // Clear to polynomial entries with content 1.
        MultiPoly l(1);
        for (const auto& x : v) {
            if (x.den().is_constant()) continue;
            l = l * div_exact(x.den(), gcd(l, x.den()));
        }
        std::vector<MultiPoly> polys;
        MultiPoly content;
        for (const auto& x : v) {
            polys.push_back(x.is_zero() ? MultiPoly{} : x.num() * div_exact(l, x.den()));
            if (!polys.back().is_zero()) {
                content = content.is_zero() ? polys.back().monic() : gcd(content, polys.back());
            }
        }
        for (auto& p : polys)
            if (!p.is_zero() && !content.is_constant()) p = div_exact(p, content);
        // Integer coefficients with gcd 1 across the vector.
        BigInteger den_lcm = 1, num_gcd = 0;
        for (const auto& p : polys) {
            for (const auto& t : p.terms()) {
                mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coef.get_den_mpz_t());
                mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coef.get_num_mpz_t());
            }
        }
        BigRational f(den_lcm, num_gcd);
        f.canonicalize();
        // Free coordinate gets a positive leading coefficient.
        if (sgn(polys[e.col_perm[q]].leading_coefficient()) < 0) f = -f;
        RatVector out;
        out.reserve(static_cast<std::size_t>(c));
        for (auto& p : polys) out.emplace_back(p * f);
        basis.push_back(std::move(out));
    }
    return basis;
}

MultiRational determinant(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw AlgebraError("determinant of non-square matrix");
    const int n = m.rows();
    if (n == 0) return 1;
    const Echelon e = fraction_free_echelon(m);
    if (e.rank < n) return {};
    MultiRational d(e.a[n - 1][n - 1]);
    if (e.sign < 0) d = -d;
    for (const auto& s : e.row_scale) d /= s;
    return d;
}

RatMatrix inverse(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw AlgebraError("inverse of non-square matrix");
    const int n = m.rows();
    RatMatrix a = m;
    RatMatrix inv = RatMatrix::identity(n);
    for (int k = 0; k < n; ++k) {
        int p = -1;
        for (int i = k; i < n; ++i) {
            if (!a(i, k).is_zero() && (p < 0 || a(i, k).num().total_degree() +
                                                        a(i, k).den().total_degree() <
                                                    a(p, k).num().total_degree() +
                                                        a(p, k).den().total_degree())) {
                p = i;
            }
        }
        if (p < 0) throw AlgebraError("singular matrix");
        if (p != k) {
            for (int j = 0; j < n; ++j) {
                std::swap(a(p, j), a(k, j));
                std::swap(inv(p, j), inv(k, j));
            }
        }
        const MultiRational pinv = a(k, k).inverse();
        for (int j = 0; j < n; ++j) {
            a(k, j) *= pinv;
            inv(k, j) *= pinv;
        }
        for (int i = 0; i < n; ++i) {
            if (i == k || a(i, k).is_zero()) continue;
            const MultiRational f = a(i, k);
            for (int j = 0; j < n; ++j) {
                if (!a(k, j).is_zero()) a(i, j) -= f * a(k, j);
                if (!inv(k, j).is_zero()) inv(i, j) -= f * inv(k, j);
            }
        }
    }
    return inv;
}

}  // namespace ksmap
