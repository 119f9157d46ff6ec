#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ksmap/derham.hpp"

namespace ksmap {

using cplx = std::complex<double>;
using CMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// A list of univariate rational functions in t1, evaluated together at complex points.
class RationalTable {
public:
    RationalTable() = default;
    explicit RationalTable(const std::vector<MultiRational>& entries);
    std::size_t size() const { return count_; }
    void evaluate(cplx t, cplx* out) const;

private:
    std::size_t count_ = 0;
    int ncoef_ = 0;
    std::vector<double> table_;  // [k * 2 count + p], numerators first
    mutable std::vector<cplx> scratch_;
};

/// M(t) for a one-parameter pencil, as doubles.
class NumericConnection {
public:
    explicit NumericConnection(const ConnectionMatrix& cm);
    int dim() const { return n_; }
    CMat evaluate(cplx t) const;

private:
    int n_ = 0;
    RationalTable entries_;
};

CMat evaluate_numeric(const RatMatrix& m, cplx t);

struct Segment {
    enum class Kind { Line, Arc };
    Kind kind = Kind::Line;
    cplx a, b;            // line endpoints
    cplx center;          // arc
    double radius = 0.0;
    double theta0 = 0.0;
    double theta1 = 0.0;

    static Segment line(cplx from, cplx to);
    static Segment arc(cplx center, double radius, double theta0, double theta1);
    cplx at(double s) const;
    cplx velocity(double s) const;
    cplx start() const { return at(0.0); }
    cplx end() const { return at(1.0); }
};

using Path = std::vector<Segment>;

struct Loop {
    std::string label;
    cplx around;               // enclosed singular value (unused for infinity)
    bool at_infinity = false;
    Path path;
};

struct PathPlan {
    cplx basepoint;
    double clearance = 0.0;
    std::vector<cplx> singular_values;
    std::vector<Loop> loops;  // finite loops by arg(p - basepoint), then infinity
};

/// Numeric roots of the singular factors of a one-parameter pencil.
std::vector<cplx> singular_values(const HyperellipticPencil& pencil);

PathPlan plan_paths(const HyperellipticPencil& pencil);

struct NumericSolution {
    std::vector<cplx> points;   // end point of each segment
    std::vector<CMat> values;   // Y at those points
    double error_estimate = 0.0;  // max difference against a run at a tighter tolerance
    int steps = 0;
    int rejected = 0;
};

/// Integrates dY/dt = Y M(t) along the path with Y(start) = Id.
/// Throws NumericInconclusive("path too close to singularity") on step underflow.
NumericSolution integrate_connection(const NumericConnection& m, const Path& path, double tol);

struct MonodromyReport {
    PathPlan plan;
    std::vector<CMat> matrices;
    std::vector<cplx> traces;
    double symplectic_defect = 0.0;
    double product_defect = 0.0;
    int algebra_dimension = 0;
    double error_estimate = 0.0;
    double tol = 0.0;
};

/// J is the exact cup-product matrix; it is evaluated at the basepoint.
MonodromyReport monodromy(const HyperellipticPencil& pencil, const ConnectionMatrix& cm, const RatMatrix& J,
                          double tol);

/// Dimension of the span of words of length <= 2g in the matrices and Id.
int algebra_dimension(const std::vector<CMat>& matrices, int genus);

double max_abs(const CMat& m);

struct IndependenceVerdict {
    bool independent = false;
    int degree_bound = 0;
    int degree_found = -1;        // multiplier degree at which the relation appeared
    double gap = 0.0;
    double noise_floor = 0.0;
    // Relation sum_j a_j(t) Y[., j] + sum_j b_j(t) dY[., j] = 0, coefficients in powers of t.
    std::vector<std::vector<cplx>> y_coeffs;
    std::vector<std::vector<cplx>> dy_coeffs;
    std::vector<cplx> samples;
};

/// Throws NumericInconclusive("inconclusive: increase Npts or precision") when no
/// singular-value gap separates rank from noise.
IndependenceVerdict first_kind_independence(const HyperellipticPencil& pencil, const ConnectionMatrix& cm,
                                            int degree_bound, int npts, double tol);

/// Minimal ratio of consecutive singular values accepted as a rank gap.
inline constexpr double kRankGap = 1e6;

}  // namespace ksmap
