#include "ksmap/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "ksmap/errors.hpp"
#include "ksmap/factor.hpp"
#include "ksmap/simd.hpp"

namespace ksmap {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> univariate_doubles(const MultiPoly& p) {
    if (p.depends_on(kVarX) || p.depends_on(kVarT2) || p.depends_on(kVarL1) || p.depends_on(kVarL2)) {
        throw InputError("numeric evaluation requires a one-parameter pencil");
    }
    std::vector<double> out;
    for (const auto& c : p.coefficients_in(kVarT1)) out.push_back(c.constant_value().get_d());
    return out;
}

}  // namespace

RationalTable::RationalTable(const std::vector<MultiRational>& entries) : count_(entries.size()) {
    std::vector<std::vector<double>> polys;
    for (const auto& e : entries) polys.push_back(univariate_doubles(e.num()));
    for (const auto& e : entries) polys.push_back(univariate_doubles(e.den()));
    for (const auto& p : polys) ncoef_ = std::max(ncoef_, static_cast<int>(p.size()));
    const std::size_t np = polys.size();
    table_.assign(static_cast<std::size_t>(ncoef_) * np, 0.0);
    for (std::size_t p = 0; p < np; ++p)
        for (std::size_t k = 0; k < polys[p].size(); ++k) table_[k * np + p] = polys[p][k];
    scratch_.resize(np);
}

void RationalTable::evaluate(cplx t, cplx* out) const {
    const int np = static_cast<int>(2 * count_);
    simd::horner_many(table_.data(), ncoef_, np, t, scratch_.data());
    for (std::size_t i = 0; i < count_; ++i) out[i] = scratch_[i] / scratch_[count_ + i];
}

NumericConnection::NumericConnection(const ConnectionMatrix& cm) : n_(cm.m.rows()) {
    if (cm.parameter_index != 0) throw InputError("numeric continuation requires a one-parameter pencil");
    std::vector<MultiRational> e;
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) e.push_back(cm.m(i, j));
    entries_ = RationalTable(e);
}

CMat NumericConnection::evaluate(cplx t) const {
    CMat m(n_, n_);
    entries_.evaluate(t, m.data());
    return m;
}

CMat evaluate_numeric(const RatMatrix& m, cplx t) {
    std::vector<MultiRational> e;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) e.push_back(m(i, j));
    CMat out(m.rows(), m.cols());
    RationalTable(e).evaluate(t, out.data());
    return out;
}

Segment Segment::line(cplx from, cplx to) {
    Segment s;
    s.kind = Kind::Line;
    s.a = from;
    s.b = to;
    return s;
}

Segment Segment::arc(cplx center, double radius, double theta0, double theta1) {
    Segment s;
    s.kind = Kind::Arc;
    s.center = center;
    s.radius = radius;
    s.theta0 = theta0;
    s.theta1 = theta1;
    return s;
}

cplx Segment::at(double s) const {
    if (kind == Kind::Line) return a + s * (b - a);
    return center + std::polar(radius, theta0 + s * (theta1 - theta0));
}

cplx Segment::velocity(double s) const {
    if (kind == Kind::Line) return b - a;
    const double th = theta0 + s * (theta1 - theta0);
    return cplx(0.0, theta1 - theta0) * std::polar(radius, th);
}

double max_abs(const CMat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

std::vector<cplx> singular_values(const HyperellipticPencil& pencil) {
    if (pencil.num_params > 1) throw InputError("monodromy requires a one-parameter pencil");
    std::vector<cplx> out;
    for (const auto& q : pencil.singular_factors) {
        const int deg = q.degree(kVarT1);
        if (deg == 1) {
            const auto r = rational_roots(q, kVarT1);
            out.emplace_back(r.front().get_d(), 0.0);
            continue;
        }
        const auto c = univariate_doubles(q);
        Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
        for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
        for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -c[static_cast<std::size_t>(i)] / c.back();
        Eigen::EigenSolver<Eigen::MatrixXd> es(comp);
        for (int i = 0; i < deg; ++i) out.push_back(es.eigenvalues()(i));
    }
    std::sort(out.begin(), out.end(), [](cplx a, cplx b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return out;
}

PathPlan plan_paths(const HyperellipticPencil& pencil) {
    PathPlan plan;
    plan.singular_values = singular_values(pencil);
    const auto& ps = plan.singular_values;

    double mean = 0.0, top = 0.0, spread = 0.0;
    for (const auto& p : ps) {
        mean += p.real();
        top = std::max(top, p.imag());
        for (const auto& q : ps) spread = std::max(spread, std::abs(p - q));
    }
    if (!ps.empty()) mean /= static_cast<double>(ps.size());
    const double c = std::round(mean * 4.0) / 4.0;
    const double h = std::ceil(top + std::max(1.0, spread));
    plan.basepoint = {c, h};

    double rho = 1.0;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (std::abs(ps[i]) > 1e-12) rho = std::min(rho, std::abs(ps[i]));
        for (std::size_t j = i + 1; j < ps.size(); ++j) rho = std::min(rho, std::abs(ps[i] - ps[j]));
    }
    rho *= 0.5;
    plan.clearance = rho;
    const cplx b = plan.basepoint;

    std::vector<cplx> order = ps;
    std::sort(order.begin(), order.end(), [&](cplx x, cplx y) { return std::arg(x - b) < std::arg(y - b); });
    int idx = 0;
    double reach = 0.0;
    for (const auto& p : order) {
        const cplx u = (b - p) / std::abs(b - p);
        const cplx near = p + rho * u;
        const double th = std::arg(u);
        Loop l;
        l.label = "p" + std::to_string(idx++);
        l.around = p;
        l.path = {Segment::line(b, near), Segment::arc(p, rho, th, th + 2 * kPi), Segment::line(near, b)};
        plan.loops.push_back(std::move(l));
        reach = std::max(reach, std::abs(p - b));
    }
    const double R = reach + 2 * rho;
    Loop inf;
    inf.label = "infinity";
    inf.at_infinity = true;
    const cplx up = b + cplx(0.0, R);
    inf.path = {Segment::line(b, up), Segment::arc(b, R, kPi / 2, kPi / 2 - 2 * kPi), Segment::line(up, b)};
    plan.loops.push_back(std::move(inf));
    return plan;
}

namespace {

struct Dp45Result {
    std::vector<CMat> values;
    int steps = 0;
    int rejected = 0;
};

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

Dp45Result run_dp45(const NumericConnection& conn, const Path& path, double tol) {
    const int n = conn.dim();
    Dp45Result out;
    CMat y = CMat::Identity(n, n);
    CMat k1(n, n), k2(n, n), k3(n, n), k4(n, n), k5(n, n), k6(n, n), k7(n, n), tmp(n, n), mt(n, n);

    for (const auto& seg : path) {
        auto rhs = [&](double s, const CMat& yy, CMat& dst) {
            mt = conn.evaluate(seg.at(s)) * seg.velocity(s);
            simd::cgemm_small(n, yy.data(), mt.data(), dst.data());
        };
        double s = 0.0;
        double h = 0.01;
        rhs(s, y, k1);
        while (s < 1.0) {
            if (h < 1e-13) throw NumericInconclusive("path too close to singularity");
            if (s + h > 1.0) h = 1.0 - s;
            tmp = y + h * a21 * k1;
            rhs(s + c2 * h, tmp, k2);
            tmp = y + h * (a31 * k1 + a32 * k2);
            rhs(s + c3 * h, tmp, k3);
            tmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
            rhs(s + c4 * h, tmp, k4);
            tmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
            rhs(s + c5 * h, tmp, k5);
            tmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
            rhs(s + h, tmp, k6);
            CMat ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            rhs(s + h, ynew, k7);
            const CMat err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
            double en = 0.0;
            for (int i = 0; i < n * n; ++i) {
                const double sc = tol + tol * std::max(std::abs(y.data()[i]), std::abs(ynew.data()[i]));
                en = std::max(en, std::abs(err.data()[i]) / sc);
            }
            if (!std::isfinite(en)) {
                h *= 0.25;
                ++out.rejected;
                continue;
            }
            if (en <= 1.0) {
                s += h;
                y = std::move(ynew);
                k1 = k7;
                ++out.steps;
            } else {
                ++out.rejected;
            }
            const double fac = en == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
            h *= fac;
        }
        out.values.push_back(y);
    }
    return out;
}

}  // namespace

NumericSolution integrate_connection(const NumericConnection& m, const Path& path, double tol) {
    if (!(tol > 0.0)) throw InputError("tolerance must be positive");
    const double coarse_tol = std::max(tol * 0.1, 1e-14);
    const double fine_tol = std::max(coarse_tol / 32.0, 1e-15);
    const Dp45Result coarse = run_dp45(m, path, coarse_tol);
    Dp45Result fine = run_dp45(m, path, fine_tol);
    NumericSolution sol;
    for (std::size_t i = 0; i < path.size(); ++i) {
        sol.points.push_back(path[i].end());
        const double scale = std::max(1.0, max_abs(fine.values[i]));
        sol.error_estimate = std::max(sol.error_estimate, max_abs(fine.values[i] - coarse.values[i]) / scale);
    }
    sol.values = std::move(fine.values);
    sol.steps = coarse.steps + fine.steps;
    sol.rejected = coarse.rejected + fine.rejected;
    return sol;
}

int algebra_dimension(const std::vector<CMat>& matrices, int genus) {
    if (matrices.empty()) throw InputError("algebra_dimension needs at least one matrix");
    const int n = static_cast<int>(matrices.front().rows());
    constexpr double kThreshold = 1e-6;
    std::vector<Eigen::VectorXcd> basis;
    auto try_add = [&](const CMat& w) {
        Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(w.data(), n * n);
        const double nv = v.norm();
        if (nv == 0.0) return false;
        v /= nv;
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& q : basis) v -= q.dot(v) * q;
        const double r = v.norm();
        if (r <= kThreshold) return false;
        basis.push_back(v / r);
        return true;
    };
    std::vector<CMat> frontier{CMat::Identity(n, n)};
    try_add(frontier.front());
    for (int len = 1; len <= 2 * genus && !frontier.empty(); ++len) {
        std::vector<CMat> next;
        for (const auto& w : frontier)
            for (const auto& g : matrices) {
                CMat prod = w * g;
                if (try_add(prod)) next.push_back(std::move(prod));
            }
        frontier = std::move(next);
    }
    return static_cast<int>(basis.size());
}

MonodromyReport monodromy(const HyperellipticPencil& pencil, const ConnectionMatrix& cm, const RatMatrix& J,
                          double tol) {
    if (pencil.num_params != 1) throw InputError("monodromy requires a one-parameter pencil");
    MonodromyReport rep;
    rep.tol = tol;
    rep.plan = plan_paths(pencil);
    const NumericConnection conn(cm);
    std::vector<std::future<NumericSolution>> jobs;
    for (const auto& loop : rep.plan.loops) {
        jobs.push_back(std::async(std::launch::async,
                                  [conn, &loop, tol] { return integrate_connection(conn, loop.path, tol); }));
    }
    const int n = conn.dim();
    const CMat J0 = evaluate_numeric(J, rep.plan.basepoint);
    CMat prod = CMat::Identity(n, n);
    for (auto& job : jobs) {
        const NumericSolution sol = job.get();
        const CMat& g = sol.values.back();
        rep.matrices.push_back(g);
        rep.traces.push_back(g.trace());
        rep.error_estimate = std::max(rep.error_estimate, sol.error_estimate);
        rep.symplectic_defect =
            std::max(rep.symplectic_defect, max_abs(g.transpose() * J0 * g - J0) / std::max(1.0, max_abs(J0)));
        prod = prod * g;
    }
    rep.product_defect = max_abs(prod - CMat::Identity(n, n));
    rep.algebra_dimension = algebra_dimension(rep.matrices, pencil.genus);
    return rep;
}

IndependenceVerdict first_kind_independence(const HyperellipticPencil& pencil, const ConnectionMatrix& cm,
                                            int degree_bound, int npts, double tol) {
    if (pencil.num_params != 1) throw InputError("independence test requires a one-parameter pencil");
    if (degree_bound < 0) throw InputError("degree bound must be nonnegative");
    if (npts < 2) throw InputError("need at least two sample points");
    const int g = pencil.genus;
    const int n = 2 * g;
    const PathPlan plan = plan_paths(pencil);
    const cplx b = plan.basepoint;
    double r = 1.0;
    for (const auto& p : plan.singular_values) r = std::min(r, 0.5 * std::abs(p - b));

    // Out along the real direction, then a three-quarter arc around the basepoint.
    Path path{Segment::line(b, b + r)};
    const double sweep = 1.5 * kPi;
    for (int i = 1; i < npts; ++i) {
        path.push_back(Segment::arc(b, r, sweep * (i - 1) / (npts - 1), sweep * i / (npts - 1)));
    }
    const NumericConnection conn(cm);
    const NumericSolution sol = integrate_connection(conn, path, std::min(tol, 1e-12));

    IndependenceVerdict out;
    out.degree_bound = degree_bound;
    out.samples = sol.points;
    std::vector<CMat> ys = sol.values, dys;
    for (std::size_t i = 0; i < ys.size(); ++i) dys.push_back(ys[i] * conn.evaluate(sol.points[i]));

    auto relation_to_t = [&](const Eigen::VectorXcd& c, const Eigen::VectorXd& norms, int deg) {
        // c in the scaled basis z = (t - b) / r; expand into powers of t.
        out.y_coeffs.assign(static_cast<std::size_t>(g), std::vector<cplx>(static_cast<std::size_t>(deg) + 1));
        out.dy_coeffs = out.y_coeffs;
        for (int kind = 0; kind < 2; ++kind)
            for (int j = 0; j < g; ++j)
                for (int m = 0; m <= deg; ++m) {
                    const int col = (kind * g + j) * (deg + 1) + m;
                    const cplx a = c(col) / norms(col) / std::pow(cplx(r), m);
                    auto& dst = kind == 0 ? out.y_coeffs[j] : out.dy_coeffs[j];
                    // (t - b)^m = sum_k C(m,k) t^k (-b)^(m-k)
                    double binom = 1.0;
                    for (int k = 0; k <= m; ++k) {
                        dst[k] += a * binom * std::pow(-b, m - k);
                        binom = binom * (m - k) / (k + 1);
                    }
                }
        double big = 0.0;
        cplx lead = 1.0;
        for (const auto* v : {&out.y_coeffs, &out.dy_coeffs})
            for (const auto& row : *v)
                for (const auto& x : row)
                    if (std::abs(x) > big) {
                        big = std::abs(x);
                        lead = x;
                    }
        for (auto* v : {&out.y_coeffs, &out.dy_coeffs})
            for (auto& row : *v)
                for (auto& x : row) x /= lead;
    };

    const double noise_base = std::max(sol.error_estimate, 1e-15);
    for (int deg = 0; deg <= degree_bound; ++deg) {
        const int ncols = 2 * g * (deg + 1);
        const int nrows = static_cast<int>(ys.size()) * n;
        Eigen::MatrixXcd A(nrows, ncols);
        for (std::size_t s = 0; s < ys.size(); ++s) {
            const cplx z = (sol.points[s] - b) / r;
            for (int k = 0; k < n; ++k) {
                const int row = static_cast<int>(s) * n + k;
                for (int kind = 0; kind < 2; ++kind)
                    for (int j = 0; j < g; ++j) {
                        const cplx base = kind == 0 ? ys[s](k, j) : dys[s](k, j);
                        cplx zm = 1.0;
                        for (int m = 0; m <= deg; ++m) {
                            A(row, (kind * g + j) * (deg + 1) + m) = base * zm;
                            zm *= z;
                        }
                    }
            }
        }
        Eigen::VectorXd norms = A.colwise().norm().transpose();
        const double eta = noise_base * std::sqrt(static_cast<double>(ncols));
        out.noise_floor = eta;
        const double top = norms.maxCoeff();
        for (int col = 0; col < ncols; ++col) {
            if (norms(col) <= eta * top) {
                Eigen::VectorXcd c = Eigen::VectorXcd::Zero(ncols);
                c(col) = 1.0;
                Eigen::VectorXd unit = Eigen::VectorXd::Ones(ncols);
                relation_to_t(c, unit, deg);
                out.degree_found = deg;
                out.gap = norms(col) == 0.0 ? std::numeric_limits<double>::infinity() : top / norms(col);
                return out;
            }
        }
        for (int col = 0; col < ncols; ++col) A.col(col) /= norms(col);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeThinV);
        const Eigen::VectorXd sv = svd.singularValues();
        const double smin = sv(ncols - 1);
        if (smin >= kRankGap * eta) {
            out.gap = smin / eta;
            continue;
        }
        const double ratio = ncols > 1 ? sv(ncols - 2) / std::max(smin, 1e-300) : 0.0;
        if (ratio >= kRankGap) {
            relation_to_t(svd.matrixV().col(ncols - 1), norms, deg);
            out.degree_found = deg;
            out.gap = ratio;
            return out;
        }
        throw NumericInconclusive("inconclusive: increase Npts or precision");
    }
    out.independent = true;
    return out;
}

}  // namespace ksmap
