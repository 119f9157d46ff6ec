#include "ksmap/ranks.hpp"

#include "ksmap/errors.hpp"
#include "ksmap/factor.hpp"

namespace ksmap {

RankR rank_r(const HyperellipticPencil& pencil, const std::vector<ConnectionMatrix>& cms) {
    const int g = pencil.genus;
    const int n = 2 * g;
    std::vector<RatVector> basis;
    for (int j = 0; j < g; ++j) {
        RatVector v(static_cast<std::size_t>(n));
        v[j] = 1;
        basis.push_back(std::move(v));
    }
    RankR out;
    int dim = g;
    for (int iter = 0;; ++iter) {
        if (iter >= n) throw InvariantViolation("D-span did not stabilize within 2g iterations");
        std::vector<RatVector> grown = basis;
        for (const auto& v : basis) {
            for (const auto& cm : cms) {
                RatVector w = cm.m * v;
                const int var = param_var(cm.parameter_index);
                for (int k = 0; k < n; ++k) w[k] += v[k].derivative(var);
                grown.push_back(w);
                if (rank(RatMatrix::from_columns(grown)) == static_cast<int>(grown.size())) continue;
                grown.pop_back();
            }
        }
        const int new_dim = static_cast<int>(grown.size());
        if (new_dim == dim) break;
        basis = std::move(grown);
        dim = new_dim;
        ++out.steps;
    }
    out.d_span_dimension = dim;
    out.r = dim - g;
    return out;
}

int rank_rprime(const std::vector<RatMatrix>& blocks) {
    if (blocks.empty()) return 0;
    RatMatrix cat = blocks.front();
    for (std::size_t i = 1; i < blocks.size(); ++i) cat = cat.hconcat(blocks[i]);
    return rank(cat);
}

int rank_rdoubleprime(const std::vector<RatMatrix>& blocks) {
    if (blocks.empty()) return 0;
    if (blocks.size() > static_cast<std::size_t>(kMaxParams)) throw InputError("at most 2 parameters are supported");
    RatMatrix sum(blocks.front().rows(), blocks.front().cols());
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        sum = sum + MultiRational::variable(lambda_var(static_cast<int>(i))) * blocks[i];
    }
    return rank(sum);
}

RankReport rank_report(const HyperellipticPencil& pencil, const std::vector<ConnectionMatrix>& cms) {
    RankReport rep;
    rep.g = pencil.genus;
    std::vector<RatMatrix> blocks;
    for (const auto& cm : cms) blocks.push_back(kodaira_spencer_block(cm));
    const RankR rr = rank_r(pencil, cms);
    rep.r = rr.r;
    rep.d_span_dimension = rr.d_span_dimension;
    rep.stabilization_steps = rr.steps;
    rep.r_prime = rank_rprime(blocks);
    rep.r_doubleprime = rank_rdoubleprime(blocks);
    bool all_zero = true;
    for (const auto& b : blocks) all_zero = all_zero && b.is_zero();
    rep.isotrivial = all_zero;
    return rep;
}

int quadratic_form_rank(const RatMatrix& sym) {
    if (!sym.is_symmetric()) throw AlgebraError("quadratic form matrix is not symmetric");
    RatMatrix a = sym;
    const int n = a.rows();
    int r = 0;
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    while (true) {
        int p = -1;
        for (int i = 0; i < n && p < 0; ++i)
            if (!used[i] && !a(i, i).is_zero()) p = i;
        if (p < 0) {
            // No usable diagonal entry: e_i + e_j has value 2 a_ij.
            int pi = -1, pj = -1;
            for (int i = 0; i < n && pi < 0; ++i) {
                if (used[i]) continue;
                for (int j = i + 1; j < n; ++j) {
                    if (!used[j] && !a(i, j).is_zero()) {
                        pi = i;
                        pj = j;
                        break;
                    }
                }
            }
            if (pi < 0) break;
            for (int k = 0; k < n; ++k) a(pi, k) += a(pj, k);
            for (int k = 0; k < n; ++k) a(k, pi) += a(k, pj);
            p = pi;
        }
        const MultiRational inv = a(p, p).inverse();
        for (int i = 0; i < n; ++i) {
            if (i == p || used[i] || a(i, p).is_zero()) continue;
            const MultiRational f = a(i, p) * inv;
            for (int k = 0; k < n; ++k)
                if (!a(p, k).is_zero()) a(i, k) -= f * a(p, k);
            for (int k = 0; k < n; ++k)
                if (!a(k, p).is_zero()) a(k, i) -= f * a(k, p);
        }
        for (int k = 0; k < n; ++k) {
            if (k != p) {
                a(p, k) = MultiRational();
                a(k, p) = MultiRational();
            }
        }
        used[p] = true;
        ++r;
    }
    return r;
}

RatMatrix evaluate_at_matrix(const MultiPoly& q, const RatMatrix& e) {
    const int n = e.rows();
    RatMatrix acc(n, n);
    const auto cs = q.coefficients_in(kVarX);
    for (auto it = cs.rbegin(); it != cs.rend(); ++it) {
        acc = acc * e + MultiRational(*it) * RatMatrix::identity(n);
    }
    return acc;
}

namespace {

MultiPoly minimal_polynomial(const RatMatrix& e) {
    const int n = e.rows();
    std::vector<RatVector> powers;
    RatMatrix p = RatMatrix::identity(n);
    for (int k = 0; k <= n; ++k) {
        RatVector flat;
        flat.reserve(static_cast<std::size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) flat.push_back(p(i, j));
        powers.push_back(std::move(flat));
        const auto ker = kernel_basis(RatMatrix::from_columns(powers));
        if (!ker.empty()) {
            const RatVector& c = ker.front();
            const MultiRational lead = c.back();
            std::vector<MultiPoly> coeffs;
            for (const auto& x : c) {
                const MultiRational y = x / lead;
                if (!y.is_constant()) throw InputError("minimal polynomial depends on the parameters");
                coeffs.emplace_back(y.constant_value());
            }
            return MultiPoly::from_coefficients(kVarX, coeffs);
        }
        p = p * e;
    }
    throw InvariantViolation("no minimal polynomial found");
}

}  // namespace

EndoDecomposition endo_decompose(const HyperellipticPencil& pencil, const RatMatrix& e,
                                 const std::vector<ConnectionMatrix>& cms) {
    const int g = pencil.genus;
    const int n = 2 * g;
    if (e.rows() != n || e.cols() != n) throw InputError("endomorphism must be a 2g x 2g matrix");
    for (const auto& cm : cms) {
        const RatMatrix de = e.derivative(param_var(cm.parameter_index));
        if (!(de == e * cm.m - cm.m * e)) throw InputError("not an endomorphism of (ℋ,∇)");
    }
    if (!e.block(g, 0, g, g).is_zero()) throw InputError("endomorphism does not preserve the first-kind subspace");

    EndoDecomposition out;
    out.e = e;
    out.minpoly = minimal_polynomial(e);
    if (!gcd(out.minpoly, out.minpoly.derivative(kVarX)).is_constant()) {
        throw InputError("non-semisimple endomorphism unsupported");
    }
    RatMatrix bottom(g, n);
    for (int i = 0; i < g; ++i) bottom(i, g + i) = 1;
    int total = 0;
    for (const auto& q : factor_univariate(out.minpoly, kVarX)) {
        const int deg = q.degree(kVarX);
        const RatMatrix qe = evaluate_at_matrix(q, e);
        const int dim_k = n - rank(qe);
        const auto omega_part = kernel_basis(qe.vconcat(bottom));
        const int dim_ko = static_cast<int>(omega_part.size());
        if (dim_k % deg != 0 || dim_ko % deg != 0) {
            throw InvariantViolation("component dimension not divisible by the factor degree");
        }
        // Each component must be nabla-stable.
        for (const auto& v : kernel_basis(qe)) {
            for (const auto& cm : cms) {
                RatVector w = cm.m * v;
                for (int k = 0; k < n; ++k) w[k] += v[k].derivative(param_var(cm.parameter_index));
                for (const auto& x : qe * w) {
                    if (!x.is_zero()) throw InvariantViolation("component is not nabla-stable");
                }
            }
        }
        EndoFactor f;
        f.q = q;
        f.component_dim = dim_k / deg;
        f.r_lambda = dim_ko / deg;
        f.s_lambda = f.component_dim - f.r_lambda;
        if (!omega_part.empty() && !cms.empty()) {
            std::vector<RatVector> tops;
            for (const auto& v : omega_part) tops.emplace_back(v.begin(), v.begin() + g);
            const RatMatrix W = RatMatrix::from_columns(tops);
            RatMatrix cat = kodaira_spencer_block(cms.front()) * W;
            for (std::size_t i = 1; i < cms.size(); ++i) cat = cat.hconcat(kodaira_spencer_block(cms[i]) * W);
            f.ks_rank = rank(cat);
        }
        total += dim_k;
        out.factors.push_back(std::move(f));
    }
    if (total != n) throw InvariantViolation("components do not fill the de Rham bundle");
    return out;
}

bool restricted_pem_check(const EndoDecomposition& d) {
    if (d.factors.empty()) throw InputError("empty decomposition");
    for (const auto& f : d.factors)
        if (f.r_lambda != f.s_lambda) return false;
    return true;
}

}  // namespace ksmap
