#include "ksmap/factor.hpp"

#include <algorithm>

#include "ksmap/errors.hpp"

namespace ksmap {

namespace {

std::vector<BigInteger> positive_divisors(BigInteger n) {
    if (n < 0) n = -n;
    if (n == 0) throw AlgebraError("divisors of zero");
    // Trial factorization; a large leftover cofactor is treated as prime.
    std::vector<std::pair<BigInteger, int>> primes;
    for (BigInteger d = 2; d * d <= n && d < 1000000; ++d) {
        if (n % d != 0) continue;
        int e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        primes.emplace_back(d, e);
    }
    if (n > 1) primes.emplace_back(n, 1);
    std::vector<BigInteger> divs{1};
    for (const auto& [p, e] : primes) {
        const std::size_t base = divs.size();
        BigInteger pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

// Integer coefficient vector (index = power of v) of a univariate polynomial.
std::vector<BigInteger> integer_coeffs(const MultiPoly& p, int v) {
    for (int w = 0; w < kNumVars; ++w) {
        if (w != v && p.depends_on(w)) throw AlgebraError("polynomial is not univariate");
    }
    MultiPoly q = p;
    q.make_integer_primitive();
    std::vector<BigInteger> out;
    for (const auto& c : q.coefficients_in(v)) out.push_back(c.constant_value().get_num());
    return out;
}

BigRational horner(const std::vector<BigInteger>& c, const BigRational& x) {
    BigRational acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + BigRational(*it);
    return acc;
}

MultiPoly linear_factor(int v, const BigRational& r) {
    // den*v - num, integer primitive.
    MultiPoly f = MultiPoly::variable(v) * BigRational(r.get_den()) - MultiPoly(BigRational(r.get_num()));
    f.make_integer_primitive();
    return f;
}

void yun(const MultiPoly& p, int v, std::vector<MultiPoly>& out) {
    const MultiPoly dp = p.derivative(v);
    const MultiPoly b = gcd(p, dp);
    MultiPoly c = div_exact(p, b);
    MultiPoly d = div_exact(dp, b) - c.derivative(v);
    while (!c.is_constant()) {
        const MultiPoly a = gcd(c, d);
        if (!a.is_constant()) out.push_back(a);
        c = div_exact(c, a);
        d = div_exact(d, a) - c.derivative(v);
    }
}

void squarefree_rec(const MultiPoly& p, std::vector<MultiPoly>& out) {
    if (p.is_zero() || p.is_constant()) return;
    int v = 0;
    while (!p.depends_on(v)) ++v;
    const MultiPoly c = content_in(p, v);
    squarefree_rec(c, out);
    yun(c.is_constant() ? p : div_exact(p, c), v, out);
}

}  // namespace

std::vector<BigRational> rational_roots(const MultiPoly& p, int v) {
    if (p.is_zero()) throw AlgebraError("roots of the zero polynomial");
    std::vector<BigInteger> c = integer_coeffs(p, v);
    std::vector<BigRational> roots;
    std::size_t shift = 0;
    while (shift < c.size() && c[shift] == 0) ++shift;
    if (shift > 0) {
        roots.emplace_back(0);
        c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(shift));
    }
    if (c.size() >= 2) {
        const auto nums = positive_divisors(c.front());
        const auto dens = positive_divisors(c.back());
        for (const auto& q : dens) {
            for (const auto& a : nums) {
                for (int s : {1, -1}) {
                    BigRational r(a * s, q);
                    r.canonicalize();
                    if (r.get_den() != q) continue;  // seen with a smaller denominator
                    if (horner(c, r) == 0) roots.push_back(r);
                }
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

std::vector<MultiPoly> squarefree_factors(const MultiPoly& p) {
    std::vector<MultiPoly> raw;
    squarefree_rec(p, raw);
    std::vector<MultiPoly> out;
    for (MultiPoly f : raw) {
        int vars = 0, v = 0;
        for (int w = 0; w < kNumVars; ++w) {
            if (f.depends_on(w)) {
                ++vars;
                v = w;
            }
        }
        if (vars == 1 && f.degree(v) > 1) {
            for (const auto& r : rational_roots(f, v)) {
                const MultiPoly l = linear_factor(v, r);
                out.push_back(l);
                f = div_exact(f, l);
            }
        }
        if (!f.is_constant()) {
            f.make_integer_primitive();
            out.push_back(f);
        }
    }
    std::sort(out.begin(), out.end(), [](const MultiPoly& a, const MultiPoly& b) {
        if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
        return a.to_string() < b.to_string();
    });
    return out;
}

std::vector<MultiPoly> factor_univariate(const MultiPoly& p, int v) {
    if (p.is_zero()) throw AlgebraError("factorization of the zero polynomial");
    std::vector<MultiPoly> out;
    MultiPoly rest = p.monic();
    for (const auto& r : rational_roots(rest, v)) {
        const MultiPoly l = MultiPoly::variable(v) - MultiPoly(r);
        out.push_back(l);
        rest = div_exact(rest, l);
    }
    const int deg = rest.degree(v);
    if (deg <= 0) return out;
    if (deg <= 3) {
        out.push_back(rest.monic());
        return out;
    }
    if (deg > 4) throw AlgebraError("factorization above degree 4 unsupported");
    // Kronecker: a quadratic factor is fixed by its values at 0, 1, -1, which
    // divide the values of the quartic there (nonzero since there is no rational root).
    const std::vector<BigInteger> c = integer_coeffs(rest, v);
    const BigRational r0 = horner(c, 0), r1 = horner(c, 1), rm = horner(c, -1);
    const auto d0s = positive_divisors(r0.get_num());
    const auto d1s = positive_divisors(r1.get_num());
    const auto dms = positive_divisors(rm.get_num());
    const MultiPoly x = MultiPoly::variable(v);
    for (const auto& d0 : d0s) {
        for (const auto& d1a : d1s) {
            for (int s1 : {1, -1}) {
                for (const auto& dma : dms) {
                    for (int sm : {1, -1}) {
                        const BigInteger d1 = d1a * s1, dm = dma * sm;
                        const BigInteger a2 = d1 + dm - 2 * d0;
                        const BigInteger b2 = d1 - dm;
                        if (a2 == 0 || a2 % 2 != 0 || b2 % 2 != 0) continue;
                        const MultiPoly q = x * x * BigRational(a2 / 2) + x * BigRational(b2 / 2) +
                                            MultiPoly(BigRational(d0));
                        if (auto quo = divide_exact(rest, q)) {
                            out.push_back(q.monic());
                            out.push_back(quo->monic());
                            return out;
                        }
                    }
                }
            }
        }
    }
    out.push_back(rest.monic());
    return out;
}

}  // namespace ksmap
