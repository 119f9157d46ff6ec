#include "ksmap/multipoly.hpp"

#include <algorithm>
#include <sstream>

#include "ksmap/errors.hpp"

namespace ksmap {

namespace {

constexpr std::uint64_t guard_mask() {
    std::uint64_t m = 0;
    for (int v = 0; v < kNumVars; ++v) {
        m |= std::uint64_t{1} << (Monomial::shift(v) + Monomial::kBits - 1);
    }
    return m;
}

constexpr std::uint64_t kGuard = guard_mask();

bool by_mono_desc(const MultiPoly::Term& a, const MultiPoly::Term& b) {
    return a.mono > b.mono;
}

}  // namespace

const VarNames& default_var_names() {
    static const VarNames names{"x", "t1", "t2", "l1", "l2"};
    return names;
}

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::var(int v, int exponent) {
    if (exponent < 0 || exponent > kMaxExponent) {
        throw AlgebraError("exponent out of range");
    }
    return Monomial(static_cast<std::uint64_t>(exponent) << shift(v));
}

Monomial Monomial::from_exponents(std::span<const int> exps) {
    Monomial m;
    for (int v = 0; v < static_cast<int>(exps.size()) && v < kNumVars; ++v) {
        m = m * var(v, exps[v]);
    }
    return m;
}

int Monomial::total_degree() const {
    int d = 0;
    for (int v = 0; v < kNumVars; ++v) d += exponent(v);
    return d;
}

bool Monomial::divides(Monomial other) const {
    for (int v = 0; v < kNumVars; ++v) {
        if (exponent(v) > other.exponent(v)) return false;
    }
    return true;
}

Monomial Monomial::with_exponent(int v, int e) const {
    const std::uint64_t cleared = bits_ & ~(kFieldMask << shift(v));
    return Monomial(cleared) * var(v, e);
}

Monomial Monomial::operator*(Monomial other) const {
    const std::uint64_t sum = bits_ + other.bits_;
    if (sum & kGuard) throw AlgebraError("monomial exponent overflow");
    return Monomial(sum);
}

Monomial Monomial::operator/(Monomial divisor) const {
    return Monomial(bits_ - divisor.bits_);
}

// ---------------------------------------------------------------------------
// MultiPoly basics

MultiPoly::MultiPoly(const BigRational& c) {
    if (sgn(c) != 0) terms_.push_back({Monomial{}, c});
}

MultiPoly MultiPoly::variable(int v) { return monomial(Monomial::var(v), 1); }

MultiPoly MultiPoly::monomial(Monomial m, const BigRational& c) {
    MultiPoly p;
    if (sgn(c) != 0) p.terms_.push_back({m, c});
    return p;
}

MultiPoly MultiPoly::from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), by_mono_desc);
    MultiPoly p;
    p.terms_.reserve(terms.size());
    for (auto& t : terms) {
        if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
            p.terms_.back().coef += t.coef;
        } else {
            if (!p.terms_.empty() && sgn(p.terms_.back().coef) == 0) p.terms_.pop_back();
            p.terms_.push_back(std::move(t));
        }
    }
    if (!p.terms_.empty() && sgn(p.terms_.back().coef) == 0) p.terms_.pop_back();
    return p;
}

bool MultiPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.front().mono.is_one());
}

BigRational MultiPoly::constant_value() const {
    if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coef;
    return 0;
}

int MultiPoly::degree(int v) const {
    if (terms_.empty()) return -1;
    int d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.exponent(v));
    return d;
}

int MultiPoly::min_degree(int v) const {
    if (terms_.empty()) return -1;
    int d = Monomial::kMaxExponent;
    for (const auto& t : terms_) d = std::min(d, t.mono.exponent(v));
    return d;
}

int MultiPoly::total_degree() const {
    if (terms_.empty()) return -1;
    int d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.total_degree());
    return d;
}

bool MultiPoly::depends_on(int v) const {
    return std::any_of(terms_.begin(), terms_.end(),
                       [v](const Term& t) { return t.mono.exponent(v) != 0; });
}

unsigned MultiPoly::var_mask() const {
    unsigned mask = 0;
    for (const auto& t : terms_) {
        for (int v = 0; v < kNumVars; ++v) {
            if (t.mono.exponent(v) != 0) mask |= 1u << v;
        }
    }
    return mask;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r = *this;
    for (auto& t : r.terms_) t.coef = -t.coef;
    return r;
}

namespace {

// Merge two sorted term lists: a + sign*b.
std::vector<MultiPoly::Term> merge_terms(const std::vector<MultiPoly::Term>& a,
                                         const std::vector<MultiPoly::Term>& b, bool subtract) {
    std::vector<MultiPoly::Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].mono > b[j].mono)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].mono > a[i].mono) {
            out.push_back({b[j].mono, subtract ? BigRational(-b[j].coef) : b[j].coef});
            ++j;
        } else {
            BigRational c = subtract ? BigRational(a[i].coef - b[j].coef)
                                     : BigRational(a[i].coef + b[j].coef);
            if (sgn(c) != 0) out.push_back({a[i].mono, std::move(c)});
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    if (o.terms_.empty()) return *this;
    terms_ = merge_terms(terms_, o.terms_, false);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
    if (o.terms_.empty()) return *this;
    terms_ = merge_terms(terms_, o.terms_, true);
    return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.terms_.size() == 1) return b.mul_monomial(a.terms_[0].mono, a.terms_[0].coef);
    if (b.terms_.size() == 1) return a.mul_monomial(b.terms_[0].mono, b.terms_[0].coef);
    std::vector<MultiPoly::Term> prod;
    prod.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& ta : a.terms_) {
        for (const auto& tb : b.terms_) {
            prod.push_back({ta.mono * tb.mono, ta.coef * tb.coef});
        }
    }
    return MultiPoly::from_terms(std::move(prod));
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) {
    *this = *this * o;
    return *this;
}

MultiPoly& MultiPoly::operator*=(const BigRational& c) {
    if (sgn(c) == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.coef *= c;
    return *this;
}

MultiPoly MultiPoly::mul_monomial(Monomial m, const BigRational& c) const {
    MultiPoly r;
    if (sgn(c) == 0) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coef * c});
    return r;
}

MultiPoly MultiPoly::pow(int e) const {
    if (e < 0) throw AlgebraError("negative power of a polynomial");
    MultiPoly result(1);
    MultiPoly base = *this;
    while (e > 0) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e > 0) base *= base;
    }
    return result;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
        if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coef != b.terms_[i].coef) {
            return false;
        }
    }
    return true;
}

MultiPoly MultiPoly::derivative(int v) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        const int e = t.mono.exponent(v);
        if (e == 0) continue;
        out.push_back({t.mono.with_exponent(v, e - 1), t.coef * e});
    }
    // Lowering one exponent keeps distinct monomials distinct and preserves order.
    MultiPoly r;
    r.terms_ = std::move(out);
    return r;
}

std::vector<MultiPoly> MultiPoly::coefficients_in(int v) const {
    std::vector<std::vector<Term>> buckets(static_cast<std::size_t>(std::max(degree(v), 0)) + 1);
    for (const auto& t : terms_) {
        const int e = t.mono.exponent(v);
        buckets[e].push_back({t.mono.with_exponent(v, 0), t.coef});
    }
    std::vector<MultiPoly> out;
    out.reserve(buckets.size());
    for (auto& b : buckets) {
        // Clearing one field of a lex-sorted list keeps it sorted within a bucket.
        MultiPoly p;
        p.terms_ = std::move(b);
        out.push_back(std::move(p));
    }
    if (terms_.empty()) out.clear();
    return out;
}

MultiPoly MultiPoly::from_coefficients(int v, const std::vector<MultiPoly>& coeffs) {
    std::vector<Term> all;
    for (std::size_t e = 0; e < coeffs.size(); ++e) {
        const Monomial m = Monomial::var(v, static_cast<int>(e));
        for (const auto& t : coeffs[e].terms_) all.push_back({t.mono * m, t.coef});
    }
    return from_terms(std::move(all));
}

MultiPoly MultiPoly::substitute(int v, const BigRational& value) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    const int maxdeg = std::max(degree(v), 0);
    std::vector<BigRational> powers(static_cast<std::size_t>(maxdeg) + 1);
    powers[0] = 1;
    for (int e = 1; e <= maxdeg; ++e) powers[e] = powers[e - 1] * value;
    for (const auto& t : terms_) {
        const int e = t.mono.exponent(v);
        out.push_back({t.mono.with_exponent(v, 0), t.coef * powers[e]});
    }
    return from_terms(std::move(out));
}

BigRational MultiPoly::evaluate(const std::array<BigRational, kNumVars>& point) const {
    BigRational sum = 0;
    for (const auto& t : terms_) {
        BigRational term = t.coef;
        for (int v = 0; v < kNumVars; ++v) {
            const int e = t.mono.exponent(v);
            for (int k = 0; k < e; ++k) term *= point[v];
        }
        sum += term;
    }
    return sum;
}

BigRational MultiPoly::make_integer_primitive() {
    if (terms_.empty()) return 1;
    BigInteger den_lcm = 1;
    BigInteger num_gcd = 0;
    for (const auto& t : terms_) {
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coef.get_den_mpz_t());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coef.get_num_mpz_t());
    }
    BigRational factor(den_lcm, num_gcd);
    factor.canonicalize();
    if (sgn(terms_.front().coef) < 0) factor = -factor;
    if (factor != 1) {
        for (auto& t : terms_) t.coef *= factor;
    }
    return factor;
}

MultiPoly MultiPoly::monic() const {
    if (terms_.empty()) return {};
    const BigRational inv = 1 / leading_coefficient();
    MultiPoly r = *this;
    r *= inv;
    return r;
}

std::string MultiPoly::to_string(const VarNames& names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        const bool negative = sgn(t.coef) < 0;
        const BigRational mag = abs(t.coef);
        if (first) {
            if (negative) os << '-';
        } else {
            os << (negative ? " - " : " + ");
        }
        first = false;
        std::string mono;
        for (int v = 0; v < kNumVars; ++v) {
            const int e = t.mono.exponent(v);
            if (e == 0) continue;
            if (!mono.empty()) mono += '*';
            mono += names[v];
            if (e > 1) mono += '^' + std::to_string(e);
        }
        if (mono.empty()) {
            os << mag.get_str();
        } else if (mag == 1) {
            os << mono;
        } else {
            os << mag.get_str() << '*' << mono;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Exact division

std::optional<MultiPoly> divide_exact(const MultiPoly& a, const MultiPoly& b) {
    if (b.is_zero()) throw AlgebraError("division by zero polynomial");
    if (a.is_zero()) return MultiPoly{};
    if (b.is_constant()) return a * BigRational(1 / b.constant_value());
    if (b.is_monomial()) {
        const auto& lt = b.leading_term();
        std::vector<MultiPoly::Term> out;
        out.reserve(a.size());
        const BigRational inv = 1 / lt.coef;
        for (const auto& t : a.terms()) {
            if (!lt.mono.divides(t.mono)) return std::nullopt;
            out.push_back({t.mono / lt.mono, t.coef * inv});
        }
        return MultiPoly::from_terms(std::move(out));
    }
    // Cheap rejections on degrees.
    for (int v = 0; v < kNumVars; ++v) {
        if (b.degree(v) > a.degree(v)) return std::nullopt;
        if (b.min_degree(v) > a.min_degree(v)) return std::nullopt;
    }
    const auto& blt = b.leading_term();
    const BigRational binv = 1 / blt.coef;
    MultiPoly rem = a;
    std::vector<MultiPoly::Term> quot;
    while (!rem.is_zero()) {
        const auto& rlt = rem.leading_term();
        if (!blt.mono.divides(rlt.mono)) return std::nullopt;
        const Monomial qm = rlt.mono / blt.mono;
        const BigRational qc = rlt.coef * binv;
        quot.push_back({qm, qc});
        rem -= b.mul_monomial(qm, qc);
    }
    return MultiPoly::from_terms(std::move(quot));
}

MultiPoly div_exact(const MultiPoly& a, const MultiPoly& b) {
    auto q = divide_exact(a, b);
    if (!q) throw AlgebraError("inexact polynomial division");
    return std::move(*q);
}

// ---------------------------------------------------------------------------
// gcd: recursive primitive PRS over Q[vars].

namespace {

using Coeffs = std::vector<MultiPoly>;

void trim(Coeffs& c) {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
}

MultiPoly monomial_gcd(const MultiPoly& mono, const MultiPoly& p) {
    std::array<int, kNumVars> e{};
    for (int v = 0; v < kNumVars; ++v) e[v] = mono.leading_term().mono.exponent(v);
    for (const auto& t : p.terms()) {
        for (int v = 0; v < kNumVars; ++v) e[v] = std::min(e[v], t.mono.exponent(v));
    }
    return MultiPoly::monomial(Monomial::from_exponents(e), 1);
}

MultiPoly coeffs_content(const Coeffs& c) {
    MultiPoly g;
    for (const auto& p : c) {
        if (p.is_zero()) continue;
        g = g.is_zero() ? p.monic() : gcd(g, p);
        if (g.is_constant()) return MultiPoly(1);
    }
    return g;
}

Coeffs coeffs_div(const Coeffs& c, const MultiPoly& d) {
    Coeffs out;
    out.reserve(c.size());
    for (const auto& p : c) out.push_back(div_exact(p, d));
    return out;
}

// Rescales a coefficient vector to integer coefficients with gcd 1.
void integer_normalize(Coeffs& c) {
    BigInteger den_lcm = 1, num_gcd = 0;
    for (const auto& p : c) {
        for (const auto& t : p.terms()) {
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coef.get_den_mpz_t());
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coef.get_num_mpz_t());
        }
    }
    if (num_gcd == 0 || (den_lcm == 1 && num_gcd == 1)) return;
    BigRational f(den_lcm, num_gcd);
    f.canonicalize();
    for (auto& p : c) p *= f;
}

// Sparse pseudo-remainder of a by b (both as coefficient vectors in one variable).
Coeffs pseudo_rem(Coeffs a, const Coeffs& b) {
    const std::size_t db = b.size() - 1;
    const MultiPoly& lcb = b.back();
    while (a.size() >= b.size()) {
        const std::size_t shift = a.size() - b.size();
        const MultiPoly lead = a.back();
        for (auto& p : a) p *= lcb;
        for (std::size_t i = 0; i <= db; ++i) a[i + shift] -= lead * b[i];
        trim(a);
    }
    return a;
}

MultiPoly prs_gcd(Coeffs a, Coeffs b, int v) {
    if (a.size() < b.size()) std::swap(a, b);
    integer_normalize(a);
    integer_normalize(b);
    while (true) {
        Coeffs r = pseudo_rem(a, b);
        if (r.empty()) return MultiPoly::from_coefficients(v, b);
        if (r.size() == 1) return MultiPoly(1);
        a = std::move(b);
        const MultiPoly c = coeffs_content(r);
        b = c.is_constant() ? std::move(r) : coeffs_div(r, c);
        integer_normalize(b);
    }
}

}  // namespace

MultiPoly content_in(const MultiPoly& a, int v) { return coeffs_content(a.coefficients_in(v)); }

MultiPoly gcd(const MultiPoly& a, const MultiPoly& b) {
    if (a.is_zero() && b.is_zero()) throw AlgebraError("gcd undefined");
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.is_constant() || b.is_constant()) return MultiPoly(1);
    if (a == b) return a.monic();
    if (a.is_monomial()) return monomial_gcd(a, b);
    if (b.is_monomial()) return monomial_gcd(b, a);

    const unsigned ma = a.var_mask();
    const unsigned mb = b.var_mask();
    // A variable present in only one operand cannot occur in the gcd.
    for (int v = 0; v < kNumVars; ++v) {
        const unsigned bit = 1u << v;
        if ((ma & bit) && !(mb & bit)) return gcd(content_in(a, v), b);
        if ((mb & bit) && !(ma & bit)) return gcd(a, content_in(b, v));
    }
    // Main variable: the shared one of smallest degree keeps the PRS short.
    int main_var = -1;
    int best = 0;
    for (int v = 0; v < kNumVars; ++v) {
        if (!(ma & (1u << v))) continue;
        const int d = std::max(a.degree(v), b.degree(v));
        if (main_var < 0 || d < best) {
            main_var = v;
            best = d;
        }
    }
    Coeffs ca = a.coefficients_in(main_var);
    Coeffs cb = b.coefficients_in(main_var);
    const MultiPoly conta = coeffs_content(ca);
    const MultiPoly contb = coeffs_content(cb);
    if (!conta.is_constant()) ca = coeffs_div(ca, conta);
    if (!contb.is_constant()) cb = coeffs_div(cb, contb);
    const MultiPoly cont = gcd(conta, contb);
    MultiPoly g = prs_gcd(std::move(ca), std::move(cb), main_var);
    if (!g.is_constant()) {
        const MultiPoly gc = content_in(g, main_var);
        if (!gc.is_constant()) g = div_exact(g, gc);
    }
    return (cont * g).monic();
}

}  // namespace ksmap
