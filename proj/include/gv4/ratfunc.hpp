#pragma once

// Rational functions in (lam1, lam2) with factored denominators.
//
// Canonical form: scalar * N / prod f_i^{m_i}, where
//   - N is a primitive integer polynomial with positive leading coefficient
//     (leading = lexicographically largest exponent pair),
//   - the f_i are distinct primitive linear forms, none dividing N,
//   - zero is scalar 0, numerator 1, empty denominator.
//
// All denominators arising from the localization formulas are products of
// linear forms, so cancellation is trial division only; no bivariate GCD.

#include "gv4/poly.hpp"

#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

namespace gv4 {

class RatFunc {
public:
    using Denom = std::map<LinForm, int>; // form -> multiplicity >= 1

    RatFunc() : scalar_(0), num_(Poly2::one()) {}

    static RatFunc zero() { return RatFunc(); }
    static RatFunc one() { return from_rat(BigRat(1)); }
    static RatFunc from_rat(const BigRat& c) {
        return make(c, Poly2::one(), {});
    }
    static RatFunc make(BigRat scalar, Poly2 num, Denom den) {
        RatFunc r;
        r.scalar_ = std::move(scalar);
        r.num_ = std::move(num);
        r.den_ = std::move(den);
        r.normalize();
        return r;
    }

    bool is_zero() const { return scalar_.is_zero(); }

    const BigRat& scalar() const { return scalar_; }
    const Poly2& num() const { return num_; }
    const Denom& den() const { return den_; }

    Poly2 den_expanded() const {
        Poly2 p = Poly2::one();
        for (const auto& [f, m] : den_)
            p *= Poly2::form(f).pow(m);
        return p;
    }

    friend bool operator==(const RatFunc& x, const RatFunc& y) {
        return x.scalar_ == y.scalar_ && x.num_ == y.num_ && x.den_ == y.den_;
    }

    // "scalar * (num) / (form)^mult*..." with terms in descending exponent
    // order and denominator factors in ascending form order.
    std::string str() const {
        if (is_zero())
            return "0";
        std::string out = scalar_.str() + " * (" + num_.str() + ")";
        if (!den_.empty()) {
            out += " / ";
            bool first = true;
            for (const auto& [f, m] : den_) {
                if (!first)
                    out += "*";
                first = false;
                out += "(" + f.str() + ")^" + std::to_string(m);
            }
        }
        return out;
    }

private:
    BigRat scalar_;
    Poly2 num_;
    Denom den_;

    void normalize() {
        if (scalar_.is_zero() || num_.is_zero()) {
            scalar_ = BigRat(0);
            num_ = Poly2::one();
            den_.clear();
            return;
        }
        BigRat c = num_.signed_content();
        scalar_ *= c;
        num_ = num_.divided_by(c);
        for (auto it = den_.begin(); it != den_.end();) {
            if (it->second < 0)
                throw math_error("RatFunc: negative denominator multiplicity");
            while (it->second > 0) {
                auto q = num_.div_exact(it->first);
                if (!q)
                    break;
                // primitive / primitive stays primitive with positive leading
                // coefficient (Gauss), so no content re-extraction is needed
                num_ = std::move(*q);
                --it->second;
            }
            it = it->second == 0 ? den_.erase(it) : std::next(it);
        }
    }
};

// c * lam1^e1 * lam2^e2 * lam3^e3 with lam3 = -(lam1 + lam2) substituted at
// construction: a negative e3 contributes the primitive form (1,1) to the
// denominator and a sign (-1)^e3 to the scalar.
inline RatFunc ratfunc_from_monomial(const BigRat& c, int e1, int e2, int e3) {
    BigRat scalar = c;
    Poly2 num = Poly2::one();
    RatFunc::Denom den;
    if (e1 >= 0)
        num *= Poly2::monomial(BigRat(1), e1, 0);
    else
        den[LinForm{1, 0}] += -e1;
    if (e2 >= 0)
        num *= Poly2::monomial(BigRat(1), 0, e2);
    else
        den[LinForm{0, 1}] += -e2;
    if (e3 % 2 != 0)
        scalar = -scalar;
    if (e3 >= 0)
        num *= Poly2::form(LinForm{1, 1}).pow(e3);
    else
        den[LinForm{1, 1}] += -e3;
    return RatFunc::make(std::move(scalar), std::move(num), std::move(den));
}

// (primitive form)^e as a RatFunc, e of either sign.
inline RatFunc ratfunc_form_pow(const LinForm& f, int e) {
    if (e >= 0)
        return RatFunc::make(BigRat(1), Poly2::form(f).pow(e), {});
    return RatFunc::make(BigRat(1), Poly2::one(), {{f, -e}});
}

inline RatFunc ratfunc_add(const RatFunc& x, const RatFunc& y) {
    if (x.is_zero())
        return y;
    if (y.is_zero())
        return x;
    // least common denominator over the factored multisets
    RatFunc::Denom lcd = x.den();
    for (const auto& [f, m] : y.den()) {
        int& slot = lcd[f];
        slot = std::max(slot, m);
    }
    auto cofactor = [&](const RatFunc& r) {
        Poly2 p = Poly2::constant(r.scalar()) * r.num();
        for (const auto& [f, m] : lcd) {
            auto it = r.den().find(f);
            int have = it == r.den().end() ? 0 : it->second;
            if (m > have)
                p *= Poly2::form(f).pow(m - have);
        }
        return p;
    };
    Poly2 num = cofactor(x) + cofactor(y); // before lcd is moved from
    return RatFunc::make(BigRat(1), std::move(num), std::move(lcd));
}

inline RatFunc ratfunc_neg(const RatFunc& x) {
    return RatFunc::make(-x.scalar(), x.num(), x.den());
}

inline RatFunc ratfunc_sub(const RatFunc& x, const RatFunc& y) {
    return ratfunc_add(x, ratfunc_neg(y));
}

inline RatFunc ratfunc_mul(const RatFunc& x, const RatFunc& y) {
    if (x.is_zero() || y.is_zero())
        return RatFunc::zero();
    RatFunc::Denom den = x.den();
    for (const auto& [f, m] : y.den())
        den[f] += m;
    return RatFunc::make(x.scalar() * y.scalar(), x.num() * y.num(), std::move(den));
}

namespace detail {

// Factor a primitive integer polynomial with positive leading coefficient
// into primitive linear forms (monomial factors stripped first, then
// rational-root extraction on the dehomogenization).  Fails on anything
// with a nonlinear irreducible factor; such numerators never arise from
// the localization formulas.
inline RatFunc::Denom factor_linear(Poly2 p) {
    RatFunc::Denom out;
    if (p.is_constant()) {
        if (!(p.coeff(0, 0) == BigRat(1)))
            throw math_error("RatFunc: factor_linear expects a primitive polynomial");
        return out;
    }
    int min1 = INT32_MAX, min2 = INT32_MAX;
    for (const auto& [e, c] : p.terms()) {
        min1 = std::min(min1, e.e1);
        min2 = std::min(min2, e.e2);
    }
    for (int s = 0; s < min1; ++s)
        p = *p.div_exact(LinForm{1, 0});
    for (int s = 0; s < min2; ++s)
        p = *p.div_exact(LinForm{0, 1});
    if (min1 > 0)
        out[LinForm{1, 0}] = min1;
    if (min2 > 0)
        out[LinForm{0, 1}] = min2;
    if (p.is_constant())
        return out;
    if (!p.is_homogeneous())
        throw math_error("RatFunc: cannot invert, numerator is not a product of linear forms");
    // roots t = r/s of p(t, 1) give factors s*lam1 - r*lam2
    const int d = p.total_degree();
    mpz_class c0 = p.coeff(0, d).num();
    mpz_class cd = p.coeff(d, 0).num();
    auto divisors = [](mpz_class n) {
        n = abs(n);
        if (!n.fits_slong_p())
            throw math_error("RatFunc: numerator too large to factor");
        long v = n.get_si();
        std::vector<long> ds;
        for (long i = 1; i * i <= v; ++i)
            if (v % i == 0) {
                ds.push_back(i);
                if (i != v / i)
                    ds.push_back(v / i);
            }
        return ds;
    };
    for (long r : divisors(c0)) {
        for (long s : divisors(cd)) {
            if (std::gcd(r, s) != 1)
                continue;
            for (long sign : {1L, -1L}) {
                LinForm f = LinForm::make(s, -sign * r);
                while (true) {
                    auto q = p.div_exact(f);
                    if (!q)
                        break;
                    ++out[f];
                    p = std::move(*q);
                }
            }
        }
    }
    if (!p.is_constant())
        throw math_error("RatFunc: cannot invert, numerator has a nonlinear factor");
    return out;
}

inline RatFunc invert(const RatFunc& x) {
    if (x.is_zero())
        throw math_error("division by zero in pow(x, n<0)");
    return RatFunc::make(x.scalar().inv(), x.den_expanded(), detail::factor_linear(x.num()));
}

} // namespace detail

inline RatFunc ratfunc_pow(const RatFunc& x, int n) {
    if (n == 0)
        return RatFunc::one();
    RatFunc base = n < 0 ? detail::invert(x) : x;
    unsigned k = n < 0 ? static_cast<unsigned>(-(long)n) : static_cast<unsigned>(n);
    RatFunc out = RatFunc::one();
    while (k) {
        if (k & 1)
            out = ratfunc_mul(out, base);
        if (k >>= 1)
            base = ratfunc_mul(base, base);
    }
    return out;
}

inline BigRat ratfunc_eval(const RatFunc& x, const BigRat& p1, const BigRat& p2) {
    BigRat den(1);
    for (const auto& [f, m] : x.den()) {
        BigRat v = f.eval(p1, p2);
        if (v.is_zero())
            throw math_error("RatFunc: pole at evaluation point, form (" + f.str() + ") vanishes");
        den *= v.pow(m);
    }
    return x.scalar() * x.num().eval(p1, p2) / den;
}

namespace detail {

// Deterministic sample points for the randomized equality fast path:
// numerators/denominators bounded by 10^6, rejecting denominator zeros.
// Exact cross-multiplied comparison stays the deciding authority.
inline bool eval_mismatch(const RatFunc& x, const RatFunc& y) {
    std::uint64_t state = 0x9e3779b97f4a7c15ull;
    auto next = [&state] {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    };
    for (int attempt = 0; attempt < 4; ++attempt) {
        BigRat p1(static_cast<long>(next() % 1999999) - 999999, static_cast<long>(next() % 999999) + 1);
        BigRat p2(static_cast<long>(next() % 1999999) - 999999, static_cast<long>(next() % 999999) + 1);
        auto bad = [&](const RatFunc& r) {
            for (const auto& [f, m] : r.den())
                if (f.eval(p1, p2).is_zero())
                    return true;
            return false;
        };
        if (bad(x) || bad(y))
            continue;
        return !(ratfunc_eval(x, p1, p2) == ratfunc_eval(y, p1, p2));
    }
    return false;
}

} // namespace detail

inline bool ratfunc_eq(const RatFunc& x, const RatFunc& y) {
    if (x == y)
        return true; // canonical representations match
    if (detail::eval_mismatch(x, y))
        return false;
    // cross-multiplied polynomial comparison over the least common denominator
    RatFunc::Denom lcd = x.den();
    for (const auto& [f, m] : y.den()) {
        int& slot = lcd[f];
        slot = std::max(slot, m);
    }
    auto lift = [&](const RatFunc& r) {
        Poly2 p = Poly2::constant(r.scalar()) * r.num();
        for (const auto& [f, m] : lcd) {
            auto it = r.den().find(f);
            int have = it == r.den().end() ? 0 : it->second;
            if (m > have)
                p *= Poly2::form(f).pow(m - have);
        }
        return p;
    };
    return lift(x) == lift(y);
}

// lam1 -> m11*lam1 + m12*lam2, lam2 -> m21*lam1 + m22*lam2; the matrix must
// be invertible so denominator forms map to nonzero forms.
inline RatFunc ratfunc_subst_linear(const RatFunc& x,
                                    const BigRat& m11, const BigRat& m12,
                                    const BigRat& m21, const BigRat& m22) {
    if ((m11 * m22 - m12 * m21).is_zero())
        throw input_error("RatFunc: substitution matrix is singular");
    if (x.is_zero())
        return x;
    BigRat scalar = x.scalar();
    RatFunc::Denom den;
    for (const auto& [f, m] : x.den()) {
        auto [s, g] = LinForm::split(BigRat(f.a) * m11 + BigRat(f.b) * m21,
                                     BigRat(f.a) * m12 + BigRat(f.b) * m22);
        scalar /= s.pow(m);
        den[g] += m;
    }
    return RatFunc::make(std::move(scalar), x.num().subst_linear(m11, m12, m21, m22), std::move(den));
}

inline RatFunc operator+(const RatFunc& x, const RatFunc& y) { return ratfunc_add(x, y); }
inline RatFunc operator-(const RatFunc& x, const RatFunc& y) { return ratfunc_sub(x, y); }
inline RatFunc operator*(const RatFunc& x, const RatFunc& y) { return ratfunc_mul(x, y); }
inline RatFunc operator-(const RatFunc& x) { return ratfunc_neg(x); }

} // namespace gv4
