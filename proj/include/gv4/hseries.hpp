#pragma once

// Truncated Taylor series in the residue variable h with RatFunc
// coefficients; the engine behind Res_{h=0} of the localization formulas.

#include "gv4/ratfunc.hpp"

#include <vector>

namespace gv4 {

struct HSeries {
    int order = 0;                // coefficients for h^0 .. h^order
    std::vector<RatFunc> c;      // size order + 1

    static HSeries zero(int order) {
        HSeries s;
        s.order = order;
        s.c.assign(static_cast<std::size_t>(order) + 1, RatFunc::zero());
        return s;
    }
    static HSeries one(int order) {
        HSeries s = zero(order);
        s.c[0] = RatFunc::one();
        return s;
    }
};

// (a*lam1 + b*lam2 + h)^exponent expanded about h = 0:
//   sum_j C(exponent, j) * base^(exponent - j) * h^j
// with exact generalized binomial coefficients.  The base must be nonzero.
inline HSeries hseries_from_factor(long a, long b, int exponent, int order) {
    if (a == 0 && b == 0)
        throw math_error("HSeries: zero base form");
    auto [content, f] = LinForm::split_int(a, b);
    HSeries s = HSeries::zero(order);
    for (int j = 0; j <= order; ++j) {
        BigRat bc = gen_binom(exponent, j);
        if (bc.is_zero())
            continue; // exponent >= 0 and j > exponent
        int e = exponent - j;
        s.c[j] = ratfunc_mul(RatFunc::from_rat(bc * BigRat(content).pow(e)),
                             ratfunc_form_pow(f, e));
    }
    return s;
}

inline HSeries hseries_mul(const HSeries& x, const HSeries& y) {
    HSeries out = HSeries::zero(std::min(x.order, y.order));
    for (int i = 0; i <= out.order; ++i) {
        if (x.c[i].is_zero())
            continue;
        for (int j = 0; i + j <= out.order; ++j) {
            if (y.c[j].is_zero())
                continue;
            out.c[i + j] = ratfunc_add(out.c[i + j], ratfunc_mul(x.c[i], y.c[j]));
        }
    }
    return out;
}

inline const RatFunc& hseries_coeff(const HSeries& x, int j) {
    if (j < 0 || j > x.order)
        throw input_error("HSeries: coefficient index out of range");
    return x.c[static_cast<std::size_t>(j)];
}

} // namespace gv4
