#pragma once

// Bivariate polynomials over BigRat in (lam1, lam2) and primitive integer
// linear forms a*lam1 + b*lam2.  lam3 never appears as a stored variable:
// anything mentioning it is substituted via lam3 = -(lam1 + lam2) upstream.

#include "gv4/rational.hpp"

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <utility>

namespace gv4 {

// Primitive linear form: gcd(|a|, |b|) = 1 and (a > 0 or (a = 0 and b > 0)).
// The zero form is not representable.
struct LinForm {
    long a = 1;
    long b = 0;

    auto operator<=>(const LinForm&) const = default;

    // Normalizes an arbitrary nonzero integer form; content is discarded.
    static LinForm make(long a, long b) { return split_int(a, b).second; }

    // a*lam1 + b*lam2 = scalar * primitive; scalar carries sign and content.
    static std::pair<long, LinForm> split_int(long a, long b) {
        if (a == 0 && b == 0)
            throw math_error("LinForm: zero form");
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), mpz_class(a).get_mpz_t(), mpz_class(b).get_mpz_t());
        long gl = static_cast<long>(g.get_si());
        long pa = a / gl, pb = b / gl;
        long s = gl;
        if (pa < 0 || (pa == 0 && pb < 0)) {
            pa = -pa; pb = -pb; s = -s;
        }
        return {s, LinForm{pa, pb}};
    }

    static std::pair<BigRat, LinForm> split(const BigRat& ca, const BigRat& cb) {
        if (ca.is_zero() && cb.is_zero())
            throw math_error("LinForm: zero form");
        mpz_class l;
        mpz_lcm(l.get_mpz_t(), ca.den().get_mpz_t(), cb.den().get_mpz_t());
        mpz_class ia = ca.num() * (l / ca.den());
        mpz_class ib = cb.num() * (l / cb.den());
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), ia.get_mpz_t(), ib.get_mpz_t());
        mpz_class pa = ia / g, pb = ib / g;
        mpq_class s(g, l);
        if (pa < 0 || (pa == 0 && pb < 0)) {
            pa = -pa; pb = -pb; s = -s;
        }
        if (!pa.fits_slong_p() || !pb.fits_slong_p())
            throw math_error("LinForm: coefficients out of range");
        return {BigRat(s), LinForm{pa.get_si(), pb.get_si()}};
    }

    BigRat eval(const BigRat& p1, const BigRat& p2) const {
        return BigRat(a) * p1 + BigRat(b) * p2;
    }

    std::string str() const {
        std::string out;
        auto term = [&](long c, const char* var) {
            if (c == 0) return;
            if (out.empty()) {
                if (c == -1) out += "-";
                else if (c != 1) out += std::to_string(c) + "*";
            } else {
                out += c < 0 ? "-" : "+";
                long ac = c < 0 ? -c : c;
                if (ac != 1) out += std::to_string(ac) + "*";
            }
            out += var;
        };
        term(a, "lam1");
        term(b, "lam2");
        return out;
    }
};

struct Exp2 {
    int e1 = 0;
    int e2 = 0;
    // default comparison = lexicographic (e1, then e2)
    auto operator<=>(const Exp2&) const = default;
};

class Poly2 {
public:
    using Terms = std::map<Exp2, BigRat>;

    Poly2() = default;

    static Poly2 zero() { return Poly2(); }
    static Poly2 one() { return constant(BigRat(1)); }
    static Poly2 constant(const BigRat& c) { return monomial(c, 0, 0); }
    static Poly2 monomial(const BigRat& c, int e1, int e2) {
        Poly2 p;
        if (!c.is_zero())
            p.terms_[{e1, e2}] = c;
        return p;
    }
    static Poly2 form(const LinForm& f) {
        Poly2 p = monomial(BigRat(f.a), 1, 0);
        p += monomial(BigRat(f.b), 0, 1);
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exp2{0, 0});
    }
    const Terms& terms() const { return terms_; }

    BigRat coeff(int e1, int e2) const {
        auto it = terms_.find({e1, e2});
        return it == terms_.end() ? BigRat(0) : it->second;
    }

    Poly2& operator+=(const Poly2& o) {
        for (const auto& [e, c] : o.terms_)
            add_term(e, c);
        return *this;
    }
    Poly2& operator-=(const Poly2& o) {
        for (const auto& [e, c] : o.terms_)
            add_term(e, -c);
        return *this;
    }
    Poly2& operator*=(const BigRat& s) {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_)
            c *= s;
        return *this;
    }
    Poly2 operator-() const {
        Poly2 p = *this;
        for (auto& [e, c] : p.terms_)
            c = -c;
        return p;
    }

    friend Poly2 operator+(Poly2 x, const Poly2& y) { return x += y; }
    friend Poly2 operator-(Poly2 x, const Poly2& y) { return x -= y; }
    friend Poly2 operator*(Poly2 x, const BigRat& s) { return x *= s; }
    friend Poly2 operator*(const BigRat& s, Poly2 x) { return x *= s; }

    friend Poly2 operator*(const Poly2& x, const Poly2& y) {
        Poly2 out;
        for (const auto& [ex, cx] : x.terms_)
            for (const auto& [ey, cy] : y.terms_)
                out.add_term({ex.e1 + ey.e1, ex.e2 + ey.e2}, cx * cy);
        return out;
    }
    Poly2& operator*=(const Poly2& o) { return *this = *this * o; }

    friend bool operator==(const Poly2& x, const Poly2& y) { return x.terms_ == y.terms_; }

    Poly2 pow(int n) const {
        if (n < 0)
            throw math_error("Poly2: negative power");
        Poly2 out = one();
        Poly2 base = *this;
        while (n) {
            if (n & 1)
                out *= base;
            if (n >>= 1)
                base *= base;
        }
        return out;
    }

    BigRat eval(const BigRat& p1, const BigRat& p2) const {
        BigRat acc(0);
        for (const auto& [e, c] : terms_)
            acc += c * p1.pow(e.e1) * p2.pow(e.e2);
        return acc;
    }

    int total_degree() const {
        int d = -1;
        for (const auto& [e, c] : terms_)
            d = std::max(d, e.e1 + e.e2);
        return d;
    }
    bool is_homogeneous() const {
        if (terms_.empty())
            return true;
        int d = terms_.begin()->first.e1 + terms_.begin()->first.e2;
        for (const auto& [e, c] : terms_)
            if (e.e1 + e.e2 != d)
                return false;
        return true;
    }

    // Signed content s: *this = s * P where P has coprime integer coefficients
    // and a positive leading (lexicographically largest exponent) coefficient.
    // Zero polynomial -> 0.
    BigRat signed_content() const {
        if (terms_.empty())
            return BigRat(0);
        mpz_class g = 0, l = 1;
        for (const auto& [e, c] : terms_) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.num().get_mpz_t());
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.den().get_mpz_t());
        }
        mpq_class s(g, l);
        s.canonicalize();
        if (terms_.rbegin()->second.sign() < 0)
            s = -s;
        return BigRat(s);
    }

    Poly2 divided_by(const BigRat& s) const {
        Poly2 out = *this;
        BigRat inv = s.inv();
        for (auto& [e, c] : out.terms_)
            c *= inv;
        return out;
    }

    // Exact division by a primitive linear form; nullopt when not divisible.
    std::optional<Poly2> div_exact(const LinForm& f) const {
        if (is_zero())
            return zero();
        if (f.a == 0) {
            // f = lam2
            Poly2 q;
            for (const auto& [e, c] : terms_) {
                if (e.e2 == 0)
                    return std::nullopt;
                q.terms_[{e.e1, e.e2 - 1}] = c;
            }
            return q;
        }
        // long division in lam1 with coefficients in Q[lam2]
        std::map<int, std::map<int, BigRat>> rows;
        int dmax = 0;
        for (const auto& [e, c] : terms_) {
            rows[e.e1][e.e2] = c;
            dmax = std::max(dmax, e.e1);
        }
        if (dmax == 0)
            return std::nullopt;
        const BigRat inva = BigRat(f.a).inv();
        const BigRat bb(f.b);
        Poly2 q;
        for (int d = dmax; d >= 1; --d) {
            auto it = rows.find(d);
            if (it == rows.end())
                continue;
            for (const auto& [e2, c] : it->second) {
                if (c.is_zero())
                    continue;
                BigRat qc = c * inva;          // coefficient of lam1^{d-1} lam2^{e2}
                q.add_term({d - 1, e2}, qc);
                // remainder -= qc * b * lam1^{d-1} lam2^{e2+1}
                BigRat& slot = rows[d - 1][e2 + 1];
                slot -= qc * bb;
            }
            rows.erase(d);
        }
        for (const auto& [e2, c] : rows[0])
            if (!c.is_zero())
                return std::nullopt;
        return q;
    }

    // lam1 -> m11*lam1 + m12*lam2, lam2 -> m21*lam1 + m22*lam2
    Poly2 subst_linear(const BigRat& m11, const BigRat& m12,
                       const BigRat& m21, const BigRat& m22) const {
        Poly2 img1 = monomial(m11, 1, 0) + monomial(m12, 0, 1);
        Poly2 img2 = monomial(m21, 1, 0) + monomial(m22, 0, 1);
        Poly2 out;
        for (const auto& [e, c] : terms_)
            out += c * (img1.pow(e.e1) * img2.pow(e.e2));
        return out;
    }

    // Terms in descending exponent order, e.g. "3*lam1^2*lam2 - lam1 + 2".
    std::string str() const {
        if (terms_.empty())
            return "0";
        std::string out;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [e, c] = *it;
            BigRat ac = c.abs();
            if (out.empty())
                out += c.sign() < 0 ? "-" : "";
            else
                out += c.sign() < 0 ? " - " : " + ";
            std::string mono;
            if (e.e1 > 0)
                mono += e.e1 == 1 ? "lam1" : "lam1^" + std::to_string(e.e1);
            if (e.e2 > 0) {
                if (!mono.empty())
                    mono += "*";
                mono += e.e2 == 1 ? "lam2" : "lam2^" + std::to_string(e.e2);
            }
            if (mono.empty())
                out += ac.str();
            else if (ac == BigRat(1))
                out += mono;
            else
                out += ac.str() + "*" + mono;
        }
        return out;
    }

private:
    Terms terms_;

    void add_term(const Exp2& e, const BigRat& c) {
        if (c.is_zero())
            return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }
};

} // namespace gv4
