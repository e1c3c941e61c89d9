#pragma once

// Exact rational arithmetic, backed by GMP.  BigRat is a thin value wrapper
// around mpq_class and is always canonical: gcd(|num|, den) = 1, den > 0.

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <string>

namespace gv4 {

// Bad user input (CLI flags, malformed files, violated preconditions on
// externally supplied data).  The CLI maps this to exit code 2.
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A mathematical check or domain restriction failed (pole evaluation,
// non-integral coefficient, division by zero).  CLI exit code 1.
struct math_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class BigRat {
public:
    BigRat() : v_(0) {}
    BigRat(int n) : v_(n) {}
    BigRat(long n) : v_(static_cast<signed long>(n)) {}
    BigRat(long num, long den) {
        if (den == 0)
            throw math_error("BigRat: zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }
    explicit BigRat(const mpz_class& n) : v_(n) {}
    explicit BigRat(const mpq_class& v) : v_(v) { v_.canonicalize(); }

    // Accepts "p" or "p/q" with an optional leading '-', nothing else.
    static BigRat parse(const std::string& s) {
        const auto bad = [&] { return input_error("BigRat: cannot parse \"" + s + "\""); };
        std::size_t i = 0;
        auto scan_int = [&]() {
            std::size_t start = i;
            if (i < s.size() && s[i] == '-') ++i;
            std::size_t digits = 0;
            while (i < s.size() && s[i] >= '0' && s[i] <= '9') { ++i; ++digits; }
            if (digits == 0) throw bad();
            return s.substr(start, i - start);
        };
        std::string num = scan_int();
        std::string den = "1";
        if (i < s.size() && s[i] == '/') {
            ++i;
            den = scan_int();
        }
        if (i != s.size()) throw bad();
        mpz_class d(den);
        if (d == 0)
            throw input_error("BigRat: zero denominator in \"" + s + "\"");
        mpq_class q(mpz_class(num), d);
        q.canonicalize();
        return BigRat(q);
    }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }
    const mpq_class& raw() const { return v_; }

    // Canonical text: "p" when integral, "p/q" otherwise.
    std::string str() const { return is_integer() ? v_.get_num().get_str() : v_.get_str(); }

    BigRat operator-() const { return BigRat(mpq_class(-v_)); }

    BigRat& operator+=(const BigRat& o) { v_ += o.v_; return *this; }
    BigRat& operator-=(const BigRat& o) { v_ -= o.v_; return *this; }
    BigRat& operator*=(const BigRat& o) { v_ *= o.v_; return *this; }
    BigRat& operator/=(const BigRat& o) {
        if (o.is_zero())
            throw math_error("BigRat: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend BigRat operator+(BigRat x, const BigRat& y) { return x += y; }
    friend BigRat operator-(BigRat x, const BigRat& y) { return x -= y; }
    friend BigRat operator*(BigRat x, const BigRat& y) { return x *= y; }
    friend BigRat operator/(BigRat x, const BigRat& y) { return x /= y; }

    friend bool operator==(const BigRat& x, const BigRat& y) { return x.v_ == y.v_; }
    friend bool operator!=(const BigRat& x, const BigRat& y) { return x.v_ != y.v_; }
    friend bool operator<(const BigRat& x, const BigRat& y) { return x.v_ < y.v_; }
    friend bool operator<=(const BigRat& x, const BigRat& y) { return x.v_ <= y.v_; }
    friend bool operator>(const BigRat& x, const BigRat& y) { return x.v_ > y.v_; }
    friend bool operator>=(const BigRat& x, const BigRat& y) { return x.v_ >= y.v_; }

    BigRat inv() const {
        if (is_zero())
            throw math_error("BigRat: division by zero");
        return BigRat(mpq_class(1) / v_);
    }

    BigRat pow(long e) const {
        if (e == 0)
            return BigRat(1);
        const BigRat base = e < 0 ? inv() : *this;
        unsigned long k = e < 0 ? static_cast<unsigned long>(-(e + 1)) + 1 : static_cast<unsigned long>(e);
        mpz_class n, d;
        mpz_pow_ui(n.get_mpz_t(), base.v_.get_num().get_mpz_t(), k);
        mpz_pow_ui(d.get_mpz_t(), base.v_.get_den().get_mpz_t(), k);
        return BigRat(mpq_class(n, d));
    }

    BigRat abs() const { return sign() < 0 ? -*this : *this; }

    friend std::ostream& operator<<(std::ostream& os, const BigRat& r) { return os << r.str(); }

private:
    mpq_class v_;
};

// Generalized binomial coefficient C(e, j) = e(e-1)...(e-j+1) / j!, exact.
// Defined for any integer e (negative included); j < 0 gives 0.
inline BigRat gen_binom(long e, long j) {
    if (j < 0)
        return BigRat(0);
    mpz_class num = 1;
    for (long s = 0; s < j; ++s)
        num *= mpz_class(e - s);
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(j));
    return BigRat(mpq_class(num, fact));
}

} // namespace gv4
