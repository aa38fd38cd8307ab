#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "logconv/errors.hpp"

namespace logconv {

// Exact arbitrary-precision rational, always in lowest terms with a positive
// denominator. This is the only number type used by the core; no rounding
// ever occurs outside the explicitly-inexact modulus I/O layer.
class Rat {
  public:
    Rat() : v_(0) {}
    Rat(int n) : v_(n) {}
    Rat(long n) : v_(static_cast<signed long>(n)) {}
    Rat(long num, long den);

    // Accepts "p", "p/q" and plain decimal strings like "-2.75" (parsed
    // exactly). Throws input_error on anything else.
    static Rat parse(std::string_view s);

    // "p" when the denominator is 1, otherwise "p/q".
    std::string str() const;

    // Approximation for human-readable renderings only.
    double to_double() const { return v_.get_d(); }

    int sgn() const { return mpq_sgn(v_.get_mpq_t()); }
    bool is_zero() const { return sgn() == 0; }
    Rat abs() const { return sgn() < 0 ? Rat(-v_) : *this; }

    Rat operator-() const { return Rat(-v_); }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o);

    friend Rat operator+(Rat a, const Rat& b) { a += b; return a; }
    friend Rat operator-(Rat a, const Rat& b) { a -= b; return a; }
    friend Rat operator*(Rat a, const Rat& b) { a *= b; return a; }
    friend Rat operator/(Rat a, const Rat& b) { a /= b; return a; }

    friend bool operator==(const Rat& a, const Rat& b) { return mpq_equal(a.v_.get_mpq_t(), b.v_.get_mpq_t()) != 0; }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        int c = mpq_cmp(a.v_.get_mpq_t(), b.v_.get_mpq_t());
        return c <=> 0;
    }

    const mpq_class& raw() const { return v_; }

  private:
    explicit Rat(mpq_class q) : v_(std::move(q)) {}  // must already be canonical
    mpq_class v_;
};

using RatVec = std::vector<Rat>;

Rat dot(const RatVec& a, const RatVec& b);

// Lexicographic comparison, used to keep vertex sets deterministically ordered.
bool lex_less(const RatVec& a, const RatVec& b);

std::string vec_str(const RatVec& v);

}  // namespace logconv
