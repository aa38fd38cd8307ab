#include "logconv/rational.hpp"

#include <cctype>
#include <sstream>

namespace logconv {

Rat::Rat(long num, long den) {
    if (den == 0) throw input_error("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.is_zero()) throw domain_error("rational division by zero");
    v_ /= o.v_;
    return *this;
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rat Rat::parse(std::string_view s) {
    std::string_view orig = s;
    bool neg = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    auto fail = [&]() -> Rat {
        throw input_error("malformed rational '" + std::string(orig) + "'");
    };

    mpz_class num, den = 1;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        std::string_view p = s.substr(0, slash), q = s.substr(slash + 1);
        if (!all_digits(p) || !all_digits(q)) return fail();
        num = mpz_class(std::string(p), 10);
        den = mpz_class(std::string(q), 10);
        if (den == 0) return fail();
    } else if (auto point = s.find('.'); point != std::string_view::npos) {
        std::string_view ip = s.substr(0, point), fp = s.substr(point + 1);
        if (ip.empty() && fp.empty()) return fail();
        if (!ip.empty() && !all_digits(ip)) return fail();
        if (!fp.empty() && !all_digits(fp)) return fail();
        num = ip.empty() ? mpz_class(0) : mpz_class(std::string(ip), 10);
        for (char c : fp) {
            num = num * 10 + (c - '0');
            den *= 10;
        }
    } else {
        if (!all_digits(s)) return fail();
        num = mpz_class(std::string(s), 10);
    }
    if (neg) num = -num;
    mpq_class q(num, den);
    q.canonicalize();
    return Rat(std::move(q));
}

std::string Rat::str() const {
    return v_.get_str();
}

Rat dot(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw input_error("dot: dimension mismatch");
    Rat s;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero() || b[i].is_zero()) continue;
        s += a[i] * b[i];
    }
    return s;
}

bool lex_less(const RatVec& a, const RatVec& b) {
    size_t n = std::min(a.size(), b.size());
    for (size_t i = 0; i < n; ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return a.size() < b.size();
}

std::string vec_str(const RatVec& v) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << ", ";
        os << v[i].str();
    }
    os << ")";
    return os.str();
}

}  // namespace logconv
