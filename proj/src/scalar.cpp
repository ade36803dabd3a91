#include "ghm/scalar.hpp"

#include <cctype>
#include <ostream>

#include "ghm/error.hpp"

namespace ghm {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

[[noreturn]] void bad(std::string_view text) {
    throw Error(ErrorKind::ParseError, "not a rational literal: '" + std::string(text) + "'");
}

mpz_class pow10(unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
    return r;
}

}  // namespace

Scalar::Scalar(mpq_class value) : q_(std::move(value)) { q_.canonicalize(); }

Scalar Scalar::fraction(long num, long den) {
    if (den == 0) throw Error(ErrorKind::InvalidParams, "zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(std::move(q));
}

Scalar& Scalar::operator/=(const Scalar& o) {
    if (sgn(o.q_) == 0) throw Error(ErrorKind::Internal, "division by zero");
    q_ /= o.q_;
    return *this;
}

Scalar Scalar::parse(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.empty()) bad(text);

    bool negative = false;
    if (s.front() == '+' || s.front() == '-') {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }

    mpq_class q;
    if (const auto slash = s.find('/'); slash != std::string_view::npos) {
        const auto num = s.substr(0, slash);
        const auto den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) bad(text);
        mpz_class d(std::string(den), 10);
        if (d == 0) bad(text);
        q = mpq_class(mpz_class(std::string(num), 10), d);
    } else {
        std::string_view mantissa = s;
        long exponent = 0;
        if (const auto e = s.find_first_of("eE"); e != std::string_view::npos) {
            mantissa = s.substr(0, e);
            std::string_view exp = s.substr(e + 1);
            bool exp_negative = false;
            if (!exp.empty() && (exp.front() == '+' || exp.front() == '-')) {
                exp_negative = exp.front() == '-';
                exp.remove_prefix(1);
            }
            if (!all_digits(exp) || exp.size() > 6) bad(text);
            exponent = std::stol(std::string(exp));
            if (exp_negative) exponent = -exponent;
        }
        std::string_view int_part = mantissa;
        std::string_view frac_part;
        if (const auto dot = mantissa.find('.'); dot != std::string_view::npos) {
            int_part = mantissa.substr(0, dot);
            frac_part = mantissa.substr(dot + 1);
        }
        if (int_part.empty() && frac_part.empty()) bad(text);
        if (!int_part.empty() && !all_digits(int_part)) bad(text);
        if (!frac_part.empty() && !all_digits(frac_part)) bad(text);
        const std::string digits = std::string(int_part) + std::string(frac_part);
        if (digits.empty()) bad(text);
        exponent -= static_cast<long>(frac_part.size());
        mpz_class n(digits, 10);
        if (exponent >= 0) {
            q = mpq_class(n * pow10(static_cast<unsigned long>(exponent)));
        } else {
            q = mpq_class(n, pow10(static_cast<unsigned long>(-exponent)));
        }
    }
    q.canonicalize();
    if (negative) q = -q;
    return Scalar(std::move(q));
}

std::string Scalar::str() const { return q_.get_str(10); }

bool Scalar::is_integer() const { return q_.get_den() == 1; }

Scalar abs(const Scalar& x) { return x.sign() < 0 ? -x : x; }

Scalar pow2_neg(unsigned k) {
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, k);
    return Scalar(mpq_class(mpz_class(1), den));
}

std::ostream& operator<<(std::ostream& os, const Scalar& x) { return os << x.str(); }

}  // namespace ghm
