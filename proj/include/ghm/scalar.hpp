#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace ghm {

/// Exact rational number, always held in lowest terms.
///
/// Every distance in the library is a Scalar, so the metric axioms, the
/// Hausdorff and Gromov-Hausdorff values and all bound comparisons are decided
/// without tolerances.
class Scalar {
public:
    Scalar() = default;
    Scalar(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)
    explicit Scalar(mpq_class value);

    static Scalar fraction(long num, long den);

    /// Accepts integers ("3", "-2"), decimals ("0.1", "2.5e-3") and
    /// fractions ("1/3"). Throws Error{ParseError} on anything else.
    static Scalar parse(std::string_view text);

    /// "p" for integers, "p/q" otherwise; `parse(str())` is exact.
    std::string str() const;
    double to_double() const { return q_.get_d(); }
    bool is_integer() const;
    int sign() const { return sgn(q_); }

    const mpq_class& raw() const noexcept { return q_; }

    Scalar& operator+=(const Scalar& o) { q_ += o.q_; return *this; }
    Scalar& operator-=(const Scalar& o) { q_ -= o.q_; return *this; }
    Scalar& operator*=(const Scalar& o) { q_ *= o.q_; return *this; }
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend Scalar operator-(const Scalar& a) { return Scalar(mpq_class(-a.q_)); }

    friend bool operator==(const Scalar& a, const Scalar& b) { return cmp(a.q_, b.q_) == 0; }
    friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
        const int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    mpq_class q_;
};

Scalar abs(const Scalar& x);

/// 2^-k as an exact rational.
Scalar pow2_neg(unsigned k);

std::ostream& operator<<(std::ostream& os, const Scalar& x);

}  // namespace ghm
