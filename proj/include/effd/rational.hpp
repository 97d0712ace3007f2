#ifndef EFFD_RATIONAL_HPP
#define EFFD_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace effd
{

using Integer = mpz_class;

// Exact fraction in canonical form: denominator > 0 and gcd(|num|, den) = 1
// after every operation.
class Rational
{
public:
    Rational() = default;
    Rational(long v) : q_(v) {} // NOLINT: implicit by design of the numeric tower
    Rational(int v) : q_(static_cast<long>(v)) {}
    Rational(const Integer &v) : q_(v) {}
    Rational(const Integer &num, const Integer &den);
    explicit Rational(const mpq_class &q) : q_(q)
    {
        q_.canonicalize();
    }

    // Accepts "n", "-n", "n/d", "-n/d" with decimal integers.
    static Rational parse(std::string_view text);
    // Exact binary value of a finite double.
    static Rational from_double(double v);
    // 2^e for any integer e.
    static Rational pow2(long e);

    Integer numerator() const
    {
        return q_.get_num();
    }
    Integer denominator() const
    {
        return q_.get_den();
    }
    const mpq_class &raw() const noexcept
    {
        return q_;
    }

    // Always "num/den", also for integers.
    std::string to_string() const;
    double to_double() const
    {
        return q_.get_d();
    }

    int sign() const
    {
        return sgn(q_);
    }
    bool is_zero() const
    {
        return sgn(q_) == 0;
    }
    bool is_integer() const
    {
        return q_.get_den() == 1;
    }

    Integer floor() const;
    Integer ceil() const;

    Rational &operator+=(const Rational &o)
    {
        q_ += o.q_;
        return *this;
    }
    Rational &operator-=(const Rational &o)
    {
        q_ -= o.q_;
        return *this;
    }
    Rational &operator*=(const Rational &o)
    {
        q_ *= o.q_;
        return *this;
    }
    Rational &operator/=(const Rational &o);

    friend Rational operator+(Rational a, const Rational &b)
    {
        return a += b;
    }
    friend Rational operator-(Rational a, const Rational &b)
    {
        return a -= b;
    }
    friend Rational operator*(Rational a, const Rational &b)
    {
        return a *= b;
    }
    friend Rational operator/(Rational a, const Rational &b)
    {
        return a /= b;
    }
    Rational operator-() const
    {
        return Rational(mpq_class(-q_));
    }

    friend bool operator==(const Rational &a, const Rational &b)
    {
        return cmp(a.q_, b.q_) == 0;
    }
    friend std::strong_ordering operator<=>(const Rational &a, const Rational &b)
    {
        const int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    mpq_class q_;
};

Rational abs(const Rational &x);
Rational pow(const Rational &x, unsigned long e);
Rational min(const Rational &a, const Rational &b);
Rational max(const Rational &a, const Rational &b);

// Smallest e with |x| <= 2^e; x must be nonzero.
long ceil_log2(const Rational &x);
// Largest e with 2^e <= |x|; x must be nonzero.
long floor_log2(const Rational &x);

std::ostream &operator<<(std::ostream &os, const Rational &x);

} // namespace effd

#endif
