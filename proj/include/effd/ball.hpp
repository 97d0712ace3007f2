#ifndef EFFD_BALL_HPP
#define EFFD_BALL_HPP

#include <iosfwd>

#include <effd/rational.hpp>

namespace effd
{

// Certified enclosure [center - radius, center + radius] with exact rational
// center and radius. Every arithmetic operation returns a ball that contains
// the image of every pair of members of its operands.
class Ball
{
public:
    Ball() = default;
    Ball(const Rational &center) : center_(center) {} // NOLINT: exact point embedding
    Ball(long v) : center_(v) {}                       // NOLINT
    Ball(int v) : center_(v) {}                        // NOLINT
    Ball(Rational center, Rational radius);

    static Ball from_endpoints(const Rational &lo, const Rational &hi);

    const Rational &center() const noexcept
    {
        return center_;
    }
    const Rational &radius() const noexcept
    {
        return radius_;
    }
    Rational lower() const
    {
        return center_ - radius_;
    }
    Rational upper() const
    {
        return center_ + radius_;
    }
    // Upper bound on |x| over the ball.
    Rational magnitude() const
    {
        return abs(center_) + radius_;
    }
    // Lower bound on |x| over the ball (0 when the ball straddles zero).
    Rational mignitude() const;

    bool is_exact() const
    {
        return radius_.is_zero();
    }
    bool is_zero() const
    {
        return center_.is_zero() && radius_.is_zero();
    }
    bool contains(const Rational &x) const;
    bool contains(const Ball &other) const;
    bool contains_zero() const
    {
        return contains(Rational(0));
    }
    bool intersects(const Ball &other) const;

    // Outward rounding onto the dyadic grid 2^-bits. The result contains *this.
    Ball rounded(long bits) const;
    Ball inflated(const Rational &extra) const;
    // Enclosure of x^2 for x in the ball; tight at both endpoints.
    Ball square() const;
    Ball reciprocal() const;

    Ball operator-() const
    {
        return Ball(-center_, radius_);
    }
    Ball &operator+=(const Ball &o);
    Ball &operator-=(const Ball &o);
    Ball &operator*=(const Ball &o);
    Ball &operator/=(const Ball &o);

    friend Ball operator+(Ball a, const Ball &b)
    {
        return a += b;
    }
    friend Ball operator-(Ball a, const Ball &b)
    {
        return a -= b;
    }
    friend Ball operator*(Ball a, const Ball &b)
    {
        return a *= b;
    }
    friend Ball operator/(Ball a, const Ball &b)
    {
        return a /= b;
    }

    // Structural equality (same center and radius), not set equality of reals.
    friend bool operator==(const Ball &a, const Ball &b) = default;

private:
    Rational center_;
    Rational radius_;
};

enum class ArithOp { add, sub, mul, div };

Ball ball_arith(const Ball &lhs, const Ball &rhs, ArithOp op);

std::ostream &operator<<(std::ostream &os, const Ball &b);

} // namespace effd

#endif
