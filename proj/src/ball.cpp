#include <effd/ball.hpp>

#include <ostream>

#include <effd/errors.hpp>

namespace effd
{

Ball::Ball(Rational center, Rational radius) : center_(std::move(center)), radius_(std::move(radius))
{
    if (radius_.sign() < 0) {
        throw DomainError("ball radius must be nonnegative");
    }
}

Ball Ball::from_endpoints(const Rational &lo, const Rational &hi)
{
    if (hi < lo) {
        throw DomainError("ball endpoints out of order");
    }
    return Ball((lo + hi) / 2, (hi - lo) / 2);
}

Rational Ball::mignitude() const
{
    const Rational a = abs(center_);
    return a > radius_ ? a - radius_ : Rational(0);
}

bool Ball::contains(const Rational &x) const
{
    return abs(x - center_) <= radius_;
}

bool Ball::contains(const Ball &other) const
{
    return lower() <= other.lower() && other.upper() <= upper();
}

bool Ball::intersects(const Ball &other) const
{
    return abs(center_ - other.center_) <= radius_ + other.radius_;
}

Ball Ball::rounded(long bits) const
{
    const Rational scale = Rational::pow2(bits);
    const Rational scaled = center_ * scale;
    if (scaled.is_integer() && (radius_ * scale).is_integer()) {
        return *this;
    }
    // Nearest grid point for the center, then round the enlarged radius up.
    const Rational new_center = Rational((scaled + Rational(1, 2)).floor()) / scale;
    const Rational err = abs(center_ - new_center);
    const Rational new_radius = Rational(((radius_ + err) * scale).ceil()) / scale;
    return Ball(new_center, new_radius);
}

Ball Ball::inflated(const Rational &extra) const
{
    return Ball(center_, radius_ + abs(extra));
}

Ball Ball::square() const
{
    const Rational hi = magnitude() * magnitude();
    const Rational lo = mignitude() * mignitude();
    if (radius_.is_zero()) {
        return Ball(center_ * center_);
    }
    return from_endpoints(lo, hi);
}

Ball Ball::reciprocal() const
{
    if (abs(center_) <= radius_) {
        throw DomainError("reciprocal of a ball containing zero");
    }
    if (radius_.is_zero()) {
        return Ball(Rational(1) / center_);
    }
    // 1/x is monotone on an interval that avoids zero.
    const Rational a = Rational(1) / upper();
    const Rational b = Rational(1) / lower();
    return from_endpoints(min(a, b), max(a, b));
}

Ball &Ball::operator+=(const Ball &o)
{
    center_ += o.center_;
    radius_ += o.radius_;
    return *this;
}

Ball &Ball::operator-=(const Ball &o)
{
    center_ -= o.center_;
    radius_ += o.radius_;
    return *this;
}

Ball &Ball::operator*=(const Ball &o)
{
    // |xy - c1 c2| <= |c1| r2 + |c2| r1 + r1 r2
    const Rational r = abs(center_) * o.radius_ + abs(o.center_) * radius_ + radius_ * o.radius_;
    center_ *= o.center_;
    radius_ = r;
    return *this;
}

Ball &Ball::operator/=(const Ball &o)
{
    if (abs(o.center_) <= o.radius_) {
        throw DomainError("division by a ball containing zero");
    }
    if (o.radius_.is_zero()) {
        center_ /= o.center_;
        radius_ /= abs(o.center_);
        return *this;
    }
    return *this *= o.reciprocal();
}

Ball ball_arith(const Ball &lhs, const Ball &rhs, ArithOp op)
{
    switch (op) {
        case ArithOp::add:
            return lhs + rhs;
        case ArithOp::sub:
            return lhs - rhs;
        case ArithOp::mul:
            return lhs * rhs;
        case ArithOp::div:
            return lhs / rhs;
    }
    throw DomainError("unknown arithmetic operation");
}

std::ostream &operator<<(std::ostream &os, const Ball &b)
{
    return os << '[' << b.center() << " +/- " << b.radius() << ']';
}

} // namespace effd
