#ifndef EFFD_ELEMENTARY_HPP
#define EFFD_ELEMENTARY_HPP

#include <cstdint>
#include <vector>

#include <effd/ball.hpp>

namespace effd
{

// Certified enclosures of the constants and functions the rest of the
// library needs. For point inputs every result has radius <= 2^-prec;
// for ball inputs the input radius is added on top (cos and sin are
// 1-Lipschitz, sqrt and ln are evaluated at the interval endpoints).

Ball sqrt_ball(const Rational &x, long prec);
Ball sqrt_ball(const Ball &x, long prec);

Ball pi_ball(long prec);

Ball ln_ball(const Rational &x, long prec);
Ball ln_ball(const Ball &x, long prec);

// ln(1), ln(2), ..., ln(n_max), indexed by n (entry 0 is unused and zero).
// Built incrementally via ln(n) = ln(n-1) + 2 atanh(1/(2n-1)).
std::vector<Ball> ln_table(std::uint64_t n_max, long prec);

// Argument reduction by multiples of pi/2 uses pi_ball at prec + 8
// plus the bit length of the quadrant count.
Ball cos_ball(const Ball &t, long prec);
Ball sin_ball(const Ball &t, long prec);

// cos(pi x) and sin(pi x) for rational x. The reduction modulo 2 is exact,
// and the rational values (0, +-1/2, +-1) are returned as exact balls.
Ball cos_pi(const Rational &x, long prec);
Ball sin_pi(const Rational &x, long prec);

} // namespace effd

#endif
