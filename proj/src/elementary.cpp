#include <effd/elementary.hpp>

#include <mutex>

#include <effd/errors.hpp>

namespace effd
{

namespace
{

long bit_length(const Integer &v)
{
    return v == 0 ? 0 : static_cast<long>(mpz_sizeinbase(v.get_mpz_t(), 2));
}

// Working precision for a series summed to `bits`: enough guard bits that the
// per-term rounding of a few hundred terms stays far below 2^-bits.
long working_bits(long bits)
{
    return bits + 12 + bit_length(Integer(std::max(bits, 1L)));
}

long guard_bits_for(std::uint64_t terms)
{
    return terms < 2 ? 1 : ceil_log2(Rational(static_cast<long>(terms))) + 1;
}

bool perfect_square(const Integer &v, Integer &root)
{
    if (v < 0 || mpz_perfect_square_p(v.get_mpz_t()) == 0) {
        return false;
    }
    mpz_sqrt(root.get_mpz_t(), v.get_mpz_t());
    return true;
}

// Lower and upper rational bounds on sqrt(x) on the grid 2^-bits.
std::pair<Rational, Rational> sqrt_bracket(const Rational &x, long bits)
{
    const Rational scaled = x * Rational::pow2(2 * bits);
    const Integer n = scaled.floor();
    Integer q;
    mpz_sqrt(q.get_mpz_t(), n.get_mpz_t());
    // q^2 <= n <= x 4^bits < n + 1 <= (q + 1)^2
    const Rational unit = Rational::pow2(-bits);
    return {Rational(q) * unit, Rational(Integer(q + 1)) * unit};
}

// atan(x) for |x| <= 1/2 by the alternating Taylor series.
Ball atan_small(const Rational &x, long bits)
{
    const long w = working_bits(bits);
    const Rational x2 = x * x;
    Ball power(x);
    Ball sum;
    for (unsigned long k = 0;; ++k) {
        const Ball term = (power / Ball(Rational(static_cast<long>(2 * k + 1)))).rounded(w);
        if (term.magnitude() <= Rational::pow2(-(bits + 2))) {
            // Alternating with decreasing magnitude: the tail is bounded by this term.
            return sum.inflated(term.magnitude()).rounded(bits + 2);
        }
        if (k % 2 == 0) {
            sum += term;
        } else {
            sum -= term;
        }
        sum = sum.rounded(w);
        power = (power * Ball(x2)).rounded(w);
    }
}

// atanh(z) for |z| <= 1/2 by the odd power series; the tail after the
// power z^(2K+1) is at most |z|^(2K+1) / (1 - z^2) <= (4/3)|z|^(2K+1).
Ball atanh_small(const Rational &z, long bits)
{
    const long w = working_bits(bits);
    const Rational z2 = z * z;
    Ball power(z);
    Ball sum;
    for (unsigned long k = 0;; ++k) {
        if (power.magnitude() <= Rational::pow2(-(bits + 3))) {
            return sum.inflated(power.magnitude() * Rational(4, 3)).rounded(bits + 2);
        }
        sum += (power / Ball(Rational(static_cast<long>(2 * k + 1)))).rounded(w);
        sum = sum.rounded(w);
        power = (power * Ball(z2)).rounded(w);
    }
}

Ball compute_pi(long bits)
{
    // Machin: pi = 16 atan(1/5) - 4 atan(1/239)
    const long w = bits + 6;
    const Ball a = atan_small(Rational(1, 5), w);
    const Ball b = atan_small(Rational(1, 239), w);
    return (Ball(16) * a - Ball(4) * b).rounded(bits + 2);
}

// cos and sin of a rational point s with |s| <= 1 by Taylor series with
// Lagrange remainder |s|^(n+1)/(n+1)!.
Ball taylor_cos(const Rational &s, long bits)
{
    const long w = working_bits(bits);
    const Rational s2 = s * s;
    Ball term(1);
    Ball sum;
    for (unsigned long j = 0;; ++j) {
        if (term.magnitude() <= Rational::pow2(-(bits + 3))) {
            return sum.inflated(term.magnitude()).rounded(bits + 2);
        }
        if (j % 2 == 0) {
            sum += term;
        } else {
            sum -= term;
        }
        sum = sum.rounded(w);
        term = (term * Ball(s2) / Ball(Rational(static_cast<long>((2 * j + 1) * (2 * j + 2))))).rounded(w);
    }
}

Ball taylor_sin(const Rational &s, long bits)
{
    const long w = working_bits(bits);
    const Rational s2 = s * s;
    Ball term(s);
    Ball sum;
    for (unsigned long j = 0;; ++j) {
        if (term.magnitude() <= Rational::pow2(-(bits + 3))) {
            return sum.inflated(term.magnitude()).rounded(bits + 2);
        }
        if (j % 2 == 0) {
            sum += term;
        } else {
            sum -= term;
        }
        sum = sum.rounded(w);
        term = (term * Ball(s2) / Ball(Rational(static_cast<long>((2 * j + 2) * (2 * j + 3))))).rounded(w);
    }
}

enum class Trig { cos, sin };

Ball trig_point(const Rational &t, long prec, Trig which)
{
    if (t.is_zero()) {
        return which == Trig::cos ? Ball(1) : Ball(0);
    }
    // Quadrant count q = round(t / (pi/2)). A coarse pi is enough to pick q;
    // an off-by-one choice near a boundary still leaves |s| < 1.
    const long tbits = abs(t) < Rational(1) ? 0 : bit_length(abs(t).floor());
    const Ball ratio = Ball(t) / (pi_ball(16 + tbits) / Ball(2));
    const Integer quadrant = (ratio.center() + Rational(1, 2)).floor();

    const long pi_bits = prec + 8 + bit_length(abs(Rational(quadrant)).floor());
    const Ball reduced = Ball(t) - Ball(Rational(quadrant)) * pi_ball(pi_bits) / Ball(2);
    const Rational &s = reduced.center();
    if (abs(s) > Rational(1)) {
        throw DomainError("argument reduction failed to reach |s| <= 1");
    }

    Integer q4;
    mpz_fdiv_r_ui(q4.get_mpz_t(), quadrant.get_mpz_t(), 4);
    const unsigned long qi = q4.get_ui();

    // cos(s + q pi/2) cycles through cos s, -sin s, -cos s, sin s;
    // sin(s + q pi/2) through sin s, cos s, -sin s, -cos s.
    const bool use_cos = (which == Trig::cos) == (qi % 2 == 0);
    Ball v = use_cos ? taylor_cos(s, prec + 1) : taylor_sin(s, prec + 1);
    const bool negate = which == Trig::cos ? (qi == 1 || qi == 2) : (qi == 2 || qi == 3);
    if (negate) {
        v = -v;
    }
    return v.inflated(reduced.radius());
}

Ball trig_ball(const Ball &t, long prec, Trig which)
{
    return trig_point(t.center(), prec, which).inflated(t.radius());
}

// x reduced into [0, 2).
Rational reduce_mod2(const Rational &x)
{
    const Rational half = x / 2;
    return x - Rational(half.floor()) * 2;
}

} // namespace

Ball sqrt_ball(const Rational &x, long prec)
{
    if (x.sign() < 0) {
        throw DomainError("sqrt of a negative number");
    }
    if (x.is_zero()) {
        return Ball(0);
    }
    Integer rn, rd;
    if (perfect_square(x.numerator(), rn) && perfect_square(x.denominator(), rd)) {
        return Ball(Rational(rn, rd));
    }
    const auto [lo, hi] = sqrt_bracket(x, prec + 1);
    return Ball::from_endpoints(lo, hi);
}

Ball sqrt_ball(const Ball &x, long prec)
{
    if (x.is_exact()) {
        return sqrt_ball(x.center(), prec);
    }
    if (x.lower().sign() < 0) {
        throw DomainError("sqrt of a ball reaching below zero");
    }
    const Rational lo = x.lower().is_zero() ? Rational(0) : sqrt_bracket(x.lower(), prec + 1).first;
    const Rational hi = sqrt_bracket(x.upper(), prec + 1).second;
    return Ball::from_endpoints(lo, hi);
}

Ball pi_ball(long prec)
{
    // Pure function; the cache only avoids recomputing the series.
    static std::mutex mutex;
    static long cached_bits = -1;
    static Ball cached;

    const long want = std::max(prec, 0L) + 4;
    Ball best;
    {
        std::lock_guard lock(mutex);
        if (cached_bits < want) {
            cached = compute_pi(std::max(want, 2 * cached_bits));
            cached_bits = std::max(want, 2 * cached_bits);
        }
        best = cached;
    }
    return best.rounded(prec + 2);
}

Ball ln_ball(const Rational &x, long prec)
{
    if (x.sign() <= 0) {
        throw DomainError("ln of a nonpositive number");
    }
    if (x == Rational(1)) {
        return Ball(0);
    }
    // x = 2^e y with y in (2/3, 4/3], so z = (y-1)/(y+1) lies in (-1/5, 1/7].
    long e = floor_log2(x);
    Rational y = x / Rational::pow2(e);
    if (y > Rational(4, 3)) {
        ++e;
        y /= 2;
    }
    const long ebits = e == 0 ? 0 : ceil_log2(Rational(std::abs(e)) + 1);
    const long w = prec + ebits + 4;
    Ball result = Ball(2) * atanh_small((y - 1) / (y + 1), w);
    if (e != 0) {
        const Ball ln2 = Ball(2) * atanh_small(Rational(1, 3), w);
        result += Ball(Rational(e)) * ln2;
    }
    return result.rounded(prec + 2);
}

Ball ln_ball(const Ball &x, long prec)
{
    if (x.is_exact()) {
        return ln_ball(x.center(), prec);
    }
    if (x.lower().sign() <= 0) {
        throw DomainError("ln of a ball reaching zero or below");
    }
    const Ball lo = ln_ball(x.lower(), prec + 1);
    const Ball hi = ln_ball(x.upper(), prec + 1);
    return Ball::from_endpoints(lo.lower(), hi.upper());
}

std::vector<Ball> ln_table(std::uint64_t n_max, long prec)
{
    std::vector<Ball> table(n_max + 1);
    if (n_max < 2) {
        return table;
    }
    // Fixed point with W fractional bits. floor(floor(a/b)/c) = floor(a/(bc)),
    // so every series term is an exact floor and undershoots by < 1 ulp; the
    // dropped tail after t == 0 is < 9/8 ulp. `slack` counts these in ulps:
    // the true value lies in [acc, acc + slack].
    for (long W = prec + guard_bits_for(n_max) + 12;; W += 16) {
        const Integer one = Integer(1) << static_cast<mp_bitcnt_t>(W);
        Integer acc = 0;
        Integer slack = 0;
        Integer t;
        Integer q;
        Integer q2;
        Integer term;
        for (std::uint64_t n = 2; n <= n_max; ++n) {
            q = static_cast<unsigned long>(2 * n - 1);
            q2 = q * q;
            mpz_fdiv_q(t.get_mpz_t(), one.get_mpz_t(), q.get_mpz_t());
            unsigned long terms = 0;
            for (unsigned long k = 0; t != 0; ++k, ++terms) {
                mpz_fdiv_q_ui(term.get_mpz_t(), t.get_mpz_t(), 2 * k + 1);
                acc += 2 * term;
                mpz_fdiv_q(t.get_mpz_t(), t.get_mpz_t(), q2.get_mpz_t());
            }
            // 2 * (terms + 9/8) rounded up
            slack += 2 * terms + 3;
            table[n] = Ball(Rational(Integer(2 * acc + slack), Integer(2 * one)), Rational(slack, Integer(2 * one)));
        }
        if (Rational(slack, one) <= Rational::pow2(-(prec + 1))) {
            for (std::uint64_t n = 2; n <= n_max; ++n) {
                table[n] = table[n].rounded(prec + 2);
            }
            return table;
        }
    }
}

Ball cos_ball(const Ball &t, long prec)
{
    return trig_ball(t, prec, Trig::cos);
}

Ball sin_ball(const Ball &t, long prec)
{
    return trig_ball(t, prec, Trig::sin);
}

Ball cos_pi(const Rational &x, long prec)
{
    const Rational r = reduce_mod2(x);
    const Rational six = r * 6;
    if (six.is_integer()) {
        switch (six.numerator().get_si()) {
            case 0:
                return Ball(1);
            case 2:
            case 10:
                return Ball(Rational(1, 2));
            case 3:
            case 9:
                return Ball(0);
            case 4:
            case 8:
                return Ball(Rational(-1, 2));
            case 6:
                return Ball(-1);
            default:
                break;
        }
    }
    // Symmetric representative in (-1, 1].
    const Rational s = r > Rational(1) ? r - 2 : r;
    return cos_ball(pi_ball(prec + 4) * Ball(s), prec + 2).rounded(prec + 4);
}

Ball sin_pi(const Rational &x, long prec)
{
    const Rational r = reduce_mod2(x);
    const Rational six = r * 6;
    if (six.is_integer()) {
        switch (six.numerator().get_si()) {
            case 0:
            case 6:
                return Ball(0);
            case 1:
            case 5:
                return Ball(Rational(1, 2));
            case 3:
                return Ball(1);
            case 7:
            case 11:
                return Ball(Rational(-1, 2));
            case 9:
                return Ball(-1);
            default:
                break;
        }
    }
    const Rational s = r > Rational(1) ? r - 2 : r;
    return sin_ball(pi_ball(prec + 4) * Ball(s), prec + 2).rounded(prec + 4);
}

} // namespace effd
