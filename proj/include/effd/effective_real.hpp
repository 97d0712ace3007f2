#ifndef EFFD_EFFECTIVE_REAL_HPP
#define EFFD_EFFECTIVE_REAL_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <variant>

#include <effd/ball.hpp>

namespace effd
{

// Representations of reals by rational sequences. Membership in a class of
// the hierarchy is carried by the representation: a LeftComputableReal is a
// real *presented* as the limit of a nondecreasing sequence. Nothing here
// decides which class an arbitrary real belongs to.
//
// Generator functions must be pure functions of the index; values may be
// cached and queried concurrently.

using Index = std::uint64_t;
using RationalSequence = std::function<Rational(Index)>;

// Convergence modulus M -> N0: for n >= N0 the approximant is within 2^-M.
class Modulus
{
public:
    Modulus() = default;
    explicit Modulus(std::function<Index(long)> fn) : fn_(std::move(fn)) {}

    static Modulus constant(Index n0);
    // M -> max(M + offset, 0)
    static Modulus linear(long offset = 0);

    Index operator()(long precision) const;

private:
    std::function<Index(long)> fn_;
};

// Limit of a computable rational sequence with an effective modulus.
class ComputableReal
{
public:
    ComputableReal(RationalSequence approximant, Modulus modulus)
        : approximant_(std::move(approximant)), modulus_(std::move(modulus))
    {
    }

    static ComputableReal constant(const Rational &q);
    // From an enclosure generator k -> ball of radius <= 2^-k around the value.
    static ComputableReal from_enclosures(std::function<Ball(long)> enclose);

    Rational approximant(Index n) const
    {
        return approximant_(n);
    }
    Index modulus(long precision) const
    {
        return modulus_(precision);
    }
    const RationalSequence &sequence() const noexcept
    {
        return approximant_;
    }

private:
    RationalSequence approximant_;
    Modulus modulus_;
};

// Ball of radius 2^-M centred at approximant(modulus(M)).
Ball approximate(const ComputableReal &x, long precision);

// Field operations with composed moduli. Division needs a separation
// witness L with |y| >= 2^-L; sign determination is the caller's burden.
ComputableReal arith(const ComputableReal &x, const ComputableReal &y, ArithOp op,
                     std::optional<long> separation_exponent = {});

ComputableReal operator+(const ComputableReal &x, const ComputableReal &y);
ComputableReal operator-(const ComputableReal &x, const ComputableReal &y);
ComputableReal operator*(const ComputableReal &x, const ComputableReal &y);

enum class Direction { nondecreasing, nonincreasing };

// Sequences indexed from 1. Monotonicity is checked against the previous
// index on every query, so a violation is reported as soon as the offending
// pair is touched.
template <Direction D>
class MonotoneReal
{
public:
    explicit MonotoneReal(RationalSequence seq) : seq_(std::move(seq)) {}

    static constexpr Direction direction = D;

    Rational at(Index n) const;
    // Checks indices 1..n exhaustively.
    void check_prefix(Index n) const;
    const RationalSequence &sequence() const noexcept
    {
        return seq_;
    }

private:
    RationalSequence seq_;
};

using LeftComputableReal = MonotoneReal<Direction::nondecreasing>;
using RightComputableReal = MonotoneReal<Direction::nonincreasing>;

LeftComputableReal left_from_monotone(RationalSequence seq);
RightComputableReal right_from_monotone(RationalSequence seq);
std::variant<LeftComputableReal, RightComputableReal> from_monotone(RationalSequence seq, Direction direction);

// Weakly computable real: either a difference a - b of left-computable reals,
// or a sequence of finite total variation with a certified bound V.
class WeaklyComputableReal
{
public:
    static WeaklyComputableReal difference(LeftComputableReal a, LeftComputableReal b);
    static WeaklyComputableReal with_variation(RationalSequence seq, Rational variation_bound);

    Rational at(Index n) const;
    // d_n = alpha_{n+1} - alpha_n
    Rational delta(Index n) const;
    // sum_{n=1}^{N-1} |d_n|; throws InvalidWitness if it exceeds the bound.
    Rational prefix_variation(Index n) const;
    // Smallest natural >= max_{n < N} |d_n| over the queried prefix.
    Integer prefix_delta_bound(Index n) const;
    const std::optional<Rational> &variation_bound() const noexcept
    {
        return bound_;
    }

private:
    WeaklyComputableReal(RationalSequence seq, std::optional<Rational> bound)
        : seq_(std::move(seq)), bound_(std::move(bound))
    {
    }

    RationalSequence seq_;
    std::optional<Rational> bound_;
};

WeaklyComputableReal weak_from_variation(RationalSequence seq, const Rational &variation_bound);

// Limit of a computable sequence of computable reals with no modulus.
class RecursivelyApproximableReal
{
public:
    explicit RecursivelyApproximableReal(std::function<ComputableReal(Index)> terms) : terms_(std::move(terms)) {}

    ComputableReal term(Index n) const
    {
        return terms_(n);
    }

private:
    std::function<ComputableReal(Index)> terms_;
};

struct Timeout {
    std::uint64_t steps = 0;
    long precision = 0;
};

struct TwoSidedEnclosure {
    Index index = 0;
    Rational lower;
    Rational upper;
    Ball value;
};

// Searches the first n with r_n - l_n < 2^-M. Terminates for a genuine
// two-sided presentation but has no a-priori time bound, so a step budget
// can be supplied; exhausting it yields Timeout instead of an answer.
std::variant<TwoSidedEnclosure, Timeout> two_sided_enclosure(const LeftComputableReal &l, const RightComputableReal &r,
                                                             long precision,
                                                             std::optional<std::uint64_t> budget = {});

// The modulus performs the search above on demand; it throws SearchTimeout
// when a budget is given and exhausted.
ComputableReal delta1_from_two_sided(LeftComputableReal l, RightComputableReal r,
                                     std::optional<std::uint64_t> budget = {});

// Diagonal limit of x_n where |x_n - x| <= 2^-N for n >= tail(N). The tail
// modulus is caller-asserted; construction spot-checks the first few levels.
ComputableReal limit_if_modulus(std::function<ComputableReal(Index)> seq, Modulus tail, int spot_checks = 4);

} // namespace effd

#endif
