#include <effd/effective_real.hpp>

#include <algorithm>
#include <string>

#include <effd/errors.hpp>

namespace effd
{

Modulus Modulus::constant(Index n0)
{
    return Modulus([n0](long) { return n0; });
}

Modulus Modulus::linear(long offset)
{
    return Modulus([offset](long m) { return static_cast<Index>(std::max(m + offset, 0L)); });
}

Index Modulus::operator()(long precision) const
{
    if (!fn_) {
        throw DomainError("empty convergence modulus");
    }
    return fn_(precision);
}

ComputableReal ComputableReal::constant(const Rational &q)
{
    return ComputableReal([q](Index) { return q; }, Modulus::constant(0));
}

ComputableReal ComputableReal::from_enclosures(std::function<Ball(long)> enclose)
{
    // |center(enclose(n+1)) - x| <= 2^-(n+1) < 2^-M whenever n >= M.
    return ComputableReal([enclose](Index n) { return enclose(static_cast<long>(n) + 1).center(); },
                          Modulus::linear(0));
}

Ball approximate(const ComputableReal &x, long precision)
{
    return Ball(x.approximant(x.modulus(precision)), Rational::pow2(-precision));
}

namespace
{

// Exponent K with |x_n| <= 2^K for every n >= modulus(0), hence also |x| <= 2^K.
long magnitude_exponent(const ComputableReal &x)
{
    return ceil_log2(abs(x.approximant(x.modulus(0))) + 2);
}

ComputableReal add_like(const ComputableReal &x, const ComputableReal &y, bool subtract)
{
    auto seq = [x, y, subtract](Index n) {
        return subtract ? x.approximant(n) - y.approximant(n) : x.approximant(n) + y.approximant(n);
    };
    auto mod = [x, y](long m) { return std::max(x.modulus(m + 1), y.modulus(m + 1)); };
    return ComputableReal(seq, Modulus(mod));
}

ComputableReal multiply(const ComputableReal &x, const ComputableReal &y)
{
    const long kx = magnitude_exponent(x);
    const long ky = magnitude_exponent(y);
    auto seq = [x, y](Index n) { return x.approximant(n) * y.approximant(n); };
    // |x_n y_n - xy| <= |x_n||y_n - y| + |y||x_n - x|
    auto mod = [x, y, kx, ky](long m) {
        return std::max({x.modulus(m + 1 + ky), y.modulus(m + 1 + kx), x.modulus(0), y.modulus(0)});
    };
    return ComputableReal(seq, Modulus(mod));
}

ComputableReal reciprocal(const ComputableReal &y, long sep)
{
    const Index n0 = y.modulus(sep + 1);
    // With |y| >= 2^-L every approximant past y.modulus(L+1) has |y_n| > 2^-(L+1).
    if (abs(y.approximant(n0)) <= Rational::pow2(-(sep + 1))) {
        throw InvalidWitness("separation witness |y| >= 2^-" + std::to_string(sep)
                             + " contradicted by approximant at index " + std::to_string(n0));
    }
    auto seq = [y](Index n) {
        const Rational v = y.approximant(n);
        return v.is_zero() ? Rational(0) : Rational(1) / v;
    };
    // |1/y_n - 1/y| = |y - y_n| / (|y_n||y|) < 2^-(M+2L+1) * 2^(2L+1)
    auto mod = [y, sep](long m) { return std::max(y.modulus(sep + 1), y.modulus(m + 2 * sep + 1)); };
    return ComputableReal(seq, Modulus(mod));
}

} // namespace

ComputableReal arith(const ComputableReal &x, const ComputableReal &y, ArithOp op, std::optional<long> separation_exponent)
{
    switch (op) {
        case ArithOp::add:
            return add_like(x, y, false);
        case ArithOp::sub:
            return add_like(x, y, true);
        case ArithOp::mul:
            return multiply(x, y);
        case ArithOp::div:
            if (!separation_exponent) {
                throw DomainError("division of computable reals needs a separation-from-zero witness");
            }
            return multiply(x, reciprocal(y, *separation_exponent));
    }
    throw DomainError("unknown arithmetic operation");
}

ComputableReal operator+(const ComputableReal &x, const ComputableReal &y)
{
    return arith(x, y, ArithOp::add);
}

ComputableReal operator-(const ComputableReal &x, const ComputableReal &y)
{
    return arith(x, y, ArithOp::sub);
}

ComputableReal operator*(const ComputableReal &x, const ComputableReal &y)
{
    return arith(x, y, ArithOp::mul);
}

template <Direction D>
Rational MonotoneReal<D>::at(Index n) const
{
    if (n == 0) {
        throw DomainError("monotone sequences are indexed from 1");
    }
    Rational v = seq_(n);
    if (n >= 2) {
        const Rational prev = seq_(n - 1);
        const bool ok = D == Direction::nondecreasing ? prev <= v : v <= prev;
        if (!ok) {
            throw InvalidWitness(std::string(D == Direction::nondecreasing ? "nondecreasing" : "nonincreasing")
                                 + " sequence violated between indices " + std::to_string(n - 1) + " and "
                                 + std::to_string(n));
        }
    }
    return v;
}

template <Direction D>
void MonotoneReal<D>::check_prefix(Index n) const
{
    for (Index i = 1; i <= n; ++i) {
        (void)at(i);
    }
}

template class MonotoneReal<Direction::nondecreasing>;
template class MonotoneReal<Direction::nonincreasing>;

LeftComputableReal left_from_monotone(RationalSequence seq)
{
    return LeftComputableReal(std::move(seq));
}

RightComputableReal right_from_monotone(RationalSequence seq)
{
    return RightComputableReal(std::move(seq));
}

std::variant<LeftComputableReal, RightComputableReal> from_monotone(RationalSequence seq, Direction direction)
{
    if (direction == Direction::nondecreasing) {
        return LeftComputableReal(std::move(seq));
    }
    return RightComputableReal(std::move(seq));
}

WeaklyComputableReal WeaklyComputableReal::difference(LeftComputableReal a, LeftComputableReal b)
{
    return WeaklyComputableReal([a, b](Index n) { return a.at(n) - b.at(n); }, std::nullopt);
}

WeaklyComputableReal WeaklyComputableReal::with_variation(RationalSequence seq, Rational variation_bound)
{
    if (variation_bound.sign() < 0) {
        throw InvalidWitness("variation bound must be nonnegative");
    }
    return WeaklyComputableReal(std::move(seq), std::move(variation_bound));
}

Rational WeaklyComputableReal::at(Index n) const
{
    if (n == 0) {
        throw DomainError("weakly computable sequences are indexed from 1");
    }
    return seq_(n);
}

Rational WeaklyComputableReal::delta(Index n) const
{
    return at(n + 1) - at(n);
}

Rational WeaklyComputableReal::prefix_variation(Index n) const
{
    Rational total;
    if (n < 2) {
        return total;
    }
    Rational prev = at(1);
    for (Index i = 2; i <= n; ++i) {
        const Rational cur = at(i);
        total += abs(cur - prev);
        if (bound_ && total > *bound_) {
            throw InvalidWitness("partial variation up to index " + std::to_string(i) + " exceeds the bound "
                                 + bound_->to_string());
        }
        prev = cur;
    }
    return total;
}

Integer WeaklyComputableReal::prefix_delta_bound(Index n) const
{
    (void)prefix_variation(n);
    Rational best;
    for (Index i = 1; i + 1 <= n; ++i) {
        best = max(best, abs(delta(i)));
    }
    return best.ceil();
}

WeaklyComputableReal weak_from_variation(RationalSequence seq, const Rational &variation_bound)
{
    return WeaklyComputableReal::with_variation(std::move(seq), variation_bound);
}

std::variant<TwoSidedEnclosure, Timeout> two_sided_enclosure(const LeftComputableReal &l, const RightComputableReal &r,
                                                             long precision, std::optional<std::uint64_t> budget)
{
    const Rational target = Rational::pow2(-precision);
    for (Index n = 1;; ++n) {
        if (budget && n > *budget) {
            return Timeout{*budget, precision};
        }
        const Rational lo = l.at(n);
        const Rational hi = r.at(n);
        if (hi < lo) {
            throw InvalidWitness("lower sequence crosses upper sequence at index " + std::to_string(n));
        }
        if (hi - lo < target) {
            return TwoSidedEnclosure{n, lo, hi, Ball::from_endpoints(lo, hi)};
        }
    }
}

ComputableReal delta1_from_two_sided(LeftComputableReal l, RightComputableReal r, std::optional<std::uint64_t> budget)
{
    auto seq = [l, r](Index n) {
        const Index i = std::max<Index>(n, 1);
        return (l.at(i) + r.at(i)) / 2;
    };
    // Past the first n with r_n - l_n < 2^-M both sequences stay inside
    // [l_n, r_n], so the midpoint is within 2^-(M+1) of the limit.
    auto mod = [l, r, budget](long m) -> Index {
        auto found = two_sided_enclosure(l, r, m, budget);
        if (auto *t = std::get_if<Timeout>(&found)) {
            throw SearchTimeout("two-sided search exhausted its budget at precision " + std::to_string(m), t->steps);
        }
        return std::get<TwoSidedEnclosure>(found).index;
    };
    return ComputableReal(seq, Modulus(mod));
}

ComputableReal limit_if_modulus(std::function<ComputableReal(Index)> seq, Modulus tail, int spot_checks)
{
    for (int level = 0; level < spot_checks; ++level) {
        const Ball a = approximate(seq(tail(level)), level + 2);
        const Ball b = approximate(seq(tail(level + 1)), level + 2);
        // The two limits are within 2^-N + 2^-(N+1); add both enclosure radii.
        if (abs(a.center() - b.center()) > Rational::pow2(-level) * 2) {
            throw InvalidWitness("tail modulus contradicted at level " + std::to_string(level));
        }
    }
    auto diag = [seq, tail](Index j) {
        const long level = static_cast<long>(j);
        return approximate(seq(tail(level + 1)), level + 2).center();
    };
    return ComputableReal(diag, Modulus::linear(0));
}

} // namespace effd
