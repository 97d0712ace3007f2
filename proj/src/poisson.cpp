#include <effd/poisson.hpp>

#include <memory>
#include <mutex>

#include <effd/elementary.hpp>
#include <effd/errors.hpp>

namespace effd
{

namespace
{

void require_radius(const Rational &r)
{
    if (r < Rational(0) || r >= Rational(1)) {
        throw DomainError("radius r must lie in [0, 1), got " + r.to_string());
    }
}

Rational upper_abs(const Rational &q)
{
    return abs(q);
}

Rational upper_abs(const Ball &b)
{
    return b.magnitude();
}

Ball to_rounded_ball(const Rational &q, long bits)
{
    return Ball(q).rounded(bits);
}

Ball to_rounded_ball(const Ball &b, long bits)
{
    return b.rounded(bits);
}

long bits_for_count(Index count)
{
    return ceil_log2(Rational(Integer(count + 1)));
}

// sum of r^n-scaled coefficients, rounded to w bits each, as a ball polynomial
template <Coefficient C>
BallTrigPoly scaled_poly(const BasicCoefficientStream<C> &f, Index M, const Rational &r, long w)
{
    BallTrigPoly p;
    p.set_a0(to_rounded_ball(f.a(0), w));
    Rational rn(1);
    for (Index n = 1; n <= M; ++n) {
        rn *= r;
        if (rn.is_zero()) {
            break;
        }
        const C a = f.a(n);
        const C b = f.b(n);
        if (!detail::is_zero(a)) {
            p.set_cos(n, to_rounded_ball(a * C(rn), w));
        }
        if (!detail::is_zero(b)) {
            p.set_sin(n, to_rounded_ball(b * C(rn), w));
        }
    }
    return p;
}

} // namespace

template <Coefficient C>
BasicCoefficientStream<C>::BasicCoefficientStream(Fn a, Fn b, std::optional<Integer> k1,
                                                  std::optional<Frequency> support)
    : a_(std::move(a)), b_(std::move(b)), k1_(std::move(k1)), support_(support)
{
    if (!a_ || !b_) {
        throw DomainError("coefficient stream needs both coefficient functions");
    }
    if (k1_ && *k1_ < 0) {
        throw DomainError("coefficient bound K1 must be a natural number");
    }
}

template <Coefficient C>
BasicCoefficientStream<C> BasicCoefficientStream<C>::from_poly(const BasicTrigPoly<C> &p)
{
    Rational bound = detail::upper_abs(p.a0());
    for (const auto &[n, c] : p.cos_terms()) {
        bound = max(bound, detail::upper_abs(c));
    }
    for (const auto &[n, c] : p.sin_terms()) {
        bound = max(bound, detail::upper_abs(c));
    }
    auto shared = std::make_shared<const BasicTrigPoly<C>>(p);
    return BasicCoefficientStream(
        [shared](Frequency n) { return n == 0 ? shared->a0() : shared->cos_coeff(n); },
        [shared](Frequency n) { return n == 0 ? C{} : shared->sin_coeff(n); }, bound.ceil(), p.degree());
}

template <Coefficient C>
C BasicCoefficientStream<C>::checked(const C &c, Frequency n) const
{
    if (k1_ && upper_abs(c) > Rational(*k1_)) {
        throw InvalidWitness("coefficient at n = " + std::to_string(n) + " exceeds the declared bound K1 = "
                             + k1_->get_str());
    }
    return c;
}

template <Coefficient C>
C BasicCoefficientStream<C>::a(Frequency n) const
{
    if (support_ && n > *support_) {
        return C{};
    }
    return checked(a_(n), n);
}

template <Coefficient C>
C BasicCoefficientStream<C>::b(Frequency n) const
{
    if (n == 0 || (support_ && n > *support_)) {
        return C{};
    }
    return checked(b_(n), n);
}

template class BasicCoefficientStream<Rational>;
template class BasicCoefficientStream<Ball>;

Ball poisson_kernel(const Rational &r, const PiAngle &theta, long prec)
{
    require_radius(r);
    const Rational num = Rational(1) - r * r;
    if (r.is_zero()) {
        return Ball(1);
    }
    // |dP/dc| <= 2 r (1 - r^2) / (1 - r)^4
    const Rational one_minus = Rational(1) - r;
    const Rational lipschitz = Rational(2) * r * num / pow(one_minus, 4);
    for (long guard = ceil_log2(lipschitz + 1) + 4;; guard += 8) {
        const Ball c = cos_pi(theta.multiple, prec + guard);
        const Ball den = Ball(Rational(1) + r * r) - Ball(Rational(2) * r) * c;
        const Ball value = (Ball(num) / den).rounded(prec + 2);
        if (value.radius() <= Rational::pow2(-prec)) {
            return value;
        }
    }
}

template <Coefficient C>
CertifiedEvaluation poisson_partial_sum(const BasicCoefficientStream<C> &f, Index M, const Rational &r,
                                        const PiAngle &theta, long prec)
{
    require_radius(r);
    const Index top = f.support() ? std::min<Index>(M, *f.support()) : M;
    // 2 top + 1 coefficient roundings share 2^-(prec+2); evaluation gets 2^-(prec+2).
    const long w = prec + 2 + bits_for_count(2 * top + 1);
    const BallTrigPoly p = scaled_poly(f, top, r, w);
    CertifiedEvaluation out{evaluate(p, theta, prec + 2), {}};
    out.budget.emplace_back("truncation", Rational(0));
    out.budget.emplace_back("coefficient_rounding", Rational::pow2(-(prec + 2)));
    out.budget.emplace_back("evaluation_rounding", Rational::pow2(-(prec + 2)));
    return out;
}

PoissonSchedule schedule(Index k, Index cap)
{
    if (k == 0) {
        throw DomainError("schedule index k must be >= 1");
    }
    if (k > cap) {
        throw ScheduleOverflow("schedule index k = " + std::to_string(k) + " exceeds the cap "
                               + std::to_string(cap));
    }
    const Rational kk{Integer(k)};
    return PoissonSchedule{k, Rational(1) - Rational(1) / kk, k * k - k};
}

Rational tail_bound(const Integer &k1, Index k)
{
    if (k1 < 0) {
        throw DomainError("K1 must be a natural number");
    }
    return Rational(k1) * Rational(Integer(k)) * Rational::pow2(-static_cast<long>(k));
}

template <Coefficient C>
std::function<Ball(Index)> boundary_value_sequence(const BasicCoefficientStream<C> &f, const PiAngle &theta,
                                                   long prec, Index cap)
{
    return [f, theta, prec, cap](Index k) {
        const PoissonSchedule s = schedule(k, cap);
        return poisson_partial_sum(f, s.M, s.r, theta, prec).value;
    };
}

template <Coefficient C>
std::vector<PoissonRow> poisson_rows(const BasicCoefficientStream<C> &f, const PiAngle &theta, Index k_first,
                                     Index k_last, long prec, Index cap)
{
    std::vector<PoissonRow> rows;
    for (Index k = k_first; k <= k_last; ++k) {
        const PoissonSchedule s = schedule(k, cap);
        PoissonRow row{s, poisson_partial_sum(f, s.M, s.r, theta, prec).value, std::nullopt};
        if (f.support() && *f.support() <= s.M) {
            row.tail_bound = Rational(0);
        } else if (f.k1()) {
            row.tail_bound = tail_bound(*f.k1(), k);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace
{

template <Coefficient C>
CertifiedEvaluation interior_solve_impl(const BasicTrigPoly<C> &f, const Rational &r, const PiAngle &theta,
                                        long prec)
{
    require_radius(r);
    BasicTrigPoly<C> scaled;
    scaled.set_a0(f.a0());
    for (const auto &[n, c] : f.cos_terms()) {
        scaled.set_cos(n, c * C(pow(r, n)));
    }
    for (const auto &[n, c] : f.sin_terms()) {
        scaled.set_sin(n, c * C(pow(r, n)));
    }
    CertifiedEvaluation out{evaluate(scaled, theta, prec), {}};
    out.budget.emplace_back("truncation", Rational(0));
    out.budget.emplace_back("evaluation_rounding", Rational::pow2(-prec));
    return out;
}

} // namespace

CertifiedEvaluation interior_solve(const TrigPoly &f, const Rational &r, const PiAngle &theta, long prec)
{
    return interior_solve_impl(f, r, theta, prec);
}

CertifiedEvaluation interior_solve(const BallTrigPoly &f, const Rational &r, const PiAngle &theta, long prec)
{
    return interior_solve_impl(f, r, theta, prec);
}

namespace
{

Rational energy_term(const CoefficientStream &f, Index n)
{
    const Rational a = f.a(n);
    const Rational b = f.b(n);
    return Rational(Integer(n)) * (a * a + b * b) / 2;
}

} // namespace

LeftComputableReal energy_lower_approximants(const CoefficientStream &f)
{
    struct Table {
        std::mutex lock;
        std::vector<Rational> prefix{Rational(0)};
    };
    auto table = std::make_shared<Table>();
    return left_from_monotone([f, table](Index N) {
        std::lock_guard guard(table->lock);
        auto &prefix = table->prefix;
        for (Index n = prefix.size(); n <= N; ++n) {
            prefix.push_back(prefix.back() + energy_term(f, n));
        }
        return prefix[N];
    });
}

std::vector<Rational> energy_prefix_table(const CoefficientStream &f, Index N)
{
    std::vector<Rational> out;
    out.reserve(N);
    Rational acc;
    for (Index n = 1; n <= N; ++n) {
        acc += energy_term(f, n);
        out.push_back(acc);
    }
    return out;
}

std::optional<Index> energy_threshold_crossing(const CoefficientStream &f, const Rational &threshold, Index n_max)
{
    Rational acc;
    for (Index n = 1; n <= n_max; ++n) {
        acc += energy_term(f, n);
        if (acc > threshold) {
            return n;
        }
    }
    return std::nullopt;
}

#define EFFD_INSTANTIATE(C)                                                                                            \
    template CertifiedEvaluation poisson_partial_sum<C>(const BasicCoefficientStream<C> &, Index, const Rational &,   \
                                                        const PiAngle &, long);                                        \
    template std::function<Ball(Index)> boundary_value_sequence<C>(const BasicCoefficientStream<C> &,                 \
                                                                   const PiAngle &, long, Index);                      \
    template std::vector<PoissonRow> poisson_rows<C>(const BasicCoefficientStream<C> &, const PiAngle &, Index, Index, \
                                                     long, Index);

EFFD_INSTANTIATE(Rational)
EFFD_INSTANTIATE(Ball)

#undef EFFD_INSTANTIATE

} // namespace effd
