#ifndef EFFD_POISSON_HPP
#define EFFD_POISSON_HPP

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <effd/effective_real.hpp>
#include <effd/trig_poly.hpp>

namespace effd
{

// Fourier coefficients of boundary data as pure functions of n. a(0) is a0.
// When k1 is set, every query is checked against it (InvalidWitness on
// violation). When support is set, coefficients beyond it are zero and are
// never queried.
template <Coefficient C>
class BasicCoefficientStream
{
public:
    using Fn = std::function<C(Frequency)>;

    BasicCoefficientStream(Fn a, Fn b, std::optional<Integer> k1 = std::nullopt,
                           std::optional<Frequency> support = std::nullopt);

    // Finite spectrum; k1 is the smallest natural bounding all coefficients.
    static BasicCoefficientStream from_poly(const BasicTrigPoly<C> &p);

    C a(Frequency n) const;
    C b(Frequency n) const;

    const std::optional<Integer> &k1() const noexcept
    {
        return k1_;
    }
    const std::optional<Frequency> &support() const noexcept
    {
        return support_;
    }

private:
    C checked(const C &c, Frequency n) const;

    Fn a_;
    Fn b_;
    std::optional<Integer> k1_;
    std::optional<Frequency> support_;
};

using CoefficientStream = BasicCoefficientStream<Rational>;
using BallCoefficientStream = BasicCoefficientStream<Ball>;

struct PoissonSchedule {
    Index k;
    Rational r;
    Index M;
};

struct CertifiedEvaluation {
    Ball value;
    // Provenance of the error terms; the value's radius is authoritative.
    std::vector<std::pair<std::string, Rational>> budget;
};

inline constexpr Index default_schedule_cap = 64;

// (1 - r^2) / (1 - 2 r cos theta + r^2) with radius <= 2^-prec.
Ball poisson_kernel(const Rational &r, const PiAngle &theta, long prec);

// a0/2 + sum_{n=1}^{M} r^n (a_n cos n theta + b_n sin n theta).
// Radius <= 2^-prec for rational streams.
template <Coefficient C>
CertifiedEvaluation poisson_partial_sum(const BasicCoefficientStream<C> &f, Index M, const Rational &r,
                                        const PiAngle &theta, long prec);

// r_k = 1 - 1/k, M_k = k^2 - k. k == 0 is DomainError, k > cap ScheduleOverflow.
PoissonSchedule schedule(Index k, Index cap = default_schedule_cap);

// K1 k / 2^k: bounds |P_{r_k} f - P^{M_k}_{r_k} f| for K1-bounded coefficients.
Rational tail_bound(const Integer &k1, Index k);

// k -> P^{M_k}_{r_k} f (e^{i theta}). Each term is certified; the sequence
// carries no modulus of convergence.
template <Coefficient C>
std::function<Ball(Index)> boundary_value_sequence(const BasicCoefficientStream<C> &f, const PiAngle &theta,
                                                   long prec, Index cap = default_schedule_cap);

struct PoissonRow {
    PoissonSchedule step;
    Ball value;
    std::optional<Rational> tail_bound;
};

template <Coefficient C>
std::vector<PoissonRow> poisson_rows(const BasicCoefficientStream<C> &f, const PiAngle &theta, Index k_first,
                                     Index k_last, long prec, Index cap = default_schedule_cap);

// Exact finite series for polynomial boundary data: no truncation error.
CertifiedEvaluation interior_solve(const TrigPoly &f, const Rational &r, const PiAngle &theta, long prec);
CertifiedEvaluation interior_solve(const BallTrigPoly &f, const Rational &r, const PiAngle &theta, long prec);

// E_N = (1/2) sum_{n=1}^{N} n (a_n^2 + b_n^2); index N >= 1. Prefixes are
// memoized and shared between copies.
LeftComputableReal energy_lower_approximants(const CoefficientStream &f);

// [E_1, ..., E_N]
std::vector<Rational> energy_prefix_table(const CoefficientStream &f, Index N);

// First N <= n_max with E_N > threshold. Diagnostic only: absence of a
// crossing says nothing about convergence.
std::optional<Index> energy_threshold_crossing(const CoefficientStream &f, const Rational &threshold, Index n_max);

} // namespace effd

#endif
