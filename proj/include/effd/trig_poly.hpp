#ifndef EFFD_TRIG_POLY_HPP
#define EFFD_TRIG_POLY_HPP

#include <concepts>
#include <cstdint>
#include <map>
#include <set>
#include <span>

#include <effd/ball.hpp>

namespace effd
{

using Frequency = std::uint64_t;

template <class C>
concept Coefficient = std::same_as<C, Rational> || std::same_as<C, Ball>;

namespace detail
{
inline bool is_zero(const Rational &q)
{
    return q.is_zero();
}
inline bool is_zero(const Ball &b)
{
    return b.is_zero();
}
inline Rational upper_abs(const Rational &q)
{
    return abs(q);
}
inline Rational upper_abs(const Ball &b)
{
    return b.magnitude();
}
inline Rational square(const Rational &q)
{
    return q * q;
}
inline Ball square(const Ball &b)
{
    return b.square();
}
} // namespace detail

// Finite trigonometric polynomial
//
//   p(e^{i theta}) = a0/2 + sum_n [ a_n cos(n theta) + b_n sin(n theta) ]
//
// with n >= 1 in both maps. Exactly-zero coefficients are never stored, so the
// maps' key sets are the support. Coefficients are all exact rationals
// (TrigPoly) or all balls with per-coefficient radii (BallTrigPoly).
template <Coefficient C>
class BasicTrigPoly
{
public:
    using coefficient_type = C;
    using Terms = std::map<Frequency, C>;

    BasicTrigPoly() = default;

    // The constant function with value `value` (stored as a0 = 2 value).
    static BasicTrigPoly constant(const C &value)
    {
        BasicTrigPoly p;
        p.set_a0(value + value);
        return p;
    }
    static BasicTrigPoly cosine(Frequency n, const C &c = C(1))
    {
        BasicTrigPoly p;
        p.set_cos(n, c);
        return p;
    }
    static BasicTrigPoly sine(Frequency n, const C &c = C(1))
    {
        BasicTrigPoly p;
        p.set_sin(n, c);
        return p;
    }

    const C &a0() const noexcept
    {
        return a0_;
    }
    void set_a0(C c)
    {
        a0_ = std::move(c);
    }
    C cos_coeff(Frequency n) const
    {
        auto it = cos_.find(n);
        return it == cos_.end() ? C{} : it->second;
    }
    C sin_coeff(Frequency n) const
    {
        auto it = sin_.find(n);
        return it == sin_.end() ? C{} : it->second;
    }
    void set_cos(Frequency n, C c)
    {
        put(cos_, n, std::move(c));
    }
    void set_sin(Frequency n, C c)
    {
        put(sin_, n, std::move(c));
    }
    void add_cos(Frequency n, const C &c)
    {
        put(cos_, n, cos_coeff(n) + c);
    }
    void add_sin(Frequency n, const C &c)
    {
        put(sin_, n, sin_coeff(n) + c);
    }

    const Terms &cos_terms() const noexcept
    {
        return cos_;
    }
    const Terms &sin_terms() const noexcept
    {
        return sin_;
    }

    Frequency degree() const
    {
        Frequency d = 0;
        if (!cos_.empty()) {
            d = cos_.rbegin()->first;
        }
        if (!sin_.empty()) {
            d = std::max(d, sin_.rbegin()->first);
        }
        return d;
    }
    bool is_constant() const
    {
        return cos_.empty() && sin_.empty();
    }
    bool is_zero() const
    {
        return is_constant() && detail::is_zero(a0_);
    }
    std::size_t term_count() const
    {
        return cos_.size() + sin_.size() + (detail::is_zero(a0_) ? 0 : 1);
    }

    BasicTrigPoly &operator+=(const BasicTrigPoly &o)
    {
        a0_ = a0_ + o.a0_;
        for (const auto &[n, c] : o.cos_) {
            add_cos(n, c);
        }
        for (const auto &[n, c] : o.sin_) {
            add_sin(n, c);
        }
        return *this;
    }
    BasicTrigPoly &operator-=(const BasicTrigPoly &o)
    {
        return *this += o.scaled(C(-1));
    }
    BasicTrigPoly scaled(const C &s) const
    {
        BasicTrigPoly out;
        out.set_a0(a0_ * s);
        for (const auto &[n, c] : cos_) {
            out.set_cos(n, c * s);
        }
        for (const auto &[n, c] : sin_) {
            out.set_sin(n, c * s);
        }
        return out;
    }
    friend BasicTrigPoly operator+(BasicTrigPoly a, const BasicTrigPoly &b)
    {
        return a += b;
    }
    friend BasicTrigPoly operator-(BasicTrigPoly a, const BasicTrigPoly &b)
    {
        return a -= b;
    }
    friend bool operator==(const BasicTrigPoly &, const BasicTrigPoly &) = default;

private:
    static void put(Terms &terms, Frequency n, C c);

    C a0_{};
    Terms cos_;
    Terms sin_;
};

using TrigPoly = BasicTrigPoly<Rational>;
using BallTrigPoly = BasicTrigPoly<Ball>;

BallTrigPoly to_ball(const TrigPoly &p);

// theta = multiple * pi. Reduction of n theta modulo 2 pi is exact.
struct PiAngle {
    Rational multiple;

    static PiAngle of(long num, long den)
    {
        return PiAngle{Rational(Integer(num), Integer(den))};
    }
};

// Set of frequencies with a nonvanishing coefficient; 0 is included when a0 != 0.
struct Spectrum {
    std::set<Frequency> frequencies;

    bool disjoint_from(const Spectrum &other) const;
    friend bool operator==(const Spectrum &, const Spectrum &) = default;
};

// Enclosure of p(e^{i theta}); radius <= 2^-prec for rational coefficients,
// plus the propagated coefficient radii for ball coefficients.
template <Coefficient C>
Ball evaluate(const BasicTrigPoly<C> &p, const PiAngle &theta, long prec);

// Same at an angle given in radians; uses cos_ball / sin_ball at n theta.
template <Coefficient C>
Ball evaluate_radians(const BasicTrigPoly<C> &p, const Ball &theta, long prec);

template <Coefficient C>
BasicTrigPoly<C> linear_combination(std::span<const BasicTrigPoly<C>> polys, std::span<const C> coeffs);

// p(theta) cos(k theta) by product-to-sum; frequency-0 products fold into a0.
template <Coefficient C>
BasicTrigPoly<C> multiply_by_cos(const BasicTrigPoly<C> &p, Frequency k);

// a0^2/4 + (1/2) sum (a_n^2 + b_n^2)
template <Coefficient C>
C l2_norm_sq(const BasicTrigPoly<C> &p);

// (1/2) sum n (a_n^2 + b_n^2)
template <Coefficient C>
C dirichlet_energy(const BasicTrigPoly<C> &p);

// a0^2/4 + dirichlet_energy(p)
template <Coefficient C>
C h12_norm_sq(const BasicTrigPoly<C> &p);

// |a0|/2 + sum (|a_n| + |b_n|), an upper bound on max |p|.
template <Coefficient C>
Rational sup_norm_bound(const BasicTrigPoly<C> &p);

template <Coefficient C>
Spectrum spectrum(const BasicTrigPoly<C> &p);

template <Coefficient C>
bool spectra_disjoint(const BasicTrigPoly<C> &p, const BasicTrigPoly<C> &q)
{
    return spectrum(p).disjoint_from(spectrum(q));
}

struct QuadratureGrid {
    std::size_t radial = 4000;
    // 0 picks 4 * degree + 8, enough for the periodic midpoint rule to be
    // exact in theta on the polynomial's gradient.
    std::size_t angular = 0;
};

// Midpoint-rule value of (1/2pi) * integral over the disk of |grad u|^2 for
// the harmonic extension u of p, in double precision. The radius is a
// heuristic Richardson estimate from a half-resolution rerun, not a
// certified bound; this is only a cross-check for dirichlet_energy.
Ball dirichlet_integral_quadrature(const TrigPoly &p, const QuadratureGrid &grid = {});

} // namespace effd

#endif
