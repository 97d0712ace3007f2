#include <doctest.h>

#include <array>
#include <vector>

#include <effd/errors.hpp>
#include <effd/trig_poly.hpp>

#include "oracles.hpp"

using namespace effd;

namespace
{

TrigPoly harmonic_block()
{
    TrigPoly p;
    for (long l = 1; l <= 10; ++l) {
        p.set_cos(static_cast<Frequency>(l), Rational(1, l));
    }
    return p;
}

// cos(16 theta) * sum_{l<=10} cos(l theta)/l, built by hand from its
// coefficient formula rather than through multiply_by_cos.
TrigPoly phi2_by_formula()
{
    TrigPoly p;
    for (long n = 6; n <= 26; ++n) {
        if (n != 16) {
            p.set_cos(static_cast<Frequency>(n), Rational(1, 2 * std::abs(n - 16)));
        }
    }
    return p;
}

Ball oracle_eval(const TrigPoly &p, const Rational &multiple, long bits)
{
    Ball acc(p.a0() / 2);
    for (const auto &[n, c] : p.cos_terms()) {
        acc += Ball(c) * oracle::cos_pi_direct(multiple * Rational(Integer(n)), bits + 8);
    }
    for (const auto &[n, c] : p.sin_terms()) {
        acc += Ball(c) * oracle::sin_pi_direct(multiple * Rational(Integer(n)), bits + 8);
    }
    return acc;
}

TrigPoly random_poly(oracle::RationalGen &gen, Frequency max_freq, int terms)
{
    TrigPoly p;
    p.set_a0(gen.uniform(3));
    for (int i = 0; i < terms; ++i) {
        const auto n = static_cast<Frequency>(gen.integer(1, static_cast<long>(max_freq)));
        if (gen.integer(0, 1) == 0) {
            p.set_cos(n, gen.uniform(3));
        } else {
            p.set_sin(n, gen.uniform(3));
        }
    }
    return p;
}

} // namespace

TEST_CASE("coefficient storage invariants")
{
    TrigPoly p;
    p.set_cos(3, Rational(1, 2));
    p.set_cos(3, Rational(0));
    CHECK(p.cos_terms().empty());
    CHECK(p.is_zero());
    CHECK_THROWS_AS(p.set_cos(0, Rational(1)), DomainError);
    CHECK_THROWS_AS(p.set_sin(0, Rational(1)), DomainError);
    p.add_sin(4, Rational(1, 3));
    p.add_sin(4, Rational(-1, 3));
    CHECK(p.sin_terms().empty());
    CHECK(TrigPoly::constant(Rational(1)).a0() == Rational(2));
}

TEST_CASE("evaluate at rational multiples of pi")
{
    const TrigPoly c1 = TrigPoly::cosine(1);
    CHECK(evaluate(c1, PiAngle::of(0, 1), 60).contains(Rational(1)));
    CHECK(evaluate(c1, PiAngle::of(1, 2), 60).contains(Rational(0)));

    Rational harmonic;
    for (long l = 1; l <= 10; ++l) {
        harmonic += Rational(1, l);
    }
    const Ball at0 = evaluate(multiply_by_cos(harmonic_block(), 16), PiAngle::of(0, 1), 60);
    CHECK(at0.contains(harmonic));
    CHECK(at0.radius() <= Rational::pow2(-60));

    oracle::RationalGen gen(11);
    for (int trial = 0; trial < 40; ++trial) {
        const TrigPoly p = random_poly(gen, 40, 8);
        const Rational mult(Integer(gen.integer(-50, 50)), Integer(gen.integer(1, 37)));
        for (long prec : {10L, 53L, 120L}) {
            const Ball got = evaluate(p, PiAngle{mult}, prec);
            CHECK(got.radius() <= Rational::pow2(-prec));
            CHECK(got.intersects(oracle_eval(p, mult, prec + 10)));
        }
    }
}

TEST_CASE("evaluate at radian angles agrees with pi multiples")
{
    oracle::RationalGen gen(12);
    const Ball pi = oracle::bbp_pi(200);
    for (int trial = 0; trial < 20; ++trial) {
        const TrigPoly p = random_poly(gen, 20, 6);
        const Rational mult(Integer(gen.integer(-20, 20)), Integer(gen.integer(1, 13)));
        const Ball theta = pi * Ball(mult);
        const Ball got = evaluate_radians(p, theta, 60);
        CHECK(got.intersects(oracle_eval(p, mult, 70)));
        CHECK(got.radius() <= Rational::pow2(-50));
    }
}

TEST_CASE("ball-coefficient evaluation propagates coefficient radii")
{
    BallTrigPoly p;
    p.set_cos(2, Ball(Rational(1, 3), Rational(1, 1000)));
    const Ball v = evaluate(p, PiAngle::of(0, 1), 40);
    CHECK(v.contains(Rational(1, 3) + Rational(1, 1000)));
    CHECK(v.contains(Rational(1, 3) - Rational(1, 1000)));
}

TEST_CASE("multiply_by_cos expansions")
{
    const TrigPoly sq = multiply_by_cos(TrigPoly::cosine(1), 1);
    CHECK(sq.a0() == Rational(1));
    CHECK(sq.cos_coeff(2) == Rational(1, 2));
    CHECK(sq.cos_terms().size() == 1);
    CHECK(sq.sin_terms().empty());

    CHECK(multiply_by_cos(harmonic_block(), 16) == phi2_by_formula());
    CHECK(multiply_by_cos(TrigPoly{}, 7).is_zero());
    CHECK_THROWS_AS(multiply_by_cos(TrigPoly::cosine(1), 0), DomainError);

    // sin(2) cos(3) = (sin 5 - sin 1) / 2
    const TrigPoly s = multiply_by_cos(TrigPoly::sine(2), 3);
    CHECK(s.sin_coeff(5) == Rational(1, 2));
    CHECK(s.sin_coeff(1) == Rational(-1, 2));
    CHECK(multiply_by_cos(TrigPoly::sine(3), 3) == TrigPoly::sine(6, Rational(1, 2)));
}

TEST_CASE("multiply_by_cos matches pointwise products at 64 angles")
{
    oracle::RationalGen gen(13);
    for (int trial = 0; trial < 6; ++trial) {
        const TrigPoly p = random_poly(gen, 30, 7);
        const auto k = static_cast<Frequency>(gen.integer(1, 30));
        const TrigPoly prod = multiply_by_cos(p, k);
        for (long j = 0; j < 64; ++j) {
            const Rational mult(Integer(j), Integer(32));
            const Ball lhs = evaluate(prod, PiAngle{mult}, 60);
            const Ball rhs = oracle_eval(p, mult, 70) * oracle::cos_pi_direct(mult * Rational(Integer(k)), 70);
            CHECK(lhs.intersects(rhs));
        }
    }
}

TEST_CASE("norms and energy")
{
    const TrigPoly c1 = TrigPoly::cosine(1);
    const TrigPoly one = TrigPoly::constant(Rational(1));
    CHECK(l2_norm_sq(c1) == Rational(1, 2));
    CHECK(l2_norm_sq(one) == Rational(1));
    CHECK(dirichlet_energy(c1) == Rational(1, 2));
    CHECK(dirichlet_energy(one) == Rational(0));
    CHECK(h12_norm_sq(c1) == Rational(1, 2));
    CHECK(h12_norm_sq(one) == Rational(1));

    const TrigPoly phi2 = multiply_by_cos(harmonic_block(), 16);
    Rational l2;
    Rational energy;
    for (long n = 6; n <= 26; ++n) {
        if (n != 16) {
            const Rational a(1, 2 * std::abs(n - 16));
            l2 += a * a / 2;
            energy += Rational(n) * a * a / 2;
        }
    }
    CHECK(l2_norm_sq(phi2) == l2);
    CHECK(dirichlet_energy(phi2) == energy);

    Rational c0;
    for (long r = 1; r <= 10; ++r) {
        c0 += Rational(1, 4 * r * r);
    }
    CHECK(energy == c0 * 16);

    // Two disjoint packets at different frequencies.
    const TrigPoly phi3 = multiply_by_cos(harmonic_block(), 81);
    REQUIRE(spectra_disjoint(phi2, phi3));
    CHECK(h12_norm_sq(phi2 + phi3) == c0 * Rational(16 + 81));

    Rational harmonic;
    for (long l = 1; l <= 10; ++l) {
        harmonic += Rational(1, l);
    }
    CHECK(sup_norm_bound(phi2) == harmonic);
}

TEST_CASE("properties: Parseval additivity, energy sign, linearity")
{
    oracle::RationalGen gen(14);
    for (int trial = 0; trial < 100; ++trial) {
        TrigPoly p = random_poly(gen, 20, 6);
        TrigPoly q;
        const TrigPoly base = random_poly(gen, 20, 6);
        for (const auto &[n, c] : base.cos_terms()) {
            q.set_cos(n + 20, c);
        }
        if (!spectra_disjoint(p, q)) {
            FAIL("shifted spectra must be disjoint");
        }
        CHECK(l2_norm_sq(p + q) == l2_norm_sq(p) + l2_norm_sq(q));
        CHECK(h12_norm_sq(p + q) == h12_norm_sq(p) + h12_norm_sq(q));

        const Rational e = dirichlet_energy(p);
        CHECK(e >= Rational(0));
        CHECK((e == Rational(0)) == p.is_constant());

        const std::array<TrigPoly, 2> polys{p, q};
        const std::array<Rational, 2> coeffs{gen.uniform(3), gen.uniform(3)};
        const TrigPoly comb = linear_combination<Rational>(polys, coeffs);
        const PiAngle theta{Rational(Integer(gen.integer(0, 63)), Integer(17))};
        const Ball lhs = evaluate(comb, theta, 50);
        const Ball rhs = Ball(coeffs[0]) * evaluate(p, theta, 50) + Ball(coeffs[1]) * evaluate(q, theta, 50);
        CHECK(lhs.intersects(rhs));
        CHECK(Ball(sup_norm_bound(p)).upper() >= abs(evaluate(p, theta, 50).center()) - Rational::pow2(-50));
    }
    const std::array<TrigPoly, 1> one{TrigPoly::cosine(1)};
    const std::array<Rational, 2> two{Rational(1), Rational(2)};
    CHECK_THROWS_AS(linear_combination<Rational>(one, two), DomainError);
}

TEST_CASE("ball polynomials: norms enclose the rational values")
{
    oracle::RationalGen gen(15);
    for (int trial = 0; trial < 50; ++trial) {
        const TrigPoly p = random_poly(gen, 15, 5);
        BallTrigPoly b = to_ball(p);
        for (const auto &[n, c] : p.cos_terms()) {
            b.set_cos(n, Ball(c, Rational(1, 1 << 20)));
        }
        CHECK(l2_norm_sq(b).contains(l2_norm_sq(p)));
        CHECK(dirichlet_energy(b).contains(dirichlet_energy(p)));
        CHECK(h12_norm_sq(b).contains(h12_norm_sq(p)));
        CHECK(sup_norm_bound(b) >= sup_norm_bound(p));
        CHECK(spectrum(b) == spectrum(p));
    }
}

TEST_CASE("spectrum")
{
    TrigPoly p = TrigPoly::cosine(3);
    p.set_sin(5, Rational(1));
    CHECK(spectrum(p).frequencies == std::set<Frequency>{3, 5});
    p.set_a0(Rational(1));
    CHECK(spectrum(p).frequencies == std::set<Frequency>{0, 3, 5});
    CHECK_FALSE(spectra_disjoint(p, TrigPoly::constant(Rational(2))));
    CHECK(spectra_disjoint(p, TrigPoly::cosine(4)));
}

TEST_CASE("quadrature cross-check of the Dirichlet integral")
{
    CHECK(dirichlet_integral_quadrature(TrigPoly::constant(Rational(3))).contains(Rational(0)));
    for (Frequency n = 1; n <= 3; ++n) {
        const Ball q = dirichlet_integral_quadrature(TrigPoly::cosine(n), {2000, 0});
        CHECK(abs(q.center() - Rational(Integer(n), Integer(2))) < Rational(1, 100000));
    }
    TrigPoly mix = TrigPoly::cosine(1);
    mix.set_sin(2, Rational(1));
    const Ball q = dirichlet_integral_quadrature(mix, {2000, 0});
    CHECK(abs(q.center() - Rational(3, 2)) < Rational(1, 100000));
}
