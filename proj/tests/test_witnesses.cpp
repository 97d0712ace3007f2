#include <doctest.h>

#include <effd/elementary.hpp>
#include <effd/errors.hpp>
#include <effd/witnesses.hpp>

#include "oracles.hpp"

using namespace effd;

namespace
{

Rational c0_oracle()
{
    Rational s;
    for (long r = 1; r <= 10; ++r) {
        s += Rational(1, r * r);
    }
    return s / 4;
}

Rational harmonic10()
{
    Rational s;
    for (long l = 1; l <= 10; ++l) {
        s += Rational(1, l);
    }
    return s;
}

// 1 - 2^(1-n)
Rational geometric_alpha(Index n)
{
    return Rational(1) - Rational::pow2(1 - static_cast<long>(n));
}

Rational max_radius(const BallTrigPoly &p)
{
    Rational r = p.a0().radius();
    for (const auto &[n, c] : p.cos_terms()) {
        r = max(r, c.radius());
    }
    for (const auto &[n, c] : p.sin_terms()) {
        r = max(r, c.radius());
    }
    return r;
}

} // namespace

TEST_CASE("phi_m coefficients and spectrum")
{
    const TrigPoly p2 = phi_m(2);
    CHECK(p2.cos_coeff(17) == Rational(1, 2));
    CHECK(p2.cos_coeff(26) == Rational(1, 20));
    CHECK(p2.cos_coeff(16) == Rational(0));
    CHECK(p2.sin_terms().empty());
    CHECK(p2.a0() == Rational(0));
    std::set<Frequency> expect;
    for (Frequency n = 6; n <= 26; ++n) {
        if (n != 16) {
            expect.insert(n);
        }
    }
    CHECK(spectrum(p2).frequencies == expect);
    CHECK(evaluate(p2, PiAngle::of(0, 1), 60).contains(harmonic10()));

    for (Index m = 2; m <= 12; ++m) {
        const TrigPoly p = phi_m(m);
        const long k = static_cast<long>(m * m * m * m);
        CHECK(p.cos_terms().size() == 20);
        for (long n = k - 10; n <= k + 10; ++n) {
            const Rational expect_coeff = n == k ? Rational(0) : Rational(1, 2 * std::abs(n - k));
            CHECK(p.cos_coeff(static_cast<Frequency>(n)) == expect_coeff);
        }
        CHECK(dirichlet_energy(p) == c0_oracle() * Rational(Integer(m * m * m * m)));
        CHECK(sup_norm_bound(p) == harmonic10());
    }
    CHECK_THROWS_AS(phi_m(1), DomainError);
    CHECK_THROWS_AS(phi_m(0), DomainError);
}

TEST_CASE("phi_m spectra are pairwise disjoint and norms add")
{
    for (Index m = 2; m <= 12; ++m) {
        for (Index m2 = m + 1; m2 <= 12; ++m2) {
            const TrigPoly a = phi_m(m);
            const TrigPoly b = phi_m(m2);
            CHECK(spectra_disjoint(a, b));
            CHECK(h12_norm_sq(a + b) == c0_oracle() * Rational(Integer(m * m * m * m + m2 * m2 * m2 * m2)));
        }
    }
}

TEST_CASE("constants")
{
    CHECK(constant_c0() == c0_oracle());
    CHECK(constant_c_phi() == harmonic10());

    const Ball l2 = oracle::ln2_series(80);
    const Ball k3_oracle = Ball(1) / (Ball(2) * l2 * l2) + Ball(1) / l2;
    for (long prec : {10L, 40L, 100L}) {
        const Ball k3 = k3_enclosure(prec);
        CHECK(k3.intersects(k3_oracle));
        CHECK(k3.radius() <= Rational::pow2(-prec));
    }
    CHECK(k3_enclosure(20).lower() > Rational(2));
    CHECK(k3_enclosure(20).upper() < Rational(3));
    CHECK(constant_k3() == 3);

    // 3/ln 2 ~ 4.33, 6/ln 2 ~ 8.66
    CHECK(constant_k5(Integer(3), Integer(1)) == 5);
    CHECK(constant_k5(Integer(3), Integer(2)) == 9);
    CHECK(constant_k5(Integer(3), Integer(0)) == 0);
    CHECK((Ball(Rational(3)) / l2).upper() <= Rational(5));

    const Ball c1 = c1_enclosure(Rational(1, 4), 40);
    CHECK(c1.contains(Rational(0)) == false);
    // C1^2 = C_phi^2 d / C0
    CHECK((c1 * c1).intersects(Ball(harmonic10() * harmonic10() / (c0_oracle() * 4))));

    const WitnessConstants all = constants(40, Rational(1, 2), Integer(2));
    CHECK(all.k3 == 3);
    REQUIRE(all.k5.has_value());
    CHECK(*all.k5 == 9);
    REQUIRE(all.c1.has_value());
}

TEST_CASE("sigma1 witness: single packet")
{
    for (const Rational c : {Rational(1), Rational(2, 3), Rational(1, 1000)}) {
        Sigma1WitnessSpec spec{[c](Index n) { return n == 1 ? Rational(0) : c; }};
        for (Index K : {2, 3, 5}) {
            const Sigma1Witness w = sigma1_witness(spec, K, 40);
            CHECK(w.target == c);
            CHECK(w.h12_norm_sq.contains(c));
            // only the m0 packet is present
            CHECK(w.poly.degree() == 16 + 10);
            CHECK(max_radius(w.poly) <= Rational::pow2(-40));
        }
    }
}

TEST_CASE("sigma1 witness: telescoping geometric alphas")
{
    const Sigma1WitnessSpec spec{geometric_alpha, 2, Rational(1, 2)};
    for (Index K = 2; K <= 10; ++K) {
        const Sigma1Witness w = sigma1_witness(spec, K, 40);
        Rational target;
        for (Index j = 1; j <= K - 1; ++j) {
            target += geometric_alpha(j + 1) - geometric_alpha(j);
        }
        CHECK(w.target == target);
        CHECK(w.h12_norm_sq.contains(target));
        CHECK(w.h12_norm_sq.radius() * 2 <= Rational::pow2(-20));
        CHECK(max_radius(w.poly) <= Rational::pow2(-40));
        REQUIRE(w.sup_tail_bound.has_value());
    }

    // sup |f_K' - f_K| <= C1 / K for K' > K
    const Sigma1Witness w10 = sigma1_witness(spec, 10, 40);
    const Sigma1Witness w14 = sigma1_witness(spec, 14, 40);
    CHECK(sup_norm_bound(w14.poly - w10.poly) <= *w10.sup_tail_bound);
}

TEST_CASE("sigma1 witness: random monotone alphas")
{
    oracle::RationalGen gen(31);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Rational> alphas{Rational(0)};
        for (int i = 0; i < 8; ++i) {
            alphas.push_back(alphas.back() + (gen.integer(0, 3) == 0 ? Rational(0) : gen.nonnegative(2)));
        }
        const Sigma1WitnessSpec spec{[alphas](Index n) { return alphas[std::min<std::size_t>(n, alphas.size()) - 1]; }};
        const auto K = static_cast<Index>(gen.integer(2, 9));
        const Sigma1Witness w = sigma1_witness(spec, K, 30);
        Rational sum;
        for (Index j = 1; j <= K - 1; ++j) {
            sum += alphas[j] - alphas[j - 1];
        }
        CHECK(w.target == sum);
        CHECK(w.h12_norm_sq.contains(sum));
        CHECK_FALSE(w.sup_tail_bound.has_value());
    }
}

TEST_CASE("sigma1 witness: invalid inputs")
{
    const Sigma1WitnessSpec decreasing{[](Index n) { return n == 3 ? Rational(0) : Rational(Integer(n - 1)); }};
    CHECK_THROWS_AS(sigma1_witness(decreasing, 5, 20), InvalidWitness);
    const Sigma1WitnessSpec offset{[](Index n) { return Rational(Integer(n)); }};
    CHECK_THROWS_AS(sigma1_witness(offset, 5, 20), InvalidWitness);
    const Sigma1WitnessSpec ok{geometric_alpha};
    CHECK_THROWS_AS(sigma1_witness(ok, 1, 20), DomainError);
    const Sigma1WitnessSpec m0_one{geometric_alpha, 1};
    CHECK_THROWS_AS(sigma1_witness(m0_one, 4, 20), DomainError);
    const Sigma1WitnessSpec small_bound{geometric_alpha, 2, Rational(1, 8)};
    CHECK_THROWS_AS(sigma1_witness(small_bound, 4, 20), InvalidWitness);
}

TEST_CASE("weak_phi_M")
{
    const Ball l2 = oracle::ln2_series(80);
    const BallTrigPoly p2 = weak_phi_M(2, 40);
    REQUIRE(p2.cos_terms().size() == 1);
    CHECK(p2.cos_coeff(2).intersects(Ball(1) / (Ball(2) * l2)));
    CHECK(p2.cos_coeff(2).radius() <= Rational::pow2(-40));

    const Ball bound = Ball(1) / (Ball(2) * l2 * l2) + Ball(1) / l2;
    for (Index M : {2, 3, 10, 100, 1000}) {
        const BallTrigPoly p = weak_phi_M(M, 40);
        CHECK(max_radius(p) <= Rational::pow2(-40));
        CHECK(h12_norm_sq(p).upper() <= bound.lower());
        // a_n = 1/(n ln n) means exp(1/(n a_n)) = n
        const Ball a = p.cos_coeff(M);
        const Ball back = oracle::exp_direct(Ball(1) / (Ball(Rational(Integer(M))) * a), 60);
        CHECK(back.contains(Rational(Integer(M))));
    }
    CHECK_THROWS_AS(weak_phi_M(1, 10), DomainError);
}

TEST_CASE("C(M) lower bound")
{
    for (Index M : {4, 100, 65536}) {
        const Ball c = weak_c(M, 40);
        const Ball bound = ln_ball(ln_ball(Rational(Integer(M + 1)), 60) / ln_ball(Rational(2), 60), 60);
        CHECK(c.lower() >= bound.upper());
        CHECK(c.radius() <= Rational::pow2(-40));
    }
}

TEST_CASE("weak schedules")
{
    const WeakSchedule tower = WeakSchedule::tower();
    const Integer cap = Integer(1) << 20;
    CHECK(tower.degree(1, 0, cap) == 4);
    CHECK(tower.degree(2, 0, cap) == 65536);
    CHECK_THROWS_AS(tower.degree(3, 0, cap), ScheduleOverflow);
    CHECK_THROWS_AS(tower.degree(3, 5, cap), ScheduleOverflow);
    CHECK_THROWS_AS(tower.degree(2, 0, Integer(1000)), ScheduleOverflow);
    CHECK_THROWS_AS(tower.degree(0, 0, cap), DomainError);

    // ln(ln M(k) / ln 2) = k^2 ln 2 for the tower schedule
    const Ball l2 = oracle::ln2_series(80);
    CHECK(tower.log_log_ratio(3, 40)->intersects(Ball(9) * l2));
    CHECK(tower.log_log_ratio(2, 40)->intersects(ln_ball(Rational(16), 60)));

    const WeakSchedule list = WeakSchedule::explicit_list({Integer(4), Integer(16), Integer(256)});
    CHECK(list.degree(3, 0, cap) == 256);
    CHECK_THROWS_AS(list.degree(4, 10, cap), ScheduleOverflow);
    CHECK_FALSE(list.log_log_ratio(4, 20).has_value());
    CHECK(list.log_log_ratio(2, 40)->intersects(ln_ball(Rational(4), 60)));
    CHECK_THROWS_AS(WeakSchedule::explicit_list({Integer(4), Integer(4)}), DomainError);

    const WeakSchedule expo = WeakSchedule::exponential(Integer(3));
    CHECK(expo.degree(4, 0, cap) == 81);
    CHECK_THROWS_AS(expo.degree(13, 0, cap), ScheduleOverflow);
    CHECK_THROWS_AS(WeakSchedule::exponential(Integer(2)), DomainError);
}

TEST_CASE("weak witness normalization at theta = 0")
{
    const Rational c(3, 7);
    WeakWitnessSpec spec{[c](Index n) { return n == 1 ? c : Rational(0); }, Rational(1)};
    for (Index K : {1, 2}) {
        const WeakWitness w = weak_witness(spec, K, 40);
        CHECK(w.partial_sum == c);
        CHECK(w.value_at_zero.contains(c));
        CHECK(w.value_at_zero.radius() <= Rational::pow2(-30));
        CHECK(w.poly.degree() == 4);
        CHECK(w.k3 == 3);
        CHECK(w.k4 == 1);
        REQUIRE(w.k5.has_value());
        CHECK(*w.k5 == 5);
        CHECK(max_radius(w.poly) <= Rational::pow2(-40));
    }
    CHECK_THROWS_AS(weak_witness(spec, 3, 20), ScheduleOverflow);
}

TEST_CASE("weak witness with the second tower packet")
{
    WeakWitnessSpec spec{[](Index n) { return n == 1 ? Rational(1, 2) : n == 2 ? Rational(-1, 4) : Rational(0); },
                         Rational(3, 4)};
    const WeakWitness w = weak_witness(spec, 2, 30);
    CHECK(w.poly.degree() == 65536);
    CHECK(w.degrees == std::vector<Integer>{Integer(4), Integer(65536)});
    CHECK(w.value_at_zero.contains(Rational(1, 4)));
    CHECK(w.sup_tail_bound == Rational(0));
    REQUIRE(w.h12_tail_bound.has_value());
    CHECK(*w.h12_tail_bound == Rational(0));
    CHECK(max_radius(w.poly) <= Rational::pow2(-30));
}

TEST_CASE("weak witness tail bounds and alternate schedules")
{
    // d_n = (-1)^n 2^-n, V = 1
    const RationalSequence d = [](Index n) {
        const Rational m = Rational::pow2(-static_cast<long>(n));
        return n % 2 == 0 ? m : -m;
    };
    WeakWitnessSpec spec{d, Rational(1), std::nullopt, WeakSchedule::exponential(Integer(3))};
    spec.k_cap = 8;
    for (Index K = 1; K <= 6; ++K) {
        const WeakWitness w = weak_witness(spec, K, 30);
        Rational sum;
        Rational var;
        for (Index n = 1; n <= K; ++n) {
            sum += d(n);
            var += abs(d(n));
        }
        CHECK(w.partial_sum == sum);
        CHECK(w.value_at_zero.contains(sum));
        CHECK(w.sup_tail_bound == Rational(1) - var);
        REQUIRE(w.h12_tail_bound.has_value());
        CHECK_FALSE(w.k5.has_value());

        // Any longer construction stays within the tails.
        const WeakWitness longer = weak_witness(spec, K + 2, 30);
        const BallTrigPoly diff = longer.poly - w.poly;
        CHECK(sup_norm_bound(diff) <= w.sup_tail_bound + Rational::pow2(-20));
        CHECK(h12_norm_sq(diff).upper() <= *w.h12_tail_bound * *w.h12_tail_bound + Rational::pow2(-20));
    }

    const WeakWitnessSpec tower_spec{d, Rational(1)};
    const WeakWitness p = weak_witness(tower_spec, 2, 30);
    REQUIRE(p.k5.has_value());
    CHECK(*p.k5_over_k == Rational(*p.k5) / Rational(2));
    REQUIRE(p.h12_tail_bound.has_value());
    CHECK(*p.h12_tail_bound <= *p.k5_over_k);
}

TEST_CASE("weak witness invalid inputs")
{
    const WeakWitnessSpec too_varied{[](Index) { return Rational(3, 4); }, Rational(1)};
    CHECK_THROWS_AS(weak_witness(too_varied, 2, 20), InvalidWitness);
    const WeakWitnessSpec at_bound{[](Index) { return Rational(1, 2); }, Rational(1)};
    CHECK_NOTHROW(weak_witness(at_bound, 2, 20));
    WeakWitnessSpec list_spec{[](Index) { return Rational(1, 2); }, Rational(1), std::nullopt,
                              WeakSchedule::explicit_list({Integer(4), Integer(8), Integer(16)})};
    CHECK_THROWS_AS(weak_witness(list_spec, 3, 20), InvalidWitness);
    const WeakWitnessSpec big_step{[](Index n) { return n == 1 ? Rational(2) : Rational(0); }, Rational(3),
                                   Integer(1)};
    CHECK_THROWS_AS(weak_witness(big_step, 1, 20), InvalidWitness);
    const WeakWitnessSpec negative_v{[](Index) { return Rational(0); }, Rational(-1)};
    CHECK_THROWS_AS(weak_witness(negative_v, 1, 20), InvalidWitness);
}

TEST_CASE("sigma1 energy approximants")
{
    const Sigma1WitnessSpec spec{geometric_alpha};
    const LeftComputableReal e = sigma1_energy_approximants(spec);
    // complete packets telescope exactly
    for (Index m = 2; m <= 9; ++m) {
        const Index end = m * m * m * m + 10;
        CHECK(e.at(end) == geometric_alpha(m) - geometric_alpha(1));
        CHECK(e.at(end + 1) == e.at(end));
    }
    CHECK(e.at(5) == Rational(0));

    // partial packets agree with the ball witness truncated at N
    const Sigma1Witness w = sigma1_witness(spec, 4, 50);
    for (Index N : {Index{6}, Index{16}, Index{20}, Index{80}, Index{81}, Index{85}, Index{250}}) {
        BallTrigPoly cut;
        for (const auto &[n, c] : w.poly.cos_terms()) {
            if (n <= N) {
                cut.set_cos(n, c);
            }
        }
        CHECK(dirichlet_energy(cut).contains(e.at(N)));
    }
    CHECK_NOTHROW(e.check_prefix(300));

    const Sigma1WitnessSpec late{[](Index n) { return n < 10000 ? Rational(0) : Rational(1, 2); }};
    const LeftComputableReal d = sigma1_energy_approximants(late);
    const Index before = Index{10000} * 10000 * 10000 * 10000 - 11;
    const Index after = Index{10000} * 10000 * 10000 * 10000 + 10;
    CHECK(d.at(before) == Rational(0));
    CHECK(d.at(after) == Rational(1, 2));
}
