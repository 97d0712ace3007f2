#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <effd/effective_real.hpp>
#include <effd/elementary.hpp>
#include <effd/poisson.hpp>
#include <effd/trig_poly.hpp>
#include <effd/witnesses.hpp>

#include "oracles.hpp"

using namespace effd;

namespace
{

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string &what)
    {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

struct Criterion {
    int id;
    std::string name;
    double time_limit; // seconds; 0 means none stated
    std::function<Outcome()> run;
};

Rational c0_oracle()
{
    Rational s;
    for (long r = 1; r <= 10; ++r) {
        s += Rational(1, r * r);
    }
    return s / 4;
}

Rational pow4(Index m)
{
    return Rational(Integer(m * m * m * m));
}

Outcome energy_law()
{
    Outcome o;
    const Rational c0 = c0_oracle();
    for (Index m = 2; m <= 12; ++m) {
        const TrigPoly p = phi_m(m);
        o.require(dirichlet_energy(p) == c0 * pow4(m), "energy mismatch at m = " + std::to_string(m));
    }
    o.detail = o.pass ? "m = 2..12 exact" : o.detail;
    return o;
}

Outcome coefficient_formula()
{
    Outcome o;
    for (Index m = 2; m <= 12; ++m) {
        const TrigPoly p = phi_m(m);
        const Integer k = Integer(m * m * m * m);
        o.require(p.term_count() == 20 && p.sin_terms().empty() && p.a0().is_zero(),
                  "spectrum size at m = " + std::to_string(m));
        for (long l = 1; l <= 10; ++l) {
            const Rational expected(1, 2 * l);
            for (const Integer &n : {Integer(k + l), Integer(k - l)}) {
                o.require(p.cos_coeff(n.get_ui()) == expected, "coefficient at m = " + std::to_string(m));
            }
        }
    }
    o.detail = o.pass ? "20 terms 1/(2|n-m^4|), m = 2..12" : o.detail;
    return o;
}

Outcome disjoint_pythagoras()
{
    Outcome o;
    const Rational c0 = c0_oracle();
    std::vector<TrigPoly> phis;
    for (Index m = 0; m <= 12; ++m) {
        phis.push_back(m >= 2 ? phi_m(m) : TrigPoly());
    }
    int pairs = 0;
    for (Index m = 2; m <= 12; ++m) {
        for (Index mp = m + 1; mp <= 12; ++mp) {
            std::set<Frequency> a;
            for (const auto &[n, c] : phis[m].cos_terms()) {
                a.insert(n);
            }
            bool overlap = false;
            for (const auto &[n, c] : phis[mp].cos_terms()) {
                overlap = overlap || a.count(n) > 0;
            }
            o.require(!overlap && spectra_disjoint(phis[m], phis[mp]), "overlap");
            o.require(h12_norm_sq(phis[m] + phis[mp]) == c0 * (pow4(m) + pow4(mp)), "Pythagoras");
            ++pairs;
        }
    }
    o.detail = o.pass ? std::to_string(pairs) + " pairs exact" : o.detail;
    return o;
}

Outcome telescoping()
{
    Outcome o;
    const RationalSequence alphas = [](Index n) { return Rational(1) - Rational::pow2(1 - static_cast<long>(n)); };
    const Index K = 10;
    const Index m0 = 2;
    Rational target;
    for (Index m = m0; m <= K; ++m) {
        target += alphas(m - m0 + 2) - alphas(m - m0 + 1);
    }
    const Sigma1Witness w = sigma1_witness(Sigma1WitnessSpec{alphas, m0, std::nullopt}, K, 40);
    const Rational width = w.h12_norm_sq.upper() - w.h12_norm_sq.lower();
    o.require(w.target == target, "target");
    o.require(w.h12_norm_sq.contains(target), "enclosure misses target");
    o.require(width <= Rational::pow2(-20), "width");
    o.detail = "target " + target.to_string() + ", width <= 2^" + std::to_string(width.is_zero() ? 0 : ceil_log2(width));
    return o;
}

Outcome poisson_tail()
{
    Outcome o;
    const Index support = 200;
    const CoefficientStream f(
        [support](Frequency n) { return n >= 1 && n <= support ? Rational(1, Integer(n) * Integer(n)) : Rational(0); },
        [](Frequency) { return Rational(0); }, Integer(1), support);
    oracle::TrigOracle trig(70);
    Rational worst_ratio;
    for (Index k = 2; k <= 12; ++k) {
        const PoissonSchedule s = schedule(k);
        for (const Rational &x : {Rational(0), Rational(1, 3), Rational(1, 2)}) {
            Ball exact;
            Ball rn(1);
            for (Frequency n = 1; n <= support; ++n) {
                rn = (rn * Ball(s.r)).rounded(90);
                exact += rn * Ball(f.a(n)) * trig.cos_pi(x * Rational(Integer(n)));
                exact = exact.rounded(80);
            }
            o.require(exact.radius() <= Rational::pow2(-60), "oracle precision");
            const Ball got = poisson_partial_sum(f, s.M, s.r, PiAngle{x}, 60).value;
            const Ball diff = exact - got;
            const Rational bound = tail_bound(Integer(1), k);
            o.require(diff.magnitude() <= bound, "tail bound exceeded at k = " + std::to_string(k));
            worst_ratio = std::max(worst_ratio, diff.magnitude() / bound);
        }
    }
    if (o.pass) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "max |error| / (k/2^k) = %.3g", worst_ratio.to_double());
        o.detail = buf;
    }
    return o;
}

Outcome schedule_values()
{
    Outcome o;
    const PoissonSchedule s2 = schedule(2);
    const PoissonSchedule s3 = schedule(3);
    o.require(s2.r == Rational(1, 2) && s2.M == 2, "k = 2");
    o.require(s3.r == Rational(2, 3) && s3.M == 6, "k = 3");
    o.detail = o.pass ? "(1/2, 2), (2/3, 6)" : o.detail;
    return o;
}

Outcome mean_value()
{
    Outcome o;
    oracle::RationalGen gen(7);
    for (int t = 0; t < 20; ++t) {
        TrigPoly f;
        f.set_a0(gen.uniform(5, 50));
        const long deg = gen.integer(1, 12);
        for (long n = 1; n <= deg; ++n) {
            f.set_cos(n, gen.uniform(3, 50));
            f.set_sin(n, gen.uniform(3, 50));
        }
        const PiAngle theta{gen.uniform(2, 30)};
        o.require(interior_solve(f, Rational(0), theta, 50).value.contains(f.a0() / 2), "mean value");
    }
    const TrigPoly c = TrigPoly::cosine(1);
    for (const Rational &r : {Rational(1, 4), Rational(1, 2), Rational(3, 4)}) {
        o.require(interior_solve(c, r, PiAngle{Rational(0)}, 50).value.contains(r), "cos series at " + r.to_string());
    }
    o.detail = o.pass ? "20 random polynomials, r in {1/4, 1/2, 3/4}" : o.detail;
    return o;
}

Outcome quadrature()
{
    Outcome o;
    double worst = 0;
    for (Frequency n = 1; n <= 5; ++n) {
        const Ball q = dirichlet_integral_quadrature(TrigPoly::cosine(n), QuadratureGrid{8000, 0});
        const Rational err = abs(q.center() - Rational(Integer(n), Integer(2)));
        worst = std::max(worst, err.to_double());
        o.require(err <= Rational(1, 1000000), "n = " + std::to_string(n));
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "max |error| = %.2e", worst);
    o.detail = o.pass ? buf : o.detail;
    return o;
}

Outcome constants_check()
{
    Outcome o;
    const Ball k3 = k3_enclosure(60);
    o.require(k3.lower() > Rational(2) && k3.upper() < Rational(3), "K3 enclosure not inside (2, 3)");
    o.require(constant_k3() == 3, "K3 != 3");
    // Independent check of the logarithms used on the right-hand side.
    const Ball ln2 = oracle::ln2_series(70);
    for (const Index M : {Index{4}, Index{100}, Index{65536}}) {
        const Ball lnM1 = ln_ball(Rational(Integer(M + 1)), 70);
        o.require(oracle::exp_direct(lnM1, 70).contains(Rational(Integer(M + 1))), "ln oracle");
        const Ball ratio = lnM1 / ln2;
        const Ball rhs = ln_ball(ratio, 60);
        o.require(oracle::exp_direct(rhs, 60).intersects(ratio), "ln oracle");
        const Ball c = weak_c(M, 40);
        o.require(c.lower() > rhs.upper(), "C(M) inequality at M = " + std::to_string(M));
    }
    o.detail = o.pass ? "K3 in (2,3); C(M) certified for M = 4, 100, 65536" : o.detail;
    return o;
}

Outcome weak_normalization()
{
    Outcome o;
    const RationalSequence deltas = [](Index n) { return n == 1 ? Rational(3, 7) : Rational(0); };
    WeakWitnessSpec spec{deltas, Rational(3, 7)};
    spec.k_cap = 2;
    const WeakWitness w = weak_witness(spec, 2, 40);
    const Ball v = evaluate(w.poly, PiAngle{Rational(0)}, 40);
    o.require(v.contains(Rational(3, 7)), "does not contain 3/7");
    o.require(v.radius() <= Rational::pow2(-30), "radius");
    o.detail = "radius <= 2^" + std::to_string(v.radius().is_zero() ? 0 : ceil_log2(v.radius()));
    return o;
}

Outcome property_suite()
{
    Outcome o;
    oracle::RationalGen gen(11);
    // Monotone energy prefixes over random streams.
    for (int t = 0; t < 1000 && o.pass; ++t) {
        std::vector<Rational> a(502), b(502);
        for (std::size_t n = 1; n < a.size(); ++n) {
            a[n] = gen.uniform(4, 16);
            b[n] = gen.uniform(4, 16);
        }
        const CoefficientStream f([a](Frequency n) { return a.at(n); }, [b](Frequency n) { return b.at(n); });
        const std::vector<Rational> e = energy_prefix_table(f, 501);
        for (std::size_t i = 0; i + 1 < e.size(); ++i) {
            const Index N = i + 1;
            const Rational step = Rational(Integer(N + 1)) * (a[N + 1] * a[N + 1] + b[N + 1] * b[N + 1]) / 2;
            o.require(e[i + 1] >= e[i] && e[i + 1] - e[i] == step, "energy prefix at N = " + std::to_string(N));
        }
    }
    // Computable-real arithmetic against an independent pi enclosure.
    const ComputableReal pi = ComputableReal::from_enclosures([](long p) { return pi_ball(p); });
    for (int t = 0; t < 1000 && o.pass; ++t) {
        const Rational q = gen.uniform(8, 100);
        const Rational s = gen.uniform(8, 100);
        const long p = gen.integer(4, 100);
        const ComputableReal x = pi * ComputableReal::constant(q) + ComputableReal::constant(s) - pi;
        const Ball got = approximate(x, p);
        const Ball ref = oracle::bbp_pi(p + 30) * Ball(q - 1) + Ball(s);
        o.require(got.intersects(ref), "computable real misses oracle");
        o.require(abs(got.center() - ref.center()) <= Rational::pow2(-p) + ref.radius(), "approximant too far");
        const Ball finer = approximate(x, p + 1);
        o.require(abs(got.center() - finer.center()) <= Rational::pow2(-p) + Rational::pow2(-p - 1), "Cauchy");
    }
    // Ball containment.
    for (int t = 0; t < 1000 && o.pass; ++t) {
        const Ball u = gen.ball(10);
        const Ball v = gen.ball(10);
        const Rational x = gen.inside(u);
        const Rational y = gen.inside(v);
        o.require((u + v).contains(x + y) && (u - v).contains(x - y) && (u * v).contains(x * y), "ring op");
        o.require(u.square().contains(x * x), "square");
        if (!v.contains_zero()) {
            o.require((u / v).contains(x / y), "division");
        }
        o.require(u.rounded(gen.integer(1, 40)).contains(u), "rounding");
        const Ball au(abs(u.center()) + u.radius(), u.radius());
        const Rational ax = abs(x) + u.radius();
        o.require(sqrt_ball(au, 40).intersects(sqrt_ball(ax, 60)), "sqrt");
        o.require(cos_ball(u, 40).intersects(oracle::taylor_cos_direct(x, 50)), "cos");
        o.require(sin_ball(u, 40).intersects(oracle::taylor_sin_direct(x, 50)), "sin");
    }
    o.detail = o.pass ? "10^3 streams, 10^3 computable-real and 10^3 ball samples" : o.detail;
    return o;
}

} // namespace

int main()
{
    const std::vector<Criterion> criteria = {
        {1, "exact energy law", 1, energy_law},
        {2, "coefficient formula", 0, coefficient_formula},
        {3, "disjointness and Pythagoras", 0, disjoint_pythagoras},
        {4, "telescoping witness", 10, telescoping},
        {5, "Poisson tail bound", 30, poisson_tail},
        {6, "schedule values", 0, schedule_values},
        {7, "mean-value and series identities", 0, mean_value},
        {8, "quadrature cross-check", 30, quadrature},
        {9, "constants", 0, constants_check},
        {10, "weak witness normalization", 10, weak_normalization},
        {11, "monotonicity and containment properties", 0, property_suite},
    };
    int failures = 0;
    for (const Criterion &c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception &e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (o.pass && c.time_limit > 0 && secs > c.time_limit) {
            o.pass = false;
            o.detail = "over time limit";
        }
        failures += o.pass ? 0 : 1;
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.2fs", secs);
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << c.id << ". " << c.name << "  [" << o.detail << "; "
                  << timing << "]\n";
    }
    std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed\n";
    return failures == 0 ? 0 : 1;
}
