#include <effd/witnesses.hpp>

#include <functional>
#include <memory>
#include <mutex>

#include <effd/elementary.hpp>
#include <effd/errors.hpp>

namespace effd
{

namespace
{

TrigPoly harmonic_packet()
{
    TrigPoly p;
    for (Index l = 1; l <= harmonic_packet_width; ++l) {
        p.set_cos(l, Rational(Integer(1), Integer(l)));
    }
    return p;
}

// Smallest natural n with value <= n, refining until the enclosure settles.
Integer smallest_natural_at_least(const std::function<Ball(long)> &value)
{
    for (long prec = 32; prec <= 4096; prec *= 2) {
        const Ball v = value(prec);
        if (v.upper() <= Rational(0)) {
            return Integer(0);
        }
        const Integer hi = v.upper().ceil();
        if (v.is_exact() || v.lower() > Rational(Integer(hi - 1))) {
            return hi;
        }
    }
    throw DomainError("could not separate the constant from an integer");
}

long bits_for(const Rational &q)
{
    return ceil_log2(abs(q) + 1);
}

Ball ln2_ball(long prec)
{
    return ln_ball(Rational(2), prec);
}

} // namespace

TrigPoly phi_m(Index m)
{
    if (m < 2) {
        throw DomainError("phi_m needs m >= 2: for m = 1 the packet reflects through frequency 0");
    }
    if (m > (Index{1} << 15)) {
        throw DomainError("phi_m: m^4 must fit in 64 bits");
    }
    return multiply_by_cos(harmonic_packet(), m * m * m * m);
}

Rational constant_c0()
{
    Rational s;
    for (Index r = 1; r <= harmonic_packet_width; ++r) {
        s += Rational(Integer(1), Integer(r * r));
    }
    return s / 4;
}

Rational constant_c_phi()
{
    Rational s;
    for (Index l = 1; l <= harmonic_packet_width; ++l) {
        s += Rational(Integer(1), Integer(l));
    }
    return s;
}

Ball k3_enclosure(long prec)
{
    const Ball l2 = ln2_ball(prec + 8);
    return (Ball(1) / (Ball(2) * l2.square()) + Ball(1) / l2).rounded(prec + 2);
}

Integer constant_k3()
{
    return smallest_natural_at_least(k3_enclosure);
}

Integer constant_k5(const Integer &k3, const Integer &k4)
{
    if (k3 < 0 || k4 < 0) {
        throw DomainError("K3 and K4 are natural numbers");
    }
    const Rational prod(Integer(k3 * k4));
    return smallest_natural_at_least([&](long prec) { return Ball(prod) / ln2_ball(prec + bits_for(prod) + 4); });
}

Ball c1_enclosure(const Rational &sup_delta, long prec)
{
    if (sup_delta < Rational(0)) {
        throw DomainError("sup of the increments must be nonnegative");
    }
    const Rational cphi = constant_c_phi();
    return (Ball(cphi) * sqrt_ball(sup_delta / constant_c0(), prec + 4)).rounded(prec + 2);
}

WitnessConstants constants(long prec, std::optional<Rational> sup_delta, std::optional<Integer> k4)
{
    WitnessConstants c{constant_c0(), constant_c_phi(), k3_enclosure(prec), constant_k3(), sup_delta,
                       std::nullopt, k4, std::nullopt};
    if (sup_delta) {
        c.c1 = c1_enclosure(*sup_delta, prec);
    }
    if (k4) {
        c.k5 = constant_k5(c.k3, *k4);
    }
    return c;
}

Sigma1Witness sigma1_witness(const Sigma1WitnessSpec &spec, Index K, long prec)
{
    if (!spec.alphas) {
        throw DomainError("sigma1 witness needs an alpha sequence");
    }
    if (spec.m0 < 2) {
        throw DomainError("sigma1 witness start index m0 must be >= 2");
    }
    if (K < spec.m0) {
        throw DomainError("sigma1 witness needs K >= m0");
    }
    if (prec < 1) {
        throw DomainError("precision must be >= 1");
    }
    const LeftComputableReal alphas = left_from_monotone(spec.alphas);
    if (!alphas.at(1).is_zero()) {
        throw InvalidWitness("sigma1 witness needs alpha_1 = 0, got " + alphas.at(1).to_string());
    }
    const Index packets = K - spec.m0 + 1;
    // at() verifies alpha_{j+1} >= alpha_j on the way.
    const Rational target = alphas.at(packets + 1) - alphas.at(1);
    const Rational c0 = constant_c0();

    Sigma1Witness out{{}, spec.m0, K, target, Ball(), std::nullopt, std::nullopt};
    for (Index j = 1; j <= packets; ++j) {
        const Rational d = alphas.at(j + 1) - alphas.at(j);
        if (spec.delta_bound && d > *spec.delta_bound) {
            throw InvalidWitness("increment d_" + std::to_string(j) + " exceeds the declared bound");
        }
        if (d.is_zero()) {
            continue;
        }
        const Index m = spec.m0 + j - 1;
        // sqrt(d) / ||phi_m|| = sqrt(d / C0) / m^2
        const Ball scale = sqrt_ball(d / c0, prec + 6) / Ball(Rational(Integer(m * m)));
        const TrigPoly packet = phi_m(m);
        for (const auto &[n, a] : packet.cos_terms()) {
            out.poly.set_cos(n, (scale * Ball(a)).rounded(prec + 2));
        }
    }
    out.h12_norm_sq = h12_norm_sq(out.poly);
    if (spec.delta_bound) {
        out.c1 = c1_enclosure(*spec.delta_bound, prec);
        // sum_{m>K} 1/m^2 < 1/K
        out.sup_tail_bound = out.c1->upper() / Rational(Integer(K));
    }
    return out;
}

LeftComputableReal sigma1_energy_approximants(const Sigma1WitnessSpec &spec)
{
    if (!spec.alphas) {
        throw DomainError("sigma1 witness needs an alpha sequence");
    }
    if (spec.m0 < 2) {
        throw DomainError("sigma1 witness start index m0 must be >= 2");
    }
    const LeftComputableReal alphas = left_from_monotone(spec.alphas);
    if (!alphas.at(1).is_zero()) {
        throw InvalidWitness("sigma1 witness needs alpha_1 = 0, got " + alphas.at(1).to_string());
    }
    struct Memo {
        std::mutex lock;
        // energy of the complete packet m0 + j - 1, i >= 0
        std::vector<Rational> packet;
    };
    auto memo = std::make_shared<Memo>();
    const Rational c0 = constant_c0();
    const Index m0 = spec.m0;
    // (1/2) d / (C0 m^4) * sum_{n <= limit} n a_n^2 over the packet window
    auto packet_energy = [c0](Index m, const Rational &d, Index limit) {
        const Index k = m * m * m * m;
        Rational s;
        for (Index r = 1; r <= harmonic_packet_width; ++r) {
            const Rational inv(Integer(1), Integer(4 * r * r));
            if (k - r <= limit) {
                s += Rational(Integer(k - r)) * inv;
            }
            if (k + r <= limit) {
                s += Rational(Integer(k + r)) * inv;
            }
        }
        return d * s / (c0 * Rational(Integer(k)) * 2);
    };
    return left_from_monotone([=](Index N) {
        std::lock_guard guard(memo->lock);
        Rational energy;
        // m^4 fits in 64 bits for m < 2^16
        for (Index m = m0; m < (Index{1} << 16); ++m) {
            const Index k = m * m * m * m;
            if (k - harmonic_packet_width > N) {
                break;
            }
            const Index j = m - m0 + 1;
            if (k + harmonic_packet_width <= N) {
                if (memo->packet.size() < j) {
                    memo->packet.push_back(packet_energy(m, alphas.at(j + 1) - alphas.at(j), k + harmonic_packet_width));
                }
                energy += memo->packet[j - 1];
            } else {
                energy += packet_energy(m, alphas.at(j + 1) - alphas.at(j), N);
            }
        }
        return energy;
    });
}

BallTrigPoly weak_phi_M(Index M, long prec)
{
    if (M < 2) {
        throw DomainError("weak_phi_M needs M >= 2");
    }
    const std::vector<Ball> logs = ln_table(M, prec + 4);
    BallTrigPoly p;
    for (Index n = 2; n <= M; ++n) {
        p.set_cos(n, (Ball(1) / (Ball(Rational(Integer(n))) * logs[n])).rounded(prec + 2));
    }
    return p;
}

Ball weak_c(Index M, long prec)
{
    const long w = prec + 4 + ceil_log2(Rational(Integer(M)));
    return evaluate(weak_phi_M(M, w), PiAngle{Rational(0)}, w).rounded(prec + 2);
}

WeakSchedule WeakSchedule::tower()
{
    return WeakSchedule(Kind::tower, {}, Integer(2));
}

WeakSchedule WeakSchedule::explicit_list(std::vector<Integer> degrees)
{
    if (degrees.empty()) {
        throw DomainError("explicit schedule needs at least one degree");
    }
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        if (degrees[i] < 3 || (i > 0 && degrees[i] <= degrees[i - 1])) {
            throw DomainError("explicit schedule must be strictly increasing with entries >= 3");
        }
    }
    return WeakSchedule(Kind::explicit_list, std::move(degrees), Integer(0));
}

WeakSchedule WeakSchedule::exponential(Integer base)
{
    if (base < 3) {
        throw DomainError("exponential schedule needs base >= 3");
    }
    return WeakSchedule(Kind::exponential, {}, std::move(base));
}

Index WeakSchedule::default_k_cap() const
{
    switch (kind_) {
    case Kind::tower:
        return 2;
    case Kind::explicit_list:
        return degrees_.size();
    case Kind::exponential:
        return 64;
    }
    return 0;
}

std::string WeakSchedule::describe() const
{
    switch (kind_) {
    case Kind::tower:
        return "2^(2^(k^2))";
    case Kind::explicit_list:
        return "explicit(" + std::to_string(degrees_.size()) + ")";
    case Kind::exponential:
        return base_.get_str() + "^k";
    }
    return {};
}

Integer WeakSchedule::degree(Index k, Index k_cap, const Integer &max_degree) const
{
    if (k == 0) {
        throw DomainError("schedule index k must be >= 1");
    }
    const Index cap = k_cap == 0 ? default_k_cap() : k_cap;
    auto overflow = [&](const std::string &why) {
        return ScheduleOverflow("weak schedule " + describe() + " at k = " + std::to_string(k) + ": " + why);
    };
    if (k > cap) {
        throw overflow("k exceeds the cap " + std::to_string(cap));
    }
    Integer M;
    switch (kind_) {
    case Kind::tower: {
        // M = 2^e with e = 2^(k^2); compare bit lengths before materializing.
        const auto max_bits = static_cast<Index>(mpz_sizeinbase(max_degree.get_mpz_t(), 2));
        if (k * k >= 63 || (Index{1} << (k * k)) >= max_bits) {
            throw overflow("M(k) = 2^(2^" + std::to_string(k * k) + ") exceeds the degree cap");
        }
        M = Integer(1) << static_cast<mp_bitcnt_t>(Index{1} << (k * k));
        break;
    }
    case Kind::explicit_list:
        if (k > degrees_.size()) {
            throw overflow("the explicit schedule has only " + std::to_string(degrees_.size()) + " entries");
        }
        M = degrees_[k - 1];
        break;
    case Kind::exponential:
        M = 1;
        for (Index i = 0; i < k; ++i) {
            M *= base_;
            if (M > max_degree) {
                break;
            }
        }
        break;
    }
    if (M > max_degree) {
        throw overflow("M(k) exceeds the degree cap " + max_degree.get_str());
    }
    return M;
}

std::optional<Ball> WeakSchedule::log_log_ratio(Index k, long prec) const
{
    if (k == 0) {
        throw DomainError("schedule index k must be >= 1");
    }
    const long w = prec + 8;
    switch (kind_) {
    case Kind::tower:
        return (Ball(Rational(Integer(k * k))) * ln2_ball(w)).rounded(prec + 2);
    case Kind::explicit_list:
        if (k > degrees_.size()) {
            return std::nullopt;
        }
        return ln_ball(ln_ball(Rational(degrees_[k - 1]), w) / ln2_ball(w), prec + 2);
    case Kind::exponential:
        return ln_ball(Ball(Rational(Integer(k))) * ln_ball(Rational(base_), w) / ln2_ball(w), prec + 2);
    }
    return std::nullopt;
}

WeakWitness weak_witness(const WeakWitnessSpec &spec, Index K, long prec)
{
    if (!spec.deltas) {
        throw DomainError("weak witness needs a delta sequence");
    }
    if (K < 1) {
        throw DomainError("weak witness needs K >= 1");
    }
    if (prec < 1) {
        throw DomainError("precision must be >= 1");
    }
    if (spec.variation_bound < Rational(0)) {
        throw InvalidWitness("variation bound must be nonnegative");
    }
    const Integer k4 = spec.k4 ? *spec.k4 : spec.variation_bound.ceil();
    if (k4 < 0) {
        throw InvalidWitness("K4 must be a natural number");
    }

    WeakWitness out{};
    out.k3 = constant_k3();
    out.k4 = k4;
    Rational variation;
    const long k_bits = ceil_log2(Rational(Integer(K + 1)));
    for (Index n = 1; n <= K; ++n) {
        const Rational d = spec.deltas(n);
        if (abs(d) > Rational(k4)) {
            throw InvalidWitness("|d_" + std::to_string(n) + "| exceeds K4 = " + k4.get_str());
        }
        variation += abs(d);
        if (variation > spec.variation_bound) {
            throw InvalidWitness("prefix variation through n = " + std::to_string(n) + " exceeds the bound V");
        }
        out.partial_sum += d;
        const Integer M = spec.schedule.degree(n, spec.k_cap, spec.max_degree);
        out.degrees.push_back(M);
        if (d.is_zero()) {
            continue;
        }
        const Index m = M.get_ui();
        const long w = prec + 6 + ceil_log2(Rational(M)) + bits_for(Rational(k4)) + k_bits;
        const BallTrigPoly phi = weak_phi_M(m, w);
        const Ball c = evaluate(phi, PiAngle{Rational(0)}, w);
        const Ball factor = Ball(d) / c;
        for (const auto &[j, a] : phi.cos_terms()) {
            out.poly.add_cos(j, (a * factor).rounded(w));
        }
    }
    // Per-coefficient radius 2^-(final) keeps the sum at theta = 0 within 2^-(prec+1).
    const long final_bits = prec + 1 + ceil_log2(Rational(Integer(out.poly.term_count() + 1)));
    BallTrigPoly rounded;
    for (const auto &[j, a] : out.poly.cos_terms()) {
        rounded.set_cos(j, a.rounded(final_bits));
    }
    out.poly = std::move(rounded);
    out.value_at_zero = evaluate(out.poly, PiAngle{Rational(0)}, prec + 4);
    out.h12_norm_sq = h12_norm_sq(out.poly);
    out.sup_tail_bound = spec.variation_bound - variation;

    // ||phi_M / C(M)||_{H^1/2} <= sqrt(K3) / ln(ln(M+1)/ln 2) <= K3 / ln(ln M/ln 2),
    // and ln(ln M(n)/ln 2) increases with n.
    if (const auto lower = spec.schedule.log_log_ratio(K + 1, prec + 8); lower && lower->lower() > Rational(0)) {
        out.h12_tail_bound = Rational(out.k3) * out.sup_tail_bound / lower->lower();
    }
    if (spec.schedule.kind() == WeakSchedule::Kind::tower) {
        out.k5 = constant_k5(out.k3, k4);
        out.k5_over_k = Rational(*out.k5) / Rational(Integer(K));
    }
    return out;
}

} // namespace effd
