#ifndef EFFD_WITNESSES_HPP
#define EFFD_WITNESSES_HPP

#include <optional>
#include <string>
#include <vector>

#include <effd/effective_real.hpp>
#include <effd/trig_poly.hpp>

namespace effd
{

// cos(m^4 theta) * sum_{l=1}^{10} cos(l theta) / l, for m >= 2.
// Cosine coefficients 1/(2|n - m^4|) on 0 < |n - m^4| <= 10.
TrigPoly phi_m(Index m);

inline constexpr Index harmonic_packet_width = 10;

// 1/4 sum_{r<=10} 1/r^2, so that dirichlet_energy(phi_m(m)) = C0 m^4.
Rational constant_c0();
// sum_{l<=10} 1/l, an l^1 bound on every phi_m.
Rational constant_c_phi();
// 1/(2 ln^2 2) + 1/ln 2
Ball k3_enclosure(long prec);
// Smallest natural >= k3_enclosure.
Integer constant_k3();
// Smallest natural >= K3 K4 / ln 2.
Integer constant_k5(const Integer &k3, const Integer &k4);
// (C_phi / sqrt(C0)) * sqrt(sup_delta)
Ball c1_enclosure(const Rational &sup_delta, long prec);

struct WitnessConstants {
    Rational c0;
    Rational c_phi;
    Ball k3_value;
    Integer k3;
    std::optional<Rational> sup_delta;
    std::optional<Ball> c1;
    std::optional<Integer> k4;
    std::optional<Integer> k5;
};

WitnessConstants constants(long prec, std::optional<Rational> sup_delta = std::nullopt,
                           std::optional<Integer> k4 = std::nullopt);

// Nondecreasing alphas (1-based) with alpha_1 = 0. Packet m >= m0 carries
// d_{m - m0 + 1} = alpha_{m - m0 + 2} - alpha_{m - m0 + 1}.
// delta_bound, when given, must bound every d_j (not only the queried ones);
// it feeds the sup-norm tail constant.
struct Sigma1WitnessSpec {
    RationalSequence alphas;
    Index m0 = 2;
    std::optional<Rational> delta_bound;
};

struct Sigma1Witness {
    BallTrigPoly poly;
    Index first_packet;
    Index last_packet;
    // alpha_{K - m0 + 2} - alpha_1: exact h12 norm square of poly.
    Rational target;
    Ball h12_norm_sq;
    std::optional<Ball> c1;
    // Upper bound on sup |f_* - f_K|, i.e. C1 / K.
    std::optional<Rational> sup_tail_bound;
};

// sum_{m=m0}^{K} sqrt(d) phi_m / ||phi_m||_{H^1/2}; coefficient radii <= 2^-prec.
Sigma1Witness sigma1_witness(const Sigma1WitnessSpec &spec, Index K, long prec);

// E_N of the (infinite) sigma1 witness f_*, exact: its squared coefficients
// d a_n^2 / (C0 m^4) are rational. Nondecreasing in N; no modulus.
LeftComputableReal sigma1_energy_approximants(const Sigma1WitnessSpec &spec);

// sum_{n=2}^{M} cos(n theta) / (n ln n); coefficient radii <= 2^-prec.
BallTrigPoly weak_phi_M(Index M, long prec);

// C(M) = weak_phi_M(M)(0) = sum_{n=2}^{M} 1/(n ln n).
Ball weak_c(Index M, long prec);

class WeakSchedule
{
public:
    enum class Kind { tower, explicit_list, exponential };

    // M(k) = 2^(2^(k^2))
    static WeakSchedule tower();
    // Strictly increasing, every entry >= 3.
    static WeakSchedule explicit_list(std::vector<Integer> degrees);
    // M(k) = base^k, base >= 3.
    static WeakSchedule exponential(Integer base);

    Kind kind() const noexcept
    {
        return kind_;
    }
    const std::vector<Integer> &degrees() const noexcept
    {
        return degrees_;
    }
    const Integer &base() const noexcept
    {
        return base_;
    }
    Index default_k_cap() const;
    std::string describe() const;

    // M(k); ScheduleOverflow when k > k_cap or M(k) > max_degree.
    Integer degree(Index k, Index k_cap, const Integer &max_degree) const;

    // ln(ln M(k) / ln 2) without materializing M(k); nullopt if the
    // schedule does not define M(k).
    std::optional<Ball> log_log_ratio(Index k, long prec) const;

private:
    WeakSchedule(Kind kind, std::vector<Integer> degrees, Integer base)
        : kind_(kind), degrees_(std::move(degrees)), base_(std::move(base))
    {
    }

    Kind kind_;
    std::vector<Integer> degrees_;
    Integer base_;
};

// deltas are 1-based with sum |d_n| <= variation_bound. k4, when absent,
// defaults to ceil(variation_bound), which bounds every |d_n|. k_cap == 0
// uses the schedule's default.
struct WeakWitnessSpec {
    RationalSequence deltas;
    Rational variation_bound;
    std::optional<Integer> k4;
    WeakSchedule schedule = WeakSchedule::tower();
    Index k_cap = 0;
    Integer max_degree = Integer(1) << 20;
};

struct WeakWitness {
    BallTrigPoly poly;
    std::vector<Integer> degrees;
    // sum_{n<=K} d_n, exact
    Rational partial_sum;
    Ball value_at_zero;
    Ball h12_norm_sq;
    Integer k3;
    Integer k4;
    // Upper bound on sum_{n>K} |d_n|, hence on sup |f_* - f_K|.
    Rational sup_tail_bound;
    // Upper bound on ||f_* - f_K||_{H^1/2}; absent when M(K+1) is undefined.
    std::optional<Rational> h12_tail_bound;
    // Tower schedule only: K5 and K5 / K.
    std::optional<Integer> k5;
    std::optional<Rational> k5_over_k;
};

// sum_{n<=K} d_n phi_{M(n)} / C(M(n)); packets with d_n == 0 are skipped but
// their schedule entries are still validated.
WeakWitness weak_witness(const WeakWitnessSpec &spec, Index K, long prec);

} // namespace effd

#endif
