#include <effd/trig_poly.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <effd/elementary.hpp>
#include <effd/errors.hpp>

namespace effd
{

namespace
{

Ball as_ball(const Rational &q)
{
    return Ball(q);
}

const Ball &as_ball(const Ball &b)
{
    return b;
}

Rational reduce_mod2(const Rational &x)
{
    return x - Rational((x / 2).floor()) * 2;
}

} // namespace

template <Coefficient C>
void BasicTrigPoly<C>::put(Terms &terms, Frequency n, C c)
{
    if (n == 0) {
        throw DomainError("frequency 0 belongs to a0, not to the cosine/sine maps");
    }
    if (detail::is_zero(c)) {
        terms.erase(n);
    } else {
        terms.insert_or_assign(n, std::move(c));
    }
}

template class BasicTrigPoly<Rational>;
template class BasicTrigPoly<Ball>;

BallTrigPoly to_ball(const TrigPoly &p)
{
    BallTrigPoly out;
    out.set_a0(Ball(p.a0()));
    for (const auto &[n, c] : p.cos_terms()) {
        out.set_cos(n, Ball(c));
    }
    for (const auto &[n, c] : p.sin_terms()) {
        out.set_sin(n, Ball(c));
    }
    return out;
}

bool Spectrum::disjoint_from(const Spectrum &other) const
{
    auto a = frequencies.begin();
    auto b = other.frequencies.begin();
    while (a != frequencies.end() && b != other.frequencies.end()) {
        if (*a == *b) {
            return false;
        }
        if (*a < *b) {
            ++a;
        } else {
            ++b;
        }
    }
    return true;
}

template <Coefficient C>
Ball evaluate(const BasicTrigPoly<C> &p, const PiAngle &theta, long prec)
{
    const Rational l1 = sup_norm_bound(p);
    const long w = prec + ceil_log2(l1 + 1) + 3;
    const long wsum = prec + 3 + ceil_log2(Rational(static_cast<long>(p.term_count() + 1)));

    // n theta / pi reduced modulo 2 repeats often; cache per residue.
    std::map<Rational, Ball> cos_cache;
    std::map<Rational, Ball> sin_cache;
    auto lookup = [&](std::map<Rational, Ball> &cache, const Rational &x, bool cosine) -> const Ball & {
        auto it = cache.find(x);
        if (it == cache.end()) {
            it = cache.emplace(x, cosine ? cos_pi(x, w) : sin_pi(x, w)).first;
        }
        return it->second;
    };

    Ball acc = as_ball(p.a0()) / Ball(2);
    auto add = [&](const Ball &term) {
        acc += term;
        if (!acc.is_exact()) {
            acc = acc.rounded(wsum);
        }
    };
    for (const auto &[n, c] : p.cos_terms()) {
        const Rational x = reduce_mod2(theta.multiple * Rational(Integer(n)));
        add(as_ball(c) * lookup(cos_cache, x, true));
    }
    for (const auto &[n, c] : p.sin_terms()) {
        const Rational x = reduce_mod2(theta.multiple * Rational(Integer(n)));
        add(as_ball(c) * lookup(sin_cache, x, false));
    }
    return acc;
}

template <Coefficient C>
Ball evaluate_radians(const BasicTrigPoly<C> &p, const Ball &theta, long prec)
{
    const Rational l1 = sup_norm_bound(p);
    const long w = prec + ceil_log2(l1 + 1) + 3;
    const long wsum = prec + 3 + ceil_log2(Rational(static_cast<long>(p.term_count() + 1)));
    Ball acc = as_ball(p.a0()) / Ball(2);
    auto add = [&](const Ball &term) {
        acc += term;
        if (!acc.is_exact()) {
            acc = acc.rounded(wsum);
        }
    };
    for (const auto &[n, c] : p.cos_terms()) {
        add(as_ball(c) * cos_ball(theta * Ball(Rational(Integer(n))), w));
    }
    for (const auto &[n, c] : p.sin_terms()) {
        add(as_ball(c) * sin_ball(theta * Ball(Rational(Integer(n))), w));
    }
    return acc;
}

template <Coefficient C>
BasicTrigPoly<C> linear_combination(std::span<const BasicTrigPoly<C>> polys, std::span<const C> coeffs)
{
    if (polys.size() != coeffs.size()) {
        throw DomainError("linear_combination needs one coefficient per polynomial");
    }
    BasicTrigPoly<C> out;
    for (std::size_t i = 0; i < polys.size(); ++i) {
        out += polys[i].scaled(coeffs[i]);
    }
    return out;
}

template <Coefficient C>
BasicTrigPoly<C> multiply_by_cos(const BasicTrigPoly<C> &p, Frequency k)
{
    if (k == 0) {
        throw DomainError("multiply_by_cos needs a frequency k >= 1");
    }
    const C two(2);
    BasicTrigPoly<C> out;
    // (a0/2) cos(k theta)
    if (!detail::is_zero(p.a0())) {
        out.add_cos(k, p.a0() / two);
    }
    // cos(n) cos(k) = (cos(|n-k|) + cos(n+k)) / 2; a constant half-term is a0/2.
    for (const auto &[n, c] : p.cos_terms()) {
        const C half = c / two;
        out.add_cos(n + k, half);
        if (n == k) {
            out.set_a0(out.a0() + c);
        } else {
            out.add_cos(n > k ? n - k : k - n, half);
        }
    }
    // sin(n) cos(k) = (sin(n+k) + sin(n-k)) / 2
    for (const auto &[n, c] : p.sin_terms()) {
        const C half = c / two;
        out.add_sin(n + k, half);
        if (n > k) {
            out.add_sin(n - k, half);
        } else if (n < k) {
            out.add_sin(k - n, C{} - half);
        }
    }
    return out;
}

template <Coefficient C>
C l2_norm_sq(const BasicTrigPoly<C> &p)
{
    C sum{};
    for (const auto &[n, c] : p.cos_terms()) {
        sum = sum + detail::square(c);
    }
    for (const auto &[n, c] : p.sin_terms()) {
        sum = sum + detail::square(c);
    }
    return detail::square(p.a0()) / C(4) + sum / C(2);
}

template <Coefficient C>
C dirichlet_energy(const BasicTrigPoly<C> &p)
{
    C sum{};
    for (const auto &[n, c] : p.cos_terms()) {
        sum = sum + C(Rational(Integer(n))) * detail::square(c);
    }
    for (const auto &[n, c] : p.sin_terms()) {
        sum = sum + C(Rational(Integer(n))) * detail::square(c);
    }
    return sum / C(2);
}

template <Coefficient C>
C h12_norm_sq(const BasicTrigPoly<C> &p)
{
    return detail::square(p.a0()) / C(4) + dirichlet_energy(p);
}

template <Coefficient C>
Rational sup_norm_bound(const BasicTrigPoly<C> &p)
{
    Rational sum = detail::upper_abs(p.a0()) / 2;
    for (const auto &[n, c] : p.cos_terms()) {
        sum += detail::upper_abs(c);
    }
    for (const auto &[n, c] : p.sin_terms()) {
        sum += detail::upper_abs(c);
    }
    return sum;
}

template <Coefficient C>
Spectrum spectrum(const BasicTrigPoly<C> &p)
{
    Spectrum s;
    if (!detail::is_zero(p.a0())) {
        s.frequencies.insert(0);
    }
    for (const auto &[n, c] : p.cos_terms()) {
        s.frequencies.insert(n);
    }
    for (const auto &[n, c] : p.sin_terms()) {
        s.frequencies.insert(n);
    }
    return s;
}

namespace
{

double quadrature_once(const std::vector<std::pair<Frequency, std::pair<double, double>>> &terms, std::size_t radial,
                       std::size_t angular)
{
    // Precompute cos(n theta_j), sin(n theta_j) once for all radial nodes.
    const std::size_t t = terms.size();
    std::vector<double> cs(t * angular);
    std::vector<double> sn(t * angular);
    for (std::size_t j = 0; j < angular; ++j) {
        const double th = 2.0 * std::numbers::pi * (static_cast<double>(j) + 0.5) / static_cast<double>(angular);
        for (std::size_t i = 0; i < t; ++i) {
            const double n = static_cast<double>(terms[i].first);
            cs[j * t + i] = std::cos(n * th);
            sn[j * t + i] = std::sin(n * th);
        }
    }
    std::vector<double> weight(t);
    double total = 0.0;
    for (std::size_t k = 0; k < radial; ++k) {
        const double r = (static_cast<double>(k) + 0.5) / static_cast<double>(radial);
        for (std::size_t i = 0; i < t; ++i) {
            const double n = static_cast<double>(terms[i].first);
            weight[i] = n * std::pow(r, n - 1.0);
        }
        double ring = 0.0;
        for (std::size_t j = 0; j < angular; ++j) {
            // u_r and u_theta / r of u = a0/2 + sum r^n (a cos + b sin)
            double ur = 0.0;
            double ut = 0.0;
            for (std::size_t i = 0; i < t; ++i) {
                const auto [a, b] = terms[i].second;
                const double c = cs[j * t + i];
                const double s = sn[j * t + i];
                ur += weight[i] * (a * c + b * s);
                ut += weight[i] * (b * c - a * s);
            }
            ring += ur * ur + ut * ut;
        }
        total += ring * r;
    }
    // (1/2pi) * (1/N_r) * (2pi/N_theta)
    return total / (static_cast<double>(radial) * static_cast<double>(angular));
}

} // namespace

Ball dirichlet_integral_quadrature(const TrigPoly &p, const QuadratureGrid &grid)
{
    if (grid.radial < 2) {
        throw DomainError("quadrature needs at least two radial cells");
    }
    std::map<Frequency, std::pair<double, double>> merged;
    for (const auto &[n, c] : p.cos_terms()) {
        merged[n].first = c.to_double();
    }
    for (const auto &[n, c] : p.sin_terms()) {
        merged[n].second = c.to_double();
    }
    if (merged.empty()) {
        return Ball(0);
    }
    const std::vector<std::pair<Frequency, std::pair<double, double>>> terms(merged.begin(), merged.end());
    const std::size_t angular = grid.angular != 0 ? grid.angular : 4 * static_cast<std::size_t>(p.degree()) + 8;

    const double fine = quadrature_once(terms, grid.radial, angular);
    const double coarse = quadrature_once(terms, grid.radial / 2, angular);
    // Midpoint error is O(h^2): fine - exact ~ (fine - coarse) / 3.
    const double estimate = std::abs(fine - coarse) / 3.0 + 1e-12 * (1.0 + std::abs(fine));
    return Ball(Rational::from_double(fine), Rational::from_double(estimate));
}

#define EFFD_INSTANTIATE(C)                                                                                            \
    template Ball evaluate<C>(const BasicTrigPoly<C> &, const PiAngle &, long);                                        \
    template Ball evaluate_radians<C>(const BasicTrigPoly<C> &, const Ball &, long);                                   \
    template BasicTrigPoly<C> linear_combination<C>(std::span<const BasicTrigPoly<C>>, std::span<const C>);             \
    template BasicTrigPoly<C> multiply_by_cos<C>(const BasicTrigPoly<C> &, Frequency);                                 \
    template C l2_norm_sq<C>(const BasicTrigPoly<C> &);                                                                \
    template C dirichlet_energy<C>(const BasicTrigPoly<C> &);                                                          \
    template C h12_norm_sq<C>(const BasicTrigPoly<C> &);                                                               \
    template Rational sup_norm_bound<C>(const BasicTrigPoly<C> &);                                                     \
    template Spectrum spectrum<C>(const BasicTrigPoly<C> &);

EFFD_INSTANTIATE(Rational)
EFFD_INSTANTIATE(Ball)

#undef EFFD_INSTANTIATE

} // namespace effd
