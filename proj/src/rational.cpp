#include <effd/rational.hpp>

#include <cmath>
#include <ostream>

#include <effd/errors.hpp>

namespace effd
{

Rational::Rational(const Integer &num, const Integer &den)
{
    if (den == 0) {
        throw DomainError("rational with zero denominator");
    }
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational Rational::parse(std::string_view text)
{
    auto is_int = [](std::string_view s) {
        if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
            s.remove_prefix(1);
        }
        if (s.empty()) {
            return false;
        }
        for (char c : s) {
            if (c < '0' || c > '9') {
                return false;
            }
        }
        return true;
    };
    auto to_int = [](std::string_view s) {
        if (!s.empty() && s.front() == '+') {
            s.remove_prefix(1);
        }
        return Integer(std::string(s), 10);
    };

    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        if (!is_int(text)) {
            throw ParseError("not a rational: '" + std::string(text) + "'");
        }
        return Rational(to_int(text));
    }
    const auto num = text.substr(0, slash);
    const auto den = text.substr(slash + 1);
    if (!is_int(num) || !is_int(den) || den.front() == '-' || den.front() == '+') {
        throw ParseError("not a rational: '" + std::string(text) + "'");
    }
    const Integer d = to_int(den);
    if (d == 0) {
        throw ParseError("zero denominator in '" + std::string(text) + "'");
    }
    return Rational(to_int(num), d);
}

Rational Rational::from_double(double v)
{
    if (!std::isfinite(v)) {
        throw DomainError("non-finite double has no rational value");
    }
    return Rational(mpq_class(v));
}

Rational Rational::pow2(long e)
{
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e < 0 ? -e : e));
    return e >= 0 ? Rational(p) : Rational(Integer(1), p);
}

std::string Rational::to_string() const
{
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Integer Rational::floor() const
{
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return r;
}

Integer Rational::ceil() const
{
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return r;
}

Rational &Rational::operator/=(const Rational &o)
{
    if (o.is_zero()) {
        throw DomainError("rational division by zero");
    }
    q_ /= o.q_;
    return *this;
}

Rational abs(const Rational &x)
{
    return x.sign() < 0 ? -x : x;
}

Rational pow(const Rational &x, unsigned long e)
{
    Integer n, d;
    mpz_pow_ui(n.get_mpz_t(), x.raw().get_num_mpz_t(), e);
    mpz_pow_ui(d.get_mpz_t(), x.raw().get_den_mpz_t(), e);
    return Rational(n, d);
}

Rational min(const Rational &a, const Rational &b)
{
    return b < a ? b : a;
}

Rational max(const Rational &a, const Rational &b)
{
    return a < b ? b : a;
}

long floor_log2(const Rational &x)
{
    if (x.is_zero()) {
        throw DomainError("floor_log2 of zero");
    }
    const Rational a = abs(x);
    // Estimate from bit lengths, then correct by at most one step each way.
    long e = static_cast<long>(mpz_sizeinbase(a.raw().get_num_mpz_t(), 2))
             - static_cast<long>(mpz_sizeinbase(a.raw().get_den_mpz_t(), 2));
    while (Rational::pow2(e) > a) {
        --e;
    }
    while (Rational::pow2(e + 1) <= a) {
        ++e;
    }
    return e;
}

long ceil_log2(const Rational &x)
{
    const long f = floor_log2(x);
    return Rational::pow2(f) == abs(x) ? f : f + 1;
}

std::ostream &operator<<(std::ostream &os, const Rational &x)
{
    return os << x.to_string();
}

} // namespace effd
