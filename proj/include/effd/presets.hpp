#ifndef EFFD_PRESETS_HPP
#define EFFD_PRESETS_HPP

#include <optional>
#include <string>
#include <vector>

#include <effd/poisson.hpp>
#include <effd/serialize.hpp>
#include <effd/witnesses.hpp>

namespace effd
{

// Boundary data by name:
//   a_n=1/n^2[:N]   a_0 = 0, a_n = 1/n^2 (n <= N when N is given)
//   a_n=1/n[:N]     a_0 = 0, a_n = 1/n
//   phi_m:m         the packet phi_m
//   cos:n, sin:n    a single harmonic
// `poly` is set when the spectrum is finite.
struct StreamSource {
    std::string name;
    CoefficientStream stream;
    std::optional<TrigPoly> poly;
};

StreamSource stream_preset(const std::string &spec);

// Nondecreasing alpha sequences (1-based):
//   geometric        1 - 2^(1-n)
//   constant:c       0, c, c, ...
//   delayed-step:N   0 for n < N, 1/2 from n = N on
// delta_bound bounds every increment; limit is the sequence's limit.
struct AlphaSource {
    std::string name;
    RationalSequence alphas;
    std::optional<Rational> delta_bound;
    std::optional<Rational> limit;
};

AlphaSource alpha_preset(const std::string &spec);

// Finite data, held constant beyond the end. A positive first value gets a
// leading 0 so that alpha_1 = 0.
AlphaSource alphas_from_values(std::vector<Rational> values, const std::string &name);

// Increment sequences for the weak construction:
//   single:c      d_1 = c, then 0
//   geometric     d_n = 2^-n
//   alternating   d_n = (-1)^(n+1) 2^-n
// Alpha presets are accepted too and differenced.
struct DeltaSource {
    std::string name;
    RationalSequence deltas;
    Rational variation_bound;
    Integer k4;
};

DeltaSource delta_preset(const std::string &spec);
DeltaSource deltas_from_values(const std::vector<Rational> &values, const std::string &name);

// {"alphas": [...]} or {"preset": name}; optional "m0", "delta_bound".
struct Sigma1Input {
    Sigma1WitnessSpec spec;
    AlphaSource source;
};

Sigma1Input sigma1_input_from_json(const Json &j);

// {"deltas": [...]} | {"alphas": [...]} | {"preset": name}; optional "V",
// "K4", "schedule" ("tower" | {"explicit": [...]} | {"exponential": b}),
// "k_cap", "max_degree".
struct WeakInput {
    WeakWitnessSpec spec;
    DeltaSource source;
};

WeakInput weak_input_from_json(const Json &j);

} // namespace effd

#endif
