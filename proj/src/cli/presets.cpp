#include <effd/presets.hpp>

#include <memory>

#include <effd/errors.hpp>

namespace effd
{

namespace
{

// "name:arg" -> (name, arg); arg empty when there is no colon.
std::pair<std::string, std::string> split_preset(const std::string &spec)
{
    const auto colon = spec.find(':');
    if (colon == std::string::npos) {
        return {spec, {}};
    }
    return {spec.substr(0, colon), spec.substr(colon + 1)};
}

Index parse_index(const std::string &text, const std::string &field)
{
    const Rational q = [&] {
        try {
            return Rational::parse(text);
        } catch (const ParseError &) {
            throw ParseError("expected a natural number, got \"" + text + "\"", std::nullopt, field);
        }
    }();
    if (!q.is_integer() || q.sign() < 0 || !q.numerator().fits_ulong_p()) {
        throw ParseError("expected a natural number, got \"" + text + "\"", std::nullopt, field);
    }
    return q.numerator().get_ui();
}

Rational parse_rational(const std::string &text, const std::string &field)
{
    try {
        return Rational::parse(text);
    } catch (const ParseError &e) {
        throw ParseError(e.what(), std::nullopt, field);
    }
}

RationalSequence from_table(std::vector<Rational> values)
{
    auto shared = std::make_shared<const std::vector<Rational>>(std::move(values));
    return [shared](Index n) {
        if (n == 0) {
            throw DomainError("sequences are indexed from 1");
        }
        return (*shared)[std::min<std::size_t>(n, shared->size()) - 1];
    };
}

std::vector<Rational> values_from_json(const Json &j, const std::string &field)
{
    if (!j.is_array() || j.empty()) {
        throw ParseError("expected a nonempty array", std::nullopt, field);
    }
    std::vector<Rational> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(rational_from_json(j[i], field + "[" + std::to_string(i) + "]"));
    }
    return out;
}

void reject_unknown_keys(const Json &j, std::initializer_list<const char *> known)
{
    if (!j.is_object()) {
        throw ParseError("witness spec must be a JSON object");
    }
    for (const auto &[key, value] : j.items()) {
        bool ok = false;
        for (const char *k : known) {
            ok = ok || key == k;
        }
        if (!ok) {
            throw ParseError("unexpected key \"" + key + "\"", std::nullopt, key);
        }
    }
}

std::string string_from_json(const Json &j, const std::string &field)
{
    if (!j.is_string()) {
        throw ParseError("expected a string", std::nullopt, field);
    }
    return j.get<std::string>();
}

Index index_from_json(const Json &j, const std::string &field)
{
    const Integer v = integer_from_json(j, field);
    if (v < 0 || !v.fits_ulong_p()) {
        throw ParseError("expected a natural number", std::nullopt, field);
    }
    return v.get_ui();
}

} // namespace

StreamSource stream_preset(const std::string &spec)
{
    const auto [name, arg] = split_preset(spec);
    const auto zero = [](Frequency) { return Rational(0); };
    if (name == "a_n=1/n^2" || name == "a_n=1/n") {
        const bool square = name == "a_n=1/n^2";
        std::optional<Frequency> support;
        if (!arg.empty()) {
            support = parse_index(arg, "N");
        }
        auto a = [square](Frequency n) {
            if (n == 0) {
                return Rational(0);
            }
            const Integer d(n);
            return Rational(Integer(1), square ? Integer(d * d) : d);
        };
        StreamSource out{spec, CoefficientStream(a, zero, Integer(1), support), std::nullopt};
        if (support) {
            TrigPoly p;
            for (Frequency n = 1; n <= *support; ++n) {
                p.set_cos(n, a(n));
            }
            out.poly = p;
        }
        return out;
    }
    if (name == "phi_m") {
        const TrigPoly p = phi_m(parse_index(arg, "m"));
        return StreamSource{spec, CoefficientStream::from_poly(p), p};
    }
    if (name == "cos" || name == "sin") {
        const Index n = parse_index(arg, "n");
        if (n == 0) {
            throw ParseError("frequency must be >= 1", std::nullopt, "n");
        }
        const TrigPoly p = name == "cos" ? TrigPoly::cosine(n) : TrigPoly::sine(n);
        return StreamSource{spec, CoefficientStream::from_poly(p), p};
    }
    throw ParseError("unknown stream preset \"" + spec + "\"", std::nullopt, "preset");
}

AlphaSource alpha_preset(const std::string &spec)
{
    const auto [name, arg] = split_preset(spec);
    if (name == "geometric" && arg.empty()) {
        return AlphaSource{spec, [](Index n) { return Rational(1) - Rational::pow2(1 - static_cast<long>(n)); },
                           Rational(1, 2), Rational(1)};
    }
    if (name == "constant") {
        const Rational c = parse_rational(arg, "c");
        if (c.sign() < 0) {
            throw ParseError("constant preset needs c >= 0", std::nullopt, "c");
        }
        return AlphaSource{spec, [c](Index n) { return n <= 1 ? Rational(0) : c; }, c, c};
    }
    if (name == "delayed-step") {
        const Index at = parse_index(arg, "N");
        if (at < 2) {
            throw ParseError("delayed-step needs N >= 2", std::nullopt, "N");
        }
        return AlphaSource{spec, [at](Index n) { return n < at ? Rational(0) : Rational(1, 2); }, Rational(1, 2),
                           Rational(1, 2)};
    }
    throw ParseError("unknown alpha preset \"" + spec + "\"", std::nullopt, "preset");
}

AlphaSource alphas_from_values(std::vector<Rational> values, const std::string &name)
{
    if (values.empty()) {
        throw DomainError("alpha sequence has no values");
    }
    if (values.front().sign() > 0) {
        values.insert(values.begin(), Rational(0));
    }
    Rational bound;
    for (std::size_t i = 1; i < values.size(); ++i) {
        bound = max(bound, values[i] - values[i - 1]);
    }
    const Rational limit = values.back();
    return AlphaSource{name, from_table(std::move(values)), bound, limit};
}

DeltaSource deltas_from_values(const std::vector<Rational> &values, const std::string &name)
{
    if (values.empty()) {
        throw DomainError("delta sequence has no values");
    }
    Rational variation;
    Rational largest;
    for (const Rational &d : values) {
        variation += abs(d);
        largest = max(largest, abs(d));
    }
    std::vector<Rational> padded = values;
    padded.push_back(Rational(0));
    return DeltaSource{name, from_table(std::move(padded)), variation, largest.ceil()};
}

DeltaSource delta_preset(const std::string &spec)
{
    const auto [name, arg] = split_preset(spec);
    if (name == "single") {
        const Rational c = parse_rational(arg, "c");
        return DeltaSource{spec, [c](Index n) { return n == 1 ? c : Rational(0); }, abs(c), abs(c).ceil()};
    }
    if (name == "geometric" && arg.empty()) {
        return DeltaSource{spec, [](Index n) { return Rational::pow2(-static_cast<long>(n)); }, Rational(1),
                           Integer(1)};
    }
    if (name == "alternating") {
        return DeltaSource{spec,
                           [](Index n) {
                               const Rational m = Rational::pow2(-static_cast<long>(n));
                               return n % 2 == 1 ? m : -m;
                           },
                           Rational(1), Integer(1)};
    }
    // Monotone alpha presets: total variation = limit - alpha_1.
    const AlphaSource a = alpha_preset(spec);
    const RationalSequence alphas = a.alphas;
    return DeltaSource{spec, [alphas](Index n) { return alphas(n + 1) - alphas(n); }, *a.limit,
                       a.delta_bound->ceil()};
}

Sigma1Input sigma1_input_from_json(const Json &j)
{
    reject_unknown_keys(j, {"alphas", "preset", "m0", "delta_bound"});
    if (j.contains("alphas") == j.contains("preset")) {
        throw ParseError("sigma1 spec needs exactly one of \"alphas\" and \"preset\"");
    }
    AlphaSource source = j.contains("alphas") ? alphas_from_values(values_from_json(j.at("alphas"), "alphas"), "alphas")
                                              : alpha_preset(string_from_json(j.at("preset"), "preset"));
    Sigma1WitnessSpec spec{source.alphas, 2, source.delta_bound};
    if (j.contains("m0")) {
        spec.m0 = index_from_json(j.at("m0"), "m0");
    }
    if (j.contains("delta_bound")) {
        spec.delta_bound = rational_from_json(j.at("delta_bound"), "delta_bound");
    }
    return Sigma1Input{spec, source};
}

WeakInput weak_input_from_json(const Json &j)
{
    reject_unknown_keys(j, {"deltas", "alphas", "preset", "V", "K4", "schedule", "k_cap", "max_degree"});
    const int sources = static_cast<int>(j.contains("deltas")) + static_cast<int>(j.contains("alphas"))
                        + static_cast<int>(j.contains("preset"));
    if (sources != 1) {
        throw ParseError("weak spec needs exactly one of \"deltas\", \"alphas\" and \"preset\"");
    }
    DeltaSource source = [&] {
        if (j.contains("deltas")) {
            return deltas_from_values(values_from_json(j.at("deltas"), "deltas"), "deltas");
        }
        if (j.contains("alphas")) {
            const std::vector<Rational> a = values_from_json(j.at("alphas"), "alphas");
            std::vector<Rational> d;
            for (std::size_t i = 1; i < a.size(); ++i) {
                d.push_back(a[i] - a[i - 1]);
            }
            if (d.empty()) {
                d.push_back(Rational(0));
            }
            return deltas_from_values(d, "alphas");
        }
        return delta_preset(string_from_json(j.at("preset"), "preset"));
    }();

    WeakWitnessSpec spec{source.deltas, source.variation_bound, source.k4};
    if (j.contains("V")) {
        spec.variation_bound = rational_from_json(j.at("V"), "V");
    }
    if (j.contains("K4")) {
        spec.k4 = integer_from_json(j.at("K4"), "K4");
    }
    if (j.contains("schedule")) {
        const Json &s = j.at("schedule");
        if (s.is_string() && s.get<std::string>() == "tower") {
            spec.schedule = WeakSchedule::tower();
        } else if (s.is_object() && s.size() == 1 && s.contains("explicit")) {
            std::vector<Integer> degrees;
            for (const Rational &q : values_from_json(s.at("explicit"), "schedule.explicit")) {
                if (!q.is_integer()) {
                    throw ParseError("schedule degrees must be integers", std::nullopt, "schedule.explicit");
                }
                degrees.push_back(q.numerator());
            }
            spec.schedule = WeakSchedule::explicit_list(std::move(degrees));
        } else if (s.is_object() && s.size() == 1 && s.contains("exponential")) {
            spec.schedule = WeakSchedule::exponential(integer_from_json(s.at("exponential"), "schedule.exponential"));
        } else {
            throw ParseError("expected \"tower\", {\"explicit\": [...]} or {\"exponential\": b}", std::nullopt,
                             "schedule");
        }
    }
    if (j.contains("k_cap")) {
        spec.k_cap = index_from_json(j.at("k_cap"), "k_cap");
    }
    if (j.contains("max_degree")) {
        spec.max_degree = integer_from_json(j.at("max_degree"), "max_degree");
    }
    return WeakInput{spec, source};
}

} // namespace effd
