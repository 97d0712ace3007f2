#include <effd/serialize.hpp>

#include <fstream>
#include <sstream>

#include <effd/errors.hpp>

namespace effd
{

Json to_json(const Rational &q)
{
    return q.to_string();
}

Json to_json(const Ball &b)
{
    Json j = Json::object();
    j["center"] = to_json(b.center());
    j["radius"] = to_json(b.radius());
    return j;
}

Rational rational_from_json(const Json &j, const std::string &field, std::optional<std::size_t> line)
{
    try {
        if (j.is_string()) {
            return Rational::parse(j.get<std::string>());
        }
        if (j.is_number_integer()) {
            return j.is_number_unsigned() ? Rational(Integer(j.get<unsigned long>())) : Rational(j.get<long>());
        }
    } catch (const ParseError &e) {
        throw ParseError(e.what(), line, field);
    }
    throw ParseError("expected a \"num/den\" string or an integer", line, field);
}

Integer integer_from_json(const Json &j, const std::string &field, std::optional<std::size_t> line)
{
    const Rational q = rational_from_json(j, field, line);
    if (!q.is_integer()) {
        throw ParseError("expected an integer", line, field);
    }
    return q.numerator();
}

Ball ball_from_json(const Json &j, const std::string &field, std::optional<std::size_t> line)
{
    if (!j.is_object()) {
        return Ball(rational_from_json(j, field, line));
    }
    if (!j.contains("center") || !j.contains("radius")) {
        throw ParseError("ball needs \"center\" and \"radius\"", line, field);
    }
    for (const auto &[key, value] : j.items()) {
        if (key != "center" && key != "radius") {
            throw ParseError("unexpected key \"" + key + "\" in ball", line, field);
        }
    }
    const Rational radius = rational_from_json(j.at("radius"), field + ".radius", line);
    if (radius.sign() < 0) {
        throw ParseError("ball radius must be nonnegative", line, field + ".radius");
    }
    return Ball(rational_from_json(j.at("center"), field + ".center", line), radius);
}

namespace
{

template <Coefficient C>
Json coefficient_json(const C &c)
{
    return to_json(c);
}

template <Coefficient C>
Json poly_json(const BasicTrigPoly<C> &p)
{
    Json j = Json::object();
    j["a0"] = coefficient_json(p.a0());
    Json cos = Json::object();
    for (const auto &[n, c] : p.cos_terms()) {
        cos[std::to_string(n)] = coefficient_json(c);
    }
    Json sin = Json::object();
    for (const auto &[n, c] : p.sin_terms()) {
        sin[std::to_string(n)] = coefficient_json(c);
    }
    j["cos"] = std::move(cos);
    j["sin"] = std::move(sin);
    return j;
}

Frequency frequency_from_key(const std::string &key, const std::string &field)
{
    if (key.empty() || key.size() > 19 || key.find_first_not_of("0123456789") != std::string::npos) {
        throw ParseError("frequency \"" + key + "\" is not a decimal natural", std::nullopt, field);
    }
    const Frequency n = std::stoull(key);
    if (n == 0) {
        throw ParseError("frequency 0 belongs in \"a0\"", std::nullopt, field);
    }
    if (std::to_string(n) != key) {
        throw ParseError("frequency \"" + key + "\" is not in canonical form", std::nullopt, field);
    }
    return n;
}

bool has_ball_entries(const Json &j)
{
    if (j.contains("a0") && j.at("a0").is_object()) {
        return true;
    }
    for (const char *side : {"cos", "sin"}) {
        if (j.contains(side) && j.at(side).is_object()) {
            for (const auto &[key, value] : j.at(side).items()) {
                if (value.is_object()) {
                    return true;
                }
            }
        }
    }
    return false;
}

template <Coefficient C>
C coefficient_from_json(const Json &j, const std::string &field)
{
    if constexpr (std::same_as<C, Rational>) {
        if (j.is_object()) {
            throw ParseError("ball coefficient in a rational polynomial", std::nullopt, field);
        }
        return rational_from_json(j, field);
    } else {
        return ball_from_json(j, field);
    }
}

template <Coefficient C>
BasicTrigPoly<C> poly_from_json(const Json &j)
{
    if (!j.is_object()) {
        throw ParseError("polynomial must be a JSON object");
    }
    for (const auto &[key, value] : j.items()) {
        if (key != "a0" && key != "cos" && key != "sin") {
            throw ParseError("unexpected key \"" + key + "\"", std::nullopt, key);
        }
    }
    BasicTrigPoly<C> p;
    if (j.contains("a0")) {
        p.set_a0(coefficient_from_json<C>(j.at("a0"), "a0"));
    }
    for (const char *side : {"cos", "sin"}) {
        if (!j.contains(side)) {
            continue;
        }
        const Json &terms = j.at(side);
        if (!terms.is_object()) {
            throw ParseError("expected an object of frequency -> coefficient", std::nullopt, side);
        }
        for (const auto &[key, value] : terms.items()) {
            const std::string field = std::string(side) + "." + key;
            const Frequency n = frequency_from_key(key, field);
            C c = coefficient_from_json<C>(value, field);
            if (std::string(side) == "cos") {
                p.set_cos(n, std::move(c));
            } else {
                p.set_sin(n, std::move(c));
            }
        }
    }
    return p;
}

} // namespace

Json to_json(const TrigPoly &p)
{
    return poly_json(p);
}

Json to_json(const BallTrigPoly &p)
{
    return poly_json(p);
}

AnyTrigPoly any_trig_poly_from_json(const Json &j)
{
    if (j.is_object() && has_ball_entries(j)) {
        return poly_from_json<Ball>(j);
    }
    return poly_from_json<Rational>(j);
}

TrigPoly trig_poly_from_json(const Json &j)
{
    return poly_from_json<Rational>(j);
}

BallTrigPoly ball_trig_poly_from_json(const Json &j)
{
    return poly_from_json<Ball>(j);
}

Json parse_json(std::istream &in, const std::string &what)
{
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error &e) {
        throw ParseError(what + ": malformed JSON (byte " + std::to_string(e.byte) + ")");
    }
}

AnyTrigPoly read_trig_poly(std::istream &in)
{
    return any_trig_poly_from_json(parse_json(in, "polynomial"));
}

AnyTrigPoly read_trig_poly(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open " + path.string());
    }
    return read_trig_poly(in);
}

Json to_json(const PoissonRow &row)
{
    Json j = Json::object();
    j["k"] = row.step.k;
    j["r"] = to_json(row.step.r);
    j["M"] = row.step.M;
    j["value"] = to_json(row.value);
    j["tail_bound"] = row.tail_bound ? to_json(*row.tail_bound) : Json(nullptr);
    return j;
}

} // namespace effd
