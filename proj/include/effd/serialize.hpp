#ifndef EFFD_SERIALIZE_HPP
#define EFFD_SERIALIZE_HPP

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>

#include <json.hpp>

#include <effd/poisson.hpp>
#include <effd/trig_poly.hpp>

namespace effd
{

using Json = nlohmann::ordered_json;

// Rationals are "num/den" strings on output; input also accepts integers.
// Balls are {"center": rational, "radius": rational}. No floats either way.
Json to_json(const Rational &q);
Json to_json(const Ball &b);

Rational rational_from_json(const Json &j, const std::string &field, std::optional<std::size_t> line = {});
Ball ball_from_json(const Json &j, const std::string &field, std::optional<std::size_t> line = {});
Integer integer_from_json(const Json &j, const std::string &field, std::optional<std::size_t> line = {});

// {"a0": c, "cos": {"n": c, ...}, "sin": {"n": c, ...}} where c is a rational
// string (TrigPoly) or a ball object (BallTrigPoly). Frequencies are decimal
// strings >= 1; "cos" and "sin" may be omitted.
Json to_json(const TrigPoly &p);
Json to_json(const BallTrigPoly &p);

using AnyTrigPoly = std::variant<TrigPoly, BallTrigPoly>;

// Rational if every coefficient is a rational, ball otherwise.
AnyTrigPoly any_trig_poly_from_json(const Json &j);
TrigPoly trig_poly_from_json(const Json &j);
BallTrigPoly ball_trig_poly_from_json(const Json &j);

AnyTrigPoly read_trig_poly(std::istream &in);
AnyTrigPoly read_trig_poly(const std::filesystem::path &path);

// {"k": int, "r": rational, "M": int, "value": ball, "tail_bound": rational | null}
Json to_json(const PoissonRow &row);

// Parses a whole document; syntax errors become ParseError.
Json parse_json(std::istream &in, const std::string &what);

} // namespace effd

#endif
