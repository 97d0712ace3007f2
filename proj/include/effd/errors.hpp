#ifndef EFFD_ERRORS_HPP
#define EFFD_ERRORS_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace effd
{

// Root of the library's exception hierarchy.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation
// (division by a ball containing zero, ln of a nonpositive number, r >= 1, ...).
class DomainError : public Error
{
public:
    using Error::Error;
};

// A supplied witness (monotone sequence, variation bound, modulus,
// separation exponent) was caught violating its own contract.
class InvalidWitness : public Error
{
public:
    using Error::Error;
};

// A schedule produced a term beyond the configured feasibility cap.
class ScheduleOverflow : public Error
{
public:
    using Error::Error;
};

// An unbounded search ran out of its step budget.
class SearchTimeout : public Error
{
public:
    SearchTimeout(const std::string &what, std::uint64_t steps) : Error(what), steps_(steps) {}
    std::uint64_t steps() const noexcept
    {
        return steps_;
    }

private:
    std::uint64_t steps_;
};

class ParseError : public Error
{
public:
    explicit ParseError(const std::string &what, std::optional<std::size_t> line = {}, std::string field = {})
        : Error(decorate(what, line, field)), line_(line), field_(std::move(field))
    {
    }

    std::optional<std::size_t> line() const noexcept
    {
        return line_;
    }
    const std::string &field() const noexcept
    {
        return field_;
    }

private:
    static std::string decorate(const std::string &what, std::optional<std::size_t> line, const std::string &field)
    {
        std::string out;
        if (line) {
            out += "line " + std::to_string(*line) + ": ";
        }
        if (!field.empty()) {
            out += "field '" + field + "': ";
        }
        return out + what;
    }

    std::optional<std::size_t> line_;
    std::string field_;
};

} // namespace effd

#endif
