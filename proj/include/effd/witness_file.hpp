#ifndef EFFD_WITNESS_FILE_HPP
#define EFFD_WITNESS_FILE_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <effd/effective_real.hpp>

namespace effd
{

enum class WitnessKind { left, right, variation };

// JSON-lines witness sequence: a header object
//   {"kind": "left" | "right" | "variation", "V": "num/den"}
// followed by one rational per line ("num/den" string or JSON integer).
// "V" is required for kind "variation". The finite prefix presents an
// eventually constant sequence: indices past the last line repeat it.
struct WitnessFile {
    WitnessKind kind = WitnessKind::left;
    std::optional<Rational> variation_bound;
    std::vector<Rational> values;

    RationalSequence sequence() const;
};

WitnessFile read_witness_file(std::istream &in);
WitnessFile read_witness_file(const std::string &path);
void write_witness_file(std::ostream &out, const WitnessFile &file);

std::string to_string(WitnessKind kind);

} // namespace effd

#endif
