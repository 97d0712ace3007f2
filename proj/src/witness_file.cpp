#include <effd/witness_file.hpp>

#include <fstream>
#include <memory>


#include <effd/errors.hpp>
#include <effd/serialize.hpp>

namespace effd
{

RationalSequence WitnessFile::sequence() const
{
    if (values.empty()) {
        throw DomainError("witness file has no values");
    }
    auto shared = std::make_shared<const std::vector<Rational>>(values);
    return [shared](Index n) {
        if (n == 0) {
            throw DomainError("witness sequences are indexed from 1");
        }
        const std::size_t i = std::min<std::size_t>(n, shared->size()) - 1;
        return (*shared)[i];
    };
}

std::string to_string(WitnessKind kind)
{
    switch (kind) {
        case WitnessKind::left:
            return "left";
        case WitnessKind::right:
            return "right";
        case WitnessKind::variation:
            return "variation";
    }
    return "?";
}

WitnessFile read_witness_file(std::istream &in)
{
    WitnessFile out;
    std::string text;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, text)) {
        ++line_no;
        if (text.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        Json j;
        try {
            j = Json::parse(text);
        } catch (const nlohmann::json::parse_error &e) {
            throw ParseError(std::string("invalid JSON: ") + e.what(), line_no);
        }
        if (!have_header) {
            if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
                throw ParseError("header must be an object with a string \"kind\"", line_no, "kind");
            }
            const auto kind = j["kind"].get<std::string>();
            if (kind == "left") {
                out.kind = WitnessKind::left;
            } else if (kind == "right") {
                out.kind = WitnessKind::right;
            } else if (kind == "variation") {
                out.kind = WitnessKind::variation;
            } else {
                throw ParseError("unknown kind '" + kind + "'", line_no, "kind");
            }
            if (j.contains("V")) {
                out.variation_bound = rational_from_json(j["V"], "V", line_no);
            } else if (out.kind == WitnessKind::variation) {
                throw ParseError("kind \"variation\" requires a bound", line_no, "V");
            }
            have_header = true;
            continue;
        }
        out.values.push_back(rational_from_json(j, "value", line_no));
    }
    if (!have_header) {
        throw ParseError("missing header line", line_no);
    }
    if (out.values.empty()) {
        throw ParseError("witness file has no values", line_no);
    }
    return out;
}

WitnessFile read_witness_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open witness file '" + path + "'");
    }
    return read_witness_file(in);
}

void write_witness_file(std::ostream &out, const WitnessFile &file)
{
    Json header{{"kind", to_string(file.kind)}};
    if (file.variation_bound) {
        header["V"] = file.variation_bound->to_string();
    }
    out << header.dump() << '\n';
    for (const auto &v : file.values) {
        out << Json(v.to_string()).dump() << '\n';
    }
}

} // namespace effd
