#ifndef EFFD_CLI_HPP
#define EFFD_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace effd
{

enum ExitCode : int {
    exit_ok = 0,
    exit_failure = 1,
    exit_parse_error = 2,
    exit_domain_error = 3,
    exit_schedule_overflow = 4,
    exit_invalid_witness = 5,
};

// args excludes the program name. Reports go to `out` (or --out), errors to
// `err` as one JSON object.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace effd

#endif
