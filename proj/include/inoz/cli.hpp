#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "inoz/types.hpp"

namespace inoz {

/// Bad command line or parameter block; maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// "a+bi", "a-bi", "bi", "a", "i", "-2.5e-1+3i".
cplx parse_complex(const std::string& text);
/// Comma-separated complex literals.
std::vector<cplx> parse_complex_list(const std::string& text);
std::vector<int> parse_int_list(const std::string& text);

/// Runs one command. Reports go to the --report file as JSON lines (text
/// lines on out), or to out as JSON lines when no file is given.
/// Returns 0 when every check passes, 1 when a check fails or a numerical
/// error stops it, 2 on a configuration error (message on err).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace inoz
