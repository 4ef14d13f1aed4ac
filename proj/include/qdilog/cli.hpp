#pragma once

#include <complex>
#include <iosfwd>
#include <string>

namespace qdilog {

// Exit codes: 0 pass, 1 a verification failed, 2 not a period,
// 3 numerical failure, 4 bad input.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

// "1.3", "0.9+0.4i", "-0.2i", "0.9,0.4". Throws SpecParseError.
std::complex<double> parse_complex(const std::string& text);

}  // namespace qdilog
