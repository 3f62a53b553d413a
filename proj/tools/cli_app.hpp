#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "qnls/exppoly.hpp"

// The qnls command-line tool, callable in-process so tests can drive it.
namespace qnls::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kNonConvergence = 2, kIdentityFailure = 3 };

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "1.5", "-0.2i", "1.5+0.2i", "1e-3-2e-1i". Throws std::invalid_argument.
cplx parse_complex(const std::string& s);
double parse_real(const std::string& s);
std::vector<cplx> parse_complex_list(const std::string& s);
std::vector<double> parse_real_list(const std::string& s);
// %.17g real and imaginary parts, always with an explicit imaginary term.
std::string format_complex(cplx z);

// key=value lines or a JSON object. A JSON object with an "N" key is read as a
// solver request {"N","gamma","L","n"}. Throws std::invalid_argument.
std::map<std::string, std::string> read_config(const std::string& path);

}  // namespace qnls::cli
