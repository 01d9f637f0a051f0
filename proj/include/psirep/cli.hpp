#pragma once
// Command-line front end. Commands:
//   eval        one function/representation over a grid
//   compare     every representation of a function against its reference
//   identities  named identity suites with pass/fail rows
//   table       closed-form tables (e.g. digamma at rationals)
//   bench       work counters (and wall time with --timing) per representation
//
// Output is deterministic for a fixed config: wall-time columns print 0
// unless --timing is given, and JSON/CSV formatting is locale-independent.
// Exit codes: 0 success, 1 at least one identity failure, 2 usage or domain
// error.

#include "psirep/numkernel.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace psirep::cli {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;  // eval | compare | identities | table | bench
    std::string function;
    std::string rep;        // representation selector, empty = all
    std::string case_name;  // ci-sum case selector
    std::string suite = "all";
    std::vector<double> grid;

    double a = 1.0;
    double alpha = 1.0;
    double beta = 3.141592653589793;
    double z = 0.5;
    long k = 1;  // polygamma order, even-exponent index, moment index
    long p = 1;
    long q = 2;

    Ctrl ctrl;
    double tol_override = 0.0;    // > 0 once --tol is given; also mirrored into ctrl
    std::string format = "text";  // text | csv | json
    std::string out;              // output path, empty = stdout
    unsigned long seed = 12345;
    int threads = 1;
    bool timing = false;
};

// Accepts "pi", "2pi", "pi/2", "3pi/2", "pi/4" and plain numbers.
double parse_real_literal(const std::string& s);

// Throws UsageError on malformed arguments.
RunConfig parse_args(const std::vector<std::string>& args);

// Executes the configured command, writing to os. Returns the exit code.
int run(const RunConfig& cfg, std::ostream& os);

// parse_args + output redirection + exception-to-exit-code mapping.
int run_main(int argc, const char* const* argv);

}  // namespace psirep::cli
