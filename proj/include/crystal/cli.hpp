#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace crystal::cli {

/// Parsed command line. Exactly one of `preset` / `lattice` names the lattice
/// for commands that need one.
struct RunConfig {
    std::string preset;
    std::string lattice;
    std::string spec;          ///< zeta spec file (zeta eval, dist table/cf)
    std::string format = "csv";
    std::string out;
    std::uint64_t seed = 0;
    int threads = 0;           ///< 0: hardware concurrency
    std::string law = "finite";
    int N = 1;
    std::string vertex;
    double radius = 12.0;
    int steps = 10;
    int paths = 1000;
    std::string sigma;
    std::string t;
    std::string t_grid = "-3:3:5";
    std::string weights;
    int cutoff = 0;            ///< truncation override; 0 keeps the default
    double c = 4.0;
};

enum ExitCode : int { ok = 0, verification_failed = 1, usage_error = 2 };

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

/// "lo:hi:n" per axis separated by ';' (a single spec is reused for every
/// axis); returns the Cartesian product.
std::vector<std::vector<double>> parse_grid(const std::string& spec, int dim);

}  // namespace crystal::cli
