#pragma once

#include "tslice/fieldint.hpp"
#include "tslice/model.hpp"
#include "tslice/thermo.hpp"

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tslice::app {

// Exit codes of the command-line tool.
inline constexpr int exit_ok = 0;
inline constexpr int exit_validation_failure = 1;
inline constexpr int exit_usage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { Csv, Json };

struct RunConfig {
    std::string subcommand;
    ModelKind model = ModelKind::Sho;
    Rational s = Rational(1, 2);
    Rational J = 1;
    Rational Jprime = 0;
    std::vector<unsigned> L_list{1};

    double beta_min = 0.1;
    double beta_max = 10;
    unsigned steps = 100;
    Spacing spacing = Spacing::Linear;

    double e_min = 0;
    double e_max = 3;

    OutputFormat format = OutputFormat::Csv;
    std::string out; // curve: output directory; other commands: file, "" or "-" for stdout

    unsigned order = 4;

    double beta = 1;
    std::string method = "quadrature"; // quadrature | mc
    std::string quantity = "z";        // z | u
    std::size_t samples = 1'000'000;
    std::uint64_t seed = 0;
    Channel channel = Channel::Real;
    unsigned nodes = 24;
    unsigned workers = 0;
};

/// "1,3,5", "1..10" or a mix such as "1..3,7". Throws UsageError.
std::vector<unsigned> parse_l_list(std::string_view text);

/// Twelve significant digits, shortest form (printf %.12g).
std::string format_number(double x);

std::string curve_csv(const ThermoCurve& curve);

/// Commands write their primary output to `out` (or files under config.out) and return an exit code.
int cmd_curve(const RunConfig& config, std::ostream& out);
int cmd_dos(const RunConfig& config, std::ostream& out);
int cmd_series(const RunConfig& config, std::ostream& out);
int cmd_check(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full command line (args[0] is the program name). Flat key=value lines in --config FILE
/// are read first; flags given on the command line override them.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace tslice::app
