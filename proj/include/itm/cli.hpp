#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "itm/ode.hpp"
#include "itm/scan.hpp"
#include "itm/solver.hpp"

namespace itm::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitNotConverged = 2,
    kExitBlowUp = 3,
};

/// Parses `args` (program name excluded) and runs one subcommand:
/// blasius, sakiadis, scan or compare. Reports go to `out` or to --output;
/// diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Formatting shared by the subcommands and their tests.

/// "%.12g"; NaN prints as "nan".
std::string sig12(double x);
/// x rounded to 12 significant digits, so JSON dumps stay short and stable.
double round_sig12(double x);
/// "%.6f" for table columns.
std::string fixed6(double x);
/// Six decimals, or a two-digit mantissa exponent form once |x| < 1e-3.
std::string table_gamma(double x);

/// Header `eta,f,df,ddf`.
std::string trajectory_csv(const Trajectory& trajectory);

std::string iterates_table(const ItmResult& result);
std::string topfer_table(const std::vector<TopferCheck>& checks);
std::string scan_table(const ScanReport& report);

/// Relative change of the wall-shear modulus, in percent:
/// 100 | |other| - |reference| | / |reference|.
double wall_shear_increase_percent(double reference, double other);

}  // namespace itm::cli
