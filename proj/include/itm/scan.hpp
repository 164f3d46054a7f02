#pragma once

// Sweeps of the transformation function over h*. Sign changes of Gamma
// locate solutions; their count is the existence/uniqueness verdict.

#include <string>
#include <string_view>
#include <vector>

#include "itm/models.hpp"
#include "itm/solver.hpp"

namespace itm {

enum class Spacing { linear, logarithmic };

struct ScanGrid {
    double h_min = 0.5;
    double h_max = 20.0;
    int count = 40;
    Spacing spacing = Spacing::linear;

    void validate() const;
    /// Strictly increasing, first == h_min, last == h_max.
    std::vector<double> points() const;
};

struct ScanSample {
    double h_star = 0.0;
    double gamma = 0.0;
    double lambda = 0.0;
    bool failed = false;  ///< IVP blow-up or degenerate far field; gamma/lambda are NaN
};

struct Bracket {
    double lo = 0.0;
    double hi = 0.0;
};

enum class Verdict { no_zero, unique_zero, multiple_zeros, inconclusive };

const char* to_string(Verdict v) noexcept;

struct ScanReport {
    std::vector<ScanSample> samples;  ///< sorted by h*
    std::vector<Bracket> brackets;
    Verdict verdict = Verdict::inconclusive;
};

/// Thrown when every sample of a scan failed.
class ScanFailure : public Error {
public:
    using Error::Error;
};

/// Gamma at one h*. Integration failures are folded into `failed`.
ScanSample probe_gamma(double h_star, SecondDerivativeSign sign, const ItmConfig& config);

/// Sorts samples, finds brackets, assigns the verdict. Independent of the
/// order in which samples were produced.
ScanReport summarize(std::vector<ScanSample> samples);

/// Reference implementation: one sample after another.
ScanReport scan_serial(const ScanGrid& grid, SecondDerivativeSign sign, const ItmConfig& config);

/// OpenMP over grid points. threads <= 0 uses the runtime default.
/// Produces the same report as scan_serial.
ScanReport scan_parallel(const ScanGrid& grid, SecondDerivativeSign sign, const ItmConfig& config, int threads = 0);

inline ScanReport scan(const ScanGrid& grid, SecondDerivativeSign sign, const ItmConfig& config) {
    return scan_serial(grid, sign, config);
}

/// Header `h_star,gamma,lambda,failed`, 12 significant digits, `\n` endings.
std::string export_scan(const ScanReport& report);

/// Reads what export_scan writes. Lines starting with '#' are skipped.
std::vector<ScanSample> parse_scan_csv(std::string_view csv);

}  // namespace itm
