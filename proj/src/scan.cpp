#include "itm/scan.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>

namespace itm {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string sig12(double x) {
    if (std::isnan(x)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

// Zero counts as positive so an exact root at a sample yields one bracket.
bool positive(double g) { return g >= 0.0; }

}  // namespace

const char* to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::no_zero: return "no_zero";
        case Verdict::unique_zero: return "unique_zero";
        case Verdict::multiple_zeros: return "multiple_zeros";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

void ScanGrid::validate() const {
    if (!(h_min > 0.0) || !std::isfinite(h_min)) throw InvalidArgument("scan h_min must be positive");
    if (!(h_max > h_min) || !std::isfinite(h_max)) throw InvalidArgument("scan h_max must exceed h_min");
    if (count < 2) throw InvalidArgument("scan needs at least two points");
}

std::vector<double> ScanGrid::points() const {
    validate();
    std::vector<double> pts(static_cast<std::size_t>(count));
    const double n = count - 1;
    for (int i = 0; i < count; ++i) {
        const double t = i / n;
        pts[i] = spacing == Spacing::linear ? h_min + t * (h_max - h_min)
                                            : std::exp(std::log(h_min) + t * (std::log(h_max) - std::log(h_min)));
    }
    pts.front() = h_min;
    pts.back() = h_max;
    return pts;
}

ScanSample probe_gamma(double h_star, SecondDerivativeSign sign, const ItmConfig& config) {
    ItmConfig cfg = config;
    cfg.sign = sign;
    try {
        const GammaEvaluation ev = evaluate_gamma_at(h_star, cfg);
        return {h_star, ev.gamma, ev.lambda, false};
    } catch (const IntegrationError&) {
    } catch (const DegenerateFarFieldError&) {
    }
    return {h_star, kNaN, kNaN, true};
}

ScanReport summarize(std::vector<ScanSample> samples) {
    std::sort(samples.begin(), samples.end(),
              [](const ScanSample& a, const ScanSample& b) { return a.h_star < b.h_star; });
    if (samples.empty() || std::all_of(samples.begin(), samples.end(), [](const ScanSample& s) { return s.failed; }))
        throw ScanFailure("every scan sample failed");

    ScanReport report;
    report.samples = std::move(samples);
    const auto& s = report.samples;

    bool failure_inside_bracket = false;
    const ScanSample* prev = nullptr;
    bool failed_since_prev = false;
    for (const ScanSample& cur : s) {
        if (cur.failed) {
            failed_since_prev = true;
            continue;
        }
        if (prev && positive(prev->gamma) != positive(cur.gamma)) {
            report.brackets.push_back({prev->h_star, cur.h_star});
            failure_inside_bracket = failure_inside_bracket || failed_since_prev;
        }
        prev = &cur;
        failed_since_prev = false;
    }

    const bool any_failed = std::any_of(s.begin(), s.end(), [](const ScanSample& x) { return x.failed; });
    const double first = s.front().h_star;
    const double last = s.back().h_star;
    const bool touches_edge = std::any_of(report.brackets.begin(), report.brackets.end(),
                                          [&](const Bracket& b) { return b.lo == first || b.hi == last; });

    if (failure_inside_bracket || touches_edge || (report.brackets.empty() && any_failed))
        report.verdict = Verdict::inconclusive;
    else if (report.brackets.empty())
        report.verdict = Verdict::no_zero;
    else if (report.brackets.size() == 1)
        report.verdict = Verdict::unique_zero;
    else
        report.verdict = Verdict::multiple_zeros;
    return report;
}

ScanReport scan_serial(const ScanGrid& grid, SecondDerivativeSign sign, const ItmConfig& config) {
    const std::vector<double> pts = grid.points();
    std::vector<ScanSample> samples;
    samples.reserve(pts.size());
    for (double h : pts) samples.push_back(probe_gamma(h, sign, config));
    return summarize(std::move(samples));
}

ScanReport scan_parallel(const ScanGrid& grid, SecondDerivativeSign sign, const ItmConfig& config, int threads) {
    const std::vector<double> pts = grid.points();
    std::vector<ScanSample> samples(pts.size());
    const int n = static_cast<int>(pts.size());
    const int team = threads > 0 ? threads : omp_get_max_threads();

    // Each slot is written by exactly one iteration; cost varies a lot near
    // blow-up, hence dynamic scheduling.
#pragma omp parallel for schedule(dynamic, 1) num_threads(team)
    for (int i = 0; i < n; ++i) samples[i] = probe_gamma(pts[i], sign, config);

    return summarize(std::move(samples));
}

std::string export_scan(const ScanReport& report) {
    std::string out = "h_star,gamma,lambda,failed\n";
    for (const ScanSample& s : report.samples) {
        out += sig12(s.h_star);
        out += ',';
        out += sig12(s.gamma);
        out += ',';
        out += sig12(s.lambda);
        out += s.failed ? ",1\n" : ",0\n";
    }
    return out;
}

std::vector<ScanSample> parse_scan_csv(std::string_view csv) {
    std::vector<ScanSample> out;
    std::istringstream in{std::string(csv)};
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#') continue;
        if (header) {
            if (line != "h_star,gamma,lambda,failed") throw InvalidArgument("unexpected scan CSV header: " + line);
            header = false;
            continue;
        }
        std::istringstream row(line);
        std::string field[4];
        for (auto& f : field)
            if (!std::getline(row, f, ',')) throw InvalidArgument("short scan CSV row: " + line);
        ScanSample s;
        s.h_star = std::strtod(field[0].c_str(), nullptr);
        s.gamma = std::strtod(field[1].c_str(), nullptr);
        s.lambda = std::strtod(field[2].c_str(), nullptr);
        if (field[3] != "0" && field[3] != "1") throw InvalidArgument("bad failure flag in scan CSV: " + line);
        s.failed = field[3] == "1";
        out.push_back(s);
    }
    if (header) throw InvalidArgument("scan CSV has no header");
    return out;
}

}  // namespace itm
