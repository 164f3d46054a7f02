#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "itm/cli.hpp"

namespace itm::cli {

std::string sig12(double x) {
    if (std::isnan(x)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

double round_sig12(double x) {
    if (!std::isfinite(x)) return x;
    return std::strtod(sig12(x).c_str(), nullptr);
}

std::string fixed6(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

std::string table_gamma(double x) {
    if (x == 0.0 || std::abs(x) >= 1e-3 || !std::isfinite(x)) return fixed6(x);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", x);
    return buf;
}

std::string trajectory_csv(const Trajectory& trajectory) {
    std::string out = "eta,f,df,ddf\n";
    for (std::size_t i = 0; i < trajectory.size(); ++i) {
        const StateVector& s = trajectory.state(i);
        out += sig12(trajectory.eta(i)) + ',' + sig12(s[0]) + ',' + sig12(s[1]) + ',' + sig12(s[2]) + '\n';
    }
    return out;
}

namespace {

std::string row(std::initializer_list<std::pair<std::string, int>> cells) {
    std::string out;
    for (const auto& [text, width] : cells) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%*s", width, text.c_str());
        out += buf;
    }
    out += '\n';
    return out;
}

}  // namespace

std::string iterates_table(const ItmResult& result) {
    std::string out = row({{"j", 4}, {"h*_j", 12}, {"lambda_j", 12}, {"Gamma(h*_j)", 14}, {"d2f/deta2(0)", 15}});
    for (const ItmIterate& it : result.iterates)
        out += row({{std::to_string(it.j), 4},
                    {fixed6(it.h_star), 12},
                    {fixed6(it.lambda), 12},
                    {table_gamma(it.gamma), 14},
                    {fixed6(it.wall_shear), 15}});
    out += result.converged ? "converged:" : "not converged:";
    out += " h* = " + fixed6(result.final_h_star) + ", lambda = " + fixed6(result.final_lambda) +
           ", d2f/deta2(0) = " + fixed6(result.final_wall_shear) + '\n';
    return out;
}

std::string topfer_table(const std::vector<TopferCheck>& checks) {
    std::string out = row({{"eta*_j", 8}, {"lambda_j", 12}, {"d2f/deta2(0)", 15}});
    for (const TopferCheck& c : checks) {
        char eta[32];
        std::snprintf(eta, sizeof eta, "%.2f", c.eta_star);
        out += row({{eta, 8}, {fixed6(c.lambda), 12}, {fixed6(c.wall_shear), 15}});
    }
    return out;
}

std::string scan_table(const ScanReport& report) {
    std::string out = row({{"h*", 12}, {"Gamma(h*)", 14}, {"lambda", 12}, {"status", 8}});
    for (const ScanSample& s : report.samples)
        out += row({{fixed6(s.h_star), 12},
                    {s.failed ? "-" : fixed6(s.gamma), 14},
                    {s.failed ? "-" : fixed6(s.lambda), 12},
                    {s.failed ? "failed" : "ok", 8}});
    return out;
}

double wall_shear_increase_percent(double reference, double other) {
    return std::abs(std::abs(other) - std::abs(reference)) / std::abs(reference) * 100.0;
}

}  // namespace itm::cli
