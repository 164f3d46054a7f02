#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "itm/cli.hpp"

namespace itm::cli {
namespace {

using Json = nlohmann::ordered_json;

enum class Format { csv, json, table };

struct RunConfig {
    std::string subcommand;
    std::string root_finder = "secant";
    double h0 = 2.5;
    double h1 = 3.5;
    int sign = -1;
    double eta_inf_star = 10.0;
    double gamma_tol = 1e-9;
    int max_iterations = 50;
    double abs_tol = 1e-6;
    double rel_tol = 1e-6;
    std::vector<double> eta_checks{4.0, 6.0, 8.0, 10.0};
    double agreement_tol = kDefaultAgreementTol;
    double h_min = 0.5;
    double h_max = 20.0;
    int count = 40;
    std::string spacing = "linear";
    bool parallel = false;
    int threads = 0;
    std::string output_path;
    Format format = Format::table;
    bool verbose = false;
    std::size_t max_steps = kDefaultMaxSteps;
};

StepControl step_control(const RunConfig& rc) {
    StepControl sc;
    sc.abs_tol = rc.abs_tol;
    sc.rel_tol = rc.rel_tol;
    sc.max_steps = rc.max_steps;
    return sc;
}

ItmConfig itm_config(const RunConfig& rc) {
    ItmConfig c;
    c.root_finder = rc.root_finder == "newton" ? RootFinder::newton : RootFinder::secant;
    c.h0 = rc.h0;
    c.h1 = rc.h1;
    c.sign = sign_from_int(rc.sign);
    c.eta_inf_star = rc.eta_inf_star;
    c.gamma_tol = rc.gamma_tol;
    c.max_iterations = rc.max_iterations;
    c.step_control = step_control(rc);
    return c;
}

ScanGrid scan_grid(const RunConfig& rc) {
    return {rc.h_min, rc.h_max, rc.count, rc.spacing == "log" ? Spacing::logarithmic : Spacing::linear};
}

Json num(double x) { return round_sig12(x); }

Json tolerances_json(const RunConfig& rc) {
    Json j;
    j["abs_tol"] = num(rc.abs_tol);
    j["rel_tol"] = num(rc.rel_tol);
    j["max_steps"] = rc.max_steps;
    return j;
}

Json sakiadis_config_json(const RunConfig& rc) {
    Json j;
    j["root_finder"] = rc.root_finder;
    j["h0"] = num(rc.h0);
    if (rc.root_finder == "secant") j["h1"] = num(rc.h1);
    j["sign"] = rc.sign;
    j["eta_inf_star"] = num(rc.eta_inf_star);
    j["gamma_tol"] = num(rc.gamma_tol);
    j["max_iterations"] = rc.max_iterations;
    j.update(tolerances_json(rc));
    return j;
}

Json blasius_config_json(const RunConfig& rc) {
    Json j;
    Json checks = Json::array();
    for (double e : rc.eta_checks) checks.push_back(num(e));
    j["eta_checks"] = checks;
    j["agreement_tol"] = num(rc.agreement_tol);
    j.update(tolerances_json(rc));
    return j;
}

Json iterates_json(const std::vector<ItmIterate>& rows) {
    Json arr = Json::array();
    for (const ItmIterate& it : rows)
        arr.push_back({{"j", it.j},
                       {"h_star", num(it.h_star)},
                       {"lambda", num(it.lambda)},
                       {"gamma", num(it.gamma)},
                       {"wall_shear", num(it.wall_shear)}});
    return arr;
}

Json checks_json(const std::vector<TopferCheck>& checks) {
    Json arr = Json::array();
    for (std::size_t j = 0; j < checks.size(); ++j)
        arr.push_back({{"j", j},
                       {"eta_star", num(checks[j].eta_star)},
                       {"lambda", num(checks[j].lambda)},
                       {"wall_shear", num(checks[j].wall_shear)}});
    return arr;
}

std::string dump(const Json& j) { return j.dump(2) + '\n'; }

class Emitter {
public:
    Emitter(const RunConfig& rc, std::ostream& out) : rc_(rc), out_(out) {}

    void write(const std::string& text) {
        if (rc_.output_path.empty()) {
            out_ << text;
            return;
        }
        std::ofstream file(rc_.output_path, std::ios::binary | std::ios::trunc);
        if (!file) throw InvalidArgument("cannot open output file " + rc_.output_path);
        file << text;
    }

private:
    const RunConfig& rc_;
    std::ostream& out_;
};

int cmd_sakiadis(const RunConfig& rc, std::ostream& out, std::ostream& err) {
    const ItmConfig cfg = itm_config(rc);
    cfg.validate();
    const ItmResult result = solve_sakiadis(cfg);
    if (!result.converged) err << "sakiadis: no convergence within " << rc.max_iterations << " evaluations\n";

    Emitter emit(rc, out);
    switch (rc.format) {
        case Format::table: emit.write(iterates_table(result)); break;
        case Format::csv:
            if (result.converged) emit.write(trajectory_csv(result.rescaled_solution));
            break;
        case Format::json: {
            Json j;
            j["config"] = sakiadis_config_json(rc);
            j["config"]["subcommand"] = "sakiadis";
            j["iterates"] = iterates_json(result.iterates);
            j["final"] = {{"converged", result.converged},
                          {"h_star", num(result.final_h_star)},
                          {"lambda", num(result.final_lambda)},
                          {"wall_shear", num(result.final_wall_shear)}};
            j["verdict"] = result.converged ? "converged" : "not_converged";
            emit.write(dump(j));
            break;
        }
    }
    return result.converged ? kExitOk : kExitNotConverged;
}

int emit_topfer_failure(const RunConfig& rc, const TopferNonConvergence& e, std::ostream& out) {
    Emitter emit(rc, out);
    if (rc.format == Format::table) {
        emit.write(topfer_table(e.checks()) + "not converged: " + e.what() + '\n');
    } else if (rc.format == Format::json) {
        Json j;
        j["config"] = blasius_config_json(rc);
        j["config"]["subcommand"] = "blasius";
        j["iterates"] = checks_json(e.checks());
        j["final"] = {{"converged", false}};
        j["verdict"] = "not_converged";
        emit.write(dump(j));
    }
    return kExitNotConverged;
}

int cmd_blasius(const RunConfig& rc, std::ostream& out, std::ostream& err) {
    TopferResult result;
    try {
        result = solve_blasius_topfer(rc.eta_checks, rc.agreement_tol, step_control(rc));
    } catch (const TopferNonConvergence& e) {
        err << "blasius: " << e.what() << '\n';
        return emit_topfer_failure(rc, e, out);
    }

    Emitter emit(rc, out);
    switch (rc.format) {
        case Format::table: {
            char eta[32];
            std::snprintf(eta, sizeof eta, "%g", result.accepted_eta_star);
            emit.write(topfer_table(result.lambda_checks) + "accepted at eta* = " + eta + ": lambda = " +
                       fixed6(result.accepted_lambda) + ", d2f/deta2(0) = " + fixed6(result.wall_shear) + '\n');
            break;
        }
        case Format::csv: emit.write(trajectory_csv(result.rescaled_solution)); break;
        case Format::json: {
            Json j;
            j["config"] = blasius_config_json(rc);
            j["config"]["subcommand"] = "blasius";
            j["iterates"] = checks_json(result.lambda_checks);
            j["final"] = {{"converged", true},
                          {"eta_star", num(result.accepted_eta_star)},
                          {"lambda", num(result.accepted_lambda)},
                          {"wall_shear", num(result.wall_shear)}};
            j["verdict"] = "accepted";
            emit.write(dump(j));
            break;
        }
    }
    return kExitOk;
}

int cmd_scan(const RunConfig& rc, std::ostream& out, std::ostream&) {
    const ScanGrid grid = scan_grid(rc);
    grid.validate();
    ItmConfig cfg = itm_config(rc);
    cfg.step_control.validate(cfg.eta_inf_star);
    const SecondDerivativeSign sign = sign_from_int(rc.sign);
    const ScanReport report = rc.parallel ? scan_parallel(grid, sign, cfg, rc.threads) : scan_serial(grid, sign, cfg);

    std::string brackets;
    for (const Bracket& b : report.brackets) brackets += " [" + sig12(b.lo) + "," + sig12(b.hi) + "]";
    const std::string verdict_line = std::string("verdict: ") + to_string(report.verdict) + " brackets:" +
                                     (brackets.empty() ? std::string(" none") : brackets) + '\n';

    Emitter emit(rc, out);
    switch (rc.format) {
        case Format::table: emit.write(scan_table(report) + verdict_line); break;
        case Format::csv: emit.write(export_scan(report) + "# " + verdict_line); break;
        case Format::json: {
            Json j;
            j["config"] = {{"subcommand", "scan"},
                           {"sign", rc.sign},
                           {"h_min", num(rc.h_min)},
                           {"h_max", num(rc.h_max)},
                           {"count", rc.count},
                           {"spacing", rc.spacing},
                           {"eta_inf_star", num(rc.eta_inf_star)}};
            j["config"].update(tolerances_json(rc));
            Json samples = Json::array();
            for (const ScanSample& s : report.samples)
                samples.push_back({{"h_star", num(s.h_star)},
                                   {"gamma", s.failed ? Json(nullptr) : num(s.gamma)},
                                   {"lambda", s.failed ? Json(nullptr) : num(s.lambda)},
                                   {"failed", s.failed}});
            j["iterates"] = samples;
            Json br = Json::array();
            for (const Bracket& b : report.brackets) br.push_back({num(b.lo), num(b.hi)});
            j["final"] = {{"brackets", br}};
            j["verdict"] = to_string(report.verdict);
            emit.write(dump(j));
            break;
        }
    }
    return kExitOk;
}

int cmd_compare(const RunConfig& rc, std::ostream& out, std::ostream&) {
    const ItmConfig cfg = itm_config(rc);
    cfg.validate();
    const TopferResult blasius = solve_blasius_topfer(rc.eta_checks, rc.agreement_tol, step_control(rc));
    const ItmResult sakiadis = solve_sakiadis(cfg);
    if (!sakiadis.converged) throw RootFinderBreakdown("sakiadis: no convergence", sakiadis.iterates);

    const double increase = wall_shear_increase_percent(blasius.wall_shear, sakiadis.final_wall_shear);
    Emitter emit(rc, out);
    switch (rc.format) {
        case Format::table: {
            char pct[32];
            std::snprintf(pct, sizeof pct, "%.2f%%", increase);
            emit.write("Blasius  (Topfer) d2f/deta2(0) = " + fixed6(blasius.wall_shear) + '\n' +
                       "Sakiadis (ITM)    d2f/deta2(0) = " + fixed6(sakiadis.final_wall_shear) + '\n' +
                       "wall-shear increase: " + pct + '\n');
            break;
        }
        case Format::csv:
            emit.write("blasius_wall_shear,sakiadis_wall_shear,increase_percent\n" + sig12(blasius.wall_shear) + ',' +
                       sig12(sakiadis.final_wall_shear) + ',' + sig12(increase) + '\n');
            break;
        case Format::json: {
            Json j;
            j["config"] = sakiadis_config_json(rc);
            j["config"].update(blasius_config_json(rc));
            j["config"]["subcommand"] = "compare";
            j["iterates"] = Json::array({{{"problem", "blasius"}, {"wall_shear", num(blasius.wall_shear)}},
                                         {{"problem", "sakiadis"}, {"wall_shear", num(sakiadis.final_wall_shear)}}});
            j["final"] = {{"blasius_wall_shear", num(blasius.wall_shear)},
                          {"sakiadis_wall_shear", num(sakiadis.final_wall_shear)},
                          {"increase_percent", num(increase)}};
            j["verdict"] = std::abs(sakiadis.final_wall_shear) > std::abs(blasius.wall_shear) ? "sakiadis_higher"
                                                                                               : "blasius_higher";
            emit.write(dump(j));
            break;
        }
    }
    return kExitOk;
}

void add_output_options(CLI::App* sub, RunConfig& rc) {
    static const std::map<std::string, Format> formats{
        {"csv", Format::csv}, {"json", Format::json}, {"table", Format::table}};
    sub->add_option("--format", rc.format, "Report format: table, csv or json")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    sub->add_option("-o,--output", rc.output_path, "Write the report to this file instead of stdout");
    sub->add_flag("-v,--verbose", rc.verbose, "Print run metadata on stderr");
}

void add_tolerance_options(CLI::App* sub, RunConfig& rc) {
    sub->add_option("--abs-tol", rc.abs_tol, "Absolute IVP tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--rel-tol", rc.rel_tol, "Relative IVP tolerance")->check(CLI::PositiveNumber);
}

void add_itm_options(CLI::App* sub, RunConfig& rc) {
    sub->add_option("--root-finder", rc.root_finder, "secant or newton")->check(CLI::IsMember({"secant", "newton"}));
    sub->add_option("--h0", rc.h0, "First h* iterate")->check(CLI::PositiveNumber);
    sub->add_option("--h1", rc.h1, "Second h* iterate (secant)")->check(CLI::PositiveNumber);
    sub->add_option("--gamma-tol", rc.gamma_tol, "Stop when |Gamma| <= this")->check(CLI::PositiveNumber);
    sub->add_option("--max-iterations", rc.max_iterations, "Gamma evaluation budget")->check(CLI::PositiveNumber);
}

void add_eta_inf(CLI::App* sub, RunConfig& rc) {
    sub->add_option("--eta-inf", rc.eta_inf_star, "Truncated boundary eta*_inf")->check(CLI::PositiveNumber);
}

void add_sign(CLI::App* sub, RunConfig& rc) {
    sub->add_option("--sign", rc.sign, "Starred curvature f*''(0): +1 or -1")->check(CLI::IsMember({-1, 1}));
}

void add_topfer_options(CLI::App* sub, RunConfig& rc) {
    sub->add_option("--eta-checks", rc.eta_checks, "Increasing truncated boundaries, comma separated")
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    sub->add_option("--agreement-tol", rc.agreement_tol, "Agreement of subsequent lambda values")
        ->check(CLI::NonNegativeNumber);
}

std::size_t max_steps_from_env() {
    const char* raw = std::getenv("ITM_MAX_STEPS");
    if (!raw || !*raw) return kDefaultMaxSteps;
    errno = 0;
    char* end = nullptr;
    const long long v = std::strtoll(raw, &end, 10);
    if (errno != 0 || *end != '\0' || v <= 0) throw InvalidArgument(std::string("ITM_MAX_STEPS must be a positive integer, got ") + raw);
    return static_cast<std::size_t>(v);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig rc;
    CLI::App app{"Transformation methods for the Blasius and Sakiadis boundary-layer problems", "itm"};
    app.require_subcommand(1);

    auto* blasius = app.add_subcommand("blasius", "Töpfer's non-iterative method for the Blasius problem");
    add_topfer_options(blasius, rc);
    add_tolerance_options(blasius, rc);
    add_output_options(blasius, rc);

    auto* sakiadis = app.add_subcommand("sakiadis", "Iterative transformation method for the Sakiadis problem");
    add_itm_options(sakiadis, rc);
    add_sign(sakiadis, rc);
    add_eta_inf(sakiadis, rc);
    add_tolerance_options(sakiadis, rc);
    add_output_options(sakiadis, rc);

    auto* scan = app.add_subcommand("scan", "Sample Gamma(h*) and report sign changes");
    add_sign(scan, rc);
    add_eta_inf(scan, rc);
    scan->add_option("--h-min", rc.h_min, "Smallest h*")->check(CLI::PositiveNumber);
    scan->add_option("--h-max", rc.h_max, "Largest h*")->check(CLI::PositiveNumber);
    scan->add_option("--count", rc.count, "Number of grid points")->check(CLI::Range(2, 1'000'000));
    scan->add_option("--spacing", rc.spacing, "linear or log")->check(CLI::IsMember({"linear", "log"}));
    scan->add_flag("--parallel", rc.parallel, "Evaluate samples with OpenMP");
    scan->add_option("--threads", rc.threads, "OpenMP threads for --parallel (0 = runtime default)")
        ->check(CLI::NonNegativeNumber);
    add_tolerance_options(scan, rc);
    add_output_options(scan, rc);

    auto* compare = app.add_subcommand("compare", "Blasius vs Sakiadis wall shear");
    add_topfer_options(compare, rc);
    add_itm_options(compare, rc);
    add_eta_inf(compare, rc);
    add_tolerance_options(compare, rc);
    add_output_options(compare, rc);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    const auto started = std::chrono::steady_clock::now();
    int status = kExitOk;
    try {
        rc.max_steps = max_steps_from_env();
        if (blasius->parsed()) {
            rc.subcommand = "blasius";
            status = cmd_blasius(rc, out, err);
        } else if (sakiadis->parsed()) {
            rc.subcommand = "sakiadis";
            status = cmd_sakiadis(rc, out, err);
        } else if (scan->parsed()) {
            rc.subcommand = "scan";
            status = cmd_scan(rc, out, err);
        } else {
            rc.subcommand = "compare";
            status = cmd_compare(rc, out, err);
        }
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const RootFinderBreakdown& e) {
        err << "error: " << e.what() << " after " << e.iterates().size() << " evaluations\n";
        return kExitNotConverged;
    } catch (const TopferNonConvergence& e) {
        err << "error: " << e.what() << '\n';
        return kExitNotConverged;
    } catch (const IntegrationError& e) {
        err << "error: " << e.what() << '\n';
        return kExitBlowUp;
    } catch (const DegenerateFarFieldError& e) {
        err << "error: " << e.what() << '\n';
        return kExitBlowUp;
    } catch (const ScanFailure& e) {
        err << "error: " << e.what() << '\n';
        return kExitBlowUp;
    }

    if (rc.verbose) {
        const auto ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started).count();
        err << "itm " << rc.subcommand << ": exit " << status << ", " << ms << " ms, max_steps " << rc.max_steps << '\n';
    }
    return status;
}

}  // namespace itm::cli
