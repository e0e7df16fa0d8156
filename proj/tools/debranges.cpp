#include <cmath>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "debranges/cli.hpp"

namespace {

using debranges::cplx;

// "x" or "x:y" for x + iy.
cplx parse_complex(const std::string& s) {
    const auto colon = s.find(':');
    std::size_t used = 0;
    try {
        if (colon == std::string::npos) {
            const double re = std::stod(s, &used);
            if (used == s.size()) return {re, 0.0};
        } else {
            const std::string a = s.substr(0, colon), b = s.substr(colon + 1);
            std::size_t ub = 0;
            const double re = std::stod(a, &used), im = std::stod(b, &ub);
            if (used == a.size() && ub == b.size()) return {re, im};
        }
    } catch (const std::exception&) {
    }
    throw debranges::ParseError("not a complex number: \"" + s + "\" (use x or x:y)");
}

double parse_real(const std::string& s) {
    if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    std::size_t used = 0;
    try {
        const double v = std::stod(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw debranges::ParseError("not a number: \"" + s + "\"");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"de Branges space models, entire-operator criterion and Jacobi diagnostics"};
    app.require_subcommand(1);
    debranges::cli::RunConfig cfg;

    std::vector<std::string> points, taus, interval;
    std::string w, z0;
    double schedule_r0 = cfg.schedule.r0, schedule_tol = cfg.schedule.tolerance;
    int schedule_doublings = cfg.schedule.max_doublings, schedule_levels = cfg.schedule.extrapolation_levels;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--out", cfg.out_dir, "Output directory (default: $DEBRANGES_OUT_DIR)");
        sub->add_option("--format", cfg.format, "Standard output format: json or csv");
        sub->add_option("--tol-quad", cfg.tol_quad, "Quadrature tolerance");
        sub->add_option("--tol-c1", cfg.tol_c1, "Tolerance for the reciprocal-sum condition");
        sub->add_option("--tol-c2", cfg.tol_c2, "Tolerance for the density condition");
        sub->add_option("--tol-c3", cfg.tol_c3, "Tolerance for the series remainder");
        sub->add_option("--schedule-r0", schedule_r0, "First truncation radius");
        sub->add_option("--schedule-doublings", schedule_doublings, "Maximum number of radius doublings");
        sub->add_option("--schedule-levels", schedule_levels, "Extrapolation levels");
        sub->add_option("--schedule-tol", schedule_tol, "Canonical product tolerance");
    };

    CLI::App* crit = app.add_subcommand("criterion", "Decide the entire-gauge criterion from two spectra");
    crit->add_option("--input", cfg.input, "Spectrum of s_0 (CSV or JSON)")->required();
    crit->add_option("--input2", cfg.input2, "Spectrum of s_gamma (CSV or JSON)")->required();
    crit->add_option("--extent", cfg.extent, "auto, finite or truncated");
    common(crit);

    CLI::App* space = app.add_subcommand("space", "Operations in a de Branges space");
    space->add_option("--space", cfg.space, "Space descriptor (JSON text or file)")->required();
    space->add_option("--op", cfg.op,
                      "spectrum, kernel, kernel-diag, resolvent, xi, validate, orthocomplement, e-from-kernel, check")
        ->required();
    space->add_option("--beta", cfg.beta, "Extension label beta (gamma for xi)");
    space->add_option("--interval", interval, "Scan interval a,b")->delimiter(',')->expected(2);
    space->add_option("--points", points, "Sample points x or x:y, comma separated")->delimiter(',');
    space->add_option("--w", w, "Point w (x or x:y)");
    space->add_option("--v", cfg.v, "Real seed point for xi");
    space->add_option("--function", cfg.function, "Function descriptor (JSON text or file)");
    common(space);

    CLI::App* jac = app.add_subcommand("jacobi", "Jacobi matrix recurrences and truncated spectra");
    jac->add_option("--matrix", cfg.matrix, "Matrix descriptor (JSON text or file)")->required();
    jac->add_option("--op", cfg.op, "recurrence, gauge, limit-circle or spectra")->required();
    jac->add_option("--points", points, "Sample points x or x:y, comma separated")->delimiter(',');
    jac->add_option("--z0", z0, "Non-real point (x:y)");
    jac->add_option("--order", cfg.order, "Truncation order (default: N of the descriptor)");
    jac->add_option("--tau", taus, "Boundary parameters, comma separated; inf deletes the last row")->delimiter(',');
    jac->add_option("--sweep", cfg.sweep, "Increasing orders for the limit-circle trace")->delimiter(',');
    common(jac);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : debranges::cli::exit_parse;
    }

    cfg.subcommand = app.get_subcommands().front()->get_name();
    cfg.schedule.r0 = schedule_r0;
    cfg.schedule.tolerance = schedule_tol;
    cfg.schedule.max_doublings = schedule_doublings;
    cfg.schedule.extrapolation_levels = schedule_levels;

    try {
        for (const auto& p : points) cfg.points.push_back(parse_complex(p));
        for (const auto& t : taus) cfg.taus.push_back(parse_real(t));
        if (!interval.empty()) cfg.interval = {parse_real(interval[0]), parse_real(interval[1])};
        if (!w.empty()) cfg.w = parse_complex(w);
        if (!z0.empty()) cfg.z0 = parse_complex(z0);
    } catch (const debranges::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return debranges::cli::exit_parse;
    }

    const debranges::cli::Report report = debranges::cli::run(cfg);
    std::string text;
    try {
        text = debranges::cli::emit(report, cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: cannot write output: " << e.what() << "\n";
        return debranges::cli::exit_other;
    }
    std::cout << text;
    if (report.document.contains("error")) {
        std::cerr << "error: " << report.document["error"]["message"].get<std::string>() << "\n";
    }
    return report.exit_code;
}
