#pragma once

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "debranges/criterion.hpp"
#include "debranges/errors.hpp"
#include "debranges/io.hpp"
#include "debranges/jacobi.hpp"
#include "debranges/space.hpp"

namespace debranges::cli {

using nlohmann::json;

inline constexpr const char* tool_version = "0.1.0";
inline constexpr const char* out_dir_env = "DEBRANGES_OUT_DIR";

enum ExitCode : int {
    exit_present = 0,
    exit_not_present = 1,
    exit_inconclusive = 2,
    exit_invalid = 3,
    exit_parse = 4,
    exit_other = 5,
};

struct RunConfig {
    std::string subcommand;

    // criterion: --input holds the spectrum of s_0, --input2 the spectrum of s_gamma
    std::string input;
    std::string input2;
    /// "auto" (fewer than 16 points means finite), "finite" or "truncated".
    std::string extent = "auto";

    std::string space;   // JSON text or path
    std::string matrix;  // JSON text or path
    std::string function;
    std::string op;

    std::optional<double> beta;
    std::optional<std::pair<double, double>> interval;
    std::vector<cplx> points;
    std::optional<cplx> w;
    std::optional<double> v;
    std::optional<cplx> z0;
    std::vector<double> taus;
    std::vector<int> sweep;
    std::optional<int> order;

    std::string out_dir;
    std::string format = "json";

    std::optional<double> tol_quad;
    double tol_c1 = 1e-6;
    double tol_c2 = 1e-3;
    double tol_c3 = 1e-8;
    TruncationSchedule schedule{};
};

struct Report {
    json document;
    int exit_code = exit_other;
    /// File name and CSV content of each table.
    std::vector<std::pair<std::string, std::string>> tables;
};

inline void validate(const RunConfig& c) {
    auto positive = [](double x, const char* name) {
        if (!(x > 0.0) || !std::isfinite(x)) throw ConfigurationError(std::string(name) + " must be positive");
    };
    if (c.tol_quad) positive(*c.tol_quad, "tol_quad");
    positive(c.tol_c1, "tol_c1");
    positive(c.tol_c2, "tol_c2");
    positive(c.tol_c3, "tol_c3");
    positive(c.schedule.r0, "schedule r0");
    positive(c.schedule.tolerance, "schedule tolerance");
    if (c.schedule.max_doublings < 1) throw ConfigurationError("schedule doublings must be at least 1");
    if (c.schedule.extrapolation_levels < 1) throw ConfigurationError("schedule levels must be at least 1");
    if (c.format != "json" && c.format != "csv") throw ConfigurationError("format must be json or csv");
    if (c.extent != "auto" && c.extent != "finite" && c.extent != "truncated") {
        throw ConfigurationError("extent must be auto, finite or truncated");
    }
}

inline json config_snapshot(const RunConfig& c) {
    json pts = json::array();
    for (cplx z : c.points) pts.push_back(io::complex_to_json(z));
    json taus = json::array();
    for (double t : c.taus) taus.push_back(std::isinf(t) ? json(t > 0 ? "inf" : "-inf") : json(t));
    json j = {
        {"subcommand", c.subcommand},
        {"op", c.op},
        {"extent", c.extent},
        {"format", c.format},
        {"tolerances", {{"tol_c1", c.tol_c1}, {"tol_c2", c.tol_c2}, {"tol_c3", c.tol_c3}}},
        {"schedule",
         {{"r0", c.schedule.r0},
          {"doublings", c.schedule.max_doublings},
          {"levels", c.schedule.extrapolation_levels},
          {"tolerance", c.schedule.tolerance}}},
        {"points", pts},
        {"taus", taus},
        {"sweep", c.sweep},
    };
    if (c.tol_quad) j["tolerances"]["tol_quad"] = *c.tol_quad;
    if (c.beta) j["beta"] = *c.beta;
    if (c.interval) j["interval"] = {c.interval->first, c.interval->second};
    if (c.w) j["w"] = io::complex_to_json(*c.w);
    if (c.v) j["v"] = *c.v;
    if (c.z0) j["z0"] = io::complex_to_json(*c.z0);
    if (c.order) j["order"] = *c.order;
    return j;
}

inline Report base_report(const RunConfig& c) {
    Report r;
    r.document = {{"tool", "debranges"}, {"version", tool_version}, {"subcommand", c.subcommand},
                  {"config", config_snapshot(c)}};
    return r;
}

// ---------------------------------------------------------------------------
// criterion

inline ZeroSequence load_spectrum(const std::string& path, const std::string& extent_flag) {
    const io::SpectrumInput in = io::read_spectrum(path);
    Extent extent = in.values.size() < 16 ? Extent::finite : Extent::truncated;
    if (in.extent) extent = *in.extent;
    if (extent_flag == "finite") extent = Extent::finite;
    if (extent_flag == "truncated") extent = Extent::truncated;
    try {
        return ZeroSequence(in.values, extent);
    } catch (const ConfigurationError& e) {
        throw InvalidSpectra(path + ": " + e.what());
    }
}

inline json spectrum_echo(const ZeroSequence& s) {
    return {{"x", s.values()}, {"extent", s.is_finite() ? "finite" : "truncated"}};
}

inline Report cmd_criterion(const RunConfig& c) {
    if (c.input.empty() || c.input2.empty()) throw ConfigurationError("criterion needs --input and --input2");
    const ZeroSequence sp0 = load_spectrum(c.input, c.extent);
    const ZeroSequence spg = load_spectrum(c.input2, c.extent);

    CriterionOptions opt;
    opt.schedule = c.schedule;
    opt.tol_c1 = c.tol_c1;
    opt.tol_c2 = c.tol_c2;
    opt.tol_c3 = c.tol_c3;
    const CriterionVerdict v = entire_criterion(sp0, spg, opt);

    Report r = base_report(c);
    r.document["inputs"] = {{"spectrum_0", spectrum_echo(sp0)}, {"spectrum_gamma", spectrum_echo(spg)}};
    json c1_trace = json::array();
    for (const auto& [radius, sum] : v.c1.trace) c1_trace.push_back({radius, sum});
    r.document["results"] = {
        {"overall", to_string(v.overall)},
        {"c1", {{"status", to_string(v.c1.status)}, {"limit", v.c1.limit}, {"note", v.c1.note}, {"trace", c1_trace}}},
        {"c2",
         {{"status", to_string(v.c2.status)},
          {"limit_positive", v.c2.limit_positive},
          {"limit_negative", v.c2.limit_negative},
          {"gap", v.c2.gap},
          {"error_positive", v.c2.error_positive},
          {"error_negative", v.c2.error_negative},
          {"note", v.c2.note}}},
        {"c3",
         {{"status", to_string(v.c3.status)},
          {"sum", v.c3.sum},
          {"decay_exponent", v.c3.decay_exponent},
          {"remainder_estimate", std::isfinite(v.c3.remainder_estimate) ? json(v.c3.remainder_estimate) : json(nullptr)},
          {"resolved", v.c3.resolved},
          {"total", v.c3.total},
          {"note", v.c3.note},
          {"trace", {{"points", v.c3.points}, {"terms", v.c3.terms}, {"partial_sums", v.c3.partial_sums}}}}},
    };

    std::string c3csv = "x,term,partial_sum\n";
    for (std::size_t k = 0; k < v.c3.terms.size(); ++k) {
        c3csv += io::format_double(v.c3.points[k]) + "," + io::format_double(v.c3.terms[k]) + "," +
                 io::format_double(v.c3.partial_sums[k]) + "\n";
    }
    r.tables.emplace_back("c3_terms.csv", std::move(c3csv));
    std::string c1csv = "radius,partial_sum\n";
    for (const auto& [radius, sum] : v.c1.trace) c1csv += io::format_double(radius) + "," + io::format_double(sum) + "\n";
    r.tables.emplace_back("c1_trace.csv", std::move(c1csv));

    switch (v.overall) {
        case Overall::entire_gauge_present: r.exit_code = exit_present; break;
        case Overall::not_present: r.exit_code = exit_not_present; break;
        default: r.exit_code = exit_inconclusive; break;
    }
    return r;
}

// ---------------------------------------------------------------------------
// space

namespace detail {
    inline std::vector<cplx> points_or_default(const RunConfig& c) {
        if (!c.points.empty()) return c.points;
        std::vector<cplx> pts;
        for (int k = -4; k <= 4; ++k) pts.emplace_back(0.5 * k, 0.0);
        return pts;
    }

    inline std::string value_table(const std::vector<cplx>& zs, const std::vector<cplx>& vals) {
        std::string out = "re_z,im_z,re_value,im_value\n";
        for (std::size_t k = 0; k < zs.size(); ++k) {
            out += io::format_double(zs[k].real()) + "," + io::format_double(zs[k].imag()) + "," +
                   io::format_double(vals[k].real()) + "," + io::format_double(vals[k].imag()) + "\n";
        }
        return out;
    }

    inline json value_json(const std::vector<cplx>& zs, const std::vector<cplx>& vals) {
        json rows = json::array();
        for (std::size_t k = 0; k < zs.size(); ++k) {
            rows.push_back({{"z", io::complex_to_json(zs[k])}, {"value", io::complex_to_json(vals[k])}});
        }
        return rows;
    }

    inline void values_result(Report& r, const std::string& name, const std::vector<cplx>& zs,
                              const std::vector<cplx>& vals) {
        r.document["results"] = {{"values", value_json(zs, vals)}};
        r.tables.emplace_back(name + ".csv", value_table(zs, vals));
    }

    inline double require_beta(const RunConfig& c) {
        if (!c.beta) throw ConfigurationError("operation " + c.op + " needs --beta");
        return *c.beta;
    }
}  // namespace detail

inline Report cmd_space(const RunConfig& c) {
    if (c.space.empty()) throw ConfigurationError("space needs --space");
    const json descriptor = io::load_json_argument(c.space, "space descriptor");
    const DeBrangesSpace space = io::space_from_json(descriptor, c.tol_quad);
    Report r = base_report(c);
    r.document["inputs"] = {{"space", descriptor}};
    if (!c.function.empty()) r.document["inputs"]["function"] = io::load_json_argument(c.function, "function descriptor");
    r.exit_code = 0;

    const std::vector<cplx> zs = detail::points_or_default(c);
    const std::string& op = c.op;

    if (op == "spectrum") {
        const double beta = detail::require_beta(c);
        if (!c.interval) throw ConfigurationError("spectrum needs --interval");
        const ZeroSequence zeros = spectrum(space, beta, c.interval->first, c.interval->second);
        r.document["results"] = {{"beta", reduce_mod_pi(beta)}, {"spectrum", spectrum_echo(zeros)}};
        r.tables.emplace_back("spectrum.csv", io::spectrum_to_csv(zeros));
    } else if (op == "kernel-diag") {
        std::vector<cplx> vals;
        for (cplx z : zs) vals.push_back(kernel(space, z, z));
        detail::values_result(r, "kernel_diag", zs, vals);
    } else if (op == "kernel") {
        if (!c.w) throw ConfigurationError("kernel needs --w");
        const EntireFunction k = kernel_function(space, *c.w);
        std::vector<cplx> vals;
        for (cplx z : zs) vals.push_back(evaluate(k, z));
        detail::values_result(r, "kernel", zs, vals);
    } else if (op == "resolvent") {
        const double beta = detail::require_beta(c);
        if (!c.w) throw ConfigurationError("resolvent needs --w");
        const EntireFunction f = c.function.empty() ? kernel_function(space, I)
                                                    : io::function_from_json(r.document["inputs"]["function"]);
        const ModelElement g = resolvent(space, beta, *c.w, f);
        std::vector<cplx> vals;
        for (cplx z : zs) vals.push_back(g(z));
        detail::values_result(r, "resolvent", zs, vals);
    } else if (op == "xi") {
        const double gamma = detail::require_beta(c);
        if (!c.v) throw ConfigurationError("xi needs --v");
        // xi(z) evaluated at the sample point z itself; conj-symmetry summarised
        std::vector<cplx> vals;
        double sym = 0.0;
        for (cplx z : zs) {
            const ModelElement xi = xi_gauge(space, gamma, *c.v, z);
            const ModelElement xic = xi_gauge(space, gamma, *c.v, std::conj(z));
            vals.push_back(xi(z));
            for (cplx t : zs) sym = std::max(sym, std::abs(xic(t) - std::conj(xi(std::conj(t)))));
        }
        detail::values_result(r, "xi", zs, vals);
        r.document["results"]["conjugation_symmetry_deviation"] = sym;
    } else if (op == "validate") {
        const ValidationReport& v = space.e().report();
        r.document["results"] = {{"accepted", v.accepted},
                                 {"upper_margin", v.upper_margin},
                                 {"worst_upper", io::complex_to_json(v.worst_upper)},
                                 {"real_min_modulus", v.real_min_modulus},
                                 {"samples", v.samples},
                                 {"gamma0", space.e().gamma0() ? json(*space.e().gamma0()) : json(nullptr)}};
    } else if (op == "orthocomplement") {
        const auto oc = domain_orthocomplement(space);
        if (oc) {
            r.document["results"] = {{"dense_domain", false}, {"gamma", oc->gamma}, {"residual", oc->residual}};
        } else {
            r.document["results"] = {{"dense_domain", true}};
        }
    } else if (op == "e-from-kernel") {
        const cplx w0 = c.w.value_or(I);
        const EntireFunction e = e_from_kernel(space, w0);
        std::vector<cplx> vals;
        for (cplx z : zs) vals.push_back(evaluate(e, z));
        detail::values_result(r, "e_from_kernel", zs, vals);
    } else if (op == "check") {
        // invariant summary: kernel hermitian symmetry, sharp intertwining, beta_at consistency
        double hermitian = 0.0, conj_sym = 0.0, beta_dev = 0.0;
        for (cplx a : zs) {
            for (cplx b : zs) {
                hermitian = std::max(hermitian, std::abs(kernel(space, a, b) - std::conj(kernel(space, b, a))));
                conj_sym = std::max(
                    conj_sym, std::abs(kernel(space, std::conj(a), std::conj(b)) - std::conj(kernel(space, a, b))));
            }
            if (a.imag() == 0.0) {
                const double beta = beta_at(space.e(), a.real());
                beta_dev = std::max(beta_dev, std::abs(s_beta(space.e(), beta)(a)) / std::abs(space.e()(a)));
            }
        }
        r.document["results"] = {{"kernel_hermitian_deviation", hermitian},
                                 {"kernel_conjugation_deviation", conj_sym},
                                 {"beta_at_residual", beta_dev}};
    } else {
        throw ConfigurationError("unknown space operation \"" + op + "\"");
    }
    return r;
}

// ---------------------------------------------------------------------------
// jacobi

inline Report cmd_jacobi(const RunConfig& c) {
    if (c.matrix.empty()) throw ConfigurationError("jacobi needs --matrix");
    const json descriptor = io::load_json_argument(c.matrix, "matrix descriptor");
    const JacobiMatrix j = io::jacobi_from_json(descriptor);
    Report r = base_report(c);
    r.document["inputs"] = {{"matrix", descriptor}};
    r.exit_code = 0;
    const int n = c.order.value_or(j.order());
    const std::string& op = c.op;

    if (op == "recurrence") {
        const cplx z = c.z0.value_or(I);
        const PolynomialPair pp = recurrence_eval(j, z, n);
        std::string csv = "k,re_P,im_P,re_Q,im_Q\n";
        json p = json::array(), q = json::array();
        for (std::size_t k = 0; k < pp.P.size(); ++k) {
            p.push_back(io::complex_to_json(pp.P[k]));
            q.push_back(io::complex_to_json(pp.Q[k]));
            csv += std::to_string(k) + "," + io::format_double(pp.P[k].real()) + "," + io::format_double(pp.P[k].imag()) +
                   "," + io::format_double(pp.Q[k].real()) + "," + io::format_double(pp.Q[k].imag()) + "\n";
        }
        r.document["results"] = {{"P", p},
                                 {"Q", q},
                                 {"valid_through", pp.valid_through},
                                 {"overflow", pp.overflow},
                                 {"wronskian_deviation", wronskian_deviation(j, pp)}};
        r.tables.emplace_back("recurrence.csv", std::move(csv));
    } else if (op == "gauge") {
        std::vector<cplx> zs = c.points;
        if (zs.empty()) {
            for (int k = 0; k < 10; ++k) zs.emplace_back(-2.0 + 0.4 * k, 0.1 * (k % 3) - 0.1);
        }
        r.document["results"] = {{"max_deviation", gauge_identity_check(j, zs)}, {"samples", zs.size()}};
    } else if (op == "limit-circle") {
        const cplx z0 = c.z0.value_or(I);
        std::vector<int> sweep = c.sweep;
        if (sweep.empty()) {
            for (int m = 8; m <= n; m *= 2) sweep.push_back(m);
        }
        const LimitCircleReport lc = limit_circle_diagnostic(j, z0, sweep);
        json trace = json::array();
        std::string csv = "N,partial_sum\n";
        for (const auto& [m, s] : lc.trace) {
            trace.push_back({m, s});
            csv += std::to_string(m) + "," + io::format_double(s) + "\n";
        }
        r.document["results"] = {{"status", to_string(lc.status)}, {"note", lc.note}, {"trace", trace}};
        r.tables.emplace_back("limit_circle.csv", std::move(csv));
    } else if (op == "spectra") {
        std::vector<double> taus = c.taus;
        if (taus.empty()) taus = {0.0, std::numeric_limits<double>::infinity()};
        std::vector<ZeroSequence> spectra;
        json list = json::array();
        std::string csv = "tau,eigenvalue\n";
        for (double tau : taus) {
            spectra.push_back(truncated_extension_spectra(j, n, tau));
            const json tau_json = std::isinf(tau) ? json("inf") : json(tau);
            list.push_back({{"tau", tau_json}, {"eigenvalues", spectra.back().values()}});
            for (double x : spectra.back().values()) {
                csv += (std::isinf(tau) ? std::string("inf") : io::format_double(tau)) + "," + io::format_double(x) + "\n";
            }
        }
        bool all = true;
        json pairs = json::array();
        for (std::size_t a = 0; a < spectra.size(); ++a) {
            for (std::size_t b = a + 1; b < spectra.size(); ++b) {
                const InterlaceResult il = interlace_check(spectra[a], spectra[b]);
                all = all && il.interlaced;
                pairs.push_back({{"pair", {a, b}}, {"interlaced", il.interlaced}});
            }
        }
        r.document["results"] = {{"spectra", list}, {"interlacing", all}, {"pairs", pairs}};
        r.tables.emplace_back("spectra.csv", std::move(csv));
    } else {
        throw ConfigurationError("unknown jacobi operation \"" + op + "\"");
    }
    return r;
}

// ---------------------------------------------------------------------------

/// Runs a subcommand; every library error becomes an error report with an exit code above 2.
inline Report run(const RunConfig& c) {
    auto failure = [&](int code, const std::string& kind, const std::string& message, std::optional<double> where = {}) {
        Report r = base_report(c);
        r.exit_code = code;
        r.document["error"] = {{"kind", kind}, {"message", message}};
        if (where) r.document["error"]["location"] = *where;
        return r;
    };
    try {
        validate(c);
        if (c.subcommand == "criterion") return cmd_criterion(c);
        if (c.subcommand == "space") return cmd_space(c);
        if (c.subcommand == "jacobi") return cmd_jacobi(c);
        throw ConfigurationError("unknown subcommand \"" + c.subcommand + "\"");
    } catch (const ParseError& e) {
        return failure(exit_parse, "parse", e.what());
    } catch (const ConfigurationError& e) {
        return failure(exit_parse, "configuration", e.what());
    } catch (const RefineNeeded& e) {
        return failure(exit_invalid, "refine-needed", e.what(), e.location());
    } catch (const InvalidSpectra& e) {
        return failure(exit_invalid, "invalid-spectra", e.what());
    } catch (const SpectrumPoint& e) {
        return failure(exit_invalid, "spectrum-point", e.what(), c.w ? std::optional<double>(c.w->real()) : std::nullopt);
    } catch (const UnsupportedSpace& e) {
        return failure(exit_invalid, "unsupported-space", e.what());
    } catch (const HypothesisViolation& e) {
        return failure(exit_invalid, "hypothesis-violation", e.what());
    } catch (const InvalidEigenvalue& e) {
        return failure(exit_invalid, "invalid-eigenvalue", e.what());
    } catch (const InvalidSeed& e) {
        return failure(exit_invalid, "invalid-seed", e.what());
    } catch (const Error& e) {
        return failure(exit_other, "numeric", e.what());
    } catch (const std::exception& e) {
        return failure(exit_other, "internal", e.what());
    }
}

/// Writes report.json and the CSV tables into the output directory, if any;
/// returns the text meant for standard output.
inline std::string emit(const Report& r, const RunConfig& c) {
    std::string dir = c.out_dir;
    if (dir.empty()) {
        if (const char* env = std::getenv(out_dir_env)) dir = env;
    }
    if (!dir.empty()) {
        std::filesystem::create_directories(dir);
        std::ofstream(std::filesystem::path(dir) / "report.json") << r.document.dump(2) << "\n";
        for (const auto& [name, content] : r.tables) std::ofstream(std::filesystem::path(dir) / name) << content;
    }
    if (c.format == "csv" && !r.tables.empty() && !r.document.contains("error")) return r.tables.front().second;
    return r.document.dump(2) + "\n";
}

}  // namespace debranges::cli
