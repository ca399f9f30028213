#include "zmv/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <thread>

#include "CLI11.hpp"
#include "zmv/mellin.hpp"
#include "zmv/specfun.hpp"

namespace zmv::cli {

namespace fe = zmv::funceq;
namespace sf = zmv::specfun;
using fe::StepKind;
using fe::VerificationRecord;
using report::Command;
using report::RunConfig;

namespace {

bool in_upper_strip(double re) {
    return re >= mellin::kStripMargin && re <= 1.0 - mellin::kStripMargin;
}

bool in_lower_strip(double re) {
    return re >= -1.0 + mellin::kStripMargin && re <= -mellin::kStripMargin;
}

Command command_from(const std::string& name) {
    if (name == "eq1") return Command::eq1;
    if (name == "telescope") return Command::telescope;
    if (name == "interchange") return Command::interchange;
    if (name == "sine-mellin") return Command::sine_mellin;
    if (name == "fe") return Command::fe;
    if (name == "chain") return Command::chain;
    return Command::all;
}

// The step a command's failure is filed under when its evaluation throws
// before producing a record of its own.
StepKind representative_step(Command command) {
    switch (command) {
        case Command::eq1: return StepKind::EQ1;
        case Command::telescope: return StepKind::TELESCOPE;
        case Command::sine_mellin: return StepKind::INTERCHANGE;
        case Command::interchange: return StepKind::SERIES_SUM;
        default: return StepKind::FUNC_EQ;
    }
}

// Grid-level validation beyond the flag grammar.  Returns a message for
// the usage-error path (exit 2), or nothing when the run is well-formed.
std::optional<std::string> validate(const RunConfig& cfg) {
    const auto& g = cfg.grid;
    for (const double v : {g.re_min, g.re_max, g.im_min, g.im_max, g.exclusion_radius}) {
        if (!std::isfinite(v)) return "grid values must be finite";
    }
    if (g.re_steps < 1 || g.im_steps < 1) return "--steps values must be >= 1";
    if (g.re_min > g.re_max || g.im_min > g.im_max) {
        return "range minimum exceeds maximum";
    }
    if ((g.re_steps > 1 && g.re_min == g.re_max) ||
        (g.im_steps > 1 && g.im_min == g.im_max)) {
        return "a degenerate range (min == max) requires 1 step";
    }
    if (g.exclusion_radius < 0.0) return "--exclusion-radius must be >= 0";
    if (!(cfg.abs_tol > 0.0) || !(cfg.rel_tol > 0.0)) {
        return "tolerances must be positive";
    }
    if (cfg.trunc.max_intervals < 10) return "--max-intervals must be >= 10";
    if (cfg.series_terms < 0) return "--n-terms must be >= 1 (0 selects the default)";

    // Strip containment per command, so sweeps fail fast at parse time
    // instead of emitting a grid of domain errors.
    for (const ComplexValue s : grid_points(g)) {
        const double re = s.real();
        switch (cfg.command) {
            case Command::eq1:
            case Command::telescope:
                if (!in_upper_strip(re)) {
                    return std::string(report::command_name(cfg.command)) +
                           " needs Re s within (0, 1), got " + std::to_string(re);
                }
                break;
            case Command::interchange:
            case Command::sine_mellin:
                if (!in_lower_strip(re)) {
                    return std::string(report::command_name(cfg.command)) +
                           " needs Re s within (-1, 0), got " + std::to_string(re);
                }
                break;
            case Command::chain:
                if (!in_upper_strip(re) && !in_lower_strip(re)) {
                    return "chain needs Re s within (-1, 0) or (0, 1), got " +
                           std::to_string(re);
                }
                break;
            default:
                break;
        }
    }
    return std::nullopt;
}

}  // namespace

std::vector<ComplexValue> grid_points(const funceq::GridSpec& grid) {
    std::vector<ComplexValue> points;
    points.reserve(static_cast<size_t>(grid.re_steps) * grid.im_steps);
    for (int i = 0; i < grid.re_steps; ++i) {
        const double re = grid.re_steps == 1
                              ? grid.re_min
                              : grid.re_min + i * (grid.re_max - grid.re_min) /
                                                  (grid.re_steps - 1);
        for (int j = 0; j < grid.im_steps; ++j) {
            const double im = grid.im_steps == 1
                                  ? grid.im_min
                                  : grid.im_min + j * (grid.im_max - grid.im_min) /
                                                      (grid.im_steps - 1);
            points.emplace_back(re, im);
        }
    }
    return points;
}

std::vector<VerificationRecord> evaluate_point(ComplexValue s, const RunConfig& cfg) {
    const ToleranceProfile tols{cfg.abs_tol, cfg.rel_tol};
    std::vector<VerificationRecord> out;
    const auto guarded = [&](StepKind step, auto&& eval) {
        try {
            out.push_back(eval());
        } catch (const std::exception&) {
            out.push_back(fe::failed_record(step, s, tols));
        }
    };
    const auto telescoped_oracle = [&] {
        return (sf::pow_real_complex(2.0, s) - 1.0) * sf::zeta(s) / s;
    };

    switch (cfg.command) {
        case Command::eq1:
            guarded(StepKind::EQ1, [&] {
                const auto q = mellin::mellin_rho(s, cfg.trunc);
                return fe::make_record(StepKind::EQ1, s, q.value, sf::zeta(s) / (-s),
                                       q.work, q.converged, tols);
            });
            break;
        case Command::telescope:
            guarded(StepKind::TELESCOPE, [&] {
                const auto q = mellin::mellin_telescoped(s, cfg.trunc);
                return fe::make_record(StepKind::TELESCOPE, s, q.value,
                                       telescoped_oracle(), q.work, q.converged, tols);
            });
            break;
        case Command::sine_mellin:
            for (const double a : {2.0 * M_PI, 4.0 * M_PI}) {
                guarded(StepKind::INTERCHANGE, [&] {
                    const auto q = mellin::mellin_sin_numeric(s, a, cfg.trunc);
                    return fe::make_record(StepKind::INTERCHANGE, s, q.value,
                                           fe::mellin_sin_closed(s, a), q.work,
                                           q.converged, tols);
                });
            }
            break;
        case Command::interchange:
            guarded(StepKind::SERIES_SUM, [&] {
                const long n = cfg.series_terms > 0
                                   ? cfg.series_terms
                                   : std::min(cfg.trunc.max_intervals, 100000L);
                return fe::make_record(StepKind::SERIES_SUM, s,
                                       fe::series_rhs_partial(s, n),
                                       telescoped_oracle(), n, true, tols);
            });
            break;
        case Command::fe:
            guarded(StepKind::FUNC_EQ, [&] { return fe::fe_residual(s, tols); });
            break;
        case Command::chain:
            return fe::verify_chain(s, cfg.trunc, cfg.grid, tols, cfg.series_terms);
        case Command::all:
            if (in_upper_strip(s.real()) || in_lower_strip(s.real())) {
                return fe::verify_chain(s, cfg.trunc, cfg.grid, tols, cfg.series_terms);
            }
            guarded(StepKind::FUNC_EQ, [&] { return fe::fe_residual(s, tols); });
            break;
    }
    return out;
}

int run(std::vector<std::string> args) {
    RunConfig cfg;
    std::string command_str;
    std::string format_str = "csv";
    std::vector<double> re_range = {cfg.grid.re_min, cfg.grid.re_max};
    std::vector<double> im_range = {cfg.grid.im_min, cfg.grid.im_max};
    std::vector<int> steps = {cfg.grid.re_steps, cfg.grid.im_steps};
    bool no_parallel = false;

    CLI::App app{"zmv: numerical verification of the fractional-part Mellin route "
                 "to the zeta functional equation"};
    app.failure_message(CLI::FailureMessage::help);
    app.require_subcommand(1);
    auto* verify =
        app.add_subcommand("verify", "Sweep one verification command over a grid");
    verify
        ->add_option("command", command_str,
                     "One of: eq1, telescope, interchange, sine-mellin, fe, chain, all")
        ->required()
        ->check(CLI::IsMember({"eq1", "telescope", "interchange", "sine-mellin", "fe",
                               "chain", "all"}));
    verify->add_option("--re", re_range, "Real-part range: <min> <max>")->expected(2);
    verify->add_option("--im", im_range, "Imaginary-part range: <min> <max>")->expected(2);
    verify->add_option("--steps", steps, "Grid resolution: <re_steps> <im_steps>")
        ->expected(2);
    verify->add_option("--abs-tol", cfg.abs_tol, "Absolute tolerance per record");
    verify->add_option("--rel-tol", cfg.rel_tol, "Relative tolerance per record");
    verify->add_option("--max-intervals", cfg.trunc.max_intervals,
                       "Quadrature subdivision budget per integral");
    verify->add_option("--n-terms", cfg.series_terms,
                       "Series truncation for SERIES_SUM (0 = default)");
    verify->add_option("--format", format_str, "Report format")
        ->check(CLI::IsMember({"csv", "json"}));
    verify->add_option("--out", cfg.out_path, "Report path (default: standard output)");
    verify->add_flag("--no-parallel", no_parallel, "Evaluate grid points sequentially");
    verify->add_option("--exclusion-radius", cfg.grid.exclusion_radius,
                       "Radius of the skipped disks around oracle hazards");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    cfg.command = command_from(command_str);
    cfg.format = format_str == "json" ? report::Format::json : report::Format::csv;
    cfg.parallel = !no_parallel;
    cfg.grid.re_min = re_range[0];
    cfg.grid.re_max = re_range[1];
    cfg.grid.im_min = im_range[0];
    cfg.grid.im_max = im_range[1];
    cfg.grid.re_steps = steps[0];
    cfg.grid.im_steps = steps[1];
    // Quadrature aims a factor 4 below the record tolerance so the
    // estimate-vs-tolerance comparison has headroom.
    cfg.trunc.target_tol = cfg.abs_tol / 4.0;

    if (const auto problem = validate(cfg)) {
        std::cerr << "zmv: " << *problem << "\n(run with --help for usage)\n";
        return 2;
    }

    const auto points = grid_points(cfg.grid);
    std::vector<size_t> active;
    active.reserve(points.size());
    long excluded = 0;
    for (size_t i = 0; i < points.size(); ++i) {
        if (fe::is_excluded(points[i], cfg.grid.exclusion_radius)) {
            ++excluded;
        } else {
            active.push_back(i);
        }
    }

    // Slot-per-point assembly keeps the report in grid order no matter
    // which thread finishes first.
    std::vector<std::vector<VerificationRecord>> slots(points.size());
    const auto work_one = [&](size_t index) {
        try {
            slots[index] = evaluate_point(points[index], cfg);
        } catch (const std::exception&) {
            slots[index] = {fe::failed_record(representative_step(cfg.command),
                                              points[index],
                                              {cfg.abs_tol, cfg.rel_tol})};
        }
    };
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const size_t n_threads =
        cfg.parallel ? std::min<size_t>(hw, active.size()) : size_t{1};
    if (n_threads > 1) {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (size_t t = 0; t < n_threads; ++t) {
            pool.emplace_back([&] {
                for (size_t k = next.fetch_add(1); k < active.size();
                     k = next.fetch_add(1)) {
                    work_one(active[k]);
                }
            });
        }
        for (auto& th : pool) th.join();
    } else {
        for (const size_t index : active) work_one(index);
    }

    std::vector<VerificationRecord> records;
    for (auto& slot : slots) {
        records.insert(records.end(), slot.begin(), slot.end());
    }

    long passed = 0;
    long failed = 0;
    bool nonconverged = false;
    double max_rel_err = 0.0;
    for (const auto& r : records) {
        r.pass ? ++passed : ++failed;
        nonconverged = nonconverged || !r.converged;
        if (std::isfinite(r.rel_err)) max_rel_err = std::max(max_rel_err, r.rel_err);
    }

    const std::string text = report::emit_report(records, cfg);
    bool io_ok = true;
    if (cfg.out_path.empty()) {
        std::cout.write(text.data(), static_cast<std::streamsize>(text.size()));
        std::cout.flush();
        io_ok = std::cout.good();
    } else {
        std::ofstream out(cfg.out_path, std::ios::binary);
        out.write(text.data(), static_cast<std::streamsize>(text.size()));
        out.flush();
        io_ok = out.good();
        if (!io_ok) std::cerr << "zmv: cannot write report to " << cfg.out_path << "\n";
    }

    std::cerr << "zmv: command=" << report::command_name(cfg.command)
              << " points=" << points.size() << " excluded=" << excluded
              << " records=" << records.size() << " passed=" << passed
              << " failed=" << failed
              << " max_rel_err=" << report::format_double(max_rel_err) << "\n";

    if (!io_ok || nonconverged) return 3;
    return failed > 0 ? 1 : 0;
}

int run(int argc, const char* const* argv) {
    std::vector<std::string> args;
    args.reserve(argc > 0 ? static_cast<size_t>(argc) - 1 : 0);
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(std::move(args));
}

}  // namespace zmv::cli
