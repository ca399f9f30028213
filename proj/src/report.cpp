#include "zmv/report.hpp"

#include <charconv>
#include <system_error>

#include "json.hpp"

namespace zmv::report {

const char* command_name(Command command) {
    switch (command) {
        case Command::eq1: return "eq1";
        case Command::telescope: return "telescope";
        case Command::interchange: return "interchange";
        case Command::sine_mellin: return "sine-mellin";
        case Command::fe: return "fe";
        case Command::chain: return "chain";
        case Command::all: return "all";
    }
    return "unknown";
}

std::string format_double(double value) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

namespace {

std::string format_long(long value) {
    char buf[24];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

std::string emit_csv(const std::vector<funceq::VerificationRecord>& records) {
    std::string out = kCsvHeader;
    out += '\n';
    for (const auto& r : records) {
        out += funceq::step_name(r.step);
        out += ',';
        out += format_double(r.s.real());
        out += ',';
        out += format_double(r.s.imag());
        out += ',';
        out += format_double(r.lhs.real());
        out += ',';
        out += format_double(r.lhs.imag());
        out += ',';
        out += format_double(r.rhs.real());
        out += ',';
        out += format_double(r.rhs.imag());
        out += ',';
        out += format_double(r.abs_err);
        out += ',';
        out += format_double(r.rel_err);
        out += ',';
        out += format_long(r.n_terms);
        out += ',';
        out += r.converged ? "true" : "false";
        out += ',';
        out += r.pass ? "true" : "false";
        out += '\n';
    }
    return out;
}

std::string emit_json(const std::vector<funceq::VerificationRecord>& records,
                      const RunConfig& cfg) {
    nlohmann::json root;
    root["metadata"] = {
        {"tolerances", {{"abs_tol", cfg.abs_tol}, {"rel_tol", cfg.rel_tol}}},
        {"grid",
         {{"re_min", cfg.grid.re_min},
          {"re_max", cfg.grid.re_max},
          {"im_min", cfg.grid.im_min},
          {"im_max", cfg.grid.im_max},
          {"re_steps", cfg.grid.re_steps},
          {"im_steps", cfg.grid.im_steps},
          {"exclusion_radius", cfg.grid.exclusion_radius}}},
        {"tool_version", kToolVersion},
    };
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : records) {
        rows.push_back({
            {"step", funceq::step_name(r.step)},
            {"s_re", r.s.real()},
            {"s_im", r.s.imag()},
            {"lhs_re", r.lhs.real()},
            {"lhs_im", r.lhs.imag()},
            {"rhs_re", r.rhs.real()},
            {"rhs_im", r.rhs.imag()},
            {"abs_err", r.abs_err},
            {"rel_err", r.rel_err},
            {"n_terms", r.n_terms},
            {"converged", r.converged},
            {"pass", r.pass},
        });
    }
    root["records"] = std::move(rows);
    return root.dump(2) + "\n";
}

}  // namespace

std::string emit_report(const std::vector<funceq::VerificationRecord>& records,
                        const RunConfig& cfg) {
    return cfg.format == Format::csv ? emit_csv(records) : emit_json(records, cfg);
}

}  // namespace zmv::report
