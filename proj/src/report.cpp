#include "mems/report.hpp"

#include "mems/verify.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mems {

std::string format_double(double x) {
    if (std::isnan(x)) return "null";
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

Json& Json::operator[](const std::string& key) {
    if (!std::holds_alternative<Object>(v_)) v_ = Object{};
    return std::get<Object>(v_)[key];
}

void Json::push_back(Json v) {
    if (!std::holds_alternative<Array>(v_)) v_ = Array{};
    std::get<Array>(v_).push_back(std::move(v));
}

void Json::write(std::string& out, int indent, int depth) const {
    const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
    const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
    if (std::holds_alternative<std::nullptr_t>(v_)) {
        out += "null";
    } else if (std::holds_alternative<bool>(v_)) {
        out += std::get<bool>(v_) ? "true" : "false";
    } else if (std::holds_alternative<double>(v_)) {
        out += format_double(std::get<double>(v_));
    } else if (std::holds_alternative<long long>(v_)) {
        out += std::to_string(std::get<long long>(v_));
    } else if (std::holds_alternative<std::string>(v_)) {
        out += '"';
        for (char c : std::get<std::string>(v_)) {
            switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
            }
        }
        out += '"';
    } else if (std::holds_alternative<Array>(v_)) {
        const auto& arr = std::get<Array>(v_);
        if (arr.empty()) {
            out += "[]";
            return;
        }
        out += "[\n";
        for (std::size_t i = 0; i < arr.size(); ++i) {
            out += pad;
            arr[i].write(out, indent, depth + 1);
            if (i + 1 < arr.size()) out += ',';
            out += '\n';
        }
        out += close_pad + "]";
    } else {
        const auto& obj = std::get<Object>(v_);
        if (obj.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        std::size_t i = 0;
        for (const auto& [k, v] : obj) {
            out += pad + '"' + k + "\": ";
            v.write(out, indent, depth + 1);
            if (++i < obj.size()) out += ',';
            out += '\n';
        }
        out += close_pad + "}";
    }
}

std::string Json::dump(int indent) const {
    std::string out;
    write(out, indent, 0);
    out += '\n';
    return out;
}

GridDomain ScenarioConfig::build_grid() const {
    return shape == Shape::Interval ? GridDomain::interval(size, nodes)
                                    : GridDomain::ball(dim, size, nodes);
}

NonlinearityProfile ScenarioConfig::build_gap() const {
    switch (gap_kind) {
    case GapKind::PowerGap: return NonlinearityProfile::power_gap(exponent);
    case GapKind::ExpGap: return NonlinearityProfile::exp_gap();
    case GapKind::ConstantOne: return NonlinearityProfile::constant_one();
    case GapKind::Tabulated:
        throw std::runtime_error("tabulated nonlinearities are not configurable from files");
    }
    throw std::runtime_error("unknown nonlinearity kind");
}

ForcingProfile ScenarioConfig::build_forcing() const {
    switch (forcing_kind) {
    case ForcingKind::Constant: return ForcingProfile::constant(amplitude);
    case ForcingKind::RadialBump: return ForcingProfile::radial_bump(amplitude, center, width);
    case ForcingKind::RadialPolynomial: return ForcingProfile::radial_polynomial(coeffs);
    }
    throw std::runtime_error("unknown forcing kind");
}

namespace {

[[noreturn]] void config_error(const std::string& key, const std::string& what) {
    throw std::runtime_error("config error at '" + key + "': " + what);
}

double parse_number(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double x = std::stod(value, &used);
        if (used != value.size()) config_error(key, "trailing characters in '" + value + "'");
        return x;
    } catch (const std::exception&) {
        config_error(key, "not a number: '" + value + "'");
    }
}

int parse_int(const std::string& key, const std::string& value) {
    const double x = parse_number(key, value);
    if (x != std::floor(x)) config_error(key, "expected an integer");
    return static_cast<int>(x);
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

} // namespace

void apply_config_line(ScenarioConfig& cfg, const std::string& raw, int lineno) {
    std::string line = raw;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) return;

    const auto eq = line.find('=');
    if (eq == std::string::npos) {
        std::ostringstream os;
        os << "config error at line " << lineno << ": expected 'key = value'";
        throw std::runtime_error(os.str());
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) config_error(key.empty() ? "<line>" : key, "empty key or value");

    if (key == "domain.shape") {
        if (value == "interval") cfg.shape = Shape::Interval;
        else if (value == "ball") cfg.shape = Shape::Ball;
        else config_error(key, "expected interval or ball");
    } else if (key == "domain.size") {
        cfg.size = parse_number(key, value);
    } else if (key == "domain.n") {
        cfg.dim = parse_int(key, value);
    } else if (key == "domain.N") {
        cfg.nodes = parse_int(key, value);
    } else if (key == "nonlinearity.kind") {
        if (value == "power") cfg.gap_kind = GapKind::PowerGap;
        else if (value == "exp") cfg.gap_kind = GapKind::ExpGap;
        else if (value == "one") cfg.gap_kind = GapKind::ConstantOne;
        else config_error(key, "expected power, exp or one");
    } else if (key == "nonlinearity.p") {
        cfg.exponent = parse_number(key, value);
    } else if (key == "forcing.kind") {
        if (value == "constant") cfg.forcing_kind = ForcingKind::Constant;
        else if (value == "bump") cfg.forcing_kind = ForcingKind::RadialBump;
        else if (value == "polynomial") cfg.forcing_kind = ForcingKind::RadialPolynomial;
        else config_error(key, "expected constant, bump or polynomial");
    } else if (key == "forcing.amplitude") {
        cfg.amplitude = parse_number(key, value);
    } else if (key == "forcing.center") {
        cfg.center = parse_number(key, value);
    } else if (key == "forcing.width") {
        cfg.width = parse_number(key, value);
    } else if (key == "forcing.coeffs") {
        cfg.coeffs.clear();
        std::istringstream is(value);
        std::string tok;
        while (std::getline(is, tok, ','))
            cfg.coeffs.push_back(parse_number(key, trim(tok)));
    } else if (key == "mode.lambda") {
        cfg.lambda = parse_number(key, value);
    } else if (key == "mode.u0") {
        cfg.u0 = parse_number(key, value);
    } else if (key == "mode.t_end") {
        cfg.t_end = parse_number(key, value);
    } else if (key == "mode.tol_lambda") {
        cfg.tol_lambda = parse_number(key, value);
    } else if (key == "mode.dt_max") {
        cfg.dt_max = parse_number(key, value);
    } else if (key == "mode.picard_sweeps") {
        cfg.picard_sweeps = parse_int(key, value);
    } else if (key == "scan.a_min") {
        cfg.scan.a_min = parse_number(key, value);
    } else if (key == "scan.a_max") {
        cfg.scan.a_max = parse_number(key, value);
    } else if (key == "scan.steps") {
        cfg.scan.steps = parse_int(key, value);
    } else if (key == "output.dir") {
        cfg.out_dir = value;
    } else if (key == "output.verbose") {
        if (value == "true") cfg.verbose = true;
        else if (value == "false") cfg.verbose = false;
        else config_error(key, "expected true or false");
    } else {
        config_error(key, "unknown key");
    }
}

ScenarioConfig parse_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    ScenarioConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) apply_config_line(cfg, line, ++lineno);
    return cfg;
}

void validate(const ScenarioConfig& cfg) {
    if (cfg.size <= 0.0) config_error("domain.size", "must be positive");
    if (cfg.nodes < 8) config_error("domain.N", "need at least 8 interior nodes");
    if (cfg.shape == Shape::Ball && cfg.dim < 2) config_error("domain.n", "ball dimension >= 2");
    if (cfg.gap_kind == GapKind::PowerGap && cfg.exponent <= 0.0)
        config_error("nonlinearity.p", "must be positive");
    if (cfg.amplitude < 0.0) config_error("forcing.amplitude", "must be nonnegative");
    if (cfg.forcing_kind == ForcingKind::RadialBump && cfg.width <= 0.0)
        config_error("forcing.width", "must be positive");
    if (cfg.forcing_kind == ForcingKind::RadialPolynomial && cfg.coeffs.empty())
        config_error("forcing.coeffs", "needs a coefficient list");
    if (cfg.lambda < 0.0) config_error("mode.lambda", "must be nonnegative");
    if (cfg.u0 >= 1.0) config_error("mode.u0", "initial level must stay below 1");
    if (cfg.t_end < 0.0) config_error("mode.t_end", "must be nonnegative");
    if (cfg.tol_lambda <= 0.0) config_error("mode.tol_lambda", "must be positive");
    if (cfg.picard_sweeps < 1) config_error("mode.picard_sweeps", "need at least one sweep");
    if (cfg.scan.steps < 1 || cfg.scan.a_min <= 0.0 || cfg.scan.a_max < cfg.scan.a_min)
        config_error("scan.a_min", "scan must be nonempty with a_min > 0");
}

namespace {

Json config_json(const ScenarioConfig& cfg) {
    Json j = Json::object();
    j["domain.shape"] = cfg.shape == Shape::Interval ? "interval" : "ball";
    j["domain.size"] = cfg.size;
    if (cfg.shape == Shape::Ball) j["domain.n"] = cfg.dim;
    j["domain.N"] = cfg.nodes;
    switch (cfg.gap_kind) {
    case GapKind::PowerGap:
        j["nonlinearity.kind"] = "power";
        j["nonlinearity.p"] = cfg.exponent;
        break;
    case GapKind::ExpGap: j["nonlinearity.kind"] = "exp"; break;
    case GapKind::ConstantOne: j["nonlinearity.kind"] = "one"; break;
    case GapKind::Tabulated: j["nonlinearity.kind"] = "tabulated"; break;
    }
    switch (cfg.forcing_kind) {
    case ForcingKind::Constant:
        j["forcing.kind"] = "constant";
        j["forcing.amplitude"] = cfg.amplitude;
        break;
    case ForcingKind::RadialBump:
        j["forcing.kind"] = "bump";
        j["forcing.amplitude"] = cfg.amplitude;
        j["forcing.center"] = cfg.center;
        j["forcing.width"] = cfg.width;
        break;
    case ForcingKind::RadialPolynomial: {
        j["forcing.kind"] = "polynomial";
        Json arr = Json::array();
        for (double c : cfg.coeffs) arr.push_back(c);
        j["forcing.coeffs"] = std::move(arr);
        break;
    }
    }
    j["mode.lambda"] = cfg.lambda;
    j["mode.u0"] = cfg.u0;
    j["mode.t_end"] = cfg.t_end;
    j["mode.tol_lambda"] = cfg.tol_lambda;
    j["mode.dt_max"] = cfg.dt_max;
    j["mode.picard_sweeps"] = cfg.picard_sweeps;
    j["scan.a_min"] = cfg.scan.a_min;
    j["scan.a_max"] = cfg.scan.a_max;
    j["scan.steps"] = cfg.scan.steps;
    j["seedless"] = cfg.seedless;
    j["defaults.iteration_tol"] = 1e-10;
    j["defaults.contact_guard"] = 1e-9;
    j["defaults.contact_threshold"] = 1e-6;
    return j;
}

Json hypotheses_json(const HypothesisReport& rep) {
    Json arr = Json::array();
    for (const auto& c : rep.checks) {
        Json e = Json::object();
        e["id"] = c.id;
        e["pass"] = c.pass;
        e["witness"] = c.witness;
        arr.push_back(std::move(e));
    }
    return arr;
}

Json bound_json(const BoundEntry& e) {
    Json j = Json::object();
    j["applicable"] = e.applicable;
    if (e.applicable) j["value"] = e.value;
    else j["reason"] = e.note;
    return j;
}

Json bounds_json(const BoundsRecord& rec) {
    Json j = Json::object();
    j["mu1"] = rec.mu1;
    j["integral_f_phi1"] = rec.f_phi1;
    j["sup_sg"] = rec.sup_sg;
    j["sup_sg_arg"] = rec.sup_sg_arg;
    j["gap_area"] = rec.gap_area;
    j["nu_hat"] = rec.nu_hat;
    j["nu_best_dilation"] = rec.nu_best_dilation;
    j["max_f"] = rec.max_f;
    j["inf_f"] = rec.inf_f;
    j["lower_nu"] = bound_json(rec.lower_nu);
    j["upper_g0"] = bound_json(rec.upper_g0);
    j["upper_gap_integral"] = bound_json(rec.upper_gap_integral);
    j["pohozaev"] = bound_json(rec.pohozaev);
    return j;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

void write_field(const std::filesystem::path& dir, const std::string& name, const Field& u) {
    std::ostringstream os;
    write_field_csv(os, u);
    write_text(dir / name, os.str());
}

Json touchdown_json(const TouchdownBoundsReport& rep) {
    Json j = Json::object();
    j["mu1"] = rep.mu1;
    j["delta1"] = rep.delta1;
    j["integral_f_phi1"] = rep.f_phi1;
    j["sup_sg"] = rep.sup_sg;
    j["energy0"] = rep.energy0;
    j["lambda_energy_threshold"] = rep.lambda_energy;
    j["lambda_gap_threshold"] = rep.lambda_gap;
    j["bound_energy"] = bound_json(rep.bound_energy);
    j["bound_gap"] = bound_json(rep.bound_gap);
    j["bound_localized"] = bound_json(rep.bound_localized);
    j["localized_lambda_threshold"] = rep.localized_lambda;
    j["localized_radius"] = rep.localized_radius;
    return j;
}

const char* status_name(EvolveStatus s) {
    switch (s) {
    case EvolveStatus::Completed: return "completed";
    case EvolveStatus::Touchdown: return "touchdown";
    case EvolveStatus::StepFailure: return "step-failure";
    }
    return "?";
}

} // namespace

std::string trace_csv(const EvolutionTrace& trace) {
    std::string out = "t,max_u,E,dist_to_ref,dt\n";
    char buf[192];
    for (const auto& s : trace.samples) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g\n", s.t, s.max_u,
                      s.energy, s.dist_to_ref, s.dt);
        out += buf;
    }
    return out;
}

int run_scenario(const ScenarioConfig& cfg) {
    validate(cfg);
    const std::filesystem::path out_dir(cfg.out_dir);
    std::filesystem::create_directories(out_dir);
    std::filesystem::create_directories(out_dir / "fields");

    const GridDomain grid = cfg.build_grid();
    const NonlinearityProfile g = cfg.build_gap();
    const ForcingProfile f = cfg.build_forcing();
    const HypothesisReport hyp = check_hypotheses(g, f, grid);

    Json summary = Json::object();
    summary["config"] = config_json(cfg);
    summary["profiles"]["nonlinearity"] = g.describe();
    summary["profiles"]["forcing"] = f.describe();
    summary["hypotheses"] = hypotheses_json(hyp);

    int exit_code = 0;
    switch (cfg.mode) {
    case RunMode::Stationary: {
        StationaryControls ctl;
        ctl.record_iterates = cfg.verbose;
        const StationaryResult res = minimal_solution(grid, f, g, cfg.lambda, ctl);
        summary["mode"] = "stationary";
        summary["result"]["converged"] = res.converged;
        summary["result"]["iterations"] = res.iterations;
        summary["result"]["final_increment"] = res.final_increment;
        summary["result"]["residual"] = res.residual;
        summary["result"]["max_v"] = res.solution.max();
        summary["result"]["monotone"] = res.monotone;
        if (res.converged)
            summary["result"]["linearized_eigenvalue"] =
                linearized_eigenvalue(grid, f, g, cfg.lambda, res.solution);
        write_field(out_dir / "fields", "v_lambda.csv", res.solution);
        if (cfg.verbose) {
            std::string csv = "k,sup_increment,max_v\n";
            char buf[96];
            for (const auto& s : res.trace) {
                std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g\n", s.k, s.increment, s.max_value);
                csv += buf;
            }
            write_text(out_dir / "iterations.csv", csv);
        }
        break;
    }
    case RunMode::PullIn: {
        const PullInEstimate est = pull_in_voltage(grid, f, g, cfg.tol_lambda, {}, cfg.scan);
        summary["mode"] = "pullin";
        summary["result"]["lambda_lo"] = est.lambda_lo;
        summary["result"]["lambda_hi"] = est.lambda_hi;
        summary["result"]["gap"] = est.lambda_hi - est.lambda_lo;
        summary["result"]["probes"] = est.probes;
        summary["result"]["bounds"] = bounds_json(est.bounds);
        break;
    }
    case RunMode::Bounds: {
        const BoundsRecord rec = lambda_bounds(grid, f, g, cfg.scan);
        summary["mode"] = "bounds";
        summary["result"]["bounds"] = bounds_json(rec);
        break;
    }
    case RunMode::Evolve: {
        EvolveControls ctl;
        ctl.dt_max = cfg.dt_max;
        const EigenPair pair = principal_eigenpair(grid);
        ctl.eigenpair = &pair;
        const EvolutionTrace trace = evolve(grid, f, g, cfg.lambda, cfg.u0, cfg.t_end, ctl);
        summary["mode"] = "evolve";
        summary["result"]["status"] = status_name(trace.status);
        summary["result"]["final_time"] = trace.final_time;
        summary["result"]["final_max"] = trace.final_state.max();
        summary["result"]["steps"] = static_cast<long long>(trace.steps);
        if (trace.status == EvolveStatus::Touchdown) {
            summary["result"]["contact_last_below"] = trace.contact_last_below;
            summary["result"]["contact_first_at"] = trace.contact_first_at;
        }
        summary["result"]["touchdown_bounds"] =
            touchdown_json(touchdown_bounds(grid, f, g, cfg.lambda, Field(grid, cfg.u0)));
        write_text(out_dir / "trace.csv", trace_csv(trace));
        write_field(out_dir / "fields", "u_final.csv", trace.final_state);
        break;
    }
    case RunMode::Picard: {
        const PicardResult res =
            picard_local(grid, f, g, cfg.lambda, Field(grid, cfg.u0), cfg.picard_sweeps);
        summary["mode"] = "picard";
        summary["result"]["t_local"] = res.t_local;
        summary["result"]["dt"] = res.dt;
        summary["result"]["sweeps"] = res.sweeps;
        summary["result"]["dt_halvings"] = res.dt_halvings;
        summary["result"]["ceiling_ok"] = res.ceiling_ok;
        Json gaps = Json::array();
        for (double gp : res.gaps) gaps.push_back(gp);
        summary["result"]["gaps"] = std::move(gaps);
        write_field(out_dir / "fields", "u_picard.csv", res.last_iterate.back());
        break;
    }
    case RunMode::VerifyAll: {
        const auto checks = run_acceptance_checks({cfg.nodes});
        const bool ok = print_check_table(checks);
        summary["mode"] = "verify-all";
        Json arr = Json::array();
        for (const auto& c : checks) {
            Json e = Json::object();
            e["name"] = c.name;
            e["pass"] = c.pass;
            e["detail"] = c.detail;
            arr.push_back(std::move(e));
        }
        summary["result"]["checks"] = std::move(arr);
        summary["result"]["all_pass"] = ok;
        if (!ok) exit_code = 2;
        break;
    }
    }

    write_text(out_dir / "summary.json", summary.dump());
    return exit_code;
}

} // namespace mems
