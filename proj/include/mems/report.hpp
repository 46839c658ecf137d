#pragma once

#include "mems/evolution.hpp"
#include "mems/grid.hpp"
#include "mems/profiles.hpp"
#include "mems/stationary.hpp"

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace mems {

/// Minimal JSON value with deterministic serialization: object keys are kept
/// sorted (std::map) and doubles print with 17 significant digits, so equal
/// results produce byte-identical artifacts.
class Json {
public:
    using Array = std::vector<Json>;
    using Object = std::map<std::string, Json>;

    Json() : v_(nullptr) {}
    Json(std::nullptr_t) : v_(nullptr) {}
    Json(bool b) : v_(b) {}
    Json(double d) : v_(d) {}
    Json(int i) : v_(static_cast<long long>(i)) {}
    Json(long long i) : v_(i) {}
    Json(const char* s) : v_(std::string(s)) {}
    Json(std::string s) : v_(std::move(s)) {}
    Json(Array a) : v_(std::move(a)) {}
    Json(Object o) : v_(std::move(o)) {}

    static Json object() { return Json(Object{}); }
    static Json array() { return Json(Array{}); }

    Json& operator[](const std::string& key);
    void push_back(Json v);

    std::string dump(int indent = 2) const;

private:
    void write(std::string& out, int indent, int depth) const;
    std::variant<std::nullptr_t, bool, double, long long, std::string, Array, Object> v_;
};

std::string format_double(double x); // %.17g

enum class RunMode { Stationary, PullIn, Bounds, Evolve, Picard, VerifyAll };

struct ScenarioConfig {
    // domain
    Shape shape = Shape::Interval;
    double size = 1.0;
    int dim = 2;   // ball only
    int nodes = 400;
    // nonlinearity
    GapKind gap_kind = GapKind::PowerGap;
    double exponent = 2.0;
    // forcing
    ForcingKind forcing_kind = ForcingKind::Constant;
    double amplitude = 1.0;
    double center = 0.5;
    double width = 0.1;
    std::vector<double> coeffs;
    // mode parameters
    RunMode mode = RunMode::Bounds;
    double lambda = 1.0;
    double u0 = 0.0;
    double t_end = 5.0;
    double tol_lambda = 1e-4;
    double dt_max = 0.0;
    int picard_sweeps = 8;
    // scan
    DilationScan scan;
    // output
    std::string out_dir = "out";
    bool verbose = false;
    bool seedless = false;

    GridDomain build_grid() const;
    NonlinearityProfile build_gap() const;
    ForcingProfile build_forcing() const;
};

/// Parses the flat dotted-key format (key = value, # comments). Throws
/// std::runtime_error naming the offending key path.
ScenarioConfig parse_scenario_file(const std::string& path);
void apply_config_line(ScenarioConfig& cfg, const std::string& line, int lineno);
void validate(const ScenarioConfig& cfg);

/// Columns (t, max_u, E, dist_to_ref, dt); header row always present.
std::string trace_csv(const EvolutionTrace& trace);

/// Dispatches one scenario and writes summary.json plus CSV artifacts into
/// cfg.out_dir. Returns the process exit code: 0 success, 2 failed
/// verification assertions.
int run_scenario(const ScenarioConfig& cfg);

} // namespace mems
