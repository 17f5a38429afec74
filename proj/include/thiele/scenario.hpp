#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "thiele/contract.hpp"
#include "thiele/errors.hpp"

namespace thiele {

/// A scenario spec that fails validation; carries every violated field.
struct SpecValidationError : ConfigError {
    std::vector<std::string> violations;

    explicit SpecValidationError(std::vector<std::string> violations);
};

struct RateCurveSpec {
    std::vector<double> breakpoints{0.0};
    std::vector<double> rates{0.0};
};

struct MortalitySpec {
    bool is_preset = true;
    std::string preset = "g82_female";
    double base = 0.0;
    double log_scale = 0.0;
    double log_slope = 0.0;
    double age_offset = 0.0;
};

struct PlanSpec {
    double premium_intensity = 0.0;
    double death_benefit = 0.0;
    double terminal_benefit = 0.0;
    double horizon = 0.0;
};

struct ModelSpec {
    std::string name;
    std::string family;  // zero | constant | exponential | indicator
    double psi = 0.0;
    double theta = 0.0;
    double level = 0.0;
};

struct OutputToggles {
    bool grids = false;
    bool theta_sweep = false;
    bool worst_case = false;
    bool monte_carlo = false;
};

struct SweepSpec {
    std::string family = "indicator";  // indicator | exponential
    double psi = 0.05;
    std::vector<double> thetas{0.5, 1.0, 2.0, 5.0, 10.0};
};

struct McSpec {
    std::uint64_t paths = 100000;
    std::uint64_t seed = 20180114;
    double time_step = 1.0 / 12.0;
};

/// Declarative description of one experiment: contract, bases, a list of
/// named surrender models and which outputs to produce. Times are years,
/// money in contract currency, rates per year.
struct ScenarioSpec {
    std::string name;
    PlanSpec plan;
    RateCurveSpec technical_rate;
    RateCurveSpec market_rate;
    MortalitySpec mortality;
    std::vector<ModelSpec> models;
    OutputToggles outputs;
    double step = 1.0 / 1200.0;
    SweepSpec sweep;
    McSpec mc;

    /// Every violated field, empty when the spec is runnable.
    std::vector<std::string> validate() const;

    PaymentPlan make_plan() const;
    RateCurve make_technical_rate() const;
    RateCurve make_market_rate() const;
    MortalityCurve make_mortality() const;
    IntensityModel make_model(const ModelSpec& model) const;

    std::string to_json_string() const;
    static ScenarioSpec from_json_string(const std::string& text);
    static ScenarioSpec load(const std::string& path);
};

struct RunResult {
    std::vector<std::string> files_written;
};

/// Runs every enabled output of the scenario and writes one CSV per
/// output into out_dir (atomically, via rename). Throws
/// SpecValidationError when the spec does not validate.
RunResult run(const ScenarioSpec& spec, const std::string& out_dir);

struct BuiltinEntry {
    std::string name;
    std::string description;
};

struct BuiltinCatalog {
    std::vector<BuiltinEntry> examples;
    std::vector<BuiltinEntry> models;
};

/// The four built-in interest-rate experiments and the five named
/// surrender models they share.
BuiltinCatalog list_builtins();

/// Full spec of a built-in experiment ("example1" .. "example4").
ScenarioSpec builtin_scenario(const std::string& name);

/// CSV number format used everywhere: 10 significant digits, '.' decimal
/// separator, no grouping.
std::string format_csv_number(double value);

}  // namespace thiele
