#include "thiele/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "thiele/behaviour.hpp"
#include "thiele/convergence.hpp"
#include "thiele/reserves.hpp"
#include "thiele/simulate.hpp"
#include "thiele/worst_case.hpp"

namespace thiele {

namespace {

using nlohmann::json;

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0) {
            out += sep;
        }
        out += parts[i];
    }
    return out;
}

bool multiple_of(double value, double step) {
    const double ratio = value / step;
    return std::fabs(ratio - std::round(ratio)) <= 1e-6 * std::max(1.0, ratio);
}

json rate_to_json(const RateCurveSpec& r) {
    return json{{"breakpoints", r.breakpoints}, {"rates", r.rates}};
}

RateCurveSpec rate_from_json(const json& j) {
    RateCurveSpec r;
    r.breakpoints = j.at("breakpoints").get<std::vector<double>>();
    r.rates = j.at("rates").get<std::vector<double>>();
    return r;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw ConfigError("scenario: cannot open output file " + tmp.string());
        }
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

/// Column header for a model reserve. Gain-dependent families carry a
/// "_model" suffix to mark that the column depends on the behavioural
/// parameters, not just on a fixed hazard.
std::string model_column(const ScenarioSpec& spec, const ModelSpec& m) {
    const IntensityModel model = spec.make_model(m);
    return model.gain_dependent() ? "V_" + m.name + "_model" : "V_" + m.name;
}

}  // namespace

SpecValidationError::SpecValidationError(std::vector<std::string> list)
    : ConfigError("scenario spec invalid: " + join(list, "; ")),
      violations(std::move(list)) {}

std::vector<std::string> ScenarioSpec::validate() const {
    std::vector<std::string> bad;
    if (name.empty()) {
        bad.push_back("name: must not be empty");
    }
    if (!(plan.horizon > 0.0)) {
        bad.push_back("plan.horizon: must be positive");
    }
    if (!(step > 0.0)) {
        bad.push_back("step: must be positive");
    } else if (plan.horizon > 0.0 && !multiple_of(plan.horizon, step)) {
        bad.push_back("step: horizon is not an integer number of steps");
    }
    for (const auto& [label, curve] :
         {std::pair{"technical_rate", &technical_rate},
          std::pair{"market_rate", &market_rate}}) {
        const std::string prefix(label);
        if (curve->breakpoints.empty() || curve->breakpoints.front() != 0.0) {
            bad.push_back(prefix + ".breakpoints: first must be 0");
        }
        if (curve->rates.size() != curve->breakpoints.size()) {
            bad.push_back(prefix + ".rates: one rate per segment required");
        }
        for (std::size_t i = 1; i < curve->breakpoints.size(); ++i) {
            if (!(curve->breakpoints[i] > curve->breakpoints[i - 1])) {
                bad.push_back(prefix + ".breakpoints: must be strictly ascending");
                break;
            }
        }
        if (step > 0.0) {
            for (double bp : curve->breakpoints) {
                if (!multiple_of(bp, step)) {
                    bad.push_back(prefix + ".breakpoints: " +
                                  format_csv_number(bp) +
                                  " is not an integer multiple of step");
                }
            }
        }
    }
    if (!mortality.is_preset) {
        if (!std::isfinite(mortality.base) || !std::isfinite(mortality.log_scale) ||
            !std::isfinite(mortality.log_slope) ||
            !std::isfinite(mortality.age_offset)) {
            bad.push_back("mortality: parameters must be finite");
        }
    } else if (mortality.preset != "g82_female") {
        bad.push_back("mortality.preset: unknown preset '" + mortality.preset + "'");
    }
    for (const ModelSpec& m : models) {
        const std::string prefix = "models." + (m.name.empty() ? "?" : m.name);
        if (m.name.empty()) {
            bad.push_back(prefix + ": name must not be empty");
        }
        if (m.family == "exponential") {
            if (!(m.psi >= 0.0) || !(m.theta >= 0.0)) {
                bad.push_back(prefix + ": exponential needs psi >= 0 and theta >= 0");
            }
        } else if (m.family == "indicator") {
            if (!(m.theta >= 0.0)) {
                bad.push_back(prefix + ": indicator needs theta >= 0");
            }
        } else if (m.family == "constant") {
            if (!(m.level >= 0.0)) {
                bad.push_back(prefix + ": constant needs level >= 0");
            }
        } else if (m.family != "zero") {
            bad.push_back(prefix + ": unknown family '" + m.family + "'");
        }
    }
    if (!outputs.grids && !outputs.theta_sweep && !outputs.worst_case &&
        !outputs.monte_carlo) {
        bad.push_back("outputs: at least one output must be enabled");
    }
    if (outputs.theta_sweep) {
        if (sweep.family != "indicator" && sweep.family != "exponential") {
            bad.push_back("sweep.family: must be indicator or exponential");
        }
        if (sweep.thetas.size() < 3) {
            bad.push_back("sweep.thetas: need at least 3 ascending values");
        }
    }
    if (outputs.monte_carlo && mc.paths < 1) {
        bad.push_back("mc.paths: must be at least 1");
    }
    return bad;
}

PaymentPlan ScenarioSpec::make_plan() const {
    return PaymentPlan::level(plan.premium_intensity, plan.death_benefit,
                              plan.terminal_benefit, plan.horizon);
}

RateCurve ScenarioSpec::make_technical_rate() const {
    return RateCurve(technical_rate.breakpoints, technical_rate.rates);
}

RateCurve ScenarioSpec::make_market_rate() const {
    return RateCurve(market_rate.breakpoints, market_rate.rates);
}

MortalityCurve ScenarioSpec::make_mortality() const {
    if (mortality.is_preset) {
        if (mortality.preset == "g82_female") {
            return g82_female();
        }
        throw ConfigError("scenario: unknown mortality preset " + mortality.preset);
    }
    return MortalityCurve(mortality.base, mortality.log_scale, mortality.log_slope,
                          mortality.age_offset);
}

IntensityModel ScenarioSpec::make_model(const ModelSpec& model) const {
    if (model.family == "zero") {
        return IntensityModel::zero();
    }
    if (model.family == "constant") {
        return IntensityModel::constant(model.level);
    }
    if (model.family == "exponential") {
        return IntensityModel::exponential(model.psi, model.theta);
    }
    if (model.family == "indicator") {
        return IntensityModel::indicator(model.theta);
    }
    throw ConfigError("scenario: unknown intensity family " + model.family);
}

std::string ScenarioSpec::to_json_string() const {
    json j;
    j["name"] = name;
    j["plan"] = {{"premium_intensity", plan.premium_intensity},
                 {"death_benefit", plan.death_benefit},
                 {"terminal_benefit", plan.terminal_benefit},
                 {"horizon", plan.horizon}};
    j["technical_rate"] = rate_to_json(technical_rate);
    j["market_rate"] = rate_to_json(market_rate);
    if (mortality.is_preset) {
        j["mortality"] = {{"preset", mortality.preset}};
    } else {
        j["mortality"] = {{"base", mortality.base},
                          {"log_scale", mortality.log_scale},
                          {"log_slope", mortality.log_slope},
                          {"age_offset", mortality.age_offset}};
    }
    j["models"] = json::array();
    for (const ModelSpec& m : models) {
        json jm{{"name", m.name}, {"family", m.family}};
        if (m.family == "exponential") {
            jm["psi"] = m.psi;
            jm["theta"] = m.theta;
        } else if (m.family == "indicator") {
            jm["theta"] = m.theta;
        } else if (m.family == "constant") {
            jm["level"] = m.level;
        }
        j["models"].push_back(jm);
    }
    j["outputs"] = {{"grids", outputs.grids},
                    {"theta_sweep", outputs.theta_sweep},
                    {"worst_case", outputs.worst_case},
                    {"monte_carlo", outputs.monte_carlo}};
    j["step"] = step;
    j["sweep"] = {{"family", sweep.family}, {"psi", sweep.psi},
                  {"thetas", sweep.thetas}};
    j["mc"] = {{"paths", mc.paths}, {"seed", mc.seed},
               {"time_step", mc.time_step}};
    return j.dump(2) + "\n";
}

ScenarioSpec ScenarioSpec::from_json_string(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& err) {
        throw ConfigError(std::string("scenario: invalid JSON: ") + err.what());
    }
    ScenarioSpec spec;
    try {
        spec.name = j.at("name").get<std::string>();
        const json& p = j.at("plan");
        spec.plan.premium_intensity = p.at("premium_intensity").get<double>();
        spec.plan.death_benefit = p.at("death_benefit").get<double>();
        spec.plan.terminal_benefit = p.at("terminal_benefit").get<double>();
        spec.plan.horizon = p.at("horizon").get<double>();
        spec.technical_rate = rate_from_json(j.at("technical_rate"));
        spec.market_rate = rate_from_json(j.at("market_rate"));
        const json& mort = j.at("mortality");
        if (mort.contains("preset")) {
            spec.mortality.is_preset = true;
            spec.mortality.preset = mort.at("preset").get<std::string>();
        } else {
            spec.mortality.is_preset = false;
            spec.mortality.base = mort.at("base").get<double>();
            spec.mortality.log_scale = mort.at("log_scale").get<double>();
            spec.mortality.log_slope = mort.at("log_slope").get<double>();
            spec.mortality.age_offset = mort.at("age_offset").get<double>();
        }
        spec.models.clear();
        for (const json& jm : j.at("models")) {
            ModelSpec m;
            m.name = jm.at("name").get<std::string>();
            m.family = jm.at("family").get<std::string>();
            m.psi = jm.value("psi", 0.0);
            m.theta = jm.value("theta", 0.0);
            m.level = jm.value("level", 0.0);
            spec.models.push_back(std::move(m));
        }
        const json& out = j.at("outputs");
        spec.outputs.grids = out.value("grids", false);
        spec.outputs.theta_sweep = out.value("theta_sweep", false);
        spec.outputs.worst_case = out.value("worst_case", false);
        spec.outputs.monte_carlo = out.value("monte_carlo", false);
        spec.step = j.value("step", 1.0 / 1200.0);
        if (j.contains("sweep")) {
            const json& s = j.at("sweep");
            spec.sweep.family = s.value("family", std::string("indicator"));
            spec.sweep.psi = s.value("psi", 0.05);
            spec.sweep.thetas =
                s.value("thetas", std::vector<double>{0.5, 1.0, 2.0, 5.0, 10.0});
        }
        if (j.contains("mc")) {
            const json& m = j.at("mc");
            spec.mc.paths = m.value("paths", std::uint64_t{100000});
            spec.mc.seed = m.value("seed", std::uint64_t{20180114});
            spec.mc.time_step = m.value("time_step", 1.0 / 12.0);
        }
    } catch (const json::exception& err) {
        throw ConfigError(std::string("scenario: malformed spec: ") + err.what());
    }
    return spec;
}

ScenarioSpec ScenarioSpec::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("scenario: cannot read spec file " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return from_json_string(buffer.str());
}

std::string format_csv_number(double value) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.10g", value);
    return buf;
}

RunResult run(const ScenarioSpec& spec, const std::string& out_dir) {
    auto violations = spec.validate();
    if (!violations.empty()) {
        throw SpecValidationError(std::move(violations));
    }
    std::filesystem::create_directories(out_dir);

    const PaymentPlan plan = spec.make_plan();
    const RateCurve technical = spec.make_technical_rate();
    const RateCurve market = spec.make_market_rate();
    const MortalityCurve mortality = spec.make_mortality();
    const double step = spec.step;

    const ReserveGrid surrender = surrender_value(plan, technical, mortality, step);

    std::vector<BehaviouralSolution> solutions;
    if (spec.outputs.grids || spec.outputs.monte_carlo) {
        solutions.reserve(spec.models.size());
        for (const ModelSpec& m : spec.models) {
            solutions.push_back(solve_reserve_dependent(
                plan, market, mortality, surrender, spec.make_model(m), step));
        }
    }

    RunResult result;
    const std::filesystem::path dir(out_dir);

    if (spec.outputs.grids || spec.outputs.worst_case) {
        WorstCaseSolution worst;
        if (spec.outputs.worst_case) {
            const ReserveGrid baseline =
                reserve_no_surrender(plan, market, mortality, step);
            worst = worst_case_reserve(plan, market, mortality, surrender,
                                       baseline, step);
        }
        std::string csv = "t,G";
        if (spec.outputs.grids) {
            for (const ModelSpec& m : spec.models) {
                csv += "," + model_column(spec, m);
            }
        }
        if (spec.outputs.worst_case) {
            csv += ",W,u_star";
        }
        csv += "\n";
        for (std::size_t i = 0; i < surrender.size(); ++i) {
            csv += format_csv_number(surrender.time(i));
            csv += "," + format_csv_number(surrender.values[i]);
            if (spec.outputs.grids) {
                for (const auto& solution : solutions) {
                    csv += "," + format_csv_number(solution.reserve.values[i]);
                }
            }
            if (spec.outputs.worst_case) {
                csv += "," + format_csv_number(worst.worst_reserve.values[i]);
                csv += "," + format_csv_number(worst.latest_optimal[i]);
            }
            csv += "\n";
        }
        const auto path = dir / (spec.name + "_reserves.csv");
        write_atomic(path, csv);
        result.files_written.push_back(path.string());
    }

    if (spec.outputs.theta_sweep) {
        const SweepFamily family = (spec.sweep.family == "indicator")
                                       ? SweepFamily::indicator()
                                       : SweepFamily::exponential(spec.sweep.psi);
        const auto rows = theta_sweep(plan, market, mortality, surrender, family,
                                      spec.sweep.thetas, step);
        std::string csv = "theta,sup_error,error_at_0\n";
        for (const SweepRow& row : rows) {
            csv += format_csv_number(row.theta);
            csv += "," + format_csv_number(row.sup_error);
            csv += "," + format_csv_number(row.error_at_0);
            csv += "\n";
        }
        const auto path = dir / (spec.name + "_sweep.csv");
        write_atomic(path, csv);
        result.files_written.push_back(path.string());
    }

    if (spec.outputs.monte_carlo) {
        SimulationConfig config;
        config.paths = static_cast<std::size_t>(spec.mc.paths);
        config.seed = spec.mc.seed;
        config.time_step = spec.mc.time_step;
        std::string csv = "model,estimate,std_error,ode_value,z_score\n";
        for (std::size_t m = 0; m < spec.models.size(); ++m) {
            const Strategy strategy =
                Strategy::from_intensity(solutions[m].realized_intensity);
            const SimulationResult sim = simulate_reserve(
                plan, market, mortality, surrender, strategy, config);
            const double ode_value = solutions[m].reserve.values.front();
            const double z = sim.standard_error > 0.0
                                 ? (sim.estimate - ode_value) / sim.standard_error
                                 : 0.0;
            csv += spec.models[m].name;
            csv += "," + format_csv_number(sim.estimate);
            csv += "," + format_csv_number(sim.standard_error);
            csv += "," + format_csv_number(ode_value);
            csv += "," + format_csv_number(z);
            csv += "\n";
        }
        const auto path = dir / (spec.name + "_mc.csv");
        write_atomic(path, csv);
        result.files_written.push_back(path.string());
    }

    return result;
}

namespace {

ScenarioSpec base_builtin() {
    ScenarioSpec spec;
    spec.plan = PlanSpec{7000.0, 1000000.0, 2000000.0, 30.0};
    spec.technical_rate = RateCurveSpec{{0.0}, {0.05}};
    spec.mortality.is_preset = true;
    spec.mortality.preset = "g82_female";
    // Column order of the reserves CSV: the deterministic hazards first,
    // then the gain-dependent models.
    spec.models = {ModelSpec{"d", "zero", 0.0, 0.0, 0.0},
                   ModelSpec{"c", "constant", 0.0, 0.0, 0.05},
                   ModelSpec{"a", "exponential", 0.05, 3e-06, 0.0},
                   ModelSpec{"b", "indicator", 0.0, 0.05, 0.0},
                   ModelSpec{"e", "indicator", 0.0, 5.0, 0.0}};
    spec.outputs.grids = true;
    spec.outputs.worst_case = true;
    spec.step = 1.0 / 1200.0;
    return spec;
}

}  // namespace

BuiltinCatalog list_builtins() {
    BuiltinCatalog catalog;
    catalog.examples = {
        {"example1", "constant market rate 0.12 above the technical rate 0.05; "
                     "immediate surrender is optimal"},
        {"example2", "constant market rate 0.02 below the technical rate 0.05; "
                     "surrender is never optimal"},
        {"example3", "market rate 0.10 for t <= 20 switching to 0.04 at t=20; "
                     "crosses the technical rate downward"},
        {"example4", "market rate 0.01 for t <= 20 switching to 0.065 at t=20; "
                     "crosses the technical rate upward"},
    };
    catalog.models = {
        {"model_a", "exponential family, intensity 0.05*exp(0.000003*gain)"},
        {"model_b", "indicator family, intensity 0.05 while the gain is positive"},
        {"model_c", "constant family, intensity 0.05"},
        {"model_d", "zero family, no surrender"},
        {"model_e", "indicator family, intensity 5 while the gain is positive"},
    };
    return catalog;
}

ScenarioSpec builtin_scenario(const std::string& name) {
    ScenarioSpec spec = base_builtin();
    spec.name = name;
    if (name == "example1") {
        spec.market_rate = RateCurveSpec{{0.0}, {0.12}};
    } else if (name == "example2") {
        spec.market_rate = RateCurveSpec{{0.0}, {0.02}};
    } else if (name == "example3") {
        spec.market_rate = RateCurveSpec{{0.0, 20.0}, {0.10, 0.04}};
    } else if (name == "example4") {
        spec.market_rate = RateCurveSpec{{0.0, 20.0}, {0.01, 0.065}};
    } else {
        throw ConfigError("scenario: unknown builtin '" + name +
                          "' (expected example1..example4)");
    }
    return spec;
}

}  // namespace thiele
