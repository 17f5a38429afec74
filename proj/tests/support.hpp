#pragma once

// Shared fixtures: the contract and bases every suite runs against
// (30-year endowment, technical rate 0.05, G82 mortality, four market
// rate situations, surrender models a-e).

#include <string>
#include <vector>

#include "thiele/contract.hpp"

namespace fixtures {

inline constexpr double default_step = 1.0 / 1200.0;
inline constexpr double pension_sum = 2000000.0;

inline thiele::PaymentPlan example_plan() {
    return thiele::PaymentPlan::level(7000.0, 1000000.0, pension_sum, 30.0);
}

inline thiele::RateCurve technical_rate() { return thiele::RateCurve::flat(0.05); }

inline thiele::RateCurve market_rate_example1() {
    return thiele::RateCurve::flat(0.12);
}

inline thiele::RateCurve market_rate_example2() {
    return thiele::RateCurve::flat(0.02);
}

inline thiele::RateCurve market_rate_example3() {
    return thiele::RateCurve({0.0, 20.0}, {0.10, 0.04});
}

inline thiele::RateCurve market_rate_example4() {
    return thiele::RateCurve({0.0, 20.0}, {0.01, 0.065});
}

struct ExampleBasis {
    std::string name;
    thiele::RateCurve market;
};

inline std::vector<ExampleBasis> all_bases() {
    return {{"example1", market_rate_example1()},
            {"example2", market_rate_example2()},
            {"example3", market_rate_example3()},
            {"example4", market_rate_example4()}};
}

inline thiele::IntensityModel model_a() {
    return thiele::IntensityModel::exponential(0.05, 3e-06);
}

inline thiele::IntensityModel model_b() {
    return thiele::IntensityModel::indicator(0.05);
}

inline thiele::IntensityModel model_c() {
    return thiele::IntensityModel::constant(0.05);
}

inline thiele::IntensityModel model_d() { return thiele::IntensityModel::zero(); }

inline thiele::IntensityModel model_e() {
    return thiele::IntensityModel::indicator(5.0);
}

struct NamedModel {
    std::string name;
    thiele::IntensityModel model;
    bool indicator_family;
};

inline std::vector<NamedModel> all_models() {
    return {{"a", model_a(), false},
            {"b", model_b(), true},
            {"c", model_c(), false},
            {"d", model_d(), false},
            {"e", model_e(), true}};
}

}  // namespace fixtures
