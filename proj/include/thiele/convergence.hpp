#pragma once

#include <array>
#include <functional>
#include <vector>

#include "thiele/contract.hpp"

namespace thiele {

/// Family swept over the rationality parameter theta. For the
/// exponential family psi is held fixed unless a psi_scaling is given
/// (psi_theta = psi_scaling(theta)).
struct SweepFamily {
    IntensityFamily kind = IntensityFamily::Indicator;
    double psi = 0.0;
    std::function<double(double)> psi_scaling;

    static SweepFamily indicator();
    static SweepFamily exponential(double psi);
    static SweepFamily exponential_scaled(std::function<double(double)> psi_of_theta);

    IntensityModel model_for(double theta) const;
};

struct SweepRow {
    double theta = 0.0;
    double sup_error = 0.0;   // max over grid t in [0, n - step] of W - V_theta
    double error_at_0 = 0.0;  // signed W(0) - V_theta(0)
};

/// Solves V_theta for each theta and measures the distance to the
/// worst-case reserve. Thetas must be ascending with at least 3 entries,
/// and the family must satisfy the convergence conditions along the
/// sweep (vanishing intensity at negative gains, diverging at positive
/// gains); a violating sweep is a ConfigError naming the condition.
std::vector<SweepRow> theta_sweep(const PaymentPlan& plan,
                                  const RateCurve& market_rate,
                                  const MortalityCurve& mortality,
                                  const ReserveGrid& surrender_grid,
                                  const SweepFamily& family,
                                  const std::vector<double>& thetas, double step);

/// Numerical probe of the convergence hypotheses: the running envelopes
///   hbar(x)  = sup_{y <= x} h(y)   at x = -eps
///   hunder(x) = inf_{y >= x} h(y)  at x = +eps
/// for eps in {1e3, 1e4, 1e5} money units, evaluated per theta.
struct ConditionProbe {
    double theta = 0.0;
    std::array<double, 3> hbar_neg{};    // at gains -1e3, -1e4, -1e5
    std::array<double, 3> hunder_pos{};  // at gains +1e3, +1e4, +1e5
};

struct ConditionReport {
    std::vector<ConditionProbe> probes;
    bool vanishes_at_negative_gains = false;  // hbar non-increasing to 0
    bool diverges_at_positive_gains = false;  // hunder increasing without bound
};

ConditionReport condition_check(const SweepFamily& family,
                                const std::vector<double>& thetas);

}  // namespace thiele
