#include "thiele/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "thiele/behaviour.hpp"
#include "thiele/reserves.hpp"
#include "thiele/worst_case.hpp"

namespace thiele {

namespace {

constexpr std::array<double, 3> probe_gains{1e3, 1e4, 1e5};

double envelope_at(const IntensityModel& model, double gain) {
    // All families are non-decreasing in the gain, so both running
    // envelopes coincide with the family evaluated at the probe gain.
    return model(0.0, gain);
}

}  // namespace

SweepFamily SweepFamily::indicator() {
    SweepFamily f;
    f.kind = IntensityFamily::Indicator;
    return f;
}

SweepFamily SweepFamily::exponential(double psi) {
    SweepFamily f;
    f.kind = IntensityFamily::Exponential;
    f.psi = psi;
    return f;
}

SweepFamily SweepFamily::exponential_scaled(
    std::function<double(double)> psi_of_theta) {
    SweepFamily f;
    f.kind = IntensityFamily::Exponential;
    f.psi_scaling = std::move(psi_of_theta);
    return f;
}

IntensityModel SweepFamily::model_for(double theta) const {
    if (kind == IntensityFamily::Indicator) {
        return IntensityModel::indicator(theta);
    }
    if (kind == IntensityFamily::Exponential) {
        const double p = psi_scaling ? psi_scaling(theta) : psi;
        return IntensityModel::exponential(p, theta);
    }
    throw ConfigError("SweepFamily: only indicator and exponential can be swept");
}

ConditionReport condition_check(const SweepFamily& family,
                                const std::vector<double>& thetas) {
    ConditionReport report;
    report.probes.reserve(thetas.size());
    for (double theta : thetas) {
        const IntensityModel model = family.model_for(theta);
        ConditionProbe probe;
        probe.theta = theta;
        for (std::size_t k = 0; k < probe_gains.size(); ++k) {
            probe.hbar_neg[k] = envelope_at(model, -probe_gains[k]);
            probe.hunder_pos[k] = envelope_at(model, probe_gains[k]);
        }
        report.probes.push_back(probe);
    }

    report.vanishes_at_negative_gains = !report.probes.empty();
    report.diverges_at_positive_gains = !report.probes.empty();
    for (std::size_t k = 0; k < probe_gains.size(); ++k) {
        bool monotone_down = true;
        bool monotone_up = true;
        for (std::size_t p = 1; p < report.probes.size(); ++p) {
            monotone_down &=
                report.probes[p].hbar_neg[k] <= report.probes[p - 1].hbar_neg[k];
            monotone_up &=
                report.probes[p].hunder_pos[k] >= report.probes[p - 1].hunder_pos[k];
        }
        const double hbar_first = report.probes.front().hbar_neg[k];
        const double hbar_last = report.probes.back().hbar_neg[k];
        const double hund_first = report.probes.front().hunder_pos[k];
        const double hund_last = report.probes.back().hunder_pos[k];
        report.vanishes_at_negative_gains &=
            monotone_down && (hbar_last == 0.0 || hbar_last < hbar_first);
        // A sweep that saturates the intensity cap counts as diverging.
        report.diverges_at_positive_gains &=
            monotone_up && (hund_last > hund_first ||
                            hund_last >= IntensityModel::intensity_cap);
    }
    return report;
}

std::vector<SweepRow> theta_sweep(const PaymentPlan& plan,
                                  const RateCurve& market_rate,
                                  const MortalityCurve& mortality,
                                  const ReserveGrid& surrender_grid,
                                  const SweepFamily& family,
                                  const std::vector<double>& thetas, double step) {
    if (thetas.size() < 3) {
        throw ConfigError("theta_sweep: need at least 3 thetas");
    }
    if (!std::is_sorted(thetas.begin(), thetas.end()) ||
        std::adjacent_find(thetas.begin(), thetas.end()) != thetas.end()) {
        throw ConfigError("theta_sweep: thetas must be strictly ascending");
    }

    const ConditionReport conditions = condition_check(family, thetas);
    if (!conditions.vanishes_at_negative_gains) {
        throw ConfigError(
            "theta_sweep: sweep violates the vanishing-intensity condition at "
            "negative gains (intensity must tend to 0 where surrender loses money)");
    }
    if (!conditions.diverges_at_positive_gains) {
        throw ConfigError(
            "theta_sweep: sweep violates the diverging-intensity condition at "
            "positive gains (intensity must grow without bound where surrender "
            "gains money)");
    }

    const ReserveGrid baseline =
        reserve_no_surrender(plan, market_rate, mortality, step);
    const WorstCaseSolution worst = worst_case_reserve(
        plan, market_rate, mortality, surrender_grid, baseline, step);

    std::vector<SweepRow> rows;
    rows.reserve(thetas.size());
    for (double theta : thetas) {
        const BehaviouralSolution solution = solve_reserve_dependent(
            plan, market_rate, mortality, surrender_grid, family.model_for(theta),
            step);
        SweepRow row;
        row.theta = theta;
        row.error_at_0 =
            worst.worst_reserve.values.front() - solution.reserve.values.front();
        // Terminal node excluded: W and V_theta coincide there by construction.
        double sup = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i + 1 < worst.worst_reserve.size(); ++i) {
            sup = std::max(sup, worst.worst_reserve.values[i] -
                                    solution.reserve.values[i]);
        }
        row.sup_error = sup;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace thiele
