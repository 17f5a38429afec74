#include "thiele/contract.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace thiele {

PaymentPlan PaymentPlan::level(double premium, double death_sum,
                               double terminal, double horizon) {
    PaymentPlan plan;
    plan.premium_intensity = [premium](double) { return premium; };
    plan.death_benefit = [death_sum](double) { return death_sum; };
    plan.terminal_benefit = terminal;
    plan.horizon = horizon;
    plan.validate();
    return plan;
}

PaymentPlan PaymentPlan::without_premiums() const {
    PaymentPlan plan = *this;
    plan.premium_intensity = [](double) { return 0.0; };
    return plan;
}

void PaymentPlan::validate() const {
    if (!(horizon > 0.0)) {
        throw std::invalid_argument("PaymentPlan: horizon must be positive");
    }
    if (!premium_intensity || !death_benefit) {
        throw std::invalid_argument("PaymentPlan: payment functions must be set");
    }
    for (double t : {0.0, 0.5 * horizon, horizon}) {
        if (!std::isfinite(premium_intensity(t)) || !std::isfinite(death_benefit(t))) {
            throw std::invalid_argument(
                "PaymentPlan: payments must be finite on [0, horizon]");
        }
    }
    if (!std::isfinite(terminal_benefit)) {
        throw std::invalid_argument("PaymentPlan: terminal benefit must be finite");
    }
}

RateCurve::RateCurve(std::vector<double> breakpoints, std::vector<double> rates)
    : breakpoints_(std::move(breakpoints)), rates_(std::move(rates)) {
    if (breakpoints_.empty() || breakpoints_.front() != 0.0) {
        throw std::invalid_argument("RateCurve: first breakpoint must be 0");
    }
    if (rates_.size() != breakpoints_.size()) {
        throw std::invalid_argument("RateCurve: one rate per segment required");
    }
    for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
        if (!(breakpoints_[i] > breakpoints_[i - 1])) {
            throw std::invalid_argument("RateCurve: breakpoints must be strictly ascending");
        }
    }
    for (double r : rates_) {
        if (!std::isfinite(r)) {
            throw std::invalid_argument("RateCurve: rates must be finite");
        }
    }
}

RateCurve RateCurve::flat(double rate) { return RateCurve({0.0}, {rate}); }

double RateCurve::operator()(double t) const {
    if (!(t >= 0.0)) {
        throw std::domain_error("RateCurve: time before start of curve");
    }
    // Right-open segments: segment k covers [bp_k, bp_{k+1}).
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
    return rates_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
}

double RateCurve::integral(double a, double b) const {
    if (!(a >= 0.0) || !(b >= 0.0)) {
        throw std::domain_error("RateCurve: integral bounds must be non-negative");
    }
    if (a > b) {
        throw std::domain_error("RateCurve: reversed integration interval");
    }
    double total = 0.0;
    for (std::size_t k = 0; k < breakpoints_.size(); ++k) {
        const double lo = std::max(a, breakpoints_[k]);
        const double hi = (k + 1 < breakpoints_.size())
                              ? std::min(b, breakpoints_[k + 1])
                              : b;
        if (hi > lo) {
            total += rates_[k] * (hi - lo);
        }
    }
    return total;
}

MortalityCurve::MortalityCurve(double base, double log_scale, double log_slope,
                               double age_offset)
    : base_(base), log_scale_(log_scale), log_slope_(log_slope),
      age_offset_(age_offset) {
    if (!std::isfinite(base) || !std::isfinite(log_scale) ||
        !std::isfinite(log_slope) || !std::isfinite(age_offset)) {
        throw std::invalid_argument("MortalityCurve: parameters must be finite");
    }
}

MortalityCurve MortalityCurve::zero() {
    return MortalityCurve(0.0, -1000.0, 0.0, 0.0);
}

MortalityCurve g82_female() {
    return MortalityCurve(0.0005, 5.728 - 10.0, 0.038, 35.0);
}

const char* to_string(IntensityFamily family) {
    switch (family) {
        case IntensityFamily::Constant: return "constant";
        case IntensityFamily::Exponential: return "exponential";
        case IntensityFamily::Indicator: return "indicator";
        case IntensityFamily::Zero: return "zero";
    }
    return "unknown";
}

IntensityModel::IntensityModel(IntensityFamily family, double psi, double theta,
                               double level)
    : family_(family), psi_(psi), theta_(theta), level_(level) {}

IntensityModel IntensityModel::exponential(double psi, double theta) {
    if (!(psi >= 0.0) || !(theta >= 0.0)) {
        throw std::invalid_argument(
            "IntensityModel: exponential family needs psi >= 0 and theta >= 0");
    }
    return IntensityModel(IntensityFamily::Exponential, psi, theta, 0.0);
}

IntensityModel IntensityModel::indicator(double theta) {
    if (!(theta >= 0.0)) {
        throw std::invalid_argument("IntensityModel: indicator level must be >= 0");
    }
    return IntensityModel(IntensityFamily::Indicator, 0.0, theta, 0.0);
}

IntensityModel IntensityModel::constant(double level) {
    if (!(level >= 0.0)) {
        throw std::invalid_argument("IntensityModel: constant level must be >= 0");
    }
    return IntensityModel(IntensityFamily::Constant, 0.0, 0.0, level);
}

IntensityModel IntensityModel::zero() {
    return IntensityModel(IntensityFamily::Zero, 0.0, 0.0, 0.0);
}

double IntensityModel::operator()(double /*t*/, double gain) const {
    switch (family_) {
        case IntensityFamily::Zero:
            return 0.0;
        case IntensityFamily::Constant:
            return level_;
        case IntensityFamily::Indicator:
            // Strictly positive gain switches the intensity on; at gain == 0
            // the risk term vanishes either way.
            return gain > 0.0 ? theta_ : 0.0;
        case IntensityFamily::Exponential: {
            const double exponent = theta_ * gain;
            if (exponent > 700.0) {
                return intensity_cap;  // exp would overflow; cap binds
            }
            return std::min(psi_ * std::exp(exponent), intensity_cap);
        }
    }
    return 0.0;
}

bool IntensityModel::gain_dependent() const {
    return family_ == IntensityFamily::Exponential ||
           family_ == IntensityFamily::Indicator;
}

double ReserveGrid::value_at(double t) const {
    if (values.empty()) {
        throw std::domain_error("ReserveGrid: empty grid");
    }
    if (values.size() == 1) {
        if (std::fabs(t - t0) > 1e-9) {
            throw std::domain_error("ReserveGrid: time outside grid");
        }
        return values.front();
    }
    const double last = horizon();
    const double slack = 1e-9 * std::max(1.0, std::fabs(last));
    if (t < t0 - slack || t > last + slack) {
        throw std::domain_error("ReserveGrid: time outside grid");
    }
    const double x = std::clamp((t - t0) / step, 0.0, double(values.size() - 1));
    const std::size_t i = std::min(static_cast<std::size_t>(x), values.size() - 2);
    const double w = x - static_cast<double>(i);
    return values[i] + w * (values[i + 1] - values[i]);
}

std::size_t grid_step_count(double t0, double horizon, double step) {
    if (!(step > 0.0)) {
        throw ConfigError("grid: step must be positive");
    }
    if (horizon < t0) {
        throw ConfigError("grid: horizon before start time");
    }
    const double ratio = (horizon - t0) / step;
    const double rounded = std::round(ratio);
    if (std::fabs(ratio - rounded) > 1e-9 * std::max(1.0, ratio)) {
        throw ConfigError("grid: (horizon - t0)/step is not an integer");
    }
    return static_cast<std::size_t>(rounded);
}

bool grids_aligned(const ReserveGrid& a, const ReserveGrid& b) {
    if (a.size() != b.size() || a.size() == 0) {
        return false;
    }
    const double tol = 1e-9 * std::max(1.0, std::fabs(a.step));
    return std::fabs(a.t0 - b.t0) <= 1e-9 * std::max(1.0, std::fabs(a.t0)) &&
           std::fabs(a.step - b.step) <= tol;
}

void FreePolicyPlan::validate() const {
    base_plan.validate();
    if (!scaling) {
        throw std::invalid_argument("FreePolicyPlan: scaling function must be set");
    }
    for (double u : {0.0, 0.5 * base_plan.horizon, base_plan.horizon}) {
        const double f = scaling(u);
        if (!(f > 0.0) || !(f <= 1.0)) {
            throw std::invalid_argument("FreePolicyPlan: scaling must lie in (0, 1]");
        }
    }
}

}  // namespace thiele
