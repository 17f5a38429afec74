#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "thiele/errors.hpp"

namespace thiele {

/// A deterministic function of time (years).
using TimeFunction = std::function<double(double)>;

/// Payment stream of a single endowment-style contract: a continuous
/// premium while active, a death sum on death, and a terminal benefit
/// at the horizon.
struct PaymentPlan {
    TimeFunction premium_intensity;  // money per year while active
    TimeFunction death_benefit;      // money, paid on death at time t
    double terminal_benefit = 0.0;   // money, paid if active at the horizon
    double horizon = 0.0;            // years

    /// Constant premium / death sum, the usual desk case.
    static PaymentPlan level(double premium, double death_sum,
                             double terminal, double horizon);

    /// Same payments with the premium removed (free-policy state).
    PaymentPlan without_premiums() const;

    void validate() const;
};

/// Piecewise-constant interest intensity. Segments are right-open; the
/// last segment extends indefinitely, so the curve covers any horizon.
class RateCurve {
public:
    RateCurve(std::vector<double> breakpoints, std::vector<double> rates);

    static RateCurve flat(double rate);

    /// Rate of the segment containing t. t must be >= 0.
    double operator()(double t) const;

    /// Exact integral of the rate over [a, b] (segment sums, no quadrature).
    double integral(double a, double b) const;

    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<double>& rates() const { return rates_; }

private:
    std::vector<double> breakpoints_;  // ascending, first is 0
    std::vector<double> rates_;        // one per segment
};

/// Exact integral of a piecewise-constant rate curve over [a, b].
inline double integrate_rate(const RateCurve& curve, double a, double b) {
    return curve.integral(a, b);
}

/// Makeham-form death intensity with an age offset:
///   mu(t) = base + 10^(log_scale + log_slope * (t + age_offset)).
class MortalityCurve {
public:
    MortalityCurve(double base, double log_scale, double log_slope,
                   double age_offset);

    /// Identically-zero intensity (the log term underflows to 0).
    static MortalityCurve zero();

    double operator()(double t) const {
        return base_ + std::pow(10.0, log_scale_ + log_slope_ * (t + age_offset_));
    }

    double base() const { return base_; }
    double log_scale() const { return log_scale_; }
    double log_slope() const { return log_slope_; }
    double age_offset() const { return age_offset_; }

private:
    double base_;
    double log_scale_;
    double log_slope_;
    double age_offset_;
};

/// Danish G82 female table, aged 35 at time 0.
MortalityCurve g82_female();

enum class IntensityFamily { Constant, Exponential, Indicator, Zero };

const char* to_string(IntensityFamily family);

/// Surrender-intensity family h(t, gain). All families are non-negative
/// and non-decreasing in the gain.
class IntensityModel {
public:
    static IntensityModel exponential(double psi, double theta);
    static IntensityModel indicator(double theta);
    static IntensityModel constant(double level);
    static IntensityModel zero();

    /// h(t, gain). For the exponential family the result is capped at
    /// intensity_cap so the ODE right-hand side stays Lipschitz during
    /// theta sweeps; the cap never binds at the contract scales the
    /// families are meant for.
    double operator()(double t, double gain) const;

    IntensityFamily family() const { return family_; }
    double psi() const { return psi_; }
    double theta() const { return theta_; }
    double level() const { return level_; }

    /// True when h actually reads the gain (Exponential, Indicator).
    bool gain_dependent() const;

    static constexpr double intensity_cap = 1e6;  // per year

private:
    IntensityModel(IntensityFamily family, double psi, double theta,
                   double level);

    IntensityFamily family_;
    double psi_ = 0.0;
    double theta_ = 0.0;
    double level_ = 0.0;
};

/// Uniform time grid with one value per node; node i sits at t0 + i*step
/// and the last node is the horizon.
struct ReserveGrid {
    double t0 = 0.0;
    double step = 0.0;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    double time(std::size_t i) const { return t0 + static_cast<double>(i) * step; }
    double horizon() const { return time(values.size() - 1); }
    double terminal() const { return values.back(); }

    /// Linear interpolation; t is clamped to the grid within a whisker
    /// of roundoff, anything further is a domain error.
    double value_at(double t) const;
};

/// Number of steps of a uniform grid spanning [t0, horizon]; throws
/// ConfigError unless the span is an integer multiple of step (to 1e-9).
std::size_t grid_step_count(double t0, double horizon, double step);

/// True when two grids share t0, step and node count (exact enough to
/// index each other).
bool grids_aligned(const ReserveGrid& a, const ReserveGrid& b);

/// Free-policy extension of a contract: conversion scales all remaining
/// payments by f(u), where u is the conversion time.
struct FreePolicyPlan {
    PaymentPlan base_plan;
    TimeFunction scaling;  // f(u) in (0, 1]
    IntensityModel intensity_as = IntensityModel::zero();  // active -> surrender
    IntensityModel intensity_af = IntensityModel::zero();  // active -> free policy
    IntensityModel intensity_fs = IntensityModel::zero();  // free policy -> surrender

    void validate() const;
};

}  // namespace thiele
