#pragma once

#include "thiele/contract.hpp"

namespace thiele {

/// Solution of the reserve-dependent surrender equation: the reserve U
/// and the intensity it induces, nu(t) = h(t, G(t) - U(t)).
struct BehaviouralSolution {
    ReserveGrid reserve;             // U
    ReserveGrid realized_intensity;  // nu at the grid nodes
    IntensityModel model = IntensityModel::zero();
};

/// Solves U'(t) = r U + pi - mu (b_ad - U) - h(t, U)(G - U) backward with
/// U(n-) equal to the terminal benefit. The nonlinearity is pointwise in
/// U, so the ODE is integrated directly; no outer iteration.
BehaviouralSolution solve_reserve_dependent(const PaymentPlan& plan,
                                            const RateCurve& market_rate,
                                            const MortalityCurve& mortality,
                                            const ReserveGrid& surrender_grid,
                                            const IntensityModel& model,
                                            double step);

/// Fixed-point consistency: re-solves the linear equation with the
/// realized intensity frozen and returns the sup-norm difference from U.
/// Small values confirm that U is the reserve of the intensity it induces.
double consistency_check(const BehaviouralSolution& solution,
                         const PaymentPlan& plan, const RateCurve& market_rate,
                         const MortalityCurve& mortality,
                         const ReserveGrid& surrender_grid, double step);

}  // namespace thiele
