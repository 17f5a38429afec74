#include "thiele/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <future>
#include <thread>

namespace thiele {

namespace {

constexpr std::size_t batch_size = 1 << 16;

// splitmix64; used both as the per-batch generator and to spread the
// master seed across batches.
struct SplitMix64 {
    std::uint64_t state;

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    double uniform() {  // in [0, 1)
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }
};

struct Accumulator {
    std::size_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++count;
        const double delta = x - mean;
        mean += delta / static_cast<double>(count);
        m2 += delta * (x - mean);
    }

    void merge(const Accumulator& other) {
        if (other.count == 0) {
            return;
        }
        const double total = static_cast<double>(count + other.count);
        const double delta = other.mean - mean;
        mean += delta * static_cast<double>(other.count) / total;
        m2 += other.m2 + delta * delta * static_cast<double>(count) *
                             static_cast<double>(other.count) / total;
        count += other.count;
    }
};

struct PathModel {
    const PaymentPlan* plan;
    const RateCurve* rate;
    const MortalityCurve* mortality;
    const ReserveGrid* surrender_grid;
    const Strategy* strategy;
    double horizon;
    double block_width;
    std::vector<double> block_majorant;   // sup of mu + nu per block
    std::vector<double> premium_cumulative;  // int_0^t pi e^{-R} at grid nodes

    double discount(double t) const { return std::exp(-rate->integral(0.0, t)); }

    double premium_value(double t) const {
        const double x = std::clamp(
            (t - surrender_grid->t0) / surrender_grid->step, 0.0,
            static_cast<double>(premium_cumulative.size() - 1));
        const std::size_t i = std::min(static_cast<std::size_t>(x),
                                       premium_cumulative.size() - 2);
        const double w = x - static_cast<double>(i);
        return premium_cumulative[i] +
               w * (premium_cumulative[i + 1] - premium_cumulative[i]);
    }

    double nu(double t) const {
        return strategy->is_intensity() ? strategy->intensity().value_at(t) : 0.0;
    }
};

double block_nu_max(const ReserveGrid& nu, double a, double b) {
    // Piecewise-linear nu attains its max at a node or an endpoint.
    double out = std::max(nu.value_at(a), nu.value_at(b));
    const std::size_t first =
        static_cast<std::size_t>(std::max(0.0, std::ceil((a - nu.t0) / nu.step)));
    for (std::size_t i = first; i < nu.size() && nu.time(i) < b; ++i) {
        out = std::max(out, nu.values[i]);
    }
    return out;
}

PathModel build_model(const PaymentPlan& plan, const RateCurve& rate,
                      const MortalityCurve& mortality,
                      const ReserveGrid& surrender_grid,
                      const Strategy& strategy, const SimulationConfig& config) {
    PathModel model;
    model.plan = &plan;
    model.rate = &rate;
    model.mortality = &mortality;
    model.surrender_grid = &surrender_grid;
    model.strategy = &strategy;
    model.horizon = plan.horizon;
    model.block_width = config.time_step;

    const std::size_t n_blocks = static_cast<std::size_t>(
        std::ceil(plan.horizon / config.time_step - 1e-12));
    model.block_majorant.resize(std::max<std::size_t>(n_blocks, 1));
    for (std::size_t k = 0; k < model.block_majorant.size(); ++k) {
        const double a = std::min(plan.horizon, k * config.time_step);
        const double b = std::min(plan.horizon, (k + 1) * config.time_step);
        // mu is monotone for the Makeham form, so the block max sits at an end.
        double majorant = std::max(mortality(a), mortality(b));
        if (strategy.is_intensity()) {
            majorant += block_nu_max(strategy.intensity(), a, b);
        }
        model.block_majorant[k] = majorant * (1.0 + 1e-12);
    }

    // Discounted premium integral, 3-point Gauss-Legendre per grid step
    // (exact rate integrals, smooth integrand between breakpoints).
    const std::size_t n = surrender_grid.size() - 1;
    model.premium_cumulative.resize(n + 1);
    model.premium_cumulative[0] = 0.0;
    const double half = 0.5 * surrender_grid.step;
    const double offset = half * std::sqrt(3.0 / 5.0);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double mid = surrender_grid.time(i) + half;
        double piece = 0.0;
        for (const auto& [w, x] : {std::pair{5.0 / 9.0, mid - offset},
                                   std::pair{8.0 / 9.0, mid},
                                   std::pair{5.0 / 9.0, mid + offset}}) {
            piece += w * plan.premium_intensity(x) * model.discount(x);
        }
        acc += half * piece;
        model.premium_cumulative[i + 1] = acc;
    }
    return model;
}

double simulate_path(const PathModel& model, SplitMix64& rng) {
    const double n = model.horizon;
    const double stop_time =
        model.strategy->is_intensity() ? n + 1.0 : model.strategy->stop_time();
    double t = 0.0;
    std::size_t block = 0;  // advanced explicitly so progress never stalls

    while (t < n && t < stop_time && block < model.block_majorant.size()) {
        const double boundary = static_cast<double>(block + 1) * model.block_width;
        const double block_end = std::min({n, boundary, stop_time});
        const double majorant = model.block_majorant[block];
        if (majorant <= 0.0) {
            t = block_end;
            ++block;
            continue;
        }
        const double wait = -std::log(1.0 - rng.uniform()) / majorant;
        const double candidate = t + wait;
        if (candidate >= block_end) {
            t = block_end;
            ++block;
            continue;
        }
        const double mu = (*model.mortality)(candidate);
        const double nu = model.nu(candidate);
        const double draw = rng.uniform() * majorant;
        if (draw < mu) {
            // death: premiums paid so far, death sum at the event
            return -model.premium_value(candidate) +
                   model.discount(candidate) * model.plan->death_benefit(candidate);
        }
        if (draw < mu + nu) {
            return -model.premium_value(candidate) +
                   model.discount(candidate) *
                       model.surrender_grid->value_at(candidate);
        }
        t = candidate;  // thinned out, same block
    }

    if (stop_time < n) {
        // deterministic surrender while still active
        return -model.premium_value(stop_time) +
               model.discount(stop_time) * model.surrender_grid->value_at(stop_time);
    }
    return -model.premium_value(n) +
           model.discount(n) * model.plan->terminal_benefit;
}

Accumulator run_batch(const PathModel& model, std::uint64_t master_seed,
                      std::size_t batch_index, std::size_t count) {
    SplitMix64 seeder{master_seed};
    seeder.state ^= 0xA3EC647659359ACDULL * (batch_index + 1);
    SplitMix64 rng{seeder.next()};
    Accumulator acc;
    for (std::size_t p = 0; p < count; ++p) {
        acc.add(simulate_path(model, rng));
    }
    return acc;
}

}  // namespace

Strategy Strategy::from_intensity(ReserveGrid nu) {
    for (double v : nu.values) {
        if (!(v >= 0.0)) {
            throw std::domain_error("Strategy: intensity grid must be >= 0");
        }
    }
    Strategy s;
    s.is_intensity_ = true;
    s.intensity_ = std::move(nu);
    return s;
}

Strategy Strategy::stop_at(double time) {
    if (!(time >= 0.0)) {
        throw std::domain_error("Strategy: stop time must be >= 0");
    }
    Strategy s;
    s.is_intensity_ = false;
    s.stop_time_ = time;
    return s;
}

SimulationResult simulate_reserve(const PaymentPlan& plan,
                                  const RateCurve& market_rate,
                                  const MortalityCurve& mortality,
                                  const ReserveGrid& surrender_grid,
                                  const Strategy& strategy,
                                  const SimulationConfig& config) {
    plan.validate();
    if (config.paths < 1) {
        throw ConfigError("simulate_reserve: need at least one path");
    }
    if (!(config.time_step > 0.0)) {
        throw ConfigError("simulate_reserve: time_step must be positive");
    }
    if (strategy.is_intensity() &&
        !grids_aligned(strategy.intensity(), surrender_grid)) {
        throw ConfigError(
            "simulate_reserve: intensity grid and surrender grid are misaligned");
    }
    if (surrender_grid.size() < 2 ||
        std::fabs(surrender_grid.t0) > 1e-9 ||
        std::fabs(surrender_grid.horizon() - plan.horizon) >
            1e-9 * std::max(1.0, plan.horizon)) {
        throw ConfigError(
            "simulate_reserve: surrender grid must span [0, horizon]");
    }

    const PathModel model =
        build_model(plan, market_rate, mortality, surrender_grid, strategy, config);

    const std::size_t n_batches = (config.paths + batch_size - 1) / batch_size;
    std::vector<std::future<Accumulator>> futures;
    futures.reserve(n_batches);
    for (std::size_t b = 0; b < n_batches; ++b) {
        const std::size_t count =
            std::min(batch_size, config.paths - b * batch_size);
        futures.push_back(std::async(std::launch::async, run_batch,
                                     std::cref(model), config.seed, b, count));
    }

    Accumulator total;  // merged in batch order: result independent of timing
    for (auto& f : futures) {
        total.merge(f.get());
    }

    SimulationResult result;
    result.estimate = total.mean;
    if (total.count > 1) {
        result.standard_error = std::sqrt(
            total.m2 / static_cast<double>(total.count - 1) /
            static_cast<double>(total.count));
    }
    return result;
}

}  // namespace thiele
