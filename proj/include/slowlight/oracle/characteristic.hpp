#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "slowlight/envelope/schedule.hpp"
#include "slowlight/envelope/signal.hpp"
#include "slowlight/numeric/sampling.hpp"

namespace slowlight {

/// Piece of a spatially uniform velocity history: nu_d = velocity from `start`
/// until the next period begins.
struct VelocityPeriod {
    double start = 0.0;
    double velocity = 0.0;
};

/// Solution for a velocity that depends on stage only:
///     E(n, t) = phi(t - sum_{m<n} 1 / nu(m)).
double characteristic_x(const numeric::CubicProfile& boundary,
                        std::span<const double> stage_velocity, std::size_t stage, double t);

/// Solution for a velocity that depends on time only:
///     E(n, t) = psi(n - integral_0^t nu(t') dt').
/// `initial` is sampled over the stage coordinate.
double characteristic_t(const numeric::CubicProfile& initial,
                        std::span<const VelocityPeriod> periods, double stage, double t);

/// integral_0^t nu(t') dt' for a piecewise-constant history (negative for t < 0).
double travelled_stages(std::span<const VelocityPeriod> periods, double t);

/// Continuous transport solution of dE/dt + nu_d dE/dn = 0 evaluated on the
/// chain's stage lattice.
class CharacteristicSolution {
public:
    /// Boundary-driven form for an arbitrary schedule: each (n, t) is traced
    /// back along its characteristic to the time it entered stage 0.
    static CharacteristicSolution from_boundary(numeric::CubicProfile boundary,
                                                DelaySchedule schedule);

    /// Initial-value form for a velocity history that is uniform in space.
    static CharacteristicSolution from_initial(numeric::CubicProfile initial,
                                               std::vector<VelocityPeriod> periods);

    double operator()(std::size_t stage, double t) const;

private:
    enum class Form { boundary, initial };

    CharacteristicSolution(Form form, numeric::CubicProfile profile, DelaySchedule schedule,
                           std::vector<VelocityPeriod> periods);

    Form form_;
    numeric::CubicProfile profile_;
    DelaySchedule schedule_;
    std::vector<VelocityPeriod> periods_;
};

/// Boundary profile built from a sampled input signal.
numeric::CubicProfile boundary_profile(const StageSignal& input);

/// Ideal record on the simulated grid: the characteristic solution driven by
/// the simulated input signal under the same schedule.
ChainRecord characteristic_record(const ChainRecord& simulated);

/// Velocity history of a schedule that is uniform across stages.
/// Throws InvalidArgument otherwise.
std::vector<VelocityPeriod> velocity_periods(const DelaySchedule& schedule);

}  // namespace slowlight
