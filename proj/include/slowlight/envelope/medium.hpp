#pragma once

namespace slowlight {

inline constexpr double kSpeedOfLight = 299'792'458.0;      // m/s
inline constexpr double kVacuumPermittivity = 8.8541878128e-12;  // F/m

/// Linearised susceptibility chi(w) ~ chi0 + chi1 (w - w0) around the carrier.
class MediumParams {
public:
    MediumParams(double chi0, double chi1, double omega0, double c = kSpeedOfLight);

    double chi0() const noexcept { return chi0_; }
    double chi1() const noexcept { return chi1_; }
    double omega0() const noexcept { return omega0_; }
    double c() const noexcept { return c_; }

    double refractive_index() const;
    /// k = n w0 / c.
    double wavenumber() const;

private:
    double chi0_;
    double chi1_;
    double omega0_;
    double c_;
};

/// v_g = c / (n + w0 chi1 / (2 n)). Throws InvalidArgument when the
/// denominator is not positive.
double group_velocity(const MediumParams& medium);

/// Order-of-magnitude group velocity inside a transparency window of width w:
/// v_g ~ (2 w / w0) c.
double eit_velocity_estimate(double window, double omega0, double c = kSpeedOfLight);

}  // namespace slowlight
