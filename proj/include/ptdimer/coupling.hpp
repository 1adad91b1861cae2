#pragma once

#include <vector>

#include "ptdimer/core.hpp"

namespace ptdimer {

/// Complete elliptic integral of the first kind K(m), parameter m = k^2,
/// by the arithmetic-geometric mean iteration.
[[nodiscard]] double elliptic_k(double m);

/// Complete elliptic integral of the second kind E(m), parameter m = k^2.
[[nodiscard]] double elliptic_e(double m);

/// Coaxial solenoid-style coil: `turns` circular filaments of the same
/// radius stacked along the axis at `axial_pitch` spacing.
struct CoilGeometry {
    double radius = 0.29;        ///< m
    int turns = 3;
    double axial_pitch = 5e-3;   ///< m, spacing between adjacent turns
    double wire_radius = 2.5e-3; ///< m
};

void validate(const CoilGeometry& geom);

/// Mutual inductance of two coaxial circular filaments of radii a and b
/// whose planes are z apart (Maxwell's formula).
[[nodiscard]] double loop_mutual_inductance(double radius_a, double radius_b, double z);

/// Mutual inductance of two coaxial coils at center-to-center distance d,
/// summed over all turn pairs. Throws std::domain_error when the stacks
/// would interpenetrate.
[[nodiscard]] double mutual_inductance(const CoilGeometry& a, const CoilGeometry& b, double d);

/// Self inductance: filament pair terms plus the single-loop self term
/// mu0 a (ln(8a/r_w) - 2) per turn.
[[nodiscard]] double self_inductance(const CoilGeometry& geom);

/// kappa(d) = (omega0/2) M(d)/L for two identical coils.
[[nodiscard]] double kappa_of_distance(const CoilGeometry& geom, double d, double omega0 = 1.0);

struct CouplingCurve {
    std::vector<double> distances;  ///< m, strictly increasing
    std::vector<double> kappas;     ///< units of omega0, strictly decreasing
    double omega0 = 1.0;
};

/// Tabulate kappa(d) on the given distances. Throws std::invalid_argument
/// if the resulting curve is not strictly decreasing.
[[nodiscard]] CouplingCurve build_coupling_curve(const CoilGeometry& geom,
                                                 const std::vector<double>& distances,
                                                 double omega0 = 1.0);

} // namespace ptdimer
