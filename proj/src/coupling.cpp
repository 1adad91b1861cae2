#include "ptdimer/coupling.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ptdimer {

namespace {
constexpr double kMu0 = 4e-7 * std::numbers::pi;
constexpr double kAgmTol = 1e-15;
} // namespace

double elliptic_k(double m) {
    if (!(m >= 0.0) || m >= 1.0) {
        throw std::domain_error("elliptic_k: parameter m must lie in [0, 1)");
    }
    double a = 1.0;
    double b = std::sqrt(1.0 - m);
    while (std::abs(a - b) > kAgmTol * a) {
        const double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return std::numbers::pi / (2.0 * a);
}

double elliptic_e(double m) {
    if (!(m >= 0.0) || m >= 1.0) {
        throw std::domain_error("elliptic_e: parameter m must lie in [0, 1)");
    }
    double a = 1.0;
    double b = std::sqrt(1.0 - m);
    double c = std::sqrt(m);
    double sum = 0.5 * c * c;
    double pow2 = 1.0;
    while (std::abs(a - b) > kAgmTol * a) {
        c = 0.5 * (a - b);
        const double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
        pow2 *= 2.0;
        sum += 0.5 * pow2 * c * c;
    }
    return std::numbers::pi / (2.0 * a) * (1.0 - sum);
}

void validate(const CoilGeometry& geom) {
    if (!(geom.wire_radius > 0.0) || !(geom.radius > geom.wire_radius)) {
        throw std::invalid_argument("CoilGeometry: need radius > wire_radius > 0");
    }
    if (geom.turns < 1) {
        throw std::invalid_argument("CoilGeometry: turns must be >= 1");
    }
    if (!(geom.axial_pitch >= 2.0 * geom.wire_radius)) {
        throw std::invalid_argument("CoilGeometry: axial_pitch must be >= 2*wire_radius");
    }
}

double loop_mutual_inductance(double radius_a, double radius_b, double z) {
    if (!(radius_a > 0.0) || !(radius_b > 0.0)) {
        throw std::domain_error("loop_mutual_inductance: radii must be > 0");
    }
    const double sum = radius_a + radius_b;
    double m = 4.0 * radius_a * radius_b / (sum * sum + z * z);
    if (m >= 1.0) {
        if (m - 1.0 > 1e-12) {
            throw std::domain_error("loop_mutual_inductance: coincident filaments");
        }
        m = 1.0 - 1e-15;
    }
    const double k = std::sqrt(m);
    return kMu0 * std::sqrt(radius_a * radius_b) *
           ((2.0 / k - k) * elliptic_k(m) - (2.0 / k) * elliptic_e(m));
}

namespace {

// Axial position of turn j in a stack centered on its coil's midplane.
double turn_offset(const CoilGeometry& geom, int j) {
    return (j - 0.5 * (geom.turns - 1)) * geom.axial_pitch;
}

} // namespace

double mutual_inductance(const CoilGeometry& a, const CoilGeometry& b, double d) {
    validate(a);
    validate(b);
    if (!(d > 0.0)) {
        throw std::domain_error("mutual_inductance: d must be > 0");
    }
    const double half_extent =
        0.5 * ((a.turns - 1) * a.axial_pitch + (b.turns - 1) * b.axial_pitch);
    if (d < half_extent + a.wire_radius + b.wire_radius) {
        throw std::domain_error("mutual_inductance: coil stacks interpenetrate at this distance");
    }
    double total = 0.0;
    for (int j = 0; j < a.turns; ++j) {
        for (int k = 0; k < b.turns; ++k) {
            const double z = d + turn_offset(b, k) - turn_offset(a, j);
            total += loop_mutual_inductance(a.radius, b.radius, z);
        }
    }
    return total;
}

double self_inductance(const CoilGeometry& geom) {
    validate(geom);
    double total = geom.turns * kMu0 * geom.radius *
                   (std::log(8.0 * geom.radius / geom.wire_radius) - 2.0);
    for (int j = 0; j < geom.turns; ++j) {
        for (int k = 0; k < geom.turns; ++k) {
            if (j == k) continue;
            const double z = (j - k) * geom.axial_pitch;
            total += loop_mutual_inductance(geom.radius, geom.radius, std::abs(z));
        }
    }
    return total;
}

double kappa_of_distance(const CoilGeometry& geom, double d, double omega0) {
    return 0.5 * omega0 * mutual_inductance(geom, geom, d) / self_inductance(geom);
}

CouplingCurve build_coupling_curve(const CoilGeometry& geom,
                                   const std::vector<double>& distances, double omega0) {
    if (distances.empty()) {
        throw std::invalid_argument("build_coupling_curve: no distances given");
    }
    CouplingCurve curve;
    curve.omega0 = omega0;
    curve.distances = distances;
    curve.kappas.reserve(distances.size());
    const double l_self = self_inductance(geom);
    for (std::size_t i = 0; i < distances.size(); ++i) {
        if (i > 0 && !(distances[i] > distances[i - 1])) {
            throw std::invalid_argument("build_coupling_curve: distances must strictly increase");
        }
        curve.kappas.push_back(0.5 * omega0 * mutual_inductance(geom, geom, distances[i]) / l_self);
        if (i > 0 && !(curve.kappas[i] < curve.kappas[i - 1])) {
            throw std::invalid_argument("build_coupling_curve: kappa(d) must strictly decrease");
        }
    }
    return curve;
}

} // namespace ptdimer
