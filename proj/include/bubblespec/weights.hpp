#pragma once

#include "bubblespec/profile.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace bubblespec {

enum class WeightKind { bubble_omega, sequence_omega, base_omega, constant, custom };

std::string to_string(WeightKind kind);

struct Weight {
    WeightKind kind = WeightKind::constant;
    std::vector<double> samples;
    double R = 0.0;
    double delta = 0.0;
    double essinf = 0.0;
    double decay = 0.0;  // Lambda with |x|^-2 / Lambda <= omega <= Lambda |x|^-2 outside the cap; 0 if not applicable
    std::string label;
};

// Axial bubble center z = center with scale r_j.
struct BubblePoint {
    double center = 0.0;
    double scale = 1.0;
};

Weight weight_bubble(const ProfileCurve& profile, double R);
// axial_period > 0 wraps axial distances (periodic profiles).
Weight weight_sequence(const ProfileCurve& profile, const std::vector<BubblePoint>& bubbles, double delta, double R,
                       double axial_period = 0.0);
Weight weight_base(const ProfileCurve& profile, const std::vector<double>& centers, double delta,
                   double axial_period = 0.0);
Weight weight_constant(const ProfileCurve& profile, double c);
Weight weight_custom(const ProfileCurve& profile, std::vector<double> samples, std::string label);
// Piecewise-constant on `pieces` contiguous blocks with values in [lo, hi].
Weight weight_random_piecewise(const ProfileCurve& profile, std::uint64_t seed, int pieces = 8, double lo = 0.2,
                               double hi = 5.0);

void check_aligned(const ProfileCurve& profile, const Weight& weight);

struct WeightBounds {
    double curvature_ratio = 0.0;  // sup (|A|^2 + |Ric|) / omega
    std::size_t argmax = 0;
    double lorentz_norm = 0.0;  // ||omega||_(n/2, inf) on the profile measure
};

WeightBounds verify_weight_bounds(const ProfileCurve& profile, const Weight& weight);

}  // namespace bubblespec
