#pragma once

#include <cstdint>
#include <limits>
#include <vector>

namespace bubblespec {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct MeasuredSamples {
    std::vector<double> values;  // |f| >= 0 per sample
    std::vector<double> masses;  // positive measure per sample
};

// f* as a step function: level levels[k] on (breakpoints[k-1], breakpoints[k]], breakpoints[-1] = 0.
struct DecreasingStep {
    std::vector<double> breakpoints;
    std::vector<double> levels;

    double total_mass() const { return breakpoints.empty() ? 0.0 : breakpoints.back(); }
    double operator()(double t) const;
};

void validate(const MeasuredSamples& f);

double distribution(const MeasuredSamples& f, double level);
double distribution(const DecreasingStep& f, double level);
DecreasingStep rearrange(const MeasuredSamples& f);

// q may be kInfinity.
double lorentz_quasinorm(const DecreasingStep& f, double p, double q);
double lorentz_quasinorm(const MeasuredSamples& f, double p, double q);

// |f|^gamma sampled on the same masses.
MeasuredSamples power(const MeasuredSamples& f, double gamma);

// Relative error between || |f|^gamma ||_(p/gamma, q/gamma) and ||f||_(p,q)^gamma.
double power_identity_check(const MeasuredSamples& f, double p, double q, double gamma);

struct HolderResult {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds() const { return lhs <= rhs * (1.0 + 1e-12); }
};

// f and h must share masses; (p2, q2) are the conjugates of (p1, q1).
HolderResult holder_lorentz_check(const MeasuredSamples& f, const MeasuredSamples& h, double p1, double q1);

double conjugate_exponent(double p);

// ||max(f,g)||_(p,inf) against n/(n-2) (||f||_(p,inf) + ||g||_(p,inf)) with p = n/2.
HolderResult max_pair_check(const MeasuredSamples& f, const MeasuredSamples& g, int n);

// ||u||_(2*,2) / ||grad u||_2 for a radial function sampled on a uniform grid r_i = i*dr in R^n.
double lorentz_sobolev_ratio(int n, double dr, const std::vector<double>& u);

// Random nonnegative step function with `pieces` levels and masses in (0.1, 2].
MeasuredSamples random_step_function(std::uint64_t seed, int pieces);

struct BatteryCase {
    std::uint64_t seed = 0;
    double p = 0.0;
    double q = 0.0;
    double gamma = 0.0;  // power battery only
    double lhs = 0.0;
    double rhs = 0.0;    // power battery: relative error in lhs, tolerance in rhs
    bool holds = false;
};

struct BatteryResult {
    std::vector<BatteryCase> cases;
    int passed() const;
};

// Seeded step functions with random (p, q, gamma); holds when the relative error is <= tol.
BatteryResult power_identity_battery(std::uint64_t seed, int count, double tol = 1e-12);
// Seeded pairs sharing their masses with random (p1, q1), q1 possibly infinite.
BatteryResult holder_battery(std::uint64_t seed, int count);

}  // namespace bubblespec
