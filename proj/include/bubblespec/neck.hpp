#pragma once

#include "bubblespec/profile.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace bubblespec {

// Radial graph x_{n+1} = u(|x|) over the annulus r_in <= |x| <= r_out in R^n,
// with the induced metric multiplied by the constant `conformal`.
// V and omega are sampled on the radial grid r.
struct GraphAnnulus {
    int n = 3;
    double r_in = 1.0;
    double r_out = 2.0;
    double conformal = 1.0;
    std::vector<double> r;
    std::vector<double> u;
    std::vector<double> du;
    std::vector<double> V;
    std::vector<double> omega;

    std::size_t size() const { return r.size(); }
    double gradient_bound() const;  // max |u'|
    // Smallest K >= 1 with g/K <= <,> <= K g at every sample.
    double distortion() const;
    // ||omega||_(n/2, inf) against the metric volume.
    double weight_norm() const;
    // Hypersurface-of-revolution form (h = scaled radius, potential stored in a2).
    ProfileCurve profile() const;
};

// Throws std::invalid_argument unless |u'| <= 1/2, omega > 0 and the arrays line up.
void validate(const GraphAnnulus& annulus);

// Uniform radial grid with `mesh` samples; V = 0 and omega = 1 until set.
GraphAnnulus make_annulus(int n, double r_in, double r_out, int mesh, const std::function<double(double)>& u,
                          const std::function<double(double)>& du, double conformal = 1.0);
GraphAnnulus flat_annulus(int n, double r_in, double r_out, int mesh);

// V = epsilon * omega.
void set_potential(GraphAnnulus& annulus, double epsilon);

struct RayleighResult {
    double infimum = 0.0;
    int argmin_mode = 0;
    std::vector<double> per_mode;  // smallest eigenvalue for l = 0..max_l
};

// min over l <= max_l of inf (int |grad f|^2 - V f^2) / int f^2 omega with f = 0 on both circles.
RayleighResult rayleigh_infimum(const GraphAnnulus& annulus, int max_l = 4);

// Seeded annuli with K <= 2, n alternating 3, 4.
std::vector<GraphAnnulus> neck_battery(std::uint64_t seed, int count = 20, int mesh = 400);

struct Calibration {
    double epsilon = 0.0;         // largest epsilon found with min infimum >= floor
    double floor = 0.0;           // floor_fraction * base
    double base = 0.0;            // min infimum over the battery at V = 0
    double min_infimum = 0.0;     // at V = epsilon * omega
    int iterations = 0;
};

struct CalibrationOptions {
    double floor_fraction = 0.5;
    int iterations = 60;
    int max_l = 4;
};

// Bisection on epsilon for V = epsilon * omega over the whole battery.
Calibration calibrate_threshold(const std::vector<GraphAnnulus>& battery, const CalibrationOptions& options = {});

// chi = 1 on t <= 1, 0 on t >= 2, quintic smoothstep in between.
double cutoff_profile(double t);
double cutoff_slope(double t);

struct Cutoff {
    double inner_radius = 1.0;
    static constexpr double slope_bound = 1.875;  // max |chi'|

    double operator()(double d) const { return cutoff_profile(d / inner_radius); }
    double derivative(double d) const { return cutoff_slope(d / inner_radius) / inner_radius; }
};

Cutoff build_cutoff(double inner_radius);

// Area of the geodesic sphere of radius d divided by |S^{n-1}|.
using AreaDensity = std::function<double(double)>;
AreaDensity flat_area_density(int n);
AreaDensity sphere_area_density(int n, double radius);

struct CapacityTable {
    int n = 3;
    int mesh = 0;
    std::vector<double> eps;
    std::vector<double> energy;  // int |grad chi_eps|^2
    double exponent = 0.0;       // least-squares slope of log energy against log eps
};

CapacityTable capacity_estimate(int n, const AreaDensity& density, const std::vector<double>& eps, int mesh = 200);

// Least-squares slope of log y against log x.
double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace bubblespec
