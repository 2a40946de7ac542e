#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace bubblespec {

enum class ProfileKind { catenoid, sphere, delaunay };
enum class BoundaryCondition { dirichlet, natural, periodic };

std::string to_string(ProfileKind kind);
std::string to_string(BoundaryCondition bc);
ProfileKind parse_profile_kind(std::string_view text);
BoundaryCondition parse_boundary_condition(std::string_view text);

// Volume of the unit sphere S^{m} in R^{m+1}.
double unit_sphere_area(int m);

// Sampled generating curve of a hypersurface of revolution in R^{n+1}.
// The curve is (z(s), h(s)) with h the distance to the axis; s is the
// stored parameter (axial coordinate for the catenoid, arclength otherwise).
struct ProfileCurve {
    int n = 3;
    ProfileKind kind = ProfileKind::catenoid;
    std::map<std::string, double> params;

    std::vector<double> s;
    std::vector<double> z;
    std::vector<double> h;
    std::vector<double> dz;
    std::vector<double> dh;
    std::vector<double> a2;
    std::vector<double> sqrt_g;

    // Parameter interval covered by the dual cells. For the sphere the
    // end cells reach the poles; for periodic profiles s_hi - s_lo is the period.
    double s_lo = 0.0;
    double s_hi = 0.0;
    bool periodic = false;
    double s_inf = 0.0;
    double mean_curvature = 0.0;  // trace of the second fundamental form
    double ricci = 0.0;           // Ric(nu, nu), zero in flat ambients
    double mc_residual = 0.0;     // max |H_computed - H| over samples

    std::size_t size() const { return s.size(); }
    double speed(std::size_t i) const;
    double radius(std::size_t i) const;  // Euclidean |x| = sqrt(h^2 + z^2)
    double stiffness_density(std::size_t i) const;  // h^{n-1} / speed
    std::vector<double> cell_lengths() const;
    // Area element per sample: sqrt_g * cell * |S^{n-1}|.
    std::vector<double> measure() const;
    double max_radius() const;
};

// Throws std::invalid_argument if structural invariants fail.
void validate(const ProfileCurve& profile);

// Principal-curvature based |A|^2 at every sample.
std::vector<double> second_fundamental(const ProfileCurve& profile);

// Pointwise |H_computed - H| from h, h', h'' for the catenoid (H = 0).
std::vector<double> catenoid_minimality_residual(const ProfileCurve& profile);

class Catenoid {
public:
    Catenoid(int n, double h0);

    int n() const { return n_; }
    double h0() const { return h0_; }
    double a() const { return a_; }
    double s_infinity() const { return s_inf_; }

    // Closed-form parametrization h = h0 cosh t.
    double h_of_t(double t) const;
    double ds_dt(double t) const;
    double dh_ds_of_t(double t) const;
    double s_of_t(double t) const;
    double t_of_s(double s) const;
    double t_of_radius(double radius) const;

    double h(double s) const { return h_of_t(t_of_s(s)); }
    double dh(double s) const { return dh_ds_of_t(t_of_s(s)); }

private:
    int n_;
    double h0_;
    double a_;
    double s_inf_;
};

// Node density (tau^2 + t^2)^{-alpha/2} + floor in the parametrization h = h0 cosh t.
// alpha = 1 without floor gives t = tau sinh(v) with v uniform; tau <= 0 gives a uniform t grid.
struct CatenoidGrid {
    double neck_width = 0.7;
    double exponent = 3.0;
    double floor = 0.1;
};

ProfileCurve catenoid_profile(int n, double h0, double S, int mesh, const CatenoidGrid& grid = {});
// Truncation in the axial coordinate instead of Euclidean radius.
ProfileCurve catenoid_profile_axial(int n, double h0, double s_max, int mesh, const CatenoidGrid& grid = {});

ProfileCurve sphere_profile(int n, double radius, int mesh);

struct DelaunayOptions {
    double ode_tol = 1e-12;
    double max_conformal_time = 1e3;
    double max_step = 1.0 / 16.0;
};

ProfileCurve delaunay_profile(int n, double H, double neck, int mesh,
                              const DelaunayOptions& options = {});

double sphere_radius_for(int n, double H);
double cylinder_radius_for(int n, double H);

}  // namespace bubblespec
