#include "bubblespec/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bubblespec {

std::string to_string(ProfileKind kind)
{
    switch (kind) {
    case ProfileKind::catenoid: return "catenoid";
    case ProfileKind::sphere: return "sphere";
    case ProfileKind::delaunay: return "delaunay";
    }
    return "unknown";
}

std::string to_string(BoundaryCondition bc)
{
    switch (bc) {
    case BoundaryCondition::dirichlet: return "dirichlet";
    case BoundaryCondition::natural: return "natural";
    case BoundaryCondition::periodic: return "periodic";
    }
    return "unknown";
}

ProfileKind parse_profile_kind(std::string_view text)
{
    if (text == "catenoid") return ProfileKind::catenoid;
    if (text == "sphere") return ProfileKind::sphere;
    if (text == "delaunay") return ProfileKind::delaunay;
    throw std::invalid_argument("unknown surface kind: " + std::string(text));
}

BoundaryCondition parse_boundary_condition(std::string_view text)
{
    if (text == "dirichlet") return BoundaryCondition::dirichlet;
    if (text == "natural") return BoundaryCondition::natural;
    if (text == "periodic") return BoundaryCondition::periodic;
    throw std::invalid_argument("unknown boundary condition: " + std::string(text));
}

double unit_sphere_area(int m)
{
    const double k = 0.5 * (m + 1);
    return 2.0 * std::pow(std::numbers::pi, k) / std::tgamma(k);
}

double ProfileCurve::speed(std::size_t i) const
{
    return std::hypot(dz[i], dh[i]);
}

double ProfileCurve::radius(std::size_t i) const
{
    return std::hypot(h[i], z[i]);
}

double ProfileCurve::stiffness_density(std::size_t i) const
{
    return std::pow(h[i], n - 1) / speed(i);
}

std::vector<double> ProfileCurve::cell_lengths() const
{
    const std::size_t m = size();
    std::vector<double> cell(m, 0.0);
    if (m == 0) return cell;
    if (m == 1) {
        cell[0] = s_hi - s_lo;
        return cell;
    }
    for (std::size_t i = 0; i + 1 < m; ++i) {
        const double half = 0.5 * (s[i + 1] - s[i]);
        cell[i] += half;
        cell[i + 1] += half;
    }
    if (periodic) {
        const double half = 0.5 * (s[0] + (s_hi - s_lo) - s[m - 1]);
        cell[m - 1] += half;
        cell[0] += half;
    } else {
        cell[0] += s[0] - s_lo;
        cell[m - 1] += s_hi - s[m - 1];
    }
    return cell;
}

std::vector<double> ProfileCurve::measure() const
{
    auto cell = cell_lengths();
    const double area = unit_sphere_area(n - 1);
    for (std::size_t i = 0; i < cell.size(); ++i) cell[i] *= sqrt_g[i] * area;
    return cell;
}

double ProfileCurve::max_radius() const
{
    double r = 0.0;
    for (std::size_t i = 0; i < size(); ++i) r = std::max(r, radius(i));
    return r;
}

void validate(const ProfileCurve& p)
{
    const std::size_t m = p.size();
    if (p.n < 3) throw std::invalid_argument("profile dimension n must be >= 3");
    if (m < 2) throw std::invalid_argument("profile needs at least two samples");
    for (const auto* v : {&p.z, &p.h, &p.dz, &p.dh, &p.a2, &p.sqrt_g})
        if (v->size() != m) throw std::invalid_argument("profile arrays have mismatched lengths");
    for (std::size_t i = 0; i < m; ++i) {
        if (!(p.h[i] > 0.0)) throw std::invalid_argument("profile radius must be positive");
        if (i > 0 && !(p.s[i] > p.s[i - 1]))
            throw std::invalid_argument("profile grid must be strictly increasing");
        if (!std::isfinite(p.a2[i]) || !std::isfinite(p.sqrt_g[i]))
            throw std::invalid_argument("profile contains non-finite samples");
    }
    if (p.s_lo > p.s.front() || p.s_hi < p.s.back())
        throw std::invalid_argument("profile domain does not cover its samples");
    if (p.periodic && !(p.s_hi - p.s_lo > p.s.back() - p.s.front()))
        throw std::invalid_argument("periodic profile must not repeat its first sample");
}

std::vector<double> second_fundamental(const ProfileCurve& p)
{
    std::vector<double> a2(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double k_rot = p.dz[i] / (p.h[i] * p.speed(i));
        const double k_ax = p.mean_curvature - (p.n - 1) * k_rot;
        a2[i] = k_ax * k_ax + (p.n - 1) * k_rot * k_rot;
    }
    return a2;
}

std::vector<double> catenoid_minimality_residual(const ProfileCurve& p)
{
    // axial curvature from h'' = (n-1) a h^{2n-3}, which follows from the first-order ODE
    const double h0 = p.params.at("h0");
    const double a = std::pow(h0, -2.0 * (p.n - 1));
    std::vector<double> res(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double w = std::sqrt(1.0 + p.dh[i] * p.dh[i]);
        const double hpp = (p.n - 1) * a * std::pow(p.h[i], 2 * p.n - 3);
        const double k_ax = -hpp / (w * w * w);
        const double k_rot = 1.0 / (p.h[i] * w);
        res[i] = std::abs(k_ax + (p.n - 1) * k_rot);
    }
    return res;
}

ProfileCurve sphere_profile(int n, double radius, int mesh)
{
    if (n < 3) throw std::invalid_argument("sphere: n must be >= 3");
    if (!(radius > 0.0)) throw std::invalid_argument("sphere: radius must be positive");
    if (mesh < 16) throw std::invalid_argument("sphere: mesh must be >= 16");

    ProfileCurve p;
    p.n = n;
    p.kind = ProfileKind::sphere;
    p.params = {{"radius", radius}};
    p.mean_curvature = n / radius;
    p.s_lo = 0.0;
    p.s_hi = std::numbers::pi * radius;
    p.s_inf = 0.5 * p.s_hi;
    const auto m = static_cast<std::size_t>(mesh);
    p.s.resize(m);
    p.z.resize(m);
    p.h.resize(m);
    p.dz.resize(m);
    p.dh.resize(m);
    p.sqrt_g.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        // poles excluded; the end cells reach them
        const double phi = (static_cast<double>(i) + 0.5) * std::numbers::pi / mesh;
        p.s[i] = radius * phi;
        p.z[i] = -radius * std::cos(phi);
        p.h[i] = radius * std::sin(phi);
        p.dz[i] = std::sin(phi);
        p.dh[i] = std::cos(phi);
        p.sqrt_g[i] = std::pow(p.h[i], n - 1);
    }
    p.a2 = second_fundamental(p);
    double res = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double phi = p.s[i] / radius;
        const double zpp = std::cos(phi) / radius;
        const double hpp = -std::sin(phi) / radius;
        const double k_ax = p.dh[i] * zpp - p.dz[i] * hpp;
        const double k_rot = p.dz[i] / p.h[i];
        res = std::max(res, std::abs(k_ax + (n - 1) * k_rot - p.mean_curvature));
    }
    p.mc_residual = res;
    validate(p);
    return p;
}

double sphere_radius_for(int n, double H)
{
    return n / H;
}

double cylinder_radius_for(int n, double H)
{
    return (n - 1) / H;
}

}  // namespace bubblespec
