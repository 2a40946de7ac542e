#include "bubblespec/errors.hpp"
#include "bubblespec/profile.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>
#include <stdexcept>

namespace bubblespec {

namespace {

// cosh^{2(n-1)} t - 1 without cancellation near t = 0
double cosh_power_minus_one(int n, double t)
{
    const double sh = std::sinh(0.5 * t);
    return std::expm1(2.0 * (n - 1) * std::log1p(2.0 * sh * sh));
}

double root_in(double lo, double hi, auto&& f)
{
    std::uintmax_t iters = 200;
    auto tol = boost::math::tools::eps_tolerance<double>(52);
    auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, tol, iters);
    return 0.5 * (a + b);
}

}  // namespace

Catenoid::Catenoid(int n, double h0) : n_(n), h0_(h0)
{
    if (n < 3) throw std::invalid_argument("catenoid: n must be >= 3");
    if (!(h0 > 0.0)) throw std::invalid_argument("catenoid: h0 must be positive");
    a_ = std::pow(h0, -2.0 * (n - 1));
    // with cos(theta) = (h0/h)^{n-1} the half-length is a Beta integral
    const double alpha = -1.0 / (n - 1);
    s_inf_ = h0 / (n - 1) * 0.5 * std::sqrt(std::numbers::pi) * std::tgamma(0.5 * (alpha + 1.0))
           / std::tgamma(0.5 * alpha + 1.0);
}

double Catenoid::h_of_t(double t) const
{
    return h0_ * std::cosh(t);
}

double Catenoid::ds_dt(double t) const
{
    const double at = std::abs(t);
    if (at < 1e-150) return h0_ / std::sqrt(n_ - 1.0);
    return h0_ * std::sinh(at) / std::sqrt(cosh_power_minus_one(n_, at));
}

double Catenoid::dh_ds_of_t(double t) const
{
    const double v = std::sqrt(cosh_power_minus_one(n_, std::abs(t)));
    return t < 0.0 ? -v : v;
}

double Catenoid::s_of_t(double t) const
{
    // analytic integrand: fixed Gauss-Legendre panels of width <= 1/2 reach round-off
    using boost::math::quadrature::gauss;
    const double at = std::abs(t);
    const int panels = std::max(1, static_cast<int>(std::ceil(2.0 * at)));
    const double w = at / panels;
    double v = 0.0;
    for (int k = 0; k < panels; ++k)
        v += gauss<double, 20>::integrate([this](double x) { return ds_dt(x); }, k * w, (k + 1) * w);
    return t < 0.0 ? -v : v;
}

double Catenoid::t_of_s(double s) const
{
    const double as = std::abs(s);
    if (!(as < s_inf_)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "catenoid: |s| = " << as << " is not below s_inf = " << s_inf_;
        throw TruncationError(msg.str(), s_inf_);
    }
    if (as == 0.0) return 0.0;
    double hi = 1.0;
    while (s_of_t(hi) < as) hi *= 2.0;
    const double t = root_in(0.0, hi, [&](double x) { return s_of_t(x) - as; });
    return s < 0.0 ? -t : t;
}

double Catenoid::t_of_radius(double radius) const
{
    if (!(radius > h0_)) throw std::invalid_argument("catenoid: truncation radius must exceed h0");
    auto f = [&](double x) { return std::hypot(h_of_t(x), s_of_t(x)) - radius; };
    double hi = 1.0;
    while (f(hi) < 0.0) hi *= 2.0;
    return root_in(0.0, hi, f);
}

namespace {

// Positive half of the grid, t_0 = 0 (odd mesh) or t_0 = first positive node (even mesh), last node T.
std::vector<double> positive_nodes(double T, std::size_t m, const CatenoidGrid& grid)
{
    const std::size_t half = (m + 1) / 2;
    const double denom = static_cast<double>(m - 1);
    std::vector<double> u(half);
    for (std::size_t j = 0; j < half; ++j) u[j] = (2.0 * static_cast<double>(j + m / 2) - denom) / denom;
    std::vector<double> t(half);
    const double tau = grid.neck_width;
    if (!(tau > 0.0)) {
        for (std::size_t j = 0; j < half; ++j) t[j] = T * u[j];
    } else if (grid.exponent == 1.0 && grid.floor == 0.0) {
        const double V = std::asinh(T / tau);
        for (std::size_t j = 0; j < half; ++j) t[j] = tau * std::sinh(V * u[j]);
    } else {
        // invert the cumulative density on a fine table
        const std::size_t fine = 64 * m;
        std::vector<double> cum(fine + 1, 0.0);
        auto rho = [&](double x) { return std::pow(tau * tau + x * x, -0.5 * grid.exponent) + grid.floor; };
        const double dx = T / static_cast<double>(fine);
        for (std::size_t k = 0; k < fine; ++k) {
            const double x = dx * static_cast<double>(k);
            cum[k + 1] = cum[k] + dx / 6.0 * (rho(x) + 4.0 * rho(x + 0.5 * dx) + rho(x + dx));
        }
        for (std::size_t j = 0; j < half; ++j) {
            const double target = u[j] * cum.back();
            const auto it = std::lower_bound(cum.begin(), cum.end(), target);
            const std::size_t k = std::clamp<std::size_t>(static_cast<std::size_t>(it - cum.begin()), 1, fine);
            const double f = (target - cum[k - 1]) / (cum[k] - cum[k - 1]);
            t[j] = dx * (static_cast<double>(k - 1) + f);
        }
    }
    t.back() = T;
    return t;
}

ProfileCurve build_catenoid(const Catenoid& cat, double T, int mesh, const CatenoidGrid& grid)
{
    using boost::math::quadrature::gauss;
    const int n = cat.n();
    const auto m = static_cast<std::size_t>(mesh);
    ProfileCurve p;
    p.n = n;
    p.kind = ProfileKind::catenoid;
    p.params = {{"h0", cat.h0()}, {"T", T}, {"a", cat.a()}, {"neck_width", grid.neck_width}};
    p.s_inf = cat.s_infinity();
    p.s.assign(m, 0.0);
    p.z.assign(m, 0.0);
    p.h.assign(m, 0.0);
    p.dz.assign(m, 1.0);
    p.dh.assign(m, 0.0);
    p.sqrt_g.assign(m, 0.0);

    // symmetric t grid with node density (tau^2 + t^2)^{-alpha/2} + floor; the negative half mirrors the positive half
    const auto nodes = positive_nodes(T, m, grid);
    double prev_t = 0.0;
    double acc = 0.0;
    for (std::size_t i = m / 2; i < m; ++i) {
        const double t = nodes[i - m / 2];
        if (t > prev_t)
            acc += gauss<double, 10>::integrate([&](double x) { return cat.ds_dt(x); }, prev_t, t);
        prev_t = t;
        const double h = cat.h_of_t(t);
        const double dh = cat.dh_ds_of_t(t);
        const std::size_t j = m - 1 - i;
        p.s[i] = acc;
        p.h[i] = h;
        p.dh[i] = dh;
        p.s[j] = -acc;
        p.h[j] = h;
        p.dh[j] = -dh;
    }
    for (std::size_t i = 0; i < m; ++i) {
        p.z[i] = p.s[i];
        p.sqrt_g[i] = std::pow(p.h[i], n - 1) * std::sqrt(1.0 + p.dh[i] * p.dh[i]);
    }
    p.s_lo = p.s.front();
    p.s_hi = p.s.back();
    p.a2 = second_fundamental(p);
    double res = 0.0;
    for (double r : catenoid_minimality_residual(p)) res = std::max(res, r);
    p.mc_residual = res;
    validate(p);
    return p;
}

void check_mesh(int mesh)
{
    if (mesh < 16) throw std::invalid_argument("catenoid: mesh must be >= 16");
}

}  // namespace

ProfileCurve catenoid_profile(int n, double h0, double S, int mesh, const CatenoidGrid& grid)
{
    check_mesh(mesh);
    Catenoid cat(n, h0);
    const double T = cat.t_of_radius(S);
    auto p = build_catenoid(cat, T, mesh, grid);
    p.params["S"] = S;
    return p;
}

ProfileCurve catenoid_profile_axial(int n, double h0, double s_max, int mesh, const CatenoidGrid& grid)
{
    check_mesh(mesh);
    Catenoid cat(n, h0);
    if (!(s_max > 0.0)) throw std::invalid_argument("catenoid: axial truncation must be positive");
    const double T = cat.t_of_s(s_max);
    auto p = build_catenoid(cat, T, mesh, grid);
    p.params["s_max"] = s_max;
    p.params["S"] = p.max_radius();
    return p;
}

}  // namespace bubblespec
