#include "bubblespec/neck.hpp"

#include "bubblespec/lorentz.hpp"
#include "bubblespec/rng.hpp"
#include "bubblespec/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bubblespec {

double GraphAnnulus::gradient_bound() const
{
    double g = 0.0;
    for (double d : du) g = std::max(g, std::abs(d));
    return g;
}

double GraphAnnulus::distortion() const
{
    const double g = gradient_bound();
    return std::max({1.0, conformal * (1.0 + g * g), 1.0 / conformal});
}

double GraphAnnulus::weight_norm() const
{
    const auto p = profile();
    return lorentz_quasinorm(MeasuredSamples{omega, p.measure()}, 0.5 * n, kInfinity);
}

ProfileCurve GraphAnnulus::profile() const
{
    const double k = std::sqrt(conformal);
    const std::size_t m = size();
    ProfileCurve p;
    p.n = n;
    p.kind = ProfileKind::catenoid;
    p.params = {{"r_in", r_in}, {"r_out", r_out}, {"conformal", conformal}};
    p.s.resize(m);
    p.z.resize(m);
    p.h.resize(m);
    p.dz = du;
    p.dh.assign(m, 1.0);
    p.sqrt_g.resize(m);
    p.a2 = V;
    for (std::size_t i = 0; i < m; ++i) {
        p.s[i] = k * r[i];
        p.h[i] = k * r[i];
        p.z[i] = k * u[i];
        p.sqrt_g[i] = std::pow(p.h[i], n - 1) * std::sqrt(1.0 + du[i] * du[i]);
    }
    p.s_lo = p.s.front();
    p.s_hi = p.s.back();
    return p;
}

void validate(const GraphAnnulus& a)
{
    const std::size_t m = a.size();
    if (a.n < 3) throw std::invalid_argument("annulus: n must be >= 3");
    if (!(a.r_in > 0.0 && a.r_out > a.r_in)) throw std::invalid_argument("annulus: need 0 < r_in < r_out");
    if (!(a.conformal > 0.0)) throw std::invalid_argument("annulus: conformal factor must be positive");
    if (m < 3) throw std::invalid_argument("annulus: need at least three samples");
    for (const auto* v : {&a.u, &a.du, &a.V, &a.omega})
        if (v->size() != m) throw std::invalid_argument("annulus: arrays have mismatched lengths");
    for (std::size_t i = 0; i < m; ++i) {
        if (i > 0 && !(a.r[i] > a.r[i - 1])) throw std::invalid_argument("annulus: radial grid must increase");
        if (!(std::abs(a.du[i]) <= 0.5)) throw std::invalid_argument("annulus: gradient bound |u'| <= 1/2 violated");
        if (!(a.omega[i] > 0.0)) throw std::invalid_argument("annulus: weight must be positive");
        if (!std::isfinite(a.V[i])) throw std::invalid_argument("annulus: potential must be finite");
    }
}

GraphAnnulus make_annulus(int n, double r_in, double r_out, int mesh, const std::function<double(double)>& u,
                          const std::function<double(double)>& du, double conformal)
{
    if (mesh < 3) throw std::invalid_argument("annulus: mesh must be >= 3");
    GraphAnnulus a;
    a.n = n;
    a.r_in = r_in;
    a.r_out = r_out;
    a.conformal = conformal;
    const auto m = static_cast<std::size_t>(mesh);
    for (std::size_t i = 0; i < m; ++i) {
        const double x = r_in + (r_out - r_in) * static_cast<double>(i) / static_cast<double>(m - 1);
        a.r.push_back(x);
        a.u.push_back(u(x));
        a.du.push_back(du(x));
    }
    a.V.assign(m, 0.0);
    a.omega.assign(m, 1.0);
    validate(a);
    return a;
}

GraphAnnulus flat_annulus(int n, double r_in, double r_out, int mesh)
{
    auto zero = [](double) { return 0.0; };
    return make_annulus(n, r_in, r_out, mesh, zero, zero);
}

void set_potential(GraphAnnulus& a, double epsilon)
{
    for (std::size_t i = 0; i < a.size(); ++i) a.V[i] = epsilon * a.omega[i];
}

RayleighResult rayleigh_infimum(const GraphAnnulus& a, int max_l)
{
    validate(a);
    const auto p = a.profile();
    RayleighResult r;
    for (int l = 0; l <= max_l; ++l) {
        const auto pr = assemble_mode(p, std::span<const double>(a.omega), l, BoundaryCondition::dirichlet);
        const double lam = eigenvalue(pr, 0);
        r.per_mode.push_back(lam);
        if (l == 0 || lam < r.infimum) {
            r.infimum = lam;
            r.argmin_mode = l;
        }
    }
    return r;
}

std::vector<GraphAnnulus> neck_battery(std::uint64_t seed, int count, int mesh)
{
    Rng rng(seed);
    std::vector<GraphAnnulus> out;
    for (int c = 0; c < count; ++c) {
        const int n = 3 + c % 2;
        const double r_in = rng.uniform(0.5, 2.0);
        const double r_out = r_in * rng.uniform(2.0, 8.0);
        const double conformal = rng.uniform(0.6, 1.6);
        GraphAnnulus a;
        if (rng.uniform() < 0.5) {
            // catenoidal end: u = A log r, |u'| = |A| / r
            const double A = rng.uniform(-0.5, 0.5) * r_in;
            a = make_annulus(n, r_in, r_out, mesh, [A](double x) { return A * std::log(x); },
                             [A](double x) { return A / x; }, conformal);
        } else {
            const double B = rng.uniform(-0.25, 0.25) / r_out;
            a = make_annulus(n, r_in, r_out, mesh, [B](double x) { return B * x * x; },
                             [B](double x) { return 2.0 * B * x; }, conformal);
        }
        const int shape = rng.uniform_int(0, 2);
        if (shape == 0) {
            for (std::size_t i = 0; i < a.size(); ++i) a.omega[i] = 1.0 / (a.r[i] * a.r[i]);
        } else if (shape == 1) {
            const double v = rng.uniform(0.2, 5.0);
            a.omega.assign(a.size(), v / (r_in * r_in));
        } else {
            std::vector<double> levels(8);
            for (double& v : levels) v = rng.uniform(0.2, 5.0);
            for (std::size_t i = 0; i < a.size(); ++i)
                a.omega[i] = levels[i * levels.size() / a.size()] / (r_in * r_in);
        }
        out.push_back(std::move(a));
    }
    return out;
}

namespace {

double battery_min(std::vector<GraphAnnulus>& battery, double epsilon, int max_l)
{
    double m = 0.0;
    for (std::size_t i = 0; i < battery.size(); ++i) {
        set_potential(battery[i], epsilon);
        const double v = rayleigh_infimum(battery[i], max_l).infimum;
        m = i == 0 ? v : std::min(m, v);
    }
    return m;
}

}  // namespace

Calibration calibrate_threshold(const std::vector<GraphAnnulus>& input, const CalibrationOptions& opt)
{
    if (input.empty()) throw std::invalid_argument("calibration: empty battery");
    auto battery = input;
    Calibration c;
    c.base = battery_min(battery, 0.0, opt.max_l);
    if (!(c.base > 0.0)) throw std::runtime_error("calibration: quotient is not positive at V = 0");
    c.floor = opt.floor_fraction * c.base;
    double lo = 0.0;
    double hi = c.base;
    while (battery_min(battery, hi, opt.max_l) >= c.floor) {
        lo = hi;
        hi *= 2.0;
    }
    for (int it = 0; it < opt.iterations && hi - lo > 1e-14 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (battery_min(battery, mid, opt.max_l) >= c.floor ? lo : hi) = mid;
        c.iterations = it + 1;
    }
    c.epsilon = lo;
    c.min_infimum = battery_min(battery, lo, opt.max_l);
    return c;
}

double cutoff_profile(double t)
{
    if (t <= 1.0) return 1.0;
    if (t >= 2.0) return 0.0;
    const double x = t - 1.0;
    return 1.0 - x * x * x * (10.0 - 15.0 * x + 6.0 * x * x);
}

double cutoff_slope(double t)
{
    if (t <= 1.0 || t >= 2.0) return 0.0;
    const double x = t - 1.0;
    return -30.0 * x * x * (1.0 - x) * (1.0 - x);
}

Cutoff build_cutoff(double inner_radius)
{
    if (!(inner_radius > 0.0)) throw std::invalid_argument("cutoff: inner radius must be positive");
    return Cutoff{inner_radius};
}

AreaDensity flat_area_density(int n)
{
    return [n](double d) { return std::pow(d, n - 1); };
}

AreaDensity sphere_area_density(int n, double radius)
{
    return [n, radius](double d) { return std::pow(radius * std::sin(d / radius), n - 1); };
}

CapacityTable capacity_estimate(int n, const AreaDensity& density, const std::vector<double>& eps, int mesh)
{
    if (n < 3) throw std::invalid_argument("capacity: n must be >= 3");
    if (eps.size() < 2) throw std::invalid_argument("capacity: need at least two radii");
    if (mesh < 2) throw std::invalid_argument("capacity: mesh must be >= 2");
    CapacityTable t;
    t.n = n;
    t.mesh = mesh;
    t.eps = eps;
    const double area = unit_sphere_area(n - 1);
    for (double e : eps) {
        if (!(e > 0.0)) throw std::invalid_argument("capacity: radii must be positive");
        const Cutoff chi = build_cutoff(e);
        // composite midpoint rule on the transition shell [e, 2e]
        const double h = e / mesh;
        double I = 0.0;
        for (int k = 0; k < mesh; ++k) {
            const double d = e + (k + 0.5) * h;
            const double g = chi.derivative(d);
            I += g * g * density(d) * h;
        }
        t.energy.push_back(I * area);
    }
    t.exponent = fit_loglog_slope(t.eps, t.energy);
    return t;
}

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit: need matching samples");
    const double m = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace bubblespec
