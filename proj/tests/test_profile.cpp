#include <doctest.h>

#include "bubblespec/errors.hpp"
#include "bubblespec/profile.hpp"

#include <cmath>
#include <numbers>

using namespace bubblespec;

namespace {

// h0 * int_0^inf 2y dy / sqrt((1+y^2)^{2(n-1)} - 1), x = 1 + y^2; Simpson plus the power-law tail.
double half_length_oracle(int n)
{
    auto f = [n](double y) {
        if (y == 0.0) return 2.0 / std::sqrt(2.0 * (n - 1));
        return 2.0 * y / std::sqrt(std::pow(1.0 + y * y, 2 * (n - 1)) - 1.0);
    };
    auto simpson = [&](double a, double b, int k) {
        const double h = (b - a) / k;
        double s = f(a) + f(b);
        for (int i = 1; i < k; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
        return s * h / 3.0;
    };
    const double Y = 2000.0;
    double v = simpson(0.0, 4.0, 40000) + simpson(4.0, 100.0, 96000) + simpson(100.0, Y, 190000);
    // tail: 2 y^{3-2n} (1 - (n-1)/y^2)
    v += 2.0 * std::pow(Y, 4 - 2 * n) / (2 * n - 4) - 2.0 * (n - 1) * std::pow(Y, 2 - 2 * n) / (2 * n - 2);
    return v;
}

double fd1(const Catenoid& c, double s, double d)
{
    return (-c.h(s + 2 * d) + 8 * c.h(s + d) - 8 * c.h(s - d) + c.h(s - 2 * d)) / (12 * d);
}

double fd2(const Catenoid& c, double s, double d)
{
    return (-c.h(s + 2 * d) + 16 * c.h(s + d) - 30 * c.h(s) + 16 * c.h(s - d) - c.h(s - 2 * d)) / (12 * d * d);
}

}  // namespace

TEST_CASE("unit sphere areas")
{
    CHECK(unit_sphere_area(1) == doctest::Approx(2 * std::numbers::pi));
    CHECK(unit_sphere_area(2) == doctest::Approx(4 * std::numbers::pi));
    CHECK(unit_sphere_area(3) == doctest::Approx(2 * std::numbers::pi * std::numbers::pi));
}

TEST_CASE("enum round trips")
{
    for (auto k : {ProfileKind::catenoid, ProfileKind::sphere, ProfileKind::delaunay})
        CHECK(parse_profile_kind(to_string(k)) == k);
    for (auto b : {BoundaryCondition::dirichlet, BoundaryCondition::natural, BoundaryCondition::periodic})
        CHECK(parse_boundary_condition(to_string(b)) == b);
    CHECK_THROWS_AS(parse_profile_kind("torus"), std::invalid_argument);
}

TEST_CASE("catenoid half-length against quadrature")
{
    // frozen from half_length_oracle
    CHECK(Catenoid(3, 1.0).s_infinity() == doctest::Approx(1.3110287771).epsilon(1e-9));
    CHECK(Catenoid(4, 1.0).s_infinity() == doctest::Approx(0.7010910527).epsilon(1e-9));
    for (int n : {3, 4, 5})
        CHECK(Catenoid(n, 1.0).s_infinity() == doctest::Approx(half_length_oracle(n)).epsilon(1e-8));
    // s_inf scales with h0
    CHECK(Catenoid(3, 2.5).s_infinity() == doctest::Approx(2.5 * 1.3110287771).epsilon(1e-9));
}

TEST_CASE("catenoid parametrization")
{
    const Catenoid c(3, 1.0);
    CHECK(c.a() == doctest::Approx(1.0));
    CHECK(c.h(0.0) == doctest::Approx(1.0));
    CHECK(c.dh(0.0) == doctest::Approx(0.0));
    for (double s : {-1.2, -0.5, 0.1, 0.7, 1.3}) {
        CHECK(c.s_of_t(c.t_of_s(s)) == doctest::Approx(s).epsilon(1e-13));
        // first-order equation h'^2 = a h^{2(n-1)} - 1
        const double h = c.h(s);
        CHECK(c.dh(s) * c.dh(s) == doctest::Approx(std::pow(h, 4) - 1.0).epsilon(1e-10));
    }
    CHECK_THROWS_AS(c.t_of_s(1.32), TruncationError);
    try {
        c.t_of_s(2.0);
    } catch (const TruncationError& e) {
        CHECK(e.s_inf() == doctest::Approx(1.3110287771));
    }
}

TEST_CASE("catenoid minimality by finite differences")
{
    for (int n : {3, 4}) {
        const Catenoid c(n, 1.0);
        for (double frac : {0.0, 0.3, 0.6, 0.85}) {
            const double s = frac * c.s_infinity();
            const double d = 2e-3 * c.s_infinity();
            const double h = c.h(s);
            const double hp = fd1(c, s, d);
            const double hpp = fd2(c, s, d);
            const double w = std::sqrt(1.0 + hp * hp);
            const double H = -hpp / (w * w * w) + (n - 1) / (h * w);
            CHECK(std::abs(H) < 1e-8 * std::max(1.0, hpp));
        }
    }
}

TEST_CASE("catenoid profile sampling")
{
    const auto p = catenoid_profile(3, 1.0, 30.0, 400);
    CHECK(p.size() == 400);
    CHECK(p.max_radius() == doctest::Approx(30.0).epsilon(1e-10));
    CHECK(p.mc_residual < 1e-8);
    for (std::size_t i = 0; i < p.size(); ++i) {
        CHECK(p.s[i] == doctest::Approx(-p.s[p.size() - 1 - i]));
        CHECK(p.h[i] >= 1.0);
    }
    // |A|^2 = n(n-1) a^2 / h^{2n} on the catenoid
    for (std::size_t i = 0; i < p.size(); i += 37)
        CHECK(p.a2[i] == doctest::Approx(6.0 / std::pow(p.h[i], 6)).epsilon(1e-10));
    // the dual cells tile the sampled interval
    double total = 0.0;
    for (double c : p.cell_lengths()) total += c;
    CHECK(total == doctest::Approx(p.s.back() - p.s.front()));

    const auto q = catenoid_profile_axial(4, 1.0, 0.5, 200);
    CHECK(q.s.back() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS(catenoid_profile_axial(4, 1.0, 0.8, 200), TruncationError);
    CHECK_THROWS_AS(catenoid_profile(3, 1.0, 30.0, 8), std::invalid_argument);
    CHECK_THROWS_AS(catenoid_profile(3, -1.0, 30.0, 100), std::invalid_argument);
    CHECK_THROWS_AS(catenoid_profile(2, 1.0, 30.0, 100), std::invalid_argument);
}

TEST_CASE("catenoid grid choices")
{
    const auto uniform = catenoid_profile(3, 1.0, 20.0, 101, {0.0, 1.0, 0.0});
    const auto graded = catenoid_profile(3, 1.0, 20.0, 101);
    CHECK(uniform.s[50] == doctest::Approx(0.0));
    CHECK(graded.s[50] == doctest::Approx(0.0));
    CHECK(uniform.s.back() == doctest::Approx(graded.s.back()).epsilon(1e-12));
    // graded grid is finer at the neck
    CHECK(graded.s[51] - graded.s[50] < uniform.s[51] - uniform.s[50]);
}

TEST_CASE("sphere profile")
{
    const auto p = sphere_profile(3, 2.0, 64);
    CHECK(p.mean_curvature == doctest::Approx(1.5));
    CHECK(p.mc_residual < 1e-12);
    for (std::size_t i = 0; i < p.size(); ++i) CHECK(p.a2[i] == doctest::Approx(3.0 / 4.0));
    double area = 0.0;
    for (double m : p.measure()) area += m;
    // lumped area converges to |S^3| r^3 at second order
    CHECK(area == doctest::Approx(2 * std::numbers::pi * std::numbers::pi * 8.0).epsilon(1e-3));
    CHECK_THROWS_AS(sphere_profile(3, 0.0, 64), std::invalid_argument);
}

TEST_CASE("delaunay radii")
{
    CHECK(sphere_radius_for(3, 3.0) == doctest::Approx(1.0));
    CHECK(cylinder_radius_for(3, 3.0) == doctest::Approx(2.0 / 3.0));
}

namespace {

// independent RK4 on the conformal system up to the first return of the angle to zero
struct Orbit {
    double t_half;
    double bulge;
    double z_half;
};

Orbit rk4_half_period(int n, double H, double neck)
{
    auto rhs = [&](const std::array<double, 3>& y) {
        // y = (z, h, psi)
        return std::array<double, 3>{y[1] * std::cos(y[2]), y[1] * std::sin(y[2]),
                                     (n - 1) * std::cos(y[2]) - H * y[1]};
    };
    std::array<double, 3> y{0.0, neck, 0.0};
    const double dt = 1e-4;
    double t = 0.0;
    for (;;) {
        auto k1 = rhs(y);
        std::array<double, 3> a, b, c;
        for (int i = 0; i < 3; ++i) a[i] = y[i] + 0.5 * dt * k1[i];
        auto k2 = rhs(a);
        for (int i = 0; i < 3; ++i) b[i] = y[i] + 0.5 * dt * k2[i];
        auto k3 = rhs(b);
        for (int i = 0; i < 3; ++i) c[i] = y[i] + dt * k3[i];
        auto k4 = rhs(c);
        std::array<double, 3> next;
        for (int i = 0; i < 3; ++i) next[i] = y[i] + dt / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
        if (t > 0.0 && next[2] <= 0.0) {
            // linear interpolation of the crossing
            const double f = y[2] / (y[2] - next[2]);
            return {t + f * dt, y[1] + f * (next[1] - y[1]), y[0] + f * (next[0] - y[0])};
        }
        y = next;
        t += dt;
    }
}

}  // namespace

TEST_CASE("delaunay profile against an independent integrator")
{
    const double neck = 0.5;
    const auto p = delaunay_profile(3, 3.0, neck, 2000);
    CHECK(p.periodic);
    CHECK(p.mc_residual <= 1e-6);
    const auto o = rk4_half_period(3, 3.0, neck);
    CHECK(p.params.at("t_half") == doctest::Approx(o.t_half).epsilon(1e-6));
    CHECK(p.params.at("max_radius") == doctest::Approx(o.bulge).epsilon(1e-6));
    CHECK(p.params.at("period") == doctest::Approx(2.0 * o.z_half).epsilon(1e-6));
    CHECK(p.h.front() == doctest::Approx(neck));

    // the conserved quantity h^{n-1} cos psi - (H/n) h^n at neck and bulge
    const double q_neck = neck * neck - neck * neck * neck;
    const double b = o.bulge;
    CHECK(b * b - b * b * b == doctest::Approx(q_neck).epsilon(1e-6));
}

TEST_CASE("delaunay errors")
{
    CHECK_THROWS_AS(delaunay_profile(3, 3.0, 0.7, 200), std::invalid_argument);
    CHECK_THROWS_AS(delaunay_profile(3, 3.0, 0.0, 200), std::invalid_argument);
    CHECK_THROWS_AS(delaunay_profile(3, -1.0, 0.3, 200), std::invalid_argument);
    try {
        delaunay_profile(3, 3.0, 1e-4, 64);
        FAIL("expected a refinement request");
    } catch (const RefinementNeeded& e) {
        CHECK(e.suggested_mesh() > 64);
        CHECK_NOTHROW(delaunay_profile(3, 3.0, 1e-4, e.suggested_mesh()));
    }
}
