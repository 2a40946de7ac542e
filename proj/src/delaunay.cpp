#include "bubblespec/errors.hpp"
#include "bubblespec/profile.hpp"

#include <boost/numeric/odeint.hpp>

#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace bubblespec {

namespace {

using State = std::array<double, 4>;  // z, h, psi, arclength

// Conformal parametrization: d/dt = h d/dsigma removes the 1/h singularity.
struct DelaunayRhs {
    int n;
    double H;
    void operator()(const State& x, State& dx, double) const
    {
        const double h = x[1];
        const double c = std::cos(x[2]);
        dx[0] = h * c;
        dx[1] = h * std::sin(x[2]);
        dx[2] = (n - 1) * c - H * h;
        dx[3] = h;
    }
};

auto make_stepper(double tol)
{
    using namespace boost::numeric::odeint;
    return make_dense_output(tol, tol, runge_kutta_dopri5<State>());
}

}  // namespace

ProfileCurve delaunay_profile(int n, double H, double neck, int mesh, const DelaunayOptions& options)
{
    if (n < 3) throw std::invalid_argument("delaunay: n must be >= 3");
    if (!(H > 0.0)) throw std::invalid_argument("delaunay: H must be positive");
    const double r_cyl = cylinder_radius_for(n, H);
    if (!(neck > 0.0) || !(neck < r_cyl)) {
        std::ostringstream msg;
        msg << "delaunay: neck must lie strictly between 0 and the cylinder radius " << r_cyl;
        throw std::invalid_argument(msg.str());
    }
    if (mesh < 16) throw std::invalid_argument("delaunay: mesh must be >= 16");
    if (mesh % 2 != 0) ++mesh;

    const DelaunayRhs rhs{n, H};
    const State start{0.0, neck, 0.0, 0.0};

    // half period: psi leaves 0 upward at the neck and returns to 0 at the bulge
    double t_half = 0.0;
    {
        auto stepper = make_stepper(options.ode_tol);
        stepper.initialize(start, 0.0, 1e-3);
        for (;;) {
            const auto [t0, t1] = stepper.do_step(rhs);
            if (stepper.current_state()[2] <= 0.0 && t1 > 0.0) {
                State x;
                double lo = t0;
                double hi = t1;
                for (int k = 0; k < 200 && hi - lo > 1e-15 * hi; ++k) {
                    const double mid = 0.5 * (lo + hi);
                    stepper.calc_state(mid, x);
                    (x[2] > 0.0 ? lo : hi) = mid;
                }
                t_half = 0.5 * (lo + hi);
                break;
            }
            if (t1 > options.max_conformal_time) {
                throw ShootingError("delaunay: angle did not return to zero within the conformal time limit",
                                    stepper.current_state()[2]);
            }
        }
    }

    const double dt = 2.0 * t_half / mesh;
    if (dt > options.max_step) {
        int suggested = static_cast<int>(std::ceil(2.0 * t_half / options.max_step));
        suggested += suggested % 2;
        std::ostringstream msg;
        msg << "delaunay: neck " << neck << " needs mesh >= " << suggested;
        throw RefinementNeeded(msg.str(), suggested);
    }

    const auto half = static_cast<std::size_t>(mesh / 2);
    std::vector<double> times(half + 1);
    for (std::size_t k = 0; k <= half; ++k) times[k] = dt * static_cast<double>(k);
    times[half] = t_half;
    std::vector<State> states;
    states.reserve(half + 1);
    {
        auto stepper = make_stepper(options.ode_tol);
        State x = start;
        boost::numeric::odeint::integrate_times(stepper, rhs, x, times.begin(), times.end(), 1e-3,
                                                [&](const State& y, double) { states.push_back(y); });
    }
    if (states.size() != half + 1) throw ShootingError("delaunay: dense output sampling failed", 0.0);

    const auto m = static_cast<std::size_t>(mesh);
    ProfileCurve p;
    p.n = n;
    p.kind = ProfileKind::delaunay;
    p.periodic = true;
    p.mean_curvature = H;
    p.s.resize(m);
    p.z.resize(m);
    p.h.resize(m);
    p.dz.resize(m);
    p.dh.resize(m);
    p.sqrt_g.resize(m);
    const State& bulge = states[half];
    for (std::size_t k = 0; k < m; ++k) {
        State x;
        if (k <= half) {
            x = states[k];
        } else {
            const State& y = states[m - k];
            x = {2.0 * bulge[0] - y[0], y[1], -y[2], 2.0 * bulge[3] - y[3]};
        }
        p.s[k] = x[3];
        p.z[k] = x[0];
        p.h[k] = x[1];
        p.dz[k] = std::cos(x[2]);
        p.dh[k] = std::sin(x[2]);
        p.sqrt_g[k] = std::pow(x[1], n - 1);
    }
    p.s_lo = 0.0;
    p.s_hi = 2.0 * bulge[3];
    p.s_inf = bulge[3];
    p.a2 = second_fundamental(p);

    // first integral h^{n-1} cos(psi) - (H/n) h^n is constant exactly when H is
    const double q0 = std::pow(neck, n - 1) - H / n * std::pow(neck, n);
    double res = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        const double h_eff = n * (std::pow(p.h[k], n - 1) * p.dz[k] - q0) / std::pow(p.h[k], n);
        res = std::max(res, std::abs(h_eff - H));
    }
    p.mc_residual = res;
    p.params = {{"H", H},
                {"neck", neck},
                {"period", 2.0 * bulge[0]},
                {"max_radius", bulge[1]},
                {"t_half", t_half}};
    validate(p);
    return p;
}

}  // namespace bubblespec
