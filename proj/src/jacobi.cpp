#include "bubblespec/jacobi.hpp"

#include <cmath>
#include <stdexcept>

namespace bubblespec {

std::string to_string(Membership m)
{
    switch (m) {
    case Membership::in_L2_omega: return "in_L2_omega";
    case Membership::diverges: return "diverges";
    case Membership::inconclusive: return "inconclusive";
    }
    return "unknown";
}

std::vector<double> JacobiField::harmonic() const
{
    std::vector<double> c(static_cast<std::size_t>(n), 0.0);
    if (kind == JacobiKind::translation && index <= n) c[static_cast<std::size_t>(index - 1)] = 1.0;
    if (kind == JacobiKind::rotation) {
        const auto dim = static_cast<std::size_t>(n + 1);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = generator[i * dim + (dim - 1)];
    }
    return c;
}

double JacobiField::harmonic_norm() const
{
    if (mode == 0) return 1.0;
    double s = 0.0;
    for (double v : harmonic()) s += v * v;
    return std::sqrt(s);
}

JacobiField translation_field(int n, double h0, int i)
{
    if (i < 1 || i > n + 1) throw std::invalid_argument("translation index must lie in 1..n+1");
    JacobiField f;
    f.kind = JacobiKind::translation;
    f.n = n;
    f.h0 = h0;
    f.index = i;
    f.mode = i <= n ? 1 : 0;
    f.name = "f_" + std::to_string(i);
    return f;
}

JacobiField dilation_field(int n, double h0)
{
    JacobiField f;
    f.kind = JacobiKind::dilation;
    f.n = n;
    f.h0 = h0;
    f.mode = 0;
    f.name = "f_d";
    return f;
}

JacobiField rotation_field(int n, double h0, std::vector<double> generator)
{
    const auto dim = static_cast<std::size_t>(n + 1);
    if (generator.size() != dim * dim) throw std::invalid_argument("rotation generator has the wrong size");
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            if (std::abs(generator[i * dim + j] + generator[j * dim + i]) > 1e-14)
                throw std::invalid_argument("rotation generator must be antisymmetric");
    JacobiField f;
    f.kind = JacobiKind::rotation;
    f.n = n;
    f.h0 = h0;
    f.generator = std::move(generator);
    f.mode = 1;
    f.name = "rotation";
    if (f.harmonic_norm() == 0.0) throw std::invalid_argument("horizontal rotations give the zero field");
    return f;
}

JacobiField rotation_field(int n, double h0, int i)
{
    if (i < 1 || i > n) throw std::invalid_argument("rotation index must lie in 1..n");
    const auto dim = static_cast<std::size_t>(n + 1);
    std::vector<double> R(dim * dim, 0.0);
    R[static_cast<std::size_t>(i - 1) * dim + dim - 1] = 1.0;
    R[(dim - 1) * dim + static_cast<std::size_t>(i - 1)] = -1.0;
    auto f = rotation_field(n, h0, std::move(R));
    f.name = "rotation_" + std::to_string(i);
    return f;
}

double radial_part(const JacobiField& f, double s, double h, double dh)
{
    const double W = std::sqrt(1.0 + dh * dh);
    switch (f.kind) {
    case JacobiKind::translation: return f.index <= f.n ? 1.0 / W : -dh / W;
    case JacobiKind::dilation: return (h - s * dh) / W;
    case JacobiKind::rotation: return (s + h * dh) / W;
    }
    return 0.0;
}

double field_value(const JacobiField& f, double s, std::span<const double> w)
{
    if (w.size() != static_cast<std::size_t>(f.n)) throw std::invalid_argument("direction w must have n components");
    const Catenoid cat(f.n, f.h0);
    const double t = cat.t_of_s(s);
    const double g = radial_part(f, s, cat.h_of_t(t), cat.dh_ds_of_t(t));
    if (f.mode == 0) return g;
    const auto c = f.harmonic();
    double y = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) y += c[i] * w[i];
    return g * y;
}

std::vector<double> sample_radial(const JacobiField& f, const ProfileCurve& p)
{
    if (p.kind != ProfileKind::catenoid || p.n != f.n) throw std::invalid_argument("field and profile do not match");
    std::vector<double> g(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) g[i] = radial_part(f, p.s[i], p.h[i], p.dh[i]);
    return g;
}

double residual_of_samples(const ProfileCurve& p, int l, const std::vector<double>& g)
{
    const auto pr = assemble_mode(p, nullptr, l, BoundaryCondition::natural);
    const auto kg = apply_stiffness(pr, g);
    double sup = 0.0;
    for (std::size_t i = 1; i + 1 < g.size(); ++i) sup = std::max(sup, std::abs(kg[i]) / pr.mass[i]);
    return sup;
}

double residual(const JacobiField& f, const ProfileCurve& p)
{
    return residual_of_samples(p, f.mode, sample_radial(f, p)) * f.harmonic_norm();
}

double predicted_growth_rate(const JacobiField& f)
{
    int k = 0;
    if (f.kind == JacobiKind::translation && f.index <= f.n) k = -(f.n - 1);
    if (f.kind == JacobiKind::rotation) k = 1;
    return f.n - 2 + 2.0 * k;
}

namespace {

double angular_integral(const JacobiField& f)
{
    const double area = unit_sphere_area(f.n - 1);
    if (f.mode == 0) return area;
    const double c = f.harmonic_norm();
    return c * c * area / f.n;
}

}  // namespace

MembershipResult classify_membership(const JacobiField& f, const std::vector<double>& truncations,
                                     const MembershipOptions& opt)
{
    if (truncations.size() < 3) throw std::invalid_argument("membership: need at least three truncations");
    MembershipResult r;
    r.truncations = truncations;
    r.predicted_rate = predicted_growth_rate(f);
    const double ang = angular_integral(f);
    for (double S : truncations) {
        const auto p = catenoid_profile(f.n, f.h0, S, opt.mesh);
        const auto w = weight_bubble(p, opt.R);
        const auto g = sample_radial(f, p);
        const auto cell = p.cell_lengths();
        double I = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) I += g[i] * g[i] * w.samples[i] * p.sqrt_g[i] * cell[i];
        r.integrals.push_back(I * ang);
    }
    const std::size_t k = r.integrals.size();
    const double I1 = r.integrals[k - 3];
    const double I2 = r.integrals[k - 2];
    const double I3 = r.integrals[k - 1];
    r.relative_increment = std::abs(I3 - I2) / std::abs(I3);
    const double q = truncations[k - 1] / truncations[k - 2];
    if (I3 - I2 > 0.0 && I2 - I1 > 0.0) r.fitted_rate = std::log((I3 - I2) / (I2 - I1)) / std::log(q);
    if (r.relative_increment < opt.cauchy_tol) {
        r.membership = Membership::in_L2_omega;
    } else if (r.fitted_rate > 0.0 && std::abs(r.fitted_rate - r.predicted_rate) <= opt.rate_tol) {
        r.membership = Membership::diverges;
    } else {
        r.membership = Membership::inconclusive;
    }
    return r;
}

double translation_l2_norm(int i, const ProfileCurve& p)
{
    if (p.kind != ProfileKind::catenoid) throw std::invalid_argument("translation norm needs a catenoid profile");
    const auto f = translation_field(p.n, p.params.at("h0"), i);
    if (f.mode != 1) throw std::invalid_argument("translation norm is defined for horizontal directions");
    const auto g = sample_radial(f, p);
    const auto cell = p.cell_lengths();
    double I = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) I += g[k] * g[k] * p.sqrt_g[k] * cell[k];
    // the integrand is sampled at the ends and carried to s = +-s_inf
    const double lo = g.front() * g.front() * p.sqrt_g.front();
    const double hi = g.back() * g.back() * p.sqrt_g.back();
    I += lo * (p.s.front() + p.s_inf) + hi * (p.s_inf - p.s.back());
    return I * angular_integral(f);
}

double translation_l2_closed_form(int n, double h0)
{
    const Catenoid cat(n, h0);
    return 2.0 * cat.s_infinity() / std::sqrt(cat.a()) * unit_sphere_area(n - 1) / n;
}

ZeroModeCertificate certify_translation_modes(const ProfileCurve& p, const Weight* weight, BoundaryCondition bc,
                                              double zero_tol)
{
    ZeroModeCertificate c;
    c.bc = bc;
    c.zero_tol = zero_tol;
    const auto pr = assemble_mode(p, weight, 1, bc);
    c.multiplicity = pr.multiplicity;
    const auto eigs = smallest_eigenvalues(pr, 2);
    c.eigenvalue = eigs[0];
    c.next_eigenvalue = eigs[1];
    const auto counts = count_nonpositive(pr, zero_tol);
    c.zero_modes = counts.zero * pr.multiplicity;

    const auto v = eigenvector(pr, c.eigenvalue);
    const auto g = sample_radial(translation_field(p.n, p.params.at("h0"), 1), p);
    double vg = 0.0;
    double gg = 0.0;
    double vv = 0.0;
    for (std::size_t k = 0; k < pr.size(); ++k) {
        const double gk = g[pr.nodes[k]];
        vg += v[k] * gk * pr.mass[k];
        gg += gk * gk * pr.mass[k];
        vv += v[k] * v[k] * pr.mass[k];
    }
    c.correlation = std::abs(vg) / std::sqrt(gg * vv);
    return c;
}

}  // namespace bubblespec
