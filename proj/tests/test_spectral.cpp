#include <doctest.h>

#include "bubblespec/spectral.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

using namespace bubblespec;

namespace {

// Dense generalized eigenvalues of the assembled pencil.
Eigen::VectorXd dense_spectrum(const ModeProblem& mp)
{
    const auto m = static_cast<Eigen::Index>(mp.size());
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(m, m);
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        K(i, i) = mp.diag[i];
        M(i, i) = mp.mass[i];
        if (i + 1 < m) K(i, i + 1) = K(i + 1, i) = mp.off[i];
    }
    if (mp.bc == BoundaryCondition::periodic && m > 2) K(m - 1, 0) = K(0, m - 1) = mp.corner;
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(K, M);
    return es.eigenvalues();
}

void check_against_dense(const ModeProblem& mp)
{
    const auto ev = dense_spectrum(mp);
    const std::size_t k_max = std::min<std::size_t>(6, mp.size());
    const auto ours = smallest_eigenvalues(mp, k_max);
    for (std::size_t k = 0; k < k_max; ++k)
        CHECK(ours[k] == doctest::Approx(ev[static_cast<Eigen::Index>(k)]).epsilon(1e-9).scale(1.0));
    for (Eigen::Index k = 0; k + 1 < ev.size() && k < 8; ++k) {
        const double mid = 0.5 * (ev[k] + ev[k + 1]);
        if (ev[k + 1] - ev[k] > 1e-8 * (1.0 + std::abs(mid)))
            CHECK(count_below(mp, mid) == static_cast<std::size_t>(k + 1));
    }
}

double sphere_error(int mesh)
{
    const auto p = sphere_profile(3, 1.0, mesh);
    const auto mp = assemble_mode(p, nullptr, 0, BoundaryCondition::natural);
    return std::abs(eigenvalue(mp, 2) - 5.0);
}

}  // namespace

TEST_CASE("harmonic multiplicities")
{
    CHECK(mode_multiplicity(3, 0) == 1);
    CHECK(mode_multiplicity(3, 1) == 3);
    CHECK(mode_multiplicity(3, 2) == 5);
    CHECK(mode_multiplicity(4, 1) == 4);
    CHECK(mode_multiplicity(4, 2) == 9);
    CHECK(mode_multiplicity(5, 3) == 30);
}

TEST_CASE("sturm counts and bisection match a dense solver")
{
    const auto cat = catenoid_profile(3, 1.0, 10.0, 60);
    const auto w = weight_random_piecewise(cat, 3);
    for (int l : {0, 1, 2})
        for (auto bc : {BoundaryCondition::dirichlet, BoundaryCondition::natural}) {
            check_against_dense(assemble_mode(cat, nullptr, l, bc));
            check_against_dense(assemble_mode(cat, &w, l, bc));
        }
    const auto del = delaunay_profile(3, 3.0, 0.3, 90);
    for (int l : {0, 1}) check_against_dense(assemble_mode(del, nullptr, l, BoundaryCondition::periodic));
    const auto sph = sphere_profile(4, 1.5, 40);
    check_against_dense(assemble_mode(sph, nullptr, 0, BoundaryCondition::natural));
}

TEST_CASE("eigenvectors")
{
    const auto p = sphere_profile(3, 1.0, 400);
    const auto mp = assemble_mode(p, nullptr, 0, BoundaryCondition::natural);
    const double lam = eigenvalue(mp, 0);
    const auto v = eigenvector(mp, lam);
    CHECK(rayleigh_quotient(mp, v) == doctest::Approx(lam).epsilon(1e-10));
    const auto Kv = apply_stiffness(mp, v);
    double res = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) res = std::max(res, std::abs(Kv[i] - lam * mp.mass[i] * v[i]));
    CHECK(res < 1e-8);
    double norm = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) norm += mp.mass[i] * v[i] * v[i];
    CHECK(norm == doctest::Approx(1.0));
}

TEST_CASE("unit sphere spectrum")
{
    const auto p = sphere_profile(3, 1.0, 4000);
    const auto m0 = assemble_mode(p, nullptr, 0, BoundaryCondition::natural);
    const auto e0 = smallest_eigenvalues(m0, 3);
    CHECK(e0[0] == doctest::Approx(-3.0).epsilon(1e-4).scale(1.0));
    CHECK(std::abs(e0[1]) < 1e-4);
    CHECK(e0[2] == doctest::Approx(5.0).epsilon(1e-4).scale(1.0));
    for (int l : {1, 2}) {
        const auto ml = assemble_mode(p, nullptr, l, BoundaryCondition::natural);
        CHECK(std::abs(eigenvalue(ml, 0) - (l * (l + 2) - 3.0)) < 1e-4);
    }

    SurfaceSpec spec;
    spec.kind = ProfileKind::sphere;
    spec.n = 3;
    spec.bc = BoundaryCondition::natural;
    const auto r = index_nullity(spec, WeightRecipe::unit(), {{0.0, 2000}, {0.0, 4000}});
    CHECK(r.total_index == 1);
    CHECK(r.total_nullity == 4);
    CHECK(r.converged);
    CHECK(r.zero_tol_defaulted);
}

TEST_CASE("second-order eigenvalue convergence")
{
    const double e1 = sphere_error(250);
    const double e2 = sphere_error(500);
    const double e3 = sphere_error(1000);
    CHECK(std::log2(e1 / e2) >= 1.8);
    CHECK(std::log2(e2 / e3) >= 1.8);
}

TEST_CASE("catenoid index")
{
    SurfaceSpec spec;
    spec.kind = ProfileKind::catenoid;
    spec.n = 3;
    const auto r = index_nullity(spec, WeightRecipe::unit(), {{50.0, 1000}});
    CHECK(r.total_index == 1);
    CHECK(r.per_mode.front().neg == 1);
    CHECK_FALSE(r.converged);  // one entry cannot establish convergence

    spec.n = 4;
    const auto r4 = index_nullity(spec, WeightRecipe::unit(), {{30.0, 2000}, {60.0, 2000}, {30.0, 4000}});
    CHECK(r4.total_index == 1);
    CHECK(r4.total_nullity == 4);
    CHECK(r4.converged);
}

TEST_CASE("weighted catenoid zero modes")
{
    SurfaceSpec spec;
    spec.kind = ProfileKind::catenoid;
    for (int n : {3, 4})
        for (auto bc : {BoundaryCondition::dirichlet, BoundaryCondition::natural}) {
            spec.n = n;
            spec.bc = bc;
            IndexOptions opt;
            opt.zero_tol = 1e-3;
            const auto r = index_nullity(spec, WeightRecipe::bubble(4.0), {{60.0, 2000}}, opt);
            REQUIRE(r.per_mode.size() > 1);
            CHECK(r.per_mode[1].zero * r.per_mode[1].multiplicity == n);
            // natural ends also carry an l = 0 eigenvalue tending to zero with S
            if (bc == BoundaryCondition::dirichlet) CHECK(r.total_nullity == n);
            CHECK(r.total_index == 1);
        }
}

TEST_CASE("weighted and unweighted nonpositive dimensions agree")
{
    const auto sph = sphere_profile(3, 1.0, 2000);
    const auto cat = catenoid_profile(3, 1.0, 40.0, 2000);
    for (std::uint64_t k = 0; k < 10; ++k) {
        const auto ws = weight_random_piecewise(sph, 1000 + k);
        CHECK(compare_weighted_unweighted(sph, ws, BoundaryCondition::natural, 1e-6).equal());
        const auto wc = weight_random_piecewise(cat, 1000 + k);
        CHECK(compare_weighted_unweighted(cat, wc, BoundaryCondition::dirichlet, 1e-6).equal());
    }
}

TEST_CASE("certified positive modes")
{
    const auto p = catenoid_profile(3, 1.0, 30.0, 500);
    CHECK(assemble_mode(p, nullptr, 8, BoundaryCondition::dirichlet).certified_positive);
    CHECK_FALSE(assemble_mode(p, nullptr, 0, BoundaryCondition::dirichlet).certified_positive);
}

TEST_CASE("surface spec validation")
{
    SurfaceSpec s;
    s.kind = ProfileKind::catenoid;
    s.n = 2;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s.n = 3;
    s.bc = BoundaryCondition::periodic;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s.kind = ProfileKind::delaunay;
    s.neck = 0.3;
    CHECK_NOTHROW(s.validate());
    CHECK_THROWS_AS(index_nullity(s, WeightRecipe::unit(), {}), std::invalid_argument);
}
