#pragma once

#include "bubblespec/profile.hpp"
#include "bubblespec/weights.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bubblespec {

int mode_multiplicity(int n, int l);

// K x = lambda M x for one spherical-harmonic degree. K is tridiagonal,
// plus a corner coupling for periodic problems; M is diagonal.
struct ModeProblem {
    int l = 0;
    int multiplicity = 1;
    BoundaryCondition bc = BoundaryCondition::dirichlet;
    std::vector<std::size_t> nodes;  // profile sample index of each unknown
    std::vector<double> diag;
    std::vector<double> off;  // off[i] couples unknowns i and i+1
    double corner = 0.0;      // couples the last and first unknowns (periodic)
    std::vector<double> mass;
    bool certified_positive = false;  // potential q_l >= 0 at every unknown

    std::size_t size() const { return diag.size(); }
};

// weight empty means omega = 1.
ModeProblem assemble_mode(const ProfileCurve& profile, std::span<const double> weight, int l, BoundaryCondition bc);
ModeProblem assemble_mode(const ProfileCurve& profile, const Weight* weight, int l, BoundaryCondition bc);

// Number of eigenvalues strictly below sigma (inertia of K - sigma M).
std::size_t count_below(const ModeProblem& problem, double sigma);

// k-th smallest eigenvalue, k = 0, 1, ... by bisection.
double eigenvalue(const ModeProblem& problem, std::size_t k);
std::vector<double> smallest_eigenvalues(const ModeProblem& problem, std::size_t count);

// M-normalized eigenvector by inverse iteration near lambda.
std::vector<double> eigenvector(const ModeProblem& problem, double lambda);
double rayleigh_quotient(const ModeProblem& problem, const std::vector<double>& v);
std::vector<double> apply_stiffness(const ModeProblem& problem, const std::vector<double>& v);

struct NonpositiveCount {
    int neg = 0;
    int zero = 0;
    std::vector<double> smallest;
    bool tol_warning = false;
};

// neg: eigenvalues below -zero_tol; zero: eigenvalues in [-zero_tol, zero_tol).
NonpositiveCount count_nonpositive(const ModeProblem& problem, double zero_tol, double error_estimate = 0.0,
                                   std::size_t diagnostics = 4);

struct SurfaceSpec {
    ProfileKind kind = ProfileKind::catenoid;
    int n = 3;
    double h0 = 1.0;       // catenoid
    double radius = 1.0;   // sphere
    double H = 3.0;        // delaunay
    double neck = 0.3;     // delaunay
    BoundaryCondition bc = BoundaryCondition::dirichlet;
    double ricci = 0.0;

    void validate() const;
    // S is ignored for compact kinds.
    ProfileCurve build(double S, int mesh) const;
};

struct SweepEntry {
    double S = 0.0;
    int mesh = 0;
};

struct WeightRecipe {
    std::string label = "unit";
    // Empty means omega = 1.
    std::function<Weight(const ProfileCurve&)> make;

    static WeightRecipe unit();
    static WeightRecipe bubble(double R);
    static WeightRecipe constant(double c);
    static WeightRecipe random_piecewise(std::uint64_t seed);
};

struct ModeCount {
    int l = 0;
    int multiplicity = 1;
    int neg = 0;
    int zero = 0;
    std::vector<double> smallest;
    bool certified_positive = false;
};

struct SweepResult {
    double S = 0.0;
    int mesh = 0;
    std::vector<ModeCount> modes;
    int index = 0;
    int nullity = 0;
};

struct IndexReport {
    std::string surface;
    int n = 3;
    std::string weight;
    BoundaryCondition bc = BoundaryCondition::dirichlet;
    std::vector<ModeCount> per_mode;  // final sweep entry
    int total_index = 0;
    int total_nullity = 0;
    double zero_tol = 0.0;
    bool zero_tol_defaulted = false;
    double error_estimate = 0.0;
    bool tol_warning = false;
    double truncation = 0.0;
    int mesh = 0;
    bool converged = false;
    std::vector<SweepResult> sweep;
};

struct IndexOptions {
    std::optional<double> zero_tol;
    std::size_t diagnostics = 4;
    int max_l = 64;
};

IndexReport index_nullity(const SurfaceSpec& spec, const WeightRecipe& weight, const std::vector<SweepEntry>& sweep,
                          const IndexOptions& options = {});

struct EquivalenceResult {
    int dim_weighted = 0;
    int dim_unweighted = 0;
    bool equal() const { return dim_weighted == dim_unweighted; }
};

// Dimensions of the nonpositive eigenspaces (eigenvalues below zero_tol) summed over modes.
EquivalenceResult compare_weighted_unweighted(const ProfileCurve& profile, const Weight& weight, BoundaryCondition bc,
                                              double zero_tol);

}  // namespace bubblespec
