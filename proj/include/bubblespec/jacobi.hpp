#pragma once

#include "bubblespec/profile.hpp"
#include "bubblespec/spectral.hpp"
#include "bubblespec/weights.hpp"

#include <span>
#include <string>
#include <vector>

namespace bubblespec {

enum class JacobiKind { translation, dilation, rotation };
enum class Membership { in_L2_omega, diverges, inconclusive };

std::string to_string(Membership m);

struct JacobiField {
    JacobiKind kind = JacobiKind::translation;
    int n = 3;
    double h0 = 1.0;
    int index = 1;                  // translation direction e_index, 1..n+1
    std::vector<double> generator;  // rotation: (n+1)x(n+1) antisymmetric, row-major
    int mode = 1;                   // spherical-harmonic degree
    std::string name;

    // Coefficients c with f = g(s) * sum_i c_i w_i for l = 1 fields.
    std::vector<double> harmonic() const;
    double harmonic_norm() const;
};

JacobiField translation_field(int n, double h0, int i);
JacobiField dilation_field(int n, double h0);
JacobiField rotation_field(int n, double h0, std::vector<double> generator);
// Generator with R_{i,n+1} = 1 = -R_{n+1,i}.
JacobiField rotation_field(int n, double h0, int i);

// Radial factor g(s): f(s, w) = g(s) * Y(w) with Y = sum c_i w_i (or 1 for l = 0).
double radial_part(const JacobiField& field, double s, double h, double dh);
double field_value(const JacobiField& field, double s, std::span<const double> w);

std::vector<double> sample_radial(const JacobiField& field, const ProfileCurve& profile);

// sup over interior samples of |(Delta + |A|^2) f| using the mode-reduced discrete operator.
double residual(const JacobiField& field, const ProfileCurve& profile);
double residual_of_samples(const ProfileCurve& profile, int l, const std::vector<double>& g);

struct MembershipResult {
    Membership membership = Membership::inconclusive;
    std::vector<double> truncations;
    std::vector<double> integrals;  // int f^2 omega over |x| <= S
    double fitted_rate = 0.0;
    double predicted_rate = 0.0;
    double relative_increment = 0.0;
};

struct MembershipOptions {
    double R = 4.0;
    int mesh = 2000;
    double cauchy_tol = 1e-3;
    double rate_tol = 0.3;
};

// Predicted growth exponent of the truncated integral: n - 2 + 2k for |g| ~ r^k at the ends.
double predicted_growth_rate(const JacobiField& field);

MembershipResult classify_membership(const JacobiField& field, const std::vector<double>& truncations,
                                     const MembershipOptions& options = {});

// int f_i^2 over the whole catenoid: truncated quadrature plus the end-sample tail up to s_inf.
double translation_l2_norm(int i, const ProfileCurve& profile);
double translation_l2_closed_form(int n, double h0);

struct ZeroModeCertificate {
    BoundaryCondition bc = BoundaryCondition::dirichlet;
    int multiplicity = 0;
    double eigenvalue = 0.0;
    double next_eigenvalue = 0.0;
    double correlation = 0.0;
    double zero_tol = 0.0;
    int zero_modes = 0;
    bool certified() const { return correlation > 0.999 && zero_modes == multiplicity; }
};

// l = 1 problem: zero modes within zero_tol whose eigenvector matches the translation field.
ZeroModeCertificate certify_translation_modes(const ProfileCurve& profile, const Weight* weight, BoundaryCondition bc,
                                              double zero_tol);

}  // namespace bubblespec
