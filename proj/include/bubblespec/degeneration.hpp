#pragma once

#include "bubblespec/spectral.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bubblespec {

// Counts attached to the limit of the family: round spheres and catenoid bubbles.
struct LimitModel {
    int spheres = 1;
    int catenoids = 1;  // J
    int sphere_index = 1;
    int sphere_nullity = 4;  // n + 1
    int catenoid_index = 1;
    int catenoid_weighted_nullity = 3;  // n
    bool from_solver = false;
};

struct SweepConfig {
    int n = 3;
    double H = 3.0;
    std::vector<double> necks;  // strictly decreasing, positive
    std::vector<int> meshes = {1000, 2000};
    std::optional<double> zero_tol;
    std::size_t tail = 3;  // smallest converged necks the verdicts are read from; fewer withholds them

    int spheres = 1;
    int catenoids = 1;
    // catenoid bubble model
    double catenoid_S = 60.0;
    std::vector<int> catenoid_meshes = {2000, 4000};
    double R = 4.0;
    double catenoid_zero_tol = 1e-3;

    void validate() const;
};

struct Tally {
    int upper = 0;
    int lower = 0;
};

// Closed-form sphere counts (index 1, nullity n + 1) and the catenoid counts (1, n).
LimitModel closed_form_limit(const SweepConfig& config);
// Sphere counts from the closed form, catenoid counts from the spectral solver.
LimitModel solve_limit(const SweepConfig& config);

// upper = sum over spheres of (ind + nul) + J (ind_C + nul_omega(C)); lower = sum of sphere indices + J ind_C.
Tally tally_limit(const LimitModel& model);

enum class Verdict { pass, fail, withheld };
std::string to_string(Verdict v);

struct NeckEntry {
    double neck = 0.0;
    double period = 0.0;
    double mc_residual = 0.0;
    int index = 0;
    int nullity = 0;
    bool converged = false;
    double zero_tol = 0.0;
    Verdict upper = Verdict::withheld;
    Verdict lower = Verdict::withheld;
    std::string error;  // set when the surface could not be built
};

struct SweepReport {
    int n = 3;
    double H = 0.0;
    LimitModel limit;
    Tally tally;
    std::vector<NeckEntry> entries;
    std::vector<double> tail_necks;
    Verdict upper = Verdict::withheld;
    Verdict lower = Verdict::withheld;
};

SweepReport run_sweep(const SweepConfig& config);
SweepReport run_sweep(const SweepConfig& config, const LimitModel& limit);

}  // namespace bubblespec
