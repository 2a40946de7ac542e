#include "bubblespec/degeneration.hpp"

#include <algorithm>
#include <stdexcept>

namespace bubblespec {

void SweepConfig::validate() const
{
    if (n < 3) throw std::invalid_argument("sweep: n must be >= 3");
    if (!(H > 0.0)) throw std::invalid_argument("sweep: H must be positive");
    if (necks.empty()) throw std::invalid_argument("sweep: no neck values");
    for (std::size_t i = 0; i < necks.size(); ++i) {
        if (!(necks[i] > 0.0)) throw std::invalid_argument("sweep: neck values must be positive");
        if (i > 0 && !(necks[i] < necks[i - 1])) throw std::invalid_argument("sweep: neck values must decrease strictly");
    }
    if (meshes.empty()) throw std::invalid_argument("sweep: no meshes");
    if (spheres < 0 || catenoids < 0) throw std::invalid_argument("sweep: negative limit counts");
    if (tail == 0) throw std::invalid_argument("sweep: tail must be positive");
}

LimitModel closed_form_limit(const SweepConfig& c)
{
    LimitModel m;
    m.spheres = c.spheres;
    m.catenoids = c.catenoids;
    m.sphere_index = 1;
    m.sphere_nullity = c.n + 1;
    m.catenoid_index = 1;
    m.catenoid_weighted_nullity = c.n;
    return m;
}

LimitModel solve_limit(const SweepConfig& c)
{
    LimitModel m = closed_form_limit(c);
    m.from_solver = true;
    SurfaceSpec cat;
    cat.kind = ProfileKind::catenoid;
    cat.n = c.n;
    cat.bc = BoundaryCondition::dirichlet;
    std::vector<SweepEntry> sweep;
    for (int mesh : c.catenoid_meshes) sweep.push_back({c.catenoid_S, mesh});
    m.catenoid_index = index_nullity(cat, WeightRecipe::unit(), sweep).total_index;
    IndexOptions opt;
    opt.zero_tol = c.catenoid_zero_tol;
    m.catenoid_weighted_nullity = index_nullity(cat, WeightRecipe::bubble(c.R), sweep, opt).total_nullity;
    return m;
}

Tally tally_limit(const LimitModel& m)
{
    Tally t;
    t.upper = m.spheres * (m.sphere_index + m.sphere_nullity) + m.catenoids * (m.catenoid_index + m.catenoid_weighted_nullity);
    t.lower = m.spheres * m.sphere_index + m.catenoids * m.catenoid_index;
    return t;
}

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::withheld: return "withheld";
    }
    return "unknown";
}

SweepReport run_sweep(const SweepConfig& config)
{
    config.validate();
    return run_sweep(config, solve_limit(config));
}

SweepReport run_sweep(const SweepConfig& c, const LimitModel& limit)
{
    c.validate();
    SweepReport r;
    r.n = c.n;
    r.H = c.H;
    r.limit = limit;
    r.tally = tally_limit(limit);
    const double floor = 1e-3 * sphere_radius_for(c.n, c.H);

    SurfaceSpec spec;
    spec.kind = ProfileKind::delaunay;
    spec.n = c.n;
    spec.H = c.H;
    spec.bc = BoundaryCondition::periodic;
    IndexOptions opt;
    opt.zero_tol = c.zero_tol;

    for (double neck : c.necks) {
        NeckEntry e;
        e.neck = neck;
        if (neck < floor) {
            e.error = "neck below the conditioning floor";
            r.entries.push_back(e);
            continue;
        }
        spec.neck = neck;
        std::vector<SweepEntry> sweep;
        for (int mesh : c.meshes) sweep.push_back({0.0, mesh});
        try {
            const auto rep = index_nullity(spec, WeightRecipe::unit(), sweep, opt);
            const auto p = spec.build(0.0, c.meshes.back());
            e.period = p.params.at("period");
            e.mc_residual = p.mc_residual;
            e.index = rep.total_index;
            e.nullity = rep.total_nullity;
            e.converged = rep.converged;
            e.zero_tol = rep.zero_tol;
        } catch (const std::exception& ex) {
            e.error = ex.what();
        }
        if (e.converged) {
            e.upper = e.index + e.nullity <= r.tally.upper ? Verdict::pass : Verdict::fail;
            e.lower = r.tally.lower <= e.index ? Verdict::pass : Verdict::fail;
        }
        r.entries.push_back(e);
    }

    // tail: the smallest converged necks
    std::vector<const NeckEntry*> tail;
    for (auto it = r.entries.rbegin(); it != r.entries.rend() && tail.size() < c.tail; ++it)
        if (it->converged) tail.push_back(&*it);
    if (tail.size() == c.tail) {
        r.upper = Verdict::pass;
        r.lower = Verdict::pass;
        for (const auto* e : tail) {
            r.tail_necks.push_back(e->neck);
            if (e->upper == Verdict::fail) r.upper = Verdict::fail;
            if (e->lower == Verdict::fail) r.lower = Verdict::fail;
        }
    }
    return r;
}

}  // namespace bubblespec
