#include "bubblespec/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace bubblespec {

void SurfaceSpec::validate() const
{
    if (n < 3) throw std::invalid_argument("surface: n must be >= 3");
    if (bc == BoundaryCondition::periodic && kind != ProfileKind::delaunay)
        throw std::invalid_argument("surface: periodic boundary condition is only valid for delaunay");
    if (kind == ProfileKind::delaunay && bc != BoundaryCondition::periodic)
        throw std::invalid_argument("surface: delaunay needs the periodic boundary condition");
    if (kind == ProfileKind::sphere && bc != BoundaryCondition::natural)
        throw std::invalid_argument("surface: the sphere is closed; use the natural boundary condition");
}

ProfileCurve SurfaceSpec::build(double S, int mesh) const
{
    validate();
    ProfileCurve p;
    switch (kind) {
    case ProfileKind::catenoid:
        if (!(S > 0.0)) throw std::invalid_argument("surface: truncation S must be positive");
        p = catenoid_profile(n, h0, S, mesh);
        break;
    case ProfileKind::sphere: p = sphere_profile(n, radius, mesh); break;
    case ProfileKind::delaunay: p = delaunay_profile(n, H, neck, mesh); break;
    }
    p.ricci = ricci;
    return p;
}

WeightRecipe WeightRecipe::unit()
{
    return {"unit", {}};
}

WeightRecipe WeightRecipe::bubble(double R)
{
    return {"bubble:R=" + std::to_string(R), [R](const ProfileCurve& p) { return weight_bubble(p, R); }};
}

WeightRecipe WeightRecipe::constant(double c)
{
    return {"constant:" + std::to_string(c), [c](const ProfileCurve& p) { return weight_constant(p, c); }};
}

WeightRecipe WeightRecipe::random_piecewise(std::uint64_t seed)
{
    return {"random:" + std::to_string(seed),
            [seed](const ProfileCurve& p) { return weight_random_piecewise(p, seed); }};
}

namespace {

struct Entry {
    SweepEntry key;
    ProfileCurve profile;
    std::vector<double> weight;  // empty for unit
    std::vector<ModeProblem> modes;

    const ModeProblem& mode(int l, BoundaryCondition bc)
    {
        while (static_cast<int>(modes.size()) <= l)
            modes.push_back(assemble_mode(profile, std::span<const double>(weight), static_cast<int>(modes.size()), bc));
        return modes[static_cast<std::size_t>(l)];
    }
};

Entry make_entry(const SurfaceSpec& spec, const WeightRecipe& recipe, const SweepEntry& key)
{
    Entry e{key, spec.build(key.S, key.mesh), {}, {}};
    if (recipe.make) e.weight = recipe.make(e.profile).samples;
    return e;
}

double nearest_zero(const std::vector<double>& eigs, std::size_t& which)
{
    which = 0;
    for (std::size_t k = 1; k < eigs.size(); ++k)
        if (std::abs(eigs[k]) < std::abs(eigs[which])) which = k;
    return eigs[which];
}

}  // namespace

IndexReport index_nullity(const SurfaceSpec& spec, const WeightRecipe& weight, const std::vector<SweepEntry>& sweep,
                          const IndexOptions& options)
{
    if (sweep.empty()) throw std::invalid_argument("index: sweep must not be empty");
    spec.validate();
    const bool truncated = spec.kind == ProfileKind::catenoid;
    const BoundaryCondition bc = spec.bc;

    std::vector<Entry> entries;
    entries.reserve(sweep.size());
    for (const auto& key : sweep) entries.push_back(make_entry(spec, weight, key));
    Entry& finest = entries.back();

    IndexReport report;
    report.surface = to_string(spec.kind);
    report.n = spec.n;
    report.weight = weight.label;
    report.bc = bc;
    report.truncation = truncated ? finest.key.S : 0.0;
    report.mesh = finest.key.mesh;

    // Richardson estimate from the finest entry and a coarser mesh at the same truncation.
    std::optional<Entry> companion_storage;
    Entry* companion = nullptr;
    for (std::size_t i = entries.size() - 1; i-- > 0;) {
        const bool same_S = !truncated || entries[i].key.S == finest.key.S;
        if (same_S && entries[i].key.mesh != finest.key.mesh) {
            companion = &entries[i];
            break;
        }
    }
    if (companion == nullptr) {
        companion_storage = make_entry(spec, weight, {finest.key.S, std::max(16, finest.key.mesh / 2)});
        companion = &*companion_storage;
    }
    const double ratio = static_cast<double>(finest.profile.size()) / static_cast<double>(companion->profile.size());
    const double richardson = std::abs(ratio * ratio - 1.0);

    int l_probe = 0;
    while (l_probe < options.max_l && !finest.mode(l_probe, bc).certified_positive) ++l_probe;
    double err = 0.0;
    for (int l = 0; l <= std::min(l_probe + 1, options.max_l); ++l) {
        const auto fine = smallest_eigenvalues(finest.mode(l, bc), options.diagnostics);
        const auto coarse = smallest_eigenvalues(companion->mode(l, bc), options.diagnostics);
        std::size_t k = 0;
        const double lf = nearest_zero(fine, k);
        if (k < coarse.size()) err = std::max(err, std::abs(lf - coarse[k]) / richardson);
    }
    report.error_estimate = err;
    if (options.zero_tol) {
        report.zero_tol = *options.zero_tol;
    } else {
        report.zero_tol = 10.0 * err;
        report.zero_tol_defaulted = true;
    }
    report.tol_warning = report.zero_tol < err;

    for (auto& e : entries) {
        SweepResult r{e.key.S, e.key.mesh, {}, 0, 0};
        int stable_run = 0;
        for (int l = 0; l <= options.max_l && stable_run < 2; ++l) {
            const ModeProblem& pr = e.mode(l, bc);
            const auto c = count_nonpositive(pr, report.zero_tol, err, options.diagnostics);
            ModeCount mc{l, pr.multiplicity, c.neg, c.zero, c.smallest, pr.certified_positive};
            stable_run = (c.neg == 0 && c.zero == 0) ? stable_run + 1 : 0;
            r.index += pr.multiplicity * c.neg;
            r.nullity += pr.multiplicity * c.zero;
            r.modes.push_back(std::move(mc));
        }
        if (stable_run < 2) throw std::runtime_error("index: mode cutoff not reached below max_l");
        report.sweep.push_back(std::move(r));
    }
    const auto& last = report.sweep.back();
    report.per_mode = last.modes;
    report.total_index = last.index;
    report.total_nullity = last.nullity;
    // every entry agrees, over at least two meshes and (for truncated surfaces) two truncations
    std::set<int> meshes;
    std::set<double> truncations;
    report.converged = true;
    for (const auto& r : report.sweep) {
        meshes.insert(r.mesh);
        truncations.insert(r.S);
        if (r.index != last.index || r.nullity != last.nullity) report.converged = false;
    }
    if (meshes.size() < 2 || (truncated && truncations.size() < 2)) report.converged = false;
    return report;
}

EquivalenceResult compare_weighted_unweighted(const ProfileCurve& profile, const Weight& weight, BoundaryCondition bc,
                                              double zero_tol)
{
    check_aligned(profile, weight);
    if (!(weight.essinf > 0.0)) throw std::invalid_argument("equivalence: weight needs a positive lower bound");
    EquivalenceResult r;
    int stable_run = 0;
    for (int l = 0; l <= 64 && stable_run < 2; ++l) {
        const auto pu = assemble_mode(profile, nullptr, l, bc);
        const auto pw = assemble_mode(profile, &weight, l, bc);
        const int du = static_cast<int>(count_below(pu, zero_tol));
        const int dw = static_cast<int>(count_below(pw, zero_tol));
        r.dim_unweighted += pu.multiplicity * du;
        r.dim_weighted += pw.multiplicity * dw;
        stable_run = (du == 0 && dw == 0) ? stable_run + 1 : 0;
    }
    return r;
}

}  // namespace bubblespec
