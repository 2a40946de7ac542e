// bubblespec command-line driver. Every run writes manifest.json into --out.
#include "bubblespec/degeneration.hpp"
#include "bubblespec/errors.hpp"
#include "bubblespec/io.hpp"
#include "bubblespec/jacobi.hpp"
#include "bubblespec/lorentz.hpp"
#include "bubblespec/neck.hpp"
#include "bubblespec/spectral.hpp"
#include "bubblespec/weights.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace bubblespec;
using nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kNotConverged = 1;
constexpr int kUsage = 2;
constexpr int kInternal = 3;

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Options {
    std::string out = "out";
    std::string config;
    std::uint64_t seed = 1;

    // catenoid-index
    int ci_n = 0;
    double ci_h0 = 1.0;
    std::vector<double> ci_S;
    std::vector<int> ci_mesh;
    double ci_R = 0.0;
    std::optional<double> ci_zero_tol;
    std::string ci_bc = "dirichlet";
    int ci_max_l = 64;

    // jacobi
    int ja_n = 3;
    double ja_h0 = 1.0;
    std::vector<double> ja_S = {20.0, 40.0, 80.0};
    int ja_mesh = 2000;
    double ja_R = 4.0;
    double ja_residual_S = 60.0;
    std::string ja_field = "all";
    int ja_generator = 0;

    // lorentz
    std::string lo_battery = "all";
    int lo_count = 100;
    int lo_n = 3;
    double lo_R = 4.0;
    double lo_S = 60.0;
    int lo_mesh = 2000;

    // equivalence
    std::string eq_surface = "sphere";
    int eq_n = 3;
    std::string eq_weights = "random:10";
    double eq_S = 40.0;
    int eq_mesh = 2000;
    std::string eq_bc;
    double eq_zero_tol = 1e-6;
    double eq_h0 = 1.0;
    double eq_radius = 1.0;

    // neck
    int ne_count = 20;
    int ne_mesh = 400;
    int ne_max_l = 4;
    double ne_floor_fraction = 0.5;
    std::vector<double> ne_eps = {0.1, 0.05, 0.025, 0.0125};
    std::vector<int> ne_capacity_mesh = {50, 100, 200};
    double ne_sphere_radius = 1.0;

    // sweep
    int sw_n = 3;
    double sw_H = 3.0;
    std::vector<double> sw_necks;
    std::vector<int> sw_mesh = {1000, 2000};
    std::optional<double> sw_zero_tol;
    int sw_tail = 3;
    int sw_spheres = 1;
    int sw_J = 1;
    double sw_R = 4.0;
    double sw_catenoid_S = 60.0;
    std::vector<int> sw_catenoid_mesh = {2000, 4000};
    std::string sw_limit = "solver";
};

struct Run {
    fs::path out;
    std::vector<std::string> outputs;

    void text(const std::string& name, const std::string& body)
    {
        write_text(out / name, body);
        outputs.push_back(name);
    }
    void json(const std::string& name, const ordered_json& j)
    {
        write_json(out / name, j);
        outputs.push_back(name);
    }
};

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::pair<std::string, std::string>> read_config(const std::string& path)
{
    std::ifstream f(path);
    if (!f) throw UsageError("cannot read config file " + path);
    std::vector<std::pair<std::string, std::string>> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError("config line " + std::to_string(lineno) + ": expected key=value");
        kv.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return kv;
}

// Config values only fill options that were not given as flags.
void apply_config(CLI::App& app, CLI::App& sub, const std::string& path)
{
    for (const auto& [key, value] : read_config(path)) {
        CLI::Option* opt = sub.get_option_no_throw("--" + key);
        if (opt == nullptr) opt = app.get_option_no_throw("--" + key);
        if (opt == nullptr || key == "config") throw UsageError("config: unknown key '" + key + "'");
        if (opt->count() > 0) continue;
        opt->add_result(value);
        opt->run_callback();
    }
}

void require(const CLI::App& sub, const std::string& name)
{
    if (sub.get_option(name)->count() == 0) throw UsageError(sub.get_name() + ": missing required flag " + name);
}

std::string source_of(const CLI::Option* opt, const std::set<std::string>& from_file)
{
    if (from_file.count(opt->get_single_name())) return "config";
    return opt->count() > 0 ? "flag" : "default";
}

ordered_json option_values(const CLI::App& app, const std::set<std::string>& from_file)
{
    ordered_json j = ordered_json::object();
    for (const CLI::Option* opt : app.get_options()) {
        const std::string name = opt->get_single_name();
        if (name == "help" || name == "config") continue;
        std::string value;
        if (opt->count() > 0) {
            const auto& res = opt->results();
            for (std::size_t i = 0; i < res.size(); ++i) value += (i ? "," : "") + res[i];
        } else {
            value = opt->get_default_str();
        }
        j[name] = {{"value", value}, {"source", source_of(opt, from_file)}};
    }
    return j;
}

BoundaryCondition parse_bc(const std::string& s)
{
    try {
        return parse_boundary_condition(s);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

std::vector<SweepEntry> product_sweep(const std::vector<double>& S, const std::vector<int>& meshes)
{
    std::vector<double> s = S;
    std::vector<int> m = meshes;
    std::sort(s.begin(), s.end());
    std::sort(m.begin(), m.end());
    std::vector<SweepEntry> out;
    for (double x : s)
        for (int k : m) out.push_back({x, k});
    return out;
}

int cmd_catenoid_index(const Options& o, Run& run)
{
    SurfaceSpec spec;
    spec.kind = ProfileKind::catenoid;
    spec.n = o.ci_n;
    spec.h0 = o.ci_h0;
    spec.bc = parse_bc(o.ci_bc);
    if (spec.bc == BoundaryCondition::periodic) throw UsageError("catenoid-index: periodic is not valid for the catenoid");
    const WeightRecipe recipe = o.ci_R > 0.0 ? WeightRecipe::bubble(o.ci_R) : WeightRecipe::unit();
    IndexOptions opt;
    opt.zero_tol = o.ci_zero_tol;
    opt.max_l = o.ci_max_l;
    const auto sweep = product_sweep(o.ci_S, o.ci_mesh);
    const auto report = index_nullity(spec, recipe, sweep, opt);
    run.json("index_report.json", to_json(report));
    run.text("index_report.csv", index_table(report).str());
    const auto& last = sweep.back();
    const auto p = spec.build(last.S, last.mesh);
    if (recipe.make) {
        const auto w = recipe.make(p);
        write_profile(run.out / "profile.csv", p, &w);
    } else {
        write_profile(run.out / "profile.csv", p);
    }
    run.outputs.push_back("profile.csv");
    run.outputs.push_back("profile.json");
    std::cout << "index=" << report.total_index << " nullity=" << report.total_nullity
              << " converged=" << (report.converged ? "true" : "false") << '\n';
    return report.converged ? kOk : kNotConverged;
}

std::vector<JacobiField> jacobi_selection(const Options& o)
{
    const int n = o.ja_n;
    std::vector<JacobiField> f;
    const bool all = o.ja_field == "all";
    if (all || o.ja_field == "translation")
        for (int i = 1; i <= n + 1; ++i) f.push_back(translation_field(n, o.ja_h0, i));
    if (all || o.ja_field == "dilation") f.push_back(dilation_field(n, o.ja_h0));
    if (all || o.ja_field == "rotation") {
        if (o.ja_generator < 0 || o.ja_generator > n) throw UsageError("jacobi: --generator must lie in 0..n");
        for (int i = 1; i <= n; ++i)
            if (o.ja_generator == 0 || o.ja_generator == i) f.push_back(rotation_field(n, o.ja_h0, i));
    }
    if (f.empty()) throw UsageError("jacobi: --field must be all, translation, dilation or rotation");
    return f;
}

int cmd_jacobi(const Options& o, Run& run)
{
    const auto fields = jacobi_selection(o);
    const auto profile = catenoid_profile(o.ja_n, o.ja_h0, o.ja_residual_S, o.ja_mesh);
    MembershipOptions mopt;
    mopt.R = o.ja_R;
    mopt.mesh = o.ja_mesh;
    std::vector<ClassificationRow> rows;
    bool as_expected = true;
    for (const auto& f : fields) {
        ClassificationRow r;
        r.field = f.name;
        r.kind = to_string(f.kind);
        r.mode = f.mode;
        r.membership = classify_membership(f, o.ja_S, mopt);
        r.residual = residual(f, profile);
        const bool horizontal = f.kind == JacobiKind::translation && f.index <= f.n;
        if ((r.membership.membership == Membership::in_L2_omega) != horizontal) as_expected = false;
        rows.push_back(std::move(r));
    }
    run.text("classification.csv", classification_table(rows).str());
    ordered_json j;
    j["n"] = o.ja_n;
    j["h0"] = o.ja_h0;
    j["residual_truncation"] = o.ja_residual_S;
    j["mesh"] = o.ja_mesh;
    j["translation_l2_norm"] = translation_l2_norm(1, profile);
    j["translation_l2_closed_form"] = translation_l2_closed_form(o.ja_n, o.ja_h0);
    j["fields"] = ordered_json::array();
    for (const auto& r : rows)
        j["fields"].push_back({{"field", r.field},
                               {"membership", to_string(r.membership.membership)},
                               {"fitted_rate", r.membership.fitted_rate},
                               {"predicted_rate", r.membership.predicted_rate},
                               {"residual", r.residual}});
    j["as_expected"] = as_expected;
    run.json("jacobi.json", j);
    for (const auto& r : rows)
        std::cout << r.field << ' ' << to_string(r.membership.membership) << " rate=" << r.membership.fitted_rate
                  << " residual=" << r.residual << '\n';
    return as_expected ? kOk : kNotConverged;
}

int cmd_lorentz(const Options& o, Run& run)
{
    const std::set<std::string> known = {"all", "power", "holder", "weight"};
    if (!known.count(o.lo_battery)) throw UsageError("lorentz: unknown battery " + o.lo_battery);
    if (o.lo_count <= 0) throw UsageError("lorentz: --count must be positive");
    const bool all = o.lo_battery == "all";
    bool ok = true;
    ordered_json j;
    if (all || o.lo_battery == "power") {
        const auto b = power_identity_battery(o.seed, o.lo_count);
        run.text("lorentz_power.csv", battery_table(b, true).str());
        j["power"] = {{"passed", b.passed()}, {"count", b.cases.size()}};
        ok = ok && b.passed() == static_cast<int>(b.cases.size());
        std::cout << "power " << b.passed() << '/' << b.cases.size() << '\n';
    }
    if (all || o.lo_battery == "holder") {
        const auto b = holder_battery(o.seed, o.lo_count);
        run.text("lorentz_holder.csv", battery_table(b, false).str());
        j["holder"] = {{"passed", b.passed()}, {"count", b.cases.size()}};
        ok = ok && b.passed() == static_cast<int>(b.cases.size());
        std::cout << "holder " << b.passed() << '/' << b.cases.size() << '\n';
    }
    if (all || o.lo_battery == "weight") {
        CsvTable t({"mesh", "norm", "relative_change"});
        double prev = 0.0;
        double worst = 0.0;
        for (int mesh : {o.lo_mesh, 2 * o.lo_mesh}) {
            const auto p = catenoid_profile(o.lo_n, 1.0, o.lo_S, mesh);
            const double norm = verify_weight_bounds(p, weight_bubble(p, o.lo_R)).lorentz_norm;
            const double rel = prev > 0.0 ? std::abs(norm - prev) / prev : 0.0;
            worst = std::max(worst, rel);
            t.add_row({std::to_string(mesh), format_number(norm), format_number(rel)});
            prev = norm;
        }
        run.text("lorentz_weight.csv", t.str());
        const bool stable = std::isfinite(prev) && worst <= 0.02;
        j["weight"] = {{"norm", prev}, {"relative_change", worst}, {"stable", stable}};
        ok = ok && stable;
        std::cout << "weight norm=" << prev << " change=" << worst << '\n';
    }
    j["all_hold"] = ok;
    run.json("lorentz.json", j);
    return ok ? kOk : kNotConverged;
}

int cmd_equivalence(const Options& o, Run& run)
{
    const auto colon = o.eq_weights.find(':');
    if (colon == std::string::npos || o.eq_weights.substr(0, colon) != "random")
        throw UsageError("equivalence: --weights must look like random:COUNT");
    int count = 0;
    try {
        count = std::stoi(o.eq_weights.substr(colon + 1));
    } catch (const std::exception&) {
        throw UsageError("equivalence: bad weight count in " + o.eq_weights);
    }
    if (count <= 0) throw UsageError("equivalence: weight count must be positive");
    SurfaceSpec spec;
    spec.n = o.eq_n;
    if (o.eq_surface == "sphere") {
        spec.kind = ProfileKind::sphere;
        spec.radius = o.eq_radius;
        spec.bc = o.eq_bc.empty() ? BoundaryCondition::natural : parse_bc(o.eq_bc);
    } else if (o.eq_surface == "catenoid") {
        spec.kind = ProfileKind::catenoid;
        spec.h0 = o.eq_h0;
        spec.bc = o.eq_bc.empty() ? BoundaryCondition::dirichlet : parse_bc(o.eq_bc);
    } else {
        throw UsageError("equivalence: --surface must be sphere or catenoid");
    }
    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const auto p = spec.build(o.eq_S, o.eq_mesh);
    CsvTable t({"case", "seed", "dim_weighted", "dim_unweighted", "equal"});
    int agree = 0;
    for (int k = 0; k < count; ++k) {
        const std::uint64_t s = o.seed * 1000u + static_cast<std::uint64_t>(k);
        const auto w = weight_random_piecewise(p, s);
        const auto r = compare_weighted_unweighted(p, w, spec.bc, o.eq_zero_tol);
        agree += r.equal() ? 1 : 0;
        t.add_row({std::to_string(k), std::to_string(s), std::to_string(r.dim_weighted),
                   std::to_string(r.dim_unweighted), r.equal() ? "true" : "false"});
    }
    run.text("equivalence.csv", t.str());
    run.json("equivalence.json", {{"surface", o.eq_surface}, {"agree", agree}, {"count", count}});
    std::cout << "equal " << agree << '/' << count << '\n';
    return agree == count ? kOk : kNotConverged;
}

int cmd_neck(const Options& o, Run& run)
{
    if (o.ne_count <= 0) throw UsageError("neck: --count must be positive");
    const auto battery = neck_battery(o.seed, o.ne_count, o.ne_mesh);
    CalibrationOptions copt;
    copt.floor_fraction = o.ne_floor_fraction;
    copt.max_l = o.ne_max_l;
    const auto cal = calibrate_threshold(battery, copt);

    CsvTable t({"case", "n", "r_in", "r_out", "conformal", "K", "W", "infimum_zero", "infimum_threshold",
                "monotone"});
    bool ok = true;
    for (std::size_t k = 0; k < battery.size(); ++k) {
        auto a = battery[k];
        std::vector<double> path;
        for (double e : {0.0, 0.5 * cal.epsilon, cal.epsilon, 2.0 * cal.epsilon}) {
            set_potential(a, e);
            path.push_back(rayleigh_infimum(a, o.ne_max_l).infimum);
        }
        const bool monotone = std::is_sorted(path.rbegin(), path.rend());
        const bool good = path[2] > 0.0 && a.distortion() <= 2.0 && monotone;
        ok = ok && good;
        t.add_row({std::to_string(k), std::to_string(a.n), format_number(a.r_in), format_number(a.r_out),
                   format_number(a.conformal), format_number(a.distortion()), format_number(a.weight_norm()),
                   format_number(path[0]), format_number(path[2]), monotone ? "true" : "false"});
    }
    run.text("neck_battery.csv", t.str());

    std::vector<CapacityTable> tables;
    std::vector<std::string> labels;
    for (int n : {3, 4})
        for (int mesh : o.ne_capacity_mesh) {
            tables.push_back(capacity_estimate(n, flat_area_density(n), o.ne_eps, mesh));
            labels.push_back("flat");
            tables.push_back(capacity_estimate(n, sphere_area_density(n, o.ne_sphere_radius), o.ne_eps, mesh));
            labels.push_back("sphere");
        }
    for (const auto& c : tables) ok = ok && std::abs(c.exponent - (c.n - 2)) <= 0.2;
    run.text("neck_capacity.csv", capacity_table(tables, labels).str());

    ordered_json j;
    j["epsilon_hat"] = cal.epsilon;
    j["floor"] = cal.floor;
    j["base"] = cal.base;
    j["min_infimum"] = cal.min_infimum;
    j["bisection_steps"] = cal.iterations;
    j["all_hold"] = ok;
    run.json("neck.json", j);
    std::cout << "epsilon_hat=" << cal.epsilon << " min_infimum=" << cal.min_infimum << '\n';
    return ok ? kOk : kNotConverged;
}

int cmd_sweep(const Options& o, Run& run)
{
    SweepConfig c;
    c.n = o.sw_n;
    c.H = o.sw_H;
    c.necks = o.sw_necks;
    c.meshes = o.sw_mesh;
    c.zero_tol = o.sw_zero_tol;
    if (o.sw_tail <= 0) throw UsageError("sweep: --tail must be positive");
    c.tail = static_cast<std::size_t>(o.sw_tail);
    c.spheres = o.sw_spheres;
    c.catenoids = o.sw_J;
    c.R = o.sw_R;
    c.catenoid_S = o.sw_catenoid_S;
    c.catenoid_meshes = o.sw_catenoid_mesh;
    try {
        c.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    LimitModel limit;
    if (o.sw_limit == "solver") {
        limit = solve_limit(c);
    } else if (o.sw_limit == "closed-form") {
        limit = closed_form_limit(c);
    } else {
        throw UsageError("sweep: --limit must be solver or closed-form");
    }
    const auto r = run_sweep(c, limit);
    run.json("sweep.json", to_json(r));
    run.text("sweep.csv", sweep_table(r).str());
    std::cout << "upper=" << to_string(r.upper) << " lower=" << to_string(r.lower) << " tally=" << r.tally.upper
              << '/' << r.tally.lower << '\n';
    return r.upper == Verdict::pass && r.lower == Verdict::pass ? kOk : kNotConverged;
}

void write_error(const fs::path& out, const std::string& kind, const std::string& message, int code)
{
    ordered_json j;
    j["error"] = kind;
    j["message"] = message;
    j["exit_code"] = code;
    std::cerr << j.dump() << '\n';
    try {
        write_json(out / "error.json", j);
    } catch (const std::exception&) {
        // the output directory may be the problem
    }
}

}  // namespace

int main(int argc, char** argv)
{
    Options o;
    CLI::App app{"Stability spectra of catenoids, spheres and Delaunay hypersurfaces"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--out", o.out, "output directory")->capture_default_str();
    app.add_option("--config", o.config, "key=value file; flags take precedence");
    app.add_option("--seed", o.seed, "seed for randomized batteries")->capture_default_str();

    auto* ci = app.add_subcommand("catenoid-index", "index and nullity of the truncated catenoid");
    ci->add_option("--n", o.ci_n, "dimension (required)");
    ci->add_option("--h0", o.ci_h0)->capture_default_str();
    ci->add_option("--S", o.ci_S, "truncation radii (required)")->delimiter(',');
    ci->add_option("--mesh", o.ci_mesh, "mesh sizes (required)")->delimiter(',');
    ci->add_option("--R", o.ci_R, "bubble weight radius; 0 runs unweighted")->capture_default_str();
    ci->add_option("--zero-tol", o.ci_zero_tol, "explicit zero tolerance");
    ci->add_option("--bc", o.ci_bc, "dirichlet or natural")->capture_default_str();
    ci->add_option("--max-l", o.ci_max_l)->capture_default_str();

    auto* ja = app.add_subcommand("jacobi", "residuals and weighted membership of the rigid-motion fields");
    ja->add_option("--n", o.ja_n)->capture_default_str();
    ja->add_option("--h0", o.ja_h0)->capture_default_str();
    ja->add_option("--S", o.ja_S, "truncations for the growth fit")->delimiter(',')->capture_default_str();
    ja->add_option("--mesh", o.ja_mesh)->capture_default_str();
    ja->add_option("--R", o.ja_R)->capture_default_str();
    ja->add_option("--residual-S", o.ja_residual_S)->capture_default_str();
    ja->add_option("--field", o.ja_field, "all, translation, dilation or rotation")->capture_default_str();
    ja->add_option("--generator", o.ja_generator, "rotation generator index, 0 for all")->capture_default_str();

    auto* lo = app.add_subcommand("lorentz", "Lorentz-space property batteries");
    lo->add_option("--battery", o.lo_battery, "all, power, holder or weight")->capture_default_str();
    lo->add_option("--count", o.lo_count)->capture_default_str();
    lo->add_option("--n", o.lo_n)->capture_default_str();
    lo->add_option("--R", o.lo_R)->capture_default_str();
    lo->add_option("--S", o.lo_S)->capture_default_str();
    lo->add_option("--mesh", o.lo_mesh)->capture_default_str();

    auto* eq = app.add_subcommand("equivalence", "weighted against unweighted nonpositive counts");
    eq->add_option("--surface", o.eq_surface, "sphere or catenoid")->capture_default_str();
    eq->add_option("--n", o.eq_n)->capture_default_str();
    eq->add_option("--weights", o.eq_weights, "random:COUNT")->capture_default_str();
    eq->add_option("--S", o.eq_S)->capture_default_str();
    eq->add_option("--mesh", o.eq_mesh)->capture_default_str();
    eq->add_option("--bc", o.eq_bc, "defaults to natural (sphere) or dirichlet (catenoid)");
    eq->add_option("--zero-tol", o.eq_zero_tol)->capture_default_str();
    eq->add_option("--h0", o.eq_h0)->capture_default_str();
    eq->add_option("--radius", o.eq_radius)->capture_default_str();

    auto* ne = app.add_subcommand("neck", "graphical-annulus quotients and cutoff capacities");
    ne->add_option("--count", o.ne_count)->capture_default_str();
    ne->add_option("--mesh", o.ne_mesh)->capture_default_str();
    ne->add_option("--max-l", o.ne_max_l)->capture_default_str();
    ne->add_option("--floor-fraction", o.ne_floor_fraction)->capture_default_str();
    ne->add_option("--eps", o.ne_eps)->delimiter(',')->capture_default_str();
    ne->add_option("--capacity-mesh", o.ne_capacity_mesh)->delimiter(',')->capture_default_str();
    ne->add_option("--sphere-radius", o.ne_sphere_radius)->capture_default_str();

    auto* sw = app.add_subcommand("sweep", "Delaunay family toward pinch-off against the limit tallies");
    sw->add_option("--n", o.sw_n)->capture_default_str();
    sw->add_option("--H", o.sw_H)->capture_default_str();
    sw->add_option("--necks", o.sw_necks, "decreasing neck radii (required)")->delimiter(',');
    sw->add_option("--mesh", o.sw_mesh)->delimiter(',')->capture_default_str();
    sw->add_option("--zero-tol", o.sw_zero_tol);
    sw->add_option("--tail", o.sw_tail)->capture_default_str();
    sw->add_option("--spheres", o.sw_spheres)->capture_default_str();
    sw->add_option("--J", o.sw_J, "catenoid bubbles")->capture_default_str();
    sw->add_option("--R", o.sw_R)->capture_default_str();
    sw->add_option("--catenoid-S", o.sw_catenoid_S)->capture_default_str();
    sw->add_option("--catenoid-mesh", o.sw_catenoid_mesh)->delimiter(',')->capture_default_str();
    sw->add_option("--limit", o.sw_limit, "solver or closed-form")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        // --out may not have been consumed yet
        fs::path out = o.out;
        for (int i = 1; i + 1 < argc; ++i)
            if (std::string(argv[i]) == "--out") out = argv[i + 1];
        write_error(out, "usage", e.what(), kUsage);
        return kUsage;
    }

    CLI::App* sub = app.get_subcommands().front();
    Run run;
    run.out = o.out;
    std::set<std::string> from_file;
    try {
        if (!o.config.empty()) {
            std::set<std::string> before;
            for (const auto* opt : sub->get_options())
                if (opt->count() > 0) before.insert(opt->get_single_name());
            for (const auto* opt : app.get_options())
                if (opt->count() > 0) before.insert(opt->get_single_name());
            apply_config(app, *sub, o.config);
            run.out = o.out;
            for (const auto* opt : sub->get_options())
                if (opt->count() > 0 && !before.count(opt->get_single_name())) from_file.insert(opt->get_single_name());
            for (const auto* opt : app.get_options())
                if (opt->count() > 0 && !before.count(opt->get_single_name())) from_file.insert(opt->get_single_name());
        }
        const std::string name = sub->get_name();
        if (name == "catenoid-index") {
            require(*sub, "--n");
            require(*sub, "--S");
            require(*sub, "--mesh");
        }
        if (name == "sweep") require(*sub, "--necks");
        fs::create_directories(run.out);

        int code = kInternal;
        if (name == "catenoid-index") code = cmd_catenoid_index(o, run);
        if (name == "jacobi") code = cmd_jacobi(o, run);
        if (name == "lorentz") code = cmd_lorentz(o, run);
        if (name == "equivalence") code = cmd_equivalence(o, run);
        if (name == "neck") code = cmd_neck(o, run);
        if (name == "sweep") code = cmd_sweep(o, run);

        ordered_json m;
        m["command"] = name;
        m["global"] = option_values(app, from_file);
        m["parameters"] = option_values(*sub, from_file);
        m["outputs"] = run.outputs;
        m["exit_code"] = code;
        write_json(run.out / "manifest.json", m);
        return code;
    } catch (const CLI::ParseError& e) {
        write_error(run.out, "usage", e.what(), kUsage);
        return kUsage;
    } catch (const UsageError& e) {
        write_error(run.out, "usage", e.what(), kUsage);
        return kUsage;
    } catch (const TruncationError& e) {
        write_error(run.out, "truncation", e.what(), kUsage);
        return kUsage;
    } catch (const RefinementNeeded& e) {
        write_error(run.out, "refinement_needed", e.what(), kInternal);
        return kInternal;
    } catch (const ShootingError& e) {
        write_error(run.out, "shooting", e.what(), kInternal);
        return kInternal;
    } catch (const std::invalid_argument& e) {
        write_error(run.out, "invalid_argument", e.what(), kUsage);
        return kUsage;
    } catch (const std::exception& e) {
        write_error(run.out, "internal", e.what(), kInternal);
        return kInternal;
    }
}
