// Acceptance suite: one PASS/FAIL line per criterion.
// usage: acceptance <path-to-cli> <scratch-dir>

#include "bubblespec/degeneration.hpp"
#include "bubblespec/jacobi.hpp"
#include "bubblespec/lorentz.hpp"
#include "bubblespec/neck.hpp"
#include "bubblespec/spectral.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace bubblespec;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

std::string fmt(double x, int digits = 4)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

SurfaceSpec catenoid_spec(int n, BoundaryCondition bc = BoundaryCondition::dirichlet)
{
    SurfaceSpec s;
    s.kind = ProfileKind::catenoid;
    s.n = n;
    s.h0 = 1.0;
    s.bc = bc;
    return s;
}

Outcome c1()
{
    Outcome o;
    const std::vector<SweepEntry> sweep = {{30.0, 2000}, {60.0, 2000}, {30.0, 4000}, {60.0, 4000}};
    for (int n : {3, 4}) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto r = index_nullity(catenoid_spec(n), WeightRecipe::unit(), sweep);
        const double dt = seconds_since(t0);
        for (const auto& e : r.sweep)
            o.require(e.index == 1, "n=" + std::to_string(n) + " S=" + fmt(e.S) + " mesh=" + std::to_string(e.mesh) +
                                        " index " + std::to_string(e.index));
        o.require(dt < 60.0, "n=" + std::to_string(n) + " took " + fmt(dt) + " s");
    }
    if (o.pass) o.detail = "index 1 at S in {30,60} and mesh in {2000,4000} for n=3,4";
    return o;
}

Outcome c2()
{
    Outcome o;
    double worst_res = 0.0;
    double worst_order = 1e9;
    for (int n : {3, 4}) {
        const auto p = catenoid_profile(n, 1.0, 60.0, 2000);
        const auto w = weight_bubble(p, 4.0);
        for (auto bc : {BoundaryCondition::dirichlet, BoundaryCondition::natural}) {
            const auto c = certify_translation_modes(p, &w, bc, 1e-3);
            o.require(c.zero_modes == n && c.correlation > 0.999,
                      "n=" + std::to_string(n) + " " + to_string(bc) + ": " + std::to_string(c.zero_modes) +
                          " zero modes, correlation " + fmt(c.correlation, 6));
        }
        const auto coarse = catenoid_profile(n, 1.0, 60.0, 1000);
        for (int i = 1; i <= n; ++i) {
            const auto f = translation_field(n, 1.0, i);
            const double r2 = residual(f, p);
            const double r1 = residual(f, coarse);
            const double order = std::log2(r1 / r2);
            worst_res = std::max(worst_res, r2);
            worst_order = std::min(worst_order, order);
            o.require(r2 <= 1e-5, f.name + " residual " + fmt(r2));
            o.require(order >= 1.8, f.name + " order " + fmt(order));
        }
    }
    if (o.pass) o.detail = "n zero modes under both BCs; max residual " + fmt(worst_res) + ", min order " + fmt(worst_order, 3);
    return o;
}

Outcome c3()
{
    Outcome o;
    const std::vector<double> S = {20.0, 40.0, 80.0};
    std::ostringstream rates;
    for (int n : {3, 4}) {
        int in_l2 = 0;
        for (int i = 1; i <= n + 1; ++i)
            in_l2 += classify_membership(translation_field(n, 1.0, i), S).membership == Membership::in_L2_omega;
        o.require(in_l2 == n, "n=" + std::to_string(n) + ": " + std::to_string(in_l2) + " translations in L2");
        const std::vector<JacobiField> growing = {translation_field(n, 1.0, n + 1), dilation_field(n, 1.0),
                                                  rotation_field(n, 1.0, 1)};
        for (const auto& f : growing) {
            const auto m = classify_membership(f, S);
            const bool ok = m.membership == Membership::diverges && std::abs(m.fitted_rate - (n - 2.0)) <= 0.3;
            rates << " " << f.name << "(n=" << n << ")=" << fmt(m.fitted_rate, 3);
            o.require(ok, "n=" + std::to_string(n) + " " + f.name + " " + to_string(m.membership) + " at rate " +
                              fmt(m.fitted_rate, 4) + ", target " + fmt(n - 2.0));
        }
    }
    if (o.pass) o.detail = "growth rates" + rates.str();
    return o;
}

Outcome c4()
{
    Outcome o;
    const auto p = sphere_profile(3, 1.0, 4000);
    const auto m0 = assemble_mode(p, nullptr, 0, BoundaryCondition::natural);
    const auto e0 = smallest_eigenvalues(m0, 3);
    double err = 0.0;
    for (int L = 0; L <= 2; ++L) err = std::max(err, std::abs(e0[static_cast<std::size_t>(L)] - (L * (L + 2) - 3.0)));
    for (int l : {1, 2})
        err = std::max(err, std::abs(eigenvalue(assemble_mode(p, nullptr, l, BoundaryCondition::natural), 0) -
                                     (l * (l + 2) - 3.0)));
    o.require(err <= 1e-4, "eigenvalue error " + fmt(err));
    SurfaceSpec s;
    s.kind = ProfileKind::sphere;
    s.n = 3;
    s.bc = BoundaryCondition::natural;
    const auto r = index_nullity(s, WeightRecipe::unit(), {{0.0, 4000}});
    o.require(r.total_index == 1 && r.total_nullity == 4,
              "index " + std::to_string(r.total_index) + ", nullity " + std::to_string(r.total_nullity));
    if (o.pass) o.detail = "index 1, nullity 4, max eigenvalue error " + fmt(err);
    return o;
}

Outcome c5()
{
    Outcome o;
    const auto sph = sphere_profile(3, 1.0, 2000);
    const auto cat = catenoid_profile(3, 1.0, 40.0, 2000);
    int agree_s = 0;
    int agree_c = 0;
    for (std::uint64_t k = 0; k < 10; ++k) {
        const std::uint64_t seed = 1000 + k;
        agree_s += compare_weighted_unweighted(sph, weight_random_piecewise(sph, seed), BoundaryCondition::natural, 1e-6)
                       .equal();
        agree_c += compare_weighted_unweighted(cat, weight_random_piecewise(cat, seed), BoundaryCondition::dirichlet,
                                               1e-6)
                       .equal();
    }
    o.require(agree_s == 10, "sphere " + std::to_string(agree_s) + "/10");
    o.require(agree_c == 10, "catenoid " + std::to_string(agree_c) + "/10");
    if (o.pass) o.detail = "sphere 10/10, catenoid 10/10";
    return o;
}

Outcome c6()
{
    Outcome o;
    const auto power = power_identity_battery(1, 50, 1e-12);
    const auto holder = holder_battery(1, 100);
    o.require(power.passed() == 50, "power identity " + std::to_string(power.passed()) + "/50");
    o.require(holder.passed() == 100, "holder " + std::to_string(holder.passed()) + "/100");
    std::ostringstream norms;
    for (int n : {3, 4}) {
        double v[2];
        int k = 0;
        for (int mesh : {2000, 4000}) {
            const auto p = catenoid_profile(n, 1.0, 60.0, mesh);
            v[k++] = verify_weight_bounds(p, weight_bubble(p, 4.0)).lorentz_norm;
        }
        const double change = std::abs(v[1] - v[0]) / v[1];
        norms << " n=" << n << ": " << fmt(v[1], 6) << " (" << fmt(100 * change, 3) << "%)";
        o.require(std::isfinite(v[0]) && std::isfinite(v[1]) && change < 0.02,
                  "n=" + std::to_string(n) + " weight norm change " + fmt(100 * change, 3) + "%");
    }
    if (o.pass) o.detail = "power 50/50, holder 100/100, weight norm" + norms.str();
    return o;
}

Outcome c7()
{
    Outcome o;
    const auto battery = neck_battery(1, 20, 400);
    for (std::size_t i = 0; i < battery.size(); ++i)
        o.require(battery[i].distortion() <= 2.0, "annulus " + std::to_string(i) + " K=" + fmt(battery[i].distortion()));
    const auto cal = calibrate_threshold(battery);
    int positive = 0;
    int monotone = 0;
    const std::vector<double> path = {0.0, 0.5 * cal.epsilon, cal.epsilon, 2.0 * cal.epsilon};
    for (auto a : battery) {
        std::vector<double> inf;
        for (double e : path) {
            set_potential(a, e);
            inf.push_back(rayleigh_infimum(a).infimum);
        }
        positive += inf[2] > 0.0;
        bool ok = true;
        for (std::size_t i = 0; i < inf.size(); ++i)
            for (std::size_t j = i + 1; j < inf.size(); ++j) ok = ok && inf[j] <= inf[i];
        monotone += ok;
    }
    o.require(positive == 20, "positive at threshold " + std::to_string(positive) + "/20");
    o.require(monotone == 20, "monotone " + std::to_string(monotone) + "/20");
    std::ostringstream ex;
    const std::vector<double> eps = {0.1, 0.05, 0.025, 0.0125};
    for (int n : {3, 4}) {
        const auto flat = capacity_estimate(n, flat_area_density(n), eps, 200);
        const auto round = capacity_estimate(n, sphere_area_density(n, 1.0), eps, 200);
        ex << " n=" << n << ": " << fmt(flat.exponent, 4) << "/" << fmt(round.exponent, 4);
        o.require(std::abs(flat.exponent - (n - 2)) <= 0.2, "flat exponent " + fmt(flat.exponent));
        o.require(std::abs(round.exponent - (n - 2)) <= 0.2, "sphere exponent " + fmt(round.exponent));
    }
    if (o.pass)
        o.detail = "threshold " + fmt(cal.epsilon, 5) + ", 20/20 positive, 20/20 monotone, exponents flat/sphere" + ex.str();
    return o;
}

Outcome c8()
{
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    SweepConfig c;
    c.n = 3;
    c.H = 3.0;
    c.necks = {0.3, 0.1, 0.03};
    const auto r = run_sweep(c);
    const double dt = seconds_since(t0);
    int converged = 0;
    for (const auto& e : r.entries) {
        if (!e.converged) continue;
        ++converged;
        o.require(e.upper == Verdict::pass && e.lower == Verdict::pass,
                  "neck " + fmt(e.neck) + ": ind+nul " + std::to_string(e.index + e.nullity) + ", ind " +
                      std::to_string(e.index));
    }
    o.require(converged >= 3, std::to_string(converged) + " converged necks");
    o.require(r.upper == Verdict::pass, "upper " + to_string(r.upper));
    o.require(r.lower == Verdict::pass, "lower " + to_string(r.lower));
    o.require(dt < 600.0, "took " + fmt(dt) + " s");
    if (o.pass)
        o.detail = "tally upper " + std::to_string(r.tally.upper) + ", lower " + std::to_string(r.tally.lower) + ", " +
                   std::to_string(converged) + " converged necks, " + fmt(dt, 3) + " s";
    return o;
}

std::map<std::string, std::string> snapshot(const fs::path& dir)
{
    std::map<std::string, std::string> files;
    for (const auto& e : fs::recursive_directory_iterator(dir)) {
        if (!e.is_regular_file()) continue;
        std::ifstream f(e.path(), std::ios::binary);
        std::ostringstream s;
        s << f.rdbuf();
        files[fs::relative(e.path(), dir).string()] = s.str();
    }
    return files;
}

Outcome c9(const std::string& cli, const fs::path& scratch)
{
    Outcome o;
    const std::vector<std::pair<std::string, std::string>> runs = {
        {"catenoid", "catenoid-index --n 4 --S 30,60 --mesh 2000"},
        {"lorentz", "lorentz --seed 7"},
        {"equivalence", "equivalence --surface catenoid --seed 3"},
        {"neck", "neck --seed 5 --count 6"},
    };
    int files = 0;
    for (const auto& [name, args] : runs) {
        const fs::path out = scratch / ("determinism_" + name);
        fs::remove_all(out);
        const std::string cmd = "\"" + cli + "\" " + args + " --out \"" + out.string() + "\" > /dev/null 2>&1";
        const int a = std::system(cmd.c_str());
        const auto first = snapshot(out);
        const int b = std::system(cmd.c_str());
        const auto second = snapshot(out);
        o.require(a == b, name + ": exit status changed");
        o.require(!first.empty(), name + ": no reports written");
        o.require(first == second, name + ": reports differ between runs");
        files += static_cast<int>(first.size());
    }
    if (o.pass) o.detail = std::to_string(files) + " report files byte-identical across repeated runs";
    return o;
}

}  // namespace

int main(int argc, char** argv)
{
    if (argc < 3) {
        std::fprintf(stderr, "usage: acceptance <cli> <scratch-dir>\n");
        return 2;
    }
    const std::string cli = argv[1];
    const fs::path scratch = argv[2];
    fs::create_directories(scratch);

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"C1 catenoid index", c1},
        {"C2 weighted catenoid nullity", c2},
        {"C3 membership classification", c3},
        {"C4 sphere spectrum", c4},
        {"C5 weighted/unweighted equivalence", c5},
        {"C6 lorentz battery", c6},
        {"C7 neck stability", c7},
        {"C8 degeneration verdicts", c8},
        {"C9 determinism", [&] { return c9(cli, scratch); }},
    };
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        failed += !o.pass;
        std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
