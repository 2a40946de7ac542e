#include "bubblespec/lorentz.hpp"

#include "bubblespec/profile.hpp"
#include "bubblespec/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bubblespec {

double DecreasingStep::operator()(double t) const
{
    if (levels.empty()) return 0.0;
    if (t <= 0.0) return levels.front();
    auto it = std::lower_bound(breakpoints.begin(), breakpoints.end(), t);
    if (it == breakpoints.end()) return 0.0;
    return levels[static_cast<std::size_t>(it - breakpoints.begin())];
}

void validate(const MeasuredSamples& f)
{
    if (f.values.size() != f.masses.size()) throw std::invalid_argument("samples and masses differ in length");
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        if (!(f.masses[i] > 0.0)) throw std::invalid_argument("sample masses must be positive");
        if (!(f.values[i] >= 0.0) || !std::isfinite(f.values[i]))
            throw std::invalid_argument("sample values must be finite and nonnegative");
    }
}

double distribution(const MeasuredSamples& f, double level)
{
    validate(f);
    double mass = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i)
        if (f.values[i] > level) mass += f.masses[i];
    return mass;
}

double distribution(const DecreasingStep& f, double level)
{
    double mass = 0.0;
    for (std::size_t k = 0; k < f.levels.size() && f.levels[k] > level; ++k) mass = f.breakpoints[k];
    return mass;
}

DecreasingStep rearrange(const MeasuredSamples& f)
{
    validate(f);
    std::vector<std::size_t> order(f.values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return f.values[a] > f.values[b]; });
    DecreasingStep out;
    double t = 0.0;
    for (std::size_t idx : order) {
        t += f.masses[idx];
        const double v = f.values[idx];
        if (!out.levels.empty() && out.levels.back() == v) {
            out.breakpoints.back() = t;
        } else {
            out.levels.push_back(v);
            out.breakpoints.push_back(t);
        }
    }
    return out;
}

double lorentz_quasinorm(const DecreasingStep& f, double p, double q)
{
    if (!(p > 1.0) || !std::isfinite(p)) throw std::invalid_argument("lorentz: p must lie in (1, inf)");
    if (!(q >= 1.0)) throw std::invalid_argument("lorentz: q must be >= 1");
    if (std::isinf(q)) {
        double sup = 0.0;
        for (std::size_t k = 0; k < f.levels.size(); ++k)
            sup = std::max(sup, std::pow(f.breakpoints[k], 1.0 / p) * f.levels[k]);
        return sup;
    }
    const double e = q / p;
    double sum = 0.0;
    double prev = 0.0;
    for (std::size_t k = 0; k < f.levels.size(); ++k) {
        const double tk = std::pow(f.breakpoints[k], e);
        if (f.levels[k] > 0.0) sum += std::pow(f.levels[k], q) * (tk - prev);
        prev = tk;
    }
    return std::pow(sum / e, 1.0 / q);
}

double lorentz_quasinorm(const MeasuredSamples& f, double p, double q)
{
    return lorentz_quasinorm(rearrange(f), p, q);
}

MeasuredSamples power(const MeasuredSamples& f, double gamma)
{
    MeasuredSamples out = f;
    for (double& v : out.values) v = std::pow(v, gamma);
    return out;
}

double power_identity_check(const MeasuredSamples& f, double p, double q, double gamma)
{
    if (!(gamma > 0.0) || !(p / gamma > 1.0)) throw std::invalid_argument("power identity: need gamma > 0 and p/gamma > 1");
    const double lhs = lorentz_quasinorm(power(f, gamma), p / gamma, q / gamma);
    const double rhs = std::pow(lorentz_quasinorm(f, p, q), gamma);
    if (rhs == 0.0) return lhs == 0.0 ? 0.0 : kInfinity;
    return std::abs(lhs - rhs) / rhs;
}

double conjugate_exponent(double p)
{
    if (std::isinf(p)) return 1.0;
    if (p == 1.0) return kInfinity;
    return p / (p - 1.0);
}

HolderResult holder_lorentz_check(const MeasuredSamples& f, const MeasuredSamples& h, double p1, double q1)
{
    validate(f);
    validate(h);
    if (f.masses != h.masses) throw std::invalid_argument("holder: functions must share their masses");
    HolderResult r;
    for (std::size_t i = 0; i < f.values.size(); ++i) r.lhs += f.values[i] * h.values[i] * f.masses[i];
    r.rhs = lorentz_quasinorm(f, p1, q1) * lorentz_quasinorm(h, conjugate_exponent(p1), conjugate_exponent(q1));
    return r;
}

HolderResult max_pair_check(const MeasuredSamples& f, const MeasuredSamples& g, int n)
{
    if (f.masses != g.masses) throw std::invalid_argument("max pair: functions must share their masses");
    const double p = 0.5 * n;
    MeasuredSamples m = f;
    for (std::size_t i = 0; i < m.values.size(); ++i) m.values[i] = std::max(f.values[i], g.values[i]);
    HolderResult r;
    r.lhs = lorentz_quasinorm(m, p, kInfinity);
    r.rhs = p / (p - 1.0) * (lorentz_quasinorm(f, p, kInfinity) + lorentz_quasinorm(g, p, kInfinity));
    return r;
}

double lorentz_sobolev_ratio(int n, double dr, const std::vector<double>& u)
{
    if (n < 3) throw std::invalid_argument("lorentz-sobolev: n must be >= 3");
    const double area = unit_sphere_area(n - 1);
    const std::size_t m = u.size();
    MeasuredSamples f;
    double energy = 0.0;
    for (std::size_t i = 0; i + 1 < m; ++i) {
        // cell [r_i, r_{i+1}] with midpoint values
        const double r0 = dr * static_cast<double>(i);
        const double r1 = r0 + dr;
        const double vol = area / n * (std::pow(r1, n) - std::pow(r0, n));
        const double grad = (u[i + 1] - u[i]) / dr;
        energy += grad * grad * vol;
        f.values.push_back(std::abs(0.5 * (u[i] + u[i + 1])));
        f.masses.push_back(vol);
    }
    const double p_star = 2.0 * n / (n - 2.0);
    return lorentz_quasinorm(f, p_star, 2.0) / std::sqrt(energy);
}

MeasuredSamples random_step_function(std::uint64_t seed, int pieces)
{
    Rng rng(seed);
    MeasuredSamples f;
    for (int k = 0; k < pieces; ++k) {
        f.values.push_back(rng.uniform(0.0, 10.0));
        f.masses.push_back(rng.uniform(0.1, 2.0));
    }
    return f;
}

int BatteryResult::passed() const
{
    int k = 0;
    for (const auto& c : cases) k += c.holds ? 1 : 0;
    return k;
}

BatteryResult power_identity_battery(std::uint64_t seed, int count, double tol)
{
    Rng rng(seed);
    BatteryResult r;
    for (int k = 0; k < count; ++k) {
        BatteryCase c;
        c.seed = seed * 1000003u + static_cast<std::uint64_t>(k);
        // both (p, q) and (p, q) / gamma must be admissible
        c.p = rng.uniform(1.0, 6.0);
        c.gamma = rng.uniform(0.25, 0.95 * std::min(4.0, c.p));
        c.q = rng.uniform() < 0.25 ? kInfinity : std::max(1.0, c.gamma) * rng.uniform(1.0, 4.0);
        const auto f = random_step_function(c.seed, rng.uniform_int(1, 12));
        c.lhs = power_identity_check(f, c.p, c.q, c.gamma);
        c.rhs = tol;
        c.holds = c.lhs <= tol;
        r.cases.push_back(c);
    }
    return r;
}

BatteryResult holder_battery(std::uint64_t seed, int count)
{
    Rng rng(seed);
    BatteryResult r;
    for (int k = 0; k < count; ++k) {
        BatteryCase c;
        c.seed = seed * 1000003u + static_cast<std::uint64_t>(k);
        c.p = rng.uniform(1.1, 6.0);
        c.q = rng.uniform() < 0.25 ? kInfinity : rng.uniform(1.1, 8.0);
        const int pieces = rng.uniform_int(1, 12);
        const auto f = random_step_function(c.seed, pieces);
        auto h = random_step_function(c.seed ^ 0x9e3779b97f4a7c15ull, pieces);
        h.masses = f.masses;
        const auto res = holder_lorentz_check(f, h, c.p, c.q);
        c.lhs = res.lhs;
        c.rhs = res.rhs;
        c.holds = res.holds();
        r.cases.push_back(c);
    }
    return r;
}

}  // namespace bubblespec
