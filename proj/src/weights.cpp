#include "bubblespec/weights.hpp"

#include "bubblespec/errors.hpp"
#include "bubblespec/lorentz.hpp"
#include "bubblespec/rng.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace bubblespec {

std::string to_string(WeightKind kind)
{
    switch (kind) {
    case WeightKind::bubble_omega: return "bubble_omega";
    case WeightKind::sequence_omega: return "sequence_omega";
    case WeightKind::base_omega: return "base_omega";
    case WeightKind::constant: return "constant";
    case WeightKind::custom: return "custom";
    }
    return "unknown";
}

namespace {

void finish(Weight& w)
{
    w.essinf = *std::min_element(w.samples.begin(), w.samples.end());
    if (!(w.essinf > 0.0)) throw std::invalid_argument("weight must be bounded below by a positive constant");
}

double axial_distance(const ProfileCurve& p, std::size_t i, double center, double period)
{
    double dz = p.z[i] - center;
    if (period > 0.0) dz = std::remainder(dz, period);
    return std::hypot(p.h[i], dz);
}

}  // namespace

Weight weight_bubble(const ProfileCurve& p, double R)
{
    if (!(R >= 1.0)) throw std::invalid_argument("bubble weight: R must be >= 1");
    if (!(R < p.max_radius())) throw std::invalid_argument("bubble weight: R exceeds the profile truncation");
    Weight w;
    w.kind = WeightKind::bubble_omega;
    w.R = R;
    w.decay = 1.0;
    w.label = "bubble";
    w.samples.resize(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double r = p.radius(i);
        w.samples[i] = r <= R ? 1.0 / (R * R) : 1.0 / (r * r);
    }
    finish(w);
    return w;
}

Weight weight_sequence(const ProfileCurve& p, const std::vector<BubblePoint>& bubbles, double delta, double R,
                       double axial_period)
{
    if (bubbles.empty()) throw std::invalid_argument("sequence weight: need at least one bubble");
    if (!(delta > 0.0) || !(R > 0.0)) throw std::invalid_argument("sequence weight: delta and R must be positive");
    for (std::size_t j = 0; j < bubbles.size(); ++j) {
        if (!(bubbles[j].scale > 0.0) || !(4.0 * R * bubbles[j].scale < delta)) {
            std::ostringstream msg;
            msg << "sequence weight: bubble " << j << " violates 4 R r_j < delta (r_j = " << bubbles[j].scale << ")";
            throw ConstraintViolation(msg.str(), static_cast<int>(j));
        }
    }
    Weight w;
    w.kind = WeightKind::sequence_omega;
    w.R = R;
    w.delta = delta;
    w.label = "sequence";
    w.samples.assign(p.size(), 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (const auto& b : bubbles) {
            const double d = axial_distance(p, i, b.center, axial_period);
            const double cap = R * b.scale;
            const double v = d <= cap ? 1.0 / (cap * cap) : std::max(1.0 / (delta * delta), 1.0 / (d * d));
            w.samples[i] = std::max(w.samples[i], v);
        }
    }
    finish(w);
    return w;
}

Weight weight_base(const ProfileCurve& p, const std::vector<double>& centers, double delta, double axial_period)
{
    if (!(delta > 0.0)) throw std::invalid_argument("base weight: delta must be positive");
    Weight w;
    w.kind = WeightKind::base_omega;
    w.delta = delta;
    w.label = "base";
    w.samples.assign(p.size(), 1.0 / (delta * delta));
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (double c : centers) {
            const double d = axial_distance(p, i, c, axial_period);
            w.samples[i] = std::max(w.samples[i], 1.0 / (d * d));
        }
    }
    finish(w);
    return w;
}

Weight weight_constant(const ProfileCurve& p, double c)
{
    if (!(c > 0.0)) throw std::invalid_argument("constant weight must be positive");
    Weight w;
    w.kind = WeightKind::constant;
    w.label = "constant";
    w.samples.assign(p.size(), c);
    finish(w);
    return w;
}

Weight weight_custom(const ProfileCurve& p, std::vector<double> samples, std::string label)
{
    if (samples.size() != p.size()) throw std::invalid_argument("custom weight is not aligned with the profile");
    Weight w;
    w.kind = WeightKind::custom;
    w.label = std::move(label);
    w.samples = std::move(samples);
    finish(w);
    return w;
}

Weight weight_random_piecewise(const ProfileCurve& p, std::uint64_t seed, int pieces, double lo, double hi)
{
    if (pieces < 1 || !(lo > 0.0) || !(hi >= lo)) throw std::invalid_argument("random weight: bad parameters");
    Rng rng(seed);
    std::vector<double> levels(static_cast<std::size_t>(pieces));
    for (double& v : levels) v = rng.uniform(lo, hi);
    std::vector<double> samples(p.size());
    const double span = p.s_hi - p.s_lo;
    for (std::size_t i = 0; i < p.size(); ++i) {
        auto k = static_cast<std::size_t>((p.s[i] - p.s_lo) / span * pieces);
        samples[i] = levels[std::min(k, levels.size() - 1)];
    }
    auto w = weight_custom(p, std::move(samples), "random:" + std::to_string(seed));
    return w;
}

void check_aligned(const ProfileCurve& p, const Weight& w)
{
    if (w.samples.size() != p.size()) throw std::invalid_argument("weight is not aligned with the profile grid");
}

WeightBounds verify_weight_bounds(const ProfileCurve& p, const Weight& w)
{
    check_aligned(p, w);
    WeightBounds b;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double ratio = (p.a2[i] + std::abs(p.ricci)) / w.samples[i];
        if (ratio > b.curvature_ratio) {
            b.curvature_ratio = ratio;
            b.argmax = i;
        }
    }
    MeasuredSamples f{w.samples, p.measure()};
    b.lorentz_norm = lorentz_quasinorm(f, 0.5 * p.n, kInfinity);
    return b;
}

}  // namespace bubblespec
