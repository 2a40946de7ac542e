#include "bubblespec/spectral.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <stdexcept>

namespace bubblespec {

namespace {

long long binomial(int n, int k)
{
    if (k < 0 || n < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

double pivot_floor(const ModeProblem& pr)
{
    double e2 = 1.0;
    for (double e : pr.off) e2 = std::max(e2, e * e);
    e2 = std::max(e2, pr.corner * pr.corner);
    return DBL_MIN * e2;
}

void gershgorin(const ModeProblem& pr, double& lo, double& hi)
{
    const std::size_t m = pr.size();
    lo = DBL_MAX;
    hi = -DBL_MAX;
    for (std::size_t i = 0; i < m; ++i) {
        double rad = 0.0;
        if (i > 0) rad += std::abs(pr.off[i - 1]) / std::sqrt(pr.mass[i] * pr.mass[i - 1]);
        if (i + 1 < m) rad += std::abs(pr.off[i]) / std::sqrt(pr.mass[i] * pr.mass[i + 1]);
        if (pr.bc == BoundaryCondition::periodic && (i == 0 || i + 1 == m))
            rad += std::abs(pr.corner) / std::sqrt(pr.mass.front() * pr.mass.back());
        const double c = pr.diag[i] / pr.mass[i];
        lo = std::min(lo, c - rad);
        hi = std::max(hi, c + rad);
    }
}

}  // namespace

int mode_multiplicity(int n, int l)
{
    if (n < 1 || l < 0) throw std::invalid_argument("mode multiplicity: need n >= 1 and l >= 0");
    if (l == 0) return 1;
    if (l == 1) return n;
    return static_cast<int>(binomial(l + n - 1, n - 1) - binomial(l + n - 3, n - 1));
}

ModeProblem assemble_mode(const ProfileCurve& p, std::span<const double> weight, int l, BoundaryCondition bc)
{
    const std::size_t m = p.size();
    if (!weight.empty() && weight.size() != m) throw std::invalid_argument("weight is not aligned with the profile grid");
    if (l < 0) throw std::invalid_argument("mode degree must be >= 0");
    if (bc == BoundaryCondition::periodic && !p.periodic)
        throw std::invalid_argument("periodic boundary condition needs a periodic profile");
    if (bc != BoundaryCondition::periodic && p.periodic)
        throw std::invalid_argument("periodic profile needs the periodic boundary condition");
    if (bc == BoundaryCondition::dirichlet && m < 3) throw std::invalid_argument("too few samples for Dirichlet");

    const std::vector<double> cell = p.cell_lengths();
    const double eig = static_cast<double>(l) * (l + p.n - 2);

    std::vector<double> K(m, 0.0);
    std::vector<double> E(m, 0.0);  // E[i] couples i, i+1 (E[m-1] is the periodic wrap)
    std::vector<double> Mass(m, 0.0);
    std::vector<double> stiff(m);
    for (std::size_t i = 0; i < m; ++i) stiff[i] = p.stiffness_density(i);
    for (std::size_t i = 0; i + 1 < m; ++i) {
        const double k = 0.5 * (stiff[i] + stiff[i + 1]) / (p.s[i + 1] - p.s[i]);
        K[i] += k;
        K[i + 1] += k;
        E[i] = -k;
    }
    if (bc == BoundaryCondition::periodic) {
        const double len = p.s.front() + (p.s_hi - p.s_lo) - p.s.back();
        const double k = 0.5 * (stiff.front() + stiff.back()) / len;
        K.front() += k;
        K.back() += k;
        E.back() = -k;
    }
    bool positive = true;
    for (std::size_t i = 0; i < m; ++i) {
        const double q = eig / (p.h[i] * p.h[i]) - p.a2[i] - p.ricci;
        K[i] += q * p.sqrt_g[i] * cell[i];
        const double w = weight.empty() ? 1.0 : weight[i];
        if (!(w > 0.0)) throw std::invalid_argument("weight samples must be positive");
        Mass[i] = w * p.sqrt_g[i] * cell[i];
        const bool unknown = bc != BoundaryCondition::dirichlet || (i > 0 && i + 1 < m);
        if (unknown && q < 0.0) positive = false;
    }

    ModeProblem pr;
    pr.l = l;
    pr.multiplicity = mode_multiplicity(p.n, l);
    pr.bc = bc;
    pr.certified_positive = positive;
    const std::size_t first = bc == BoundaryCondition::dirichlet ? 1 : 0;
    const std::size_t last = bc == BoundaryCondition::dirichlet ? m - 2 : m - 1;
    for (std::size_t i = first; i <= last; ++i) {
        pr.nodes.push_back(i);
        pr.diag.push_back(K[i]);
        pr.mass.push_back(Mass[i]);
        if (i < last) pr.off.push_back(E[i]);
    }
    if (bc == BoundaryCondition::periodic) pr.corner = E.back();
    return pr;
}

ModeProblem assemble_mode(const ProfileCurve& p, const Weight* weight, int l, BoundaryCondition bc)
{
    if (weight == nullptr) return assemble_mode(p, std::span<const double>{}, l, bc);
    check_aligned(p, *weight);
    return assemble_mode(p, std::span<const double>(weight->samples), l, bc);
}

std::size_t count_below(const ModeProblem& pr, double sigma)
{
    const std::size_t m = pr.size();
    const double pivmin = pivot_floor(pr);
    auto guard = [pivmin](double d) { return std::abs(d) < pivmin ? -pivmin : d; };
    std::size_t count = 0;
    if (pr.bc != BoundaryCondition::periodic || m < 3) {
        double d = guard(pr.diag[0] - sigma * pr.mass[0]);
        if (d < 0.0) ++count;
        for (std::size_t i = 1; i < m; ++i) {
            d = guard(pr.diag[i] - sigma * pr.mass[i] - pr.off[i - 1] * pr.off[i - 1] / d);
            if (d < 0.0) ++count;
        }
        return count;
    }
    // LDL^T with the last unknown bordered: col holds the current last column.
    const std::size_t b = m - 1;
    double d = pr.diag[0] - sigma * pr.mass[0];
    double col = pr.corner;
    double last = pr.diag[b] - sigma * pr.mass[b];
    for (std::size_t i = 0; i < b; ++i) {
        d = guard(d);
        if (d < 0.0) ++count;
        if (i + 1 == b) {
            const double c = col + pr.off[i];
            last -= c * c / d;
            break;
        }
        last -= col * col / d;
        const double next_d = pr.diag[i + 1] - sigma * pr.mass[i + 1] - pr.off[i] * pr.off[i] / d;
        col = -pr.off[i] * col / d;
        d = next_d;
    }
    if (guard(last) < 0.0) ++count;
    return count;
}

double eigenvalue(const ModeProblem& pr, std::size_t k)
{
    if (k >= pr.size()) throw std::out_of_range("eigenvalue index exceeds problem size");
    double lo = 0.0;
    double hi = 0.0;
    gershgorin(pr, lo, hi);
    const double scale = std::max(std::abs(lo), std::abs(hi));
    lo -= 1e-12 * scale + DBL_MIN;
    hi += 1e-12 * scale + DBL_MIN;
    const double floor = 2.0 * DBL_EPSILON * scale;
    for (int it = 0; it < 256 && hi - lo > std::max(floor, 2.0 * DBL_EPSILON * std::max(std::abs(lo), std::abs(hi)));
         ++it) {
        const double mid = 0.5 * (lo + hi);
        if (count_below(pr, mid) > k)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<double> smallest_eigenvalues(const ModeProblem& pr, std::size_t count)
{
    count = std::min(count, pr.size());
    std::vector<double> out(count);
    for (std::size_t k = 0; k < count; ++k) out[k] = eigenvalue(pr, k);
    return out;
}

std::vector<double> apply_stiffness(const ModeProblem& pr, const std::vector<double>& v)
{
    const std::size_t m = pr.size();
    std::vector<double> out(m);
    for (std::size_t i = 0; i < m; ++i) {
        double acc = pr.diag[i] * v[i];
        if (i > 0) acc += pr.off[i - 1] * v[i - 1];
        if (i + 1 < m) acc += pr.off[i] * v[i + 1];
        out[i] = acc;
    }
    if (pr.bc == BoundaryCondition::periodic && m >= 3) {
        out.front() += pr.corner * v.back();
        out.back() += pr.corner * v.front();
    }
    return out;
}

double rayleigh_quotient(const ModeProblem& pr, const std::vector<double>& v)
{
    const auto kv = apply_stiffness(pr, v);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        num += v[i] * kv[i];
        den += v[i] * v[i] * pr.mass[i];
    }
    return num / den;
}

std::vector<double> eigenvector(const ModeProblem& pr, double lambda)
{
    using Sparse = Eigen::SparseMatrix<double>;
    const auto m = static_cast<Eigen::Index>(pr.size());
    auto factor = [&](double shift, Eigen::SparseLU<Sparse>& lu) {
        std::vector<Eigen::Triplet<double>> entries;
        for (Eigen::Index i = 0; i < m; ++i) {
            const auto u = static_cast<std::size_t>(i);
            entries.emplace_back(i, i, pr.diag[u] - shift * pr.mass[u]);
            if (i + 1 < m) {
                entries.emplace_back(i, i + 1, pr.off[u]);
                entries.emplace_back(i + 1, i, pr.off[u]);
            }
        }
        if (pr.bc == BoundaryCondition::periodic && m >= 3) {
            entries.emplace_back(0, m - 1, pr.corner);
            entries.emplace_back(m - 1, 0, pr.corner);
        }
        Sparse A(m, m);
        A.setFromTriplets(entries.begin(), entries.end());
        lu.compute(A);
        return lu.info() == Eigen::Success;
    };
    Eigen::SparseLU<Sparse> lu;
    if (!factor(lambda, lu)) {
        double lo = 0.0;
        double hi = 0.0;
        gershgorin(pr, lo, hi);
        if (!factor(lambda - 1e-10 * std::max(std::abs(lo), std::abs(hi)), lu))
            throw std::runtime_error("inverse iteration: factorization failed");
    }

    Eigen::VectorXd x(m);
    for (Eigen::Index i = 0; i < m; ++i) x[i] = 1.0 + 0.1 * std::sin(1.0 + static_cast<double>(i));
    Eigen::VectorXd mass(m);
    for (Eigen::Index i = 0; i < m; ++i) mass[i] = pr.mass[static_cast<std::size_t>(i)];
    for (int it = 0; it < 4; ++it) {
        Eigen::VectorXd rhs = mass.cwiseProduct(x);
        x = lu.solve(rhs);
        x /= std::sqrt(x.cwiseProduct(mass).dot(x));
    }
    // fix the sign so the largest entry is positive
    Eigen::Index imax = 0;
    x.cwiseAbs().maxCoeff(&imax);
    if (x[imax] < 0.0) x = -x;
    return {x.data(), x.data() + m};
}

NonpositiveCount count_nonpositive(const ModeProblem& pr, double zero_tol, double error_estimate, std::size_t diagnostics)
{
    if (!(zero_tol >= 0.0)) throw std::invalid_argument("zero tolerance must be nonnegative");
    NonpositiveCount c;
    const std::size_t below_neg = count_below(pr, -zero_tol);
    const std::size_t below_pos = count_below(pr, zero_tol);
    c.neg = static_cast<int>(below_neg);
    c.zero = static_cast<int>(below_pos - below_neg);
    c.smallest = smallest_eigenvalues(pr, std::max<std::size_t>(diagnostics, below_pos));
    c.tol_warning = zero_tol < error_estimate;
    return c;
}

}  // namespace bubblespec
