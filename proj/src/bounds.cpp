#include "gtherm/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "gtherm/errors.hpp"

namespace gtherm {

namespace {

constexpr double kLogSkipThreshold = -690.0; // log(1e-300) ~ -690.78

struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x) {
        const double term = x - comp;
        const double next = sum + term;
        comp = (next - sum) - term;
        sum = next;
    }
};

} // namespace

OptimalRisk eps_opt(const SpinGasModel& model, const Support& support,
                    std::size_t node_count) {
    const long long n = model.spin_count();
    if (n > kSpinEnumerationCap) {
        throw ValidationError("spin count " + std::to_string(n) +
                              " exceeds the outcome enumeration cap " +
                              std::to_string(kSpinEnumerationCap));
    }
    const LogGrid grid(support, node_count);
    const std::size_t nn = grid.size();
    const double width = support.log_width();
    const double gap = model.energy_gap();

    // Per-node pieces of log p(r | y_j) = lc_r - r a_j - n b_j.
    std::vector<double> a(nn), b(nn);
    for (std::size_t j = 0; j < nn; ++j) {
        a[j] = gap / grid.y(j);
        b[j] = std::log1p(std::exp(-a[j]));
    }
    const auto u = grid.u_nodes();
    const auto w = grid.weights();

    // Prior moments of u on the same quadrature, so that the decomposition
    // identity holds to quadrature consistency rather than by fiat.
    std::vector<double> tmp(nn);
    for (std::size_t j = 0; j < nn; ++j) tmp[j] = u[j] / width;
    const double m1 = grid.integrate(tmp);
    for (std::size_t j = 0; j < nn; ++j) tmp[j] = u[j] * u[j] / width;
    const double q2 = grid.integrate(tmp);
    const double eps_p = q2 - m1 * m1;
    const double theta_p = std::exp(m1);

    // log p(r | y) is concave in a = gap/y with stationary point
    // a* = log(n/r - 1); over the grid it is unimodal in j, so probing the
    // nodes bracketing a* yields the row maximum. Rows whose maximum falls
    // below the skip threshold carry mass < 1e-300 each and are dropped.
    const auto row_log = [&](long long r, std::size_t j) {
        return model.log_binomial(r) - static_cast<double>(r) * a[j] -
               static_cast<double>(n) * b[j];
    };
    const auto row_peak = [&](long long r) {
        std::size_t j_star = 0;
        if (r == 0) {
            j_star = 0; // maximum at the largest a, i.e. the coldest node
        } else if (2 * r >= n) {
            j_star = nn - 1; // score negative everywhere: hottest node
        } else {
            const double a_star = std::log(static_cast<double>(n) / static_cast<double>(r) - 1.0);
            const double u_star = std::log(gap / a_star);
            const double pos = (u_star - u[0]) / grid.step();
            const double clamped = std::clamp(pos, 0.0, static_cast<double>(nn - 1));
            j_star = static_cast<std::size_t>(std::llround(clamped));
        }
        double peak = -std::numeric_limits<double>::infinity();
        const std::size_t lo = (j_star >= 2) ? j_star - 2 : 0;
        const std::size_t hi = std::min(j_star + 2, nn - 1);
        for (std::size_t j = lo; j <= hi; ++j) {
            peak = std::max(peak, row_log(r, j));
        }
        return peak;
    };

    KahanSum sum_p;          // total predictive mass, should be 1
    KahanSum sum_p_log2;     // sum_r p(r) log^2 theta(r)
    KahanSum sum_k;          // sum_r p(r) log^2[theta(r)/theta_p]
    long long skipped = 0;
    std::vector<double> t(nn);
    for (long long r = 0; r <= n; ++r) {
        if (row_peak(r) < kLogSkipThreshold) {
            ++skipped;
            continue;
        }
        double t_max = -std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < nn; ++j) {
            t[j] = row_log(r, j);
            t_max = std::max(t_max, t[j]);
        }
        double s0 = 0.0, s1 = 0.0;
        for (std::size_t j = 0; j < nn; ++j) {
            const double e = w[j] * std::exp(t[j] - t_max);
            s0 += e;
            s1 += u[j] * e;
        }
        const double p_r = (s0 / width) * std::exp(t_max);
        const double log_theta = s1 / s0;
        sum_p.add(p_r);
        sum_p_log2.add(p_r * log_theta * log_theta);
        const double dk = log_theta - m1;
        sum_k.add(p_r * dk * dk);
    }

    // Each skipped row is bounded by exp(peak) <= 1e-300; even all n rows
    // together stay far below the 1e-12 budget.
    if (static_cast<double>(skipped) * 1e-300 > 1e-12) {
        throw NumericalError("dropped outcome mass exceeds budget");
    }
    if (std::abs(sum_p.sum - 1.0) > 1e-9) {
        throw NumericalError("eps_opt quadrature failure: predictive mass " +
                             std::to_string(sum_p.sum));
    }

    OptimalRisk out;
    out.eps_p = eps_p;
    out.theta_p = theta_p;
    out.info_gain = sum_k.sum;
    out.eps_opt = q2 - sum_p_log2.sum;
    const double via_decomposition = eps_p - out.info_gain;
    const double scale = std::max(std::abs(out.eps_opt), 1e-30);
    if (std::abs(out.eps_opt - via_decomposition) > 1e-8 * scale) {
        throw NumericalError("eps_opt decomposition identity violated: direct " +
                             std::to_string(out.eps_opt) + " vs eps_p - K " +
                             std::to_string(via_decomposition));
    }
    return out;
}

namespace {

double prior_weighted_inverse_fisher(const ThermalModel& model, const Support& support,
                                     std::size_t node_count, bool noise_to_signal) {
    const LogGrid grid(support, node_count);
    const double norm = support.prior_normalization();
    std::vector<double> f(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double y = grid.y(j);
        const double fisher = model.fisher_information(y);
        if (fisher == 0.0) {
            return std::numeric_limits<double>::infinity();
        }
        f[j] = noise_to_signal ? norm / (y * y * fisher) : norm / fisher;
    }
    return grid.integrate(f);
}

} // namespace

double eps_cr(const ThermalModel& model, const Support& support, std::size_t node_count) {
    return prior_weighted_inverse_fisher(model, support, node_count, true);
}

double eps_flat(const ThermalModel& model, const Support& support, std::size_t node_count) {
    return prior_weighted_inverse_fisher(model, support, node_count, false);
}

BoundPoint bound_point(const SpinGasModel& model, const Support& support,
                       std::size_t node_count) {
    const OptimalRisk opt = eps_opt(model, support, node_count);
    BoundPoint pt;
    pt.n = model.spin_count();
    pt.eps_opt = opt.eps_opt;
    pt.eps_p = opt.eps_p;
    pt.info_gain = opt.info_gain;
    pt.eps_cr = eps_cr(model, support, node_count);
    pt.eps_flat = eps_flat(model, support, node_count);
    if (pt.eps_opt < -1e-12 || pt.eps_opt > pt.eps_p * (1.0 + 1e-12) ||
        pt.eps_opt > pt.eps_cr * (1.0 + 1e-12)) {
        throw NumericalError("bound ordering violated at n = " + std::to_string(pt.n));
    }
    return pt;
}

double AsymptoticFit::b() const { return std::exp(log_b); }

AsymptoticFit fit_asymptotic(std::span<const BoundPoint> points) {
    if (points.size() < 5) {
        throw ValidationError("asymptotic fit needs at least 5 points");
    }
    const std::size_t m = points.size();
    std::vector<double> x(m), z(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double diff = points[i].eps_cr - points[i].eps_opt;
        if (!(points[i].eps_opt > 0.0) || !(diff > 0.0) || !std::isfinite(diff)) {
            throw NumericalError(
                "non-positive eps_cr - eps_opt at n = " + std::to_string(points[i].n) +
                "; quadrature noise dominates, refusing to fit");
        }
        x[i] = std::log(static_cast<double>(points[i].n));
        z[i] = std::log(diff);
    }
    double x_bar = 0.0, z_bar = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        x_bar += x[i];
        z_bar += z[i];
    }
    x_bar /= static_cast<double>(m);
    z_bar /= static_cast<double>(m);
    double sxx = 0.0, sxz = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        sxx += (x[i] - x_bar) * (x[i] - x_bar);
        sxz += (x[i] - x_bar) * (z[i] - z_bar);
    }
    if (!(sxx > 0.0)) {
        throw ValidationError("asymptotic fit needs at least two distinct n values");
    }

    AsymptoticFit fit;
    fit.q = sxz / sxx;
    fit.log_b = z_bar - fit.q * x_bar;
    fit.n_values.resize(m);
    fit.residuals.resize(m);
    double rss = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        fit.n_values[i] = static_cast<double>(points[i].n);
        fit.residuals[i] = z[i] - (fit.q * x[i] + fit.log_b);
        rss += fit.residuals[i] * fit.residuals[i];
    }
    const double dof = static_cast<double>(m) - 2.0;
    const double s2 = (dof > 0.0) ? rss / dof : 0.0;
    fit.stderr_q = std::sqrt(s2 / sxx);
    fit.stderr_log_b = std::sqrt(s2 * (1.0 / static_cast<double>(m) + x_bar * x_bar / sxx));
    return fit;
}

double tolerance_spins(double tau, double c1, double c2, double q) {
    if (!std::isfinite(tau) || tau <= 0.0 || tau >= 1.0) {
        throw ValidationError("tolerance tau must lie in (0, 1)");
    }
    if (!(c1 > 0.0) || !(c2 > 0.0)) {
        throw ValidationError("tolerance_spins requires c1 > 0 and c2 > 0");
    }
    if (!(q < -1.0)) {
        throw ValidationError("tolerance_spins requires q < -1");
    }
    return std::pow((c2 / c1) * (1.0 + 1.0 / tau), 1.0 / (-1.0 - q));
}

} // namespace gtherm
