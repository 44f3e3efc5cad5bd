#include "hoftrace/dos.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "hoftrace/errors.hpp"
#include "hoftrace/kreft.hpp"
#include "hoftrace/traces.hpp"

namespace hoftrace {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Ratio of consecutive panel lengths approaching a logarithmic point, and the
// number of graded panels (0.15^20 ~ 3e-17).
constexpr double kGrading = 0.15;
constexpr int kGradedPanels = 20;

// K from the complementary modulus k' = sqrt(1 - m): pi / (2 AGM(1, k')).
double k_from_complementary_modulus(double kp) {
    if (kp == 0.0) return kInf;
    double a = 1.0;
    double b = kp;
    for (int i = 0; i < 64 && std::abs(a - b) > 1e-16 * a; ++i) {
        const double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return kPi / (2.0 * a);
}

// Non-const and per thread: the finite-interval integrate is not const-callable
// in older Boost, and the abscissa tables grow lazily.
boost::math::quadrature::tanh_sinh<double>& inner_integrator() {
    thread_local boost::math::quadrature::tanh_sinh<double> integrator;
    return integrator;
}

// Keeps the outer nodes at least ~1e-12 of the panel away from its ends, where
// the density's logarithmic divergence cannot be resolved in double precision.
boost::math::quadrature::tanh_sinh<double>& outer_integrator() {
    thread_local boost::math::quadrature::tanh_sinh<double> integrator(15, 1e-12);
    return integrator;
}

// Convolution integral with the four square-root roots -2lt, 2lt, s-2, s+2.
// On [lo, hi] substitute t = lo + w sin^2(theta), which absorbs both endpoint
// inverse square roots: dt / sqrt((t-lo)(hi-t)) = 2 dtheta. What remains is
// 1/sqrt((g1 + w sin^2)(g2 + w cos^2)) with g1, g2 the distances from lo, hi to
// the other two roots.
double convolution_density(double s, double lt) {
    const double lo = std::max(-2.0 * lt, s - 2.0);
    const double hi = std::min(2.0 * lt, s + 2.0);
    const double w = hi - lo;
    if (w < 0.0) return 0.0;
    const double g1 = lo - std::min(-2.0 * lt, s - 2.0);
    const double g2 = std::max(2.0 * lt, s + 2.0) - hi;
    if (w == 0.0) return (g1 > 0.0 && g2 > 0.0) ? 1.0 / (kPi * std::sqrt(g1 * g2)) : kInf;
    if (g1 <= 0.0 || g2 <= 0.0) return kInf;

    const double half = 0.5 * kPi;
    auto f = [&](double theta, double complement) {
        // complement is a - theta (negative) near the left end, b - theta near the right
        const bool left = complement < 0.0;
        const double sn = left ? std::sin(theta) : std::cos(complement);
        const double cs = left ? std::cos(theta) : std::sin(complement);
        return 1.0 / std::sqrt((g1 + w * sn * sn) * (g2 + w * cs * cs));
    };
    const double integral = inner_integrator().integrate(f, 0.0, half, 1e-13);
    return 2.0 * integral / (kPi * kPi);
}

void add_graded_panels(double a, double b, bool singular_left, bool singular_right,
                       std::vector<std::pair<double, double>>& panels) {
    if (b <= a) return;
    if (singular_left && singular_right) {
        const double mid = 0.5 * (a + b);
        add_graded_panels(a, mid, true, false, panels);
        add_graded_panels(mid, b, false, true, panels);
        return;
    }
    if (!singular_left && !singular_right) {
        panels.emplace_back(a, b);
        return;
    }
    const double len = b - a;
    // Breakpoints at distance len * kGrading^j from the singular end, stopping
    // before the panels fall below what doubles near that end can resolve.
    const double floor = 1e-10 * std::max(1.0, std::abs(singular_left ? a : b));
    std::vector<double> dist{len};
    for (int j = 1; j <= kGradedPanels && dist.back() * kGrading > floor; ++j)
        dist.push_back(dist.back() * kGrading);
    dist.push_back(0.0);
    for (std::size_t j = 0; j + 1 < dist.size(); ++j) {
        if (singular_left)
            panels.emplace_back(a + dist[j + 1], a + dist[j]);
        else
            panels.emplace_back(b - dist[j], b - dist[j + 1]);
    }
}

}  // namespace

double elliptic_k(double m) {
    if (!(m < 1.0)) throw DomainError("elliptic_k: parameter m must be < 1");
    return k_from_complementary_modulus(std::sqrt(1.0 - m));
}

double elliptic_k_complement(double m1) {
    if (!(m1 > 0.0)) throw DomainError("elliptic_k_complement: complementary parameter must be > 0");
    return k_from_complementary_modulus(std::sqrt(m1));
}

double rho_free(double s) {
    const double a = std::abs(s);
    if (a > 4.0) return 0.0;
    // 1 - m = s^2/16, so the complementary modulus is |s|/4 exactly.
    return k_from_complementary_modulus(a / 4.0) / (2.0 * kPi * kPi);
}

double rho_lambda(double s, double lambda_tilde) {
    if (!(lambda_tilde > 0.0)) throw DomainError("rho_lambda: lambda_tilde must be positive");
    if (lambda_tilde == 1.0) return rho_free(s);
    const double a = std::abs(s);
    if (a > 2.0 * (1.0 + lambda_tilde)) return 0.0;
    return convolution_density(a, lambda_tilde);
}

std::vector<double> DensityProfile::log_points() const {
    if (lambda_tilde == 1.0) return {0.0};
    return {std::abs(2.0 - 2.0 * lambda_tilde)};
}

DensityProfile make_density_profile(double lambda_tilde) {
    if (!(lambda_tilde > 0.0)) throw DomainError("density profile: lambda_tilde must be positive");
    DensityProfile p;
    p.lambda_tilde = lambda_tilde;
    p.support_half_width = 2.0 * (1.0 + lambda_tilde);
    p.evaluator = [lambda_tilde](double s) { return rho_lambda(s, lambda_tilde); };
    return p;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    // Golub-Welsch: eigen-decomposition of the Legendre Jacobi matrix.
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) {
        const double b = i / std::sqrt(4.0 * i * i - 1.0);
        jac(i, i - 1) = b;
        jac(i - 1, i) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jac);
    nodes.resize(n);
    weights.resize(n);
    for (int i = 0; i < n; ++i) {
        nodes[i] = solver.eigenvalues()(i);
        const double v = solver.eigenvectors()(0, i);
        weights[i] = 2.0 * v * v;
    }
}

double DensityRule::integrate_even(const std::function<double(double)>& f) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
    return 2.0 * sum;
}

DensityRule tabulate(const DensityProfile& profile, int nodes_per_panel) {
    if (nodes_per_panel < kMinQuadratureNodes)
        throw std::invalid_argument("tabulate: at least " + std::to_string(kMinQuadratureNodes) +
                                    " nodes per panel required");
    const double top = profile.support_half_width;
    std::vector<std::pair<double, double>> panels;
    const double b = profile.log_points().front();
    if (b <= 0.0) {
        add_graded_panels(0.0, top, true, false, panels);
    } else {
        add_graded_panels(0.0, b, false, true, panels);
        add_graded_panels(b, top, true, false, panels);
    }

    std::vector<double> x, w;
    gauss_legendre(nodes_per_panel, x, w);
    DensityRule rule;
    for (const auto& [lo, hi] : panels) {
        const double half = 0.5 * (hi - lo);
        const double mid = 0.5 * (hi + lo);
        for (int i = 0; i < nodes_per_panel; ++i) {
            const double s = mid + half * x[i];
            rule.nodes.push_back(s);
            rule.weights.push_back(half * w[i] * profile(s));
        }
    }
    return rule;
}

double moment(const DensityProfile& profile, int k) {
    if (k < 0) throw std::invalid_argument("moment: k must be nonnegative");
    auto f = [&](double s) {
        double p = 1.0;
        for (int i = 0; i < k; ++i) p *= s * s;
        return p * profile(s);
    };
    const double top = profile.support_half_width;
    const double b = profile.log_points().front();
    double total = 0.0;
    if (b > 0.0) total += outer_integrator().integrate(f, 0.0, b, 1e-11);
    total += outer_integrator().integrate(f, b, top, 1e-11);
    return 2.0 * total;
}

double exact_moment_lambda(int k, double lambda_tilde) {
    if (k < 0) throw std::invalid_argument("exact_moment_lambda: k must be nonnegative");
    return central_factor(k, lambda_tilde);
}

double integrate_point_traces(const Flux& flux, double lambda, int n, int quadrature_nodes) {
    const auto poly = chambers_recursive(flux, lambda);
    const auto rule = tabulate(make_density_profile(lambda_tilde(lambda, flux.q())), quadrature_nodes);
    // pm_s_trace(poly, n, s) through its s^2 expansion, enumerated once
    const auto c = pm_s_polynomial_wide(poly, n);
    return rule.integrate_even([&](double s) {
        const WideReal s2 = WideReal(s) * s;
        WideReal acc = 0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * s2 + *it;
        return acc.convert_to<double>();
    });
}

double integrate_point_traces_exact(const Flux& flux, double lambda, int n) {
    const auto poly = chambers_recursive(flux, lambda);
    WideReal lt = 1;
    for (int i = 0; i < flux.q(); ++i) lt *= WideReal(lambda) / 2;
    const auto c = pm_s_polynomial_wide(poly, n);
    WideReal total = 0;
    for (std::size_t k = 0; k < c.size(); ++k) total += c[k] * central_factor_wide(static_cast<int>(k), lt);
    return total.convert_to<double>();
}

}  // namespace hoftrace
