#pragma once

#include <functional>
#include <vector>

#include "hoftrace/flux.hpp"

namespace hoftrace {

// Complete elliptic integral of the first kind in the parameter convention,
// K(m) = int_0^{pi/2} dtheta / sqrt(1 - m sin^2 theta), by the AGM.
// Throws DomainError for m >= 1.
double elliptic_k(double m);

// K as a function of the complementary parameter m1 = 1 - m > 0. Avoids the
// cancellation in 1 - m near the logarithmic singularity.
double elliptic_k_complement(double m1);

// Free square-lattice density of states (1/2pi^2) K(1 - s^2/16) on [-4, 4].
// Returns +infinity at s = 0 (logarithmic divergence) and 0 for |s| > 4.
double rho_free(double s);

// Density of s = 2(cos x + lt cos y) for uniform x, y: the convolution of
// arcsine laws on [-2, 2] and [-2 lt, 2 lt]. lt = 1 delegates to rho_free.
// Returns +infinity at the logarithmic points |s| = |2 - 2 lt| and 0 outside
// [-2(1+lt), 2(1+lt)]. Throws DomainError for lt <= 0.
double rho_lambda(double s, double lambda_tilde);

struct DensityProfile {
    double lambda_tilde = 1.0;
    double support_half_width = 4.0;  // 2(1 + lambda_tilde)
    std::function<double(double)> evaluator;

    double operator()(double s) const { return evaluator(s); }
    // Points of [0, support_half_width] where the density diverges.
    std::vector<double> log_points() const;
};

DensityProfile make_density_profile(double lambda_tilde);

// Nodes and density-weighted weights on [0, support]: for even f,
// int f rho ds over the full support ~= 2 sum_i weight_i f(node_i).
struct DensityRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    double integrate_even(const std::function<double(double)>& f) const;
};

// Composite Gauss-Legendre rule with `nodes_per_panel` points on each panel of
// a mesh graded geometrically towards every logarithmic point.
DensityRule tabulate(const DensityProfile& profile, int nodes_per_panel);

// Minimum accepted nodes_per_panel for tabulate / integrate_point_traces.
inline constexpr int kMinQuadratureNodes = 8;

// Adaptive (tanh-sinh) quadrature of s^{2k} rho(s) over the support, split at
// the logarithmic points.
double moment(const DensityProfile& profile, int k);

// binom(2k,k) sum_{k1} binom(k,k1)^2 lt^{2 k1}.
double exact_moment_lambda(int k, double lambda_tilde);

// int Tr_{+-s} (H^(lambda))^n rho^(lambda)(s) ds by quadrature over the tabulated density.
double integrate_point_traces(const Flux& flux, double lambda, int n, int quadrature_nodes);

// Same integral with the trace expanded in s^2 and each power replaced by its
// exact moment.
double integrate_point_traces_exact(const Flux& flux, double lambda, int n);

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace hoftrace
