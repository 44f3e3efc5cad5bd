#pragma once

#include <vector>

#include <Eigen/Dense>

#include "hoftrace/flux.hpp"

namespace hoftrace {

// q x q Bloch matrix of the almost Mathieu operator at quasi-momenta (kx, ky):
// diagonal lambda cos(ky + 2 pi p m / q), unit hopping, corner phases
// e^{-i q kx} (top right) and e^{+i q kx} (bottom left). For q = 1 and q = 2
// the corners fold onto existing entries and are added to them.
struct SecularMatrix {
    Flux flux;
    double lambda;
    double kx;
    double ky;
    Eigen::MatrixXcd entries;
};

SecularMatrix make_secular_matrix(const Flux& flux, double lambda, double kx, double ky);

// Ascending eigenvalues of the Hermitian secular matrix.
std::vector<double> eigenvalues(const SecularMatrix& matrix);

// (1/q) <sum_r E_r^n> over a grid x grid periodic trapezoid on [-pi, pi)^2.
// Exact up to eigensolver error when grid >= n + 1 (see bz_grid_sufficient).
// Rows are distributed over `threads` workers; partial sums are reduced in
// row order so the result does not depend on the worker count.
double bz_trace(const Flux& flux, double lambda, int n, int grid, int threads = 1);

bool bz_grid_sufficient(int n, int grid);

// Roots of E^q b(1/E) = sign * s, obtained as eigenvalues at momenta with
// 2(cos q kx + lt cos q ky) = sign * s. Momenta split s proportionally:
// c2 = clamp(sign s / (2(1+lt))), cos q kx = clamp(sign s / 2 - lt c2).
// Throws RangeError if |s| > 2(1 + lt).
std::vector<double> point_spectrum_roots(const Flux& flux, double lambda, double s, int sign);

struct WalkOptions {
    int cap = 20;
    // Height of the starting site; shifts every Peierls phase by gamma * origin_y.
    int origin_y = 0;
};

// <origin| H^n |origin> on the square lattice with Landau-gauge Peierls phases
// e^{+-i gamma y} on horizontal hops and amplitude lambda/2 on vertical hops.
// Throws TooLarge if n > options.cap.
double walk_trace(const Flux& flux, double lambda, int n, const WalkOptions& options = {});

}  // namespace hoftrace
