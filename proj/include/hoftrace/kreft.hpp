#pragma once

#include <complex>
#include <vector>

#include "hoftrace/flux.hpp"

namespace hoftrace {

// The momentum-independent Chambers polynomial
//
//     E^q b(1/E) = -sum_{j=0}^{floor(q/2)} a(2j) E^{q-2j},   a(0) = -1,
//
// whose level sets E^q b(1/E) = 2(cos q kx + (lambda/2)^q cos q ky) are the
// Bloch bands of the almost Mathieu operator at flux p/q.
struct ChambersPolynomial {
    Flux flux;
    double lambda = 2.0;
    // a[j] holds a(2j), j = 0..floor(q/2).
    std::vector<double> a;
    // The same coefficients at extended precision, filled by chambers_recursive
    // and empty otherwise. Trace sums use them when present.
    std::vector<WideReal> a_wide;

    int q() const { return flux.q(); }
    int half_q() const { return flux.half_q(); }
    // 2(1 + (lambda/2)^q): largest |s| reachable by the band parametrization.
    double spectral_half_width() const;
};

struct BuildingBlock {
    int k = 0;
    std::complex<double> alpha;
    std::complex<double> alpha_bar;

    std::complex<double> product() const { return alpha * alpha_bar; }
};

// Off-diagonal pair of the tridiagonalized secular matrix at row k, ky = 0.
// Throws IndexError unless 0 <= k < q.
BuildingBlock building_block(const Flux& flux, double lambda, int k);

// Coefficients from the three-term determinant recursion
// D_k = -E D_{k-1} - alpha(k-2) alpha_bar(k-2) D_{k-2}, carried as
// coefficient vectors in E.
ChambersPolynomial chambers_recursive(const Flux& flux, double lambda);

// Coefficients from the nested-sum closed form, evaluated by a prefix-sum
// dynamic program in O(j q) per coefficient.
ChambersPolynomial chambers_nested(const Flux& flux, double lambda);

// E^q b(1/E) in expanded form (Horner in E^2); finite at E = 0.
double eval_big_E(const ChambersPolynomial& poly, double E);

// Ascending coefficients (index = power of E) of E^q b(1/E), length q + 1.
std::vector<double> big_E_coefficients(const ChambersPolynomial& poly);

// b(z) = -sum_j a(2j) z^{2j}, ascending in z, length 2 floor(q/2) + 1.
std::vector<double> b_coefficients(const ChambersPolynomial& poly);

}  // namespace hoftrace
