#include "hoftrace/kreft.hpp"

#include <cmath>
#include <stdexcept>
#include <numbers>
#include <string>

#include <boost/math/constants/constants.hpp>

#include "hoftrace/errors.hpp"

namespace hoftrace {

namespace {

using cplx = std::complex<double>;

struct WideComplex {
    WideReal re = 0;
    WideReal im = 0;
};

// Imaginary residues left by the complex building blocks must be round-off.
double checked_real(cplx v, const char* what) {
    if (std::abs(v.imag()) >= 1e-9 * (1.0 + std::abs(v.real())))
        throw std::logic_error(std::string(what) + ": coefficient has a non-negligible imaginary part");
    return v.real();
}

std::vector<cplx> block_products(const Flux& flux, double lambda) {
    std::vector<cplx> beta(flux.q());
    for (int k = 0; k < flux.q(); ++k) beta[k] = building_block(flux, lambda, k).product();
    return beta;
}

// alpha * alpha_bar = (1 + h^2)(1 - cos theta) + i (1 - h^2) sin theta, h = lambda/2,
// with 1 - cos theta written as 2 sin^2(theta/2).
std::vector<WideComplex> wide_block_products(const Flux& flux, double lambda) {
    const WideReal h = WideReal(lambda) / 2;
    const WideReal h2 = h * h;
    std::vector<WideComplex> beta(flux.q());
    for (int k = 0; k < flux.q(); ++k) {
        const long long num = static_cast<long long>(k + 1) * flux.p() % flux.q();
        const WideReal half_theta = boost::math::constants::pi<WideReal>() * num / flux.q();
        const WideReal sn = sin(half_theta);
        beta[k].re = (1 + h2) * 2 * sn * sn;
        beta[k].im = (1 - h2) * sin(2 * half_theta);
    }
    return beta;
}

}  // namespace

double ChambersPolynomial::spectral_half_width() const {
    return 2.0 * (1.0 + lambda_tilde(lambda, q()));
}

BuildingBlock building_block(const Flux& flux, double lambda, int k) {
    if (k < 0 || k >= flux.q())
        throw IndexError("building block index " + std::to_string(k) + " outside [0, q)");
    // e^{2 i pi (k+1) p / q}, reduced so the angle stays exact for k = q-1.
    const long long num = static_cast<long long>(k + 1) * flux.p() % flux.q();
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(num) / flux.q();
    const cplx phase = std::polar(1.0, theta);
    const double h = lambda / 2.0;
    const double inv = (2.0 / lambda) * (2.0 / lambda);
    BuildingBlock b;
    b.k = k;
    b.alpha = h * (1.0 - phase);
    b.alpha_bar = h * (1.0 - inv * std::conj(phase));
    return b;
}

ChambersPolynomial chambers_recursive(const Flux& flux, double lambda) {
    const int q = flux.q();
    const auto beta = wide_block_products(flux, lambda);

    // D_0 = 1, D_1 = -E; index = power of E.
    std::vector<WideComplex> prev2(1), prev1(2);
    prev2[0].re = 1;
    prev1[1].re = -1;
    for (int k = 2; k <= q; ++k) {
        std::vector<WideComplex> cur(k + 1);
        for (std::size_t i = 0; i < prev1.size(); ++i) {
            cur[i + 1].re -= prev1[i].re;
            cur[i + 1].im -= prev1[i].im;
        }
        const WideComplex& b = beta[k - 2];
        for (std::size_t i = 0; i < prev2.size(); ++i) {
            cur[i].re -= b.re * prev2[i].re - b.im * prev2[i].im;
            cur[i].im -= b.re * prev2[i].im + b.im * prev2[i].re;
        }
        prev2 = std::move(prev1);
        prev1 = std::move(cur);
    }

    // E^q b(1/E) = (-1)^q D_q, and the coefficient of E^{q-2j} is -a(2j).
    const int sign = (q % 2 == 0) ? 1 : -1;
    ChambersPolynomial poly{flux, lambda, {}, {}};
    poly.a.resize(flux.half_q() + 1);
    poly.a_wide.resize(flux.half_q() + 1);
    for (int j = 0; j <= flux.half_q(); ++j) {
        const WideComplex& c = prev1[q - 2 * j];
        if (abs(c.im) >= 1e-30 * (1 + abs(c.re)))
            throw std::logic_error("chambers_recursive: coefficient has a non-negligible imaginary part");
        poly.a_wide[j] = -sign * c.re;
        poly.a[j] = poly.a_wide[j].convert_to<double>();
    }
    poly.a_wide[0] = -1;
    poly.a[0] = -1.0;
    return poly;
}

ChambersPolynomial chambers_nested(const Flux& flux, double lambda) {
    const int q = flux.q();
    const auto beta = block_products(flux, lambda);

    ChambersPolynomial poly{flux, lambda, {}, {}};
    poly.a.assign(flux.half_q() + 1, 0.0);
    poly.a[0] = -1.0;

    for (int j = 1; j <= flux.half_q(); ++j) {
        const int top = q - 2 * j;  // k_1 ranges over 0..top
        // inner[x] = sum over k_t <= x of beta(k_t + 2(j-t)) * inner_{t+1}(k_t),
        // built from the innermost index k_j outwards.
        std::vector<cplx> inner(top + 1, 1.0);
        for (int t = j; t >= 1; --t) {
            const int shift = 2 * (j - t);
            std::vector<cplx> next(top + 1);
            cplx run = 0.0;
            for (int x = 0; x <= top; ++x) {
                run += beta[x + shift] * inner[x];
                next[x] = run;
            }
            inner = std::move(next);
        }
        const double sign = (j % 2 == 1) ? 1.0 : -1.0;  // (-1)^{j+1}
        poly.a[j] = sign * checked_real(inner[top], "chambers_nested");
    }
    return poly;
}

double eval_big_E(const ChambersPolynomial& poly, double E) {
    const double x = E * E;
    double acc = -poly.a[0];
    for (std::size_t j = 1; j < poly.a.size(); ++j) acc = acc * x - poly.a[j];
    return (poly.q() % 2 == 1) ? acc * E : acc;
}

std::vector<double> big_E_coefficients(const ChambersPolynomial& poly) {
    std::vector<double> c(poly.q() + 1, 0.0);
    for (std::size_t j = 0; j < poly.a.size(); ++j) c[poly.q() - 2 * j] = -poly.a[j];
    return c;
}

std::vector<double> b_coefficients(const ChambersPolynomial& poly) {
    std::vector<double> c(2 * poly.a.size() - 1, 0.0);
    for (std::size_t j = 0; j < poly.a.size(); ++j) c[2 * j] = -poly.a[j];
    return c;
}

}  // namespace hoftrace
