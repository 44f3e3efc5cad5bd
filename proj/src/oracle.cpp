#include "hoftrace/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <thread>

#include <Eigen/Eigenvalues>

#include "hoftrace/errors.hpp"

namespace hoftrace {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

// e^{2 pi i p m / q} with the integer part of the angle removed first.
cplx root_of_unity(const Flux& flux, long long m) {
    long long r = (static_cast<long long>(flux.p()) * m) % flux.q();
    if (r < 0) r += flux.q();
    return std::polar(1.0, 2.0 * kPi * static_cast<double>(r) / flux.q());
}

double angle_of(const Flux& flux, long long m) {
    long long r = (static_cast<long long>(flux.p()) * m) % flux.q();
    if (r < 0) r += flux.q();
    return 2.0 * kPi * static_cast<double>(r) / flux.q();
}

double int_power(double x, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

}  // namespace

SecularMatrix make_secular_matrix(const Flux& flux, double lambda, double kx, double ky) {
    const int q = flux.q();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(q, q);
    for (int i = 0; i < q; ++i) m(i, i) = lambda * std::cos(ky + angle_of(flux, i));
    for (int i = 0; i + 1 < q; ++i) {
        m(i, i + 1) += 1.0;
        m(i + 1, i) += 1.0;
    }
    const cplx corner = std::polar(1.0, -q * kx);
    if (q == 1) {
        m(0, 0) += 2.0 * corner.real();
    } else {
        m(0, q - 1) += corner;
        m(q - 1, 0) += std::conj(corner);
    }
    return {flux, lambda, kx, ky, std::move(m)};
}

std::vector<double> eigenvalues(const SecularMatrix& matrix) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix.entries, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigenvalues: solver did not converge");
    const auto& ev = solver.eigenvalues();
    std::vector<double> out(ev.data(), ev.data() + ev.size());
    std::sort(out.begin(), out.end());
    return out;
}

bool bz_grid_sufficient(int n, int grid) { return grid >= n + 1; }

double bz_trace(const Flux& flux, double lambda, int n, int grid, int threads) {
    if (grid < 1) throw std::invalid_argument("bz_trace: grid must be positive");
    const double step = 2.0 * kPi / grid;
    std::vector<double> row_sums(grid, 0.0);

    auto do_row = [&](int i) {
        const double kx = -kPi + i * step;
        double acc = 0.0;
        for (int j = 0; j < grid; ++j) {
            const double ky = -kPi + j * step;
            for (double e : eigenvalues(make_secular_matrix(flux, lambda, kx, ky))) acc += int_power(e, n);
        }
        row_sums[i] = acc;
    };

    threads = std::clamp(threads, 1, grid);
    if (threads == 1) {
        for (int i = 0; i < grid; ++i) do_row(i);
    } else {
        std::vector<std::jthread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                for (int i = t; i < grid; i += threads) do_row(i);
            });
    }

    double total = 0.0;
    for (double r : row_sums) total += r;
    return total / (static_cast<double>(grid) * grid) / flux.q();
}

std::vector<double> point_spectrum_roots(const Flux& flux, double lambda, double s, int sign) {
    const int q = flux.q();
    const double lt = lambda_tilde(lambda, q);
    if (std::abs(s) > 2.0 * (1.0 + lt))
        throw RangeError("point spectrum parameter |s| = " + std::to_string(std::abs(s)) +
                         " exceeds 2(1 + (lambda/2)^q)");
    const double target = (sign >= 0 ? 1.0 : -1.0) * s;
    const double c2 = std::clamp(target / (2.0 * (1.0 + lt)), -1.0, 1.0);
    const double cx = std::clamp(target / 2.0 - lt * c2, -1.0, 1.0);
    const double kx = std::acos(cx) / q;
    const double ky = std::acos(c2) / q;
    return eigenvalues(make_secular_matrix(flux, lambda, kx, ky));
}

double walk_trace(const Flux& flux, double lambda, int n, const WalkOptions& options) {
    if (n < 0) throw std::invalid_argument("walk_trace: n must be nonnegative");
    if (n > options.cap)
        throw TooLarge("walk_trace: n = " + std::to_string(n) + " exceeds cap " + std::to_string(options.cap));

    const int side = 2 * n + 1;
    const double hop_y = lambda / 2.0;
    auto at = [side](int x, int y) { return static_cast<std::size_t>(x) * side + y; };

    // phase[y] = e^{i gamma (y - n + origin_y)}
    std::vector<cplx> phase(side);
    for (int y = 0; y < side; ++y) phase[y] = root_of_unity(flux, static_cast<long long>(y) - n + options.origin_y);

    std::vector<cplx> psi(static_cast<std::size_t>(side) * side, 0.0);
    std::vector<cplx> next(psi.size());
    psi[at(n, n)] = 1.0;

    for (int step = 0; step < n; ++step) {
        std::fill(next.begin(), next.end(), cplx{0.0});
        for (int x = 0; x < side; ++x) {
            for (int y = 0; y < side; ++y) {
                cplx v = 0.0;
                if (x > 0) v += phase[y] * psi[at(x - 1, y)];
                if (x + 1 < side) v += std::conj(phase[y]) * psi[at(x + 1, y)];
                if (y > 0) v += hop_y * psi[at(x, y - 1)];
                if (y + 1 < side) v += hop_y * psi[at(x, y + 1)];
                next[at(x, y)] = v;
            }
        }
        std::swap(psi, next);
    }

    const cplx result = psi[at(n, n)];
    if (std::abs(result.imag()) >= 1e-10 * (1.0 + std::abs(result.real())))
        throw std::logic_error("walk_trace: closed-walk sum has a non-negligible imaginary part");
    return result.real();
}

}  // namespace hoftrace
