#include "hoftrace/traces.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <utility>

#include "hoftrace/errors.hpp"

namespace hoftrace {

namespace {

constexpr std::array<std::pair<TraceKind, std::string_view>, 3> kKindNames{{
    {TraceKind::MidBand, "midband"},
    {TraceKind::PlusMinusS, "pm-s"},
    {TraceKind::FullQuantum, "full"},
}};

constexpr std::array<std::pair<TraceMethod, std::string_view>, 4> kMethodNames{{
    {TraceMethod::PartitionSum, "partition-sum"},
    {TraceMethod::Series, "series"},
    {TraceMethod::NewtonPowerSum, "newton-power-sum"},
    {TraceMethod::Oracle, "oracle"},
}};

std::vector<WideReal> wide_coefficients(const ChambersPolynomial& poly) {
    if (poly.a_wide.size() == poly.a.size()) return poly.a_wide;
    return {poly.a.begin(), poly.a.end()};
}

// Product prod_j a(2j)^{l_j} by repeated multiplication in index order.
WideReal coefficient_product(const std::vector<WideReal>& a, const PartitionTerm& term) {
    WideReal prod = 1;
    for (std::size_t j = 0; j < term.ell.size(); ++j)
        for (int i = 0; i < term.ell[j]; ++i) prod *= a[j + 1];
    return prod;
}

// (n/q) sum_terms weight * factor(k) * prod a^l, the shared skeleton of all
// closed-form traces. Terms are visited in enumeration order and accumulated
// in WideReal.
WideReal partition_sum(const ChambersPolynomial& poly, int n, bool allow_k,
                       const std::function<WideReal(int)>& factor) {
    if (n == 0) return 1;
    if (n < 0 || n % 2 != 0) return 0;
    const auto a = wide_coefficients(poly);
    WideReal sum = 0;
    for (const auto& term : enumerate_partition_terms(n / 2, poly.q(), allow_k))
        sum += to_wide(multinomial_weight(term)) * factor(term.k) * coefficient_product(a, term);
    return sum * n / poly.q();
}

template <class T>
std::vector<T> series_multiply(std::span<const T> a, std::span<const T> b, int n_max) {
    std::vector<T> c(n_max + 1, T(0));
    for (std::size_t i = 0; i < a.size() && static_cast<int>(i) <= n_max; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size() && static_cast<int>(i + j) <= n_max; ++j) c[i + j] += a[i] * b[j];
    }
    return c;
}

template <class T>
std::vector<T> series_inverse(std::span<const T> a, int n_max) {
    if (a.empty() || a[0] == 0) throw DegeneratePolynomial("series inverse: zero constant term");
    std::vector<T> c(n_max + 1, T(0));
    c[0] = T(1) / a[0];
    for (int n = 1; n <= n_max; ++n) {
        T acc = 0;
        for (int i = 1; i <= n && i < static_cast<int>(a.size()); ++i) acc += a[i] * c[n - i];
        c[n] = -acc / a[0];
    }
    return c;
}

template <class T>
std::vector<T> newton_sums(std::span<const T> coeffs, int n_max) {
    if (coeffs.empty() || coeffs.back() == 0)
        throw DegeneratePolynomial("newton_power_sums: leading coefficient is zero");
    const int d = static_cast<int>(coeffs.size()) - 1;
    const T lead = coeffs.back();
    // r[i] = coefficient of E^{d-i} in the monic polynomial, i = 1..d
    std::vector<T> r(d + 1, T(0));
    for (int i = 1; i <= d; ++i) r[i] = coeffs[d - i] / lead;

    std::vector<T> p(n_max + 1, T(0));  // p[0] unused in the output
    for (int m = 1; m <= n_max; ++m) {
        T acc = (m <= d) ? T(r[m] * m) : T(0);
        for (int i = 1; i <= std::min(m - 1, d); ++i) acc += r[i] * p[m - i];
        p[m] = -acc;
    }
    return {p.begin() + 1, p.end()};
}

WideReal wide_lambda_tilde(double lambda, int q) {
    const WideReal h = WideReal(lambda) / 2;
    WideReal lt = 1;
    for (int i = 0; i < q; ++i) lt *= h;
    return lt;
}

}  // namespace

std::string_view to_string(TraceKind kind) {
    for (const auto& [k, name] : kKindNames)
        if (k == kind) return name;
    return "unknown";
}

std::string_view to_string(TraceMethod method) {
    for (const auto& [m, name] : kMethodNames)
        if (m == method) return name;
    return "unknown";
}

std::optional<TraceKind> parse_trace_kind(std::string_view name) {
    for (const auto& [k, n] : kKindNames)
        if (n == name) return k;
    return std::nullopt;
}

std::optional<TraceMethod> parse_trace_method(std::string_view name) {
    for (const auto& [m, n] : kMethodNames)
        if (n == name) return m;
    return std::nullopt;
}

double midband_trace(const ChambersPolynomial& poly, int n) {
    return partition_sum(poly, n, false, [](int) { return WideReal(1); }).convert_to<double>();
}

double pm_s_trace(const ChambersPolynomial& poly, int n, double s) {
    const WideReal s2 = WideReal(s) * s;
    return partition_sum(poly, n, true, [&s2](int k) {
               WideReal f = 1;
               for (int i = 0; i < k; ++i) f *= s2;
               return f;
           })
        .convert_to<double>();
}

bool in_point_spectrum_range(const ChambersPolynomial& poly, double s) {
    return std::abs(s) <= poly.spectral_half_width();
}

double central_factor(int k, double lt) {
    const double x = lt * lt;
    double acc = 1.0;  // binom(k,k)^2
    for (int k1 = k - 1; k1 >= 0; --k1) {
        const double c = to_double(binomial(k, k1));
        acc = acc * x + c * c;
    }
    return to_double(binomial(2 * k, k)) * acc;
}

WideReal central_factor_wide(int k, const WideReal& lt) {
    const WideReal x = lt * lt;
    WideReal acc = 1;
    for (int k1 = k - 1; k1 >= 0; --k1) {
        const BigInt c = binomial(k, k1);
        acc = acc * x + WideReal(c * c);
    }
    return WideReal(binomial(2 * k, k)) * acc;
}

WideReal almost_mathieu_trace_wide(const ChambersPolynomial& poly, int n) {
    const WideReal lt = wide_lambda_tilde(poly.lambda, poly.q());
    return partition_sum(poly, n, true, [&lt](int k) { return central_factor_wide(k, lt); });
}

double almost_mathieu_trace(const ChambersPolynomial& poly, int n) {
    return almost_mathieu_trace_wide(poly, n).convert_to<double>();
}

double almost_mathieu_trace(const Flux& flux, double lambda, int n) {
    (void)Coupling{lambda};
    if (n == 0) return 1.0;
    if (n < 0 || n % 2 != 0) return 0.0;
    return almost_mathieu_trace(chambers_recursive(flux, lambda), n);
}

double hofstadter_trace(const Flux& flux, int n) { return almost_mathieu_trace(flux, 2.0, n); }

std::vector<WideReal> pm_s_polynomial_wide(const ChambersPolynomial& poly, int n) {
    if (n == 0) return {WideReal(1)};
    if (n < 0 || n % 2 != 0) return {WideReal(0)};
    const auto a = wide_coefficients(poly);
    std::vector<WideReal> c(n / 2 / poly.q() + 1, WideReal(0));
    for (const auto& term : enumerate_partition_terms(n / 2, poly.q(), true))
        c[term.k] += to_wide(multinomial_weight(term)) * coefficient_product(a, term);
    for (auto& v : c) v = v * n / poly.q();
    return c;
}

std::vector<double> pm_s_polynomial(const ChambersPolynomial& poly, int n) {
    std::vector<double> out;
    for (const auto& v : pm_s_polynomial_wide(poly, n)) out.push_back(v.convert_to<double>());
    return out;
}

double chambers_power_trace(const Flux& flux, int power) {
    const auto poly = chambers_recursive(flux, 2.0);
    // P(E) = sum_j a(2j) E^{q-2j} = -E^q b(1/E), ascending in E
    std::vector<WideReal> base(poly.q() + 1, WideReal(0));
    for (std::size_t j = 0; j < poly.a_wide.size(); ++j) base[poly.q() - 2 * j] = poly.a_wide[j];
    std::vector<WideReal> acc{WideReal(1)};
    for (int i = 0; i < power; ++i) {
        std::vector<WideReal> next(acc.size() + base.size() - 1, WideReal(0));
        for (std::size_t a = 0; a < acc.size(); ++a)
            for (std::size_t b = 0; b < base.size(); ++b) next[a + b] += acc[a] * base[b];
        acc = std::move(next);
    }
    WideReal total = 0;
    for (std::size_t m = 0; m < acc.size(); ++m)
        if (acc[m] != 0) total += acc[m] * almost_mathieu_trace_wide(poly, static_cast<int>(m));
    return total.convert_to<double>();
}

std::vector<double> newton_power_sums(std::span<const double> coeffs, int n_max) {
    return newton_sums(coeffs, n_max);
}

std::vector<WideReal> newton_power_sums_wide(std::span<const WideReal> coeffs, int n_max) {
    return newton_sums(coeffs, n_max);
}

namespace series {

std::vector<double> multiply(std::span<const double> a, std::span<const double> b, int n_max) {
    return series_multiply(a, b, n_max);
}

std::vector<double> inverse(std::span<const double> a, int n_max) { return series_inverse(a, n_max); }

std::vector<double> derivative(std::span<const double> a) {
    if (a.size() <= 1) return {0.0};
    std::vector<double> d(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) d[i - 1] = static_cast<double>(i) * a[i];
    return d;
}

}  // namespace series

// Carried out in WideReal on the extended-precision coefficients: the series
// of b^{-1} has terms far larger than the traces it produces once q and n are
// in the tens.
std::vector<double> trace_series(const Flux& flux, double lambda, TraceKind kind,
                                 std::optional<double> s, int n_max) {
    if (n_max < 0) return {};
    const auto poly = chambers_recursive(flux, lambda);
    const int q = poly.q();
    std::vector<WideReal> b(2 * poly.a_wide.size() - 1, WideReal(0));
    for (std::size_t j = 0; j < poly.a_wide.size(); ++j) b[2 * j] = -poly.a_wide[j];
    const auto b_inv = series_inverse<WideReal>(b, n_max);

    // 1 - z b'(z) / (q b(z))
    std::vector<WideReal> zdb(b.size(), WideReal(0));
    for (std::size_t i = 1; i < b.size(); ++i) zdb[i] = b[i] * static_cast<int>(i);
    const auto log_term = series_multiply<WideReal>(zdb, b_inv, n_max);
    std::vector<WideReal> g0(n_max + 1, WideReal(0));
    for (int i = 0; i <= n_max; ++i) g0[i] = (i == 0 ? WideReal(1) : WideReal(0)) - log_term[i] / q;

    std::vector<WideReal> total = g0;
    if (kind != TraceKind::MidBand) {
        // u = (z^q / b)^2 has valuation 2q, so only k <= n_max / 2q contributes.
        std::vector<WideReal> zq_binv(n_max + 1, WideReal(0));
        for (int i = q; i <= n_max; ++i) zq_binv[i] = b_inv[i - q];
        const auto u = series_multiply<WideReal>(zq_binv, zq_binv, n_max);

        WideReal lt = 1;
        for (int i = 0; i < q; ++i) lt *= WideReal(lambda) / 2;
        const WideReal s2 = WideReal(s.value_or(0.0)) * s.value_or(0.0);
        std::vector<WideReal> outer(n_max + 1, WideReal(0));
        std::vector<WideReal> u_pow(n_max + 1, WideReal(0));
        u_pow[0] = 1;
        WideReal s_pow = 1;
        for (int k = 0; 2 * q * k <= n_max; ++k) {
            const WideReal c = (kind == TraceKind::PlusMinusS) ? s_pow : central_factor_wide(k, lt);
            for (int i = 0; i <= n_max; ++i) outer[i] += c * u_pow[i];
            u_pow = series_multiply<WideReal>(u_pow, u, n_max);
            s_pow *= s2;
        }
        total = series_multiply<WideReal>(g0, outer, n_max);
    }
    std::vector<double> out;
    for (const auto& v : total) out.push_back(v.convert_to<double>());
    return out;
}

}  // namespace hoftrace
