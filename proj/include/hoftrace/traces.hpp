#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "hoftrace/flux.hpp"
#include "hoftrace/kreft.hpp"

namespace hoftrace {

enum class TraceKind { MidBand, PlusMinusS, FullQuantum };
enum class TraceMethod { PartitionSum, Series, NewtonPowerSum, Oracle };

std::string_view to_string(TraceKind kind);
std::string_view to_string(TraceMethod method);
std::optional<TraceKind> parse_trace_kind(std::string_view name);
std::optional<TraceMethod> parse_trace_method(std::string_view name);

struct TraceRecord {
    Flux flux = make_flux(0, 1);
    double lambda = 2.0;
    int n = 0;
    std::optional<double> s;
    TraceKind kind = TraceKind::FullQuantum;
    double value = 0.0;
    TraceMethod method = TraceMethod::PartitionSum;

    friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

// All trace operations return 1 for n = 0 and exactly 0 for odd n.

// (1/q) sum of E^n over the q roots of E^q b(1/E) = 0.
double midband_trace(const ChambersPolynomial& poly, int n);

// (1/2q) sum of E^n over the 2q roots of E^q b(1/E) = +-s. Evaluated for any s;
// see in_point_spectrum_range for the physical window.
double pm_s_trace(const ChambersPolynomial& poly, int n, double s);

bool in_point_spectrum_range(const ChambersPolynomial& poly, double s);

// Quantum trace of the isotropic Hofstadter Hamiltonian (lambda = 2).
double hofstadter_trace(const Flux& flux, int n);

// Quantum trace of the almost Mathieu operator.
double almost_mathieu_trace(const Flux& flux, double lambda, int n);
double almost_mathieu_trace(const ChambersPolynomial& poly, int n);

// Coefficients c_k of the trace as an even polynomial in s,
// Tr_{+-s} H^n = sum_k c_k s^{2k}, k = 0..floor(n / 2q).
std::vector<double> pm_s_polynomial(const ChambersPolynomial& poly, int n);

// binom(2k,k) sum_{k1} binom(k,k1)^2 lt^{2 k1}, Horner in lt^2 with exact
// integer binomials. At lt = 1 this is binom(2k,k)^2.
double central_factor(int k, double lt);

// Extended-precision variants for callers that combine traces further and
// would otherwise reintroduce the cancellation.
WideReal central_factor_wide(int k, const WideReal& lt);
WideReal almost_mathieu_trace_wide(const ChambersPolynomial& poly, int n);
std::vector<WideReal> pm_s_polynomial_wide(const ChambersPolynomial& poly, int n);

// Tr (sum_j a(2j) H^{q-2j})^power at lambda = 2, expanding the polynomial power
// into moments supplied by hofstadter_trace. Equals binom(power, power/2)^2 for even power.
double chambers_power_trace(const Flux& flux, int power);

// Power sums p_m = sum_r E_r^m, m = 1..n_max, of the roots of the polynomial
// with ascending coefficients `coeffs`, by Newton's identities.
// Throws DegeneratePolynomial if the leading coefficient is zero.
std::vector<double> newton_power_sums(std::span<const double> coeffs, int n_max);
std::vector<WideReal> newton_power_sums_wide(std::span<const WideReal> coeffs, int n_max);

// First n_max + 1 Taylor coefficients of the generating function of `kind`.
// `s` is used only for PlusMinusS.
std::vector<double> trace_series(const Flux& flux, double lambda, TraceKind kind,
                                 std::optional<double> s, int n_max);

// Truncated power-series helpers on ascending coefficient vectors.
namespace series {
std::vector<double> multiply(std::span<const double> a, std::span<const double> b, int n_max);
// 1/a; requires a[0] != 0.
std::vector<double> inverse(std::span<const double> a, int n_max);
std::vector<double> derivative(std::span<const double> a);
}  // namespace series

}  // namespace hoftrace
