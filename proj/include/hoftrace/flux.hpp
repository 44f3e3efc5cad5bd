#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace hoftrace {

using BigInt = boost::multiprecision::cpp_int;
using ExactRational = boost::multiprecision::cpp_rational;
// 100 decimal digits. The partition sums alternate in sign and lose up to ~45
// digits to cancellation at q, n <= 64.
using WideReal = boost::multiprecision::cpp_bin_float_100;

// Reduced rational flux p/q per plaquette, gamma = 2 pi p / q.
// p is kept in [0, q); zero flux is always 0/1.
class Flux {
public:
    int p() const { return p_; }
    int q() const { return q_; }
    double gamma() const;
    // floor(q/2): number of nontrivial polynomial coefficients.
    int half_q() const { return q_ / 2; }
    bool is_zero() const { return p_ == 0; }

    friend bool operator==(const Flux&, const Flux&) = default;

private:
    friend Flux make_flux(std::int64_t p, std::int64_t q);
    Flux(int p, int q) : p_(p), q_(q) {}

    int p_;
    int q_;
};

// Canonicalizes p mod q and reduces to lowest terms. Throws InvalidFlux for q <= 0.
Flux make_flux(std::int64_t p, std::int64_t q);

std::ostream& operator<<(std::ostream& os, const Flux& f);

// Anisotropy of the almost Mathieu operator; lambda = 2 is the isotropic case.
class Coupling {
public:
    explicit Coupling(double lambda);

    double lambda() const { return lambda_; }
    double half() const { return lambda_ / 2.0; }
    // (lambda/2)^q by q-1 successive multiplications, left to right.
    double tilde(int q) const;

private:
    double lambda_;
};

// (lambda/2)^q without constructing a Coupling; same evaluation order.
double lambda_tilde(double lambda, int q);

// One (k, l_1..l_m) term of the trace partition sums, m = floor(q/2).
struct PartitionTerm {
    int k = 0;
    std::vector<int> ell;

    int parts() const;             // l_1 + ... + l_m + 2k
    int weighted_half_n(int q) const;  // q k + sum_j j l_j

    friend bool operator==(const PartitionTerm&, const PartitionTerm&) = default;
};

// All (k, ell) with q k + sum_j j ell_j = half_n, k = 0 unless allow_k.
// Ordered lexicographically on (k, ell_1, ..., ell_m).
std::vector<PartitionTerm> enumerate_partition_terms(int half_n, int q, bool allow_k);

// multinomial(parts; ell_1, ..., ell_m, 2k) / parts, exactly.
ExactRational multinomial_weight(const PartitionTerm& term);

BigInt binomial(int n, int k);
BigInt factorial(int n);

double to_double(const ExactRational& r);
double to_double(const BigInt& n);
WideReal to_wide(const ExactRational& r);

}  // namespace hoftrace
