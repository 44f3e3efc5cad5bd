#include "hoftrace/flux.hpp"

#include <numbers>
#include <numeric>
#include <ostream>
#include <string>

#include "hoftrace/errors.hpp"

namespace hoftrace {

double Flux::gamma() const {
    return 2.0 * std::numbers::pi * static_cast<double>(p_) / static_cast<double>(q_);
}

Flux make_flux(std::int64_t p, std::int64_t q) {
    if (q <= 0)
        throw InvalidFlux("flux denominator must be positive, got q = " + std::to_string(q));
    std::int64_t r = p % q;
    if (r < 0) r += q;
    if (r == 0) return Flux(0, 1);
    const std::int64_t g = std::gcd(r, q);
    return Flux(static_cast<int>(r / g), static_cast<int>(q / g));
}

std::ostream& operator<<(std::ostream& os, const Flux& f) {
    return os << f.p() << '/' << f.q();
}

Coupling::Coupling(double lambda) : lambda_(lambda) {
    if (!(lambda > 0.0))
        throw DomainError("coupling lambda must be positive");
}

double Coupling::tilde(int q) const { return lambda_tilde(lambda_, q); }

double lambda_tilde(double lambda, int q) {
    const double h = lambda / 2.0;
    double t = 1.0;
    for (int i = 0; i < q; ++i) t *= h;
    return t;
}

int PartitionTerm::parts() const {
    return std::accumulate(ell.begin(), ell.end(), 2 * k);
}

int PartitionTerm::weighted_half_n(int q) const {
    int s = q * k;
    for (std::size_t j = 0; j < ell.size(); ++j) s += static_cast<int>(j + 1) * ell[j];
    return s;
}

namespace {

// Fill ell[idx..] so that sum_{j >= idx} (j+1) ell_j == remaining, lexicographically.
void compose(int remaining, std::size_t idx, PartitionTerm& cur, std::vector<PartitionTerm>& out) {
    const std::size_t m = cur.ell.size();
    if (idx + 1 == m) {
        const int part = static_cast<int>(m);
        if (remaining % part == 0) {
            cur.ell[idx] = remaining / part;
            out.push_back(cur);
        }
        return;
    }
    const int part = static_cast<int>(idx + 1);
    for (int l = 0; l * part <= remaining; ++l) {
        cur.ell[idx] = l;
        compose(remaining - l * part, idx + 1, cur, out);
    }
    cur.ell[idx] = 0;
}

}  // namespace

std::vector<PartitionTerm> enumerate_partition_terms(int half_n, int q, bool allow_k) {
    std::vector<PartitionTerm> out;
    if (half_n < 0 || q < 1) return out;
    const int m = q / 2;
    const int k_max = allow_k ? half_n / q : 0;
    for (int k = 0; k <= k_max; ++k) {
        const int rest = half_n - q * k;
        PartitionTerm cur{k, std::vector<int>(m, 0)};
        if (m == 0) {
            if (rest == 0) out.push_back(cur);
            continue;
        }
        compose(rest, 0, cur, out);
    }
    return out;
}

BigInt factorial(int n) {
    BigInt f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    BigInt r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

ExactRational multinomial_weight(const PartitionTerm& term) {
    const int total = term.parts();
    if (total <= 0) throw DegenerateTerm("multinomial weight of the all-zero partition term");
    BigInt denom = factorial(2 * term.k);
    for (int l : term.ell) denom *= factorial(l);
    // (total-1)! / prod(...) == multinomial / total
    return ExactRational(factorial(total - 1), denom);
}

double to_double(const ExactRational& r) { return r.convert_to<double>(); }

double to_double(const BigInt& n) { return n.convert_to<double>(); }

WideReal to_wide(const ExactRational& r) {
    return WideReal(numerator(r)) / WideReal(denominator(r));
}

}  // namespace hoftrace
