#include "zlab/sift.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "zlab/error.hpp"

namespace zlab {

namespace {

// Depth-first walk over squarefree products of `primes` (ascending) that stay
// <= bound.  visit(t, mu) is called once per product, starting with t = 1.
template <typename Visit>
void walk_divisors(std::span<const std::uint64_t> primes, std::uint64_t bound, Visit&& visit) {
    if (bound < 1) return;
    struct Frame {
        std::size_t next;
        std::uint64_t t;
        int mu;
    };
    std::vector<Frame> stack{{0, 1, 1}};
    while (!stack.empty()) {
        const Frame f = stack.back();
        stack.pop_back();
        visit(f.t, f.mu);
        for (std::size_t i = f.next; i < primes.size(); ++i) {
            if (primes[i] > bound / f.t) break;
            stack.push_back({i + 1, f.t * primes[i], -f.mu});
        }
    }
}

std::uint64_t floor_bound(double v, const char* what) {
    if (std::isnan(v)) throw UsageError(std::string(what) + " is not a number");
    if (v < 1.0) return 0;
    if (v >= 1.8e19) return std::numeric_limits<std::uint64_t>::max();
    return static_cast<std::uint64_t>(std::floor(v));
}

bool is_prime_trial(std::uint64_t p) {
    if (p < 2) return false;
    if (p % 2 == 0) return p == 2;
    for (std::uint64_t d = 3; d <= p / d; d += 2)
        if (p % d == 0) return false;
    return true;
}

double main_term(std::uint64_t q, double x, double R, unsigned r, double epsilon) {
    const double rd = r;
    const double q_exp = (rd + 1.0) / (4.0 * rd * rd) + epsilon;
    return std::pow(x, 1.0 - 1.0 / rd) * std::pow(R, 1.0 / rd) * std::pow(static_cast<double>(q), q_exp);
}

void check_admissible(const ModulusClass& cls, unsigned r) {
    if (!cls.admits(r))
        throw DomainError("r=" + std::to_string(r) + " is not admissible for modulus " +
                          std::to_string(cls.q) + " (" + std::string(to_string(cls.tag)) + ")");
}

}  // namespace

SiftPrimeSet::SiftPrimeSet(std::vector<std::uint64_t> primes) : primes_(std::move(primes)) {
    std::sort(primes_.begin(), primes_.end());
    primes_.erase(std::unique(primes_.begin(), primes_.end()), primes_.end());
    for (std::uint64_t p : primes_)
        if (!is_prime_trial(p)) throw DomainError("sift set entry " + std::to_string(p) + " is not prime");
}

bool SiftPrimeSet::shares_factor(std::uint64_t n) const {
    for (std::uint64_t p : primes_) {
        if (p > n) break;
        if (n % p == 0) return true;
    }
    return false;
}

std::uint64_t SiftPrimeSet::gcd_with(std::uint64_t n) const {
    std::uint64_t g = 1;
    for (std::uint64_t p : primes_) {
        if (p > n) break;
        if (n % p == 0) g = (g > std::numeric_limits<std::uint64_t>::max() / p)
                                ? std::numeric_limits<std::uint64_t>::max()
                                : g * p;
    }
    return g;
}

void SiftPrimeSet::for_each_divisor(std::uint64_t bound,
                                    const std::function<void(std::uint64_t, int)>& visit) const {
    walk_divisors(primes_, bound, visit);
}

int inner_sieve_weight(std::uint64_t n, const SiftPrimeSet& primes, double R) {
    if (n == 0) throw UsageError("inner_sieve_weight: n must be positive");
    std::vector<std::uint64_t> dividing;
    for (std::uint64_t p : primes.primes()) {
        if (p > n) break;
        if (n % p == 0) dividing.push_back(p);
    }
    int w = 0;
    walk_divisors(dividing, floor_bound(R, "R"), [&](std::uint64_t, int mu) { w += mu; });
    return w;
}

std::int64_t sifted_sum(const QuadraticCharacter& chi, double x, const SiftPrimeSet& primes) {
    const std::uint64_t n_max = floor_bound(x, "x");
    std::int64_t s = 0;
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        const int v = chi(n);
        if (v != 0 && !primes.shares_factor(n)) s += v;
    }
    return s;
}

double burgess_term(const BurgessParams& params) {
    if (params.q == 0) throw UsageError("burgess_term: q must be positive");
    if (!(params.x >= 1.0)) throw DomainError("burgess_term: x must be at least 1");
    if (!(params.epsilon >= 0.0)) throw DomainError("burgess_term: epsilon must be nonnegative");
    check_admissible(params.modulus_class, params.r);
    return main_term(params.q, params.x, 1.0, params.r, params.epsilon);
}

OptimalR optimal_r(std::uint64_t q, double x, const ModulusClass& modulus_class,
                   unsigned r_max, double epsilon) {
    if (r_max == 0) throw UsageError("optimal_r: r_max must be at least 1");
    OptimalR best{0, std::numeric_limits<double>::infinity()};
    for (unsigned r = 1; r <= modulus_class.cap(r_max); ++r) {
        const double b = burgess_term({q, x, r, modulus_class, epsilon});
        if (b < best.bound) best = {r, b};
    }
    return best;
}

TheoremTerms theorem_rhs(std::uint64_t q, double x, double R, unsigned r,
                         const SiftPrimeSet& primes, double epsilon) {
    if (std::isnan(x) || std::isnan(R) || !(R >= 1.0) || R > x)
        throw UsageError("theorem_rhs: requires 1 <= R <= x");
    if (!(epsilon >= 0.0)) throw DomainError("theorem_rhs: epsilon must be nonnegative");
    check_admissible(classify_modulus(q), r);

    TheoremTerms out;
    out.main = main_term(q, x, R, r, epsilon);
    double harmonic = 0.0;
    walk_divisors(primes.primes(), floor_bound(x, "x"), [&](std::uint64_t t, int) {
        if (static_cast<double>(t) > R) harmonic += 1.0 / static_cast<double>(t);
    });
    out.tail = std::pow(x, 1.0 + epsilon) * harmonic;
    return out;
}

SiftedSumReport decompose(const QuadraticCharacter& chi, double x, const SiftPrimeSet& primes,
                          double R, const DecomposeOptions& options) {
    if (std::isnan(R) || R < 1.0) throw UsageError("decompose: R must be at least 1");
    if (options.r == 0 && options.r_max == 0) throw UsageError("decompose: r_max must be at least 1");
    const std::uint64_t n_max = floor_bound(x, "x");

    SiftedSumReport rep;
    rep.d = chi.d();
    rep.q = chi.modulus();
    rep.x = x;
    rep.R = R;
    rep.in_theorem_range = R >= 2.0 && R <= x;

    for (std::uint64_t n = 1; n <= n_max; ++n) {
        const int v = chi(n);
        if (v == 0) continue;
        const int w = inner_sieve_weight(n, primes, R);
        rep.sigma1_direct += v * w;
        if (primes.shares_factor(n)) rep.sigma2 += v * w;
    }

    // sum_{n <= x, t | n} chi(n) = chi(t) * sum_{m <= x/t} chi(m), chi being
    // totally multiplicative; floor(x/t) = floor(n_max/t) for integer t.
    const auto prefix = prefix_sums(chi, n_max);
    walk_divisors(primes.primes(), std::min(floor_bound(R, "R"), n_max), [&](std::uint64_t t, int mu) {
        rep.sigma1_interchanged += mu * chi(t) * prefix[n_max / t];
    });

    rep.sifted = sifted_sum(chi, x, primes);

    rep.burgess_reference = std::numeric_limits<double>::quiet_NaN();
    rep.tail_reference = std::numeric_limits<double>::quiet_NaN();
    rep.r_used = options.r;
    if (R <= x) {
        unsigned r = options.r;
        if (r == 0) {
            const ModulusClass cls = classify_modulus(rep.q);
            double best = std::numeric_limits<double>::infinity();
            for (unsigned k = 1; k <= cls.cap(options.r_max); ++k) {
                const double m = main_term(rep.q, x, R, k, options.epsilon);
                if (m < best) {
                    best = m;
                    r = k;
                }
            }
        }
        const TheoremTerms terms = theorem_rhs(rep.q, x, R, r, primes, options.epsilon);
        rep.r_used = r;
        rep.burgess_reference = terms.main;
        rep.tail_reference = terms.tail;
    }
    return rep;
}

}  // namespace zlab
