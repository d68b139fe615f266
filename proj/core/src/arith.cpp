#include "zlab/arith.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "zlab/error.hpp"

namespace zlab {

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    // the double estimate can be off by one in either direction near 2^64
    while (r > 0 && (r > 0xFFFFFFFFull || r * r > n)) --r;
    while (r + 1 <= 0xFFFFFFFFull && (r + 1) * (r + 1) <= n) ++r;
    return r;
}

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
    while (b != 0) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

FactorTable::FactorTable(std::uint64_t limit) : limit_(limit) {
    if (limit < 2) throw UsageError("sieve limit must be at least 2");
    if (limit > std::numeric_limits<std::uint32_t>::max())
        throw UsageError("sieve limit must fit in 32 bits");

    spf_.assign(limit + 1, 0);
    primes_.reserve(static_cast<std::size_t>(1.3 * limit / std::log(static_cast<double>(limit))) + 8);
    // linear sieve: each composite is struck exactly once, by its least prime
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (spf_[i] == 0) {
            spf_[i] = static_cast<std::uint32_t>(i);
            primes_.push_back(static_cast<std::uint32_t>(i));
        }
        const std::uint32_t lp = spf_[i];
        for (std::uint32_t p : primes_) {
            if (p > lp || i * p > limit) break;
            spf_[i * p] = p;
        }
    }
}

int PrimeFactorization::mu() const {
    for (const auto& [p, e] : factors)
        if (e >= 2) return 0;
    return (factors.size() % 2 == 0) ? 1 : -1;
}

std::uint64_t PrimeFactorization::tau() const {
    std::uint64_t t = 1;
    for (const auto& [p, e] : factors) t *= (e + 1);
    return t;
}

bool PrimeFactorization::squarefree() const {
    return std::all_of(factors.begin(), factors.end(), [](const auto& f) { return f.second == 1; });
}

namespace {

void push_factor(PrimeFactorization& f, std::uint64_t p) {
    if (!f.factors.empty() && f.factors.back().first == p)
        ++f.factors.back().second;
    else
        f.factors.emplace_back(p, 1u);
}

// Strips every factor d of n, starting the divisor walk at `from`.
void trial_divide_odd(PrimeFactorization& f, std::uint64_t& n, std::uint64_t from) {
    for (std::uint64_t d = from | 1; d <= n / d; d += 2) {
        while (n % d == 0) {
            push_factor(f, d);
            n /= d;
        }
    }
    if (n > 1) {
        push_factor(f, n);
        n = 1;
    }
}

}  // namespace

PrimeFactorization factorize(std::uint64_t n) {
    if (n == 0) throw UsageError("factorize: n must be positive");
    PrimeFactorization f;
    f.n = n;
    while (n % 2 == 0) {
        push_factor(f, 2);
        n /= 2;
    }
    trial_divide_odd(f, n, 3);
    return f;
}

PrimeFactorization factorize(std::uint64_t n, const FactorTable& table) {
    if (n == 0) throw UsageError("factorize: n must be positive");
    PrimeFactorization f;
    f.n = n;
    if (table.covers(n)) {
        while (n > 1) {
            const std::uint64_t p = table.spf(n);
            push_factor(f, p);
            n /= p;
        }
        return f;
    }
    std::uint64_t last = 2;
    for (std::uint32_t p : table.primes()) {
        if (static_cast<std::uint64_t>(p) * p > n) break;
        while (n % p == 0) {
            push_factor(f, p);
            n /= p;
        }
        last = p;
    }
    if (n > 1 && table.covers(n)) {
        push_factor(f, n);
        return f;
    }
    trial_divide_odd(f, n, last + 2);
    return f;
}

int mobius(std::uint64_t n) { return factorize(n).mu(); }
int mobius(std::uint64_t n, const FactorTable& table) { return factorize(n, table).mu(); }

int jacobi(std::int64_t a, std::int64_t n) {
    if (n <= 0 || n % 2 == 0) throw UsageError("jacobi: n must be an odd positive integer");
    // reduce into [0, n); the (-1/n) rule is implicit in taking the
    // mathematical residue
    std::uint64_t m = static_cast<std::uint64_t>(n);
    std::int64_t r = a % n;
    if (r < 0) r += n;
    std::uint64_t x = static_cast<std::uint64_t>(r);

    int sign = 1;
    while (x != 0) {
        const int tz = std::countr_zero(x);
        x >>= tz;
        // (2/m) = -1 iff m = 3, 5 mod 8
        if ((tz & 1) && ((m & 7) == 3 || (m & 7) == 5)) sign = -sign;
        // reciprocity: flip when both are 3 mod 4
        if ((x & 3) == 3 && (m & 3) == 3) sign = -sign;
        std::swap(x, m);
        x %= m;
    }
    return m == 1 ? sign : 0;
}

namespace {

std::uint64_t count_primes_by_sieve(std::uint64_t n) {
    if (n < 2) return 0;
    std::vector<bool> composite(n + 1, false);
    std::uint64_t count = 0;
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        ++count;
        for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
    }
    return count;
}

std::uint64_t floor_arg(double x) {
    if (std::isnan(x)) throw UsageError("prime_pi: x is not a number");
    if (x < 2.0) return 0;
    return static_cast<std::uint64_t>(std::floor(x));
}

}  // namespace

std::uint64_t prime_pi(double x) { return count_primes_by_sieve(floor_arg(x)); }

std::uint64_t prime_pi(double x, const FactorTable& table) {
    const std::uint64_t n = floor_arg(x);
    if (!table.covers(n)) return count_primes_by_sieve(n);
    const auto primes = table.primes();
    return static_cast<std::uint64_t>(
        std::upper_bound(primes.begin(), primes.end(), n) - primes.begin());
}

bool is_squarefree(std::uint64_t n) {
    if (n == 0) throw UsageError("is_squarefree: n must be positive");
    return factorize(n).squarefree();
}

bool is_squarefree(std::uint64_t n, const FactorTable& table) {
    if (n == 0) throw UsageError("is_squarefree: n must be positive");
    return factorize(n, table).squarefree();
}

std::string_view to_string(ModulusClass::Tag tag) {
    return tag == ModulusClass::Tag::AnyR ? "AnyR" : "RestrictedR";
}

ModulusClass classify_modulus(std::uint64_t q) {
    if (q == 0) throw UsageError("classify_modulus: q must be positive");
    const int e = std::countr_zero(q);
    const auto odd = factorize(q >> e);
    const bool cubefree = std::all_of(odd.factors.begin(), odd.factors.end(),
                                      [](const auto& f) { return f.second <= 2; });
    return {(e <= 3 && cubefree) ? ModulusClass::Tag::AnyR : ModulusClass::Tag::RestrictedR, q};
}

}  // namespace zlab
