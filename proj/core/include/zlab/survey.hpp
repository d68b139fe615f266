// survey.hpp
// Range sweeps over negative squarefree radicands, the log-log growth fit of
// |Z_d| against |d|, the small-Zimmert-set search and CSV/JSON export.

#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zlab/arith.hpp"

namespace zlab {

enum class DiscriminantFilter {
    kAll,
    // only m = 3 mod 4, i.e. -m = 1 mod 4 is itself a fundamental discriminant
    kFundamental,
};

// d = -m for squarefree m in [lo, hi], ascending in |d|.  UsageError if lo > hi
// or lo == 0.
std::vector<std::int64_t> squarefree_discriminants(std::uint64_t lo, std::uint64_t hi,
                                                   DiscriminantFilter filter = DiscriminantFilter::kAll,
                                                   const FactorTable* table = nullptr);

// Geometric sample: per_decade targets per factor of ten, each advanced to the
// next admissible m, duplicates dropped.  per_decade == 0 means every m.
std::vector<std::int64_t> sample_discriminants(std::uint64_t lo, std::uint64_t hi, unsigned per_decade,
                                               DiscriminantFilter filter = DiscriminantFilter::kAll,
                                               const FactorTable* table = nullptr);

struct SurveyRange {
    std::uint64_t lo = 7;
    std::uint64_t hi = 7;
    unsigned per_decade = 0;
    DiscriminantFilter filter = DiscriminantFilter::kAll;
};

struct SurveyOptions {
    // Run the Sigma1/Sigma2 decomposition per d (the dominant cost).
    bool decompose = true;
    // Sieve level R = |d|^c for the decomposition.
    double c = 0.2;
    // 0 picks std::thread::hardware_concurrency().
    unsigned workers = 1;
    const FactorTable* table = nullptr;
};

struct SurveyRecord {
    std::int64_t d = 0;
    std::uint64_t abs_d = 0;
    std::uint64_t nmax = 0;
    std::uint64_t zimmert_size = 0;
    std::uint64_t prime_support_size = 0;
    std::uint64_t rank_lower_bound = 0;
    std::uint64_t pi_x = 0;
    std::uint64_t omega_d = 0;
    std::int64_t sifted = 0;
    std::optional<std::int64_t> sigma1;
    std::optional<std::int64_t> sigma2;
    double burgess_reference = 0.0;  // r = 2, eps = 0
    std::int64_t partial_sum = 0;    // sum_{n <= x} chi(n)
    bool holds = false;
    bool nonneg_ok = false;
    std::chrono::nanoseconds elapsed{0};
    // Set when d could not be checked (e.g. |d| < 7); other fields partial.
    std::string error;

    bool ok() const { return error.empty(); }
};

SurveyRecord survey_one(std::int64_t d, const SurveyOptions& options);

// One record per discriminant, ascending |d| whatever the worker count.
// Per-d domain errors become flagged records.
std::vector<SurveyRecord> run_survey(const SurveyRange& range, const SurveyOptions& options);

struct GrowthFit {
    std::size_t count = 0;
    std::size_t excluded = 0;
    double log_c = 0.0;
    double alpha = 0.0;
    double residual_rms = 0.0;
};

// OLS of log|Z_d| on log|d| (natural logs) over records with zimmert_size >= 1.
// DomainError when fewer than two distinct |d| remain.
GrowthFit fit_growth(std::span<const SurveyRecord> records);

// Squarefree d with lo <= |d| <= hi and |Z_d| <= k, ascending.
std::vector<std::int64_t> find_small_zimmert(std::uint64_t lo, std::uint64_t hi, std::uint64_t k,
                                             const FactorTable* table = nullptr);

// max |partial_sum| / burgess_reference over valid records (0 if none).
double max_burgess_ratio(std::span<const SurveyRecord> records);

inline constexpr std::array<std::string_view, 13> kCsvColumns{
    "d", "abs_d", "nmax", "zimmert_size", "prime_support_size", "rank_lower_bound", "pi_x",
    "omega_d", "sifted", "sigma1", "sigma2", "burgess_reference", "holds"};

// Reals to 6 significant digits.
std::string format_real(double v);

// Header plus one row per record.  with_timing appends an elapsed_us column.
void write_csv(std::ostream& out, std::span<const SurveyRecord> records, bool with_timing = false);
// Array of objects keyed by the CSV column names.
void write_json(std::ostream& out, std::span<const SurveyRecord> records, bool with_timing = false);

}  // namespace zlab
