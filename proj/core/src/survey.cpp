#include "zlab/survey.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <thread>

#include <json.hpp>

#include "zlab/character.hpp"
#include "zlab/error.hpp"
#include "zlab/sift.hpp"
#include "zlab/zimmert.hpp"

namespace zlab {

namespace {

bool admissible_radicand(std::uint64_t m, DiscriminantFilter filter, const FactorTable* table) {
    if (filter == DiscriminantFilter::kFundamental && m % 4 != 3) return false;
    return table ? is_squarefree(m, *table) : is_squarefree(m);
}

void check_range(std::uint64_t lo, std::uint64_t hi) {
    if (lo == 0) throw UsageError("range must start at |d| >= 1");
    if (lo > hi) throw UsageError("range is empty: lo > hi");
}

}  // namespace

std::vector<std::int64_t> squarefree_discriminants(std::uint64_t lo, std::uint64_t hi,
                                                   DiscriminantFilter filter, const FactorTable* table) {
    check_range(lo, hi);
    std::vector<std::int64_t> out;
    for (std::uint64_t m = lo; m <= hi; ++m)
        if (admissible_radicand(m, filter, table)) out.push_back(-static_cast<std::int64_t>(m));
    return out;
}

std::vector<std::int64_t> sample_discriminants(std::uint64_t lo, std::uint64_t hi, unsigned per_decade,
                                               DiscriminantFilter filter, const FactorTable* table) {
    if (per_decade == 0) return squarefree_discriminants(lo, hi, filter, table);
    check_range(lo, hi);
    std::vector<std::int64_t> out;
    const double step = std::pow(10.0, 1.0 / per_decade);
    std::uint64_t last = 0;
    for (double target = static_cast<double>(lo); target <= static_cast<double>(hi) + 0.5; target *= step) {
        std::uint64_t m = std::max(static_cast<std::uint64_t>(std::ceil(target - 1e-9)), last + 1);
        while (m <= hi && !admissible_radicand(m, filter, table)) ++m;
        if (m > hi) break;
        out.push_back(-static_cast<std::int64_t>(m));
        last = m;
    }
    return out;
}

SurveyRecord survey_one(std::int64_t d, const SurveyOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    SurveyRecord rec;
    rec.d = d;
    rec.abs_d = static_cast<std::uint64_t>(-d);
    try {
        const FactorTable* table = options.table;
        const ZimmertSet z = table ? zimmert_set(d, *table) : zimmert_set(d);
        rec.nmax = z.nmax;
        rec.zimmert_size = z.size();
        rec.rank_lower_bound = z.size();
        rec.prime_support_size = z.prime_support.size();

        const QuadraticCharacter chi = table ? make_character(d, *table) : make_character(d);
        const CorollaryReport cor = corollary_check(z, chi, table);
        rec.pi_x = cor.pi_x;
        rec.omega_d = cor.omega_d;
        rec.sifted = cor.sifted;
        rec.holds = cor.holds;
        rec.nonneg_ok = cor.nonneg_ok;
        rec.partial_sum = partial_sum(chi, cor.x);
        rec.burgess_reference = burgess_term({chi.modulus(), cor.x, 2, classify_modulus(chi.modulus()), 0.0});

        if (options.decompose) {
            const double R = std::pow(static_cast<double>(rec.abs_d), options.c);
            const SiftedSumReport rep = decompose(chi, cor.x, z.prime_support, R);
            rec.sigma1 = rep.sigma1_direct;
            rec.sigma2 = rep.sigma2;
            if (rep.sigma1_direct != rep.sigma1_interchanged || rep.sifted != rep.sigma1_direct - rep.sigma2 ||
                rep.sifted != cor.sifted)
                rec.error = "decomposition identity failed";
        }
    } catch (const std::exception& e) {
        rec.error = e.what();
        rec.holds = false;
    }
    rec.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start);
    return rec;
}

std::vector<SurveyRecord> run_survey(const SurveyRange& range, const SurveyOptions& options) {
    const auto ds = sample_discriminants(range.lo, range.hi, range.per_decade, range.filter, options.table);
    std::vector<SurveyRecord> records(ds.size());

    unsigned workers = options.workers ? options.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(ds.size(), 1)));

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < ds.size(); i = next++) records[i] = survey_one(ds[i], options);
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    return records;
}

GrowthFit fit_growth(std::span<const SurveyRecord> records) {
    GrowthFit fit;
    std::vector<double> xs, ys;
    for (const auto& r : records) {
        if (!r.ok() || r.zimmert_size == 0 || r.abs_d == 0) {
            ++fit.excluded;
            continue;
        }
        xs.push_back(std::log(static_cast<double>(r.abs_d)));
        ys.push_back(std::log(static_cast<double>(r.zimmert_size)));
    }
    fit.count = xs.size();
    const double n = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    if (xs.size() >= 1) {
        mx /= n;
        my /= n;
    }
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (xs.size() < 2 || sxx <= 0.0)
        throw DomainError("fit_growth: need at least two points with distinct |d| and |Z_d| >= 1");

    fit.alpha = sxy / sxx;
    fit.log_c = my - fit.alpha * mx;
    double ss = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double e = ys[i] - (fit.log_c + fit.alpha * xs[i]);
        ss += e * e;
    }
    fit.residual_rms = std::sqrt(ss / n);
    return fit;
}

std::vector<std::int64_t> find_small_zimmert(std::uint64_t lo, std::uint64_t hi, std::uint64_t k,
                                             const FactorTable* table) {
    std::vector<std::int64_t> out;
    for (std::int64_t d : squarefree_discriminants(lo, hi, DiscriminantFilter::kAll, table)) {
        const std::uint64_t size = table ? rank_lower_bound(d, *table) : rank_lower_bound(d);
        if (size <= k) out.push_back(d);
    }
    return out;
}

double max_burgess_ratio(std::span<const SurveyRecord> records) {
    double best = 0.0;
    for (const auto& r : records)
        if (r.ok() && r.burgess_reference > 0.0)
            best = std::max(best, std::abs(static_cast<double>(r.partial_sum)) / r.burgess_reference);
    return best;
}

std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void write_csv(std::ostream& out, std::span<const SurveyRecord> records, bool with_timing) {
    for (std::size_t i = 0; i < kCsvColumns.size(); ++i) out << (i ? "," : "") << kCsvColumns[i];
    if (with_timing) out << ",elapsed_us";
    out << '\n';
    auto opt = [](const std::optional<std::int64_t>& v) { return v ? std::to_string(*v) : std::string(); };
    for (const auto& r : records) {
        out << r.d << ',' << r.abs_d << ',' << r.nmax << ',' << r.zimmert_size << ',' << r.prime_support_size
            << ',' << r.rank_lower_bound << ',' << r.pi_x << ',' << r.omega_d << ',' << r.sifted << ','
            << opt(r.sigma1) << ',' << opt(r.sigma2) << ',' << format_real(r.burgess_reference) << ','
            << (r.holds ? "true" : "false");
        if (with_timing) out << ',' << std::chrono::duration_cast<std::chrono::microseconds>(r.elapsed).count();
        out << '\n';
    }
}

void write_json(std::ostream& out, std::span<const SurveyRecord> records, bool with_timing) {
    using nlohmann::ordered_json;
    ordered_json arr = ordered_json::array();
    auto opt = [](const std::optional<std::int64_t>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); };
    for (const auto& r : records) {
        ordered_json o;
        o["d"] = r.d;
        o["abs_d"] = r.abs_d;
        o["nmax"] = r.nmax;
        o["zimmert_size"] = r.zimmert_size;
        o["prime_support_size"] = r.prime_support_size;
        o["rank_lower_bound"] = r.rank_lower_bound;
        o["pi_x"] = r.pi_x;
        o["omega_d"] = r.omega_d;
        o["sifted"] = r.sifted;
        o["sigma1"] = opt(r.sigma1);
        o["sigma2"] = opt(r.sigma2);
        o["burgess_reference"] = std::stod(format_real(r.burgess_reference));
        o["holds"] = r.holds;
        if (with_timing) o["elapsed_us"] = std::chrono::duration_cast<std::chrono::microseconds>(r.elapsed).count();
        arr.push_back(std::move(o));
    }
    out << arr.dump(2) << '\n';
}

}  // namespace zlab
