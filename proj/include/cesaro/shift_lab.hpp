#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <string>
#include <variant>
#include <vector>

#include "cesaro/config.hpp"
#include "cesaro/error.hpp"
#include "cesaro/random.hpp"

namespace cesaro::shift {

inline constexpr std::int64_t kHorizonCeiling = 10'000'000;

/// One weight assignment of a weighted unilateral shift T e_j = w_j e_{j+1}.
///
/// For every l >= 1 the rule covers positions j in [start, start + length)
/// with start = scale * base^l + offset(l), offset(l) being a constant or l
/// itself, and length a constant or l. `power_set` rules default to length
/// 1, `window` rules to length l.
struct WeightRule {
    enum class Kind { PowerSet, Window };
    Kind kind = Kind::PowerSet;
    std::int64_t base = 3;
    std::int64_t scale = 1;
    std::int64_t offset = 0;
    bool offset_is_l = false;
    std::int64_t length = 1;
    bool length_is_l = false;
    double value = 1.0;
};

/// log2(w^2), snapped to the nearest integer when within 1e-12 so that
/// powers of sqrt(2) multiply exactly.
inline double log2_square(double w)
{
    if (!(w > 0.0) || !std::isfinite(w)) {
        throw Error(ErrorCode::InvalidArgument, "shift weights must be positive and finite");
    }
    const double x = 2.0 * std::log2(w);
    const double r = std::round(x);
    return std::abs(x - r) <= 1e-12 ? r : x;
}

struct ShiftRule {
    std::string name = "Custom";
    double default_value = 1.0;
    std::vector<WeightRule> rules;  // later rules win where they overlap

    static ShiftRule example(int which)
    {
        const double up = std::sqrt(2.0);
        const double down = std::sqrt(0.5);
        ShiftRule r;
        switch (which) {
        case 1:
            r.name = "Example1";
            r.rules.push_back({WeightRule::Kind::PowerSet, 3, 1, 0, false, 1, false, up});
            r.rules.push_back({WeightRule::Kind::PowerSet, 3, 1, 0, true, 1, false, down});
            break;
        case 2:
            r.name = "Example2";
            r.rules.push_back({WeightRule::Kind::PowerSet, 3, 1, 0, false, 1, false, up});
            r.rules.push_back({WeightRule::Kind::PowerSet, 3, 2, 0, false, 1, false, down});
            break;
        case 3:
            r.name = "Example3";
            r.rules.push_back({WeightRule::Kind::Window, 3, 1, 0, false, 1, true, up});
            break;
        default:
            throw Error(ErrorCode::InvalidArgument, "built-in examples are 1, 2 and 3");
        }
        return r;
    }

    static ShiftRule constant(double value)
    {
        ShiftRule r;
        r.name = "Constant";
        r.default_value = value;
        return r;
    }

    /// Positions in [1, limit] that differ from the default, with their log2(w^2).
    [[nodiscard]] std::map<std::int64_t, double> special_positions(std::int64_t limit) const
    {
        std::map<std::int64_t, double> out;
        for (const WeightRule& rule : rules) {
            if (rule.base < 2 || rule.scale < 1) {
                throw Error(ErrorCode::InvalidArgument, "shift rule needs base >= 2 and scale >= 1");
            }
            const double lw = log2_square(rule.value);
            std::int64_t power = rule.base;
            for (std::int64_t l = 1;; ++l) {
                const std::int64_t start = rule.scale * power + (rule.offset_is_l ? l : rule.offset);
                if (start > limit && rule.scale * power > limit) {
                    break;
                }
                const std::int64_t len = rule.length_is_l ? l : rule.length;
                for (std::int64_t j = std::max<std::int64_t>(start, 1); j < start + len && j <= limit; ++j) {
                    out[j] = lw;
                }
                if (power > limit / rule.base) {
                    break;
                }
                power *= rule.base;
            }
        }
        return out;
    }
};

/// Diagonal data of a weighted shift up to a horizon N; index n-1 holds n.
struct DiagonalTrace {
    std::string name;
    std::int64_t horizon = 0;
    std::vector<double> a;              // <T^*n T^n e_1, e_1> = prod_{j<=n} w_j^2
    std::vector<double> log2_a;
    std::vector<double> cesaro;         // (1/n) sum_{j<=n} a_j
    std::vector<double> log2_cesaro;
    std::vector<double> power_norm;     // ||T^n||
    std::vector<double> log2_power_norm;

    [[nodiscard]] double a_at(std::int64_t n) const { return a.at(static_cast<std::size_t>(n - 1)); }
    [[nodiscard]] double cesaro_at(std::int64_t n) const { return cesaro.at(static_cast<std::size_t>(n - 1)); }
};

inline DiagonalTrace evaluate(const ShiftRule& rule, std::int64_t horizon)
{
    if (horizon < 1) {
        throw Error(ErrorCode::InvalidArgument, "horizon must be at least 1");
    }
    if (horizon > kHorizonCeiling) {
        throw Error(ErrorCode::HorizonOverflow,
                    "horizon " + std::to_string(horizon) + " exceeds the ceiling " + std::to_string(kHorizonCeiling));
    }
    const std::int64_t n_max = horizon;
    const std::int64_t span = 2 * n_max;  // windows start at <= N and have length <= N
    const double lw_default = log2_square(rule.default_value);
    const std::map<std::int64_t, double> special = rule.special_positions(span);

    // prefix[n] = sum_{j<=n} log2(w_j^2), exact for integer exponents.
    std::vector<double> prefix(static_cast<std::size_t>(span) + 1, 0.0);
    {
        auto it = special.begin();
        for (std::int64_t j = 1; j <= span; ++j) {
            double lw = lw_default;
            if (it != special.end() && it->first == j) {
                lw = it->second;
                ++it;
            }
            prefix[static_cast<std::size_t>(j)] = prefix[static_cast<std::size_t>(j - 1)] + lw;
        }
    }

    DiagonalTrace tr;
    tr.name = rule.name;
    tr.horizon = n_max;
    const auto nn = static_cast<std::size_t>(n_max);
    tr.a.resize(nn);
    tr.log2_a.resize(nn);
    tr.cesaro.resize(nn);
    tr.log2_cesaro.resize(nn);
    tr.power_norm.resize(nn);
    tr.log2_power_norm.resize(nn);

    double sum = 0.0;
    double log2_sum = -std::numeric_limits<double>::infinity();
    for (std::int64_t n = 1; n <= n_max; ++n) {
        const auto i = static_cast<std::size_t>(n - 1);
        const double la = prefix[static_cast<std::size_t>(n)];
        tr.log2_a[i] = la;
        tr.a[i] = std::exp2(la);
        sum += tr.a[i];
        const double hi = std::max(log2_sum, la);
        log2_sum = hi + std::log2(std::exp2(log2_sum - hi) + std::exp2(la - hi));
        tr.log2_cesaro[i] = log2_sum - std::log2(static_cast<double>(n));
        tr.cesaro[i] = std::isfinite(sum) ? sum / static_cast<double>(n) : std::exp2(tr.log2_cesaro[i]);
    }

    // ||T^n||^2 = max_{1<=k<=N} prod_{j=k}^{k+n-1} w_j^2. Between special
    // positions the window product is monotone in k, so the maximum sits at
    // k = 1, k = N, or where a window edge touches a special position.
    std::vector<std::int64_t> marks;
    marks.reserve(special.size());
    for (const auto& kv : special) {
        marks.push_back(kv.first);
    }
    const double work = static_cast<double>(n_max) * (2.0 * static_cast<double>(marks.size()) + 4.0);
    if (work > 4e9) {
        throw Error(ErrorCode::HorizonOverflow, "power-norm evaluation too large for this rule and horizon");
    }
    const auto window = [&](std::int64_t k, std::int64_t n) {
        return prefix[static_cast<std::size_t>(k + n - 1)] - prefix[static_cast<std::size_t>(k - 1)];
    };
    for (std::int64_t n = 1; n <= n_max; ++n) {
        double best = std::max(window(1, n), window(n_max, n));
        for (std::int64_t p : marks) {
            for (std::int64_t k : {p, p + 1, p - n + 1, p - n}) {
                if (k >= 1 && k <= n_max) {
                    best = std::max(best, window(k, n));
                }
            }
        }
        const auto i = static_cast<std::size_t>(n - 1);
        tr.log2_power_norm[i] = 0.5 * best;
        tr.power_norm[i] = std::exp2(0.5 * best);
    }
    return tr;
}

struct ConvergesTo {
    double value;
};
struct Oscillates {
    double lo;
    double hi;
};
struct Diverges {
    double largest_mean;
};
using CesaroVerdict = std::variant<ConvergesTo, Oscillates, Diverges>;

/// Probe indices n = 3^l, 2*3^l, 3^l + l for the scales whose probes all fit.
inline std::vector<std::vector<std::int64_t>> probe_scales(std::int64_t horizon)
{
    std::vector<std::vector<std::int64_t>> out;
    std::int64_t p = 3;
    for (std::int64_t l = 1; 2 * p <= horizon; ++l, p *= 3) {
        out.push_back({p, 2 * p, p + l});
    }
    return out;
}

inline void require_horizon(const DiagonalTrace& tr, std::int64_t minimum, const char* what)
{
    if (tr.horizon < minimum) {
        throw Error(ErrorCode::HorizonTooSmall, std::string(what) + " needs horizon >= " + std::to_string(minimum) +
                                                    ", got " + std::to_string(tr.horizon));
    }
}

inline CesaroVerdict cesaro_verdict(const DiagonalTrace& tr, const Tolerances& tol = {})
{
    require_horizon(tr, 729, "cesaro_verdict");
    const auto scales = probe_scales(tr.horizon);
    double largest = 0.0;
    for (const auto& scale : scales) {
        for (std::int64_t n : scale) {
            largest = std::max(largest, tr.cesaro_at(n));
        }
    }
    for (std::int64_t n = 1; n <= tr.horizon; n *= 3) {
        largest = std::max(largest, tr.cesaro_at(n));
    }
    largest = std::max(largest, tr.cesaro_at(tr.horizon));
    if (largest > 1e6) {
        return Diverges{largest};
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t s = scales.size() - 2; s < scales.size(); ++s) {
        for (std::int64_t n : scales[s]) {
            lo = std::min(lo, tr.cesaro_at(n));
            hi = std::max(hi, tr.cesaro_at(n));
        }
    }
    if (hi - lo < tol.seq) {
        double last = 0.0;
        for (std::int64_t n : scales.back()) {
            last += tr.cesaro_at(n);
        }
        return ConvergesTo{last / static_cast<double>(scales.back().size())};
    }
    return Oscillates{lo, hi};
}

struct Bounded {
    double sup;
};
struct Unbounded {
    double growth_exponent;     // max_n ln ||T^n|| / n
    std::int64_t exact_prefix;  // largest n0 with ||T^n||^2 = 2^n exactly for every n <= n0
};
using PowerVerdict = std::variant<Bounded, Unbounded>;

/// Bounded when the power norms over the second half of the horizon never
/// exceed those over the first half.
inline PowerVerdict powerbounded_verdict(const DiagonalTrace& tr)
{
    require_horizon(tr, 729, "powerbounded_verdict");
    const auto half = static_cast<std::size_t>(tr.horizon / 2);
    const auto& lg = tr.log2_power_norm;
    const double first = *std::max_element(lg.begin(), lg.begin() + static_cast<std::ptrdiff_t>(half));
    const double second = *std::max_element(lg.begin() + static_cast<std::ptrdiff_t>(half), lg.end());
    if (second <= first + 1e-9) {
        return Bounded{std::exp2(std::max(first, second))};
    }
    double growth = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < lg.size(); ++i) {
        growth = std::max(growth, lg[i] * std::numbers::ln2 / static_cast<double>(i + 1));
    }
    std::int64_t exact = 0;
    while (exact < tr.horizon && 2.0 * lg[static_cast<std::size_t>(exact)] == static_cast<double>(exact + 1)) {
        ++exact;
    }
    return Unbounded{growth, exact};
}

struct BanachBracket {
    double q_upper = 0.0;
    double qprime_lower = 0.0;
    double trivial_liminf = 0.0;
    double trivial_limsup = 0.0;
    std::vector<std::int64_t> upper_witness;
    std::vector<std::int64_t> lower_witness;
    std::size_t tuples_tried = 0;
};

/// Candidate shift tuples in a fixed order: (1), arithmetic progressions
/// starting at 1, then seeded random subsets of [1, p_max]. A larger budget
/// only appends tuples.
inline std::vector<std::vector<std::int64_t>> shift_tuples(std::int64_t p_max, std::size_t budget, std::uint64_t seed)
{
    std::vector<std::vector<std::int64_t>> out;
    if (budget == 0) {
        return out;
    }
    out.push_back({1});
    for (std::int64_t p = 2; p <= p_max && out.size() < budget; ++p) {
        for (std::int64_t step = 1; 1 + (p - 1) * step <= p_max && out.size() < budget; ++step) {
            std::vector<std::int64_t> t;
            for (std::int64_t j = 0; j < p; ++j) {
                t.push_back(1 + j * step);
            }
            out.push_back(t);
        }
    }
    Rng rng(mix_seed(seed, 0xb4ac));
    std::vector<std::int64_t> pool(static_cast<std::size_t>(std::max<std::int64_t>(p_max, 1)));
    std::iota(pool.begin(), pool.end(), std::int64_t{1});
    std::size_t attempts = 0;
    while (out.size() < budget && p_max >= 2 && attempts < 64 * budget) {
        ++attempts;
        const auto p = static_cast<std::size_t>(rng.integer(2, p_max));
        for (std::size_t i = 0; i < p; ++i) {
            const auto j = static_cast<std::size_t>(rng.integer(static_cast<std::int64_t>(i), p_max - 1));
            std::swap(pool[i], pool[j]);
        }
        std::vector<std::int64_t> t(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(p));
        std::sort(t.begin(), t.end());
        out.push_back(std::move(t));
    }
    return out;
}

/// Bracket [q', q] of the Banach limits of x_1..x_N. For each tuple the
/// lim sup / lim inf of (1/p) sum_j x_{n_j + k} is estimated by the max / min
/// over the log-scale tail sqrt(N) <= k <= N - max n_j.
inline BanachBracket banach_bracket(const std::vector<double>& x, std::int64_t p_max, std::size_t budget,
                                    std::uint64_t seed)
{
    const auto n = static_cast<std::int64_t>(x.size());
    if (n < 6561) {
        throw Error(ErrorCode::HorizonTooSmall, "banach_bracket needs horizon >= 6561, got " + std::to_string(n));
    }
    if (p_max < 1 || budget < 1 || p_max > n / 4) {
        throw Error(ErrorCode::InvalidArgument, "banach_bracket needs 1 <= p_max <= N/4 and budget >= 1");
    }
    const auto k0 = static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(n))));
    BanachBracket out;
    out.q_upper = std::numeric_limits<double>::infinity();
    out.qprime_lower = -std::numeric_limits<double>::infinity();
    const auto tuples = shift_tuples(p_max, budget, seed);
    for (const auto& t : tuples) {
        const std::int64_t last = t.back();
        const double p = static_cast<double>(t.size());
        double hi = -std::numeric_limits<double>::infinity();
        double lo = std::numeric_limits<double>::infinity();
        for (std::int64_t k = k0; k + last <= n; ++k) {
            double s = 0.0;
            for (std::int64_t o : t) {
                s += x[static_cast<std::size_t>(o + k - 1)];
            }
            s /= p;
            hi = std::max(hi, s);
            lo = std::min(lo, s);
        }
        if (out.tuples_tried == 0) {
            out.trivial_limsup = hi;
            out.trivial_liminf = lo;
        }
        ++out.tuples_tried;
        if (hi < out.q_upper) {
            out.q_upper = hi;
            out.upper_witness = t;
        }
        if (lo > out.qprime_lower) {
            out.qprime_lower = lo;
            out.lower_witness = t;
        }
    }
    return out;
}

inline BanachBracket banach_bracket(const DiagonalTrace& tr, std::int64_t p_max, std::size_t budget,
                                    std::uint64_t seed)
{
    require_horizon(tr, 6561, "banach_bracket");
    return banach_bracket(tr.a, p_max, budget, seed);
}

} // namespace cesaro::shift
