#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "frachyp/errors.hpp"

namespace frachyp {

/**
 * Calculators for the quantitative edge-count bounds, for experiment planning
 * and cross-formula sanity checks.  Values are computed in the log domain
 * first; `value` is +inf when the number does not fit a double.  Bounds that
 * hold only up to an unspecified absolute constant are reported with the
 * constant set to 1 and say so in `note` -- constants are never invented.
 */
struct BoundReport {
    std::string name;
    int n = 0;
    int r = 0;
    int a = 0;
    int b = 0;
    double value = 0.0;
    double log_value = 0.0;  // natural log
    bool regime_ok = true;
    std::string formula;
    std::string note;
};

namespace detail {
inline double exp_or_inf(double log_value) {
    return log_value > 709.0 ? std::numeric_limits<double>::infinity() : std::exp(log_value);
}
}  // namespace detail

struct MBoundsPair {
    BoundReport lower;
    BoundReport upper;
};

/// Best known bounds on m(n, r), the least edge count forcing a non
/// r-colorable n-uniform hypergraph (unit constants).
inline MBoundsPair m_bounds_proper(int n, int r) {
    if (n < 2 || r < 2) throw InvalidParams("m_bounds_proper requires n >= 2, r >= 2");
    const double ln_n = std::log(static_cast<double>(n));
    MBoundsPair out;
    out.lower.name = "m_lower";
    out.lower.n = n;
    out.lower.r = r;
    out.lower.log_value =
        (static_cast<double>(r - 1) / r) * std::log(n / ln_n) + (n - 1) * std::log(static_cast<double>(r));
    out.lower.value = detail::exp_or_inf(out.lower.log_value);
    out.lower.formula = "(n/ln n)^((r-1)/r) * r^(n-1)";
    out.lower.note = "constant c1 unspecified; reported with c1 = 1";

    out.upper.name = "m_upper";
    out.upper.n = n;
    out.upper.r = r;
    out.upper.log_value = 2 * ln_n + n * std::log(static_cast<double>(r)) +
                          std::log(std::log(static_cast<double>(r)));
    out.upper.value = detail::exp_or_inf(out.upper.log_value);
    out.upper.formula = "n^2 * r^n * ln r";
    out.upper.note = "constant c2 unspecified; reported with c2 = 1";
    return out;
}

/// Color-group reduction bound: (n/ln n)^(k/(k-1)) k^(n-1) with k = floor(a/b).
/// Needs floor(a/b) >= 2, otherwise the exponent is undefined.
inline BoundReport cherk_kozik_ab_bound(int n, int a, int b) {
    if (n < 2 || a < 1 || b < 1) throw InvalidParams("cherk_kozik_ab_bound: bad parameters");
    const int k = a / b;
    if (k < 2) throw InvalidParams("cherk_kozik_ab_bound requires floor(a/b) >= 2");
    BoundReport out;
    out.name = "color_group_bound";
    out.n = n;
    out.a = a;
    out.b = b;
    const double ln_n = std::log(static_cast<double>(n));
    out.log_value = (static_cast<double>(k) / (k - 1)) * std::log(n / ln_n) +
                    (n - 1) * std::log(static_cast<double>(k));
    out.value = detail::exp_or_inf(out.log_value);
    out.regime_ok = true;
    out.formula = "(n/ln n)^(k/(k-1)) * k^(n-1), k = floor(a/b)";
    out.note = "constant c1 unspecified; reported with c1 = 1";
    return out;
}

/// Panchromatic corollary bound: (1/(20a^2))(n/ln n)^((a-1)/a)(a/(a-1))^n for
/// (a:a-1)-colorability; regime 3 < a <= sqrt(n/(100 ln n)) is a flag only.
inline BoundReport prop2_bound(int n, int a) {
    if (n < 2 || a < 2) throw InvalidParams("prop2_bound requires n >= 2, a >= 2");
    BoundReport out;
    out.name = "panchromatic_bound";
    out.n = n;
    out.a = a;
    const double ln_n = std::log(static_cast<double>(n));
    out.log_value = -std::log(20.0 * a * a) +
                    (static_cast<double>(a - 1) / a) * std::log(n / ln_n) +
                    n * std::log(static_cast<double>(a) / (a - 1));
    out.value = detail::exp_or_inf(out.log_value);
    out.regime_ok = a > 3 && a <= std::sqrt(n / (100.0 * ln_n));
    out.formula = "(1/(20 a^2)) * (n/ln n)^((a-1)/a) * (a/(a-1))^n";
    return out;
}

}  // namespace frachyp
