#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace perturb {

// Karp-Sipser fixed point for average degree a: the smallest root g_lo of
// x = a exp(-a e^{-x}), and g_hi = a e^{-g_lo}.
struct KarpSipserRoots {
    double a = 0.0;
    double gamma_lo = 0.0;
    double gamma_hi = 0.0;
    double residual = 0.0;
    int iterations = 0;
    bool grid_certified = false;
};

namespace detail {

inline double ks_map(double a, double x) { return a * std::exp(-a * std::exp(-x)); }

}  // namespace detail

inline KarpSipserRoots karp_sipser_roots(double a, int max_iterations = 200000) {
    if (!(a >= 0.0) || !std::isfinite(a)) throw std::invalid_argument("karp_sipser_roots: a must be finite and >= 0");
    KarpSipserRoots out;
    out.a = a;
    // The map is increasing with map(0) > 0, so iterating from 0 climbs to the smallest fixed point.
    double x = 0.0;
    bool converged = false;
    for (int i = 0; i < max_iterations; ++i) {
        const double next = detail::ks_map(a, x);
        out.iterations = i + 1;
        if (std::fabs(next - x) <= 1e-15 * std::max(1.0, x)) {
            x = next;
            converged = true;
            break;
        }
        x = next;
    }
    if (!converged) {
        // Slow convergence near a = e: walk a 1e-4 grid up from the iterate
        // (a lower bound on the root) to the first sign change, then bisect.
        constexpr double step = 1e-4;
        double lo = x;
        double hi = x + step;
        while (detail::ks_map(a, hi) - hi > 0.0) {
            lo = hi;
            hi += step;
            if (hi > a + 1.0) throw std::runtime_error("karp_sipser_roots: no fixed point below a + 1");
        }
        for (int i = 0; i < 200 && hi - lo > 1e-16 * std::max(1.0, hi); ++i) {
            const double mid = (lo + hi) / 2.0;
            (detail::ks_map(a, mid) - mid > 0.0 ? lo : hi) = mid;
        }
        x = hi;
        out.grid_certified = true;
    }
    out.gamma_lo = x;
    out.gamma_hi = a * std::exp(-x);
    out.residual = std::fabs(detail::ks_map(a, x) - x);
    return out;
}

// Fraction of vertices a maximum matching of G(N, a/N) covers, halved:
// 1 - (g_lo + g_hi + g_lo g_hi) / (2a).
inline double karp_sipser_matching_ratio(double a) {
    if (a <= 0.0) return 0.0;
    const auto r = karp_sipser_roots(a);
    return 1.0 - (r.gamma_lo + r.gamma_hi + r.gamma_lo * r.gamma_hi) / (2.0 * a);
}

struct ConjectureQuery {
    double alpha = 0.0;
    double C = 0.0;
    double gamma_lo = 0.0;
    double gamma_hi = 0.0;
    double residual_fixed_point = 0.0;  // |g_lo - (1-alpha) C exp(-(1-alpha) C e^{-g_lo})|
    double residual_outer = 0.0;        // |matching ratio - (1 - 2 alpha) / (2 - 2 alpha)|
    int bisection_steps = 0;
};

// Perfect-matching constant C(alpha): K_{alpha n, (1-alpha) n} plus G(n, C/n)
// needs a matching of (1/2 - alpha) n edges inside the larger part, which has
// average degree (1 - alpha) C. Solved by bisection on C.
inline ConjectureQuery conjecture_pm_constant(double alpha, double tol = 1e-10) {
    if (!(alpha > 0.0 && alpha < 0.5)) throw std::invalid_argument("conjecture_pm_constant: alpha must lie in (0, 1/2)");
    if (!(tol > 0.0)) throw std::invalid_argument("conjecture_pm_constant: tol must be positive");
    const double rhs = (1.0 - 2.0 * alpha) / (2.0 - 2.0 * alpha);
    auto excess = [&](double c) { return karp_sipser_matching_ratio((1.0 - alpha) * c) - rhs; };

    double lo = 0.0;
    double hi = 1.0;
    while (excess(hi) < 0.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e6) throw std::runtime_error("conjecture_pm_constant: no bracket below C = 1e6");
    }
    ConjectureQuery out;
    out.alpha = alpha;
    for (int i = 0; i < 200; ++i) {
        const double mid = (lo + hi) / 2.0;
        out.bisection_steps = i + 1;
        if (mid <= lo || mid >= hi) break;
        (excess(mid) < 0.0 ? lo : hi) = mid;
    }
    out.C = std::fabs(excess(lo)) < std::fabs(excess(hi)) ? lo : hi;
    const auto roots = karp_sipser_roots((1.0 - alpha) * out.C);
    out.gamma_lo = roots.gamma_lo;
    out.gamma_hi = roots.gamma_hi;
    out.residual_fixed_point = roots.residual;
    out.residual_outer = std::fabs(excess(out.C));
    if (out.residual_fixed_point > tol || out.residual_outer > tol)
        throw std::runtime_error("conjecture_pm_constant: residuals above tolerance at alpha = " + std::to_string(alpha));
    return out;
}

}  // namespace perturb
