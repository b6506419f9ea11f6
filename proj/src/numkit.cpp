#include "cdyn/numkit.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cdyn {

const Tolerance& default_tolerance() {
    static const Tolerance tol{};
    return tol;
}

// ---------------------------------------------------------------------------
// Continued fractions
// ---------------------------------------------------------------------------

CfExpansion cf_expand(double x, int n) {
    if (n < 1) throw std::invalid_argument("cf_expand: need n >= 1");
    if (!(x > 0.0 && x < 1.0)) throw std::invalid_argument("cf_expand: x must lie in (0,1)");
    CfExpansion out;
    out.terms.reserve(static_cast<size_t>(n));
    // Remainders below this are indistinguishable from 0 in double precision.
    constexpr double kRationalCut = 1e-14;
    double r = x;
    for (int i = 0; i < n; ++i) {
        double inv = 1.0 / r;
        double a = std::floor(inv);
        if (a < 1.0) a = 1.0;
        out.terms.push_back(static_cast<long>(a));
        r = inv - a;
        if (r < kRationalCut) {
            out.rational = true;
            break;
        }
    }
    return out;
}

std::vector<std::pair<long long, long long>> cf_convergents(std::span<const long> terms) {
    std::vector<std::pair<long long, long long>> out;
    long long p0 = 0, q0 = 1;  // p_{-1}/q_{-1} for x = [0; a1, a2, ...]
    long long p1 = 1, q1 = 0;
    for (long a : terms) {
        long long p = a * p0 + p1;
        long long q = a * q0 + q1;
        out.emplace_back(p, q);
        p1 = p0; q1 = q0;
        p0 = p; q0 = q;
    }
    return out;
}

RotationTarget RotationTarget::golden(int depth) {
    RotationTarget t;
    t.value = (std::sqrt(5.0) - 1.0) / 2.0;
    t.cf_terms.assign(static_cast<size_t>(depth), 1L);
    t.type_bound = 1;
    return t;
}

RotationTarget RotationTarget::from_value(double x, int depth) {
    RotationTarget t;
    t.value = x;
    t.cf_terms = cf_expand(x, depth).terms;
    return t;
}

RotationTarget RotationTarget::from_cf(std::vector<long> terms) {
    if (terms.empty()) throw std::invalid_argument("RotationTarget: empty continued fraction");
    double v = 0.0;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        if (*it < 1) throw std::invalid_argument("RotationTarget: partial quotients must be >= 1");
        v = 1.0 / (static_cast<double>(*it) + v);
    }
    RotationTarget t;
    t.value = v;
    t.cf_terms = std::move(terms);
    return t;
}

bool is_bounded_type(const RotationTarget& t, int M, int depth) {
    if (M < 1) throw std::invalid_argument("is_bounded_type: M must be >= 1");
    if (depth < 1 || static_cast<size_t>(depth) > t.cf_terms.size())
        throw std::invalid_argument("is_bounded_type: depth exceeds available cf terms");
    if (cf_expand(t.value, depth + 2).rational)
        throw std::invalid_argument("is_bounded_type: rational input");
    for (int i = 0; i < depth; ++i)
        if (t.cf_terms[static_cast<size_t>(i)] > M) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Argument lifting
// ---------------------------------------------------------------------------

std::vector<double> arg_lift(std::span<const cplx> path) {
    constexpr double kTwoPi = 2.0 * std::numbers::pi;
    if (path.empty()) return {};
    if (path[0] == cplx(0.0, 0.0)) throw std::invalid_argument("arg_lift: zero sample at index 0");
    std::vector<double> lift;
    lift.reserve(path.size());
    lift.push_back(std::arg(path[0]) / kTwoPi);
    for (size_t k = 1; k < path.size(); ++k) {
        if (path[k] == cplx(0.0, 0.0))
            throw std::invalid_argument("arg_lift: zero sample at index " + std::to_string(k));
        double d = std::arg(path[k] / path[k - 1]);
        if (std::abs(d) >= std::numbers::pi * (1.0 - 1e-12))
            throw std::invalid_argument("arg_lift: argument jump >= pi at index " +
                                        std::to_string(k) + " (sampling too coarse)");
        lift.push_back(lift.back() + d / kTwoPi);
    }
    return lift;
}

// ---------------------------------------------------------------------------
// Root finding
// ---------------------------------------------------------------------------

double bisect_monotone(const std::function<double(double)>& f, double lo, double hi,
                       double f_tol, int max_iter, double* achieved) {
    double flo = f(lo);
    double best_x = lo, best_f = std::abs(flo);
    if (flo > 0.0) {
        // Response already above target at the left edge; report it.
        if (achieved) *achieved = best_f;
        return lo;
    }
    double fhi = f(hi);
    if (std::abs(fhi) < best_f) { best_f = std::abs(fhi); best_x = hi; }
    for (int it = 0; it < max_iter && best_f >= f_tol; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (std::abs(fm) < best_f) { best_f = std::abs(fm); best_x = mid; }
        if (fm < 0.0) lo = mid; else hi = mid;
    }
    if (achieved) *achieved = best_f;
    return best_x;
}

cplx newton(const std::function<cplx(cplx)>& g, const std::function<cplx(cplx)>& dg,
            cplx z0, double tol, int max_iter) {
    cplx z = z0;
    for (int it = 0; it < max_iter; ++it) {
        cplx val = g(z);
        if (std::abs(val) < tol) return z;
        cplx der = dg(z);
        if (der == cplx(0.0, 0.0)) throw std::runtime_error("newton: vanishing derivative");
        z -= val / der;
    }
    if (std::abs(g(z)) < tol) return z;
    throw std::runtime_error("newton: no convergence");
}

}  // namespace cdyn
