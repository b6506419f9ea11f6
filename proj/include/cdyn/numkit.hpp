#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cdyn {

using cplx = std::complex<double>;

/// Global tolerance policy. One instance with reproducible defaults;
/// operations take an optional override.
struct Tolerance {
    double abs_tol = 1e-10;
    double rel_tol = 1e-9;
};

const Tolerance& default_tolerance();

// ---------------------------------------------------------------------------
// Continued fractions
// ---------------------------------------------------------------------------

/// Result of a regular continued-fraction expansion of x in (0,1).
/// `terms` holds a1..ak. `rational` is set when the expansion terminated
/// because the remainder dropped below resolution (input treated as rational).
struct CfExpansion {
    std::vector<long> terms;
    bool rational = false;
};

/// Regular continued fraction of x in (0,1), at most n partial quotients.
/// Throws std::invalid_argument for x outside (0,1) or n < 1.
CfExpansion cf_expand(double x, int n);

/// Convergents p_k/q_k of a partial-quotient list (a1, a2, ...), as pairs.
std::vector<std::pair<long long, long long>> cf_convergents(std::span<const long> terms);

/// An irrational rotation number together with continued-fraction data.
struct RotationTarget {
    double value = 0.0;               // in (0,1)
    std::vector<long> cf_terms;       // a1, a2, ... (finite prefix)
    std::optional<int> type_bound;    // M, when known

    // Depth is capped by double resolution: the reconstruction invariant
    // |value - p_n/q_n| < 1/q_n^2 fails once q_n^2 exceeds 1/eps.
    static RotationTarget golden(int depth = 30);
    static RotationTarget from_value(double x, int depth = 32);
    static RotationTarget from_cf(std::vector<long> terms);
};

/// Depth-limited bounded-type certificate: true iff a1..a_depth are all <= M.
/// Throws for M < 1, depth exceeding the stored terms, or rational input.
bool is_bounded_type(const RotationTarget& t, int M, int depth);

// ---------------------------------------------------------------------------
// Argument lifting
// ---------------------------------------------------------------------------

/// Continuous branch of arg/2pi along a path of nonzero samples.
/// Consecutive samples must differ in argument by less than pi.
/// For a closed path, back() - front() is the winding number.
std::vector<double> arg_lift(std::span<const cplx> path);

// ---------------------------------------------------------------------------
// Scalar root finding
// ---------------------------------------------------------------------------

/// Bisection for a continuous nondecreasing response f on [lo, hi].
/// Stops when |f(mid)| < f_tol or after max_iter halvings; returns the best
/// midpoint seen. `achieved` receives the smallest |f| observed.
double bisect_monotone(const std::function<double(double)>& f, double lo, double hi,
                       double f_tol, int max_iter, double* achieved = nullptr);

/// Complex Newton iteration for g(z)=0 with analytic g and explicit derivative.
cplx newton(const std::function<cplx(cplx)>& g, const std::function<cplx(cplx)>& dg,
            cplx z0, double tol, int max_iter);

}  // namespace cdyn
