#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "cdyn/numkit.hpp"
#include "cdyn/series.hpp"

namespace cdyn {

// ---------------------------------------------------------------------------
// Parabolic quadratic data
// ---------------------------------------------------------------------------

/// P(z) = v z + z^2 with v = exp(2 pi i p/q), p/q irreducible, together with
/// the germ of P^q at 0 and the axis bookkeeping at the parabolic point.
///
/// The q attracting directions are the solutions of lead_a d^q in R_-, the
/// repelling ones interleave them. One application of P rotates both families
/// by p steps. The implosion direction nu picks the repelling axis paired to
/// each attracting axis: the next one counterclockwise for nu=+1, the
/// previous one for nu=-1.
struct ParabolicQuadratic {
    int p = 0;
    int q = 1;
    int nu = +1;                         // direction of the implosion
    cplx multiplier;                     // v = exp(2 pi i p/q)
    TruncatedSeries germ;                // germ of P^q at 0, order 2q+2
    cplx lead_a;                         // coefficient of z^{q+1} in P^q
    cplx resid_b;                        // log-correction coefficient
    std::vector<cplx> attracting_dirs;   // unit vectors, increasing angle
    std::vector<cplx> repelling_dirs;
    std::vector<int> attracting_axis_map;  // i -> axis of P(attracting petal i)
    std::vector<int> repelling_axis_map;
    std::vector<int> pairing_j_of_i;     // j(i) per nu
    std::vector<int> pairing_i_of_j;     // inverse map

    cplx eval(cplx z) const { return multiplier * z + z * z; }
    cplx critical_point() const { return -0.5 * multiplier; }
};

ParabolicQuadratic build_parabolic(int p, int q, int nu);

// ---------------------------------------------------------------------------
// Point classification
// ---------------------------------------------------------------------------

struct PointClass {
    enum Kind { Escaped, InteriorBasin, NotInterior, Unknown } kind = Unknown;
    int axis = -1;    // attracting axis index for InteriorBasin
    long iters = 0;   // steps of the one-step map when the decision fell
};

// ---------------------------------------------------------------------------
// Fatou atlas
// ---------------------------------------------------------------------------

struct FatouOptions {
    double escape_R = 10.0;
    long max_iter = 100000;
    int expansion_terms = 12;   // asymptotic series length K
    double target_accuracy = 1e-12;
};

/// Normalized evaluators for the attracting Fatou coordinates phi_{-,i}, the
/// extended repelling parameterization psi_+ (axis j0), and phi_div, for the
/// q-th iterate of a parabolic quadratic or for the degree-2 circle-preserving
/// rational map with the parabolic point conjugated to 0.
///
/// Normalization: phi_div(critical point) = 0 and psi_+ has zero asymptotic
/// constant at the chosen repelling axis. The attracting family carries
/// per-axis constants making phi_{-,i^P} o P = T_{1/q} o phi_{-,i} hold; the
/// repelling family likewise satisfies psi_{+,j^P} o T_{1/q} = P o psi_{+,j}.
class FatouAtlas {
public:
    /// Atlas for P = v z + z^2. j0 picks the repelling axis of psi_+.
    static std::shared_ptr<const FatouAtlas> build(const ParabolicQuadratic& pq,
                                                   FatouOptions opts = {}, int j0 = 0);

    /// Atlas for (3z^2+1)/(z^2+3) conjugated by z -> z-1: one fixed point of
    /// multiplier 1 with two petals; each basin keeps its own attracting
    /// coordinate. No escape: the sphere minus the unit circle is attracted.
    static std::shared_ptr<const FatouAtlas> build_blaschke_parabolic(FatouOptions opts = {},
                                                                      int j0 = 1);

    const ParabolicQuadratic& parent() const { return pq_; }
    const FatouOptions& options() const { return opts_; }
    bool is_blaschke() const { return blaschke_; }
    int petal_count() const { return petals_; }
    int chosen_j0() const { return j0_; }
    int target_axis() const { return i0_; }  // i(j0) per nu
    double petal_scale() const { return w_req_; }
    cplx critical_point() const;

    /// One application of the dynamics (P, or the conjugated Blaschke map).
    cplx step(cplx z) const;
    /// steps_per_unit applications: the map the Fatou coordinates conjugate to T1.
    cplx step_full(cplx z) const;
    int steps_per_unit() const { return steps_; }

    PointClass classify(cplx z) const;
    PointClass classify(cplx z, long max_iter) const;

    /// Attracting Fatou coordinate on the basin of axis i.
    cplx phi_minus(cplx z, int i) const;

    /// Extended repelling parameterization of axis j0, entire in w.
    /// Throws when forward iterates exceed the overflow guard.
    cplx psi_plus(cplx w) const;

    /// psi_+ for escape probing: instead of throwing on overflow, returns the
    /// current (already huge) iterate, whose classification is decided.
    cplx psi_plus_soft(cplx w) const;

    /// Repelling parameterization of an arbitrary axis j (coherent family).
    cplx psi_plus_axis(int j, cplx w) const;

    /// phi_div: attracting coordinate of the target axis i(j0), extended to
    /// the whole interior by the least-iterate rule. Returns the value and
    /// the basin axis of z through `axis_out` when non-null.
    cplx phi_div(cplx z, int* axis_out = nullptr) const;

    /// Steps of the axis rotation from axis i to the target axis, when the
    /// one-step map can reach it (always for quadratics; only i == i0 for the
    /// two fixed petals of the Blaschke parabolic).
    int steps_to_target_axis(int i) const;

    ~FatouAtlas();
    FatouAtlas(const FatouAtlas&) = delete;
    FatouAtlas& operator=(const FatouAtlas&) = delete;

private:
    FatouAtlas();
    struct Impl;
    std::unique_ptr<Impl> impl_;
    ParabolicQuadratic pq_;
    FatouOptions opts_;
    bool blaschke_ = false;
    int petals_ = 1;
    int steps_ = 1;
    int j0_ = 0;
    int i0_ = 0;
    double w_req_ = 0.0;
};

}  // namespace cdyn
