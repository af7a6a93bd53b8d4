#pragma once

#include "qwalk/curve.hpp"
#include "qwalk/oracle.hpp"
#include "qwalk/quadrature.hpp"

namespace qwalk {

/// The four equivalent routes to h(x,z). CircleContour and CutX1X2 exist
/// mostly as cross-check oracles; ChebyshevForm converges fastest for
/// |x| < r and CutX3X4 doubles as the analytic continuation to
/// C \ [x3(z), x4(z)].
enum class Representation { CircleContour, CutX1X2, CutX3X4, ChebyshevForm };

const char* to_string(Representation r);

struct HValue {
    Complex value;
    Representation rep;
    double quad_error = 0.0;
    // z <= 1 gives the generating function of probabilities; z in (1, z1]
    // is the analytic continuation only
    bool probabilistic = true;
};

struct EvalOptions {
    double quad_tol = 1e-11;
    int quad_cap = 1536;
    int contour_start = 512;
    int contour_cap = 16384;
};

/// h(x,z) for the walk started at (n0,m0). Domains:
///   CircleContour, CutX1X2, ChebyshevForm: |x| < r (and off [x1,x2]);
///   CutX3X4: any x with distance > 1e-9 from [x3,x4].
/// z in (0,z1]; values with z > 1 are analytic continuations, not
/// probabilities.
HValue eval_h(const WalkParams& p, StartPoint s, Complex x, double z, Representation rep,
              const EvalOptions& opt = {});

/// h~(y,z), evaluated as h on the swapped walk per the x<->y symmetry.
HValue eval_htilde(const WalkParams& p, StartPoint s, Complex y, double z, Representation rep,
                   const EvalOptions& opt = {});

/// max over n_samples points t on C(0,r) of the boundary-condition residual
/// |h(t,z) - h(conj t,z) - [t^{n0} Y0(t,z)^{m0} - conj(t)^{n0} Y0(conj t,z)^{m0}]|.
double boundary_residual(const WalkParams& p, StartPoint s, double z, int n_samples);

struct FunctionalEquationCheck {
    double residual;
    double bound;  // DP tail bound for the partial sums involved
};

/// |Q(x,y,z) G_partial(x,y,z) - [h(x,z) + h~(y,z) - x^{n0} y^{m0}]| with
/// G_partial from the DP; the residual is bounded by the DP tail.
FunctionalEquationCheck functional_equation_residual(const WalkParams& p, StartPoint s, Complex x,
                                                     Complex y, double z, int n_cap);

struct AbsorptionSplit {
    double never_absorbed;   // A(n0,m0) = (1-(p_w/p_e)^{n0})(1-(p_s/p_n)^{m0})
    double absorbed;         // 1 - A = h(1,1) + h~(1,1)
};
AbsorptionSplit absorption_probability(const WalkParams& p, StartPoint s);

/// Residual of the link identity
/// h(X1(y,z),z) + h~(y,z) - X1^{n0} y^{m0}
///   = (y^{m0} - (rt^2/y)^{m0}) (X0^{n0} - (r^2/X0)^{n0}),   |y| > rt.
double link_identity_residual(const WalkParams& p, StartPoint s, Complex y, double z);

/// h_i = P(absorbed at (i,0)), by the z = 1 cut integral plus the
/// principal-part coefficient when i <= n0 - m0.
double site_probability(const WalkParams& p, StartPoint s, int i, const EvalOptions& opt = {});

}  // namespace qwalk
