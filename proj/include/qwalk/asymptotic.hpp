#pragma once

#include "qwalk/analytic.hpp"
#include "qwalk/curve.hpp"

namespace qwalk {

enum class Quantity {
    STail,          // P(S = k)
    TTail,          // P(T = k)
    TauTailLaw,     // P(tau >= k) decay, or its limit constant when PosPos
    SiteX,          // h_i as i -> infinity
    SiteY,          // h~_j
    GammaSetGreen,  // Green mass of the set {i-1 + a(j-1) = k}
    MartinKernel,
};

/// One-variable asymptotic law  value(k) = constant * base^k * k^{-power}.
/// base <= 1 is the per-step decay factor; rate() = 1/base >= 1 is the
/// growth base of the reciprocal. A pure limit (PosPos tau-tail) is encoded
/// as power = 0, base = 1.
struct AsymptoticLaw {
    DriftClass regime;
    Quantity quantity;
    double constant = 0.0;
    double power = 0.0;
    double base = 1.0;

    double eval(double k) const;
    double rate() const { return 1.0 / base; }
};

AsymptoticLaw s_tail(const WalkParams& p, StartPoint s);
AsymptoticLaw t_tail(const WalkParams& p, StartPoint s);
AsymptoticLaw tau_tail(const WalkParams& p, StartPoint s);

enum class Axis { X, Y };
AsymptoticLaw site_asymptotics(const WalkParams& p, StartPoint s, Axis axis);

AsymptoticLaw gamma_set_green(const WalkParams& p, StartPoint s, int a);

/// Green-function asymptotics. Zero drift uses the closed rational form;
/// both-drifts-positive uses the saddle point (s3,t3) at gamma = atan(j/i)
/// in the interior and the x3/r~-type laws on the boundary directions.
struct GreenAsymptotics {
    DriftClass regime;
    double gamma = 0.0;
    // positive-drift interior pieces (so tests can pick the law apart)
    double s3 = 0.0, t3 = 0.0;
    double constant = 0.0;  // prefactor of s3^{-i} t3^{-j} j^{-1/2}

    double eval(int i, int j) const;

    // stashed for eval()
    double pn_ = 0.0, pe_ = 0.0;
    double n0m0_ = 0.0;
    bool interior_ = true;
    bool axis_swapped_ = false;                    // true for the j/i -> inf boundary law
    double bconst_ = 0.0, bx3_ = 0.0, brt_ = 0.0;  // boundary law pieces
};

GreenAsymptotics green_asymptotics(const WalkParams& p, StartPoint s, int i, int j);
GreenAsymptotics green_asymptotics_angle(const WalkParams& p, StartPoint s, double gamma);

struct Direction {
    enum class Kind { Angle, AxisX, AxisY } kind = Kind::Angle;
    double gamma = 0.0;
    static Direction angle(double g) { return Direction{Kind::Angle, g}; }
    static Direction axis_x() { return Direction{Kind::AxisX, 0.0}; }
    static Direction axis_y() { return Direction{Kind::AxisY, 0.0}; }
};

/// Martin kernel limit normalized by the reference start (1,1).
/// Zero drift: n0*m0 in every direction. Positive drift: the saddle-point
/// product form in the interior; on the axes the exponent of rt (resp. r)
/// is rt^{m0-1}, the gamma->0 limit of the interior kernel, which also
/// matches the boundary-direction Green law and the site-law route. The
/// halved-exponent variant rt^{m0/2-1} stays reachable behind the flag
/// for comparison; it disagrees with all three routes.
double martin_kernel(const WalkParams& p, StartPoint s, Direction dir,
                     bool halved_axis_exponent = false);

/// The positive harmonic function of the Doob transform: n0*m0 for zero
/// drift, A(n0,m0) for both drifts positive. Mixed regimes have none.
double harmonic(const WalkParams& p, StartPoint s);

}  // namespace qwalk
