#pragma once

#include <complex>
#include <vector>

#include "qwalk/walk.hpp"

namespace qwalk {

using Complex = std::complex<double>;

// ---------------------------------------------------------------------------
// Chebyshev polynomials (second and first kind), complex argument.
// Evaluated by the three-term recurrence; the closed radical forms are kept
// as cross-check routes.
// ---------------------------------------------------------------------------
Complex cheb_u(int n, Complex t);
Complex cheb_t(int n, Complex t);
Complex cheb_u_closed(int n, Complex t);
Complex cheb_t_closed(int n, Complex t);

// ---------------------------------------------------------------------------
// Coefficient polynomials of Q(x,y,z) = a(x,z) y^2 + b(x,z) y + c(x,z) and
// the swapped (tilde) family obtained from Q viewed as a quadratic in x.
// d = b^2 - 4ac factors as (b - 2zx sqrt(p_n p_s))(b + 2zx sqrt(p_n p_s)).
// ---------------------------------------------------------------------------
struct CurveCoeffs {
    explicit CurveCoeffs(const WalkParams& p) : p_(p) {}

    Complex a(Complex x, double z) const { return z * p_.p_n * x; }
    Complex b(Complex x, double z) const { return z * p_.p_e * x * x - x + z * p_.p_w; }
    Complex c(Complex x, double z) const { return z * p_.p_s * x; }
    Complex d(Complex x, double z) const {
        Complex bb = b(x, z);
        return bb * bb - 4.0 * a(x, z) * c(x, z);
    }

    Complex a_tilde(Complex y, double z) const { return z * p_.p_e * y; }
    Complex b_tilde(Complex y, double z) const { return z * p_.p_n * y * y - y + z * p_.p_s; }
    Complex c_tilde(Complex y, double z) const { return z * p_.p_w * y; }
    Complex d_tilde(Complex y, double z) const {
        Complex bb = b_tilde(y, z);
        return bb * bb - 4.0 * a_tilde(y, z) * c_tilde(y, z);
    }

    Complex Q(Complex x, Complex y, double z) const {
        return a(x, z) * y * y + b(x, z) * y + c(x, z);
    }

  private:
    WalkParams p_;
};

// ---------------------------------------------------------------------------
// Branch points x1 <= x2 <= x3 <= x4 of d(x,z) = 0, from the closed forms.
// For z in (0,z1) they are distinct and positive with x1 x4 = x2 x3 = r^2;
// at z = z1 the middle pair collides at r.
// ---------------------------------------------------------------------------
struct BranchPoints {
    double x1, x2, x3, x4;
    double z;
};

BranchPoints branch_points(const WalkParams& p, double z);

// ---------------------------------------------------------------------------
// Branches of the algebraic function Y(x,z) defined by Q(x,Y,z) = 0,
// labelled by modulus: |Y0| <= sqrt(p_s/p_n) <= |Y1| off the cuts
// [x1,x2] u [x3,x4]. X branches are the same construction on the swapped
// parameters. Values exactly on a cut are rejected (OnCut); the edge limits
// carry an explicit sign of sqrt(-d) instead (upper edge: -i sqrt(-d)).
// ---------------------------------------------------------------------------
struct BranchPair {
    Complex y0;  // small branch
    Complex y1;  // large branch
};

BranchPair eval_y_pair(const WalkParams& p, Complex x, double z);
Complex eval_y(const WalkParams& p, int branch, Complex x, double z);
Complex eval_x(const WalkParams& p, int branch, Complex y, double z);

enum class CutEdge { Upper, Lower };
Complex eval_y0_edge(const WalkParams& p, double t, double z, CutEdge edge);

/// (X0(Y0(x,z),z), X1(Y0(x,z),z)); equals (x, r^2/x) for |x| < r and
/// (r^2/x, x) for |x| > r. |x| = r (within 1e-12) is rejected.
std::pair<Complex, Complex> compose_xy(const WalkParams& p, Complex x, double z);

// ---------------------------------------------------------------------------
// mu_{m0}(t,z): the polynomial factor in the jump of Y0^{m0} across the cut,
//   Y0^{m0} - conj(Y0)^{m0} = -/+ 2i sqrt(-d) mu_{m0}  on the upper/lower edge.
// ---------------------------------------------------------------------------
double mu(const WalkParams& p, double t, double z, int m0);

/// Change of variable u = b/sqrt(4ac): t_minus maps [-1,1] onto [x1,x2]
/// and t_plus onto [x3,x4], with t_minus * t_plus = r^2.
struct TPair {
    double t1;  // t_minus
    double t2;  // t_plus
};
TPair t_pm(const WalkParams& p, double u, double z);
double dt2_du(const WalkParams& p, double u, double z);
double dt1_du(const WalkParams& p, double u, double z);

// ---------------------------------------------------------------------------
// x * P_infinity(x -> x^{n0-1} Y0(x,z)^{m0})(x): the polynomial part of the
// Laurent expansion at infinity. Zero when n0 <= m0, degree n0 - m0
// otherwise. Computed by truncated power series in w = 1/x.
// ---------------------------------------------------------------------------
struct PrincipalPart {
    std::vector<double> coeffs;  // ascending powers of x; empty or {0} means zero

    Complex eval(Complex x) const {
        Complex v = 0.0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * x + *it;
        return v;
    }
    int degree() const;
    bool is_zero() const;
};

PrincipalPart principal_part(const WalkParams& p, double z, int n0, int m0);

/// Conformal gluing functions for the circles C(0,r) and C(0,rt):
/// w(t) = (t + r^2/t)/2, wt(t) = (t + rt^2/t)/2.
enum class Gluing { M, L };
Complex gluing(const WalkParams& p, Complex t, Gluing which);

// ---------------------------------------------------------------------------
// Saddle point of x y^{tan(gamma)} on Q(x,y,1) = 0 (both drifts positive).
// s3 solves p_e s^2 + B(gamma) s + p_w = 0 and t3 the swapped analogue;
// s3(0) = x3(1), s3(pi/2) = r, t3(0) = rt, t3(pi/2) = y3(1), and
// t3 = Y1(s3,1). B is evaluated in a rationalized form that is regular
// through tan(gamma) = 1.
// ---------------------------------------------------------------------------
struct SaddlePoint {
    double gamma;
    double s3;
    double t3;
};

SaddlePoint saddle(const WalkParams& p, double gamma);

}  // namespace qwalk
