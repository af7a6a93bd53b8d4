#include "qwalk/analytic.hpp"

#include <cmath>

namespace qwalk {

namespace {

double dist_to_segment(Complex x, double lo, double hi) {
    const double re = std::real(x), im = std::imag(x);
    if (re < lo) return std::abs(x - Complex(lo, 0));
    if (re > hi) return std::abs(x - Complex(hi, 0));
    return std::abs(im);
}

Complex pow_int(Complex base, int n) {
    Complex acc = 1.0;
    Complex b = base;
    for (int k = n; k > 0; k >>= 1) {
        if (k & 1) acc *= b;
        b *= b;
    }
    return acc;
}

void check_domain(const WalkParams& p, Complex x, double z, Representation rep) {
    const DerivedConstants dc = derive(p);
    if (!(z > 0.0) || z > dc.z1 * (1.0 + 1e-14))
        throw Error(ErrorCode::DomainViolation, "z must lie in (0, z1]");
    const BranchPoints bp = branch_points(p, z);
    if (rep == Representation::CutX3X4) {
        if (dist_to_segment(x, bp.x3, bp.x4) < 1e-9)
            throw Error(ErrorCode::DomainViolation,
                        "x too close to the cut [x3,x4] for the continued representation");
    } else {
        if (std::abs(x) >= dc.r)
            throw Error(ErrorCode::DomainViolation,
                        std::string(to_string(rep)) + " requires |x| < r");
        if (rep == Representation::CutX1X2 && dist_to_segment(x, bp.x1, bp.x2) < 1e-9)
            throw Error(ErrorCode::DomainViolation, "x too close to the cut [x1,x2]");
    }
    // zero y-drift at z = 1 pinches x2 = x3 = 1; the singularity expansions in
    // the asymptotic module are the right tool there
    if (p.p_n == p.p_s && z >= 1.0 - 1e-12 && std::abs(x - 1.0) < 1e-6)
        throw Error(ErrorCode::DomainViolation,
                    "x within 1e-6 of the z=1 pinch point x=1 (M_y = 0); use the asymptotic laws");
}

HValue h_circle_contour(const WalkParams& p, StartPoint s, Complex x, double z,
                        const EvalOptions& opt) {
    const double r = derive(p).r;
    auto eval_m = [&](int m) {
        Complex acc = 0.0;
        for (int k = 0; k < m; ++k) {
            const double th = 2.0 * M_PI * (k + 0.5) / m;  // offset nodes avoid the real axis
            const Complex t = r * Complex(std::cos(th), std::sin(th));
            const Complex y0 = eval_y(p, 0, t, z);
            const Complex phi = 1.0 / (t * (t - x)) + 1.0 / (x * t - r * r);
            acc += pow_int(t, s.n0) * pow_int(y0, s.m0) * phi * t;  // dt = i t dth; i/(2 pi i) folded below
        }
        return acc * (2.0 * M_PI / m) / (2.0 * M_PI);
    };
    Complex prev = eval_m(opt.contour_start);
    HValue out;
    out.rep = Representation::CircleContour;
    for (int m = 2 * opt.contour_start; m <= opt.contour_cap; m *= 2) {
        const Complex cur = eval_m(m);
        out.quad_error = std::abs(cur - prev);
        prev = cur;
        if (out.quad_error < opt.quad_tol) break;
    }
    out.value = x * prev;
    return out;
}

}  // namespace

const char* to_string(Representation r) {
    switch (r) {
        case Representation::CircleContour: return "CircleContour";
        case Representation::CutX1X2: return "CutX1X2";
        case Representation::CutX3X4: return "CutX3X4";
        case Representation::ChebyshevForm: return "ChebyshevForm";
    }
    return "?";
}

namespace {
HValue eval_h_impl(const WalkParams& p, StartPoint s, Complex x, double z, Representation rep,
                   const EvalOptions& opt) {
    if (std::abs(x) == 0.0) {
        // h(0,z) = 0: the series starts at i = 1 and every representation
        // carries the overall factor x
        return HValue{0.0, rep, 0.0, z <= 1.0};
    }
    const DerivedConstants dc = derive(p);
    const double r2 = dc.r * dc.r;
    HValue out;
    out.rep = rep;

    switch (rep) {
        case Representation::CircleContour:
            return h_circle_contour(p, s, x, z, opt);

        case Representation::CutX1X2: {
            auto smooth = [&](double t) -> Complex {
                const Complex phi = 1.0 / (t * (t - x)) + 1.0 / (x * t - r2);
                return pow_int(t, s.n0) * phi * mu(p, t, z, s.m0);
            };
            const QuadratureResult q =
                cut_integral(p, z, Cut::X1X2, smooth, opt.quad_tol, 96, opt.quad_cap, x);
            const Complex y0 = eval_y(p, 0, x, z);
            out.value = pow_int(x, s.n0) * pow_int(y0, s.m0) + x / M_PI * q.value;
            out.quad_error = q.error_estimate;
            return out;
        }

        case Representation::CutX3X4: {
            auto smooth = [&](double t) -> Complex {
                const double tn = std::pow(t, s.n0) - std::pow(r2 / t, s.n0);
                return tn * mu(p, t, z, s.m0) / (t * (t - x));
            };
            const QuadratureResult q =
                cut_integral(p, z, Cut::X3X4, smooth, opt.quad_tol, 96, opt.quad_cap, x);
            out.value = x / M_PI * q.value + principal_part(p, z, s.n0, s.m0).eval(x);
            out.quad_error = q.error_estimate;
            return out;
        }

        case Representation::ChebyshevForm: {
            const double fac = std::pow(p.p_s / p.p_n, s.m0 / 2.0);
            auto f = [&](double u) -> Complex {
                const double t2 = t_pm(p, u, z).t2;
                const double tn = std::pow(t2, s.n0) - std::pow(r2 / t2, s.n0);
                const double un = std::real(cheb_u(s.m0 - 1, -u));
                return tn * dt2_du(p, u, z) * un / (t2 * (t2 - x));
            };
            const QuadratureResult q =
                gauss_chebyshev_u_adaptive(f, opt.quad_tol, 96, opt.quad_cap);
            out.value = principal_part(p, z, s.n0, s.m0).eval(x) + x / M_PI * fac * q.value;
            out.quad_error = q.error_estimate;
            return out;
        }
    }
    throw Error(ErrorCode::BadInput, "unknown representation");
}
}  // namespace

HValue eval_h(const WalkParams& p, StartPoint s, Complex x, double z, Representation rep,
              const EvalOptions& opt) {
    check_domain(p, x, z, rep);
    HValue out = eval_h_impl(p, s, x, z, rep, opt);
    out.probabilistic = (z <= 1.0);
    if (out.quad_error > 1e-6)
        throw Error(ErrorCode::QuadratureFailure,
                    std::string("quadrature error estimate ") + std::to_string(out.quad_error) +
                        " after reaching the node cap; x is too close to a cut or contour");
    return out;
}

HValue eval_htilde(const WalkParams& p, StartPoint s, Complex y, double z, Representation rep,
                   const EvalOptions& opt) {
    return eval_h(p.swapped(), s.swapped(), y, z, rep, opt);
}

double boundary_residual(const WalkParams& p, StartPoint s, double z, int n_samples) {
    const double r = derive(p).r;
    double worst = 0.0;
    for (int k = 0; k < n_samples; ++k) {
        const double th = 2.0 * M_PI * (k + 0.5) / n_samples;
        const Complex t = r * Complex(std::cos(th), std::sin(th));
        const Complex tc = std::conj(t);
        const Complex ht = eval_h(p, s, t, z, Representation::CutX3X4).value;
        const Complex htc = eval_h(p, s, tc, z, Representation::CutX3X4).value;
        const Complex y0t = eval_y(p, 0, t, z);
        const Complex y0tc = eval_y(p, 0, tc, z);
        const Complex rhs =
            pow_int(t, s.n0) * pow_int(y0t, s.m0) - pow_int(tc, s.n0) * pow_int(y0tc, s.m0);
        worst = std::max(worst, std::abs(ht - htc - rhs));
    }
    return worst;
}

FunctionalEquationCheck functional_equation_residual(const WalkParams& p, StartPoint s, Complex x,
                                                     Complex y, double z, int n_cap) {
    if (std::abs(x) >= 1.0 || std::abs(y) >= 1.0)
        throw Error(ErrorCode::DomainViolation, "functional equation check needs |x|, |y| < 1");
    const GenfuncPartial g = dp_green_genfunc(p, s, x, y, z, n_cap);
    // expanded form of Q; no 1/x or 1/y, so x = 0 and y = 0 are fine
    const Complex q = CurveCoeffs(p).Q(x, y, z);
    const Complex hx = eval_h(p, s, x, z, Representation::CutX3X4).value;
    const Complex hy = eval_htilde(p, s, y, z, Representation::CutX3X4).value;
    FunctionalEquationCheck out;
    out.residual = std::abs(q * g.value - (hx + hy - pow_int(x, s.n0) * pow_int(y, s.m0)));
    out.bound = g.tail_bound * std::abs(q) + 1e-9;
    return out;
}

AbsorptionSplit absorption_probability(const WalkParams& p, StartPoint s) {
    AbsorptionSplit a;
    a.never_absorbed = (1.0 - std::pow(p.p_w / p.p_e, s.n0)) * (1.0 - std::pow(p.p_s / p.p_n, s.m0));
    a.absorbed = 1.0 - a.never_absorbed;
    return a;
}

double link_identity_residual(const WalkParams& p, StartPoint s, Complex y, double z) {
    const DerivedConstants dc = derive(p);
    if (std::abs(y) <= dc.rt)
        throw Error(ErrorCode::DomainViolation, "link identity needs |y| > rt");
    const Complex X0 = eval_x(p, 0, y, z);
    const Complex X1 = eval_x(p, 1, y, z);
    const Complex hx1 = eval_h(p, s, X1, z, Representation::CutX3X4).value;
    const Complex hty = eval_htilde(p, s, y, z, Representation::CutX3X4).value;
    const Complex lhs = hx1 + hty - pow_int(X1, s.n0) * pow_int(y, s.m0);
    const Complex rt2 = dc.rt * dc.rt, r2 = dc.r * dc.r;
    const Complex rhs = (pow_int(y, s.m0) - pow_int(rt2 / y, s.m0)) *
                        (pow_int(X0, s.n0) - pow_int(r2 / X0, s.n0));
    return std::abs(lhs - rhs);
}

double site_probability(const WalkParams& p, StartPoint s, int i, const EvalOptions& opt) {
    if (i < 1) throw Error(ErrorCode::BadInput, "site index must be >= 1");
    const double r2 = p.p_w / p.p_e;
    auto smooth = [&](double t) -> Complex {
        const double tn = std::pow(t, s.n0) - std::pow(r2 / t, s.n0);
        return tn * mu(p, t, 1.0, s.m0) / std::pow(t, i + 1);
    };
    const QuadratureResult q =
        cut_integral(p, 1.0, Cut::X3X4, smooth, opt.quad_tol, 96, opt.quad_cap);
    double val = std::real(q.value) / M_PI;
    const PrincipalPart pp = principal_part(p, 1.0, s.n0, s.m0);
    if (i < int(pp.coeffs.size())) val += pp.coeffs[i];
    return val;
}

}  // namespace qwalk
