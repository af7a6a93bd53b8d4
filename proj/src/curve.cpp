#include "qwalk/curve.hpp"

#include <algorithm>
#include <cmath>

namespace qwalk {

Complex cheb_u(int n, Complex t) {
    if (n < 0) return 0.0;
    Complex u0 = 1.0, u1 = 2.0 * t;
    if (n == 0) return u0;
    for (int k = 1; k < n; ++k) {
        Complex u2 = 2.0 * t * u1 - u0;
        u0 = u1;
        u1 = u2;
    }
    return u1;
}

Complex cheb_t(int n, Complex t) {
    if (n == 0) return 1.0;
    Complex u0 = 1.0, u1 = t;
    for (int k = 1; k < n; ++k) {
        Complex u2 = 2.0 * t * u1 - u0;
        u0 = u1;
        u1 = u2;
    }
    return u1;
}

Complex cheb_u_closed(int n, Complex t) {
    Complex s = std::sqrt(t * t - 1.0);
    if (std::abs(s) < 1e-14) {
        // removable at t = +-1: U_n(1) = n+1, U_n(-1) = (-1)^n (n+1)
        double sign = (std::real(t) >= 0 || n % 2 == 0) ? 1.0 : -1.0;
        return sign * double(n + 1);
    }
    return (std::pow(t + s, n + 1) - std::pow(t - s, n + 1)) / (2.0 * s);
}

Complex cheb_t_closed(int n, Complex t) {
    Complex s = std::sqrt(t * t - 1.0);
    return (std::pow(t + s, n) + std::pow(t - s, n)) / 2.0;
}

BranchPoints branch_points(const WalkParams& p, double z) {
    const double z1 = derive(p).z1;
    if (!(z > 0.0) || z > z1 * (1.0 + 1e-14))
        throw Error(ErrorCode::OutOfRange, "z must lie in (0, z1]");
    const double sq = std::sqrt(p.p_n * p.p_s);
    const double rr = p.p_w / p.p_e;
    const double a23 = (1.0 / z - 2.0 * sq) / (2.0 * p.p_e);
    const double a14 = (1.0 / z + 2.0 * sq) / (2.0 * p.p_e);
    // a23^2 - r^2 >= 0 on (0, z1], = 0 exactly at z = z1
    const double s23 = std::sqrt(std::max(a23 * a23 - rr, 0.0));
    const double s14 = std::sqrt(a14 * a14 - rr);
    BranchPoints bp;
    bp.x1 = a14 - s14;
    bp.x2 = a23 - s23;
    bp.x3 = a23 + s23;
    bp.x4 = a14 + s14;
    bp.z = z;
    return bp;
}

namespace {

// distance from a complex point to a real segment [lo, hi]
double dist_to_segment(Complex x, double lo, double hi) {
    const double re = std::real(x), im = std::imag(x);
    if (re < lo) return std::abs(x - Complex(lo, 0));
    if (re > hi) return std::abs(x - Complex(hi, 0));
    return std::abs(im);
}

constexpr double kCutGuard = 1e-12;

}  // namespace

BranchPair eval_y_pair(const WalkParams& p, Complex x, double z) {
    const BranchPoints bp = branch_points(p, z);
    if (dist_to_segment(x, bp.x1, bp.x2) <= kCutGuard ||
        dist_to_segment(x, bp.x3, bp.x4) <= kCutGuard)
        throw Error(ErrorCode::OnCut, "x lies on a cut of Y(x,z); use the edge evaluators");
    if (std::abs(x) < 1e-300)
        throw Error(ErrorCode::OutOfRange, "the fiber over x = 0 degenerates (a = c = 0)");
    const CurveCoeffs cc(p);
    const Complex a = cc.a(x, z), b = cc.b(x, z), c = cc.c(x, z);
    const Complex s = std::sqrt(b * b - 4.0 * a * c);
    // pick the larger-magnitude numerator, recover the small root from the
    // product Y0 Y1 = c/a; this keeps both branches accurate near cancellation
    const Complex num = (std::abs(-b + s) >= std::abs(-b - s)) ? (-b + s) : (-b - s);
    BranchPair out;
    out.y1 = num / (2.0 * a);
    out.y0 = (c / a) / out.y1;
    return out;
}

Complex eval_y(const WalkParams& p, int branch, Complex x, double z) {
    const BranchPair pr = eval_y_pair(p, x, z);
    if (branch == 0) return pr.y0;
    if (branch == 1) return pr.y1;
    throw Error(ErrorCode::BadInput, "branch must be 0 or 1");
}

Complex eval_x(const WalkParams& p, int branch, Complex y, double z) {
    return eval_y(p.swapped(), branch, y, z);
}

Complex eval_y0_edge(const WalkParams& p, double t, double z, CutEdge edge) {
    const CurveCoeffs cc(p);
    const Complex a = cc.a(t, z), b = cc.b(t, z);
    const double d = std::real(cc.d(t, z));
    if (d > 0.0)
        throw Error(ErrorCode::OutOfRange, "t is not interior to a cut (d(t,z) >= 0)");
    const double sd = std::sqrt(-d);
    const Complex i_sd = (edge == CutEdge::Upper) ? Complex(0, -sd) : Complex(0, sd);
    return (-b + i_sd) / (2.0 * a);
}

std::pair<Complex, Complex> compose_xy(const WalkParams& p, Complex x, double z) {
    const double r = derive(p).r;
    if (std::abs(std::abs(x) - r) <= 1e-12)
        throw Error(ErrorCode::OnCircle, "|x| = r is the fixed circle of the composition");
    const Complex y0 = eval_y(p, 0, x, z);
    return {eval_x(p, 0, y0, z), eval_x(p, 1, y0, z)};
}

double mu(const WalkParams& p, double t, double z, int m0) {
    const CurveCoeffs cc(p);
    const double a = std::real(cc.a(t, z));
    const double b = std::real(cc.b(t, z));
    const double d = std::real(cc.d(t, z));
    double sum = 0.0;
    double binom = m0;  // C(m0, 1)
    // sum_k C(m0, 2k+1) d^k (-b)^{m0-2k-1}
    for (int k = 0; 2 * k + 1 <= m0; ++k) {
        if (k > 0)
            binom *= double(m0 - 2 * k + 1) * double(m0 - 2 * k) / (double(2 * k) * double(2 * k + 1));
        sum += binom * std::pow(d, k) * std::pow(-b, m0 - (2 * k + 1));
    }
    return sum / std::pow(2.0 * a, m0);
}

TPair t_pm(const WalkParams& p, double u, double z) {
    const double sq = std::sqrt(p.p_n * p.p_s);
    const double A = 1.0 + 2.0 * sq * u * z;
    const double D = std::max(A * A - 4.0 * p.p_e * p.p_w * z * z, 0.0);
    const double sD = std::sqrt(D);
    // t_minus computed from the product t- t+ = p_w/p_e to avoid cancellation
    TPair tp;
    tp.t2 = (A + sD) / (2.0 * p.p_e * z);
    tp.t1 = (p.p_w / p.p_e) / tp.t2;
    return tp;
}

namespace {
double kfactor(const WalkParams& p, double u, double z) {
    const double sq = std::sqrt(p.p_n * p.p_s);
    const double se = std::sqrt(p.p_e * p.p_w);
    const double k1 = -2.0 * sq * u + 2.0 * se;
    const double k2 = -2.0 * sq * u - 2.0 * se;
    return std::sqrt(std::max((1.0 - k1 * z) * (1.0 - k2 * z), 0.0));
}
}  // namespace

double dt2_du(const WalkParams& p, double u, double z) {
    const double sq = std::sqrt(p.p_n * p.p_s);
    return t_pm(p, u, z).t2 * 2.0 * sq * z / kfactor(p, u, z);
}

double dt1_du(const WalkParams& p, double u, double z) {
    const double sq = std::sqrt(p.p_n * p.p_s);
    return -t_pm(p, u, z).t1 * 2.0 * sq * z / kfactor(p, u, z);
}

int PrincipalPart::degree() const {
    for (int k = int(coeffs.size()) - 1; k >= 0; --k)
        if (coeffs[k] != 0.0) return k;
    return -1;
}

bool PrincipalPart::is_zero() const { return degree() < 0; }

namespace {

constexpr int kMaxSeriesDepth = 96;

// truncated power-series helpers (ascending coefficients, fixed length)
std::vector<double> series_mul(const std::vector<double>& f, const std::vector<double>& g) {
    const size_t n = f.size();
    std::vector<double> out(n, 0.0);
    for (size_t i = 0; i < n; ++i) {
        if (f[i] == 0.0) continue;
        for (size_t j = 0; i + j < n; ++j) out[i + j] += f[i] * g[j];
    }
    return out;
}

std::vector<double> series_div(const std::vector<double>& f, const std::vector<double>& g) {
    const size_t n = f.size();
    std::vector<double> q(n, 0.0);
    std::vector<double> rem = f;
    for (size_t k = 0; k < n; ++k) {
        q[k] = rem[k] / g[0];
        for (size_t j = 0; k + j < n; ++j) rem[k + j] -= q[k] * g[j];
    }
    return q;
}

}  // namespace

PrincipalPart principal_part(const WalkParams& p, double z, int n0, int m0) {
    PrincipalPart pp;
    if (n0 <= m0) {
        pp.coeffs = {0.0};
        return pp;
    }
    const int nterms = n0 - m0 + 8;
    if (nterms > kMaxSeriesDepth)
        throw Error(ErrorCode::SeriesDepthExceeded,
                    "n0 - m0 exceeds the configured Laurent series depth");
    // Y0 = w g(w) with w = 1/x; g solves z p_n w^2 g^2 + (z p_e - w + z p_w w^2) g + z p_s = 0.
    std::vector<double> den(nterms, 0.0);
    den[0] = z * p.p_e;
    if (nterms > 1) den[1] = -1.0;
    if (nterms > 2) den[2] = z * p.p_w;
    std::vector<double> g(nterms, 0.0);
    g[0] = -p.p_s / p.p_e;
    for (int it = 0; it < nterms + 2; ++it) {
        std::vector<double> num = series_mul(g, g);
        // num <- z ps + z pn w^2 g^2
        for (int k = nterms - 1; k >= 2; --k) num[k] = z * p.p_n * num[k - 2];
        num[0] = z * p.p_s;
        if (nterms > 1) num[1] = 0.0;
        for (double& v : num) v = -v;
        g = series_div(num, den);
    }
    // x^{n0-1} Y0^{m0} = w^{m0-n0+1} g(w)^{m0}; polynomial part keeps k <= n0-m0-1
    std::vector<double> gm(nterms, 0.0);
    gm[0] = 1.0;
    for (int j = 0; j < m0; ++j) gm = series_mul(gm, g);
    const int deg = n0 - m0 - 1;
    pp.coeffs.assign(deg + 2, 0.0);
    for (int k = 0; k <= deg; ++k) pp.coeffs[deg - k + 1] = gm[k];
    return pp;
}

Complex gluing(const WalkParams& p, Complex t, Gluing which) {
    if (std::abs(t) < 1e-300)
        throw Error(ErrorCode::PoleAtZero, "the gluing function has a simple pole at t = 0");
    const DerivedConstants dc = derive(p);
    const double rad = (which == Gluing::M) ? dc.r : dc.rt;
    return 0.5 * (t + rad * rad / t);
}

namespace {

// B(gamma) written with the conjugate factor so the tan(gamma)^2 = 1 point
// is a regular value instead of 0/0.
double saddle_B(double T, double pe, double pw, double pn, double ps) {
    const double C = 1.0 - 4.0 * ps * pn + 4.0 * pw * pe * T;
    const double disc = std::max(1.0 - (1.0 - T) * C, 0.0);
    return -C / (1.0 + std::sqrt(disc));
}

}  // namespace

SaddlePoint saddle(const WalkParams& p, double gamma) {
    if (p.drift_class() != DriftClass::PosPos)
        throw Error(ErrorCode::WrongRegime, "saddle point requires M_x > 0 and M_y > 0");
    if (!(gamma >= 0.0) || !(gamma <= M_PI / 2))
        throw Error(ErrorCode::OutOfRange, "gamma must lie in [0, pi/2]");
    SaddlePoint sp;
    sp.gamma = gamma;
    // Endpoints evaluate the B formulas in their limit form: B(0) is plain
    // arithmetic and the swapped factor degenerates to a double root, which
    // lands s3(0) on x3(1) and t3(0) on rt (likewise at pi/2).
    if (gamma == 0.0) {
        const double sq = std::sqrt(p.p_n * p.p_s);
        const double b0 = -(1.0 - 2.0 * sq);
        sp.s3 = (-b0 + std::sqrt(std::max(b0 * b0 - 4.0 * p.p_e * p.p_w, 0.0))) / (2.0 * p.p_e);
        sp.t3 = sq / p.p_n;
        return sp;
    }
    if (gamma == M_PI / 2) {
        const double se = std::sqrt(p.p_e * p.p_w);
        const double b0 = -(1.0 - 2.0 * se);
        sp.t3 = (-b0 + std::sqrt(std::max(b0 * b0 - 4.0 * p.p_n * p.p_s, 0.0))) / (2.0 * p.p_n);
        sp.s3 = se / p.p_e;
        return sp;
    }
    const double tg = std::tan(gamma);
    const double T = tg * tg;
    const double B = saddle_B(T, p.p_e, p.p_w, p.p_n, p.p_s);
    const double Bt = saddle_B(1.0 / T, p.p_n, p.p_s, p.p_e, p.p_w);
    sp.s3 = (-B + std::sqrt(std::max(B * B - 4.0 * p.p_e * p.p_w, 0.0))) / (2.0 * p.p_e);
    sp.t3 = (-Bt + std::sqrt(std::max(Bt * Bt - 4.0 * p.p_n * p.p_s, 0.0))) / (2.0 * p.p_n);
    return sp;
}

}  // namespace qwalk
