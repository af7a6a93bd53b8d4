#include "qwalk/asymptotic.hpp"

#include <cmath>
#include <functional>

namespace qwalk {

double AsymptoticLaw::eval(double k) const {
    return constant * std::pow(base, k) * std::pow(k, -power);
}

namespace {

// P(S=k) ~ C base^k k^{-3/2} when both drifts are positive, with
// base = p_e + p_w + 2 sqrt(p_n p_s) < 1.
AsymptoticLaw s_tail_pospos(const WalkParams& p, StartPoint s) {
    AsymptoticLaw law;
    law.regime = DriftClass::PosPos;
    law.quantity = Quantity::STail;
    law.base = p.p_e + p.p_w + 2.0 * std::sqrt(p.p_n * p.p_s);
    law.power = 1.5;
    law.constant = s.m0 / (2.0 * std::sqrt(M_PI)) *
                   std::sqrt(law.base / std::sqrt(p.p_n * p.p_s)) *
                   std::pow(p.p_s / p.p_n, s.m0 / 2.0) *
                   (1.0 - std::pow(p.p_w / p.p_e, s.n0));
    return law;
}

}  // namespace

AsymptoticLaw s_tail(const WalkParams& p, StartPoint s) {
    AsymptoticLaw law;
    law.regime = p.drift_class();
    law.quantity = Quantity::STail;
    switch (law.regime) {
        case DriftClass::ZeroZero:
            law.constant = s.n0 * s.m0 / (2.0 * M_PI * std::sqrt(p.p_e * p.p_n));
            law.power = 2.0;
            law.base = 1.0;
            return law;
        case DriftClass::PosPos:
            return s_tail_pospos(p, s);
        case DriftClass::ZeroXPosY: {
            // S still requires the y-walk to come down against its drift
            law.base = 2.0 * (p.p_e + std::sqrt(p.p_n * p.p_s));
            law.power = 2.0;
            law.constant = s.n0 * s.m0 /
                           (2.0 * M_PI * std::sqrt(p.p_e) * std::pow(p.p_n * p.p_s, 0.25)) *
                           std::pow(p.p_s / p.p_n, s.m0 / 2.0);
            return law;
        }
        case DriftClass::PosXZeroY: {
            // swapped form of the PosPos T-law; base is exactly 1 here
            law.base = 1.0;
            law.power = 1.5;
            law.constant = s.m0 / (2.0 * std::sqrt(M_PI * p.p_n)) *
                           (1.0 - std::pow(p.p_w / p.p_e, s.n0));
            return law;
        }
    }
    throw Error(ErrorCode::WrongRegime, "unreachable");
}

AsymptoticLaw t_tail(const WalkParams& p, StartPoint s) {
    AsymptoticLaw law = s_tail(p.swapped(), s.swapped());
    law.quantity = Quantity::TTail;
    law.regime = p.drift_class();
    return law;
}

AsymptoticLaw tau_tail(const WalkParams& p, StartPoint s) {
    AsymptoticLaw law;
    law.regime = p.drift_class();
    law.quantity = Quantity::TauTailLaw;
    switch (law.regime) {
        case DriftClass::ZeroZero:
            law.constant = s.n0 * s.m0 / (M_PI * std::sqrt(p.p_e * p.p_n));
            law.power = 1.0;
            law.base = 1.0;
            return law;
        case DriftClass::PosPos:
            // P(tau > n) converges to A(n0,m0)
            law.constant = absorption_probability(p, s).never_absorbed;
            law.power = 0.0;
            law.base = 1.0;
            return law;
        case DriftClass::ZeroXPosY:
        case DriftClass::PosXZeroY: {
            // absorption happens on one axis at most; the geometric piece is
            // negligible so P(tau >= k) ~ sum_{j >= k} of the k^{-3/2} law
            const AsymptoticLaw slow = (law.regime == DriftClass::ZeroXPosY)
                                           ? t_tail(p, s)
                                           : s_tail(p, s);
            law.constant = 2.0 * slow.constant;
            law.power = 0.5;
            law.base = 1.0;
            return law;
        }
    }
    throw Error(ErrorCode::WrongRegime, "unreachable");
}

AsymptoticLaw site_asymptotics(const WalkParams& p, StartPoint s, Axis axis) {
    if (axis == Axis::Y) {
        AsymptoticLaw law = site_asymptotics(p.swapped(), s.swapped(), Axis::X);
        law.regime = p.drift_class();
        law.quantity = Quantity::SiteY;
        return law;
    }
    AsymptoticLaw law;
    law.regime = p.drift_class();
    law.quantity = Quantity::SiteX;
    if (p.p_n == p.p_s) {
        // M_y = 0: polynomial decay
        law.constant = 4.0 / M_PI * std::sqrt(p.p_e / p.p_n) * s.n0 * s.m0;
        law.power = 3.0;
        law.base = 1.0;
        return law;
    }
    // M_y > 0: algebraic singularity at x3(1) gives i^{-3/2} x3^{-i}
    const BranchPoints bp = branch_points(p, 1.0);
    law.base = 1.0 / bp.x3;
    law.power = 1.5;
    law.constant = std::sqrt(p.p_e * (bp.x3 - bp.x2)) /
                   (2.0 * std::sqrt(M_PI) * std::pow(p.p_n * p.p_s, 0.25)) * s.m0 *
                   std::pow(p.p_s / p.p_n, s.m0 / 2.0) *
                   (std::pow(bp.x3, s.n0) - std::pow(bp.x2, s.n0));
    return law;
}

AsymptoticLaw gamma_set_green(const WalkParams& p, StartPoint s, int a) {
    if (p.drift_class() != DriftClass::ZeroZero)
        throw Error(ErrorCode::WrongRegime, "the gamma-set Green law holds for zero drift");
    if (a < 0) throw Error(ErrorCode::BadInput, "a must be >= 0");
    AsymptoticLaw law;
    law.regime = DriftClass::ZeroZero;
    law.quantity = Quantity::GammaSetGreen;
    // independent of a >= 0
    law.constant = 2.0 * s.n0 * s.m0 / (M_PI * std::sqrt(p.p_e * p.p_n));
    law.power = 1.0;
    law.base = 1.0;
    return law;
}

namespace {

double second_derivative(const std::function<double(double)>& f, double x0, double h) {
    return (f(x0 + h) - 2.0 * f(x0) + f(x0 - h)) / (h * h);
}

GreenAsymptotics green_pospos_interior(const WalkParams& p, StartPoint s, double gamma) {
    GreenAsymptotics g;
    g.regime = DriftClass::PosPos;
    g.gamma = gamma;
    g.interior_ = true;
    const SaddlePoint sp = saddle(p, gamma);
    g.s3 = sp.s3;
    g.t3 = sp.t3;
    const double inv_tan = 1.0 / std::tan(gamma);
    auto F = [&](double x) {
        return std::pow(x, inv_tan) * std::real(eval_y(p, 1, x, 1.0));
    };
    // keep the stencil off the cuts: s3 sits between x2(1) and x3(1) and
    // approaches x3 as gamma -> 0
    const BranchPoints bp = branch_points(p, 1.0);
    const double room = std::min(bp.x3 - sp.s3, sp.s3 - bp.x2);
    const double f2 = second_derivative(F, sp.s3, std::min(1e-5, 0.25 * room));
    const CurveCoeffs cc(p);
    const double a = std::real(cc.a(sp.s3, 1.0));
    const double b = std::real(cc.b(sp.s3, 1.0));
    const DerivedConstants dc = derive(p);
    const double link = (std::pow(sp.t3, s.m0) - std::pow(dc.rt * dc.rt / sp.t3, s.m0)) *
                        (std::pow(sp.s3, s.n0) - std::pow(dc.r * dc.r / sp.s3, s.n0));
    g.constant = std::sqrt(F(sp.s3)) * link /
                 (std::sqrt(2.0 * M_PI) * std::abs(2.0 * a * sp.t3 + b) * std::sqrt(std::abs(f2)));
    return g;
}

GreenAsymptotics green_pospos_boundary(const WalkParams& p, StartPoint s, bool toward_x_axis) {
    if (!toward_x_axis) {
        // the pi/2 law is the same display on the swapped walk, with the
        // roles of i and j exchanged at evaluation time
        GreenAsymptotics g = green_pospos_boundary(p.swapped(), s.swapped(), true);
        g.gamma = M_PI / 2;
        g.axis_swapped_ = true;
        return g;
    }
    GreenAsymptotics g;
    g.regime = DriftClass::PosPos;
    g.gamma = 0.0;
    g.interior_ = false;
    const BranchPoints bp = branch_points(p, 1.0);
    const DerivedConstants dc = derive(p);
    const CurveCoeffs cc(p);
    const double dt = std::real(cc.d_tilde(dc.rt, 1.0));
    const double pref =
        std::sqrt(std::pow(1.0 - 2.0 * std::sqrt(p.p_s * p.p_n), 2) - 4.0 * p.p_w * p.p_e);
    g.bconst_ = pref * s.m0 * std::pow(dc.rt, s.m0 - 1) *
                (std::pow(bp.x3, s.n0) - std::pow(bp.x2, s.n0)) /
                std::sqrt(M_PI * p.p_n * std::sqrt(dt));
    g.bx3_ = bp.x3;
    g.brt_ = dc.rt;
    return g;
}

}  // namespace

double GreenAsymptotics::eval(int i, int j) const {
    if (regime == DriftClass::ZeroZero) {
        const double q = pn_ * i * double(i) + pe_ * j * double(j);
        return 4.0 * std::sqrt(pn_ * pe_) / M_PI * n0m0_ * double(i) * double(j) / (q * q);
    }
    if (interior_)
        return constant * std::pow(s3, -i) * std::pow(t3, -j) / std::sqrt(double(j));
    // boundary form along j/i -> 0; the pi/2 law is the same on swapped axes
    if (axis_swapped_) std::swap(i, j);
    return bconst_ * double(j) / (std::pow(double(i), 1.5) * std::pow(bx3_, i) * std::pow(brt_, j));
}

GreenAsymptotics green_asymptotics_angle(const WalkParams& p, StartPoint s, double gamma) {
    if (!(gamma >= 0.0) || !(gamma <= M_PI / 2))
        throw Error(ErrorCode::OutOfRange, "gamma must lie in [0, pi/2]");
    const DriftClass dc = p.drift_class();
    if (dc == DriftClass::ZeroZero) {
        GreenAsymptotics g;
        g.regime = dc;
        g.gamma = gamma;
        g.pn_ = p.p_n;
        g.pe_ = p.p_e;
        g.n0m0_ = double(s.n0) * double(s.m0);
        return g;
    }
    if (dc != DriftClass::PosPos)
        throw Error(ErrorCode::WrongRegime,
                    "Green asymptotics cover zero drift and both-drifts-positive only");
    if (gamma == 0.0) return green_pospos_boundary(p, s, true);
    if (gamma == M_PI / 2) return green_pospos_boundary(p, s, false);
    return green_pospos_interior(p, s, gamma);
}

GreenAsymptotics green_asymptotics(const WalkParams& p, StartPoint s, int i, int j) {
    if (i < 1 || j < 1) throw Error(ErrorCode::BadInput, "need interior (i,j)");
    return green_asymptotics_angle(p, s, std::atan2(double(j), double(i)));
}

namespace {

double axis_kernel_x(const WalkParams& p, StartPoint s, bool halved_exponent) {
    const BranchPoints bp = branch_points(p, 1.0);
    const double rt = derive(p).rt;
    const double expo = halved_exponent ? (s.m0 / 2.0 - 1.0) : double(s.m0 - 1);
    return s.m0 * std::pow(rt, expo) * (std::pow(bp.x3, s.n0) - std::pow(bp.x2, s.n0)) /
           (bp.x3 - bp.x2);
}

}  // namespace

double martin_kernel(const WalkParams& p, StartPoint s, Direction dir, bool halved_axis_exponent) {
    const DriftClass dc = p.drift_class();
    if (dc == DriftClass::ZeroZero) return double(s.n0) * double(s.m0);
    if (dc != DriftClass::PosPos)
        throw Error(ErrorCode::WrongRegime,
                    "the Martin kernel is available for zero drift and both-drifts-positive");
    switch (dir.kind) {
        case Direction::Kind::AxisX:
            return axis_kernel_x(p, s, halved_axis_exponent);
        case Direction::Kind::AxisY:
            return axis_kernel_x(p.swapped(), s.swapped(), halved_axis_exponent);
        case Direction::Kind::Angle: {
            if (dir.gamma == 0.0) return axis_kernel_x(p, s, halved_axis_exponent);
            if (dir.gamma == M_PI / 2)
                return axis_kernel_x(p.swapped(), s.swapped(), halved_axis_exponent);
            const SaddlePoint sp = saddle(p, dir.gamma);
            const DerivedConstants d = derive(p);
            const double rt2 = d.rt * d.rt, r2 = d.r * d.r;
            const double num = (std::pow(sp.t3, s.m0) - std::pow(rt2 / sp.t3, s.m0)) *
                               (std::pow(sp.s3, s.n0) - std::pow(r2 / sp.s3, s.n0));
            const double den = (sp.t3 - rt2 / sp.t3) * (sp.s3 - r2 / sp.s3);
            return num / den;
        }
    }
    throw Error(ErrorCode::BadInput, "bad direction");
}

double harmonic(const WalkParams& p, StartPoint s) {
    switch (p.drift_class()) {
        case DriftClass::ZeroZero:
            return double(s.n0) * double(s.m0);
        case DriftClass::PosPos:
            return absorption_probability(p, s).never_absorbed;
        default:
            throw Error(ErrorCode::WrongRegime,
                        "no harmonic function is assigned for mixed-drift walks");
    }
}

}  // namespace qwalk
