#include "qwalk/quadrature.hpp"

#include <cmath>

namespace qwalk {

QuadratureResult gauss_chebyshev_u(const std::function<Complex(double)>& f, int n_nodes) {
    if (n_nodes < 2) throw Error(ErrorCode::BadInput, "need at least 2 nodes");
    Complex acc = 0.0;
    const double h = M_PI / (n_nodes + 1);
    for (int k = 1; k <= n_nodes; ++k) {
        const double s = std::sin(k * h);
        const Complex v = f(std::cos(k * h));
        if (!std::isfinite(std::real(v)) || !std::isfinite(std::imag(v)))
            throw Error(ErrorCode::NonFiniteIntegrand,
                        "integrand is not finite at node u = " + std::to_string(std::cos(k * h)));
        acc += h * s * s * v;
    }
    QuadratureResult r;
    r.value = acc;
    r.node_count = n_nodes;
    return r;
}

QuadratureResult gauss_chebyshev_u_adaptive(const std::function<Complex(double)>& f, double tol,
                                            int n_start, int n_cap) {
    QuadratureResult prev = gauss_chebyshev_u(f, n_start);
    for (int n = 2 * n_start; n <= n_cap; n *= 2) {
        QuadratureResult cur = gauss_chebyshev_u(f, n);
        cur.error_estimate = std::abs(cur.value - prev.value);
        if (cur.error_estimate < tol) return cur;
        prev = cur;
    }
    // cap reached: report the last estimate honestly
    return prev;
}

QuadratureResult cut_integral(const WalkParams& p, double z, Cut cut,
                              const std::function<Complex(double)>& smooth, double tol,
                              int n_start, int n_cap, std::optional<Complex> pole) {
    const double sq = std::sqrt(p.p_n * p.p_s);
    const TPair at_lo = t_pm(p, -1.0, z), at_hi = t_pm(p, 1.0, z);
    {
        const double width =
            (cut == Cut::X3X4) ? at_hi.t2 - at_lo.t2 : at_lo.t1 - at_hi.t1;
        if (width <= 1e-15) return QuadratureResult{0.0, 0, 0.0};
    }
    if (pole) {
        const double lo = (cut == Cut::X3X4) ? at_lo.t2 : at_hi.t1;
        const double hi = (cut == Cut::X3X4) ? at_hi.t2 : at_lo.t1;
        const double re = std::real(*pole);
        const double dist = (re < lo)   ? std::abs(*pole - Complex(lo, 0))
                            : (re > hi) ? std::abs(*pole - Complex(hi, 0))
                                        : std::abs(std::imag(*pole));
        if (dist < 1e-9)
            throw Error(ErrorCode::PoleNearContour,
                        "kernel pole within 1e-9 of the integration cut");
    }
    auto f = [&](double u) -> Complex {
        const TPair tp = t_pm(p, u, z);
        if (cut == Cut::X3X4) {
            return smooth(tp.t2) * (2.0 * z * sq * tp.t2) * dt2_du(p, u, z);
        }
        // [x1,x2]: u runs 1 -> -1 along the cut, so the sign of dt1/du flips
        return smooth(tp.t1) * (2.0 * z * sq * tp.t1) * (-dt1_du(p, u, z));
    };
    return gauss_chebyshev_u_adaptive(f, tol, n_start, n_cap);
}

}  // namespace qwalk
