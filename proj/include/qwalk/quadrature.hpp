#pragma once

#include <functional>
#include <optional>

#include "qwalk/curve.hpp"

namespace qwalk {

struct QuadratureResult {
    Complex value;
    int node_count = 0;
    double error_estimate = 0.0;  // |I_n - I_{n/2}|
};

/// Gauss rule for the weight sqrt(1-u^2) on (-1,1):
///   nodes u_k = cos(k pi/(n+1)), weights w_k = pi/(n+1) sin^2(k pi/(n+1)).
/// Exact for polynomial f of degree <= 2n-1.
QuadratureResult gauss_chebyshev_u(const std::function<Complex(double)>& f, int n_nodes);

/// Same rule driven adaptively: nodes double from n_start until the
/// successive difference drops below tol or the cap is reached.
QuadratureResult gauss_chebyshev_u_adaptive(const std::function<Complex(double)>& f,
                                            double tol = 1e-11, int n_start = 96,
                                            int n_cap = 1536);

enum class Cut { X1X2, X3X4 };

/// Integral over a cut of smooth(t) * sqrt(-d(t,z)) dt, computed through the
/// substitution t = t_pm(u,z), which turns it into the Gauss-Chebyshev form:
/// sqrt(-d) = 2 z sqrt(p_n p_s) t sqrt(1-u^2) on the cut. When the smooth
/// factor embeds a 1/(t - x) kernel, pass x as `pole`: poles within 1e-9 of
/// the cut are rejected (PoleNearContour).
QuadratureResult cut_integral(const WalkParams& p, double z, Cut cut,
                              const std::function<Complex(double)>& smooth,
                              double tol = 1e-11, int n_start = 96, int n_cap = 1536,
                              std::optional<Complex> pole = {});

}  // namespace qwalk
