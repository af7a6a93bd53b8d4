#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "qwalk/walk.hpp"

namespace qwalk {

// ---------------------------------------------------------------------------
// Exact forward evolution of the absorbed walk on a truncated lattice.
// Mass that leaves the grid or is absorbed beyond the site cap is accounted
// in tail quantities, never dropped: results degrade to an interval, not to
// a wrong number.
// ---------------------------------------------------------------------------

/// h[i][n] = P(hit (i,0) at time n) for i <= i_cap, n <= n_cap, plus the
/// swapped table, with everything unrecorded accumulated in tail_mass.
struct AbsorptionTable {
    int i_cap = 0;
    int n_cap = 0;
    std::vector<std::vector<double>> h;       // h[i][n], rows 0..i_cap
    std::vector<std::vector<double>> h_tilde; // h_tilde[j][n]
    double tail_mass = 0.0;  // interior + escaped + absorbed beyond caps at n_cap
    double mass_defect = 0.0;  // |1 - (recorded + tail)|, roundoff diagnostic

    double site_sum_x(int i) const;  // sum_n h[i][n]
    double site_sum_y(int j) const;
};

/// Truncated expected visit counts over a window of interior sites.
struct GreenTable {
    int grid_cap = 0;
    int n_cap = 0;
    std::vector<std::vector<double>> g;  // g[i][j], 1..grid_cap
    double residual_bound = 0.0;         // interior mass at n_cap

    double at(int i, int j) const { return g[i][j]; }
    /// sum over the set {i-1 + a(j-1) = k}
    double gamma_set(int a, int k) const;
};

/// Exact absorption-time distribution pieces, tau = S ^ T.
struct TauTail {
    std::vector<double> p_s;        // P(S = n)
    std::vector<double> p_t;        // P(T = n)
    std::vector<double> p_tau_gt;   // P(tau > n), index n
};

struct McConfig {
    std::uint64_t seed = 1;
    long n_walks = 1;
    int step_cap = 100000;
};

struct McEstimate {
    double estimate = 0.0;
    double stderr_ = 0.0;
};

struct DpOptions {
    /// Hard cap on the interior grid extent per axis; 0 means the
    /// reachability bound start + n_cap (capped at 4096 to keep memory sane).
    int grid_limit = 0;
};

AbsorptionTable dp_absorption(const WalkParams& p, StartPoint s, int i_cap, int n_cap,
                              DpOptions opt = {});
GreenTable dp_green(const WalkParams& p, StartPoint s, int grid_cap, int n_cap,
                    DpOptions opt = {});
TauTail dp_tau(const WalkParams& p, StartPoint s, int n_cap, DpOptions opt = {});

/// Partial sum of h(x,z) = sum h_{i,n} x^i z^n over i <= caps.i, n <= caps.n,
/// with a rigorous bound on everything left out (requires |x| <= 1, |z| <= 1).
struct GenfuncPartial {
    std::complex<double> value;
    double tail_bound;
};
GenfuncPartial dp_genfunc(const WalkParams& p, StartPoint s, std::complex<double> x,
                          std::complex<double> z, int i_cap, int n_cap, DpOptions opt = {});

/// Partial sum of G(x,y,z) = sum P_n(i,j) x^{i-1} y^{j-1} z^n with a
/// drift-aware geometric tail bound (may report infinity when the
/// Lyapunov factor does not contract).
GenfuncPartial dp_green_genfunc(const WalkParams& p, StartPoint s, std::complex<double> x,
                                std::complex<double> y, std::complex<double> z, int n_cap,
                                DpOptions opt = {});

enum class McFunctional { AbsorbSite, SEquals, TEquals, TauGreater, Visits };

struct McQuery {
    McFunctional kind;
    int i = 0;  // site index / time k / time n, depending on kind
    int j = 0;  // second site index for Visits
};

McEstimate mc_estimate(const WalkParams& p, StartPoint s, const McConfig& cfg, McQuery q);

/// 1-D birth-death chain on {0,1,...}: up p_n, down p_s, hold 1-p_n-p_s,
/// started at m0 and absorbed at 0. Returns P(ruin at step k) for k <= n_cap.
std::vector<double> gambler_dp(double p_n, double p_s, int m0, int n_cap);

/// Taylor coefficients (up to z^k_max) of the ruin generating function
/// lambda_{m0}(z) = ((1 - sqrt(1 - 4 p_n p_s z^2))/(2 p_n z))^{m0}.
std::vector<double> lambda_coeffs(double p_n, double p_s, int m0, int k_max);

}  // namespace qwalk
