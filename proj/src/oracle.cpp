#include "qwalk/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qwalk {

namespace {

// Dense two-plane stepper over the interior grid 1..W x 1..H with zero guard
// bands. Per-step absorption rows are streamed to the caller, so memory stays
// O(grid) regardless of n_cap.
class Stepper {
  public:
    Stepper(const WalkParams& p, StartPoint s, int n_cap, DpOptions opt) : p_(p) {
        int limit = opt.grid_limit > 0 ? opt.grid_limit : std::max(s.n0, s.m0) + n_cap;
        limit = std::min(limit, 4096);
        W_ = std::min(s.n0 + n_cap, limit);
        H_ = std::min(s.m0 + n_cap, limit);
        if (s.n0 > W_ || s.m0 > H_)
            throw Error(ErrorCode::CapTooSmall, "grid cannot hold the start point");
        stride_ = H_ + 2;
        cur_.assign(std::size_t(W_ + 2) * stride_, 0.0);
        nxt_.assign(cur_.size(), 0.0);
        at(cur_, s.n0, s.m0) = 1.0;
    }

    int width() const { return W_; }
    int height() const { return H_; }

    // Advance one step. south[i] (i=1..W) receives the mass absorbed at (i,0)
    // this step when non-null; likewise west[j] for (0,j).
    void step(double* south, double* west) {
        const double pe = p_.p_e, pw = p_.p_w, pn = p_.p_n, ps = p_.p_s;
        // mass pushed past the grid edge this step
        long double esc = 0.0L;
        for (int j = 1; j <= H_; ++j) esc += pe * at(cur_, W_, j);
        for (int i = 1; i <= W_; ++i) esc += pn * at(cur_, i, H_);
        escaped_ += esc;

        long double s_tot = 0.0L, w_tot = 0.0L;
        for (int i = 1; i <= W_; ++i) {
            const double a = ps * at(cur_, i, 1);
            if (south) south[i] = a;
            s_tot += a;
        }
        for (int j = 1; j <= H_; ++j) {
            const double a = pw * at(cur_, 1, j);
            if (west) west[j] = a;
            w_tot += a;
        }
        absorbed_x_ += s_tot;
        absorbed_y_ += w_tot;
        step_south_ = double(s_tot);
        step_west_ = double(w_tot);

        for (int i = 1; i <= W_; ++i) {
            const double* up = &cur_[std::size_t(i - 1) * stride_];
            const double* dn = &cur_[std::size_t(i + 1) * stride_];
            const double* md = &cur_[std::size_t(i) * stride_];
            double* out = &nxt_[std::size_t(i) * stride_];
            for (int j = 1; j <= H_; ++j)
                out[j] = pe * up[j] + pw * dn[j] + pn * md[j - 1] + ps * md[j + 1];
        }
        std::swap(cur_, nxt_);
    }

    double interior_mass() const {
        long double m = 0.0L;
        for (int i = 1; i <= W_; ++i) {
            const double* row = &cur_[std::size_t(i) * stride_];
            for (int j = 1; j <= H_; ++j) m += row[j];
        }
        return double(m);
    }

    double cell(int i, int j) const { return at(cur_, i, j); }
    double escaped() const { return double(escaped_); }
    double absorbed_x() const { return double(absorbed_x_); }
    double absorbed_y() const { return double(absorbed_y_); }
    double step_south() const { return step_south_; }
    double step_west() const { return step_west_; }

  private:
    double& at(std::vector<double>& v, int i, int j) { return v[std::size_t(i) * stride_ + j]; }
    double at(const std::vector<double>& v, int i, int j) const {
        return v[std::size_t(i) * stride_ + j];
    }

    WalkParams p_;
    int W_, H_, stride_;
    std::vector<double> cur_, nxt_;
    long double escaped_ = 0.0L;
    long double absorbed_x_ = 0.0L, absorbed_y_ = 0.0L;
    double step_south_ = 0.0, step_west_ = 0.0;
};

}  // namespace

double AbsorptionTable::site_sum_x(int i) const {
    long double acc = 0.0L;
    for (double v : h[i]) acc += v;
    return double(acc);
}

double AbsorptionTable::site_sum_y(int j) const {
    long double acc = 0.0L;
    for (double v : h_tilde[j]) acc += v;
    return double(acc);
}

AbsorptionTable dp_absorption(const WalkParams& p, StartPoint s, int i_cap, int n_cap,
                              DpOptions opt) {
    if (i_cap < 1 || n_cap < 1) throw Error(ErrorCode::CapTooSmall, "caps must be >= 1");
    Stepper st(p, s, n_cap, opt);
    if (i_cap > std::max(st.width(), st.height()))
        throw Error(ErrorCode::CapTooSmall, "site cap exceeds the interior grid extent");

    AbsorptionTable t;
    t.i_cap = i_cap;
    t.n_cap = n_cap;
    t.h.assign(i_cap + 1, std::vector<double>(n_cap + 1, 0.0));
    t.h_tilde.assign(i_cap + 1, std::vector<double>(n_cap + 1, 0.0));

    std::vector<double> south(st.width() + 1), west(st.height() + 1);
    long double beyond_cap = 0.0L;  // absorbed at sites > i_cap
    long double recorded = 0.0L;
    for (int n = 1; n <= n_cap; ++n) {
        st.step(south.data(), west.data());
        for (int i = 1; i <= st.width(); ++i) {
            if (i <= i_cap) {
                t.h[i][n] = south[i];
                recorded += south[i];
            } else {
                beyond_cap += south[i];
            }
        }
        for (int j = 1; j <= st.height(); ++j) {
            if (j <= i_cap) {
                t.h_tilde[j][n] = west[j];
                recorded += west[j];
            } else {
                beyond_cap += west[j];
            }
        }
    }
    t.tail_mass = st.interior_mass() + st.escaped() + double(beyond_cap);
    t.mass_defect = std::abs(1.0 - (double(recorded) + t.tail_mass));
    return t;
}

GreenTable dp_green(const WalkParams& p, StartPoint s, int grid_cap, int n_cap, DpOptions opt) {
    if (grid_cap < 1 || n_cap < 1) throw Error(ErrorCode::CapTooSmall, "caps must be >= 1");
    Stepper st(p, s, n_cap, opt);
    const int gc = std::min(grid_cap, std::min(st.width(), st.height()));
    if (gc < grid_cap)
        throw Error(ErrorCode::CapTooSmall, "green window exceeds the interior grid extent");

    GreenTable g;
    g.grid_cap = grid_cap;
    g.n_cap = n_cap;
    g.g.assign(grid_cap + 1, std::vector<double>(grid_cap + 1, 0.0));
    auto accumulate = [&] {
        for (int i = 1; i <= grid_cap; ++i)
            for (int j = 1; j <= grid_cap; ++j) g.g[i][j] += st.cell(i, j);
    };
    accumulate();  // time-0 visit
    for (int n = 1; n <= n_cap; ++n) {
        st.step(nullptr, nullptr);
        accumulate();
    }
    g.residual_bound = st.interior_mass() + st.escaped();
    return g;
}

double GreenTable::gamma_set(int a, int k) const {
    if (a < 0 || k < 0) throw Error(ErrorCode::BadInput, "gamma_set needs a, k >= 0");
    long double acc = 0.0L;
    for (int i = 1; i <= grid_cap; ++i) {
        if (a == 0) {
            if (i - 1 == k)
                for (int j = 1; j <= grid_cap; ++j) acc += g[i][j];
            continue;
        }
        const int rem = k - (i - 1);
        if (rem < 0 || rem % a != 0) continue;
        const int j = rem / a + 1;
        if (j >= 1 && j <= grid_cap) acc += g[i][j];
    }
    return double(acc);
}

TauTail dp_tau(const WalkParams& p, StartPoint s, int n_cap, DpOptions opt) {
    if (n_cap < 1) throw Error(ErrorCode::CapTooSmall, "n_cap must be >= 1");
    Stepper st(p, s, n_cap, opt);
    TauTail t;
    t.p_s.assign(n_cap + 1, 0.0);
    t.p_t.assign(n_cap + 1, 0.0);
    t.p_tau_gt.assign(n_cap + 1, 0.0);
    t.p_tau_gt[0] = 1.0;
    long double alive = 1.0L;
    for (int n = 1; n <= n_cap; ++n) {
        st.step(nullptr, nullptr);
        t.p_s[n] = st.step_south();
        t.p_t[n] = st.step_west();
        alive -= st.step_south();
        alive -= st.step_west();
        t.p_tau_gt[n] = double(alive);
    }
    return t;
}

GenfuncPartial dp_genfunc(const WalkParams& p, StartPoint s, std::complex<double> x,
                          std::complex<double> z, int i_cap, int n_cap, DpOptions opt) {
    if (std::abs(x) > 1.0 + 1e-15 || std::abs(z) > 1.0 + 1e-15)
        throw Error(ErrorCode::OutOfRange, "dp_genfunc needs |x| <= 1 and |z| <= 1");
    Stepper st(p, s, n_cap, opt);
    std::vector<double> south(st.width() + 1);
    std::complex<double> acc = 0.0;
    std::complex<double> zn = 1.0;
    const double ax = std::abs(x);
    // powers of x up to the recording cap
    const int icap = std::min(i_cap, st.width());
    std::vector<std::complex<double>> xp(icap + 1);
    xp[0] = 1.0;
    for (int i = 1; i <= icap; ++i) xp[i] = xp[i - 1] * x;

    long double beyond = 0.0L;
    for (int n = 1; n <= n_cap; ++n) {
        st.step(south.data(), nullptr);
        zn *= z;
        std::complex<double> row = 0.0;
        for (int i = 1; i <= st.width(); ++i) {
            if (i <= icap) row += south[i] * xp[i];
            else beyond += south[i];
        }
        acc += row * zn;
    }
    GenfuncPartial out;
    out.value = acc;
    const double remaining = st.interior_mass() + st.escaped();
    // every missing absorption term carries at least z^{n_cap+1} or x^{icap+1}
    out.tail_bound = remaining * std::pow(std::abs(z), n_cap + 1) +
                     double(beyond) * std::pow(ax, icap + 1) + 16 * 1e-16;
    return out;
}

GenfuncPartial dp_green_genfunc(const WalkParams& p, StartPoint s, std::complex<double> x,
                                std::complex<double> y, std::complex<double> z, int n_cap,
                                DpOptions opt) {
    const double ax = std::abs(x), ay = std::abs(y), az = std::abs(z);
    if (ax >= 1.0 || ay >= 1.0 || az > 1.0 + 1e-15)
        throw Error(ErrorCode::OutOfRange, "dp_green_genfunc needs |x|,|y| < 1 and |z| <= 1");
    Stepper st(p, s, n_cap, opt);
    const int W = st.width(), H = st.height();
    std::vector<std::complex<double>> xp(W + 1), yp(H + 1);
    xp[0] = 1.0;
    for (int i = 1; i <= W; ++i) xp[i] = xp[i - 1] * x;
    yp[0] = 1.0;
    for (int j = 1; j <= H; ++j) yp[j] = yp[j - 1] * y;

    auto plane_sum = [&]() {
        std::complex<double> acc = 0.0;
        for (int i = 1; i <= W; ++i) {
            std::complex<double> row = 0.0;
            for (int j = 1; j <= H; ++j) row += st.cell(i, j) * yp[j - 1];
            acc += row * xp[i - 1];
        }
        return acc;
    };

    std::complex<double> acc = plane_sum();
    std::complex<double> zn = 1.0;
    for (int n = 1; n <= n_cap; ++n) {
        st.step(nullptr, nullptr);
        zn *= z;
        acc += plane_sum() * zn;
    }

    GenfuncPartial out;
    out.value = acc;
    // Lyapunov bound: with w* = min(1, sqrt((p_w+p_s)/(p_e+p_n))) and
    // phi = (p_e+p_n) w* + (p_w+p_s)/w*, E[w*^{X+Y} 1(tau>n)] <= w*^{n0+m0} phi^n.
    // Each missing term is bounded by that sum times max(|x|,|y|)/w* powers <= 1.
    const double wstar = std::min(1.0, std::sqrt((p.p_w + p.p_s) / (p.p_e + p.p_n)));
    const double w = std::max(ax, ay);
    if (w > wstar) {
        out.tail_bound = std::numeric_limits<double>::infinity();
        return out;
    }
    const double phi = (p.p_e + p.p_n) * wstar + (p.p_w + p.p_s) / wstar;
    const double rho = phi * az;
    if (rho >= 1.0) {
        out.tail_bound = std::numeric_limits<double>::infinity();
        return out;
    }
    const double c0 = std::pow(wstar, s.n0 + s.m0 - 2);
    out.tail_bound = c0 * std::pow(rho, n_cap + 1) / (1.0 - rho);
    return out;
}

namespace {

// SplitMix64: one independent, platform-stable stream per (seed, walk index).
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t s) : state(s) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    double uniform() { return double(next() >> 11) * 0x1.0p-53; }
};

}  // namespace

McEstimate mc_estimate(const WalkParams& p, StartPoint s, const McConfig& cfg, McQuery q) {
    if (cfg.n_walks < 1) throw Error(ErrorCode::BadInput, "n_walks must be >= 1");
    const double c1 = p.p_e, c2 = c1 + p.p_w, c3 = c2 + p.p_n;
    long double sum = 0.0L, sumsq = 0.0L;
    for (long w = 0; w < cfg.n_walks; ++w) {
        SplitMix64 rng(cfg.seed * 0x9E3779B97F4A7C15ull + std::uint64_t(w) + 1);
        long x = s.n0, y = s.m0;
        int n = 0;
        int absorbed_axis = 0;  // 0 = none, 1 = x-axis, 2 = y-axis
        long site = -1;
        double visits = 0.0;
        if (q.kind == McFunctional::Visits && x == q.i && y == q.j) visits += 1.0;
        while (n < cfg.step_cap) {
            const double u = rng.uniform();
            if (u < c1) ++x;
            else if (u < c2) --x;
            else if (u < c3) ++y;
            else --y;
            ++n;
            if (y == 0) { absorbed_axis = 1; site = x; break; }
            if (x == 0) { absorbed_axis = 2; site = y; break; }
            if (q.kind == McFunctional::Visits && x == q.i && y == q.j) visits += 1.0;
        }
        double val = 0.0;
        switch (q.kind) {
            case McFunctional::AbsorbSite:
                val = (absorbed_axis == 1 && site == q.i) ? 1.0 : 0.0;
                break;
            case McFunctional::SEquals:
                val = (absorbed_axis == 1 && n == q.i) ? 1.0 : 0.0;
                break;
            case McFunctional::TEquals:
                val = (absorbed_axis == 2 && n == q.i) ? 1.0 : 0.0;
                break;
            case McFunctional::TauGreater:
                val = (absorbed_axis == 0 || n > q.i) ? 1.0 : 0.0;
                break;
            case McFunctional::Visits:
                val = visits;
                break;
        }
        sum += val;
        sumsq += val * val;
    }
    McEstimate e;
    const double nmean = double(sum) / double(cfg.n_walks);
    e.estimate = nmean;
    if (cfg.n_walks > 1) {
        const double var =
            (double(sumsq) - double(cfg.n_walks) * nmean * nmean) / double(cfg.n_walks - 1);
        e.stderr_ = std::sqrt(std::max(var, 0.0) / double(cfg.n_walks));
    }
    return e;
}

std::vector<double> gambler_dp(double p_n, double p_s, int m0, int n_cap) {
    if (p_n <= 0 || p_s <= 0 || p_n + p_s > 1.0 + 1e-12)
        throw Error(ErrorCode::BadInput, "need p_n, p_s > 0 with p_n + p_s <= 1");
    if (m0 < 1 || n_cap < 1) throw Error(ErrorCode::BadInput, "need m0, n_cap >= 1");
    const double hold = std::max(1.0 - p_n - p_s, 0.0);
    const int L = m0 + n_cap + 1;
    std::vector<double> cur(L + 2, 0.0), nxt(L + 2, 0.0);
    cur[m0] = 1.0;
    std::vector<double> ruin(n_cap + 1, 0.0);
    for (int n = 1; n <= n_cap; ++n) {
        for (int k = 1; k <= L; ++k)
            nxt[k] = p_n * cur[k - 1] + p_s * cur[k + 1] + hold * cur[k];
        // k = 0 is absorbing: only the down-step from 1 can land there
        ruin[n] = p_s * cur[1];
        nxt[0] = 0.0;
        std::swap(cur, nxt);
    }
    return ruin;
}

std::vector<double> lambda_coeffs(double p_n, double p_s, int m0, int k_max) {
    const int nt = k_max + 1;
    // series of sqrt(1 - c z^2), c = 4 p_n p_s, via the binomial expansion
    const double c = 4.0 * p_n * p_s;
    std::vector<double> root(nt, 0.0);
    double binom = 1.0;  // C(1/2, k)
    for (int k = 0; 2 * k < nt; ++k) {
        if (k > 0) binom *= (0.5 - double(k - 1)) / double(k);
        root[2 * k] = binom * std::pow(-c, k);
    }
    // lambda_1 = (1 - root)/(2 p_n z): numerator has no constant term
    // numerator 1 - root has no constant term (root[0] = 1 exactly)
    std::vector<double> lam1(nt, 0.0);
    for (int k = 1; k < nt; ++k) lam1[k - 1] = -root[k] / (2.0 * p_n);
    std::vector<double> acc(nt, 0.0);
    acc[0] = 1.0;
    for (int j = 0; j < m0; ++j) {
        std::vector<double> out(nt, 0.0);
        for (int a = 0; a < nt; ++a) {
            if (acc[a] == 0.0) continue;
            for (int b = 0; a + b < nt; ++b) out[a + b] += acc[a] * lam1[b];
        }
        acc = out;
    }
    return acc;
}

}  // namespace qwalk
