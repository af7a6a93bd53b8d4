#pragma once

#include <stdexcept>
#include <string>

namespace qwalk {

/// Error kinds raised by the library. Each validation error names the
/// hypothesis it violates so callers can report precisely.
enum class ErrorCode {
    NonPositiveProbability,  // H2''
    SumNotOne,               // H2'
    NegativeDrift,           // H4
    OutOfRange,
    OnCut,
    OnCircle,
    PoleAtZero,
    WrongRegime,
    CapTooSmall,
    SeriesDepthExceeded,
    DomainViolation,
    QuadratureFailure,
    PoleNearContour,
    NonFiniteIntegrand,
    BadInput,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

/// Sign pattern of the mean drift (M_x, M_y). Ties are classified as zero
/// drift by exact comparison of the inputs; every regime-specific formula
/// downstream assumes exactly that convention.
enum class DriftClass {
    ZeroZero,   // M_x = 0, M_y = 0
    PosPos,     // M_x > 0, M_y > 0
    ZeroXPosY,  // M_x = 0, M_y > 0
    PosXZeroY,  // M_x > 0, M_y = 0
};

const char* to_string(DriftClass c);

/// One-step transition probabilities of the interior walk. The four
/// probabilities must be strictly positive, sum to one (within 1e-12) and
/// have non-negative drifts; validate() enforces all three and the inputs
/// are never renormalized.
struct WalkParams {
    double p_e;  // step +x
    double p_w;  // step -x
    double p_n;  // step +y
    double p_s;  // step -y

    double drift_x() const { return p_e - p_w; }
    double drift_y() const { return p_n - p_s; }
    DriftClass drift_class() const;

    /// Parameter swap (p_e<->p_n, p_w<->p_s) that maps every x-axis
    /// statement to the matching y-axis statement.
    WalkParams swapped() const { return WalkParams{p_n, p_s, p_e, p_w}; }
};

/// Interior starting point.
struct StartPoint {
    int n0;
    int m0;
    StartPoint swapped() const { return StartPoint{m0, n0}; }
};

/// Constants derived from the transition probabilities:
///   r  = sqrt(p_w/p_e), rt = sqrt(p_s/p_n)  (radii of the boundary circles),
///   z1 = 1/(2 sqrt(p_e p_w) + 2 sqrt(p_n p_s))  (first branch-point collision).
/// r, rt <= 1 under H4 and z1 >= 1, with z1 = 1 iff both drifts vanish.
struct DerivedConstants {
    double r;
    double rt;
    double z1;
};

WalkParams validate(double p_e, double p_w, double p_n, double p_s);
StartPoint validate_start(int n0, int m0);
DerivedConstants derive(const WalkParams& p);

/// key=value config file ('#' starts a comment). Recognized keys:
/// p_e, p_w, p_n, p_s, n0, m0. Unknown keys are an error.
struct Config {
    double p_e = -1, p_w = -1, p_n = -1, p_s = -1;
    int n0 = 1, m0 = 1;
    bool has_start = false;
};
Config load_config(const std::string& path);

}  // namespace qwalk
