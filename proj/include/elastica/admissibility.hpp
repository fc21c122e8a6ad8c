#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "elastica/geometry.hpp"
#include "elastica/params.hpp"
#include "elastica/state.hpp"

namespace elastica {

enum class AdmissibilityVerdict { Rejected, Geometric, Analytic };

const char* to_string(AdmissibilityVerdict v);

struct JunctionReport {
  int junction = -1;
  double concurrency_gap = 0.0;        // max pairwise distance of incident ends
  double max_abs_k = 0.0;              // curvature condition residual
  double third_order_residual = 0.0;   // |sum sigma_e (2 k_s nu - mu tau)|
  std::array<double, 3> angles{};      // alpha_1 (tau2,tau3), alpha_2 (tau3,tau1), alpha_3 (tau1,tau2)
  double rho_hat = 0.0;                // max |sin alpha_i|
  bool two_positive_angle = false;     // some pair of tangents at strictly positive angle
  bool normals_span = false;           // {nu^1,nu^2,nu^3} spans R^2
  double det_m = 0.0;                  // Cramer determinant of the tangential system
  double max_abs_gamma_xx = 0.0;       // second-order condition residual (analytic)
};

struct EndpointReport {
  EndRef end{};
  double abs_k = 0.0;
  double abs_gamma_xx = 0.0;
  double position_gap = 0.0;
};

struct AdmissibilityReport {
  AdmissibilityVerdict verdict = AdmissibilityVerdict::Rejected;
  std::vector<JunctionReport> junctions;
  std::vector<EndpointReport> endpoints;
  std::vector<std::string> reasons;    // populated when a condition fails
  bool geometric() const { return verdict != AdmissibilityVerdict::Rejected; }
  bool analytic() const { return verdict == AdmissibilityVerdict::Analytic; }
};

/// Checks the junction/endpoint conditions of the flow: concurrency, zero
/// curvature at junctions and fixed endpoints, the third-order junction
/// condition, and junction non-degeneracy. The verdict is upgraded to Analytic
/// when boundary second derivatives also vanish within tolerance.
AdmissibilityReport check_geometric(const NetworkState& state, double mu,
                                    const Tolerances& tol = {});

/// Boundary-calibrated reparametrization map of [0,1].
///
/// theta(0)=0, theta(1)=1, theta_x(0)=theta_x(1)=1, theta_xx(0)=a,
/// theta_xx(1)=b, theta_x >= 1/4. A quintic candidate is used when its slope
/// stays above 1/4; otherwise a piecewise-Taylor construction (quadratic
/// matching at the ends, linear middle, numerically mollified joints) is used.
struct ThetaMap {
  std::function<double(double)> eval;
  bool used_fallback = false;
  double min_slope = 0.0;              // measured on a fine grid
  double max_constraint_residual = 0.0;
};

ThetaMap build_theta(double a, double b);

/// Zeroes the discrete third-order residual at every junction by a
/// minimum-norm normal correction of one interior node per incident curve
/// (exact in one pass; junction position, tangents and curvature unchanged).
/// Used during calibration and as a cheap projection after implicit steps,
/// whose junction rows freeze coefficients at the previous state and so
/// drift by O(dt) per step.
void calibrate_third_order(NetworkState& state, double mu);

/// Reparametrizes every curve by theta maps chosen so boundary second
/// derivatives vanish, cancels the residual discrete second difference at the
/// ends with an O(h^2)-size node correction, then zeroes the discrete
/// third-order junction residual with a minimum-norm normal correction of one
/// interior node per incident curve. The curve as a point set is preserved to
/// O(h^2); junction and endpoint nodes are unmoved. Output satisfies the same
/// boundary conditions the implicit step enforces, so the flow starts clean.
/// Requires check_geometric verdict Geometric (or better).
NetworkState make_admissible(const NetworkState& state, double mu,
                             const Tolerances& tol = {});

/// Resamples every curve at uniform arclength (|gamma_x| constant per curve).
/// Node 0 / node n and shared junction nodes are unmoved.
NetworkState reparametrize_constant_speed(const NetworkState& state);

/// Tangential velocities at a triple junction from the concurrency-derivative
/// system, solved by Cramer's rule.
///
///   -<tau^1,tau^2> T^1 + T^2                      = <nu^1,tau^2> A^1
///                  -<tau^2,tau^3> T^2 + T^3       = <nu^2,tau^3> A^2
///   T^1                  - <tau^3,tau^1> T^3      = <nu^3,tau^1> A^3
///
/// det M = 1 - <tau^1,tau^2><tau^2,tau^3><tau^3,tau^1> >= 1 - sqrt(1 - rho^2)
/// with rho = max |sin(angle between tangent pairs)|. Throws DegenerateJunction
/// when det M < det_m_min.
struct JunctionTangentialSolve {
  std::array<double, 3> T{};
  double det_m = 0.0;
};

JunctionTangentialSolve junction_tangential_solve(const std::array<Vec2, 3>& tau,
                                                  const std::array<Vec2, 3>& nu,
                                                  const std::array<double, 3>& A,
                                                  double det_m_min = 1e-6);

}  // namespace elastica
