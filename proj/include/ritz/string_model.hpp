#pragma once

#include <vector>

#include "ritz/errors.hpp"
#include "ritz/types.hpp"

namespace ritz {

/// The inhomogeneous string on [0,2] with Dirichlet ends: stiffness 1 on
/// [0,1] and 1+eta^2 on (1,2].
struct StringSpec {
  double eta = 1.0;

  double stiffness_right() const { return 1.0 + eta * eta; }
  double coefficient(double x) const { return x > 1.0 ? stiffness_right() : 1.0; }
};

/// Which secular equation to solve. Transmission is the form implied by
/// continuity of the value and of the flux p u' at x = 1,
///   cot(sqrt(lambda)) + sqrt(1+eta^2) cot(sqrt(lambda/(1+eta^2))) = 0;
/// SwappedCoefficient puts the sqrt(1+eta^2) factor on the other cotangent
/// and is kept only so reports can show the roots it would produce.
enum class SecularForm { Transmission, SwappedCoefficient };

struct StringEig {
  int index = 0;        // k >= 1
  double lambda = 0.0;  // k-th eigenvalue
  double waveLeft = 0.0;        // sqrt(lambda)
  double waveRight = 0.0;       // sqrt(lambda/(1+eta^2))
  double rightAmplitude = 0.0;  // sin(waveLeft)/sin(waveRight)
  double norm = 0.0;            // L2 norm of the unnormalized eigenfunction
  double secularResidual = 0.0;
  double transmissionResidual = 0.0;  // relative flux mismatch at x = 1
};

/// k-th root of the secular equation, bracketed between consecutive poles of
/// the two cotangents and bisected to machine precision.
StringEig secular_solve(const StringSpec& spec, int k,
                        double secularTol = 1e-12,
                        SecularForm form = SecularForm::Transmission);

/// Normalized eigenfunction value at x in [0, 2].
double string_eigenfunction(const StringSpec& spec, const StringEig& eig,
                            double x);

/// Test function u_n: sqrt(2) sin(n pi x) on [0,1], zero on (1,2].
double test_function(int n, double x);

/// h_eta(u_n, u_n) = n^2 pi^2, independent of eta.
double test_function_ritz_value(int n);

/// (u_n, H^-1 u_n) via the closed-form two-interval solve of
/// -(p w')' = u_n integrated by composite Gauss-Legendre.
double green_quadratic_form(const StringSpec& spec, int n,
                            double quadTol = 1e-10);

/// 1/(n^2 pi^2) + 2/((2+eta^2) n^2 pi^2).
double green_quadratic_form_closed(const StringSpec& spec, int n);

/// Finite-difference evaluation of (u_n, H^-1 u_n): tridiagonal solve plus
/// Richardson extrapolation over meshes m and m/2.
double green_form_fd(const StringSpec& spec, int n, int meshSize);

/// Residual measure sin(Theta) for the test function u_n, computed through
/// the quadrature route sqrt((G - 1/(n^2 pi^2))/G).
double sin_theta_string(const StringSpec& spec, int n, double quadTol = 1e-10);

/// Closed form sin^2(Theta) = 2/(4+eta^2).
double sin_theta_squared_closed(double eta);

struct StringEigvecError {
  double actual = 0.0;  // ||v_1 - u_1|| by quadrature, sign-aligned
  double bound = 0.0;   // pi sqrt(l2)/(l2-pi^2) * 2/sqrt(4+eta^2-sqrt(8+2eta^2))
};

/// First-eigenvector error against u_1 and its certified bound; requires
/// eta >= 2.
StringEigvecError string_eigvec_error(const StringSpec& spec,
                                      double quadTol = 1e-10,
                                      double secularTol = 1e-12);

/// Independent verification of secular_solve: second-order finite
/// differences with harmonic-mean coefficients, Sturm-sequence bisection for
/// the lowest eigenvalues, Richardson extrapolation over meshes m and m/2.
std::vector<double> fd_oracle(const StringSpec& spec, int meshSize, int count);

}  // namespace ritz
