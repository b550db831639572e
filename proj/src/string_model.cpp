#include "ritz/string_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ritz/quadrature.hpp"

namespace ritz {

namespace {

constexpr double kPi = std::numbers::pi;

double cot(double x) { return std::cos(x) / std::sin(x); }

double secular_value(const StringSpec& spec, double lambda, SecularForm form) {
  const double root = std::sqrt(spec.stiffness_right());
  const double kl = std::sqrt(lambda);
  const double kr = kl / root;
  if (form == SecularForm::Transmission) return cot(kl) + root * cot(kr);
  return root * cot(kl) + cot(kr);
}

// Poles of the two cotangents: lambda = (m pi)^2 and (m pi)^2 (1+eta^2),
// merged ascending with near-coincident values deduplicated.
std::vector<double> secular_poles(const StringSpec& spec, int count) {
  std::vector<double> poles;
  int ml = 1, mr = 1;
  const double p = spec.stiffness_right();
  while (static_cast<int>(poles.size()) < count) {
    const double left = (ml * kPi) * (ml * kPi);
    const double right = (mr * kPi) * (mr * kPi) * p;
    double next;
    if (left <= right) {
      next = left;
      ++ml;
      if (right <= left * (1.0 + 1e-12)) ++mr;
    } else {
      next = right;
      ++mr;
    }
    poles.push_back(next);
  }
  return poles;
}

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
};

// The secular function decreases from +inf to -inf between consecutive
// poles, so each gap carries exactly one root.
Bracket bracket_for_root(const StringSpec& spec, int k, SecularForm form) {
  const int window = 2 * k + 64;
  const std::vector<double> poles = secular_poles(spec, window);
  int found = 0;
  double lo = 0.0;
  for (double hi : poles) {
    double a = lo + (hi - lo) * 1e-3;
    double b = hi - (hi - lo) * 1e-3;
    for (int shrink = 0; shrink < 12 && secular_value(spec, a, form) <= 0.0;
         ++shrink)
      a = lo + (a - lo) * 0.25;
    for (int shrink = 0; shrink < 12 && secular_value(spec, b, form) >= 0.0;
         ++shrink)
      b = hi - (hi - b) * 0.25;
    if (secular_value(spec, a, form) > 0.0 && secular_value(spec, b, form) < 0.0) {
      ++found;
      if (found == k) return {a, b};
    }
    lo = hi;
  }
  throw Error(ErrorCode::BracketFailure,
              "secular_solve: pole scan exhausted the search window");
}

}  // namespace

StringEig secular_solve(const StringSpec& spec, int k, double secularTol,
                        SecularForm form) {
  if (!(spec.eta > 0.0))
    throw Error(ErrorCode::InvalidInput, "secular_solve: eta must be > 0");
  if (k < 1) throw Error(ErrorCode::InvalidInput, "secular_solve: k >= 1");

  Bracket br = bracket_for_root(spec, k, form);
  double lo = br.lo, hi = br.hi;
  const double tol = std::min(secularTol, 1e-12);
  for (int iter = 0; iter < 300; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double value = secular_value(spec, mid, form);
    if (value > 0.0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= tol * hi) {
      // polish the remaining digits; the interval is already tiny
      for (int extra = 0; extra < 60 && hi - lo > 4e-16 * hi; ++extra) {
        const double m2 = 0.5 * (lo + hi);
        if (secular_value(spec, m2, form) > 0.0)
          lo = m2;
        else
          hi = m2;
      }
      break;
    }
  }

  StringEig eig;
  eig.index = k;
  eig.lambda = 0.5 * (lo + hi);
  eig.waveLeft = std::sqrt(eig.lambda);
  eig.waveRight = eig.waveLeft / std::sqrt(spec.stiffness_right());
  eig.rightAmplitude = std::sin(eig.waveLeft) / std::sin(eig.waveRight);
  const double kl = eig.waveLeft;
  const double kr = eig.waveRight;
  const double b = eig.rightAmplitude;
  const double normSq = (0.5 - std::sin(2.0 * kl) / (4.0 * kl)) +
                        b * b * (0.5 - std::sin(2.0 * kr) / (4.0 * kr));
  eig.norm = std::sqrt(normSq);
  eig.secularResidual = std::abs(secular_value(spec, eig.lambda, form));
  const double fluxLeft = kl * std::cos(kl);
  const double fluxRight = -spec.stiffness_right() * kr * b * std::cos(kr);
  eig.transmissionResidual = std::abs(fluxLeft - fluxRight) /
                             (std::abs(fluxLeft) + std::abs(fluxRight) + 1e-300);
  return eig;
}

double string_eigenfunction(const StringSpec& spec, const StringEig& eig,
                            double x) {
  (void)spec;
  double raw;
  if (x <= 1.0)
    raw = std::sin(eig.waveLeft * x);
  else
    raw = eig.rightAmplitude * std::sin(eig.waveRight * (2.0 - x));
  return raw / eig.norm;
}

double test_function(int n, double x) {
  if (x >= 1.0 || x <= 0.0) return 0.0;
  return std::sqrt(2.0) * std::sin(n * kPi * x);
}

double test_function_ritz_value(int n) { return n * n * kPi * kPi; }

namespace {

// Coefficients of the closed-form solution of -(p w')' = u_n:
//   w(x) = sqrt(2) sin(n pi x)/(n pi)^2 + a x   on [0,1]
//   w(x) = a (2 - x)                            on (1,2]
// with a fixed by flux continuity at x = 1.
double green_slope(const StringSpec& spec, int n) {
  const double sign = (n % 2 == 0) ? -1.0 : 1.0;
  return sign * std::sqrt(2.0) / ((2.0 + spec.eta * spec.eta) * n * kPi);
}

}  // namespace

double green_quadratic_form(const StringSpec& spec, int n, double quadTol) {
  if (!(spec.eta > 0.0))
    throw Error(ErrorCode::InvalidInput, "green_quadratic_form: eta > 0");
  if (n < 1) throw Error(ErrorCode::InvalidInput, "green_quadratic_form: n >= 1");
  const double a = green_slope(spec, n);
  const double invN2Pi2 = 1.0 / (n * n * kPi * kPi);
  auto integrand = [&](double x) {
    const double w = std::sqrt(2.0) * std::sin(n * kPi * x) * invN2Pi2 + a * x;
    return test_function(n, x) * w;
  };
  // u_n vanishes beyond x = 1, so only the left piece contributes.
  return integrate_adaptive(integrand, 0.0, 1.0, std::max(4, 2 * n), quadTol);
}

double green_quadratic_form_closed(const StringSpec& spec, int n) {
  const double invN2Pi2 = 1.0 / (n * n * kPi * kPi);
  return invN2Pi2 + 2.0 * invN2Pi2 / (2.0 + spec.eta * spec.eta);
}

namespace {

// Harmonic-mean coefficient over the mesh cell [xa, xb].
double cell_coefficient(const StringSpec& spec, double xa, double xb) {
  const double p2 = spec.stiffness_right();
  if (xb <= 1.0) return 1.0;
  if (xa >= 1.0) return p2;
  const double left = 1.0 - xa;
  const double right = xb - 1.0;
  return (xb - xa) / (left / 1.0 + right / p2);
}

struct Tridiag {
  std::vector<double> diag;
  std::vector<double> off;  // off[i] couples i and i+1
};

Tridiag fd_matrix(const StringSpec& spec, int mesh) {
  const double h = 2.0 / mesh;
  Tridiag t;
  t.diag.resize(mesh - 1);
  t.off.resize(mesh - 2);
  std::vector<double> half(mesh);
  for (int i = 0; i < mesh; ++i)
    half[static_cast<size_t>(i)] = cell_coefficient(spec, i * h, (i + 1) * h);
  for (int i = 0; i < mesh - 1; ++i) {
    t.diag[static_cast<size_t>(i)] =
        (half[static_cast<size_t>(i)] + half[static_cast<size_t>(i + 1)]) / (h * h);
    if (i < mesh - 2)
      t.off[static_cast<size_t>(i)] = -half[static_cast<size_t>(i + 1)] / (h * h);
  }
  return t;
}

// Number of eigenvalues strictly below x (Sturm count via LDL^T). Zero
// pivots are replaced by -pivmin scaled to the matrix so the ratio
// e^2/pivot stays finite.
int sturm_count(const Tridiag& t, double x) {
  double scale = 0.0;
  for (double d : t.diag) scale = std::max(scale, std::abs(d));
  const double pivmin = std::max(1e-300, 2.22e-16 * scale);

  int count = 0;
  double q = t.diag[0] - x;
  if (q <= 0.0) {
    ++count;
    if (q > -pivmin) q = -pivmin;
  }
  for (size_t i = 1; i < t.diag.size(); ++i) {
    q = (t.diag[i] - x) - t.off[i - 1] * t.off[i - 1] / q;
    if (q <= 0.0) {
      ++count;
      if (q > -pivmin) q = -pivmin;
    } else if (q < pivmin) {
      q = pivmin;
    }
  }
  return count;
}

std::vector<double> sturm_lowest(const Tridiag& t, int count) {
  double upper = 0.0;
  for (size_t i = 0; i < t.diag.size(); ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(t.off[i - 1]);
    if (i < t.off.size()) radius += std::abs(t.off[i]);
    upper = std::max(upper, t.diag[i] + radius);
  }
  std::vector<double> out;
  for (int k = 1; k <= count; ++k) {
    double lo = 0.0, hi = upper;
    for (int iter = 0; iter < 200; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (sturm_count(t, mid) >= k)
        hi = mid;
      else
        lo = mid;
      if (hi - lo <= 1e-14 * std::max(1.0, hi)) break;
    }
    out.push_back(0.5 * (lo + hi));
  }
  return out;
}

std::vector<double> fd_eigs_single(const StringSpec& spec, int mesh, int count) {
  return sturm_lowest(fd_matrix(spec, mesh), count);
}

// Thomas solve of the FD system -(p w')' = u_n and trapezoid inner product.
double green_fd_single(const StringSpec& spec, int n, int mesh) {
  const Tridiag t = fd_matrix(spec, mesh);
  const double h = 2.0 / mesh;
  const size_t dim = t.diag.size();
  std::vector<double> rhs(dim), c(dim), d(dim);
  for (size_t i = 0; i < dim; ++i)
    rhs[i] = test_function(n, (static_cast<double>(i) + 1.0) * h);

  c[0] = t.off.empty() ? 0.0 : t.off[0] / t.diag[0];
  d[0] = rhs[0] / t.diag[0];
  for (size_t i = 1; i < dim; ++i) {
    const double m = t.diag[i] - t.off[i - 1] * c[i - 1];
    c[i] = (i < dim - 1) ? t.off[i] / m : 0.0;
    d[i] = (rhs[i] - t.off[i - 1] * d[i - 1]) / m;
  }
  std::vector<double> w(dim);
  w[dim - 1] = d[dim - 1];
  for (size_t i = dim - 1; i-- > 0;) w[i] = d[i] - c[i] * w[i + 1];

  double acc = 0.0;
  for (size_t i = 0; i < dim; ++i) acc += w[i] * rhs[i];
  return acc * h;
}

}  // namespace

double green_form_fd(const StringSpec& spec, int n, int meshSize) {
  if (meshSize < 100)
    throw Error(ErrorCode::MeshTooCoarse, "green_form_fd: mesh >= 100");
  const int coarse = meshSize / 2;
  const double fine = green_fd_single(spec, n, meshSize);
  const double half = green_fd_single(spec, n, coarse);
  return (4.0 * fine - half) / 3.0;
}

double sin_theta_string(const StringSpec& spec, int n, double quadTol) {
  const double g = green_quadratic_form(spec, n, quadTol);
  const double ritz = test_function_ritz_value(n);
  const double sinSq = (g - 1.0 / ritz) / g;
  return std::sqrt(std::min(1.0, std::max(0.0, sinSq)));
}

double sin_theta_squared_closed(double eta) { return 2.0 / (4.0 + eta * eta); }

StringEigvecError string_eigvec_error(const StringSpec& spec, double quadTol,
                                      double secularTol) {
  if (!(spec.eta >= 2.0))
    throw Error(ErrorCode::InvalidInput, "string_eigvec_error: eta >= 2");
  const StringEig e1 = secular_solve(spec, 1, secularTol);
  const StringEig e2 = secular_solve(spec, 2, secularTol);

  auto v1 = [&](double x) { return string_eigenfunction(spec, e1, x); };
  const double align = integrate_adaptive(
      [&](double x) { return v1(x) * test_function(1, x); }, 0.0, 1.0, 4,
      quadTol);
  const double sign = align >= 0.0 ? 1.0 : -1.0;

  auto diffSq = [&](double x) {
    const double d = sign * v1(x) - test_function(1, x);
    return d * d;
  };
  const double errSq =
      integrate_pieces(diffSq, {0.0, 1.0, 2.0}, 4, quadTol);

  StringEigvecError out;
  out.actual = std::sqrt(std::max(0.0, errSq));
  const double eta2 = spec.eta * spec.eta;
  out.bound = kPi * std::sqrt(e2.lambda) / (e2.lambda - kPi * kPi) * 2.0 /
              std::sqrt(4.0 + eta2 - std::sqrt(8.0 + 2.0 * eta2));
  return out;
}

std::vector<double> fd_oracle(const StringSpec& spec, int meshSize, int count) {
  if (meshSize < 100)
    throw Error(ErrorCode::MeshTooCoarse, "fd_oracle: mesh >= 100 required");
  if (count < 1) throw Error(ErrorCode::InvalidInput, "fd_oracle: count >= 1");
  const std::vector<double> fine = fd_eigs_single(spec, meshSize, count);
  const std::vector<double> half = fd_eigs_single(spec, meshSize / 2, count);
  std::vector<double> out(fine.size());
  for (size_t i = 0; i < out.size(); ++i)
    out[i] = (4.0 * fine[i] - half[i]) / 3.0;
  return out;
}

}  // namespace ritz
