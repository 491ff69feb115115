#pragma once

#include <vector>

#include "fram/matrix.hpp"

namespace fram {

struct SdsnConfig {
  double theta = 2.0;
  double gamma_threshold = 1e-3;
  int max_iterations = 1000;
  // Apply the (θ/2)·X/max(X) preconditioning before iterating. Disabling it
  // turns SDSN into plain DSN with the γ stopping rule.
  bool normalize_input = true;

  // Throws ValidationError on non-positive θ, γ threshold outside (0, 1) or
  // a non-positive iteration cap.
  void validate() const;
};

struct ProjectionTrace {
  int iterations = 0;
  // γ of each post-clipping iterate that was tested against the threshold.
  std::vector<double> gamma_history;
  bool converged = false;
};

struct ProjectionResult {
  Matrix matrix;
  ProjectionTrace trace;
};

// Nearest matrix (Frobenius) with unit row and column sums.
Matrix project_affine(const Matrix& x);
// Entrywise max(0, x).
Matrix project_nonnegative(const Matrix& x);
// Nearest matrix with zero row and column sums.
Matrix project_zero_marginals(const Matrix& x);

// Dimension-invariant distance to the doubly stochastic set: 1ᵀX1/n − 1.
double mass_excess(const Matrix& x);

// Scaling doubly stochastic normalization. Input must be square and
// entrywise nonnegative; an all-zero input yields 11ᵀ/n.
ProjectionResult sdsn(const Matrix& x, const SdsnConfig& config);

// Exactly `iterations` rounds of clip∘affine with no scaling.
Matrix dsn_fixed(const Matrix& x, int iterations);

struct DykstraResult {
  Matrix matrix;
  int iterations = 0;
  bool converged = false;
};

// Dykstra's alternating projection between the unit-marginal affine set and
// the nonnegative orthant. Converges to the Euclidean projection onto the
// Birkhoff polytope; stops once successive iterates move less than `tolerance`
// and the affine and orthant iterates agree to the same tolerance.
DykstraResult dykstra_project(const Matrix& x, double tolerance = 1e-12,
                              int max_iterations = 100000);

}  // namespace fram
