#pragma once

// Quasi-Hermiticity: solutions Theta of H^T Theta = Theta H, positivity
// checks, the amended inner product and corridor sweep data.

#include "epn/spectral.hpp"

#include <string>

namespace epn {

struct SpectralError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MetricOperator {
    Eigen::MatrixXd theta;       // symmetric
    Eigen::VectorXd weights;     // kappa_n, when built from left eigenvectors
    double residual = 0.0;       // |H^T Theta - Theta H| max-abs
};

/// Basis of the symmetric solution space of H^T Theta = Theta H, via the
/// null space of the linearized map on N(N+1)/2 symmetric coordinates.
std::vector<Eigen::MatrixXd> metric_basis(const Eigen::MatrixXd& h, double tol = 1e-9);

/// Theta = sum_n kappa_n L_n L_n^T with L_n the unit-normalized left
/// eigenvectors.  Requires a real simple spectrum and positive weights.
MetricOperator metric_from_left_eigenvectors(const HamiltonianMatrix& h,
                                             const Eigen::VectorXd& kappa,
                                             double reality_tol = 1e-9);
MetricOperator metric_from_left_eigenvectors(const HamiltonianMatrix& h, double kappa = 1.0);

/// Smallest eigenvalue of a symmetric matrix; positive iff > tol * |Theta|.
std::pair<bool, double> is_positive_definite(const Eigen::MatrixXd& theta, double tol = 1e-12);

/// psi1^T Theta psi2.
double inner_product(const Eigen::VectorXd& psi1, const Eigen::VectorXd& psi2,
                     const Eigen::MatrixXd& theta);

struct SweepRow {
    double t = 0.0;
    double native_coupling = 0.0;
    std::vector<std::complex<double>> eigenvalues;
    double min_gap = 0.0;
    double theta_min_eig = std::numeric_limits<double>::quiet_NaN();
    bool is_real = false;
    std::string error; // per-row failure, recorded instead of aborting
};

/// Per grid point: spectrum, reality flag, min gap, Theta min-eigenvalue
/// under kappa_n = kappa.  Grid in t within [0, 1).  Row order follows the
/// grid; the parallel kernel and the serial reference produce identical rows.
std::vector<SweepRow> corridor_sweep(const ModelFamily& family, const std::vector<double>& grid,
                                     double kappa = 1.0, bool parallel = true);
std::vector<SweepRow> corridor_sweep_serial(const ModelFamily& family,
                                            const std::vector<double>& grid, double kappa = 1.0);

/// Sweep CSV with the fixed column layout (17 significant digits).
std::string sweep_csv(const std::vector<SweepRow>& rows, int dim);

} // namespace epn
