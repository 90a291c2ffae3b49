#pragma once

// Eigenvalue analysis, EP location, rank and Jordan structure, transition
// matrices for H Q = Q J, and eigenvector clusterization.

#include "epn/hamiltonian.hpp"

#include <complex>
#include <functional>

namespace epn {

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BracketError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegeneracyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ClusterizationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Tolerances {
    double rank = 1e-9;    // relative to the largest singular value
    double reality = 1e-9; // scaled by 1 + spectral radius
};

struct SpectralReport {
    std::vector<std::complex<double>> eigenvalues; // ascending re, then im
    Eigen::MatrixXcd eigenvectors;                 // columns, same order
    bool is_real = false;
    double min_gap = 0.0;
};

SpectralReport eigen(const HamiltonianMatrix& h, double reality_tol = 1e-9);

/// Exact backend: elimination over Q(sqrt2, sqrt3); float: singular values
/// above tol * sigma_max.
int numerical_rank(const HamiltonianMatrix& m, double tol = 1e-9);
int numerical_rank(const Eigen::MatrixXd& m, double tol = 1e-9);

struct JordanStructure {
    Rational eta_exact;           // meaningful on the exact path
    double eta = 0.0;
    std::vector<int> block_sizes; // descending
    int K = 0;
    std::vector<int> rank_filtration; // rank((H - eta I)^p), p = 0..max size
};

/// Rank filtration of powers of H - eta*I; block sizes by the Weyr
/// difference formula.  Throws DegeneracyError when eta is not the fully
/// degenerate eigenvalue.
JordanStructure jordan_structure(const HamiltonianMatrix& h, const Rational& eta,
                                 double tol = 1e-9);

struct TransitionMatrix {
    std::optional<ExactMatrix> exact_q;
    Eigen::MatrixXd q;
    JordanStructure jordan;
    double residual = 0.0;
    double det_magnitude = 0.0;
};

/// Invertible Q with H Q = Q J^[blocks](eta), taken from the null space of
/// the Sylvester map X -> H X - X J.
TransitionMatrix transition_matrix(const HamiltonianMatrix& h, const JordanStructure& jordan);

/// Max-abs norm of H Q - Q J and |det Q| (exact where all inputs are exact).
std::pair<double, double> verify_intertwiner(const HamiltonianMatrix& h, const ExactMatrix& q,
                                             const HamiltonianMatrix& j);
std::pair<double, double> verify_intertwiner(const Eigen::MatrixXd& h, const Eigen::MatrixXd& q,
                                             const Eigen::MatrixXd& j);

/// Bisection on the spectrum-reality predicate of a coupling family.
/// Requires real spectrum at lo and non-real at hi.
double find_ep(const std::function<Eigen::MatrixXd(double)>& family, double lo, double hi,
               double tol = 1e-6, double reality_tol = 1e-9);

struct ClusterAssignment {
    std::vector<std::vector<int>> subsets;  // S_k, 0-based level indices
    Eigen::MatrixXd limit_vectors;          // columns chi_k
};

/// Assigns each eigenvector at coupling t_near to the EPN null direction
/// chi_k (one per direct-sum component) with the largest normalized overlap.
ClusterAssignment cluster_levels(const ModelFamily& family, double t_near, double tol = 1e-6);

} // namespace epn
