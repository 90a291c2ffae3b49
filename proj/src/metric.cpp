#include "epn/metric.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace epn {

std::vector<Eigen::MatrixXd> metric_basis(const Eigen::MatrixXd& h, double tol) {
    const int n = static_cast<int>(h.rows());
    const int nsym = n * (n + 1) / 2;

    // coordinates: theta_{ij}, i <= j; equations: (H^T Theta - Theta H)_{ij},
    // i < j (the image is antisymmetric)
    auto coord = [n](int i, int j) {
        if (i > j) std::swap(i, j);
        return i * n + j - i * (i + 1) / 2;
    };
    const int neq = n * (n - 1) / 2;
    Eigen::MatrixXd sys = Eigen::MatrixXd::Zero(std::max(neq, 1), nsym);
    int row = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++row)
            for (int k = 0; k < n; ++k) {
                sys(row, coord(k, j)) += h(k, i); // (H^T)_{ik} Theta_{kj}
                sys(row, coord(i, k)) -= h(k, j); // Theta_{ik} H_{kj}
            }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cutoff = tol * std::max(sv.size() > 0 ? sv(0) : 0.0, 1.0);
    std::vector<Eigen::MatrixXd> basis;
    for (int c = nsym - 1; c >= 0; --c) {
        if (c < sv.size() && sv(c) > cutoff) break;
        Eigen::VectorXd x = svd.matrixV().col(c);
        Eigen::MatrixXd theta(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) theta(i, j) = theta(j, i) = x(coord(i, j));
        basis.push_back(std::move(theta));
    }
    return basis;
}

MetricOperator metric_from_left_eigenvectors(const HamiltonianMatrix& h,
                                             const Eigen::VectorXd& kappa, double reality_tol) {
    const int n = h.dim();
    if (kappa.size() != n)
        throw std::invalid_argument("metric_from_left_eigenvectors: need N weights");
    for (int i = 0; i < n; ++i)
        if (kappa(i) <= 0)
            throw std::invalid_argument("metric_from_left_eigenvectors: weights must be positive");

    SpectralReport rep = eigen(h, reality_tol);
    if (!rep.is_real)
        throw SpectralError("metric_from_left_eigenvectors: spectrum not real");
    double radius = 0.0;
    for (const auto& e : rep.eigenvalues) radius = std::max(radius, std::abs(e));
    if (rep.min_gap <= reality_tol * (1.0 + radius))
        throw SpectralError("metric_from_left_eigenvectors: spectrum degenerate");

    // left eigenvectors = rows of the inverse right-eigenvector matrix
    Eigen::MatrixXd v = rep.eigenvectors.real();
    Eigen::MatrixXd left = v.inverse();
    MetricOperator out;
    out.weights = kappa;
    out.theta = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        Eigen::VectorXd l = left.row(i).normalized();
        out.theta += kappa(i) * l * l.transpose();
    }
    out.theta = 0.5 * (out.theta + out.theta.transpose()); // exact symmetry
    out.residual =
        (h.dense().transpose() * out.theta - out.theta * h.dense()).cwiseAbs().maxCoeff();
    return out;
}

MetricOperator metric_from_left_eigenvectors(const HamiltonianMatrix& h, double kappa) {
    return metric_from_left_eigenvectors(h, Eigen::VectorXd::Constant(h.dim(), kappa));
}

std::pair<bool, double> is_positive_definite(const Eigen::MatrixXd& theta, double tol) {
    if (!theta.isApprox(theta.transpose(), 1e-12))
        throw std::invalid_argument("is_positive_definite: matrix not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(theta, Eigen::EigenvaluesOnly);
    double min_eig = solver.eigenvalues()(0);
    double norm = std::max(std::abs(solver.eigenvalues()(theta.rows() - 1)), std::abs(min_eig));
    return {min_eig > tol * norm, min_eig};
}

double inner_product(const Eigen::VectorXd& psi1, const Eigen::VectorXd& psi2,
                     const Eigen::MatrixXd& theta) {
    if (psi1.size() != theta.rows() || psi2.size() != theta.cols())
        throw std::invalid_argument("inner_product: dimension mismatch");
    return psi1.dot(theta * psi2);
}

namespace {

SweepRow sweep_row(const ModelFamily& family, double t, double kappa) {
    SweepRow row;
    row.t = t;
    row.native_coupling = t * family.native_scale();
    try {
        HamiltonianMatrix h = family.matrix(t);
        SpectralReport rep = eigen(h);
        row.eigenvalues = rep.eigenvalues;
        row.min_gap = rep.min_gap;
        row.is_real = rep.is_real;
        if (rep.is_real) {
            MetricOperator theta = metric_from_left_eigenvectors(h, kappa);
            row.theta_min_eig = is_positive_definite(theta.theta).second;
        }
    } catch (const std::exception& e) {
        row.error = e.what();
    }
    return row;
}

} // namespace

std::vector<SweepRow> corridor_sweep_serial(const ModelFamily& family,
                                            const std::vector<double>& grid, double kappa) {
    std::vector<SweepRow> rows;
    rows.reserve(grid.size());
    for (double t : grid) rows.push_back(sweep_row(family, t, kappa));
    return rows;
}

std::vector<SweepRow> corridor_sweep(const ModelFamily& family, const std::vector<double>& grid,
                                     double kappa, bool parallel) {
    if (!parallel) return corridor_sweep_serial(family, grid, kappa);
    std::vector<SweepRow> rows(grid.size());
    const int count = static_cast<int>(grid.size());
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < count; ++i) rows[i] = sweep_row(family, grid[i], kappa);
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows, int dim) {
    std::string out = "t,native_coupling";
    for (int i = 1; i <= dim; ++i) out += ",re_E_" + std::to_string(i);
    for (int i = 1; i <= dim; ++i) out += ",im_E_" + std::to_string(i);
    out += ",min_gap,theta_min_eig,is_real\n";
    char buf[64];
    auto num = [&](double v) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return std::string(buf);
    };
    for (const auto& row : rows) {
        out += num(row.t) + "," + num(row.native_coupling);
        for (int i = 0; i < dim; ++i)
            out += "," + (i < (int)row.eigenvalues.size() ? num(row.eigenvalues[i].real()) : "nan");
        for (int i = 0; i < dim; ++i)
            out += "," + (i < (int)row.eigenvalues.size() ? num(row.eigenvalues[i].imag()) : "nan");
        out += "," + num(row.min_gap) + "," + num(row.theta_min_eig) + "," +
               (row.is_real ? "1" : "0") + "\n";
    }
    return out;
}

} // namespace epn
