#include "epn/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <numeric>

namespace epn {

namespace {

bool eig_less(const std::complex<double>& a, const std::complex<double>& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

} // namespace

SpectralReport eigen(const HamiltonianMatrix& h, double reality_tol) {
    const Eigen::MatrixXd& m = h.dense();
    Eigen::EigenSolver<Eigen::MatrixXd> solver(m, true);
    if (solver.info() != Eigen::Success)
        throw SolverError("eigen: QR iteration failed to converge at N = " +
                          std::to_string(m.rows()));
    const int n = static_cast<int>(m.rows());

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    auto vals = solver.eigenvalues();
    std::sort(order.begin(), order.end(), [&](int a, int b) { return eig_less(vals(a), vals(b)); });

    SpectralReport rep;
    rep.eigenvectors.resize(n, n);
    double radius = 0.0;
    for (int i = 0; i < n; ++i) {
        rep.eigenvalues.push_back(vals(order[i]));
        rep.eigenvectors.col(i) = solver.eigenvectors().col(order[i]);
        radius = std::max(radius, std::abs(vals(order[i])));
    }
    rep.is_real = true;
    for (const auto& e : rep.eigenvalues)
        if (std::abs(e.imag()) > reality_tol * (1.0 + radius)) rep.is_real = false;
    rep.min_gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            rep.min_gap = std::min(rep.min_gap, std::abs(rep.eigenvalues[i] - rep.eigenvalues[j]));
    if (n < 2) rep.min_gap = 0.0;
    return rep;
}

int numerical_rank(const Eigen::MatrixXd& m, double tol) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > tol * sv(0)) ++rank;
    return rank;
}

int numerical_rank(const HamiltonianMatrix& m, double tol) {
    if (m.is_exact()) return exact_rank(m.exact());
    return numerical_rank(m.dense(), tol);
}

namespace {

// rank(A^p) with a threshold tied to |A|_2^p: singular values of an exactly
// nilpotent power sit at roundoff relative to that scale.
int float_power_rank(const Eigen::MatrixXd& power, double norm_a, int p, double tol) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(power);
    const auto& sv = svd.singularValues();
    const double scale = std::max(std::pow(norm_a, p), 1.0);
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > tol * scale) ++rank;
    return rank;
}

std::vector<int> blocks_from_filtration(const std::vector<int>& ranks, int n) {
    // ranks[p] = rank(A^p); number of blocks of size >= p is ranks[p-1]-ranks[p]
    const int pmax = static_cast<int>(ranks.size()) - 1;
    if (ranks.back() != 0)
        throw DegeneracyError("jordan_structure: eta is not the fully degenerate eigenvalue");
    std::vector<int> ge(pmax + 2, 0);
    for (int p = 1; p <= pmax; ++p) {
        ge[p] = ranks[p - 1] - ranks[p];
        if (ge[p] < 0 || (p > 1 && ge[p] > ge[p - 1]))
            throw DegeneracyError("jordan_structure: rank filtration inconsistent");
    }
    std::vector<int> sizes;
    for (int p = pmax; p >= 1; --p)
        for (int c = 0; c < ge[p] - ge[p + 1]; ++c) sizes.push_back(p);
    if (std::accumulate(sizes.begin(), sizes.end(), 0) != n)
        throw DegeneracyError("jordan_structure: block sizes do not sum to N");
    return sizes;
}

} // namespace

JordanStructure jordan_structure(const HamiltonianMatrix& h, const Rational& eta, double tol) {
    const int n = h.dim();
    JordanStructure js;
    js.eta_exact = eta;
    js.eta = to_double(eta);

    std::vector<int> ranks{n};
    if (h.is_exact()) {
        ExactMatrix a = h.exact();
        for (int i = 0; i < n; ++i) a(i, i) -= ExactScalar(eta);
        ExactMatrix power = ExactMatrix::identity(n);
        for (int p = 1; p <= n; ++p) {
            power = power * a;
            ranks.push_back(exact_rank(power));
            if (ranks.back() == 0) break;
        }
    } else {
        Eigen::MatrixXd a = h.dense();
        for (int i = 0; i < n; ++i) a(i, i) -= js.eta;
        const double norm_a = a.norm();
        Eigen::MatrixXd power = Eigen::MatrixXd::Identity(n, n);
        for (int p = 1; p <= n; ++p) {
            power = power * a;
            ranks.push_back(float_power_rank(power, norm_a, p, tol));
            if (ranks.back() == 0) break;
        }
    }
    js.rank_filtration = ranks;
    js.block_sizes = blocks_from_filtration(ranks, n);
    js.K = static_cast<int>(js.block_sizes.size());
    return js;
}

namespace {

// Deterministic small-integer coefficients for picking an invertible element
// of the Sylvester solution space.
int lcg_coeff(std::uint64_t& state) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    int v = static_cast<int>((state >> 33) % 9) - 4; // [-4, 4]
    return v == 0 ? 1 : v;
}

ExactMatrix exact_sylvester_nullspace(const ExactMatrix& h, const ExactMatrix& j) {
    const int n = h.rows();
    ExactMatrix s(n * n, n * n);
    // row (i,q): sum_p H(i,p) X(p,q) - sum_p X(i,p) J(p,q)
    for (int i = 0; i < n; ++i)
        for (int q = 0; q < n; ++q) {
            const int row = i * n + q;
            for (int p = 0; p < n; ++p) {
                s(row, p * n + q) += h(i, p);
                s(row, i * n + p) -= j(p, q);
            }
        }
    return exact_nullspace(std::move(s));
}

Eigen::MatrixXd float_sylvester_nullspace(const Eigen::MatrixXd& h, const Eigen::MatrixXd& j,
                                          double tol) {
    const int n = static_cast<int>(h.rows());
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n * n, n * n);
    for (int i = 0; i < n; ++i)
        for (int q = 0; q < n; ++q) {
            const int row = i * n + q;
            for (int p = 0; p < n; ++p) {
                s(row, p * n + q) += h(i, p);
                s(row, i * n + p) -= j(p, q);
            }
        }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(s, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cutoff = tol * std::max(sv(0), 1.0);
    int null_dim = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) <= cutoff) ++null_dim;
    return svd.matrixV().rightCols(null_dim);
}

} // namespace

TransitionMatrix transition_matrix(const HamiltonianMatrix& h, const JordanStructure& jordan) {
    const int n = h.dim();
    if (std::accumulate(jordan.block_sizes.begin(), jordan.block_sizes.end(), 0) != n)
        throw std::invalid_argument("transition_matrix: jordan inconsistent with H");
    TransitionMatrix out;
    out.jordan = jordan;

    if (h.is_exact()) {
        HamiltonianMatrix j = build_jordan(jordan.block_sizes, jordan.eta_exact);
        ExactMatrix basis = exact_sylvester_nullspace(h.exact(), j.exact());
        if (basis.cols() == 0)
            throw std::runtime_error("transition_matrix: empty Sylvester null space");
        std::uint64_t state = 0x9e3779b97f4a7c15ULL;
        for (int attempt = 0; attempt < 64; ++attempt) {
            ExactMatrix q(n, n);
            for (int b = 0; b < basis.cols(); ++b) {
                ExactScalar coeff(attempt == 0 ? 1 : lcg_coeff(state));
                for (int i = 0; i < n; ++i)
                    for (int c = 0; c < n; ++c) q(i, c) += coeff * basis(i * n + c, b);
            }
            ExactScalar det = exact_det(q);
            if (!det.is_zero()) {
                // rescale by an exact power of two so |det| lands near 1
                // (Q is only defined up to scale)
                double mag = std::abs(det.value());
                if (mag > 0.0 && std::isfinite(mag)) {
                    long e = std::lround(-std::log2(mag) / n);
                    if (e != 0) {
                        Rational s = e > 0 ? Rational(Integer(1) << e)
                                           : Rational(1, Integer(1) << -e);
                        ExactScalar es{s};
                        for (int i = 0; i < n; ++i)
                            for (int c = 0; c < n; ++c) q(i, c) *= es;
                        det = exact_det(q);
                    }
                }
                out.q = q.to_dense();
                out.exact_q = std::move(q);
                out.residual = 0.0;
                out.det_magnitude = std::abs(det.value());
                return out;
            }
        }
        throw std::runtime_error("transition_matrix: no invertible exact solution found");
    }

    HamiltonianMatrix j = build_jordan(jordan.block_sizes, jordan.eta_exact, Backend::Float);
    Eigen::MatrixXd basis = float_sylvester_nullspace(h.dense(), j.dense(), 1e-9);
    if (basis.cols() == 0)
        throw std::runtime_error("transition_matrix: empty Sylvester null space");
    std::uint64_t state = 0x9e3779b97f4a7c15ULL;
    Eigen::MatrixXd best;
    double best_det = -1.0;
    for (int attempt = 0; attempt < 32; ++attempt) {
        Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
        for (int b = 0; b < basis.cols(); ++b) {
            double coeff = attempt == 0 ? 1.0 : double(lcg_coeff(state));
            for (int i = 0; i < n; ++i)
                for (int c = 0; c < n; ++c) q(i, c) += coeff * basis(i * n + c, b);
        }
        q *= std::sqrt(double(n)) / q.norm();
        double det = std::abs(q.determinant());
        if (det > best_det) {
            best_det = det;
            best = q;
        }
    }
    if (best_det > 0.0 && std::isfinite(best_det))
        best *= std::pow(best_det, -1.0 / n); // scale freedom: put |det Q| at 1
    out.q = best;
    auto [res, det] = verify_intertwiner(h.dense(), best, j.dense());
    out.residual = res;
    out.det_magnitude = det;
    return out;
}

std::pair<double, double> verify_intertwiner(const HamiltonianMatrix& h, const ExactMatrix& q,
                                             const HamiltonianMatrix& j) {
    if (q.rows() != h.dim() || j.dim() != h.dim())
        throw std::invalid_argument("verify_intertwiner: dimension mismatch");
    ExactMatrix lhs = h.exact() * q - q * j.exact();
    double residual = 0.0;
    for (int i = 0; i < lhs.rows(); ++i)
        for (int c = 0; c < lhs.cols(); ++c)
            if (!lhs(i, c).is_zero()) residual = std::max(residual, std::abs(lhs(i, c).value()));
    return {residual, std::abs(exact_det(q).value())};
}

std::pair<double, double> verify_intertwiner(const Eigen::MatrixXd& h, const Eigen::MatrixXd& q,
                                             const Eigen::MatrixXd& j) {
    if (q.rows() != h.rows() || j.rows() != h.rows())
        throw std::invalid_argument("verify_intertwiner: dimension mismatch");
    double residual = (h * q - q * j).cwiseAbs().maxCoeff();
    return {residual, std::abs(q.determinant())};
}

double find_ep(const std::function<Eigen::MatrixXd(double)>& family, double lo, double hi,
               double tol, double reality_tol) {
    auto real_at = [&](double t) {
        return eigen(HamiltonianMatrix(family(t)), reality_tol).is_real;
    };
    if (!real_at(lo))
        throw BracketError("find_ep: spectrum not real at lower bracket end");
    if (real_at(hi))
        throw BracketError("find_ep: spectrum real at upper bracket end");
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        (real_at(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

ClusterAssignment cluster_levels(const ModelFamily& family, double t_near, double tol) {
    const int n = family.dim();
    HamiltonianMatrix limit = family.matrix(1.0);
    auto components = split_by_coupling_graph(limit);
    const int k = static_cast<int>(components.size());
    const double eta = to_double(family.eta());

    // one null direction per component, embedded into R^N
    Eigen::MatrixXd chi = Eigen::MatrixXd::Zero(n, k);
    for (int c = 0; c < k; ++c) {
        const auto& comp = components[c];
        Eigen::MatrixXd a = comp.matrix.dense();
        for (int i = 0; i < a.rows(); ++i) a(i, i) -= eta;
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
        Eigen::VectorXd v = svd.matrixV().col(a.cols() - 1);
        for (size_t i = 0; i < comp.indices.size(); ++i) chi(comp.indices[i], c) = v(i);
    }

    SpectralReport rep = eigen(family.matrix(t_near));
    if (!rep.is_real)
        throw ClusterizationError("cluster_levels: spectrum not real at t_near");
    if (rep.min_gap <= tol)
        throw ClusterizationError("cluster_levels: spectrum not simple at t_near");

    ClusterAssignment out;
    out.subsets.assign(k, {});
    out.limit_vectors = chi;
    for (int lvl = 0; lvl < n; ++lvl) {
        Eigen::VectorXcd v = rep.eigenvectors.col(lvl).normalized();
        int best = 0, second = -1;
        double best_ov = -1.0, second_ov = -1.0;
        for (int c = 0; c < k; ++c) {
            double ov = std::abs(chi.col(c).cast<std::complex<double>>().dot(v));
            if (ov > best_ov) {
                second = best;
                second_ov = best_ov;
                best = c;
                best_ov = ov;
            } else if (ov > second_ov) {
                second = c;
                second_ov = ov;
            }
        }
        if (k > 1 && best_ov - second_ov <= tol * best_ov)
            throw ClusterizationError("cluster_levels: ambiguous overlap for level " +
                                      std::to_string(lvl) + " (components " +
                                      std::to_string(best) + " and " + std::to_string(second) +
                                      ")");
        out.subsets[best].push_back(lvl);
    }
    return out;
}

} // namespace epn
