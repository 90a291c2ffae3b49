#include "epn/hamiltonian.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

namespace epn {

HamiltonianMatrix::HamiltonianMatrix(ExactMatrix exact, std::optional<Decomposition> prov)
    : exact_(std::move(exact)), dense_(exact_->to_dense()), provenance_(std::move(prov)) {}

HamiltonianMatrix::HamiltonianMatrix(Eigen::MatrixXd dense, std::optional<Decomposition> prov)
    : dense_(std::move(dense)), provenance_(std::move(prov)) {}

const ExactMatrix& HamiltonianMatrix::exact() const {
    if (!exact_) throw BackendError("matrix is not on the exact backend");
    return *exact_;
}

bool HamiltonianMatrix::antisymmetric_off_diagonal(double tol) const {
    const int n = dim();
    if (exact_) {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (!((*exact_)(i, j) + (*exact_)(j, i)).is_zero()) return false;
        return true;
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(dense_(i, j) + dense_(j, i)) > tol) return false;
    return true;
}

namespace {

void check_tao_args(int n, double c, double t, bool allow_t_above_one) {
    if (n < 2) throw std::domain_error("build_tao: n must be >= 2");
    if (c <= 0) throw std::domain_error("build_tao: scale c must be positive");
    if (t < 0 || (!allow_t_above_one && t > 1))
        throw std::domain_error("build_tao: coupling t must lie in [0, 1]");
}

// Couplings c*t*sqrt(k(n-k)) as exact scalars, or nullopt when some
// sqrt(k(n-k)) falls outside Q(sqrt2, sqrt3).
std::optional<std::vector<ExactScalar>> exact_tao_couplings(int n, const Rational& c,
                                                            const Rational& t) {
    std::vector<ExactScalar> out;
    for (int k = 1; k < n; ++k) {
        auto root = exact_sqrt(Integer(k) * (n - k));
        if (!root) return std::nullopt;
        out.push_back(ExactScalar(c * t) * *root);
    }
    return out;
}

ExactMatrix exact_tridiagonal(int n, const Rational& c, const Rational& eta,
                              const std::vector<ExactScalar>& couplings) {
    ExactMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = ExactScalar(eta + c * (2 * (i + 1) - 1 - n));
    for (int k = 1; k < n; ++k) {
        m(k - 1, k) = couplings[k - 1];
        m(k, k - 1) = -couplings[k - 1];
    }
    return m;
}

Eigen::MatrixXd float_tridiagonal(int n, double c, double eta, double t) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = eta + c * (2 * (i + 1) - 1 - n);
    for (int k = 1; k < n; ++k) {
        double b = c * t * std::sqrt(double(k) * (n - k));
        m(k - 1, k) = b;
        m(k, k - 1) = -b;
    }
    return m;
}

} // namespace

HamiltonianMatrix build_tao(int n, const Rational& c, const Rational& eta, const Rational& t,
                            Backend backend) {
    check_tao_args(n, to_double(c), to_double(t), false);
    if (backend != Backend::Float) {
        if (auto couplings = exact_tao_couplings(n, c, t))
            return HamiltonianMatrix(exact_tridiagonal(n, c, eta, *couplings));
        if (backend == Backend::Exact)
            throw BackendError("build_tao: couplings of n=" + std::to_string(n) +
                               " leave Q(sqrt2, sqrt3)");
    }
    return HamiltonianMatrix(float_tridiagonal(n, to_double(c), to_double(eta), to_double(t)));
}

HamiltonianMatrix build_tao(int n, double c, double eta, double t) {
    check_tao_args(n, c, t, false);
    return HamiltonianMatrix(float_tridiagonal(n, c, eta, t));
}

HamiltonianMatrix build_tao_ep(int n, const Rational& c, const Rational& eta, Backend backend) {
    return build_tao(n, c, eta, Rational(1), backend);
}

HamiltonianMatrix build_toy7(const Rational& g, Backend backend) {
    if (g < 0) throw std::domain_error("build_toy7: g must be non-negative");
    Decomposition dec{7, {BoxedSymbol{4, 2, 0}, BoxedSymbol{3, 2, 0}}};
    if (backend == Backend::Float) return build_toy7(to_double(g));
    ExactMatrix m(7, 7);
    for (int i = 0; i < 7; ++i) m(i, i) = ExactScalar(Rational(2 * i + 1));
    const ExactScalar s2 = *exact_sqrt(2), s3 = *exact_sqrt(3);
    const ExactScalar eg{g};
    const ExactScalar upper[5] = {s3 * eg, s2 * eg, ExactScalar(2) * eg, s2 * eg, s3 * eg};
    for (int i = 0; i < 5; ++i) {
        m(i, i + 2) = upper[i];
        m(i + 2, i) = -upper[i];
    }
    return HamiltonianMatrix(std::move(m), dec);
}

HamiltonianMatrix build_toy7(double g) {
    if (g < 0) throw std::domain_error("build_toy7: g must be non-negative");
    Decomposition dec{7, {BoxedSymbol{4, 2, 0}, BoxedSymbol{3, 2, 0}}};
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(7, 7);
    for (int i = 0; i < 7; ++i) m(i, i) = 2 * i + 1;
    const double upper[5] = {std::sqrt(3.0) * g, std::sqrt(2.0) * g, 2 * g, std::sqrt(2.0) * g,
                             std::sqrt(3.0) * g};
    for (int i = 0; i < 5; ++i) {
        m(i, i + 2) = upper[i];
        m(i + 2, i) = -upper[i];
    }
    return HamiltonianMatrix(std::move(m), dec);
}

std::vector<std::complex<double>> toy7_energies(double g) {
    std::complex<double> root = std::sqrt(std::complex<double>(4.0 - g * g, 0.0));
    std::vector<std::complex<double>> e;
    for (int m = -3; m <= 3; ++m) e.push_back(7.0 + double(m) * root);
    std::sort(e.begin(), e.end(), [](auto a, auto b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return e;
}

std::vector<std::complex<double>> toy7_energies_kappa(double kappa) {
    double k2 = kappa * kappa;
    std::complex<double> root = 2.0 * std::sqrt(std::complex<double>(2.0 * k2 - k2 * k2, 0.0));
    std::vector<std::complex<double>> e;
    for (int m = -3; m <= 3; ++m) e.push_back(7.0 + double(m) * root);
    std::sort(e.begin(), e.end(), [](auto a, auto b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return e;
}

namespace {

void validate_decomposition(const Decomposition& dec) {
    std::multiset<Rational> collected;
    for (const auto& comp : dec.components) {
        if (comp.length < 2) throw std::invalid_argument("decomposition: component length < 2");
        if (comp.scale <= 0) throw std::invalid_argument("decomposition: non-positive scale");
        if (comp.shift != 0) throw std::invalid_argument("decomposition: component shift must be 0");
        for (const auto& v : comp.diagonal()) collected.insert(v);
    }
    std::multiset<Rational> expected;
    for (int v : diagonal_set(dec.total_dimension)) expected.insert(Rational(v));
    if (collected != expected)
        throw std::invalid_argument(
            "decomposition: component diagonals do not partition D(N) for label " + dec.label());
}

// Row/column position of each component entry = position of its diagonal
// value in the ascending full diagonal (D(N) has distinct entries).
std::vector<std::vector<int>> embedding_positions(const Decomposition& dec) {
    std::map<Rational, int> pos;
    {
        auto d = diagonal_set(dec.total_dimension);
        for (size_t i = 0; i < d.size(); ++i) pos[Rational(d[i])] = static_cast<int>(i);
    }
    std::vector<std::vector<int>> rows;
    for (const auto& comp : dec.components) {
        std::vector<int> r;
        for (const auto& v : comp.diagonal()) r.push_back(pos.at(v));
        rows.push_back(std::move(r));
    }
    return rows;
}

} // namespace

HamiltonianMatrix build_from_decomposition(const Decomposition& dec, const Rational& eta,
                                           const Rational& t, Backend backend) {
    validate_decomposition(dec);
    if (t < 0 || t > 1) throw std::domain_error("build_from_decomposition: t must lie in [0, 1]");
    auto rows = embedding_positions(dec);
    const int n = dec.total_dimension;

    if (backend != Backend::Float) {
        bool all_exact = true;
        ExactMatrix m(n, n);
        for (size_t k = 0; k < dec.components.size() && all_exact; ++k) {
            const auto& comp = dec.components[k];
            auto couplings = exact_tao_couplings(comp.length, comp.scale, t);
            if (!couplings) { all_exact = false; break; }
            ExactMatrix block = exact_tridiagonal(comp.length, comp.scale, eta, *couplings);
            for (int i = 0; i < comp.length; ++i)
                for (int j = 0; j < comp.length; ++j) m(rows[k][i], rows[k][j]) = block(i, j);
        }
        if (all_exact) return HamiltonianMatrix(std::move(m), dec);
        if (backend == Backend::Exact)
            throw BackendError("build_from_decomposition: couplings leave Q(sqrt2, sqrt3)");
    }
    return build_from_decomposition(dec, to_double(eta), to_double(t));
}

HamiltonianMatrix build_from_decomposition(const Decomposition& dec, double eta, double t) {
    validate_decomposition(dec);
    if (t < 0 || t > 1) throw std::domain_error("build_from_decomposition: t must lie in [0, 1]");
    auto rows = embedding_positions(dec);
    const int n = dec.total_dimension;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (size_t k = 0; k < dec.components.size(); ++k) {
        const auto& comp = dec.components[k];
        Eigen::MatrixXd block =
            float_tridiagonal(comp.length, to_double(comp.scale), eta, t);
        for (int i = 0; i < comp.length; ++i)
            for (int j = 0; j < comp.length; ++j) m(rows[k][i], rows[k][j]) = block(i, j);
    }
    return HamiltonianMatrix(std::move(m), dec);
}

HamiltonianMatrix build_pentadiagonal_special(int n, const std::vector<ExactScalar>& couplings) {
    if (n < 4) throw std::domain_error("build_pentadiagonal_special: N must be >= 4");
    if (static_cast<int>(couplings.size()) != n - 2)
        throw std::invalid_argument("build_pentadiagonal_special: need N-2 couplings");
    ExactMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = ExactScalar(Rational(2 * (i + 1) - 1 - n));
    for (int k = 0; k < n - 2; ++k) {
        m(k, k + 2) = couplings[k];
        m(k + 2, k) = -couplings[k];
    }
    return HamiltonianMatrix(std::move(m));
}

HamiltonianMatrix build_pentadiagonal_special(int n, const std::vector<double>& couplings) {
    if (n < 4) throw std::domain_error("build_pentadiagonal_special: N must be >= 4");
    if (static_cast<int>(couplings.size()) != n - 2)
        throw std::invalid_argument("build_pentadiagonal_special: need N-2 couplings");
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 2 * (i + 1) - 1 - n;
    for (int k = 0; k < n - 2; ++k) {
        m(k, k + 2) = couplings[k];
        m(k + 2, k) = -couplings[k];
    }
    return HamiltonianMatrix(std::move(m));
}

HamiltonianMatrix build_jordan(const std::vector<int>& block_sizes, const Rational& eta,
                               Backend backend) {
    int n = 0;
    for (int b : block_sizes) {
        if (b < 1) throw std::domain_error("build_jordan: block sizes must be >= 1");
        n += b;
    }
    if (backend == Backend::Float) {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
        int off = 0;
        for (int b : block_sizes) {
            for (int i = 0; i < b; ++i) {
                m(off + i, off + i) = to_double(eta);
                if (i + 1 < b) m(off + i, off + i + 1) = 1.0;
            }
            off += b;
        }
        return HamiltonianMatrix(std::move(m));
    }
    ExactMatrix m(n, n);
    int off = 0;
    for (int b : block_sizes) {
        for (int i = 0; i < b; ++i) {
            m(off + i, off + i) = ExactScalar(eta);
            if (i + 1 < b) m(off + i, off + i + 1) = ExactScalar(1);
        }
        off += b;
    }
    return HamiltonianMatrix(std::move(m));
}

std::vector<CouplingComponent> split_by_coupling_graph(const HamiltonianMatrix& h) {
    const int n = h.dim();
    std::vector<int> comp(n, -1);
    int ncomp = 0;
    for (int start = 0; start < n; ++start) {
        if (comp[start] >= 0) continue;
        std::vector<int> stack{start};
        comp[start] = ncomp;
        while (!stack.empty()) {
            int i = stack.back();
            stack.pop_back();
            for (int j = 0; j < n; ++j) {
                if (i == j || comp[j] >= 0) continue;
                bool coupled = h.is_exact()
                                   ? !h.exact()(i, j).is_zero() || !h.exact()(j, i).is_zero()
                                   : h(i, j) != 0.0 || h(j, i) != 0.0;
                if (coupled) {
                    comp[j] = ncomp;
                    stack.push_back(j);
                }
            }
        }
        ++ncomp;
    }
    std::vector<CouplingComponent> out;
    for (int c = 0; c < ncomp; ++c) {
        std::vector<int> idx;
        for (int i = 0; i < n; ++i)
            if (comp[i] == c) idx.push_back(i);
        const int m = static_cast<int>(idx.size());
        if (h.is_exact()) {
            ExactMatrix sub(m, m);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) sub(i, j) = h.exact()(idx[i], idx[j]);
            out.push_back(CouplingComponent{idx, HamiltonianMatrix(std::move(sub))});
        } else {
            Eigen::MatrixXd sub(m, m);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) sub(i, j) = h(idx[i], idx[j]);
            out.push_back(CouplingComponent{idx, HamiltonianMatrix(std::move(sub))});
        }
    }
    return out;
}

HamiltonianMatrix add_antisymmetric_perturbation(const HamiltonianMatrix& h, double eps,
                                                 std::uint64_t seed) {
    if (eps < 0) throw std::domain_error("add_antisymmetric_perturbation: eps must be >= 0");
    if (h.is_exact())
        throw BackendError("add_antisymmetric_perturbation: float backend only");
    const int n = h.dim();
    Eigen::MatrixXd m = h.dense();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-eps, eps);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double p = dist(rng);
            m(i, j) += p;
            m(j, i) -= p;
        }
    return HamiltonianMatrix(std::move(m), h.provenance());
}

ModelFamily::ModelFamily(Decomposition dec, Rational eta, double native_scale)
    : dec_(std::move(dec)), eta_(std::move(eta)), native_scale_(native_scale) {
    validate_decomposition(dec_);
}

ModelFamily ModelFamily::toy7() {
    return ModelFamily(Decomposition{7, {BoxedSymbol{4, 2, 0}, BoxedSymbol{3, 2, 0}}}, 7, 2.0);
}

HamiltonianMatrix ModelFamily::matrix(double t) const {
    if (t < 0) throw std::domain_error("ModelFamily: t must be >= 0");
    // t > 1 is admitted here (analytic continuation past the EP, used by the
    // reality-predicate bisection); the public builders stay on [0, 1].
    auto rows = embedding_positions(dec_);
    const int n = dec_.total_dimension;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (size_t k = 0; k < dec_.components.size(); ++k) {
        const auto& comp = dec_.components[k];
        Eigen::MatrixXd block =
            float_tridiagonal(comp.length, to_double(comp.scale), to_double(eta_), t);
        for (int i = 0; i < comp.length; ++i)
            for (int j = 0; j < comp.length; ++j) m(rows[k][i], rows[k][j]) = block(i, j);
    }
    return HamiltonianMatrix(std::move(m), dec_);
}

HamiltonianMatrix ModelFamily::matrix(const Rational& t, Backend backend) const {
    return build_from_decomposition(dec_, eta_, t, backend);
}

} // namespace epn
