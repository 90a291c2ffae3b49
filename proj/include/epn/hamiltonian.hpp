#pragma once

// Matrix families: TAO components at arbitrary coupling, their EPN limits,
// the N=7 pentadiagonal toy, the pentadiagonal special models, direct-sum
// assemblies from a Decomposition, and Jordan canonical matrices.
//
// Builders produce the exact backend whenever every entry lies in
// Q(sqrt2, sqrt3) (rational coupling, component dimensions <= 5) and fall
// back to floats otherwise.  A float copy is always kept alongside.

#include "epn/exact_matrix.hpp"
#include "epn/symbols.hpp"

#include <Eigen/Dense>
#include <complex>
#include <optional>

namespace epn {

enum class Backend { Auto, Exact, Float };

struct BackendError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Real N x N matrix, diagonal plus antisymmetric off-diagonal part.
class HamiltonianMatrix {
public:
    HamiltonianMatrix(ExactMatrix exact, std::optional<Decomposition> prov = std::nullopt);
    HamiltonianMatrix(Eigen::MatrixXd dense, std::optional<Decomposition> prov = std::nullopt);

    int dim() const { return static_cast<int>(dense_.rows()); }
    bool is_exact() const { return exact_.has_value(); }

    const ExactMatrix& exact() const;
    const Eigen::MatrixXd& dense() const { return dense_; }
    double operator()(int i, int j) const { return dense_(i, j); }

    const std::optional<Decomposition>& provenance() const { return provenance_; }

    /// H + H^T == 2 diag(H), checked exactly on the exact backend.
    bool antisymmetric_off_diagonal(double tol = 0.0) const;

private:
    std::optional<ExactMatrix> exact_;
    Eigen::MatrixXd dense_;
    std::optional<Decomposition> provenance_;
};

/// Tridiagonal TAO component: diagonal eta + c(2i-1-n), couplings
/// +/- c*t*sqrt(k(n-k)).  t in [0,1]; t = 1 is the EPN limit.
HamiltonianMatrix build_tao(int n, const Rational& c, const Rational& eta, const Rational& t,
                            Backend backend = Backend::Auto);

/// Float-coupling variant (irrational t etc.); always float backend.
HamiltonianMatrix build_tao(int n, double c, double eta, double t);

/// EPN limit, equals build_tao(n, c, eta, 1).
HamiltonianMatrix build_tao_ep(int n, const Rational& c, const Rational& eta,
                               Backend backend = Backend::Auto);

/// The 7x7 pentadiagonal toy: diagonal (1,3,...,13), second super-diagonal
/// (sqrt3 g, sqrt2 g, 2g, sqrt2 g, sqrt3 g).  g > 2 allowed (complex spectrum).
HamiltonianMatrix build_toy7(const Rational& g, Backend backend = Backend::Auto);
HamiltonianMatrix build_toy7(double g);

/// Closed-form toy energies {7, 7 +/- m sqrt(4-g^2), m=1..3}; complex
/// conjugate pairs for g > 2.  Ascending by real part, then imaginary part.
std::vector<std::complex<double>> toy7_energies(double g);

/// Same energies through the kappa parametrization g = 2(1 - kappa^2).
std::vector<std::complex<double>> toy7_energies_kappa(double kappa);

/// Direct-sum assembly: each component built by build_tao(n_j, c_j, eta, t),
/// embedded so that a component row sits at the position its diagonal entry
/// occupies in the sorted full diagonal eta + D(N).
HamiltonianMatrix build_from_decomposition(const Decomposition& dec, const Rational& eta,
                                           const Rational& t, Backend backend = Backend::Auto);
HamiltonianMatrix build_from_decomposition(const Decomposition& dec, double eta, double t);

/// Pentadiagonal special model: diagonal 1-N ... N-1, only the second
/// super/sub-diagonals populated (couplings.size() == N-2).
HamiltonianMatrix build_pentadiagonal_special(int n, const std::vector<ExactScalar>& couplings);
HamiltonianMatrix build_pentadiagonal_special(int n, const std::vector<double>& couplings);

/// Direct sum of elementary Jordan blocks J^(n_j)(eta).
HamiltonianMatrix build_jordan(const std::vector<int>& block_sizes, const Rational& eta,
                               Backend backend = Backend::Auto);

/// Connected components of the off-diagonal coupling graph.  Index sets are
/// sorted ascending (0-based); submatrices are the principal blocks.
struct CouplingComponent {
    std::vector<int> indices;
    HamiltonianMatrix matrix;
};
std::vector<CouplingComponent> split_by_coupling_graph(const HamiltonianMatrix& h);

/// Reproducible pseudo-random antisymmetric perturbation, float backend only.
HamiltonianMatrix add_antisymmetric_perturbation(const HamiltonianMatrix& h, double eps,
                                                 std::uint64_t seed);

/// One coupling family t in [0,1] -> H(t) built from a decomposition;
/// native coupling reported as native_scale * t (g = 2t for the toy).
class ModelFamily {
public:
    ModelFamily(Decomposition dec, Rational eta, double native_scale = 1.0);

    static ModelFamily toy7();

    const Decomposition& decomposition() const { return dec_; }
    const Rational& eta() const { return eta_; }
    double native_scale() const { return native_scale_; }
    int dim() const { return dec_.total_dimension; }

    /// Float evaluation; t > 1 is admitted here for EP bracketing.
    HamiltonianMatrix matrix(double t) const;
    /// Exact evaluation where representable (throws BackendError otherwise).
    HamiltonianMatrix matrix(const Rational& t, Backend backend = Backend::Auto) const;

private:
    Decomposition dec_;
    Rational eta_;
    double native_scale_;
};

} // namespace epn
