#include <doctest.h>

#include "epn/hamiltonian.hpp"
#include "epn/spectral.hpp"

#include <algorithm>
#include <random>
#include <set>

using namespace epn;

namespace {

const ExactScalar S2 = *exact_sqrt(2);
const ExactScalar S3 = *exact_sqrt(3);
const ExactScalar S6 = *exact_sqrt(6);

ExactMatrix mat(const std::vector<std::vector<ExactScalar>>& rows) {
    ExactMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
    return m;
}

Decomposition dec_of(int n, std::vector<BoxedSymbol> comps) {
    std::sort(comps.begin(), comps.end(), component_less);
    return Decomposition{n, std::move(comps)};
}

} // namespace

TEST_CASE("EPN limiting matrices, entrywise") {
    const ExactScalar o(1), z(0);
    CHECK(build_tao_ep(2, 1, 0).exact() == mat({{-o, o}, {-o, o}}));
    CHECK(build_tao_ep(3, 1, 0).exact() ==
          mat({{-2, S2, z}, {-S2, z, S2}, {z, -S2, 2}}));
    CHECK(build_tao_ep(4, 1, 0).exact() == mat({{-3, S3, z, z},
                                                {-S3, -1, 2, z},
                                                {z, -2, 1, S3},
                                                {z, z, -S3, 3}}));
    CHECK(build_tao_ep(5, 1, 0).exact() == mat({{-4, 2, z, z, z},
                                                {-2, -2, S6, z, z},
                                                {z, -S6, z, S6, z},
                                                {z, z, -S6, 2, 2},
                                                {z, z, z, -2, 4}}));
    // scaled component: c = 2 doubles every entry
    CHECK(build_tao_ep(3, 2, 0).exact() ==
          mat({{-4, ExactScalar(2) * S2, z}, {ExactScalar(-2) * S2, z, ExactScalar(2) * S2},
               {z, ExactScalar(-2) * S2, 4}}));
    // shifted: eta only moves the diagonal
    auto shifted = build_tao_ep(2, 5, 3).exact();
    CHECK(shifted == mat({{-2, 5}, {-5, 8}}));
}

TEST_CASE("build_tao validation and backend selection") {
    CHECK_THROWS_AS(build_tao(1, Rational(1), Rational(0), Rational(1)), std::domain_error);
    CHECK_THROWS_AS(build_tao(3, Rational(0), Rational(0), Rational(1)), std::domain_error);
    CHECK_THROWS_AS(build_tao(3, Rational(-1), Rational(0), Rational(1)), std::domain_error);
    CHECK_THROWS_AS(build_tao(3, Rational(1), Rational(0), Rational(-1, 2)), std::domain_error);
    CHECK_THROWS_AS(build_tao(3, Rational(1), Rational(0), Rational(3, 2)), std::domain_error);

    // k(n-k) stays in {1,...,6} up to n = 5: exact
    for (int n = 2; n <= 5; ++n) CHECK(build_tao(n, 1, 0, Rational(1, 2)).is_exact());
    // n = 6 needs sqrt5: Auto falls back, Exact refuses
    CHECK(!build_tao(6, 1, 0, Rational(1, 2)).is_exact());
    CHECK_THROWS_AS(build_tao(6, 1, 0, Rational(1, 2), Backend::Exact), BackendError);
    // the float overload never carries an exact matrix
    CHECK(!build_tao(3, 1.0, 0.0, 0.5).is_exact());
}

TEST_CASE("toy model structure") {
    CHECK_THROWS_AS(build_toy7(Rational(-1)), std::domain_error);

    auto h0 = build_toy7(Rational(0));
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) CHECK(h0(i, j) == (i == j ? 2.0 * i + 1.0 : 0.0));

    auto h = build_toy7(Rational(1));
    REQUIRE(h.is_exact());
    const auto& e = h.exact();
    CHECK(e(0, 2) == S3);
    CHECK(e(1, 3) == S2);
    CHECK(e(2, 4) == ExactScalar(2));
    CHECK(e(3, 5) == S2);
    CHECK(e(4, 6) == S3);
    CHECK(e(2, 0) == -S3);
    CHECK(e(0, 1).is_zero());
    CHECK(e(0, 3).is_zero());
    CHECK(h.antisymmetric_off_diagonal());

    // g > 2 admitted on purpose
    CHECK(build_toy7(Rational(5, 2)).is_exact());
    CHECK(build_toy7(2.5).dim() == 7);
}

TEST_CASE("toy model closed-form energies") {
    auto e0 = toy7_energies(0.0);
    for (int m = 0; m < 7; ++m) {
        CHECK(e0[m].real() == doctest::Approx(2.0 * m + 1.0).epsilon(1e-14));
        CHECK(e0[m].imag() == 0.0);
    }
    auto e2 = toy7_energies(2.0);
    for (const auto& v : e2) CHECK(std::abs(v - std::complex<double>(7.0)) < 1e-14);

    const double s3 = std::sqrt(3.0);
    auto e1 = toy7_energies(1.0);
    const double want[] = {7 - 3 * s3, 7 - 2 * s3, 7 - s3, 7, 7 + s3, 7 + 2 * s3, 7 + 3 * s3};
    for (int m = 0; m < 7; ++m) CHECK(e1[m].real() == doctest::Approx(want[m]).epsilon(1e-14));

    // beyond the critical coupling: three conjugate pairs around 7
    auto ec = toy7_energies(2.5);
    for (int m = 0; m < 7; ++m) CHECK(ec[m].real() == doctest::Approx(7.0).epsilon(1e-14));
    CHECK(ec[0].imag() == doctest::Approx(-ec[6].imag()).epsilon(1e-14));
    CHECK(std::abs(ec[3].imag()) < 1e-14);

    // kappa parametrization g = 2(1 - kappa^2) agrees with the g-form
    for (double kappa = 0.05; kappa < 1.0; kappa += 0.05) {
        auto a = toy7_energies_kappa(kappa);
        auto b = toy7_energies(2.0 * (1.0 - kappa * kappa));
        for (int m = 0; m < 7; ++m) CHECK(std::abs(a[m] - b[m]) < 1e-12);
    }
    auto k1 = toy7_energies_kappa(1.0);
    for (int m = 0; m < 7; ++m) CHECK(std::abs(k1[m] - e0[m]) < 1e-12);
}

TEST_CASE("toy model equals its direct-sum assembly") {
    auto dec = dec_of(7, {{4, 2, 0}, {3, 2, 0}});
    for (const Rational& g : {Rational(0), Rational(1, 2), Rational(1), Rational(2)}) {
        auto toy = build_toy7(g);
        auto sum = build_from_decomposition(dec, 7, g / 2);
        REQUIRE(sum.is_exact());
        CHECK(toy.exact() == sum.exact());
    }
    auto toyf = build_toy7(1.3);
    auto sumf = build_from_decomposition(dec, 7.0, 0.65);
    CHECK((toyf.dense() - sumf.dense()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("direct-sum assemblies reproduce the explicit anomalous matrices") {
    const ExactScalar z(0);
    const ExactScalar s22 = ExactScalar(2) * S2;

    // N=5, (3,c=1) + (2,c=4): nine-diagonal variant
    auto h5a = build_from_decomposition(dec_of(5, {{3, 1, 0}, {2, 4, 0}}), Rational(0), Rational(1));
    CHECK(h5a.exact() == mat({{-4, z, z, z, 4},
                              {z, -2, S2, z, z},
                              {z, -S2, z, S2, z},
                              {z, z, -S2, 2, z},
                              {-4, z, z, z, 4}}));

    // N=5, (3,c=2) + (2,c=2): pentadiagonal variant
    auto h5b = build_from_decomposition(dec_of(5, {{3, 2, 0}, {2, 2, 0}}), Rational(0), Rational(1));
    CHECK(h5b.exact() == mat({{-4, z, s22, z, z},
                              {z, -2, z, 2, z},
                              {-s22, z, z, z, s22},
                              {z, -2, z, 2, z},
                              {z, z, -s22, z, 4}}));

    // N=6, K=3
    auto h6 = build_from_decomposition(dec_of(6, {{2, 1, 0}, {2, 3, 0}, {2, 5, 0}}), Rational(0), Rational(1));
    CHECK(h6.exact() == mat({{-5, z, z, z, z, 5},
                             {z, -3, z, z, 3, z},
                             {z, z, -1, 1, z, z},
                             {z, z, -1, 1, z, z},
                             {z, -3, z, z, 3, z},
                             {-5, z, z, z, z, 5}}));

    // N=4, K=2.  The inner block follows the antisymmetric-coupling rule,
    // [[-1,1],[-1,1]]; one published rendering carries (0,1,-1,0) in the
    // second row instead, which is symmetric and not nilpotent.
    auto h4 = build_from_decomposition(dec_of(4, {{2, 1, 0}, {2, 3, 0}}), Rational(0), Rational(1));
    CHECK(h4.exact() == mat({{-3, z, z, 3},
                             {z, -1, 1, z},
                             {z, -1, 1, z},
                             {-3, z, z, 3}}));
}

TEST_CASE("direct-sum assembly at t=0 is the equidistant diagonal") {
    for (int n = 2; n <= 9; ++n) {
        for (const auto& dec : enumerate_decompositions(n)) {
            auto h = build_from_decomposition(dec, Rational(1, 3), 0);
            auto ds = diagonal_set(n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    double want = i == j ? to_double(Rational(1, 3)) + ds[i] : 0.0;
                    CHECK(std::abs(h(i, j) - want) < 1e-15 * (1.0 + std::abs(want)));
                }
        }
    }
    CHECK_THROWS(build_from_decomposition(Decomposition{4, {{2, 1, 0}, {2, 2, 0}}}, 0, 1));
}

TEST_CASE("tao spectrum formula") {
    for (int n = 2; n <= 10; ++n)
        for (int c = 1; c <= 3; ++c)
            // t = 1 excluded: at the defective point a float eigensolver is
            // only eps^(1/n) accurate
            for (double t : {0.0, 0.25, 0.5, 0.8, 0.95}) {
                auto rep = eigen(build_tao(n, double(c), 0.5, t));
                REQUIRE(rep.is_real);
                const double f = std::sqrt(1.0 - t * t);
                for (int m = 1; m <= n; ++m) {
                    double want = 0.5 + c * (2 * m - 1 - n) * f;
                    CHECK(std::abs(rep.eigenvalues[m - 1].real() - want) <
                          1e-7 * (1.0 + std::abs(want)));
                }
            }
}

TEST_CASE("pentadiagonal special model") {
    CHECK_THROWS(build_pentadiagonal_special(6, std::vector<double>{1.0, 2.0}));

    auto diag = build_pentadiagonal_special(6, std::vector<double>(4, 0.0));
    CHECK(diag.dense().isApprox(
        Eigen::Vector<double, 6>{-5, -3, -1, 1, 3, 5}.asDiagonal().toDenseMatrix()));

    // N=5 at the component EP couplings reproduces the anomalous
    // pentadiagonal matrix above
    auto p5 = build_pentadiagonal_special(5, std::vector<ExactScalar>{ExactScalar(2) * S2,
                                                                      ExactScalar(2),
                                                                      ExactScalar(2) * S2});
    auto h5b = build_from_decomposition(dec_of(5, {{3, 2, 0}, {2, 2, 0}}), Rational(0), Rational(1));
    CHECK(p5.exact() == h5b.exact());

    // N=7 version is the toy at g=2 with the diagonal shifted back to 0
    auto p7 = build_pentadiagonal_special(
        7, std::vector<ExactScalar>{ExactScalar(2) * S3, ExactScalar(2) * S2, ExactScalar(4),
                                    ExactScalar(2) * S2, ExactScalar(2) * S3});
    auto toy = build_toy7(Rational(2));
    ExactMatrix shift(7, 7);
    for (int i = 0; i < 7; ++i) shift(i, i) = ExactScalar(7);
    CHECK(p7.exact() == toy.exact() - shift);
}

TEST_CASE("jordan canonical builders") {
    auto j43 = build_jordan({4, 3}, 7);
    REQUIRE(j43.is_exact());
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) {
            double want = 0.0;
            if (i == j) want = 7.0;
            if (j == i + 1 && i != 3) want = 1.0;
            CHECK(j43(i, j) == want);
        }
    auto j22 = build_jordan({2, 2}, Rational(1, 2));
    CHECK(j22(0, 1) == 1.0);
    CHECK(j22(1, 2) == 0.0);
    CHECK(j22(2, 3) == 1.0);
    auto j1 = build_jordan({1}, 5);
    CHECK(j1.dim() == 1);
    CHECK(j1(0, 0) == 5.0);
}

TEST_CASE("coupling-graph split") {
    auto comps = split_by_coupling_graph(build_toy7(Rational(2)));
    REQUIRE(comps.size() == 2);
    CHECK(comps[0].indices == std::vector<int>{0, 2, 4, 6});
    CHECK(comps[1].indices == std::vector<int>{1, 3, 5});
    const ExactScalar z(0);
    const ExactScalar s23 = ExactScalar(2) * S3, s22 = ExactScalar(2) * S2;
    CHECK(comps[0].matrix.exact() == mat({{1, s23, z, z},
                                          {-s23, 5, 4, z},
                                          {z, -4, 9, s23},
                                          {z, z, -s23, 13}}));
    CHECK(comps[1].matrix.exact() == mat({{3, s22, z},
                                          {-s22, 7, s22},
                                          {z, -s22, 11}}));

    CHECK(split_by_coupling_graph(build_tao(5, 1, 0, Rational(1, 2))).size() == 1);

    auto h6 = build_from_decomposition(dec_of(6, {{2, 1, 0}, {2, 3, 0}, {2, 5, 0}}), Rational(0), Rational(1));
    auto c6 = split_by_coupling_graph(h6);
    REQUIRE(c6.size() == 3);
    for (const auto& c : c6) CHECK(c.matrix.dim() == 2);

    // assembly then split recovers the component partition
    for (int n = 4; n <= 8; ++n)
        for (const auto& dec : enumerate_decompositions(n, true)) {
            auto split = split_by_coupling_graph(build_from_decomposition(dec, 0, Rational(1, 2)));
            REQUIRE(split.size() == static_cast<size_t>(dec.K()));
            std::multiset<int> got, want;
            for (const auto& c : split) got.insert(c.matrix.dim());
            for (const auto& comp : dec.components) want.insert(comp.length);
            CHECK(got == want);
        }
}

TEST_CASE("antisymmetric perturbation injector") {
    auto base = build_toy7(1.0);
    auto same = add_antisymmetric_perturbation(base, 0.0, 42);
    CHECK(same.dense() == base.dense());

    auto p1 = add_antisymmetric_perturbation(base, 1e-3, 42);
    auto p2 = add_antisymmetric_perturbation(base, 1e-3, 42);
    auto p3 = add_antisymmetric_perturbation(base, 1e-3, 43);
    CHECK(p1.dense() == p2.dense());
    CHECK(p1.dense() != p3.dense());
    CHECK(p1.antisymmetric_off_diagonal(1e-15));
    CHECK((p1.dense() - base.dense()).cwiseAbs().maxCoeff() <= 1e-3);
    CHECK(p1.dense().diagonal() == base.dense().diagonal());

    CHECK_THROWS_AS(add_antisymmetric_perturbation(build_toy7(Rational(1)), 1e-3, 1),
                    BackendError);

    auto tiny = add_antisymmetric_perturbation(base, 1e-8, 7);
    auto r0 = eigen(base), r1 = eigen(tiny);
    CHECK(r1.is_real);
    for (int m = 0; m < 7; ++m)
        CHECK(std::abs(r1.eigenvalues[m] - r0.eigenvalues[m]) < 1e-3);
}

TEST_CASE("builder invariant: antisymmetric off-diagonal part") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> nd(2, 8), cd(1, 5), td(0, 8);
    for (int it = 0; it < 120; ++it) {
        int n = nd(rng);
        Rational c(cd(rng)), t(td(rng), 8);
        auto h = build_tao(n, c, Rational(cd(rng), 3), t);
        CHECK(h.antisymmetric_off_diagonal(1e-14));
        auto decs = enumerate_decompositions(n);
        const auto& dec = decs[it % decs.size()];
        CHECK(build_from_decomposition(dec, c, t).antisymmetric_off_diagonal(1e-14));
    }
}

TEST_CASE("model families") {
    auto fam = ModelFamily::toy7();
    CHECK(fam.dim() == 7);
    CHECK(fam.native_scale() == 2.0);
    CHECK(fam.decomposition().label() == "4x2,3x2");
    CHECK((fam.matrix(0.75).dense() - build_toy7(1.5).dense()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(fam.matrix(Rational(1)).exact() == build_toy7(Rational(2)).exact());
    // float path admits t > 1 so the EP can be bracketed from above
    CHECK(!eigen(fam.matrix(1.05)).is_real);
}
