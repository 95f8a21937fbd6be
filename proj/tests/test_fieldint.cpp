#include "tslice/fieldint.hpp"
#include "tslice/gauss_hermite.hpp"
#include "tslice/model.hpp"
#include "tslice/spin_dimer.hpp"
#include "tslice/spin_single.hpp"

#include <doctest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <random>

using namespace tslice;

namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }

const Rational half = make_rational(1, 2);

FieldVector real_field(std::initializer_list<double> xs)
{
    FieldVector u(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) u(i++) = x;
    return u;
}

MonteCarloOptions mc(std::size_t n, std::uint64_t seed, Channel channel = Channel::Real)
{
    MonteCarloOptions o;
    o.n_samples = n;
    o.seed = seed;
    o.channel = channel;
    o.workers = 1;
    return o;
}

bool within_sigma(const FieldIntegralEstimate& e, double exact, double k = 3)
{
    return std::abs(e.value.real() - exact) <= k * e.std_error;
}

} // namespace

TEST_CASE("gauss_hermite rule")
{
    const GaussHermiteRule r = gauss_hermite(12);
    double m0 = 0, m2 = 0, m4 = 0, m11 = 0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        const double x = r.nodes[i], w = r.weights[i];
        m0 += w;
        m2 += w * x * x;
        m4 += w * std::pow(x, 4);
        m11 += w * std::pow(x, 11);
    }
    CHECK(m0 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(m2 == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(m4 == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(std::abs(m11) < 1e-9);
}

TEST_CASE("coupling matrix")
{
    const CouplingMatrix single = coupling_matrix(single_spin_model(half, q(2), 1));
    CHECK(single.positive_count() == 3);
    CHECK(single.negative_count() == 0);

    const CouplingMatrix d = coupling_matrix(dimer_model(q(1), q(0), 1));
    CHECK(d.matrix(0, 3) == 1.0);
    CHECK(d.matrix(0, 0) == 0.0);
    CHECK(d.positive_count() == 3);
    CHECK(d.negative_count() == 3);

    const CouplingMatrix z = coupling_matrix(dimer_model(q(1), q(1), 1));
    CHECK(z.active_count() == 3);
    CHECK((z.matrix - z.matrix.transpose()).norm() == 0.0);
}

TEST_CASE("slice_weight")
{
    const ModelSpec s = single_spin_model(half, q(1), 2);
    CHECK(slice_weight(s, real_field({0, 0, 0}), 1.0).isApprox(Eigen::Matrix2cd::Identity()));

    const double beta = 1.3, h = 0.7;
    Eigen::Matrix2cd expected = Eigen::Matrix2cd::Zero();
    expected(0, 0) = std::exp(beta * h / 4);
    expected(1, 1) = std::exp(-beta * h / 4);
    CHECK((slice_weight(s, real_field({0, 0, h}), beta) - expected).norm() < 1e-14);

    std::mt19937_64 rng(5);
    std::normal_distribution<double> n(0, 2);
    for (int i = 0; i < 50; ++i) {
        FieldVector u = real_field({n(rng), n(rng), n(rng)});
        const double len = u.norm();
        CHECK(std::abs(slice_weight(s, u, beta).trace() - 2 * std::cosh(beta * len / 4)) < 1e-12);
    }

    const ModelSpec one = single_spin_model(q(1), q(1), 3);
    FieldVector u = real_field({0.4, -1.2, 0.9});
    const double a = 2.0 * u.norm() / 3;
    CHECK(std::abs(slice_weight(one, u, 2.0).trace() - (1 + 2 * std::cosh(a))) < 1e-12);

    const ModelSpec d = dimer_model(q(1), q(2), 1);
    FieldVector ud = real_field({0.3, 0.1, -0.2, 0.5, 0.0, 0.4});
    const Eigen::MatrixXcd w = slice_weight(d, ud, 1.0);
    const double l1 = std::sqrt(0.09 + 0.01 + 0.04), l2 = std::sqrt(0.25 + 0.16);
    CHECK(std::abs(w.trace() - 4 * std::cosh(l1 / 2) * std::cosh(l2 / 2)) < 1e-12);
}

TEST_CASE("spin_half_exp near zero field")
{
    for (double eps : {0.0, 1e-12, 1e-7, 1e-3, 0.5}) {
        Eigen::Vector3cd a(eps, -eps / 2, Complex(0, eps / 3));
        Eigen::Matrix2cd sigma_dot;
        sigma_dot << a(2), a(0) - Complex(0, 1) * a(1), a(0) + Complex(0, 1) * a(1), -a(2);
        const Eigen::Matrix2cd reference = (0.5 * sigma_dot).exp();
        CHECK((spin_half_exp(a) - reference).norm() < 1e-14);
    }
}

TEST_CASE("quadrature_z")
{
    const auto e1 = quadrature_z(single_spin_model(half, q(1), 1), 1.0, 24);
    CHECK(std::abs(e1.value.real() - exppoly_eval(spin_zl_exppoly(half, q(1), 1), 1.0)) < 1e-8);
    CHECK(e1.std_error == 0);
    CHECK_FALSE(e1.avg_sign.has_value());
    CHECK(e1.method == EstimateMethod::Quadrature);

    for (unsigned L : {1u, 2u})
        for (double beta : {0.5, 1.0, 2.0})
            CHECK(std::abs(quadrature_z(single_spin_model(half, q(1), L), beta).value.real() - spin_zl(half, q(1), L, beta)) < 1e-6);

    CHECK(quadrature_z(single_spin_model(half, q(1), 2), 0.0).value.real() == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(quadrature_z(dimer_model(q(1), q(2), 1), 0.0, 4).value.real() == doctest::Approx(4.0).epsilon(1e-14));

    // dimer J'=J: the zero block carries no field
    CHECK(std::abs(quadrature_z(dimer_model(q(1), q(1), 1), 1.0).value.real() - dimer_zl(q(1), q(1), 1, 1.0)) < 1e-6);
}

TEST_CASE("quadrature_z preconditions")
{
    try {
        quadrature_z(dimer_model(q(1), q(0), 1), 1.0);
        FAIL("expected an indefinite-coupling error");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("negative") != std::string::npos);
    }
    try {
        quadrature_z(single_spin_model(half, q(1), 3), 1.0);
        FAIL("expected a dimension error");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("monte_carlo_z") != std::string::npos);
    }
}

TEST_CASE("factorised rule equals the full tensor product")
{
    const ModelSpec s2 = single_spin_model(half, q(1), 2);
    CHECK(std::abs(quadrature_z(s2, 1.5, 6).value - quadrature_z_full_tensor(s2, 1.5, 6)) < 1e-12);
    const ModelSpec s1 = single_spin_model(q(1), q(1, 2), 1);
    CHECK(std::abs(quadrature_z(s1, 0.8, 9).value - quadrature_z_full_tensor(s1, 0.8, 9)) < 1e-12);
    const ModelSpec d1 = dimer_model(q(1), q(2), 1);
    CHECK(std::abs(quadrature_z(d1, 1.0, 4).value - quadrature_z_full_tensor(d1, 1.0, 4)) < 1e-12);
}

TEST_CASE("sampler covariance")
{
    for (const ModelSpec& m : {dimer_model(q(1), q(2), 2), single_spin_model(half, q(3, 2), 3)}) {
        const CouplingMatrix c = coupling_matrix(m);
        const double beta = 0.8;
        SliceFieldSampler sampler(c, beta, m.L, Channel::Real);
        const Eigen::Index n = sampler.field_dim();
        const Eigen::MatrixXd target = 2.0 * m.L * c.matrix / beta;
        std::mt19937_64 rng(11);
        Eigen::VectorXd z(sampler.active_count());
        const std::size_t N = 1'000'000;
        Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n, n), sumsq = Eigen::MatrixXd::Zero(n, n);
        for (std::size_t k = 0; k < N; ++k) {
            Eigen::VectorXd u = sampler.draw(rng, z).real();
            Eigen::MatrixXd outer = u * u.transpose();
            sum += outer;
            sumsq += outer.cwiseProduct(outer);
        }
        const Eigen::MatrixXd mean = sum / double(N);
        const Eigen::MatrixXd var = sumsq / double(N) - mean.cwiseProduct(mean);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) {
                double se = std::sqrt(var(i, j) / double(N)) + 1e-12;
                CHECK(std::abs(mean(i, j) - target(i, j)) <= 5 * se);
            }
    }
}

TEST_CASE("mixed channel puts an imaginary factor on the negative block")
{
    const CouplingMatrix c = coupling_matrix(dimer_model(q(1), q(0), 1));
    CHECK_THROWS_AS(SliceFieldSampler(c, 1.0, 1, Channel::Real), std::invalid_argument);
    SliceFieldSampler s(c, 1.0, 1, Channel::Mixed);
    // u.J^{-1}u/4 = (L / 2 beta)|z|^2 with the bilinear (unconjugated) product
    Eigen::VectorXd z = Eigen::VectorXd::LinSpaced(s.active_count(), -1.0, 1.3);
    FieldVector u = s.field(z);
    Eigen::MatrixXcd jinv = c.matrix.inverse().cast<Complex>();
    Complex quad = (u.transpose() * jinv * u)(0, 0) / 4.0;
    CHECK(std::abs(quad - Complex(z.squaredNorm() / 2.0, 0)) < 1e-12);
}

TEST_CASE("Monte Carlo determinism and worker independence")
{
    const ModelSpec m = dimer_model(q(1), q(2), 2);
    MonteCarloOptions a = mc(100'000, 42);
    const auto e1 = monte_carlo_z(m, 1.0, a);
    const auto e2 = monte_carlo_z(m, 1.0, a);
    CHECK(e1.value == e2.value);
    CHECK(e1.std_error == e2.std_error);
    a.workers = 3;
    const auto e3 = monte_carlo_z(m, 1.0, a);
    CHECK(e1.value == e3.value);
    CHECK(e1.std_error == e3.std_error);
    const auto u1 = monte_carlo_u(m, 1.0, mc(50'000, 9));
    a = mc(50'000, 9);
    a.workers = 4;
    CHECK(monte_carlo_u(m, 1.0, a).value == u1.value);

    CHECK(monte_carlo_z(m, 1.0, mc(100'000, 43)).value != e1.value);
    CHECK(stream_seed(0, 0) != stream_seed(0, 1));
    CHECK(stream_seed(1, 0) != stream_seed(0, 0));
    CHECK(stream_seed(0, 0) == 0xe220a8397b1dcdafULL);
    CHECK_THROWS_AS(monte_carlo_z(m, 1.0, mc(0, 1)), std::invalid_argument);
}

TEST_CASE("Monte Carlo agrees with the closed forms")
{
    const std::size_t n = 200'000;
    CHECK(within_sigma(monte_carlo_z(dimer_model(q(1), q(2), 2), 1.0, mc(n, 1)), dimer_zl(q(1), q(2), 2, 1.0)));

    const auto s3 = monte_carlo_z(single_spin_model(half, q(1), 3), 2.0, mc(n, 2));
    CHECK(within_sigma(s3, spin_zl(half, q(1), 3, 2.0)));
    REQUIRE(s3.avg_sign.has_value());
    CHECK(*s3.avg_sign < 1.0);
    CHECK(*s3.avg_sign > 0.99);

    const auto mixed = monte_carlo_z(dimer_model(q(1), q(0), 1), 1.0, mc(n, 3, Channel::Mixed));
    CHECK(within_sigma(mixed, dimer_zl(q(1), q(0), 1, 1.0)));
    CHECK(std::abs(mixed.value.imag()) <= 3 * mixed.std_error_imag + 1e-12);

    CHECK(within_sigma(monte_carlo_u(single_spin_model(half, q(1), 1), 1.0, mc(n, 4)), spin_ul(half, q(1), 1, 1.0)));
    CHECK(within_sigma(monte_carlo_u(dimer_model(q(1), q(2), 2), 1.0, mc(n, 5)), dimer_ul(q(1), q(2), 2, 1.0)));
    const auto hot = monte_carlo_u(dimer_model(q(1), q(2), 2), 0.01, mc(n, 6));
    CHECK(within_sigma(hot, dimer_ul(q(1), q(2), 2, 0.01)));
    CHECK(std::abs(hot.value.real() - to_double(dimer_levels(q(1), q(2)).triplet * 3 + dimer_levels(q(1), q(2)).singlet) / 4) <
          3 * hot.std_error + 0.05);
}

TEST_CASE("average sign")
{
    for (unsigned L : {1u, 2u})
        for (double beta : {0.5, 2.0, 5.0}) {
            const auto e = monte_carlo_z(single_spin_model(half, q(1), L), beta, mc(100'000, 7));
            REQUIRE(e.avg_sign.has_value());
            CHECK(*e.avg_sign == 1.0);
            CHECK(e.n_negative == 0);
        }

    const auto d1 = monte_carlo_z(dimer_model(q(1), q(0), 1), 1.0, mc(200'000, 8, Channel::Mixed));
    CHECK(*d1.avg_sign == 1.0);
    const auto d3 = monte_carlo_z(dimer_model(q(1), q(0), 3), 1.0, mc(200'000, 8, Channel::Mixed));
    CHECK(*d3.avg_sign < 1.0);
    CHECK(within_sigma(d3, dimer_zl(q(1), q(0), 3, 1.0)));
    CHECK(std::abs(d3.value.imag()) <= 4 * d3.std_error_imag);
}

TEST_CASE("slice-1 and slice-average energy estimators agree")
{
    const ModelSpec m = dimer_model(q(1), q(2), 2);
    MonteCarloOptions a = mc(200'000, 12);
    MonteCarloOptions b = a;
    b.estimator = EnergyEstimator::FirstSlice;
    const auto avg = monte_carlo_u(m, 1.0, a);
    const auto first = monte_carlo_u(m, 1.0, b);
    const double exact = dimer_ul(q(1), q(2), 2, 1.0);
    CHECK(within_sigma(avg, exact));
    CHECK(within_sigma(first, exact));
    CHECK(std::abs(avg.value.real() - first.value.real()) <= 3 * std::hypot(avg.std_error, first.std_error));
}

TEST_CASE("extrapolation in J' to zero")
{
    const ModelSpec d1 = dimer_model(q(1), q(0), 1);
    const double exact = dimer_zl(q(1), q(0), 1, 1.0);
    const std::vector<double> grid{1.5, 2.0, 2.5, 3.0};
    const std::vector<Rational> exact_grid{q(3, 2), q(2), q(5, 2), q(3)};
    const double x2 = extrapolate_jprime(d1, 1.0, grid, 2);
    CHECK(std::abs(x2 - exact) / exact < 1e-2);

    const ModelSpec d2 = dimer_model(q(1), q(0), 2);
    double lagrange = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double w = 1;
        for (std::size_t j = 0; j < grid.size(); ++j)
            if (j != i) w *= (0 - grid[j]) / (grid[i] - grid[j]);
        lagrange += w * dimer_zl(q(1), exact_grid[i], 2, 1.0) * std::exp(-grid[i] / 2);
    }
    CHECK(extrapolate_jprime(d2, 1.0, grid, 3) == doctest::Approx(lagrange).epsilon(1e-10));

    const double exact2 = dimer_zl(q(1), q(0), 2, 1.0);
    double previous = INFINITY;
    for (unsigned degree = 1; degree <= 3; ++degree) {
        double err = std::abs(extrapolate_jprime(d2, 1.0, grid, degree) - exact2);
        CHECK(err < previous);
        previous = err;
    }

    const std::vector<double> coarse{1.5, 2.0, 3.0};
    CHECK(extrapolate_jprime(d1, 1.0, coarse, 2, ZSource::Quadrature, 12) ==
          doctest::Approx(extrapolate_jprime(d1, 1.0, coarse, 2)).epsilon(1e-6));
    const std::vector<double> bad{0.5, 2.0, 3.0};
    CHECK_THROWS_AS(extrapolate_jprime(d1, 1.0, bad, 1), std::invalid_argument);
    CHECK_THROWS_AS(extrapolate_jprime(d1, 1.0, grid, 4), std::invalid_argument);
}
