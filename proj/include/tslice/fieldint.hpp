#pragma once

#include "tslice/model.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <span>

namespace tslice {

// Direct evaluation of the L-slice auxiliary-field integral
//
//   Z_L = Tr prod_n  int d^N u_n  exp(-beta u_n.J^{-1}u_n / 4L) exp(beta u_n.A / L) / norm
//
// for the single spin (A = S, N = 3) and the spin-1/2 dimer (A = (S1, S2), N = 6).
// Each slice field is Gaussian with covariance 2 L J / beta. The coupling matrix is
// split into positive, zero and negative eigen-blocks: the zero block carries no field,
// the negative block is integrated along the imaginary axis (Channel::Mixed).

using Complex = std::complex<double>;

/// Field vector, at most six components, stored inline.
using FieldVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1, 0, 6, 1>;

enum class Channel { Real, Mixed };
enum class EstimateMethod { Quadrature, MonteCarlo };

/// Slice-average (default) or slice-1 form of the one-body energy estimator.
enum class EnergyEstimator { SliceAverage, FirstSlice };

/// Coupling between field components, H = -sum J_{mu nu} A_mu A_nu, with its eigen-split.
struct CouplingMatrix {
    Eigen::MatrixXd matrix;
    Eigen::VectorXd eigenvalues; // ascending
    Eigen::MatrixXd eigenvectors;

    /// Eigenvalues with |lambda| below this are the zero block.
    double zero_tolerance() const;
    Eigen::Index positive_count() const;
    Eigen::Index negative_count() const;
    Eigen::Index active_count() const { return positive_count() + negative_count(); }
};

/// J * 1_3 for the single spin; [[J', J], [J, J']] (x) 1_3 for the dimer
/// (components ordered S1x, S1y, S1z, S2x, S2y, S2z).
CouplingMatrix coupling_matrix(const ModelSpec& model);

/// exp(beta u.A / L) for one slice, K = 0. Dimension (2s+1) or 4.
Eigen::MatrixXcd slice_weight(const ModelSpec& model, const FieldVector& u, double beta);

/// u.A as a matrix on the spin Hilbert space.
Eigen::MatrixXcd field_coupling(const ModelSpec& model, const FieldVector& u);

/// exp(a.sigma / 2) for a complex 3-vector, from cosh/sinh of sqrt(a.a); no conjugation.
Eigen::Matrix2cd spin_half_exp(const Eigen::Vector3cd& a);

struct FieldIntegralEstimate {
    Complex value;
    double std_error = 0;      // of the real part
    double std_error_imag = 0; // of the imaginary part
    std::optional<double> avg_sign; // sum Re(w) / sum |Re(w)|; Monte Carlo only
    std::size_t n_samples = 0;
    std::size_t n_negative = 0; // samples with Re(w) < 0
    EstimateMethod method = EstimateMethod::Quadrature;
};

/// Maps a standard-normal vector z (one entry per active eigen-direction) to a slice
/// field u = T z with covariance 2 L J / beta; negative directions get a factor i.
class SliceFieldSampler {
public:
    SliceFieldSampler(const CouplingMatrix& coupling, double beta, unsigned L, Channel channel);

    Eigen::Index active_count() const { return transform_.cols(); }
    Eigen::Index field_dim() const { return transform_.rows(); }
    const Eigen::MatrixXcd& transform() const { return transform_; }

    FieldVector field(const Eigen::Ref<const Eigen::VectorXd>& z) const { return transform_ * z; }

    template <typename Rng>
    FieldVector draw(Rng& rng, Eigen::Ref<Eigen::VectorXd> z) const
    {
        std::normal_distribution<double> normal;
        for (Eigen::Index k = 0; k < z.size(); ++k) z(k) = normal(rng);
        return field(z);
    }

private:
    Eigen::MatrixXcd transform_;
};

/// Tensor-product Gauss-Hermite estimate of Z_L. The slices are independent under the
/// Gaussian measure, so the L-fold product rule equals Tr M^L with M the single-slice
/// matrix rule below. Requires a positive semidefinite coupling and N * L <= 6.
FieldIntegralEstimate quadrature_z(const ModelSpec& model, double beta, unsigned nodes_per_dim = 24,
                                   unsigned workers = 0);

/// Matrix-valued single-slice rule: sum_nodes w exp(beta u.A / L) ~ rho_1(beta / L).
Eigen::MatrixXcd quadrature_slice_matrix(const ModelSpec& model, double beta, unsigned nodes_per_dim,
                                         unsigned workers = 0);

/// Reference path: the full (nodes^{N_active L})-point product rule over all slices at once.
/// Only practical for small grids; used to check the factorised rule.
Complex quadrature_z_full_tensor(const ModelSpec& model, double beta, unsigned nodes_per_dim);

struct MonteCarloOptions {
    std::size_t n_samples = 1'000'000;
    std::uint64_t seed = 0;
    Channel channel = Channel::Real;
    unsigned workers = 0; // 0: hardware concurrency
    EnergyEstimator estimator = EnergyEstimator::SliceAverage;
};

/// Samples are processed in blocks of this many; block b draws from
/// std::mt19937_64(stream_seed(seed, b)), so results do not depend on the worker count.
inline constexpr std::size_t monte_carlo_block_size = 16384;

/// splitmix64 finaliser of master ^ (0x9E3779B97F4A7C15 * (index + 1)). Stable across releases.
std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index);

/// Independent sampling from the exact slice Gaussians; value is the mean trace.
FieldIntegralEstimate monte_carlo_z(const ModelSpec& model, double beta, const MonteCarloOptions& options);

/// U_L = -(N_active L / 2) T + <u.J^{-1}u/4 - u.A>, the one-body energy averaged with the
/// full integrand; ratio estimator with delta-method standard error.
FieldIntegralEstimate monte_carlo_u(const ModelSpec& model, double beta, const MonteCarloOptions& options);

enum class ZSource { ClosedForm, Quadrature };

/// Extrapolates Z_L to J' = 0 from a grid in the convergent region J' > |J|. The trivial
/// factor e^{beta J'/2} is divided out first; what remains is a polynomial in J' of degree
/// 2L, fitted by least squares and evaluated at J' = 0. The model's own Jprime is ignored.
double extrapolate_jprime(const ModelSpec& dimer, double beta, std::span<const double> jprime_grid, unsigned degree,
                          ZSource source = ZSource::ClosedForm, unsigned nodes_per_dim = 16);

} // namespace tslice
