#include "tslice/fieldint.hpp"

#include "tslice/gauss_hermite.hpp"
#include "tslice/spin_dimer.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace tslice {

namespace {

template <int Dim>
using CMat = Eigen::Matrix<Complex, Dim, Dim>;

const Complex I_unit(0, 1);

Eigen::Matrix2cd sigma_dot(const Eigen::Vector3cd& a)
{
    Eigen::Matrix2cd m;
    m << a(2), a(0) - I_unit * a(1), a(0) + I_unit * a(1), -a(2);
    return m;
}

CMat<4> kron(const CMat<2>& a, const CMat<2>& b)
{
    CMat<4> k;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) k.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return k;
}

struct SpinHalfKernel {
    static constexpr int Dim = 2;
    Eigen::Index dim() const { return 2; }
    CMat<2> weight(const FieldVector& a) const { return spin_half_exp(a.head<3>()); }
    CMat<2> coupling(const FieldVector& u) const { return 0.5 * sigma_dot(u.head<3>()); }
};

struct DimerKernel {
    static constexpr int Dim = 4;
    Eigen::Index dim() const { return 4; }
    CMat<4> weight(const FieldVector& a) const
    {
        return kron(spin_half_exp(a.head<3>()), spin_half_exp(a.tail<3>()));
    }
    CMat<4> coupling(const FieldVector& u) const
    {
        const CMat<2> id = CMat<2>::Identity();
        return kron(0.5 * sigma_dot(u.head<3>()), id) + kron(id, 0.5 * sigma_dot(u.tail<3>()));
    }
};

// Spin s > 1/2: spin matrices in the |m = s>, ..., |m = -s> basis, weight by matrix exponential.
struct GeneralSpinKernel {
    static constexpr int Dim = Eigen::Dynamic;
    std::array<Eigen::MatrixXcd, 3> S;

    explicit GeneralSpinKernel(const Rational& s)
    {
        const double spin = to_double(s);
        const Eigen::Index n = static_cast<Eigen::Index>(std::lround(2 * spin)) + 1;
        Eigen::MatrixXcd raise = Eigen::MatrixXcd::Zero(n, n);
        Eigen::MatrixXcd sz = Eigen::MatrixXcd::Zero(n, n);
        for (Eigen::Index k = 0; k < n; ++k) {
            double m = spin - static_cast<double>(k);
            sz(k, k) = m;
            if (k > 0) raise(k - 1, k) = std::sqrt(spin * (spin + 1) - m * (m + 1));
        }
        Eigen::MatrixXcd lower = raise.adjoint();
        S = {0.5 * (raise + lower), (raise - lower) / (2.0 * I_unit), sz};
    }

    Eigen::Index dim() const { return S[2].rows(); }
    Eigen::MatrixXcd coupling(const FieldVector& u) const { return u(0) * S[0] + u(1) * S[1] + u(2) * S[2]; }
    Eigen::MatrixXcd weight(const FieldVector& a) const { return coupling(a).exp(); }
};

template <typename F>
decltype(auto) with_kernel(const ModelSpec& model, F&& f)
{
    validate(model);
    switch (model.kind) {
    case ModelKind::SingleSpin:
        if (model.s == Rational(1, 2)) return f(SpinHalfKernel{});
        return f(GeneralSpinKernel(model.s));
    case ModelKind::Dimer: return f(DimerKernel{});
    case ModelKind::Sho: break;
    }
    throw std::invalid_argument("auxiliary-field integrals are defined for the spin models only");
}

template <typename Kernel>
auto identity(const Kernel& k)
{
    using M = CMat<Kernel::Dim>;
    return M(M::Identity(k.dim(), k.dim()));
}

unsigned resolve_workers(unsigned requested, std::size_t jobs)
{
    unsigned w = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(w, jobs)));
}

// Runs job(i) for i in [0, jobs) over the workers; job must write only its own slot.
template <typename Job>
void run_partitioned(std::size_t jobs, unsigned workers, Job&& job)
{
    unsigned w = resolve_workers(workers, jobs);
    if (w == 1) {
        for (std::size_t i = 0; i < jobs; ++i) job(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(w);
    for (unsigned t = 0; t < w; ++t)
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < jobs; i += w) job(i);
        });
    for (auto& th : pool) th.join();
}

void require_beta(double beta)
{
    if (!(beta > 0) || !std::isfinite(beta)) throw std::domain_error("beta must be positive and finite");
}

std::string describe_negative_block(const CouplingMatrix& c)
{
    std::string out;
    for (Eigen::Index i = 0; i < c.eigenvalues.size(); ++i)
        if (c.eigenvalues(i) < -c.zero_tolerance()) {
            if (!out.empty()) out += ", ";
            out += std::to_string(c.eigenvalues(i));
        }
    return out;
}

} // namespace

Eigen::Matrix2cd spin_half_exp(const Eigen::Vector3cd& a)
{
    const Complex q2 = (a.array() * a.array()).sum(); // bilinear a.a, complex for imaginary fields
    const Complex q = std::sqrt(q2);
    Complex c, sh;
    if (std::abs(q) < 1e-6) {
        c = 1.0 + q2 / 8.0;
        sh = 0.5 + q2 / 48.0;
    } else {
        c = std::cosh(0.5 * q);
        sh = std::sinh(0.5 * q) / q;
    }
    return c * Eigen::Matrix2cd::Identity() + sh * sigma_dot(a);
}

double CouplingMatrix::zero_tolerance() const
{
    double scale = eigenvalues.size() ? eigenvalues.cwiseAbs().maxCoeff() : 0.0;
    return 1e-12 * std::max(scale, 1e-300);
}

Eigen::Index CouplingMatrix::positive_count() const
{
    return (eigenvalues.array() > zero_tolerance()).count();
}

Eigen::Index CouplingMatrix::negative_count() const
{
    return (eigenvalues.array() < -zero_tolerance()).count();
}

CouplingMatrix coupling_matrix(const ModelSpec& model)
{
    validate(model);
    CouplingMatrix c;
    const Eigen::Matrix3d id = Eigen::Matrix3d::Identity();
    switch (model.kind) {
    case ModelKind::SingleSpin: c.matrix = to_double(model.J) * id; break;
    case ModelKind::Dimer: {
        c.matrix.resize(6, 6);
        const double j = to_double(model.J), jp = to_double(model.Jprime);
        c.matrix << jp * id, j * id, j * id, jp * id;
        break;
    }
    case ModelKind::Sho: throw std::invalid_argument("the oscillator has no auxiliary-field coupling matrix");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(c.matrix);
    c.eigenvalues = solver.eigenvalues();
    c.eigenvectors = solver.eigenvectors();
    return c;
}

Eigen::MatrixXcd slice_weight(const ModelSpec& model, const FieldVector& u, double beta)
{
    const FieldVector a = (beta / model.L) * u;
    return with_kernel(model, [&](const auto& k) { return Eigen::MatrixXcd(k.weight(a)); });
}

Eigen::MatrixXcd field_coupling(const ModelSpec& model, const FieldVector& u)
{
    return with_kernel(model, [&](const auto& k) { return Eigen::MatrixXcd(k.coupling(u)); });
}

SliceFieldSampler::SliceFieldSampler(const CouplingMatrix& coupling, double beta, unsigned L, Channel channel)
{
    require_beta(beta);
    if (channel == Channel::Real && coupling.negative_count() > 0)
        throw std::invalid_argument("coupling matrix has a negative block (eigenvalues " +
                                    describe_negative_block(coupling) +
                                    "); the real channel needs a positive semidefinite coupling, use the mixed channel");

    const double tol = coupling.zero_tolerance();
    transform_.resize(coupling.matrix.rows(), coupling.active_count());
    Eigen::Index col = 0;
    for (Eigen::Index j = 0; j < coupling.eigenvalues.size(); ++j) {
        const double lambda = coupling.eigenvalues(j);
        if (std::abs(lambda) <= tol) continue;
        const Complex scale = std::sqrt(2.0 * L * std::abs(lambda) / beta) * (lambda < 0 ? I_unit : Complex(1));
        transform_.col(col++) = scale * coupling.eigenvectors.col(j).cast<Complex>();
    }
}

namespace {

template <typename Kernel>
CMat<Kernel::Dim> slice_rule(const Kernel& kernel, const SliceFieldSampler& sampler, double beta, unsigned L,
                             unsigned nodes, unsigned workers)
{
    using M = CMat<Kernel::Dim>;
    const Eigen::Index d = sampler.active_count();
    if (d == 0) return identity(kernel);

    const GaussHermiteRule rule = gauss_hermite(nodes);
    const double step = beta / L;

    // Partial sums per leading node index, merged in index order.
    std::vector<M> partial(nodes, identity(kernel));
    run_partitioned(nodes, workers, [&](std::size_t i0) {
        M acc = identity(kernel);
        acc.setZero();
        std::vector<unsigned> idx(static_cast<std::size_t>(d), 0);
        idx[0] = static_cast<unsigned>(i0);
        while (true) {
            FieldVector u = FieldVector::Zero(sampler.field_dim());
            double w = 1;
            for (Eigen::Index k = 0; k < d; ++k) {
                u += rule.nodes[idx[k]] * sampler.transform().col(k);
                w *= rule.weights[idx[k]];
            }
            acc += w * kernel.weight(step * u);

            Eigen::Index k = d - 1;
            while (k >= 1 && ++idx[k] == nodes) idx[k--] = 0;
            if (k == 0) break;
        }
        partial[i0] = acc;
    });

    M total = partial[0];
    for (unsigned i = 1; i < nodes; ++i) total += partial[i];
    return total;
}

void check_quadrature_domain(const ModelSpec& model, const CouplingMatrix& coupling)
{
    if (coupling.negative_count() > 0)
        throw std::invalid_argument("quadrature needs a positive semidefinite coupling; negative block eigenvalues " +
                                    describe_negative_block(coupling) + " (use monte_carlo_z with the mixed channel)");
    const auto dims = static_cast<unsigned long>(coupling.matrix.rows()) * model.L;
    if (dims > 6)
        throw std::invalid_argument("quadrature dimension N*L = " + std::to_string(dims) +
                                    " exceeds 6; use monte_carlo_z");
}

} // namespace

Eigen::MatrixXcd quadrature_slice_matrix(const ModelSpec& model, double beta, unsigned nodes_per_dim, unsigned workers)
{
    const CouplingMatrix coupling = coupling_matrix(model);
    if (beta == 0) return with_kernel(model, [](const auto& k) { return Eigen::MatrixXcd(identity(k)); });
    const SliceFieldSampler sampler(coupling, beta, model.L, Channel::Real);
    return with_kernel(model, [&](const auto& k) {
        return Eigen::MatrixXcd(slice_rule(k, sampler, beta, model.L, nodes_per_dim, workers));
    });
}

FieldIntegralEstimate quadrature_z(const ModelSpec& model, double beta, unsigned nodes_per_dim, unsigned workers)
{
    const CouplingMatrix coupling = coupling_matrix(model);
    check_quadrature_domain(model, coupling);
    const Eigen::MatrixXcd slice = quadrature_slice_matrix(model, beta, nodes_per_dim, workers);

    Eigen::MatrixXcd rho = slice;
    for (unsigned n = 1; n < model.L; ++n) rho = rho * slice;

    FieldIntegralEstimate est;
    est.value = rho.trace();
    est.method = EstimateMethod::Quadrature;
    est.n_samples = 1;
    for (Eigen::Index k = 0; k < coupling.active_count() * model.L; ++k) est.n_samples *= nodes_per_dim;
    return est;
}

Complex quadrature_z_full_tensor(const ModelSpec& model, double beta, unsigned nodes_per_dim)
{
    const CouplingMatrix coupling = coupling_matrix(model);
    const SliceFieldSampler sampler(coupling, beta, model.L, Channel::Real);
    const GaussHermiteRule rule = gauss_hermite(nodes_per_dim);
    const Eigen::Index d = sampler.active_count();
    const unsigned L = model.L;
    const double step = beta / L;

    return with_kernel(model, [&](const auto& kernel) {
        const std::size_t dims = static_cast<std::size_t>(d) * L;
        std::vector<unsigned> idx(dims, 0);
        Complex total = 0;
        while (true) {
            auto product = identity(kernel);
            double w = 1;
            for (unsigned n = 0; n < L; ++n) {
                FieldVector u = FieldVector::Zero(sampler.field_dim());
                for (Eigen::Index k = 0; k < d; ++k) {
                    const unsigned i = idx[n * d + k];
                    u += rule.nodes[i] * sampler.transform().col(k);
                    w *= rule.weights[i];
                }
                product = (product * kernel.weight(step * u)).eval();
            }
            total += w * product.trace();

            std::size_t k = 0;
            while (k < dims && ++idx[k] == nodes_per_dim) idx[k++] = 0;
            if (k == dims) break;
        }
        return total;
    });
}

std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index)
{
    std::uint64_t z = master ^ (0x9E3779B97F4A7C15ULL * (index + 1));
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

struct BlockSums {
    std::size_t n = 0;
    std::size_t negative = 0;
    double re = 0, re2 = 0, im = 0, im2 = 0, abs_re = 0;
    // energy numerator h and its cross moment with Re(trace)
    double h_re = 0, h_im = 0, h_re2 = 0, h_re_t = 0;

    void merge(const BlockSums& b)
    {
        n += b.n;
        negative += b.negative;
        re += b.re;
        re2 += b.re2;
        im += b.im;
        im2 += b.im2;
        abs_re += b.abs_re;
        h_re += b.h_re;
        h_im += b.h_im;
        h_re2 += b.h_re2;
        h_re_t += b.h_re_t;
    }
};

template <typename Kernel>
BlockSums run_block(const Kernel& kernel, const SliceFieldSampler& sampler, double beta, unsigned L,
                    std::uint64_t seed, std::size_t count, bool energy, EnergyEstimator estimator)
{
    using M = CMat<Kernel::Dim>;
    std::mt19937_64 rng(seed);
    const double step = beta / L;
    const Eigen::Index d = sampler.active_count();

    Eigen::MatrixXd z(d, L);
    std::vector<FieldVector> u(L);
    std::vector<M> w(L), prefix(L + 1), suffix(L + 1);
    const unsigned energy_slices = estimator == EnergyEstimator::FirstSlice ? 1 : L;

    BlockSums sums;
    for (std::size_t s = 0; s < count; ++s) {
        prefix[0] = identity(kernel);
        for (unsigned n = 0; n < L; ++n) {
            u[n] = sampler.draw(rng, z.col(n));
            w[n] = kernel.weight(step * u[n]);
            prefix[n + 1] = prefix[n] * w[n];
        }
        const Complex trace = prefix[L].trace();
        const double tr = trace.real();
        sums.n += 1;
        sums.re += tr;
        sums.re2 += tr * tr;
        sums.im += trace.imag();
        sums.im2 += trace.imag() * trace.imag();
        sums.abs_re += std::abs(tr);
        if (tr < 0) sums.negative += 1;

        if (!energy) continue;
        suffix[L] = identity(kernel);
        for (unsigned n = L; n-- > 0;) suffix[n] = w[n] * suffix[n + 1];
        Complex h = 0;
        for (unsigned n = 0; n < energy_slices; ++n) {
            // u.J^{-1}u / 4 = (L / 2 beta) |z|^2 for u = T z
            const double gaussian = L / (2 * beta) * z.col(n).squaredNorm();
            const Complex coupled = (prefix[n] * kernel.coupling(u[n]) * w[n] * suffix[n + 1]).trace();
            h += gaussian * trace - coupled;
        }
        h /= static_cast<double>(energy_slices);
        sums.h_re += h.real();
        sums.h_im += h.imag();
        sums.h_re2 += h.real() * h.real();
        sums.h_re_t += h.real() * tr;
    }
    return sums;
}

struct MonteCarloRun {
    BlockSums sums;
    Eigen::Index active = 0;
};

MonteCarloRun run_monte_carlo(const ModelSpec& model, double beta, const MonteCarloOptions& options, bool energy)
{
    if (options.n_samples == 0) throw std::invalid_argument("Monte Carlo needs a positive sample count");
    const CouplingMatrix coupling = coupling_matrix(model);
    const SliceFieldSampler sampler(coupling, beta, model.L, options.channel);

    const std::size_t blocks = (options.n_samples + monte_carlo_block_size - 1) / monte_carlo_block_size;
    std::vector<BlockSums> per_block(blocks);
    with_kernel(model, [&](const auto& kernel) {
        run_partitioned(blocks, options.workers, [&](std::size_t b) {
            const std::size_t begin = b * monte_carlo_block_size;
            const std::size_t count = std::min(monte_carlo_block_size, options.n_samples - begin);
            per_block[b] = run_block(kernel, sampler, beta, model.L, stream_seed(options.seed, b), count, energy,
                                     options.estimator);
        });
        return 0;
    });

    MonteCarloRun run;
    for (const auto& b : per_block) run.sums.merge(b);
    run.active = sampler.active_count();
    return run;
}

double sample_error(double sum, double sum2, std::size_t n)
{
    if (n < 2) return 0;
    const double mean = sum / n;
    const double var = std::max(0.0, (sum2 - n * mean * mean) / (n - 1));
    return std::sqrt(var / n);
}

} // namespace

FieldIntegralEstimate monte_carlo_z(const ModelSpec& model, double beta, const MonteCarloOptions& options)
{
    const auto run = run_monte_carlo(model, beta, options, false);
    const auto& s = run.sums;
    FieldIntegralEstimate est;
    est.method = EstimateMethod::MonteCarlo;
    est.n_samples = s.n;
    est.n_negative = s.negative;
    est.value = Complex(s.re / s.n, s.im / s.n);
    est.std_error = sample_error(s.re, s.re2, s.n);
    est.std_error_imag = sample_error(s.im, s.im2, s.n);
    if (s.abs_re > 0) est.avg_sign = s.re / s.abs_re;
    return est;
}

FieldIntegralEstimate monte_carlo_u(const ModelSpec& model, double beta, const MonteCarloOptions& options)
{
    const auto run = run_monte_carlo(model, beta, options, true);
    const auto& s = run.sums;
    const double n = static_cast<double>(s.n);
    const double offset = -static_cast<double>(run.active) * model.L / (2 * beta);
    const double ratio = s.h_re / s.re;

    FieldIntegralEstimate est;
    est.method = EstimateMethod::MonteCarlo;
    est.n_samples = s.n;
    est.n_negative = s.negative;
    est.value = offset + Complex(s.h_re, s.h_im) / Complex(s.re, s.im);
    if (s.n > 1) {
        // delta method for a ratio of means: residual r = h - ratio * t has zero mean
        const double resid2 = s.h_re2 - 2 * ratio * s.h_re_t + ratio * ratio * s.re2;
        est.std_error = std::sqrt(std::max(0.0, resid2 / (n - 1)) / n) / std::abs(s.re / n);
    }
    if (s.abs_re > 0) est.avg_sign = s.re / s.abs_re;
    return est;
}

double extrapolate_jprime(const ModelSpec& dimer, double beta, std::span<const double> jprime_grid, unsigned degree,
                          ZSource source, unsigned nodes_per_dim)
{
    if (dimer.kind != ModelKind::Dimer) throw std::invalid_argument("J' extrapolation applies to the dimer");
    const double j = std::abs(to_double(dimer.J));
    std::vector<double> grid(jprime_grid.begin(), jprime_grid.end());
    std::sort(grid.begin(), grid.end());
    const auto distinct = std::unique(grid.begin(), grid.end()) - grid.begin();
    if (static_cast<std::size_t>(distinct) < degree + 1u || jprime_grid.size() <= degree)
        throw std::invalid_argument("degenerate J' grid: need more distinct points than the fit degree");
    for (double jp : jprime_grid)
        if (!(jp > j)) throw std::invalid_argument("every grid J' must exceed |J| (convergent region)");

    const Eigen::Index rows = static_cast<Eigen::Index>(jprime_grid.size());
    Eigen::MatrixXd vandermonde(rows, degree + 1);
    Eigen::VectorXd values(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const double jp = jprime_grid[static_cast<std::size_t>(i)];
        double p = 1;
        for (unsigned k = 0; k <= degree; ++k, p *= jp) vandermonde(i, k) = p;
        const Rational jp_exact(jp);
        const double z = source == ZSource::ClosedForm
                             ? dimer_zl(dimer.J, jp_exact, dimer.L, beta)
                             : quadrature_z(dimer_model(dimer.J, jp_exact, dimer.L), beta, nodes_per_dim).value.real();
        values(i) = z * std::exp(-beta * jp / 2);
    }
    const Eigen::VectorXd coeffs = vandermonde.colPivHouseholderQr().solve(values);
    return coeffs(0);
}

} // namespace tslice
