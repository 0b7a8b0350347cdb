#include "qtau/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qtau/linalg.hpp"

namespace qtau {

namespace {

constexpr std::size_t kOracleSideCap = 16;
constexpr double kRankTol = 1e-12;

/// Column-major bundle of the m decomposition vectors xi_j (columns), plus
/// each column's contribution ||xi||^2 * C(xi / ||xi||).
struct Ensemble {
    std::size_t dim_a = 0, dim_b = 0;
    std::vector<std::vector<Complex>> cols;
    std::vector<double> contribs;

    double total() const {
        double s = 0.0;
        for (double c : contribs)
            s += c;
        return s;
    }
};

/// sqrt(2 (||xi||^4 - ||Phi Phi†||_F^2)) for the matricization Phi of xi:
/// the unnormalized pure-concurrence contribution, no normalization needed.
double contribution(const std::vector<Complex>& xi, std::size_t da, std::size_t db) {
    double norm_sq = 0.0;
    for (const Complex& z : xi)
        norm_sq += std::norm(z);
    if (norm_sq < 1e-30)
        return 0.0;
    double gram_sq = 0.0;
    for (std::size_t r = 0; r < da; ++r)
        for (std::size_t c = 0; c < da; ++c) {
            Complex acc{0.0, 0.0};
            for (std::size_t b = 0; b < db; ++b)
                acc += xi[r * db + b] * std::conj(xi[c * db + b]);
            gram_sq += std::norm(acc);
        }
    return std::sqrt(2.0 * std::max(0.0, norm_sq * norm_sq - gram_sq));
}

/// Haar-distributed m x r isometry (QR of a Gaussian matrix with the
/// R-diagonal phase fixed), stored row-major in a Matrix.
Matrix haar_isometry(std::size_t m, std::size_t r, SeededRng& rng) {
    Matrix g(m, r);
    for (Complex& z : g.data())
        z = rng.complex_gaussian();
    // Modified Gram-Schmidt.
    for (std::size_t c = 0; c < r; ++c) {
        for (std::size_t prev = 0; prev < c; ++prev) {
            Complex overlap{0.0, 0.0};
            for (std::size_t row = 0; row < m; ++row)
                overlap += std::conj(g(row, prev)) * g(row, c);
            for (std::size_t row = 0; row < m; ++row)
                g(row, c) -= overlap * g(row, prev);
        }
        double nrm = 0.0;
        for (std::size_t row = 0; row < m; ++row)
            nrm += std::norm(g(row, c));
        nrm = std::sqrt(nrm);
        for (std::size_t row = 0; row < m; ++row)
            g(row, c) /= nrm;
    }
    return g;
}

/// Columns xi_j = sum_i W(j,i) X(:,i) of the decomposition induced by the
/// isometry W (m x r) on the subnormalized eigenvector bundle X (d x r).
Ensemble build_ensemble(const Matrix& x, const Matrix& w, std::size_t da, std::size_t db) {
    const std::size_t d = x.rows();
    const std::size_t r = x.cols();
    const std::size_t m = w.rows();
    Ensemble e;
    e.dim_a = da;
    e.dim_b = db;
    e.cols.assign(m, std::vector<Complex>(d, Complex{0.0, 0.0}));
    e.contribs.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < r; ++i) {
            const Complex wji = w(j, i);
            if (wji == Complex{0.0, 0.0})
                continue;
            for (std::size_t row = 0; row < d; ++row)
                e.cols[j][row] += wji * x(row, i);
        }
        e.contribs[j] = contribution(e.cols[j], da, db);
    }
    return e;
}

/// exp of the 2x2 anti-Hermitian matrix i*(phi*I + vec·sigma):
/// e^{i phi} (cos(theta) I + i sin(theta)/theta * vec·sigma).
std::array<Complex, 4> exp_anti_hermitian_2x2(double h00, double h11, Complex h01) {
    const double phi = 0.5 * (h00 + h11);
    const double z = 0.5 * (h00 - h11);
    const double theta = std::sqrt(z * z + std::norm(h01));
    const Complex phase = std::polar(1.0, phi);
    if (theta < 1e-300)
        return {phase, Complex{0, 0}, Complex{0, 0}, phase};
    const double c = std::cos(theta);
    const double snc = std::sin(theta) / theta;
    const Complex i{0.0, 1.0};
    return {phase * (c + i * snc * z), phase * (i * snc * h01),
            phase * (i * snc * std::conj(h01)), phase * (c - i * snc * z)};
}

/// One greedy refinement pass over a starting ensemble. Mixes cheap
/// pair-plane rotations (7 of 8 steps) with full-matrix unitary moves.
double refine(Ensemble e, std::size_t steps, SeededRng& rng) {
    const std::size_t m = e.cols.size();
    const std::size_t d = e.cols.front().size();
    double current = e.total();
    double step = 0.05;
    int rejections = 0;

    auto after_reject = [&] {
        if (++rejections >= 20) {
            step *= 0.5;
            rejections = 0;
            if (step < 1e-7)
                step = 0.05;
        }
    };

    for (std::size_t it = 0; it < steps; ++it) {
        if (m >= 3 && it % 8 == 7) {
            // Full-matrix move: exp of a random anti-Hermitian K = iH.
            Matrix h(m, m);
            for (std::size_t p = 0; p < m; ++p) {
                h(p, p) = Complex{step * rng.gaussian(), 0.0};
                for (std::size_t q = p + 1; q < m; ++q) {
                    h(p, q) = step * rng.complex_gaussian();
                    h(q, p) = std::conj(h(p, q));
                }
            }
            const EigenResult eh = hermitian_eigen(h);
            Matrix omega(m, m);
            for (std::size_t p = 0; p < m; ++p)
                for (std::size_t q = 0; q < m; ++q) {
                    Complex acc{0.0, 0.0};
                    for (std::size_t s = 0; s < m; ++s)
                        acc += eh.eigenvectors(p, s) *
                               std::polar(1.0, eh.eigenvalues[s]) *
                               std::conj(eh.eigenvectors(q, s));
                    omega(p, q) = acc;
                }
            Ensemble trial = e;
            for (std::size_t row = 0; row < d; ++row) {
                for (std::size_t j = 0; j < m; ++j) {
                    Complex acc{0.0, 0.0};
                    for (std::size_t s = 0; s < m; ++s)
                        acc += omega(j, s) * e.cols[s][row];
                    trial.cols[j][row] = acc;
                }
            }
            for (std::size_t j = 0; j < m; ++j)
                trial.contribs[j] = contribution(trial.cols[j], e.dim_a, e.dim_b);
            const double value = trial.total();
            if (value < current) {
                e = std::move(trial);
                current = value;
                rejections = 0;
            } else {
                after_reject();
            }
            continue;
        }

        // Pair move on two randomly chosen decomposition elements.
        const std::size_t j = rng.below(m);
        std::size_t k = rng.below(m - 1);
        if (k >= j)
            ++k;
        const auto u = exp_anti_hermitian_2x2(step * rng.gaussian(), step * rng.gaussian(),
                                              step * rng.complex_gaussian());
        std::vector<Complex> vj(d), vk(d);
        for (std::size_t row = 0; row < d; ++row) {
            const Complex zj = e.cols[j][row];
            const Complex zk = e.cols[k][row];
            vj[row] = u[0] * zj + u[1] * zk;
            vk[row] = u[2] * zj + u[3] * zk;
        }
        const double cj = contribution(vj, e.dim_a, e.dim_b);
        const double ck = contribution(vk, e.dim_a, e.dim_b);
        if (cj + ck < e.contribs[j] + e.contribs[k]) {
            current += cj + ck - e.contribs[j] - e.contribs[k];
            e.cols[j] = std::move(vj);
            e.cols[k] = std::move(vk);
            e.contribs[j] = cj;
            e.contribs[k] = ck;
            rejections = 0;
        } else {
            after_reject();
        }
    }
    // incremental `current` only steers acceptance; report the exact total
    return e.total();
}

} // namespace

double convex_roof_upper(const DensityMatrix& rho, const OracleConfig& cfg) {
    if (!rho.dims().bipartite())
        throw InvalidInputError("convex_roof_upper: bipartite state required");
    if (rho.side() > kOracleSideCap)
        throw SizeLimitError("convex_roof_upper: side " + std::to_string(rho.side()) +
                             " exceeds the oracle cap " + std::to_string(kOracleSideCap));
    const std::size_t da = rho.dims().factor(0);
    const std::size_t db = rho.dims().factor(1);

    const EigenResult eig = hermitian_eigen(rho.mat());
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < eig.eigenvalues.size(); ++i)
        if (eig.eigenvalues[i] > kRankTol)
            kept.push_back(i);
    const std::size_t rank = kept.size();

    Matrix x(rho.side(), rank);
    for (std::size_t c = 0; c < rank; ++c) {
        const double w = std::sqrt(eig.eigenvalues[kept[c]]);
        for (std::size_t row = 0; row < rho.side(); ++row)
            x(row, c) = w * eig.eigenvectors(row, kept[c]);
    }

    if (rank == 1) {
        // Any decomposition of a pure state is the state itself.
        std::vector<Complex> col(rho.side());
        for (std::size_t row = 0; row < rho.side(); ++row)
            col[row] = x(row, 0);
        return contribution(col, da, db);
    }

    std::vector<std::size_t> sizes = cfg.decomposition_sizes;
    if (sizes.empty())
        sizes = {rank, rank + 1, rank + 2};
    for (std::size_t m : sizes)
        if (m < rank)
            throw InvalidInputError("convex_roof_upper: decomposition size " +
                                    std::to_string(m) + " below rank " + std::to_string(rank));

    // Sampling phase: best-first list of candidate isometries.
    struct Candidate {
        double value;
        Matrix isometry;
    };
    std::vector<Candidate> best;
    const std::size_t keep_n = std::max<std::size_t>(1, cfg.refine_restarts);
    const std::size_t per_size = std::max<std::size_t>(1, cfg.samples / sizes.size());
    std::size_t sample_index = 0;
    for (std::size_t m : sizes) {
        for (std::size_t s = 0; s < per_size; ++s, ++sample_index) {
            SeededRng rng(SeededRng::derive(cfg.seed, sample_index));
            Matrix w = haar_isometry(m, rank, rng);
            const double value = build_ensemble(x, w, da, db).total();
            if (best.size() < keep_n || value < best.back().value) {
                best.push_back({value, std::move(w)});
                std::sort(best.begin(), best.end(),
                          [](const Candidate& a, const Candidate& b) {
                              return a.value < b.value;
                          });
                if (best.size() > keep_n)
                    best.pop_back();
            }
        }
    }

    // Refinement phase: greedy improvement from the best few samples.
    double result = best.front().value;
    for (std::size_t restart = 0; restart < best.size(); ++restart) {
        SeededRng rng(SeededRng::derive(cfg.seed, (std::uint64_t{1} << 32) + restart));
        Ensemble e = build_ensemble(x, best[restart].isometry, da, db);
        result = std::min(result, refine(std::move(e), cfg.refine_steps, rng));
    }
    return result;
}

} // namespace qtau
