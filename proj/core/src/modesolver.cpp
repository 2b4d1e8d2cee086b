#include "phxmem/modesolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>

namespace phxmem {

namespace {
using SparseC = Eigen::SparseMatrix<complexd>;
using VectorC = Eigen::VectorXcd;
} // namespace

IndexMap build_index_map(const MaterialDb& db, const CrossSection& xs,
                         const std::string& pcm_material, double wl_nm, Fraction p) {
    xs.validate();
    const bool has_pcm = xs.pcm_thickness_nm > 0.0;
    if (has_pcm && pcm_material.empty())
        throw ConfigError("cross-section has a PCM film but no PCM material was given");

    const complexd n_core = lookup_nk(db.get(xs.core_material), Phase::amorphous, wl_nm);
    const complexd n_sub = lookup_nk(db.get(xs.substrate_material), Phase::amorphous, wl_nm);
    const complexd n_clad = lookup_nk(db.get(xs.cladding_material), Phase::amorphous, wl_nm);
    const complexd n_pcm =
        has_pcm ? effective_index(db.get(pcm_material), p, wl_nm) : complexd{0.0, 0.0};

    const RectUm core = xs.core_rect();
    const RectUm pcm = xs.pcm_rect();
    const double h = xs.pitch_um();

    IndexMap map;
    map.nx = xs.nx();
    map.ny = xs.ny();
    map.pitch_um = h;
    map.index.resize(static_cast<size_t>(map.nx) * map.ny);
    map.background_index = std::max(n_sub.real(), n_clad.real());

    for (int j = 0; j < map.ny; ++j) {
        const double y = (j + 0.5) * h;
        for (int i = 0; i < map.nx; ++i) {
            const double x = (i + 0.5) * h;
            complexd n = y < core.y0 ? n_sub : n_clad;
            if (core.contains(x, y))
                n = n_core;
            else if (has_pcm && pcm.contains(x, y))
                n = n_pcm;
            map.at(i, j) = n;
        }
    }
    return map;
}

namespace {

SparseC assemble_helmholtz(const IndexMap& map, double k0) {
    const int nx = map.nx, ny = map.ny;
    const auto n = static_cast<Eigen::Index>(map.size());
    const double inv_h2 = 1.0 / (map.pitch_um * map.pitch_um);

    std::vector<Eigen::Triplet<complexd>> trips;
    trips.reserve(static_cast<size_t>(n) * 5);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const Eigen::Index idx = static_cast<Eigen::Index>(j) * nx + i;
            const complexd nij = map.at(i, j);
            trips.emplace_back(idx, idx, -4.0 * inv_h2 + k0 * k0 * nij * nij);
            if (i > 0) trips.emplace_back(idx, idx - 1, inv_h2);
            if (i < nx - 1) trips.emplace_back(idx, idx + 1, inv_h2);
            if (j > 0) trips.emplace_back(idx, idx - nx, inv_h2);
            if (j < ny - 1) trips.emplace_back(idx, idx + nx, inv_h2);
        }
    }
    SparseC A(n, n);
    A.setFromTriplets(trips.begin(), trips.end());
    A.makeCompressed();
    return A;
}

/// Smallest-magnitude eigenvalue of the discrete Dirichlet Laplacian on the
/// window; the unavoidable confinement term a uniform map carries.
double box_ground_eigenvalue(int nx, int ny, double h) {
    auto lam1 = [&](int n) {
        const double s = std::sin(std::numbers::pi / (2.0 * (n + 1)));
        return 4.0 * s * s / (h * h);
    };
    return lam1(nx) + lam1(ny);
}

} // namespace

ModeSolution solve_fundamental_mode(const IndexMap& map, double wl_nm, const SolveOptions& opts) {
    if (map.nx < 3 || map.ny < 3 || map.size() != static_cast<size_t>(map.nx) * map.ny)
        throw ConfigError("index map has invalid dimensions");
    for (const complexd& v : map.index)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw SolverError("index map contains non-finite entries");

    const double k0 = 2.0 * std::numbers::pi / (wl_nm * 1e-3);
    double n_max = 0.0;
    for (const complexd& v : map.index) n_max = std::max(n_max, v.real());
    if (!(n_max > 0.0))
        throw ConfigError("index map has no positive refractive index");

    const SparseC A = assemble_helmholtz(map, k0);
    const auto n = static_cast<Eigen::Index>(map.size());

    complexd shift = k0 * k0 * opts.shift_factor * opts.shift_factor * n_max * n_max;
    Eigen::SparseLU<SparseC, Eigen::COLAMDOrdering<int>> lu;
    auto factorize = [&](complexd sigma) {
        SparseC B = A;
        for (Eigen::Index idx = 0; idx < n; ++idx) B.coeffRef(idx, idx) -= sigma;
        lu.compute(B);
        if (lu.info() != Eigen::Success)
            throw SolverError("shift-invert factorization failed");
    };
    factorize(shift);

    std::mt19937 rng(opts.seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    VectorC v(n);
    for (Eigen::Index idx = 0; idx < n; ++idx) v[idx] = complexd(uni(rng), 0.0);
    v.normalize();

    // Restarted shift-invert Arnoldi. The initial shift sits above the whole
    // spectrum, so the eigenvalue nearest to it is the one with the largest
    // real part; each restart moves the shift just above the best Ritz value,
    // which keeps that ordering while making the contraction fast.
    const int basis_max = std::max(5, opts.basis_size);
    complexd mu = 0.0;
    double residual = std::numeric_limits<double>::infinity();
    int solves = 0;
    bool converged = false;

    Eigen::MatrixXcd Q(n, basis_max + 1);
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(basis_max + 1, basis_max);

    while (!converged && solves < opts.max_iterations) {
        Q.col(0) = v;
        H.setZero();
        int built = 0;
        complexd ritz_val = 0.0, ritz_second = 0.0;
        VectorC ritz_vec;

        for (int k = 0; k < basis_max && solves < opts.max_iterations; ++k) {
            VectorC w = lu.solve(Q.col(k));
            ++solves;
            if (!w.allFinite())
                throw SolverError("shift-invert solve produced a non-finite vector");
            for (int pass = 0; pass < 2; ++pass) {  // MGS with reorthogonalization
                for (int i = 0; i <= k; ++i) {
                    const complexd h = Q.col(i).dot(w);
                    w -= h * Q.col(i);
                    if (pass == 0) H(i, k) = h; else H(i, k) += h;
                }
            }
            const double wn = w.norm();
            H(k + 1, k) = wn;
            built = k + 1;
            const bool breakdown = wn < 1e-14;
            if (!breakdown) Q.col(k + 1) = w / wn;

            const bool check = breakdown || (k >= 4 && (k + 1) % 5 == 0) || k == basis_max - 1;
            if (check) {
                Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(H.topLeftCorner(built, built));
                int top = 0, second = -1;
                for (int i = 1; i < built; ++i) {
                    if (std::abs(es.eigenvalues()[i]) > std::abs(es.eigenvalues()[top])) {
                        second = top;
                        top = i;
                    } else if (second < 0 ||
                               std::abs(es.eigenvalues()[i]) > std::abs(es.eigenvalues()[second])) {
                        second = i;
                    }
                }
                const complexd zeta = es.eigenvalues()[top];
                ritz_val = shift + 1.0 / zeta;
                ritz_second = second >= 0 ? shift + 1.0 / es.eigenvalues()[second] : ritz_val;
                ritz_vec = Q.leftCols(built) * es.eigenvectors().col(top);
                ritz_vec.normalize();
                const VectorC Ax = A * ritz_vec;
                mu = ritz_vec.dot(Ax);
                residual = (Ax - mu * ritz_vec).norm() / (k0 * k0);
                if (residual <= opts.residual_tol) {
                    v = ritz_vec;
                    converged = true;
                    break;
                }
            }
            if (breakdown) break;
        }

        if (!converged) {
            if (ritz_vec.size() == 0)
                throw SolverError("Arnoldi produced no Ritz pair");
            v = ritz_vec;
            const double margin =
                std::max(0.5 * std::abs(ritz_val - ritz_second), 1e-8 * std::abs(ritz_val));
            shift = ritz_val + margin;
            factorize(shift);
        }
    }
    const int iter = solves;
    if (!converged) {
        std::ostringstream msg;
        msg << "mode solve did not converge within " << opts.max_iterations
            << " shift-invert applications; residual " << residual;
        throw SolverError(msg.str());
    }

    if (map.background_index) {
        const double n_bg = *map.background_index;
        const double lam_box = box_ground_eigenvalue(map.nx, map.ny, map.pitch_um);
        const double floor = k0 * k0 * n_bg * n_bg;
        if (mu.real() + lam_box < floor - 1e-9 * floor) {
            std::ostringstream msg;
            msg << "no guided mode: best n_eff "
                << std::sqrt(std::max(0.0, mu.real())) / k0 << " does not exceed background index "
                << n_bg;
            throw PhysicsError(msg.str());
        }
    }

    complexd n_eff = std::sqrt(mu) / k0;
    if (n_eff.real() < 0.0) n_eff = -n_eff;

    ModeSolution sol;
    sol.n_eff = n_eff;
    sol.nx = map.nx;
    sol.ny = map.ny;
    sol.pitch_um = map.pitch_um;
    sol.field.resize(map.size());
    for (Eigen::Index idx = 0; idx < n; ++idx) sol.field[static_cast<size_t>(idx)] = std::abs(v[idx]);
    sol.iterations = iter;
    sol.residual = residual;
    return sol;
}

double insertion_loss_db_per_um(const ModeSolution& mode, double wl_nm) {
    const double kappa_eff = std::max(0.0, kappa_of(mode.n_eff));
    return absorption_db_per_um(kappa_eff, wl_nm);
}

} // namespace phxmem
