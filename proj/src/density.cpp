#include "decolab/density.hpp"

#include "decolab/errors.hpp"
#include "decolab/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace decolab {

double DensityMatrix::hermiticity_residue() const {
    return (elements - elements.adjoint()).cwiseAbs().maxCoeff();
}

void DensityMatrix::validate() const {
    if (elements.rows() != elements.cols()) {
        throw DimensionMismatch("density matrix must be square");
    }
    if (grid && elements.rows() != grid->n_points) {
        throw DimensionMismatch("density matrix does not match its grid");
    }
    if (hermiticity_residue() > tol::kHermiticity) {
        throw NonHermitianInput("density matrix violates hermiticity tolerance");
    }
    const double trace_tol = grid ? tol::kTraceContinuum : tol::kTraceDiscrete;
    if (std::abs(trace_real() - 1.0) > trace_tol) {
        throw TraceDrift("density matrix trace deviates from 1 by " +
                         std::to_string(trace_real() - 1.0));
    }
    for (Eigen::Index i = 0; i < dim(); ++i) {
        if (elements(i, i).real() < -tol::kDiagNegative) {
            throw NumericError("density matrix has a negative diagonal entry");
        }
    }
}

DensityMatrix pure_density(const WaveFunction& psi) {
    DensityMatrix rho{psi.amplitudes * psi.amplitudes.adjoint(), psi.grid};
    rho.validate();
    return rho;
}

DensityMatrix discrete_density(CMat elements) {
    DensityMatrix rho{std::move(elements), std::nullopt};
    rho.validate();
    return rho;
}

DensityMatrix pure_discrete_density(const CVec& state) {
    return discrete_density(state * state.adjoint());
}

double purity(const DensityMatrix& rho) {
    // Tr(rho^2) = ||rho||_F^2 for Hermitian rho.
    const double w = rho.weight();
    return rho.elements.squaredNorm() * w * w;
}

RVec position_distribution(const DensityMatrix& rho) {
    return rho.elements.diagonal().real();
}

RVec momentum_distribution(const DensityMatrix& rho) {
    if (!rho.spatial()) {
        throw DimensionMismatch("momentum_distribution needs a spatial density matrix");
    }
    CMat m = rho.elements;
    const Eigen::Index n = m.rows();
    CVec tmp(n);
    for (Eigen::Index c = 0; c < n; ++c) {
        tmp = m.col(c);
        fft_inplace(tmp);
        m.col(c) = tmp;
    }
    m.adjointInPlace();
    for (Eigen::Index c = 0; c < n; ++c) {
        tmp = m.col(c);
        fft_inplace(tmp);
        m.col(c) = tmp;
    }
    m.adjointInPlace();
    RVec d = m.diagonal().real().cwiseMax(0.0);
    d /= d.sum();
    return d;
}

double momentum_mean(const DensityMatrix& rho) {
    const RVec d = momentum_distribution(rho);
    const RVec k = rho.grid->fft_wavenumbers();
    return (d.array() * k.array()).sum();
}

void EnvironmentOverlapMatrix::validate() const {
    if (overlaps.rows() != overlaps.cols()) {
        throw DimensionMismatch("overlap matrix must be square");
    }
    for (Eigen::Index i = 0; i < overlaps.rows(); ++i) {
        if (overlaps(i, i) != Complex(1.0, 0.0)) {
            throw InvalidOverlap("overlap matrix diagonal must be exactly 1");
        }
    }
    if (overlaps.cwiseAbs().maxCoeff() > 1.0 + 1e-12) {
        throw InvalidOverlap("overlap magnitudes cannot exceed 1");
    }
    if ((overlaps - overlaps.adjoint()).cwiseAbs().maxCoeff() > tol::kHermiticity) {
        throw InvalidOverlap("overlap matrix must be Hermitian");
    }
}

DensityMatrix ideal_measurement_entangle(const DensityMatrix& rho,
                                         const EnvironmentOverlapMatrix& overlaps) {
    overlaps.validate();
    if (overlaps.overlaps.rows() != rho.dim()) {
        throw DimensionMismatch("overlap matrix dimension does not match the state");
    }
    DensityMatrix out{rho.elements.cwiseProduct(overlaps.overlaps), rho.grid};
    out.validate();
    return out;
}

double coherence_length(const DensityMatrix& rho) {
    if (!rho.spatial()) {
        throw DimensionMismatch("coherence_length needs a spatial density matrix");
    }
    const CMat& m = rho.elements;
    const int n = static_cast<int>(m.rows());
    const double h = rho.grid->spacing();

    // Anti-diagonal slices through the diagonal sites (i+j even): xi = (i-j)*h.
    double abs_mass = 0.0;
    double weight_sum = 0.0;
    double moment_sum = 0.0;
    for (int c = 0; c < n; ++c) {  // slice through (c, c)
        double w2 = 0.0, m2 = 0.0, w1 = 0.0;
        const int reach = std::min(c, n - 1 - c);
        for (int r = -reach; r <= reach; ++r) {
            const double a = std::abs(m(c + r, c - r));
            const double xi = 2.0 * r * h;
            w1 += a;
            w2 += a * a;
            m2 += a * a * xi * xi;
        }
        abs_mass = std::max(abs_mass, w1);
        const double diag_w = std::max(m(c, c).real(), 0.0);
        if (w2 > 0.0) {
            weight_sum += diag_w;
            moment_sum += diag_w * (m2 / w2);
        }
    }
    if (abs_mass < 1e-12) {
        throw DegenerateState("coherence_length: no anti-diagonal support anywhere");
    }
    if (weight_sum <= 0.0) {
        return h;
    }
    const double len = std::sqrt(2.0 * moment_sum / weight_sum);
    return std::max(len, h);  // discretisation floor
}

} // namespace decolab
