#include "decolab/fourier.hpp"

#include <unsupported/Eigen/FFT>

namespace decolab {

namespace {

Eigen::FFT<double>& engine() {
    thread_local Eigen::FFT<double> fft;
    return fft;
}

} // namespace

void fft_inplace(CVec& v) {
    CVec out(v.size());
    engine().fwd(out, v);
    v.swap(out);
}

void ifft_inplace(CVec& v) {
    CVec out(v.size());
    engine().inv(out, v);
    v.swap(out);
}

void unitary_conjugate_fft(CMat& rho, const CVec& phase) {
    const Eigen::Index n = rho.rows();
    CVec tmp(n);
    auto columns = [&](CMat& m) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            tmp = m.col(c);
            fft_inplace(tmp);
            tmp.array() *= phase.array();
            ifft_inplace(tmp);
            m.col(c) = tmp;
        }
    };
    // rho <- U rho, then rho <- (U (U rho)^dag)^dag = U rho U^dag.
    columns(rho);
    rho.adjointInPlace();
    columns(rho);
    rho.adjointInPlace();
}

} // namespace decolab
