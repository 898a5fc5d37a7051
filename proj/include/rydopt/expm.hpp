#pragma once

// Exact propagators for piecewise-constant 2x2/3x3 Hamiltonians, their
// directional derivatives, and the in-segment quadrature matrices used for
// Rydberg-time accounting. Everything is built on divided differences of
// exp evaluated at the (scaled) eigenvalues of the segment Hamiltonian.

#include <array>
#include <cassert>

#include "rydopt/common.hpp"

namespace rydopt {

// phi1(z) = (e^z - 1)/z, stable near z = 0.
inline cplx phi1(cplx z) {
    if (std::abs(z) < 0.25) {
        cplx sum = 1.0, term = 1.0;
        for (int k = 2; k <= 16; ++k) {
            term *= z / static_cast<double>(k);
            sum += term;
            if (std::norm(term) < 1e-36 * std::norm(sum)) break;
        }
        return sum;
    }
    return (std::exp(z) - 1.0) / z;
}

// First divided difference of exp: (e^x - e^y)/(x - y).
// Written as e^{(x+y)/2} * sinhc((x-y)/2), which is stable for any separation.
inline cplx exp_dd1(cplx x, cplx y) {
    const cplx h = 0.5 * (x - y);
    cplx sinhc;
    if (std::abs(h) < 0.5) {
        const cplx h2 = h * h;
        cplx sum = 1.0, term = 1.0;
        for (int k = 1; k <= 12; ++k) {
            term *= h2 / static_cast<double>(2 * k * (2 * k + 1));
            sum += term;
            if (std::norm(term) < 1e-36 * std::norm(sum)) break;
        }
        sinhc = sum;
    } else {
        sinhc = std::sinh(h) / h;
    }
    return std::exp(0.5 * (x + y)) * sinhc;
}

// Second divided difference of exp via the complete-homogeneous-symmetric
// series  f[x,y,z] = sum_m h_m(x,y,z)/(m+2)!  (valid for small arguments).
inline cplx exp_dd2_series(cplx x, cplx y, cplx z) {
    // h_m(x,y,z) built with h_m(x,y,z) = x*h_{m-1}(x,y,z) + h_m(y,z)
    cplx sum = 0.0;
    double fact = 2.0;  // (m+2)! with m starting at 0
    cplx hm_xyz = 1.0;  // h_0
    cplx ym = 1.0, zm = 1.0;
    cplx hm_yz = 1.0;
    sum = hm_xyz / fact;
    for (int m = 1; m <= 30; ++m) {
        ym *= y;
        zm *= z;
        // h_m(y,z) = y*h_{m-1}(y,z) + z^m
        hm_yz = y * hm_yz + zm;
        hm_xyz = x * hm_xyz + hm_yz;
        fact *= static_cast<double>(m + 2);
        const cplx term = hm_xyz / fact;
        sum += term;
        if (std::norm(term) < 1e-36 * std::norm(sum) && m > 4) break;
        (void)ym;
    }
    return sum;
}

// Opitz fallback: f[x,y,z] is the (0,2) entry of exp of the upper bidiagonal
// matrix with diagonal (x,y,z).  Used when arguments are not small.
inline cplx exp_dd2_opitz(cplx x, cplx y, cplx z) {
    Matrix3cd a = Matrix3cd::Zero();
    a(0, 0) = x; a(1, 1) = y; a(2, 2) = z;
    a(0, 1) = 1.0; a(1, 2) = 1.0;
    double nrm = 0.0;
    for (int r = 0; r < 3; ++r)
        nrm = std::max(nrm, a.row(r).cwiseAbs().sum());
    int s = 0;
    while (nrm > 0.5) { nrm *= 0.5; ++s; }
    const Matrix3cd as = a / std::pow(2.0, s);
    Matrix3cd term = Matrix3cd::Identity(), sum = Matrix3cd::Identity();
    for (int k = 1; k <= 24; ++k) {
        term = (term * as) / static_cast<double>(k);
        sum += term;
        if (term.cwiseAbs().maxCoeff() < 1e-20) break;
    }
    for (int i = 0; i < s; ++i) sum = sum * sum;
    return sum(0, 2);
}

inline cplx exp_dd2(cplx x, cplx y, cplx z) {
    if (std::abs(x) < 0.8 && std::abs(y) < 0.8 && std::abs(z) < 0.8)
        return exp_dd2_series(x, y, z);
    return exp_dd2_opitz(x, y, z);
}

// Matrix exponential by scaling-and-squaring with a Taylor core.  Matrices
// here are tiny and usually have small norm, so this is both fast and
// accurate to machine precision.
template <int N>
Eigen::Matrix<cplx, N, N> expm_small(const Eigen::Matrix<cplx, N, N>& a) {
    using Mat = Eigen::Matrix<cplx, N, N>;
    double nrm = 0.0;
    for (int r = 0; r < N; ++r)
        nrm = std::max(nrm, a.row(r).cwiseAbs().sum());
    int s = 0;
    double scaled = nrm;
    while (scaled > 0.5) { scaled *= 0.5; ++s; }
    const Mat as = a / std::pow(2.0, s);
    Mat term = Mat::Identity(), sum = Mat::Identity();
    for (int k = 1; k <= 24; ++k) {
        term = (term * as) / static_cast<double>(k);
        sum += term;
        if (term.cwiseAbs().maxCoeff() < 1e-20) break;
    }
    for (int i = 0; i < s; ++i) sum = sum * sum;
    return sum;
}

// Applies exp(a) to a vector with a truncated Taylor series.  Caller must
// keep ||a|| small (sub-stepped evolution does).
template <int N>
void apply_expm_taylor(const Eigen::Matrix<cplx, N, N>& a,
                       Eigen::Matrix<cplx, N, 1>& v) {
    Eigen::Matrix<cplx, N, 1> term = v;
    for (int k = 1; k <= 18; ++k) {
        term = (a * term) / static_cast<double>(k);
        v += term;
        if (term.squaredNorm() < 1e-34 * v.squaredNorm()) break;
    }
}

// ---------------------------------------------------------------------------
// Exact segment data for a constant Hermitian Hamiltonian over time dt.
//
//   U          = exp(-i dt H0)
//   first order of exp(-i dt (H0 + eps H1)) in eps        (Daleckii-Krein)
//   mixed derivative d/dphi of that first-order block     (2nd divided diff.)
//   gram(M)    = int_0^dt exp(+i H0 t) M exp(-i H0 t) dt
// ---------------------------------------------------------------------------
template <int N>
struct HermitianSegment {
    using Mat = Eigen::Matrix<cplx, N, N>;
    using Vec = Eigen::Matrix<cplx, N, 1>;

    double dt = 0.0;
    Mat s;                       // eigenvectors (unitary, columns)
    Eigen::Matrix<double, N, 1> lam;
    std::array<cplx, N> x;       // x_a = -i dt lam_a
    Mat f1;                      // f1(a,b) = exp[x_a, x_b]
    Mat u;                       // exp(-i dt H0)

    HermitianSegment() = default;

    HermitianSegment(const Mat& h0, double dt_) : dt(dt_) {
        Eigen::SelfAdjointEigenSolver<Mat> es;
        es.computeDirect(h0);
        s = es.eigenvectors();
        lam = es.eigenvalues();
        Eigen::Matrix<cplx, N, 1> ex;
        for (int a = 0; a < N; ++a) {
            x[a] = -iu * dt * lam[a];
            ex[a] = std::exp(x[a]);
        }
        for (int a = 0; a < N; ++a)
            for (int b = 0; b < N; ++b)
                f1(a, b) = (a == b) ? ex[a] : exp_dd1(x[a], x[b]);
        u = s * ex.asDiagonal() * s.adjoint();
    }

    Mat to_eigenbasis(const Mat& m) const { return s.adjoint() * m * s; }
    Mat from_eigenbasis(const Mat& m) const { return s * m * s.adjoint(); }

    // V such that exp(-i dt (H0 + eps H1)) = U + eps V + O(eps^2)
    Mat first_order(const Mat& h1) const {
        const Mat b = to_eigenbasis(-iu * dt * h1);
        return from_eigenbasis(b.cwiseProduct(f1));
    }

    // In the eigenbasis: bt = S^dag (-i dt H1) S  ->  V in eigenbasis
    Mat first_order_eig(const Mat& bt) const { return bt.cwiseProduct(f1); }

    // d/dphi of U given at = S^dag (-i dt dH0/dphi) S, in the eigenbasis.
    Mat du_eig(const Mat& at) const { return at.cwiseProduct(f1); }

    // d/dphi of V given the eigenbasis directions of dH0/dphi (at), H1 (bt)
    // and dH1/dphi (dbt).  Uses D^2 exp via second divided differences.
    Mat dv_eig(const Mat& at, const Mat& bt, const Mat& dbt) const {
        Mat w;
        for (int a = 0; a < N; ++a) {
            for (int b = 0; b < N; ++b) {
                cplx acc = 0.0;
                for (int m = 0; m < N; ++m)
                    acc += (at(a, m) * bt(m, b) + bt(a, m) * at(m, b)) *
                           exp_dd2(x[a], x[m], x[b]);
                w(a, b) = acc + dbt(a, b) * f1(a, b);
            }
        }
        return w;
    }

    // gram(M) = int_0^dt e^{+iH0 t} M e^{-iH0 t} dt
    Mat gram(const Mat& m) const {
        const Mat mt = to_eigenbasis(m);
        Mat t;
        for (int a = 0; a < N; ++a)
            for (int b = 0; b < N; ++b)
                t(a, b) = dt * phi1(x[b] - x[a]);
        return from_eigenbasis(mt.cwiseProduct(t));
    }
};

}  // namespace rydopt
