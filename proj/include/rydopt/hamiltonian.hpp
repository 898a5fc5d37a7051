#pragma once

// Blockaded sector Hamiltonians.  The |rr> state is never represented: the
// model assumes a perfect Rydberg blockade, so each two-atom computational
// state evolves in its own small sector,
//
//   S10 = {|10>, |r0>}       S01 = {|01>, |0r>}
//   S11 = {|11>, |r1>, |1r>}             (exact form)
//       = {|11>, |W+>, |W->}             (W-basis form, first order in errors)
//
// Index 0 of every sector is the computational state.  Energies and rates
// are in units of Omega_max, drives are complex amplitudes in the same units.

#include "rydopt/common.hpp"

namespace rydopt {

enum class Sector { S01, S10, S11 };

inline const char* sector_name(Sector s) {
    switch (s) {
        case Sector::S01: return "S01";
        case Sector::S10: return "S10";
        case Sector::S11: return "S11";
    }
    return "?";
}

inline int sector_dim(Sector s) { return s == Sector::S11 ? 3 : 2; }

enum class Channel { AMP_1, AMP_2, AMP_PLUS, DET_1, DET_2, STARK_PLUS, STARK_MINUS };

inline const char* channel_name(Channel c) {
    switch (c) {
        case Channel::AMP_1: return "AMP_1";
        case Channel::AMP_2: return "AMP_2";
        case Channel::AMP_PLUS: return "AMP_PLUS";
        case Channel::DET_1: return "DET_1";
        case Channel::DET_2: return "DET_2";
        case Channel::STARK_PLUS: return "STARK_PLUS";
        case Channel::STARK_MINUS: return "STARK_MINUS";
    }
    return "?";
}

struct Errors {
    double eps1 = 0.0, eps2 = 0.0;  // relative amplitude deviations
    double del1 = 0.0, del2 = 0.0;  // detunings, units of Omega_max
};

enum class SectorForm { Exact, WBasis };

// --- sector Hamiltonians ----------------------------------------------------

inline Matrix2cd build_two_level(cplx drive, double eps, double del, double gamma) {
    Matrix2cd h = Matrix2cd::Zero();
    const cplx c = 0.5 * (1.0 + eps) * drive;
    h(0, 1) = c;
    h(1, 0) = std::conj(c);
    h(1, 1) = del - 0.5 * iu * gamma;
    return h;
}

inline Matrix3cd build_s11_exact(cplx drive, const Errors& e, double gamma) {
    Matrix3cd h = Matrix3cd::Zero();
    const cplx c1 = 0.5 * (1.0 + e.eps1) * drive;
    const cplx c2 = 0.5 * (1.0 + e.eps2) * drive;
    h(0, 1) = c1; h(1, 0) = std::conj(c1);
    h(0, 2) = c2; h(2, 0) = std::conj(c2);
    h(1, 1) = e.del1 - 0.5 * iu * gamma;
    h(2, 2) = e.del2 - 0.5 * iu * gamma;
    return h;
}

inline Matrix3cd build_s11_wbasis(cplx drive, const Errors& e, double gamma) {
    const double eps_plus = 0.5 * (e.eps1 + e.eps2);
    const double del_plus = 0.5 * (e.del1 + e.del2);
    const double del_minus = 0.5 * (e.del1 - e.del2);
    Matrix3cd h = Matrix3cd::Zero();
    const cplx c = 0.5 * std::sqrt(2.0) * (1.0 + eps_plus) * drive;
    h(0, 1) = c; h(1, 0) = std::conj(c);
    h(1, 2) = del_minus; h(2, 1) = del_minus;
    h(1, 1) = del_plus - 0.5 * iu * gamma;
    h(2, 2) = del_plus - 0.5 * iu * gamma;
    return h;
}

// Generic builder (dynamic size, for tests and diagnostics).
inline Eigen::MatrixXcd build_sector(Sector sector, cplx drive, const Errors& e, double gamma,
                                     SectorForm form = SectorForm::Exact) {
    if (std::abs(drive) > 1.0 + 1e-12)
        throw invalid_argument_error("build_sector: |drive| exceeds Omega_max");
    switch (sector) {
        case Sector::S10: return build_two_level(drive, e.eps1, e.del1, gamma);
        case Sector::S01: return build_two_level(drive, e.eps2, e.del2, gamma);
        case Sector::S11:
            return form == SectorForm::Exact ? Eigen::MatrixXcd(build_s11_exact(drive, e, gamma))
                                             : Eigen::MatrixXcd(build_s11_wbasis(drive, e, gamma));
    }
    throw invalid_argument_error("build_sector: unknown sector");
}

// --- first-order perturbation generators ------------------------------------
// S11 generators are expressed in the W basis (the form used for robustness
// penalties and coupled first-order propagation).

inline bool channel_applies(Sector s, Channel c) {
    switch (s) {
        case Sector::S10:
            return c == Channel::AMP_1 || c == Channel::DET_1 || c == Channel::STARK_PLUS;
        case Sector::S01:
            return c == Channel::AMP_2 || c == Channel::DET_2 || c == Channel::STARK_PLUS;
        case Sector::S11:
            return c == Channel::AMP_PLUS || c == Channel::DET_1 || c == Channel::DET_2 ||
                   c == Channel::STARK_PLUS || c == Channel::STARK_MINUS;
    }
    return false;
}

inline Matrix2cd generator_two_level(Channel c, cplx drive, double zeta) {
    Matrix2cd g = Matrix2cd::Zero();
    switch (c) {
        case Channel::AMP_1:
        case Channel::AMP_2:
            g(0, 1) = 0.5 * drive;
            g(1, 0) = std::conj(g(0, 1));
            break;
        case Channel::DET_1:
        case Channel::DET_2:
            g(1, 1) = 1.0;
            break;
        case Channel::STARK_PLUS:
            g(0, 1) = 0.5 * drive;
            g(1, 0) = std::conj(g(0, 1));
            g(1, 1) = zeta;
            break;
        default:
            break;
    }
    return g;
}

inline Matrix3cd generator_s11(Channel c, cplx drive, double zeta) {
    Matrix3cd g = Matrix3cd::Zero();
    switch (c) {
        case Channel::AMP_PLUS:
            g(0, 1) = 0.5 * std::sqrt(2.0) * drive;
            g(1, 0) = std::conj(g(0, 1));
            break;
        case Channel::DET_1:
        case Channel::DET_2: {
            const double sgn = (c == Channel::DET_1) ? 1.0 : -1.0;
            g(1, 1) = 0.5;
            g(2, 2) = 0.5;
            g(1, 2) = 0.5 * sgn;
            g(2, 1) = 0.5 * sgn;
            break;
        }
        case Channel::STARK_PLUS:
            g(0, 1) = 0.5 * std::sqrt(2.0) * drive;
            g(1, 0) = std::conj(g(0, 1));
            g(1, 1) = zeta;
            g(2, 2) = zeta;
            break;
        case Channel::STARK_MINUS:
            g(1, 2) = zeta;
            g(2, 1) = zeta;
            break;
        default:
            break;
    }
    return g;
}

inline Eigen::MatrixXcd perturbation_generator(Sector sector, Channel channel, cplx drive,
                                               double zeta = 0.0) {
    if (!channel_applies(sector, channel))
        throw invalid_argument_error(std::string("perturbation_generator: channel ") +
                                     channel_name(channel) + " not applicable to sector " +
                                     sector_name(sector));
    if (sector == Sector::S11) return generator_s11(channel, drive, zeta);
    return generator_two_level(channel, drive, zeta);
}

// --- physical parameters -----------------------------------------------------

// SI parameter set; the blockade strength is not a parameter (taken infinite).
struct PhysicalParams {
    double omega_max = 2.0 * pi * 5.5e6;       // rad/s
    double wavevector = 2.0 * pi / 302e-9;     // rad/m
    double gamma = 1.0 / 100e-6;               // 1/s
    double trap_omega = 2.0 * pi * 50e3;       // rad/s
    double mass = 171.0 * atomic_mass_unit;    // kg
    double zeta = 0.1;                         // Stark coupling, dimensionless
    double erasure_r = 0.98;                   // decay-to-erasure conversion fraction

    void validate() const {
        if (!(omega_max > 0) || !(wavevector > 0) || !(gamma > 0) || !(trap_omega > 0) ||
            !(mass > 0))
            throw invalid_argument_error("PhysicalParams: rates and scales must be positive");
        if (!(erasure_r >= 0.0 && erasure_r <= 1.0))
            throw invalid_argument_error("PhysicalParams: erasure fraction must lie in [0,1]");
    }

    double gamma_dimensionless() const { return gamma / omega_max; }
    double seconds_per_time_unit() const { return 1.0 / omega_max; }
    double sigma_velocity(double temperature) const {
        return std::sqrt(k_boltzmann * temperature / mass);
    }
    double sigma_position(double temperature) const {
        return std::sqrt(k_boltzmann * temperature / mass) / trap_omega;
    }
};

}  // namespace rydopt
