#pragma once

// Piecewise-constant drive waveforms and gate phase targets.  Times are in
// units of 1/Omega_max, the instantaneous drive of segment j is
// amp_scale[j] * exp(i phase[j]) in units of Omega_max.

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rydopt/common.hpp"

namespace rydopt {

struct PulseWaveform {
    int n_segments = 0;
    double duration = 0.0;
    std::vector<double> phase;      // radians, stored unwrapped
    std::vector<double> amp_scale;  // in [0, 1]
    std::string label;

    double dt() const { return n_segments > 0 ? duration / n_segments : 0.0; }

    cplx drive(int j) const { return amp_scale[j] * std::exp(iu * phase[j]); }

    void validate() const {
        if (n_segments <= 0) throw invalid_argument_error("pulse: n_segments must be positive");
        if (!(duration > 0.0)) throw invalid_argument_error("pulse: duration must be > 0");
        if (static_cast<int>(phase.size()) != n_segments)
            throw invalid_argument_error("pulse: phase length != n_segments");
        if (static_cast<int>(amp_scale.size()) != n_segments)
            throw invalid_argument_error("pulse: amp_scale length != n_segments");
        for (double a : amp_scale)
            if (!(a >= 0.0 && a <= 1.0))
                throw invalid_argument_error("pulse: amp_scale entries must lie in [0,1]");
    }

    static PulseWaveform constant_amplitude(int n, double tau, std::string label = {}) {
        PulseWaveform p;
        p.n_segments = n;
        p.duration = tau;
        p.phase.assign(n, 0.0);
        p.amp_scale.assign(n, 1.0);
        p.label = std::move(label);
        return p;
    }
};

enum class GateKind { CZ, CRZ_HALF_PI };

struct GateTarget {
    GateKind kind = GateKind::CZ;
    int winding = 0;  // free integer n in the phase condition

    // theta11 - theta10 - theta01 = (2n+1) pi     for CZ
    //                             = (2n+1/2) pi   for CRZ_HALF_PI
    double phase_offset() const {
        const double base = (kind == GateKind::CZ) ? pi : 0.5 * pi;
        return 2.0 * pi * winding + base;
    }

    // e^{-i theta11} factor relative to e^{-2i theta}; independent of winding
    cplx mu() const { return std::exp(-iu * phase_offset()); }
};

// --- JSON schema -----------------------------------------------------------
// {"n_segments": int, "duration": float, "phase": [float], "amp_scale":
//  [float], "label": string, "units": "omega_max"}

inline nlohmann::json pulse_to_json(const PulseWaveform& p) {
    return nlohmann::json{{"n_segments", p.n_segments},
                          {"duration", p.duration},
                          {"phase", p.phase},
                          {"amp_scale", p.amp_scale},
                          {"label", p.label},
                          {"units", "omega_max"}};
}

inline PulseWaveform pulse_from_json(const nlohmann::json& j) {
    auto need = [&](const char* key) -> const nlohmann::json& {
        if (!j.contains(key))
            throw invalid_argument_error(std::string("pulse json: missing field '") + key + "'");
        return j.at(key);
    };
    PulseWaveform p;
    try {
        p.n_segments = need("n_segments").get<int>();
        p.duration = need("duration").get<double>();
        p.phase = need("phase").get<std::vector<double>>();
        p.amp_scale = need("amp_scale").get<std::vector<double>>();
        p.label = j.value("label", std::string{});
        const std::string units = need("units").get<std::string>();
        if (units != "omega_max")
            throw invalid_argument_error("pulse json: field 'units' must be \"omega_max\"");
    } catch (const nlohmann::json::exception& e) {
        throw invalid_argument_error(std::string("pulse json: ") + e.what());
    }
    p.validate();
    return p;
}

inline void save_pulse(const PulseWaveform& p, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << pulse_to_json(p).dump(2) << "\n";
}

inline PulseWaveform load_pulse(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open pulse file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw invalid_argument_error(std::string("pulse json parse error in ") + path + ": " + e.what());
    }
    return pulse_from_json(j);
}

}  // namespace rydopt
