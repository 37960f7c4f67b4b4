// bath.hpp — bath / coupling parameters of the ohmic spin-boson environment.
//
// Natural units c = hbar = k_B = 1 throughout: lengths, inverse temperatures
// and inverse frequencies all carry the time dimension.

#pragma once

#include <stdexcept>
#include <string>

namespace spinreg {

// Spectral density J(w) = alpha * w^s * exp(-w/omega_c).
// Only s = 1 (ohmic) is exercised by the closed forms; constructing a
// non-ohmic spec is allowed but the closed-form kernels reject it.
struct BathSpec {
    double alpha;        // dimensionless coupling strength (for s = 1)
    double omega_c;      // cutoff frequency, 1/time
    double temperature;  // T, 1/time
    double s = 1.0;      // spectral exponent

    BathSpec(double alpha_, double omega_c_, double temperature_, double s_ = 1.0)
        : alpha(alpha_), omega_c(omega_c_), temperature(temperature_), s(s_) {
        if (!(alpha > 0.0)) throw std::invalid_argument("BathSpec: alpha must be > 0");
        if (!(omega_c > 0.0)) throw std::invalid_argument("BathSpec: omega_c must be > 0");
        if (!(temperature >= 0.0)) throw std::invalid_argument("BathSpec: temperature must be >= 0");
        if (!(s >= 0.0)) throw std::invalid_argument("BathSpec: s must be >= 0");
    }

    bool ohmic() const noexcept { return s == 1.0; }

    // Closed-form kernels are only valid for s = 1.
    void require_ohmic(const char* where) const {
        if (!ohmic())
            throw std::domain_error(std::string(where) + ": closed form requires s = 1");
    }
};

}  // namespace spinreg
