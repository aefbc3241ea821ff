#pragma once

// 50-digit evaluation of the decoherence coefficients straight from laboratory
// inputs, independent of the library's double-precision code path.

#include <boost/multiprecision/cpp_dec_float.hpp>

namespace decoh::testing {

using mp = boost::multiprecision::cpp_dec_float_50;

struct MpCoefficients {
    mp xi1, xi21, xi22, zeta0, zeta1;
};

struct MpInput {
    double temperature_k, density_cm3, atom_gmol, particle_gmol;
    double alpha_a_bohr, beta_a_bohr, alpha_b_bohr, beta_b_bohr;
};

inline MpCoefficients mp_coefficients(const MpInput& in) {
    using boost::multiprecision::asin;
    using boost::multiprecision::pow;
    using boost::multiprecision::sqrt;
    const mp kb("1.380649e-23"), hbar("1.054571817e-34"), na("6.02214076e23"), a0("5.29177210903e-11");
    const mp pi = boost::math::constants::pi<mp>();

    const mp n = mp(in.density_cm3) * mp(1000000);
    const mp m = mp(in.atom_gmol) / (na * 1000);
    const mp big_m = mp(in.particle_gmol) / (na * 1000);
    const mp ms = m * big_m / (m + big_m);
    const mp r = m / big_m;
    const mp aa = mp(in.alpha_a_bohr) * a0, ba = mp(in.beta_a_bohr) * a0;
    const mp ab = mp(in.alpha_b_bohr) * a0, bb = mp(in.beta_b_bohr) * a0;

    const mp d2 = (ab - aa) * (ab - aa) + (bb - ba) * (bb - ba);
    const mp c = pow(mp(2), mp(2.5)) * sqrt(pi) * n * sqrt(kb / ms);
    const mp bracket = 3 * sqrt(2 * r + 1) + (1 + 2 * r + 3 * r * r) / r * asin(r / (r + 1)) - 4 * (1 + r);

    MpCoefficients out;
    out.xi1 = -c * d2;
    out.xi21 = 12 * pi * n * kb * pow(r, mp(1.5)) * (ba + bb) * d2 / hbar;
    out.xi22 = (32 * pi * pi * pi * n * n * kb / ms + 8 * pi * kb * n * n / m * bracket) * d2 * d2 -
               64 * pi * kb * n * n / m * bracket * (bb * bb + ba * ba + ba * bb) * d2;
    out.zeta0 = -4 * pi * hbar * n / ms * (ba + bb) / 2;
    out.zeta1 = c * ((ba + bb) * (ba + bb) - (aa - ab) * (aa - ab));
    return out;
}

}  // namespace decoh::testing
