#pragma once

#include <complex>
#include <string>

#include "errors.hpp"

namespace sixvertex {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

enum class Convention { Trigonometric, Hyperbolic };

// s = sin or sinh, c = its derivative
inline cplx sfun(Convention conv, cplx x) {
    return conv == Convention::Trigonometric ? std::sin(x) : std::sinh(x);
}

inline cplx cfun(Convention conv, cplx x) {
    return conv == Convention::Trigonometric ? std::cos(x) : std::cosh(x);
}

// half period of s: s(x + period) = -s(x)
inline cplx half_period(Convention conv) {
    return conv == Convention::Trigonometric ? cplx(kPi, 0.0) : cplx(0.0, kPi);
}

inline std::string to_string(Convention conv) {
    return conv == Convention::Trigonometric ? "trigonometric" : "hyperbolic";
}

inline Convention convention_from_string(const std::string& name) {
    if (name == "trigonometric" || name == "trig" || name == "sin") return Convention::Trigonometric;
    if (name == "hyperbolic" || name == "hyp" || name == "sinh") return Convention::Hyperbolic;
    throw ConfigError("unknown convention '" + name + "' (expected trigonometric|hyperbolic)");
}

}  // namespace sixvertex
