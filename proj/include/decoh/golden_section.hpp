#pragma once

#include <cmath>
#include <string>

#include "decoh/errors.hpp"

namespace decoh {

template <typename Real>
struct Minimum {
    Real argmin;
    Real value;
};

/// Golden-section search on a bracket left < middle < right with
/// f(middle) <= f(left), f(middle) <= f(right). Stops once the bracket is
/// narrower than abs_tol. The returned value never exceeds f(middle).
template <typename Real, typename Func>
Minimum<Real> golden_section_minimize(Func&& f, Real left, Real middle, Real right, Real abs_tol,
                                      unsigned max_iter = 500) {
    if (!(left < middle && middle < right)) throw BracketError("bracket must satisfy left < middle < right");
    if (!(abs_tol > 0)) throw BracketError("tolerance must be positive");
    Real f_left = f(left);
    Real f_mid = f(middle);
    Real f_right = f(right);
    if (!(f_mid <= f_left && f_mid <= f_right))
        throw BracketError("middle point is not the lowest of the bracket");

    const Real frac = (Real(3) - std::sqrt(Real(5))) / Real(2);
    for (unsigned iter = 0; iter < max_iter && right - left > abs_tol; ++iter) {
        const bool split_right = right - middle > middle - left;
        const Real x = split_right ? middle + frac * (right - middle) : middle - frac * (middle - left);
        if (x <= left || x >= right || x == middle) break;  // bracket at resolution limit
        const Real fx = f(x);
        if (split_right) {
            if (fx < f_mid) {
                left = middle;
                f_left = f_mid;
                middle = x;
                f_mid = fx;
            } else {
                right = x;
                f_right = fx;
            }
        } else {
            if (fx < f_mid) {
                right = middle;
                f_right = f_mid;
                middle = x;
                f_mid = fx;
            } else {
                left = x;
                f_left = fx;
            }
        }
    }
    return {middle, f_mid};
}

}  // namespace decoh
