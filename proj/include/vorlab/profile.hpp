// Radial base vortices: angular-velocity profiles zeta(r) with the induced
// vorticity omega(r) = 2 zeta + r zeta' in closed form per family, plus the
// smooth radial truncation phi_Rt (phi = 1 on r <= Rt/2, supp phi in B_Rt).
#pragma once
#include <functional>
#include <map>
#include <string>

#include "field.hpp"

namespace vorlab {

struct RadialProfile {
    std::string family;
    std::map<std::string, double> params;
    double support_radius = 0.0;
    std::function<double(double)> zeta;   // angular velocity
    std::function<double(double)> omega;  // vorticity 2 zeta + r zeta'

    // High-order difference of the analytic omega; accurate enough for the
    // 1D radial assembly without carrying a third closed form around.
    double omega_prime(double r) const {
        const double d = 1e-4;
        const double rm = std::max(r, 2.0 * d);
        return (-omega(rm + 2 * d) + 8.0 * omega(rm + d) - 8.0 * omega(rm - d) +
                omega(rm - 2 * d)) /
               (12.0 * d);
    }
};

namespace detail {

// C-infinity step: 1 on t <= 0, 0 on t >= 1.
inline double smooth_step_down(double t) {
    if (t <= 0.0) return 1.0;
    if (t >= 1.0) return 0.0;
    const double a = std::exp(-1.0 / (1.0 - t));
    const double b = std::exp(-1.0 / t);
    return a / (a + b);
}

// phi(x): 1 for x <= 1/2, 0 for x >= 1.
inline double radial_cutoff(double x) { return smooth_step_down(2.0 * x - 1.0); }

inline double param(const std::map<std::string, double>& p, const std::string& key, double dflt) {
    auto it = p.find(key);
    return it == p.end() ? dflt : it->second;
}

}  // namespace detail

inline RadialProfile make_profile(const std::string& family,
                                  const std::map<std::string, double>& params) {
    RadialProfile prof;
    prof.family = family;
    prof.params = params;
    const double a = detail::param(params, "amp", 1.0);
    const double s = detail::param(params, "scale", 1.0);
    if (s <= 0.0) throw BadParameter("profile scale must be positive");

    if (family == "gauss") {
        prof.zeta = [a, s](double r) { return a * std::exp(-(r / s) * (r / s)); };
        prof.omega = [a, s](double r) {
            const double u = (r / s) * (r / s);
            return a * std::exp(-u) * (2.0 - 2.0 * u);
        };
        prof.support_radius = a == 0.0 ? 0.0 : 6.2 * s;
    } else if (family == "poly") {
        const double q = detail::param(params, "q", 4.0);
        if (q < 2.0) throw BadParameter("poly exponent q must be >= 2");
        prof.zeta = [a, s, q](double r) {
            const double u = (r / s) * (r / s);
            return u >= 1.0 ? 0.0 : a * std::pow(1.0 - u, q);
        };
        prof.omega = [a, s, q](double r) {
            const double u = (r / s) * (r / s);
            if (u >= 1.0) return 0.0;
            return a * std::pow(1.0 - u, q - 1.0) * (2.0 - 2.0 * u - 2.0 * q * u);
        };
        prof.support_radius = s;
    } else if (family == "ring") {
        // two-parameter non-monotone ring: steepness p sharpens the
        // vorticity annulus
        const double p = detail::param(params, "steep", 4.0);
        if (p < 2.0) throw BadParameter("ring steepness must be >= 2");
        prof.zeta = [a, s, p](double r) { return a * std::exp(-std::pow(r / s, p)); };
        prof.omega = [a, s, p](double r) {
            const double u = std::pow(r / s, p);
            return a * std::exp(-u) * (2.0 - p * u);
        };
        prof.support_radius = a == 0.0 ? 0.0 : s * std::pow(40.0, 1.0 / p);
    } else {
        throw BadParameter("unknown profile family '" + family + "'");
    }
    return prof;
}

// Truncation zeta_Rt = phi(r/Rt) zeta; omega recomputed through the product
// rule: omega_Rt = phi omega + (r/Rt) phi' zeta. Identity on r <= Rt/2.
inline RadialProfile truncate(const RadialProfile& p, double Rt) {
    if (Rt <= 0.0) throw BadParameter("truncation radius must be positive");
    RadialProfile out = p;
    auto z = p.zeta;
    auto w = p.omega;
    out.zeta = [z, Rt](double r) { return detail::radial_cutoff(r / Rt) * z(r); };
    out.omega = [z, w, Rt](double r) {
        const double x = r / Rt;
        const double phi = detail::radial_cutoff(x);
        if (phi == 0.0) return 0.0;
        // phi'(x) by the closed form of the smooth step
        double dphi = 0.0;
        const double t = 2.0 * x - 1.0;
        if (t > 0.0 && t < 1.0) {
            const double A = std::exp(-1.0 / (1.0 - t)), B = std::exp(-1.0 / t);
            const double Ap = -A / ((1.0 - t) * (1.0 - t)), Bp = B / (t * t);
            dphi = 2.0 * (Ap * B - A * Bp) / ((A + B) * (A + B));
        }
        return phi * w(r) + x * dphi * z(r);
    };
    out.support_radius = std::min(p.support_radius, Rt);
    out.params["trunc_radius"] = Rt;
    return out;
}

// Total circulation 2 pi int_0^inf omega(r) r dr by Simpson quadrature;
// exactly zero for any decaying zeta since omega = (r^2 zeta)'/r.
inline double circulation(const RadialProfile& p, int panels = 4000) {
    const double rmax = std::max(p.support_radius, 1.0);
    const double dr = rmax / panels;
    double s = 0.0;
    for (int k = 0; k < panels; ++k) {
        const double r0 = k * dr, r1 = (k + 1) * dr, rm = 0.5 * (r0 + r1);
        s += (r0 * p.omega(r0) + 4.0 * rm * p.omega(rm) + r1 * p.omega(r1)) * dr / 6.0;
    }
    return 2.0 * std::acos(-1.0) * s;
}

}  // namespace vorlab
