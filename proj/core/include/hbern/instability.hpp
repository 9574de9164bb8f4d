#pragma once

#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hbern/variation.hpp"

// Destabilizing deformations for strict graphical strips: the mollified
// amplitude family f_k, the two sides of the reverse inequality, the
// search for k0, and the instability certificate.

namespace hbern {

class NotStrictError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};
class K0ExhaustedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Window bump chi (plateau on |s| <= delta, support [-2d, 2d]) and a
/// separately normalized mollifier kernel chi_hat. A single function can
/// carry the plateau, the support and unit mass only for delta in
/// [1/4, 1/2]; splitting the two roles keeps every property each
/// estimate uses at any delta.
struct BumpFamily {
    double delta = 0.25;
    double deriv_bound = 0;  // measured sup |chi'|
    double hat_norm = 1;     // normalizer giving integral one

    Jet1 chi(double s) const;
    Jet1 chi_k(double s, int k) const;  // chi(s/k)
    Jet1 chi_hat(double s) const;       // kernel, integral 1
    Jet1 chi_tilde(double s, int k) const;  // k chi_hat(k s)
};
BumpFamily make_bump_family(double delta);

/// G_k = G convolved with chi_tilde_k, derivatives taken under the integral.
/// Values are memoized per evaluation point; the convolutions dominate the
/// cost of every integral the certificates run.
class MollifiedG {
public:
    MollifiedG(ScalarFn G, BumpFamily bump, int k);
    Jet1 jet(double t) const;
    double d1(double t) const { return jet(t).d1; }
    int k() const { return k_; }
    /// Two-sided bracketing of G' by G_k' on [-2 delta, 2 delta].
    bool dominate_holds(int t_samples = 129) const;

private:
    Jet1 compute(double t) const;

    ScalarFn g_;
    BumpFamily bump_;
    int k_;
    mutable std::mutex mu_;
    mutable std::unordered_map<double, Jet1> cache_;
};

/// Amplitude f_k(y, t) = chi_k(y) chi(t) / sqrt(1 + (y^2/2) G_k'(t)),
/// with exact first and second parameter jets.
ParamField build_fk(const ScalarFn& G, const BumpFamily& bump, int k);
Rect fk_support(const BumpFamily& bump, int k);

struct ReverseSides {
    double lhs = 0, rhs = 0;
    double lhs_err = 0, rhs_err = 0;
};
/// Weighted integrals of (d f_k / dy)^2 and of f_k^2 over the support.
ReverseSides reverse_inequality_sides(const ScalarFn& G, const BumpFamily& bump, int k,
                                      const QuadratureSpec& spec = {});

struct K0Step {
    int k = 0;
    double lhs = 0, rhs = 0;
    double lhs_err = 0, rhs_err = 0;
    bool dominate = false;
};
struct K0Result {
    bool found = false;
    int k0 = 0;
    std::vector<K0Step> trace;
};
/// Doubling scan then integer bisection for the smallest tested k with
/// lhs < rhs and the bracketing intact.
K0Result find_k0(const ScalarFn& G, const BumpFamily& bump, int k_max = 1 << 20,
                 const QuadratureSpec& spec = {});

struct InstabilityCertificate {
    std::string g_source;
    Interval I{}, J{};
    double t0 = 0, delta = 0;
    int k0 = 0;
    double lhs = 0, rhs = 0;
    double gap = 0;  // lhs - rhs, negative on success
    double v2 = 0;   // strip second variation at u = f_k
    double quad_err = 0;
    std::string h_description;

    std::string to_json_string() const;
};

/// Recenter the strict window, build f_k, and certify V_II < 0.
InstabilityCertificate certify_instability(const GraphicalStrip& strip,
                                           const QuadratureSpec& spec = {},
                                           std::optional<Interval> window_override = {},
                                           int k_max = 1 << 20);

}  // namespace hbern
