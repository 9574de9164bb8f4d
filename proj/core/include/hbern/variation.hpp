#pragma once

#include <optional>
#include <vector>

#include "hbern/frame.hpp"

// Deformation engine: builds S^lambda = S + lambda X for compactly
// supported frame fields X = a X1 + b X2 + k T, evaluates the perimeter
// profile, and computes first/second variations both by direct finite
// differences and by the closed-form integrands.

namespace hbern {

/// Scalar field on the parameter domain with first and second partials.
struct FieldJet {
    double v = 0;
    double du = 0, dv = 0;
    double duu = 0, duv = 0, dvv = 0;
};
using ParamField = std::function<FieldJet(double, double)>;

ParamField zero_field();
/// Product bump supported on the rectangle, amplitude amp at the center.
ParamField bump_field(const Rect& support, double amp);
/// Bump modulated by cos(cu*u + cv*v + phase); stays supported on the rectangle.
ParamField modulated_bump_field(const Rect& support, double amp, double cu, double cv,
                                double phase);

struct Deformation {
    ParamField a, b, k;
    Rect support;
};

/// Verifies the support sits strictly inside the domain and the fields
/// vanish on the support boundary ring.
void check_deformation_support(const Deformation& X, const Rect& domain);

/// Deformed patch theta + lambda (a X1 + b X2 + k T) evaluated at base points.
ParamPatch deform(const ParamPatch& patch, const Deformation& X, double lambda);

/// Deformation h nu^H with a parametric amplitude h.
Deformation normal_deformation(const ParamPatch& patch, const ParamField& h,
                               const Rect& support);
/// Deformation a X1.
Deformation x1_deformation(const ParamField& a, const Rect& support);
/// General deformation from three fields.
Deformation frame_deformation(const ParamField& a, const ParamField& b, const ParamField& k,
                              const Rect& support);

struct ProfilePoint {
    double lambda = 0;
    double perimeter = 0;
    double error = 0;
};
std::vector<ProfilePoint> perimeter_profile(const ParamPatch& patch, const Deformation& X,
                                            const std::vector<double>& lambdas,
                                            const QuadratureSpec& spec = {});

struct VariationValue {
    double value = 0;
    double uncertainty = 0;
};

struct FdOptions {
    double scale = 1e-2;  // step = scale * support diameter
};

/// d/dlambda of the perimeter at 0, by Richardson-extrapolated central
/// differences of the pointwise area integrand.
VariationValue first_variation_numeric(const ParamPatch& patch, const Deformation& X,
                                       const QuadratureSpec& spec = {},
                                       const FdOptions& fd = {});
/// Closed-form first variation: integral of H (a p + b q + k omega) du dv.
VariationValue first_variation_formula(const ParamPatch& patch,
                                       const std::optional<DefiningFn>& phi,
                                       const Deformation& X, const QuadratureSpec& spec = {});

/// d^2/dlambda^2 of the perimeter at 0, five-point stencil with Richardson.
VariationValue second_variation_numeric(const ParamPatch& patch, const Deformation& X,
                                        const QuadratureSpec& spec = {},
                                        const FdOptions& fd = {});

/// Second variation for X = h nu^H from the integrand
/// (Zh)^2 + h^2 [2(pb T qb - qb T pb) + 2 ob (qb Y pb - pb Y qb) + ob^2].
double second_variation_normal_formula(const ParamPatch& patch, const DefiningFn& phi,
                                       const AmbientScalar& h, const Rect& support,
                                       const QuadratureSpec& spec = {});

/// Second variation for X = a X1 from the integrand
/// pb^2 (Za)^2 + pb^2 ob^2 a^2 + ob Z(a^2) - pb qb (T(a^2) - ob Y(a^2)).
double second_variation_x1_formula(const ParamPatch& patch, const DefiningFn& phi,
                                   const AmbientScalar& a, const Rect& support,
                                   const QuadratureSpec& spec = {});

enum class StripVariationMode { Normal, X1 };

/// Closed-form second variation of an X-branch strip for a field u(y, t):
/// weighted u_y^2 integral minus twice the weighted u^2 G' integral.
double strip_second_variation(const GraphicalStrip& strip, const ParamField& u,
                              StripVariationMode mode, const Rect& support,
                              const QuadratureSpec& spec = {});

}  // namespace hbern
