// Built-in worked examples: the two-generator solvable algebra over F_3 and
// its modules, the rational-function-field variant, and the four-dimensional
// envelope example.  Shared by the demo subcommands and the test suites.
#pragma once

#include "core/modules.hpp"

namespace modind::fixtures {

// L = <x, y>, [x,y] = y, x^[3] = x, y^[3] = 0, basis order (x, y)
LiePtr xy_algebra(const FieldPtr& f);

// S = <x> inside xy_algebra
SubalgebraSpec span_x(const LiePtr& l);
// S = <y> inside xy_algebra
SubalgebraSpec span_y(const LiePtr& l);

// W = <b1, b2> over S = <x>: x b1 = b2, x b2 = -b1
Representation w_rotation(const SubalgebraAsAlgebra& s);

// the six-dimensional module V with the displayed action rows; basis
// v_1^0, v_2^0, v_1^1, v_2^1, v_1^2, v_2^2
Representation v_module(const LiePtr& l, const FieldElement& alpha,
                        const FieldElement& beta);

// f_y = t^2 + alpha t + alpha^2 + beta^2, f_x = t^2 + 1 (adapted order y,x)
Polynomial f_y_poly(const FieldPtr& f, const FieldElement& alpha,
                    const FieldElement& beta);
Polynomial f_x_poly(const FieldPtr& f);

// W = <w> over S = <y>: y w = w
Representation w_line(const SubalgebraAsAlgebra& s);

// the non-restrictable algebra L = <x, a, b> with [a,b]=0, [x,a]=a,
// [x,b] = lambda b
LiePtr xab_algebra(const FieldPtr& f, const FieldElement& lambda);

// V = H (tensor) K over xab_algebra: 9-dimensional for p = 3, basis
// h_i (tensor) k_j ordered j-major? (i-major: index = 3*i + j)
Representation hk_module(const LiePtr& l, const FieldElement& lambda);

// the same module with the action of d adjoined (envelope basis x,a,b,d):
// d (h_i tensor k_j) = (mu + nu + j) (h_i tensor k_j)
Matrix hk_d_action(const FieldPtr& f, const FieldElement& mu,
                   const FieldElement& nu);

}  // namespace modind::fixtures
