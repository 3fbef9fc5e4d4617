#pragma once

#include "quiverforge/linalg.hpp"
#include "quiverforge/quiver.hpp"

#include <optional>

namespace qf {

enum class FormClass { PositiveDefinite, StrictlySemiPositive, Indefinite };

const char* form_class_name(FormClass c);

// Euler pairing of the plumbing data:
//   sum_i chi_i r_i^2 + 2 sum_{codim even} (-1)^{jump_e} chi_e r_{endA} r_{endB}.
// For sphere defaults this is 2(sum r_i^2 - sum_e r_a r_b), twice the Tits form.
long long floer_euler_form(const Graph& g, const DimensionVector& r);

// Generalized Cartan matrix C = 2I - A of the underlying graph (loops count
// twice on the diagonal).  Row/column order follows g.vertices.
Matrix<Scalar> cartan_matrix(const Graph& g);

// Classification of the Tits form by exact symmetric pivoting.
// Requires sphere-plumbing defaults.
FormClass classify_form(const Graph& g);

// For a strictly semi-positive form: the primitive positive integer kernel
// vector (unique up to scale when the graph is connected affine ADE).
std::optional<DimensionVector> affine_delta(const Graph& g);

// All nonzero 0 <= theta <= bound with theta^T C theta <= 2.
std::vector<DimensionVector> positive_roots(const Graph& g, const DimensionVector& bound);

// Wall membership: zeta . theta == 0.
bool on_wall(const Weight& zeta, const DimensionVector& theta);

} // namespace qf
