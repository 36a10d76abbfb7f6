#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "homog/cell_pde.hpp"
#include "homog/dirichlet.hpp"
#include "homog/invariant_lp.hpp"
#include "homog/operators.hpp"
#include "homog/rates.hpp"

namespace homog::io {

using nlohmann::json;

// Operator JSON:
//   {"kind": "stripes_pucci", "a": <coeff>, "b": <coeff>}
//   {"kind": "max_two_linear", "dim": 1|2, "a0": <coeff>, "a1": <coeff>,
//    "A": [a11] | [a11, a12, a22], "h": <real>}
//   {"kind": "quad1d", "a": <real>, "b": <coeff>, "c": <real>,
//    "alpha_cap": <real, optional>}
// <coeff> is a number (constant), or
//   {"breakpoints": [...], "values": [...]}                  along y1,
//   {"breakpoints": [...], "breakpoints_y2": [...],
//    "values": [[...], ...]}                                 checkerboard,
//   {"cycle": [...], "pieces": N}                            N equal pieces.
// Unknown keys are rejected with ValidationError.
OperatorSpec operator_from_json(const json& j);
json to_json(const OperatorSpec& op);
json to_json(const PiecewiseCoeff& c);
PiecewiseCoeff coeff_from_json(const json& j);

json to_json(const HomogResult& r);
json to_json(const SymMat& q);
json to_json(const RateStudyResult& r);
json to_json(const RateStudyConfig& c);

/// Columns: y1[, y2], u, H.
void write_corrector_csv(std::ostream& os, const PeriodicGrid& grid,
                         const CellSolution& sol);
/// Columns: node, y1[, y2], alpha, zero_vector, weight.
void write_measure_csv(std::ostream& os, const DiscreteMeasure& m);
/// Columns: x, u.
void write_field_csv(std::ostream& os, const DirichletSolution& sol);
/// Columns: eps, sample, seed, norm, error.
void write_rates_csv(std::ostream& os, const RateStudyResult& r);

}  // namespace homog::io
