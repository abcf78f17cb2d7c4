#pragma once

#include "varimin/curvature_recovery.hpp"
#include "varimin/first_variation.hpp"
#include "varimin/monotonicity.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace varimin {

// 17 significant digits; "null" for non-finite values.
std::string format_number(double x);

// One JSON object per atom: {"i", "x", "w", "H", "H_N", "residual", "flags"
// [, "normal_part"]}.
void write_curvature_jsonl(std::ostream& out, const DiscreteVarifold& V, const CurvatureField& field);
// One JSON object per atom: {"i", "B", "A" (row-major S^3), "residual",
// "flags", "condition"}.
void write_tensor_jsonl(std::ostream& out, const DiscreteVarifold& V, const CurvatureTensorField& field);

// Reads "H" (and "H_N" when present) per line; the line count must equal
// `atoms`. Throws InputError.
CurvatureField read_curvature_jsonl(const std::filesystem::path& path, int atoms, int S);

// Atom list {"x": [...], "P": [[...], ...], "w": w} per line; m is the trace
// of the first plane.
DiscreteVarifold read_varifold_jsonl(const std::filesystem::path& path);
void write_varifold_jsonl(std::ostream& out, const DiscreteVarifold& V);

// CSV header: lemma,lhs,rhs,constant,margin,status,pass,note
void write_bounds_csv(std::ostream& out, const std::vector<BoundReport>& reports);
std::string format_bounds_table(const std::vector<BoundReport>& reports);

}  // namespace varimin
