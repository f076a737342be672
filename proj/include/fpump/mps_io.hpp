#pragma once

#include <iosfwd>
#include <string>

#include "fpump/model.hpp"

namespace fpump {

/// Parses fixed- or free-format MPS into a validated MipInstance.
///
/// Supported records: NAME, OBJSENSE, ROWS (one N row), COLUMNS with
/// INTORG/INTEND markers, RHS (objective-row entry becomes the objective
/// constant), RANGES (expanded into a companion row with the opposite
/// sense), BOUNDS (UP LO FX BV MI PL FR UI LI), ENDATA. Defaults follow the
/// classical convention: continuous variables get [0, inf); marker-integer
/// variables without any explicit bound record get [0, 1]. Maximization
/// problems are canonicalized to minimization by negating the objective.
///
/// Throws std::runtime_error with a line number on malformed input, and
/// std::invalid_argument if the resulting instance is invalid (for example
/// an integer variable left with an infinite bound).
MipInstance parse_mps(std::istream& in, const std::string& name_hint = "unnamed");

MipInstance parse_mps_string(const std::string& text, const std::string& name_hint = "unnamed");

/// Reads an instance from disk; transparently inflates gzip files.
MipInstance load_instance(const std::string& path);

/// Deterministic free-format MPS dump with synthetic row/column names.
/// parse(dump(parse(f))) == parse(f) for every supported input.
std::string dump_canonical(const MipInstance& inst);

}  // namespace fpump
