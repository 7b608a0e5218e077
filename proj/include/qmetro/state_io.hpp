#pragma once

#include <iosfwd>
#include <string>

#include "qmetro/two_mode_state.hpp"

namespace qmetro {

/// Plain-text state format: header (version, cutoff, kind, trace_tail) then
/// one "re im" line per entry, row-major for density matrices, 17
/// significant digits so doubles round-trip exactly.
void save_state(std::ostream& os, const TwoModeState& state);
void save_state_file(const std::string& path, const TwoModeState& state);

TwoModeState load_state(std::istream& is);
TwoModeState load_state_file(const std::string& path);

} // namespace qmetro
