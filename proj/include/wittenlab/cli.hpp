#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "wittenlab/lattice.hpp"

namespace wittenlab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitInput = 2;

/// "0" is the zero vector; otherwise exactly `rank` comma-separated integers.
LatticeVector parse_vector(const std::string& text, std::size_t rank);

/// Runs one command line (without the program name). Returns 0 on success,
/// 1 on a verification mismatch or gap, 2 on bad input.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wittenlab
