#pragma once

#include <string>

namespace bpo {

/// Shortest round-trip decimal form of a double (std::to_chars); stable
/// across runs, so CSV output is byte-identical for identical inputs.
std::string format_real(double value);

}  // namespace bpo
