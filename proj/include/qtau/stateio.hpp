#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include "qtau/qstate.hpp"

namespace qtau {

using ParsedState = std::variant<DensityMatrix, PureState>;

/// Complex scalar as `a+bi` / `a-bi` with 17 significant digits, e.g.
/// "0.5+0i". Round-trips bit-exactly through parse_complex.
std::string format_complex(Complex z);

/// Inverse of format_complex; accepts scientific notation in either part.
Complex parse_complex(std::string_view token);

/// Parse the one-line-header state format:
///   density d1 d2 [d3 ...]   followed by side^2 complex entries (row-major)
///   pure d1 d2 [d3 ...]      followed by side complex entries
/// Entries are whitespace-separated `a+bi` tokens. Throws ParseError with a
/// line number on syntax problems, NotAStateError with diagnostics when the
/// parsed object fails validation.
ParsedState parse_state_text(std::string_view text);
ParsedState parse_state_file(const std::filesystem::path& path);

std::string write_state_text(const DensityMatrix& rho);
std::string write_state_text(const PureState& psi);
void write_state_file(const std::filesystem::path& path, const DensityMatrix& rho);
void write_state_file(const std::filesystem::path& path, const PureState& psi);

} // namespace qtau
