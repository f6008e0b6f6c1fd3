#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace microlab {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

class BadHexError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Accepts "#RRGGBB" (case-insensitive). Anything else throws BadHexError.
[[nodiscard]] Rgb parse_hex(std::string_view hex);
/// Upper-case "#RRGGBB".
[[nodiscard]] std::string to_hex(Rgb color);

struct ColorScheme {
  const char* name;
  const char* start_hex;  // colour at the minimum
  const char* end_hex;    // colour at the maximum
};

inline constexpr std::array<ColorScheme, 5> kColorSchemes{{
    {"black-white", "#000000", "#FFFFFF"},
    {"blue-yellow", "#0000FF", "#FFFF00"},
    {"orange-cyan", "#FF7F00", "#00FFFF"},
    {"purple-yellow", "#7E1E9C", "#FFFF00"},
    {"brown-lightblue", "#A52A2A", "#ADD8E6"},
}};

/// Blue (low) to yellow (high).
inline constexpr std::size_t kDefaultScheme = 1;

[[nodiscard]] const ColorScheme& color_scheme(std::size_t index);

/// Linear per-channel interpolation, value clamped to [min, max], channels rounded
/// half up. min == max gives the start colour.
[[nodiscard]] Rgb map_color(double value, double min, double max, const ColorScheme& scheme);
[[nodiscard]] Rgb map_color(double value, double min, double max, Rgb start, Rgb end);

/// WCAG 2 relative luminance of an sRGB colour, in [0, 1].
[[nodiscard]] double relative_luminance(Rgb color);
/// (L_lighter + 0.05) / (L_darker + 0.05), in [1, 21].
[[nodiscard]] double contrast_ratio(Rgb a, Rgb b);
[[nodiscard]] double contrast_ratio(std::string_view fg_hex, std::string_view bg_hex);

/// Glyph colour for a genotype, cycling through a fixed palette.
[[nodiscard]] std::string species_color(int genotype);

}  // namespace microlab
