#include "microlab/viz/color.hpp"

#include <algorithm>
#include <cmath>

namespace microlab {
namespace {

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::uint8_t lerp_channel(std::uint8_t a, std::uint8_t b, double t) {
  const double v = std::floor(a + (static_cast<double>(b) - a) * t + 0.5);
  return static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
}

double linearize(std::uint8_t channel) {
  const double c = channel / 255.0;
  return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

// Distinct hues that stay readable as glyph fills on both light and dark meshes.
constexpr std::array<const char*, 8> kSpeciesPalette{
    "#E6194B", "#3CB44B", "#4363D8", "#F58231", "#911EB4", "#42D4F4", "#F032E6", "#BFEF45",
};

}  // namespace

Rgb parse_hex(std::string_view hex) {
  if (hex.size() != 7 || hex[0] != '#') throw BadHexError("bad hex colour: " + std::string(hex));
  int v[6];
  for (int i = 0; i < 6; ++i) {
    v[i] = hex_digit(hex[static_cast<std::size_t>(i) + 1]);
    if (v[i] < 0) throw BadHexError("bad hex colour: " + std::string(hex));
  }
  return {static_cast<std::uint8_t>(v[0] * 16 + v[1]), static_cast<std::uint8_t>(v[2] * 16 + v[3]),
          static_cast<std::uint8_t>(v[4] * 16 + v[5])};
}

std::string to_hex(Rgb color) {
  static constexpr char kDigits[] = "0123456789ABCDEF";
  std::string out = "#";
  for (std::uint8_t c : {color.r, color.g, color.b}) {
    out += kDigits[c >> 4];
    out += kDigits[c & 0xF];
  }
  return out;
}

const ColorScheme& color_scheme(std::size_t index) {
  if (index >= kColorSchemes.size()) {
    throw std::out_of_range("colour scheme index " + std::to_string(index) + " out of range");
  }
  return kColorSchemes[index];
}

Rgb map_color(double value, double min, double max, Rgb start, Rgb end) {
  if (!(max > min)) return start;
  const double t = std::clamp((value - min) / (max - min), 0.0, 1.0);
  return {lerp_channel(start.r, end.r, t), lerp_channel(start.g, end.g, t),
          lerp_channel(start.b, end.b, t)};
}

Rgb map_color(double value, double min, double max, const ColorScheme& scheme) {
  return map_color(value, min, max, parse_hex(scheme.start_hex), parse_hex(scheme.end_hex));
}

double relative_luminance(Rgb color) {
  return 0.2126 * linearize(color.r) + 0.7152 * linearize(color.g) + 0.0722 * linearize(color.b);
}

double contrast_ratio(Rgb a, Rgb b) {
  const double la = relative_luminance(a);
  const double lb = relative_luminance(b);
  return (std::max(la, lb) + 0.05) / (std::min(la, lb) + 0.05);
}

double contrast_ratio(std::string_view fg_hex, std::string_view bg_hex) {
  return contrast_ratio(parse_hex(fg_hex), parse_hex(bg_hex));
}

std::string species_color(int genotype) {
  const auto n = static_cast<int>(kSpeciesPalette.size());
  const int i = ((genotype - 1) % n + n) % n;
  return kSpeciesPalette[static_cast<std::size_t>(i)];
}

}  // namespace microlab
