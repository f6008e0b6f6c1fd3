#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "microlab/arena/arena.hpp"
#include "microlab/bench/frame_stats.hpp"

namespace microlab {

/// One dataset scale: grid dims, population line count and agents at the densest step.
struct SizeSpec {
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t rows = 0;
  std::size_t agents = 0;

  friend bool operator==(const SizeSpec&, const SizeSpec&) = default;
};

/// 20x20:1389:392, 50x50:10600:2500, 100x100:48000:10000.
[[nodiscard]] std::vector<SizeSpec> default_sizes();
/// "WxH:rows:n"; nullopt when malformed or inconsistent (n > W*H, rows < n).
[[nodiscard]] std::optional<SizeSpec> parse_size_spec(std::string_view text);
[[nodiscard]] std::string format_size_spec(const SizeSpec& spec);

inline constexpr double kTargetFps = 70.0;

/// Agents per step: ceil(rows / n) steps, the last one holding n agents and the
/// remaining rows spread as evenly as possible (nondecreasing) over earlier steps.
[[nodiscard]] std::vector<std::size_t> agents_per_step(const SizeSpec& spec);

/// Synthetic trace at the given scale: eight SIHUMI-like species, six substances with
/// drifting concentration bumps. Deterministic per seed.
[[nodiscard]] SimulationTrace generate_bench_trace(const SizeSpec& spec, std::uint64_t seed);

struct BenchOptions {
  std::uint64_t seed = 2024;
  std::size_t frames = 500;
  std::size_t warmup = 50;
  std::filesystem::path work_dir;  // empty: a fresh directory under the temp path
};

struct BenchRecord {
  SizeSpec spec;
  std::size_t rows = 0;  // population lines written
  std::size_t n = 0;     // rows at the densest time step
  std::size_t steps = 0;
  double t1 = 0.0;       // read + parse + validate + index, seconds
  double t2 = 0.0;       // assemble and serialize every time step once, seconds
  FrameStats frames;
  bool suitable = false; // frames.fps >= 70
};

/// Generates, exports, re-imports and times one scale.
[[nodiscard]] BenchRecord run_bench(const SizeSpec& spec, const BenchOptions& options = {});

/// Aligned text table with the columns Dim, Rows, n, t1, t2, FPS, >=70.
[[nodiscard]] std::string bench_table(const std::vector<BenchRecord>& records);
[[nodiscard]] nlohmann::json bench_json(const std::vector<BenchRecord>& records);

}  // namespace microlab
