#include "microlab/bench/bench.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "microlab/arena/random.hpp"
#include "microlab/dataset/export.hpp"
#include "microlab/dataset/validate.hpp"
#include "microlab/viz/color.hpp"
#include "microlab/viz/wire.hpp"

namespace microlab {
namespace {

constexpr std::array<const char*, 8> kBenchSpecies{
    "Anaerostipes_caccae_DSM14662",   "Bacteroides_thetaiotaomicron_VPI5482",
    "Bifidobacterium_longum_NCC2705", "Blautia_producta_DSM2950",
    "Clostridium_butyricum_DSM10702", "Clostridium_ramosum_VPI0427",
    "Escherichia_coli_K12",           "Lactobacillus_plantarum_WCFS1",
};
constexpr std::array<const char*, 6> kBenchSubstances{
    "Glucose", "Lactate", "Acetate", "Butyrate", "Formate", "Ammonium",
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

bool parse_size(std::string_view text, std::size_t& out) {
  if (text.empty()) return false;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && ptr == text.data() + text.size();
}

}  // namespace

std::vector<SizeSpec> default_sizes() {
  return {{20, 20, 1389, 392}, {50, 50, 10600, 2500}, {100, 100, 48000, 10000}};
}

std::optional<SizeSpec> parse_size_spec(std::string_view text) {
  const auto x = text.find('x');
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
  if (x == std::string_view::npos || c1 == std::string_view::npos || c2 == std::string_view::npos ||
      x > c1) {
    return std::nullopt;
  }
  SizeSpec s;
  if (!parse_size(text.substr(0, x), s.width) || !parse_size(text.substr(x + 1, c1 - x - 1), s.height) ||
      !parse_size(text.substr(c1 + 1, c2 - c1 - 1), s.rows) || !parse_size(text.substr(c2 + 1), s.agents)) {
    return std::nullopt;
  }
  if (s.width == 0 || s.height == 0 || s.agents == 0 || s.agents > s.width * s.height ||
      s.rows < s.agents) {
    return std::nullopt;
  }
  return s;
}

std::string format_size_spec(const SizeSpec& s) {
  return std::to_string(s.width) + "x" + std::to_string(s.height) + ":" + std::to_string(s.rows) +
         ":" + std::to_string(s.agents);
}

std::vector<std::size_t> agents_per_step(const SizeSpec& spec) {
  const std::size_t steps = (spec.rows + spec.agents - 1) / spec.agents;
  std::vector<std::size_t> counts(steps, 0);
  counts.back() = spec.agents;
  if (steps > 1) {
    const std::size_t rest = spec.rows - spec.agents;
    const std::size_t earlier = steps - 1;
    for (std::size_t k = 0; k < earlier; ++k) {
      // Later steps take the remainder so counts never decrease.
      counts[k] = rest / earlier + (k >= earlier - rest % earlier ? 1 : 0);
    }
  }
  return counts;
}

SimulationTrace generate_bench_trace(const SizeSpec& spec, std::uint64_t seed) {
  SimulationRng rng(seed);
  SimulationTrace trace;
  trace.width = spec.width;
  trace.height = spec.height;
  trace.dt = 1.0;
  for (std::size_t i = 0; i < kBenchSpecies.size(); ++i) {
    trace.species.push_back({static_cast<int>(i) + 1, kBenchSpecies[i], species_color(static_cast<int>(i) + 1)});
  }

  const std::size_t cells = spec.width * spec.height;
  std::vector<std::size_t> order(cells);
  const auto counts = agents_per_step(spec);
  struct Bump {
    double cx, cy, vx, vy, base, amp, sigma;
  };
  std::vector<Bump> bumps;
  for (std::size_t s = 0; s < kBenchSubstances.size(); ++s) {
    bumps.push_back({uniform_unit(rng) * spec.width, uniform_unit(rng) * spec.height,
                     uniform_unit(rng) * 2.0 - 1.0, uniform_unit(rng) * 2.0 - 1.0,
                     0.1 + uniform_unit(rng), 1.0 + 4.0 * uniform_unit(rng),
                     0.2 * static_cast<double>(std::max(spec.width, spec.height)) + 1.0});
  }

  for (std::size_t k = 0; k < counts.size(); ++k) {
    Snapshot snap;
    snap.step = k + 1;
    snap.time = static_cast<double>(k + 1);
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = 0; i < counts[k]; ++i) {
      std::swap(order[i], order[i + uniform_index(rng, cells - i)]);
    }
    std::vector<std::size_t> taken(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(counts[k]));
    std::sort(taken.begin(), taken.end());
    for (std::size_t cell : taken) {
      Agent a;
      a.x = static_cast<int>(cell % spec.width) + 1;
      a.y = static_cast<int>(cell / spec.width) + 1;
      a.genotype = static_cast<int>(uniform_index(rng, kBenchSpecies.size())) + 1;
      a.phenotype = static_cast<int>(uniform_index(rng, 4)) + 1;
      a.biomass = 500.0 + 1500.0 * uniform_unit(rng);
      snap.agents.push_back(std::move(a));
    }
    for (std::size_t s = 0; s < kBenchSubstances.size(); ++s) {
      const auto& b = bumps[s];
      const double cx = b.cx + b.vx * static_cast<double>(k);
      const double cy = b.cy + b.vy * static_cast<double>(k);
      SubstanceField f;
      f.name = kBenchSubstances[s];
      f.concentrations = ConcentrationGrid(spec.width, spec.height);
      for (std::size_t row = 0; row < spec.height; ++row) {
        for (std::size_t col = 0; col < spec.width; ++col) {
          const double dx = static_cast<double>(col) - cx;
          const double dy = static_cast<double>(row) - cy;
          f.concentrations.at(row, col) =
              b.base + b.amp * std::exp(-(dx * dx + dy * dy) / (b.sigma * b.sigma));
        }
      }
      snap.fields.push_back(std::move(f));
    }
    trace.snapshots.push_back(std::move(snap));
  }
  return trace;
}

BenchRecord run_bench(const SizeSpec& spec, const BenchOptions& options) {
  BenchRecord record;
  record.spec = spec;

  const auto trace = generate_bench_trace(spec, options.seed);
  const std::vector<std::string> substances(kBenchSubstances.begin(), kBenchSubstances.end());
  const auto records = population_records(trace, substances, FluxMode::randomized(options.seed));

  std::filesystem::path dir = options.work_dir;
  if (dir.empty()) {
    dir = std::filesystem::temp_directory_path() /
          ("microlab_bench_" + std::to_string(spec.width) + "x" + std::to_string(spec.height) + "_" +
           std::to_string(spec.rows) + "_" + std::to_string(spec.agents));
  }
  std::filesystem::create_directories(dir);
  const auto pop_path = dir / kPopulationFileName;
  const auto sub_path = dir / kSubstanceFileName;
  {
    std::ofstream(pop_path, std::ios::binary) << write_population(records);
    std::ofstream(sub_path, std::ios::binary) << export_substance(trace, substances);
  }

  // t1: import from disk, including validation and indexing.
  const auto t1_start = Clock::now();
  std::ifstream pop_in(pop_path, std::ios::binary);
  std::ifstream sub_in(sub_path, std::ios::binary);
  ImportOptions import_options;
  import_options.population_bytes = std::filesystem::file_size(pop_path);
  import_options.substance_bytes = std::filesystem::file_size(sub_path);
  auto imported = import_pair(pop_in, sub_in, import_options);
  if (!imported.dataset) {
    throw DatasetError("bench dataset failed validation: " + imported.report.errors.front());
  }
  const IndexedDataset data(std::move(*imported.dataset));
  record.t1 = seconds_since(t1_start);

  record.rows = data.pair().population.size();
  record.n = data.densest_time_rows();
  record.steps = data.times().size();

  FrameSelection selection;
  selection.substance = data.substances().front();
  selection.flux_substance = data.substances().front();
  Frame frame;
  std::size_t bytes = 0;

  // t2: every time step once.
  const auto t2_start = Clock::now();
  for (long long t : data.times()) {
    assemble_frame_into(frame, data, t, selection);
    bytes += serialize_frame(frame).size();
  }
  record.t2 = seconds_since(t2_start);

  // Steady state: cycle through the time steps, warm-up frames discarded.
  const auto& times = data.times();
  std::vector<double> durations;
  durations.reserve(options.frames);
  for (std::size_t i = 0; i < options.warmup + options.frames; ++i) {
    const auto start = Clock::now();
    assemble_frame_into(frame, data, times[i % times.size()], selection);
    bytes += serialize_frame(frame).size();
    const double d = seconds_since(start);
    if (i >= options.warmup) durations.push_back(d);
  }
  if (bytes == 0) throw std::logic_error("empty frames");
  record.frames = fps_from_durations(durations);
  record.suitable = record.frames.fps >= kTargetFps;

  std::filesystem::remove(pop_path);
  std::filesystem::remove(sub_path);
  if (options.work_dir.empty()) std::filesystem::remove(dir);
  return record;
}

std::string bench_table(const std::vector<BenchRecord>& records) {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof(line), "%-9s %8s %7s %6s %10s %10s %9s %5s\n", "Dim", "Rows", "n",
                "Steps", "t1 [s]", "t2 [s]", "FPS", ">=70");
  out += line;
  for (const auto& r : records) {
    const std::string dim = std::to_string(r.spec.width) + "x" + std::to_string(r.spec.height);
    std::snprintf(line, sizeof(line), "%-9s %8zu %7zu %6zu %10.4f %10.4f %9.2f %5s\n", dim.c_str(),
                  r.rows, r.n, r.steps, r.t1, r.t2, r.frames.fps, r.suitable ? "yes" : "no");
    out += line;
  }
  out += "FPS = 1 / mean frame time, where a frame is assembly plus JSON serialization on this host.\n";
  return out;
}

nlohmann::json bench_json(const std::vector<BenchRecord>& records) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : records) {
    rows.push_back({{"dim", {r.spec.width, r.spec.height}},
                    {"rows", r.rows},
                    {"n", r.n},
                    {"steps", r.steps},
                    {"t1_s", r.t1},
                    {"t2_s", r.t2},
                    {"fps", r.frames.fps},
                    {"mean_frame_s", r.frames.mean},
                    {"frames", r.frames.durations.size()},
                    {"suitable", r.suitable}});
  }
  return {{"measured", "frame assembly + JSON serialization"},
          {"target_fps", kTargetFps},
          {"records", std::move(rows)}};
}

}  // namespace microlab
