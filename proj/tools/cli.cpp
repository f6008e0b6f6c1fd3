#include "microlab/cli/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "microlab/arena/config_io.hpp"
#include "microlab/bench/bench.hpp"
#include "microlab/cli/render.hpp"
#include "microlab/dataset/csv.hpp"
#include "microlab/dataset/export.hpp"
#include "microlab/dataset/validate.hpp"
#include "microlab/service/http.hpp"
#include "microlab/viz/frame.hpp"

namespace microlab {

std::filesystem::path default_demo_dir() { return std::filesystem::path(MICROLAB_RESOURCE_DIR) / "demo"; }

namespace {

// Thrown for bad argument values that CLI11 cannot check on its own.
class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

struct SimulateArgs {
  std::string config;
  std::string out_dir;
  std::size_t steps = 0;
};

int run_simulate(const SimulateArgs& a, std::ostream& out) {
  const auto cfg = load_config(a.config);
  const std::size_t steps = a.steps ? a.steps : cfg.steps;
  const auto trace = run_simulation(cfg, steps);
  std::filesystem::create_directories(a.out_dir);
  const auto path = std::filesystem::path(a.out_dir) / "trace.json";
  save_trace(trace, path);
  out << "simulated " << steps << " steps on " << trace.width << "x" << trace.height << ", "
      << trace.snapshots.back().agents.size() << " agents at the end\n"
      << "wrote " << path.string() << "\n";
  return kExitOk;
}

struct ExportArgs {
  std::string trace;
  std::string out_dir;
  std::optional<std::uint64_t> random_seed;
  bool skip_initial = false;
  std::vector<std::string> substances;
};

int run_export(const ExportArgs& a, std::ostream& out) {
  const auto trace = load_trace(a.trace);
  auto substances = a.substances.empty() ? select_fluctuating_substances(trace) : a.substances;
  if (substances.size() > kFluxColumns) throw UsageError("at most 6 substances can be exported");
  ExportOptions options;
  options.include_initial = !a.skip_initial;
  const FluxMode mode = a.random_seed ? FluxMode::randomized(*a.random_seed) : FluxMode::computed();
  std::filesystem::create_directories(a.out_dir);
  const std::filesystem::path dir(a.out_dir);
  std::string substance_text;
  try {
    substance_text = export_substance(trace, substances, options);
  } catch (const DatasetError& e) {
    throw UsageError(e.what());
  }
  write_file(dir / kPopulationFileName, export_population(trace, substances, mode, options));
  write_file(dir / kSubstanceFileName, substance_text);
  out << "substances:";
  for (const auto& s : substances) out << ' ' << s;
  out << "\nwrote " << (dir / kPopulationFileName).string() << " and "
      << (dir / kSubstanceFileName).string() << "\n";
  return kExitOk;
}

int run_validate(const std::string& pop_path, const std::string& sub_path, std::ostream& out) {
  std::ifstream pop(pop_path, std::ios::binary);
  std::ifstream sub(sub_path, std::ios::binary);
  ImportOptions options;
  options.population_name = pop_path;
  options.substance_name = sub_path;
  const auto result = import_pair(pop, sub, options);
  for (const auto& [file, ok] : result.report.status) out << file << ": " << (ok ? "ok" : "failed") << "\n";
  for (const auto& e : result.report.errors) out << e << "\n";
  if (!result.report.ok()) return kExitInvalid;
  const auto& d = *result.dataset;
  out << d.population.size() << " population rows, " << d.substances.size() << " substances, "
      << d.times.size() << " time steps, " << d.width << "x" << d.height << "\n";
  return kExitOk;
}

struct RenderArgs {
  std::string substance_csv;
  std::string substance;
  long long time = 0;
  std::size_t scheme = kDefaultScheme;
  std::size_t scale = kDefaultPixelScale;
  std::string output;
};

int run_render(const RenderArgs& a, std::ostream& out, std::ostream& err) {
  std::vector<SubstanceBlock> blocks;
  try {
    blocks = parse_substance(read_file(a.substance_csv), a.substance_csv);
  } catch (const DatasetError& e) {
    err << e.what() << "\n";
    return kExitInvalid;
  }
  std::vector<SubstanceBlock> selected;
  for (auto& b : blocks)
    if (b.substance == a.substance) selected.push_back(std::move(b));
  if (selected.empty()) throw UsageError("no substance '" + a.substance + "' in " + a.substance_csv);
  const auto [lo, hi] = global_extremes(selected, a.substance);

  std::size_t width = 0;
  std::size_t height = 0;
  for (const auto& b : selected) {
    if (b.time != a.time) continue;
    width = std::max(width, b.values.size());
    height = std::max(height, static_cast<std::size_t>(b.row));
  }
  if (width == 0) throw UsageError("no time " + std::to_string(a.time) + " for " + a.substance);
  ConcentrationGrid grid(width, height);
  for (const auto& b : selected) {
    if (b.time != a.time) continue;
    for (std::size_t col = 0; col < b.values.size(); ++col) grid.at(static_cast<std::size_t>(b.row) - 1, col) = b.values[col];
  }
  const auto image = render_heatmap(grid, lo, hi, color_scheme(a.scheme), a.scale);
  write_png(image, a.output);
  out << "wrote " << a.output << " (" << image.width << "x" << image.height << " px, range " << lo
      << " to " << hi << " mM, scheme " << color_scheme(a.scheme).name << ")\n";
  return kExitOk;
}

struct ServeArgs {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string demo_dir = default_demo_dir().string();
};

int run_serve(const ServeArgs& a, std::ostream& out, std::ostream& err) {
  SessionManager sessions(a.demo_dir);
  HttpService http(sessions);
  int port = a.port;
  if (port == 0) {
    port = http.bind_any(a.host);
    if (port < 0) {
      err << "cannot bind " << a.host << "\n";
      return kExitInvalid;
    }
  } else if (!http.bind(a.host, port)) {
    err << "cannot bind " << a.host << ":" << port << "\n";
    return kExitInvalid;
  }
  out << "listening on http://" << a.host << ":" << port << std::endl;
  return http.run() ? kExitOk : kExitInvalid;
}

struct BenchArgs {
  std::vector<std::string> sizes;
  std::size_t frames = 500;
  std::size_t warmup = 50;
  std::uint64_t seed = 2024;
  std::string json_path = "bench_report.json";
};

int run_bench_cmd(const BenchArgs& a, std::ostream& out) {
  std::vector<SizeSpec> specs;
  for (const auto& text : a.sizes) {
    const auto spec = parse_size_spec(text);
    if (!spec) throw UsageError("bad size '" + text + "', expected WxH:rows:n");
    specs.push_back(*spec);
  }
  if (specs.empty()) specs = default_sizes();
  if (a.frames == 0) throw UsageError("--frames must be positive");
  BenchOptions options;
  options.seed = a.seed;
  options.frames = a.frames;
  options.warmup = a.warmup;
  std::vector<BenchRecord> records;
  for (const auto& spec : specs) records.push_back(run_bench(spec, options));
  out << bench_table(records);
  if (!a.json_path.empty()) {
    write_file(a.json_path, bench_json(records).dump(2) + "\n");
    out << "wrote " << a.json_path << "\n";
  }
  return kExitOk;
}

}  // namespace

int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spatial dFBA simulation, dataset conversion and visualization service", "microlab"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run a simulation config and write trace.json");
  simulate->add_option("config", sim.config, "Simulation config (JSON)")->required()->check(CLI::ExistingFile);
  simulate->add_option("-o,--output", sim.out_dir, "Output directory")->required();
  simulate->add_option("--steps", sim.steps, "Override the configured step count");

  ExportArgs exp;
  std::uint64_t seed = 0;
  auto* export_cmd = app.add_subcommand("export", "Write the population and substance CSV pair");
  export_cmd->add_option("trace", exp.trace, "trace.json from simulate")->required()->check(CLI::ExistingFile);
  export_cmd->add_option("-o,--output", exp.out_dir, "Output directory")->required();
  auto* random_opt = export_cmd->add_option("--random-fluxes", seed, "Draw fluxes uniformly from [-50, 50] with this seed");
  export_cmd->add_flag("--skip-initial", exp.skip_initial, "Leave out the step-0 snapshot");
  export_cmd->add_option("--substances", exp.substances, "Substances to export (default: six most fluctuating)")
      ->delimiter(',');

  std::string pop_path;
  std::string sub_path;
  auto* validate = app.add_subcommand("validate", "Check a dataset pair");
  validate->add_option("population", pop_path, "population_dataset.csv")->required()->check(CLI::ExistingFile);
  validate->add_option("substance", sub_path, "substance_dataset.csv")->required()->check(CLI::ExistingFile);

  RenderArgs ren;
  auto* render = app.add_subcommand("render", "Render one substance matrix to PNG");
  render->add_option("substance_csv", ren.substance_csv, "substance_dataset.csv")->required()->check(CLI::ExistingFile);
  render->add_option("--substance", ren.substance, "Substance name")->required();
  render->add_option("--time", ren.time, "Time step")->required();
  render->add_option("--scheme", ren.scheme, "Colour scheme 0..4")->check(CLI::Range(0, 4));
  render->add_option("--scale", ren.scale, "Pixels per grid cell")->check(CLI::Range(1, 256));
  render->add_option("-o,--output", ren.output, "PNG file")->required();

  ServeArgs srv;
  auto* serve = app.add_subcommand("serve", "Serve sessions over HTTP");
  serve->add_option("--host", srv.host, "Bind address");
  serve->add_option("--port", srv.port, "Port (0 picks a free one)")->check(CLI::Range(0, 65535));
  serve->add_option("--demo-dir", srv.demo_dir, "Directory with the demo dataset pair")->check(CLI::ExistingDirectory);

  BenchArgs ben;
  auto* bench = app.add_subcommand("bench", "Import and frame-rate benchmark at the three reference scales");
  bench->add_option("--sizes", ben.sizes, "Sizes as WxH:rows:n")->delimiter(',');
  bench->add_option("--frames", ben.frames, "Measured frames per size");
  bench->add_option("--warmup", ben.warmup, "Discarded warm-up frames");
  bench->add_option("--seed", ben.seed, "Generator seed");
  bench->add_option("--json", ben.json_path, "Machine-readable report path ('' to skip)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    if (auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front()) {
      err << "run 'microlab " << sub->get_name() << " --help' for usage\n";
    } else {
      err << "run 'microlab --help' for usage\n";
    }
    return kExitUsage;
  }

  try {
    if (*simulate) return run_simulate(sim, out);
    if (*export_cmd) {
      if (*random_opt) exp.random_seed = seed;
      return run_export(exp, out);
    }
    if (*validate) return run_validate(pop_path, sub_path, out);
    if (*render) return run_render(ren, out, err);
    if (*serve) return run_serve(srv, out, err);
    if (*bench) return run_bench_cmd(ben, out);
  } catch (const UsageError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitUsage;
}

}  // namespace microlab
