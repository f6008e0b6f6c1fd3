#include "microlab/service/session.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include "microlab/dataset/validate.hpp"

namespace microlab {

namespace {

// Share of the progress bar given to reading; validation and indexing get the rest.
constexpr double kReadShare = 0.8;

}  // namespace

const char* phase_name(Phase phase) {
  switch (phase) {
    case Phase::Empty: return "empty";
    case Phase::Importing: return "importing";
    case Phase::Validating: return "validating";
    case Phase::Ready: return "ready";
    case Phase::Failed: return "failed";
  }
  return "empty";
}

struct SessionManager::Session {
  std::string id;
  mutable std::mutex mutex;
  mutable std::condition_variable changed;
  Phase phase = Phase::Empty;
  double progress = 0.0;
  std::optional<ValidationReport> report;
  std::shared_ptr<const IndexedDataset> dataset;
  std::vector<ProgressEvent> events;
  std::vector<double> frame_durations;

  bool settled() const { return phase == Phase::Ready || phase == Phase::Failed; }

  void publish(Phase p, double fraction, std::optional<std::string> message = {}) {
    {
      std::lock_guard lock(mutex);
      // Overall progress never moves backwards, whatever the stage reports.
      fraction = std::max(fraction, progress);
      if (p == phase && fraction == progress && !message && !events.empty()) return;
      phase = p;
      progress = fraction;
      events.push_back({events.size(), id, p, fraction, std::move(message)});
    }
    changed.notify_all();
  }
};

SessionManager::SessionManager(std::filesystem::path demo_dir) : demo_dir_(std::move(demo_dir)) {}

SessionManager::~SessionManager() {
  for (auto& w : workers_)
    if (w.joinable()) w.join();
}

std::shared_ptr<SessionManager::Session> SessionManager::find(const std::string& id) const {
  std::lock_guard lock(mutex_);
  const auto it = sessions_.find(id);
  if (it == sessions_.end()) throw UnknownSessionError("unknown session " + id);
  return it->second;
}

std::string SessionManager::start(std::function<void(Session&)> load) {
  auto session = std::make_shared<Session>();
  std::lock_guard lock(mutex_);
  session->id = std::to_string(next_id_++);
  sessions_.emplace(session->id, session);
  session->publish(Phase::Importing, 0.0);
  workers_.emplace_back([session, load = std::move(load)] {
    try {
      load(*session);
    } catch (const std::exception& e) {
      {
        std::lock_guard l(session->mutex);
        ValidationReport report;
        report.errors.push_back(e.what());
        report.status = {{kPopulationFileName, false}, {kSubstanceFileName, false}};
        session->report = std::move(report);
      }
      session->publish(Phase::Failed, 0.0, e.what());
    }
  });
  return session->id;
}

namespace {

void run_import(std::istream& pop, std::istream& sub, std::size_t pop_bytes, std::size_t sub_bytes,
                auto& session) {
  ImportOptions options;
  options.population_bytes = pop_bytes;
  options.substance_bytes = sub_bytes;
  options.on_progress = [&](ImportStage stage, double f) {
    if (stage == ImportStage::Reading) {
      session.publish(Phase::Importing, kReadShare * f);
    } else {
      // Indexing follows validation, so validation only covers half the remaining share.
      session.publish(Phase::Validating, kReadShare + 0.5 * (1.0 - kReadShare) * f);
    }
  };
  auto result = import_pair(pop, sub, options);
  if (!result.dataset) {
    std::string joined;
    for (const auto& e : result.report.errors) joined += (joined.empty() ? "" : "\n") + e;
    {
      std::lock_guard lock(session.mutex);
      session.report = result.report;
    }
    session.publish(Phase::Failed, 0.0, joined);
    return;
  }
  auto data = std::make_shared<const IndexedDataset>(std::move(*result.dataset));
  {
    std::lock_guard lock(session.mutex);
    session.report = result.report;
    session.dataset = std::move(data);
  }
  session.publish(Phase::Ready, 1.0);
}

}  // namespace

std::string SessionManager::import_demo() {
  const auto pop_path = demo_dir_ / kPopulationFileName;
  const auto sub_path = demo_dir_ / kSubstanceFileName;
  return start([pop_path, sub_path](Session& s) {
    std::ifstream pop(pop_path, std::ios::binary);
    std::ifstream sub(sub_path, std::ios::binary);
    if (!pop || !sub) throw std::runtime_error("demo dataset not found in " + pop_path.parent_path().string());
    run_import(pop, sub, std::filesystem::file_size(pop_path), std::filesystem::file_size(sub_path), s);
  });
}

std::string SessionManager::import_uploaded(std::string population, std::string substance) {
  auto texts = std::make_shared<std::pair<std::string, std::string>>(std::move(population),
                                                                     std::move(substance));
  return start([texts](Session& s) {
    std::istringstream pop(texts->first);
    std::istringstream sub(texts->second);
    run_import(pop, sub, texts->first.size(), texts->second.size(), s);
  });
}

SessionSnapshot SessionManager::snapshot(const std::string& id) const {
  const auto s = find(id);
  std::lock_guard lock(s->mutex);
  return {s->id, s->phase, s->progress, s->report, s->dataset};
}

std::shared_ptr<const IndexedDataset> SessionManager::ready_dataset(const std::string& id) const {
  const auto s = find(id);
  std::lock_guard lock(s->mutex);
  if (s->phase != Phase::Ready) throw NotReadyError(id, s->phase);
  return s->dataset;
}

std::vector<ProgressEvent> SessionManager::events_since(const std::string& id, std::size_t from,
                                                        std::chrono::milliseconds wait) const {
  const auto s = find(id);
  std::unique_lock lock(s->mutex);
  s->changed.wait_for(lock, wait, [&] { return s->events.size() > from || s->settled(); });
  if (from >= s->events.size()) return {};
  return {s->events.begin() + static_cast<std::ptrdiff_t>(from), s->events.end()};
}

Phase SessionManager::wait_settled(const std::string& id) const {
  const auto s = find(id);
  std::unique_lock lock(s->mutex);
  s->changed.wait(lock, [&] { return s->settled(); });
  return s->phase;
}

void SessionManager::record_frame_duration(const std::string& id, double seconds) {
  const auto s = find(id);
  std::lock_guard lock(s->mutex);
  if (seconds > 0.0) s->frame_durations.push_back(seconds);
}

std::optional<FrameStats> SessionManager::frame_stats(const std::string& id) const {
  const auto s = find(id);
  std::lock_guard lock(s->mutex);
  if (s->frame_durations.empty()) return std::nullopt;
  return fps_from_durations(s->frame_durations);
}

}  // namespace microlab
