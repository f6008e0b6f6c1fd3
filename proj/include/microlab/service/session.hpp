#pragma once

#include <chrono>
#include <condition_variable>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "microlab/bench/frame_stats.hpp"
#include "microlab/dataset/records.hpp"
#include "microlab/viz/frame.hpp"

namespace microlab {

enum class Phase { Empty, Importing, Validating, Ready, Failed };

[[nodiscard]] const char* phase_name(Phase phase);  // "empty", "importing", ...

struct ProgressEvent {
  std::size_t seq = 0;  // position in the session's event log
  std::string session;
  Phase phase = Phase::Empty;
  double fraction = 0.0;  // overall, in [0, 1]
  std::optional<std::string> message;
};

class UnknownSessionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class NotReadyError : public std::runtime_error {
public:
  NotReadyError(const std::string& id, Phase phase)
      : std::runtime_error("session " + id + " is " + phase_name(phase)), phase_(phase) {}
  [[nodiscard]] Phase phase() const { return phase_; }

private:
  Phase phase_;
};

struct SessionSnapshot {
  std::string id;
  Phase phase = Phase::Empty;
  double progress = 0.0;
  std::optional<ValidationReport> report;
  std::shared_ptr<const IndexedDataset> dataset;  // set when Ready
};

/// In-memory session store. Each import runs on its own worker thread (the only
/// writer of that session); readers get immutable snapshots.
class SessionManager {
public:
  /// `demo_dir` holds population_dataset.csv and substance_dataset.csv.
  explicit SessionManager(std::filesystem::path demo_dir);
  ~SessionManager();
  SessionManager(const SessionManager&) = delete;
  SessionManager& operator=(const SessionManager&) = delete;

  /// Starts importing the bundled demo pair; returns the new session id at once.
  std::string import_demo();
  /// Starts importing an uploaded pair.
  std::string import_uploaded(std::string population, std::string substance);

  [[nodiscard]] SessionSnapshot snapshot(const std::string& id) const;
  /// Dataset of a Ready session; NotReadyError otherwise.
  [[nodiscard]] std::shared_ptr<const IndexedDataset> ready_dataset(const std::string& id) const;

  /// Events with seq >= from. Blocks up to `wait` when there are none yet and the
  /// session has not settled.
  [[nodiscard]] std::vector<ProgressEvent> events_since(const std::string& id, std::size_t from,
                                                        std::chrono::milliseconds wait) const;
  /// Blocks until the session is Ready or Failed; returns the final phase.
  Phase wait_settled(const std::string& id) const;

  /// Frame request timing, kept per session.
  void record_frame_duration(const std::string& id, double seconds);
  [[nodiscard]] std::optional<FrameStats> frame_stats(const std::string& id) const;

private:
  struct Session;
  std::shared_ptr<Session> find(const std::string& id) const;
  std::string start(std::function<void(Session&)> load);

  std::filesystem::path demo_dir_;
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::vector<std::thread> workers_;
  std::size_t next_id_ = 1;
};

}  // namespace microlab
