#pragma once

#include <memory>
#include <string>

#include <json.hpp>

#include "microlab/service/session.hpp"

namespace microlab {

[[nodiscard]] nlohmann::json event_to_json(const ProgressEvent& event);
[[nodiscard]] nlohmann::json report_to_json(const ValidationReport& report);
[[nodiscard]] nlohmann::json session_to_json(const SessionSnapshot& snapshot);

/// HTTP front end over a SessionManager:
///   POST /sessions                   demo flag (?demo=1 or {"demo":true}) or multipart
///                                    files "population" and "substance"
///   GET  /sessions/{id}              phase, progress, report
///   GET  /sessions/{id}/events       server-sent progress events until Ready/Failed
///   GET  /sessions/{id}/metadata
///   GET  /sessions/{id}/frame?t=&substance=&mode=&flux=&scheme=
///   GET  /sessions/{id}/mesh?t=&substance=&mode=
///   GET  /sessions/{id}/stats        frame timing of this session
///   GET  /schemes
class HttpService {
public:
  explicit HttpService(SessionManager& sessions);
  ~HttpService();
  HttpService(const HttpService&) = delete;
  HttpService& operator=(const HttpService&) = delete;

  /// Binds to an ephemeral port and returns it (-1 on failure).
  int bind_any(const std::string& host = "127.0.0.1");
  bool bind(const std::string& host, int port);
  /// Serves until stop(); blocks.
  bool run();
  void stop();

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace microlab
