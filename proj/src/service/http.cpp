#include "microlab/service/http.hpp"

#include <chrono>
#include <optional>

#include <httplib.h>

#include "microlab/dataset/csv.hpp"
#include "microlab/viz/wire.hpp"

namespace microlab {

using nlohmann::json;

json event_to_json(const ProgressEvent& e) {
  json out = {{"seq", e.seq},
              {"session", e.session},
              {"phase", phase_name(e.phase)},
              {"fraction", e.fraction},
              {"message", nullptr}};
  if (e.message) out["message"] = *e.message;
  return out;
}

json report_to_json(const ValidationReport& report) {
  json status = json::array();
  for (const auto& [file, ok] : report.status) status.push_back({{"file", file}, {"ok", ok}});
  return {{"status", std::move(status)}, {"errors", report.errors}};
}

json session_to_json(const SessionSnapshot& s) {
  json out = {{"id", s.id},
              {"phase", phase_name(s.phase)},
              {"progress", s.progress},
              {"report", nullptr}};
  if (s.report) out["report"] = report_to_json(*s.report);
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& kind,
                const std::string& message) {
  send_json(res, status, {{"error", kind}, {"message", message}});
}

class BadRequest : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

long long time_param(const httplib::Request& req) {
  if (!req.has_param("t")) throw BadRequest("missing parameter t");
  const auto v = parse_integer(req.get_param_value("t"));
  if (!v) throw BadRequest("parameter t must be an integer");
  return *v;
}

std::optional<std::string> optional_param(const httplib::Request& req, const char* name) {
  if (!req.has_param(name)) return std::nullopt;
  auto v = req.get_param_value(name);
  if (v.empty()) return std::nullopt;
  return v;
}

MeshMode mode_param(const httplib::Request& req) {
  const auto text = optional_param(req, "mode");
  if (!text) return MeshMode::Flat2D;
  const auto mode = parse_mesh_mode(*text);
  if (!mode) throw BadRequest("mode must be 2d or 3d");
  return *mode;
}

std::size_t scheme_param(const httplib::Request& req) {
  const auto text = optional_param(req, "scheme");
  if (!text) return kDefaultScheme;
  const auto v = parse_integer(*text);
  if (!v || *v < 0 || *v >= static_cast<long long>(kColorSchemes.size())) {
    throw BadRequest("scheme must be 0.." + std::to_string(kColorSchemes.size() - 1));
  }
  return static_cast<std::size_t>(*v);
}

// Maps the error types of the session and viz layers onto status codes.
template <typename F>
void guarded(httplib::Response& res, F&& body) {
  try {
    body();
  } catch (const UnknownSessionError& e) {
    send_error(res, 404, "unknown_session", e.what());
  } catch (const NotReadyError& e) {
    send_json(res, 409, {{"error", "not_ready"}, {"message", e.what()}, {"phase", phase_name(e.phase())}});
  } catch (const UnknownTimeError& e) {
    send_error(res, 404, "unknown_time", e.what());
  } catch (const UnknownSubstanceError& e) {
    send_error(res, 404, "unknown_substance", e.what());
  } catch (const BadRequest& e) {
    send_error(res, 400, "bad_request", e.what());
  } catch (const std::exception& e) {
    send_error(res, 500, "internal", e.what());
  }
}

}  // namespace

struct HttpService::Impl {
  SessionManager& sessions;
  httplib::Server server;

  explicit Impl(SessionManager& s) : sessions(s) { routes(); }

  void routes() {
    server.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
    server.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) {
      res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
      res.set_header("Access-Control-Allow-Headers", "Content-Type");
      res.status = 204;
    });

    server.Get("/schemes", [](const httplib::Request&, httplib::Response& res) {
      send_json(res, 200, schemes_to_json());
    });

    server.Post("/sessions", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        bool demo = false;
        if (const auto flag = optional_param(req, "demo")) demo = *flag == "1" || *flag == "true";
        if (!demo && !req.is_multipart_form_data() && !req.body.empty()) {
          const auto body = json::parse(req.body, nullptr, false);
          if (body.is_discarded() || !body.is_object()) throw BadRequest("body must be a JSON object");
          demo = body.value("demo", false);
        }
        std::string id;
        if (demo) {
          id = sessions.import_demo();
        } else if (req.has_file("population") && req.has_file("substance")) {
          id = sessions.import_uploaded(req.get_file_value("population").content,
                                        req.get_file_value("substance").content);
        } else {
          throw BadRequest("send demo=1 or multipart files 'population' and 'substance'");
        }
        send_json(res, 202, session_to_json(sessions.snapshot(id)));
      });
    });

    server.Get(R"(/sessions/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] { send_json(res, 200, session_to_json(sessions.snapshot(req.matches[1]))); });
    });

    server.Get(R"(/sessions/([^/]+)/metadata)",
               [this](const httplib::Request& req, httplib::Response& res) {
                 guarded(res, [&] {
                   send_json(res, 200, metadata_to_json(*sessions.ready_dataset(req.matches[1])));
                 });
               });

    server.Get(R"(/sessions/([^/]+)/frame)", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const std::string id = req.matches[1];
        const auto start = Clock::now();
        const auto data = sessions.ready_dataset(id);
        FrameSelection sel;
        sel.substance = optional_param(req, "substance");
        sel.flux_substance = optional_param(req, "flux");
        sel.mode = mode_param(req);
        sel.scheme = scheme_param(req);
        const auto body = serialize_frame(assemble_frame(*data, time_param(req), sel));
        res.status = 200;
        res.set_content(body, "application/json");
        sessions.record_frame_duration(id, std::chrono::duration<double>(Clock::now() - start).count());
      });
    });

    server.Get(R"(/sessions/([^/]+)/mesh)", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const auto data = sessions.ready_dataset(req.matches[1]);
        const auto substance = optional_param(req, "substance");
        if (!substance) throw BadRequest("missing parameter substance");
        const long long t = time_param(req);
        const auto mesh = build_heatmap_mesh(data->matrix(*substance, t), mode_param(req),
                                             kDefaultHeightScale, data->extremes(*substance));
        res.status = 200;
        res.set_content(serialize_mesh(mesh), "application/json");
      });
    });

    server.Get(R"(/sessions/([^/]+)/stats)", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const auto stats = sessions.frame_stats(req.matches[1]);
        if (!stats) {
          send_json(res, 200, {{"frames", 0}, {"mean_s", nullptr}, {"fps", nullptr}});
          return;
        }
        send_json(res, 200, {{"frames", stats->durations.size()}, {"mean_s", stats->mean}, {"fps", stats->fps}});
      });
    });

    server.Get(R"(/sessions/([^/]+)/events)", [this](const httplib::Request& req, httplib::Response& res) {
      const std::string id = req.matches[1];
      try {
        (void)sessions.snapshot(id);
      } catch (const UnknownSessionError& e) {
        send_error(res, 404, "unknown_session", e.what());
        return;
      }
      res.set_header("Cache-Control", "no-cache");
      auto next = std::make_shared<std::size_t>(0);
      res.set_chunked_content_provider(
          "text/event-stream", [this, id, next](std::size_t, httplib::DataSink& sink) {
            const auto events = sessions.events_since(id, *next, std::chrono::seconds(15));
            if (events.empty()) {
              const std::string ping = ": keep-alive\n\n";
              return sink.write(ping.data(), ping.size());
            }
            bool terminal = false;
            for (const auto& e : events) {
              const std::string chunk =
                  "event: progress\nid: " + std::to_string(e.seq) + "\ndata: " + event_to_json(e).dump() + "\n\n";
              if (!sink.write(chunk.data(), chunk.size())) return false;
              *next = e.seq + 1;
              terminal = terminal || e.phase == Phase::Ready || e.phase == Phase::Failed;
            }
            if (terminal) sink.done();
            return true;
          });
    });
  }
};

HttpService::HttpService(SessionManager& sessions) : impl_(std::make_unique<Impl>(sessions)) {}
HttpService::~HttpService() { stop(); }

int HttpService::bind_any(const std::string& host) { return impl_->server.bind_to_any_port(host); }
bool HttpService::bind(const std::string& host, int port) { return impl_->server.bind_to_port(host, port); }
bool HttpService::run() { return impl_->server.listen_after_bind(); }
void HttpService::stop() {
  if (impl_) impl_->server.stop();
}

}  // namespace microlab
