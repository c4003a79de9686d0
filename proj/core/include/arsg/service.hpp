#pragma once

#include <atomic>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "arsg/annotation.hpp"
#include "arsg/dkb.hpp"
#include "arsg/grammar.hpp"
#include "arsg/textprep.hpp"

namespace arsg {

struct ServiceConfig {
  std::shared_ptr<const DomainKnowledgeBase> dkb;
  CueLexicon cues;
  std::shared_ptr<const Grammar> grammar;  // hints and the accepted RRE set
  std::optional<std::string> token;        // bearer token required on every request when set
  std::optional<std::filesystem::path> data_dir;    // session journals and finalized logs
  std::optional<std::filesystem::path> static_dir;  // UI bundle served at /
};

struct HttpRequest {
  std::string method;
  std::string path;
  std::string body;
  std::string authorization;  // raw Authorization header
};

struct HttpResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

// Session API independent of any transport:
//   POST   /sessions                   create
//   GET    /sessions/{id}              state
//   GET    /sessions/{id}/actions      legal actions and hint
//   POST   /sessions/{id}/decisions    shift or reduce
//   POST   /sessions/{id}/undo
//   POST   /sessions/{id}/finalize
//   GET    /sessions/{id}/log          annotation log document
//   DELETE /sessions/{id}              abandon
// Errors come back as {"error": {"code", "message"}}.
class AnnotationService {
 public:
  explicit AnnotationService(ServiceConfig config);

  HttpResponse handle(const HttpRequest& request);

  // Rebuilds every session journaled under data_dir. Returns how many.
  std::size_t recover();

  const ServiceConfig& config() const { return config_; }

 private:
  struct Entry {
    std::mutex mutex;
    std::unique_ptr<AnnotationSession> session;
  };

  std::shared_ptr<Entry> find(const std::string& id);
  SessionOptions session_options() const;
  void journal(const std::string& id, const std::string& line);

  HttpResponse create(const std::string& body);
  HttpResponse on_session(const std::string& method, const std::string& id, const std::string& action,
                          const std::string& body);

  ServiceConfig config_;
  std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
  std::atomic<std::uint64_t> next_id_{1};
};

// HTTP transport for a service. bind() returns the bound port (pass 0 for an
// ephemeral one); run() blocks until stop() is called from another thread.
class HttpServer {
 public:
  explicit HttpServer(AnnotationService& service);
  ~HttpServer();

  int bind(const std::string& host, int port);
  void run();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Blocks serving `service` over HTTP until the process is stopped.
void serve_http(AnnotationService& service, const std::string& host, int port);

}  // namespace arsg
