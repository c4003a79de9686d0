#include "arsg/service.hpp"

#include <fstream>
#include <sstream>

#include <httplib.h>

#include "arsg/error.hpp"
#include "json_codec.hpp"

namespace arsg {

namespace {

using codec::Json;

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::SessionNotFound: return 404;
    case ErrorCode::Unauthorized: return 401;
    case ErrorCode::SessionClosed:
    case ErrorCode::NothingToUndo:
    case ErrorCode::NotReducedToRoot: return 409;
    case ErrorCode::IllegalShift:
    case ErrorCode::IncompleteReduce:
    case ErrorCode::NoLexicalCores:
    case ErrorCode::EmptyInput:
    case ErrorCode::UnknownConcept: return 422;
    case ErrorCode::Io: return 500;
    default: return 400;
  }
}

HttpResponse error_response(ErrorCode code, const std::string& message) {
  Json body = {{"error", {{"code", std::string(to_string(code))}, {"message", message}}}};
  return {status_for(code), body.dump()};
}

HttpResponse json_response(const Json& body, int status = 200) { return {status, body.dump()}; }

Json actions_json(const AnnotationSession& s) {
  auto a = s.legal_actions();
  auto hint = s.hint();
  return {{"shift", a.shift},
          {"reduce", a.reduce},
          {"undo", a.undo},
          {"finalize", a.finalize},
          {"hint", hint ? Json(std::string(to_string(*hint))) : Json()}};
}

Json state_json(const AnnotationSession& s) {
  const auto& m = s.machine();
  Json stack = Json::array();
  for (const auto& n : m.stack()) stack.push_back(codec::to_json(*n));
  Json input = Json::array();
  for (std::size_t i = m.input().size() - m.remaining(); i < m.input().size(); ++i) input.push_back(m.input()[i]->dre);
  Json edus = Json::array();
  for (const auto& e : s.edus()) edus.push_back(codec::to_json(e));
  const NodePtr* c = m.lookahead();
  return {{"id", s.id()},
          {"text_id", s.text_id()},
          {"status", std::string(to_string(s.status()))},
          {"edus", std::move(edus)},
          {"leaves", m.input().size()},
          {"stack", std::move(stack)},
          {"lookahead", c ? codec::to_json(**c) : Json()},
          {"input", std::move(input)},
          {"events", s.events().size()},
          {"actions", actions_json(s)}};
}

std::optional<Role> role_field(const Json& roles, std::size_t i) {
  if (!roles.is_array() || roles.size() != 2 || !roles[i].is_string()) return std::nullopt;
  return parse_role(roles[i].get<std::string>());
}

ReduceRequest reduce_from_json(const Json& j) {
  ReduceRequest r;
  if (auto it = j.find("head"); it != j.end() && it->is_string()) r.head = it->get<std::string>();
  if (auto it = j.find("roles"); it != j.end()) {
    r.left_role = role_field(*it, 0);
    r.right_role = role_field(*it, 1);
  }
  if (auto it = j.find("rre"); it != j.end() && it->is_string()) r.rre = it->get<std::string>();
  if (auto it = j.find("happy"); it != j.end()) {
    if (!it->is_number_integer()) throw Error(ErrorCode::IncompleteReduce, "happy must be an integer");
    r.happy = it->get<std::int64_t>();
  }
  if (auto it = j.find("equations"); it != j.end()) r.equations = codec::equations_from_json(*it);
  return r;
}

Json reduce_to_json(const ReduceRequest& r) {
  Json j = {{"head", r.head}, {"equations", codec::to_json(std::span<const AttributeEquation>(r.equations))}};
  if (r.left_role && r.right_role) {
    j["roles"] = {std::string(to_string(*r.left_role)), std::string(to_string(*r.right_role))};
  }
  if (r.rre) j["rre"] = *r.rre;
  if (r.happy) j["happy"] = *r.happy;
  return j;
}

std::vector<Edu> edus_from_request(const Json& body) {
  if (auto it = body.find("edus"); it != body.end()) {
    if (!it->is_array()) codec::violation("session request", "edus must be a list of strings");
    std::string lines;
    for (const auto& e : *it) {
      if (!e.is_string()) codec::violation("session request", "edus must be a list of strings");
      lines += e.get<std::string>() + "\n";
    }
    return segment(lines, {SegmentMode::Lines});
  }
  auto text = codec::require_string(body, "text", "session request");
  SegmentationConfig seg;
  if (auto it = body.find("segmentation"); it != body.end()) {
    auto mode = it->is_string() ? it->get<std::string>() : std::string();
    if (mode == "markers") {
      seg.mode = SegmentMode::Markers;
    } else if (mode == "lines") {
      seg.mode = SegmentMode::Lines;
    } else if (mode != "punctuation") {
      codec::violation("session request", "segmentation must be punctuation, lines or markers");
    }
  }
  return segment(text, seg);
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> parts;
  std::stringstream ss(path.substr(0, path.find('?')));
  std::string part;
  while (std::getline(ss, part, '/')) {
    if (!part.empty()) parts.push_back(part);
  }
  return parts;
}

}  // namespace

AnnotationService::AnnotationService(ServiceConfig config) : config_(std::move(config)) {
  if (!config_.dkb) config_.dkb = std::make_shared<DomainKnowledgeBase>();
  if (config_.data_dir) std::filesystem::create_directories(*config_.data_dir);
}

SessionOptions AnnotationService::session_options() const {
  SessionOptions o;
  o.grammar = config_.grammar;
  if (config_.grammar) {
    o.schema = config_.grammar->schema;
    o.rre_labels = config_.grammar->rre;
  }
  for (const auto& c : config_.dkb->concepts()) {
    if (c.color == Color::Blue) o.heads.insert(c.id);
  }
  return o;
}

std::shared_ptr<AnnotationService::Entry> AnnotationService::find(const std::string& id) {
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw Error(ErrorCode::SessionNotFound, "no session '" + id + "'");
  return it->second;
}

void AnnotationService::journal(const std::string& id, const std::string& line) {
  if (!config_.data_dir) return;
  std::ofstream out(*config_.data_dir / (id + ".jsonl"), std::ios::app);
  out << line << '\n';
  if (!out) throw Error(ErrorCode::Io, "cannot append to the journal of session '" + id + "'");
}

HttpResponse AnnotationService::handle(const HttpRequest& request) {
  try {
    if (config_.token && request.authorization != "Bearer " + *config_.token) {
      throw Error(ErrorCode::Unauthorized, "missing or wrong bearer token");
    }
    auto parts = split_path(request.path);
    if (parts.empty() || parts[0] != "sessions" || parts.size() > 3) {
      throw Error(ErrorCode::BadRequest, "unknown resource " + request.path);
    }
    if (parts.size() == 1) {
      if (request.method != "POST") throw Error(ErrorCode::BadRequest, "use POST to create a session");
      return create(request.body);
    }
    return on_session(request.method, parts[1], parts.size() == 3 ? parts[2] : std::string(), request.body);
  } catch (const Error& e) {
    return error_response(e.code(), e.what());
  } catch (const std::exception& e) {
    return error_response(ErrorCode::BadRequest, e.what());
  }
}

HttpResponse AnnotationService::create(const std::string& body) {
  auto j = codec::parse(body, "session request");
  auto text_id = j.contains("text_id") ? codec::require_string(j, "text_id", "session request") : std::string("text");
  auto edus = edus_from_request(j);
  std::vector<LeafOverride> overrides;
  if (auto it = j.find("overrides"); it != j.end()) overrides = parse_overrides(Json{{"overrides", *it}}.dump());

  const std::string id = "s" + std::to_string(next_id_++);
  auto entry = std::make_shared<Entry>();
  entry->session = std::make_unique<AnnotationSession>(
      AnnotationSession::create(id, text_id, std::move(edus), *config_.dkb, config_.cues, overrides, session_options()));
  const auto& s = *entry->session;

  Json edus_json = Json::array();
  for (const auto& e : s.edus()) edus_json.push_back(codec::to_json(e));
  Json leaves = Json::array();
  for (const auto& l : s.leaves()) leaves.push_back(codec::to_json(*l));
  journal(id, Json{{"op", "create"}, {"text_id", text_id}, {"edus", edus_json}, {"leaves", leaves}}.dump());

  Json state = state_json(s);
  {
    std::lock_guard lock(mutex_);
    sessions_[id] = std::move(entry);
  }
  return json_response(state, 201);
}

HttpResponse AnnotationService::on_session(const std::string& method, const std::string& id, const std::string& action,
                                           const std::string& body) {
  auto entry = find(id);
  std::lock_guard lock(entry->mutex);
  auto& s = *entry->session;
  if (action.empty() && method == "GET") return json_response(state_json(s));
  if (action.empty() && method == "DELETE") {
    s.abandon();
    journal(id, R"({"op":"abandon"})");
    return json_response(state_json(s));
  }
  if (action == "actions" && method == "GET") return json_response(actions_json(s));
  if (action == "log" && method == "GET") return json_response(Json::parse(serialize_log(s.log())));
  if (method != "POST") throw Error(ErrorCode::BadRequest, method + " not supported on this resource");

  if (action == "decisions") {
    auto j = codec::parse(body, "decision");
    auto kind = codec::require_string(j, "action", "decision");
    if (kind == "shift") {
      s.shift();
      journal(id, R"({"op":"shift"})");
    } else if (kind == "reduce") {
      auto r = reduce_from_json(j);
      s.reduce(r);
      journal(id, Json{{"op", "reduce"}, {"request", reduce_to_json(r)}}.dump());
    } else {
      throw Error(ErrorCode::BadRequest, "action must be shift or reduce");
    }
    return json_response(state_json(s));
  }
  if (action == "undo") {
    s.undo();
    journal(id, R"({"op":"undo"})");
    return json_response(state_json(s));
  }
  if (action == "finalize") {
    auto log = s.finalize();
    journal(id, R"({"op":"finalize"})");
    if (config_.data_dir) {
      std::ofstream out(*config_.data_dir / (id + ".log.json"));
      out << serialize_log(log);
    }
    Artr artr{log.text_id, log.edus, log.root};
    return json_response({{"session", state_json(s)},
                          {"artr", codec::to_json(artr)},
                          {"log", Json::parse(serialize_log(log))}});
  }
  throw Error(ErrorCode::BadRequest, "unknown action '" + action + "'");
}

std::size_t AnnotationService::recover() {
  if (!config_.data_dir) return 0;
  std::size_t count = 0;
  for (const auto& file : std::filesystem::directory_iterator(*config_.data_dir)) {
    if (file.path().extension() != ".jsonl") continue;
    const std::string id = file.path().stem().string();
    std::ifstream in(file.path());
    std::string line;
    std::unique_ptr<AnnotationSession> session;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      auto j = codec::parse(line, "session journal");
      auto op = codec::require_string(j, "op", "session journal");
      if (op == "create") {
        std::vector<Edu> edus;
        for (const auto& e : codec::require(j, "edus", "session journal")) edus.push_back(codec::edu_from_json(e));
        std::vector<NodePtr> leaves;
        for (const auto& l : codec::require(j, "leaves", "session journal")) leaves.push_back(codec::node_from_json(l));
        session = std::make_unique<AnnotationSession>(id, codec::require_string(j, "text_id", "session journal"),
                                                      std::move(edus), std::move(leaves), session_options());
        continue;
      }
      if (!session) throw Error(ErrorCode::SchemaViolation, "journal of '" + id + "' does not start with create");
      if (op == "shift") {
        session->shift();
      } else if (op == "reduce") {
        session->reduce(reduce_from_json(codec::require(j, "request", "session journal")));
      } else if (op == "undo") {
        session->undo();
      } else if (op == "finalize") {
        session->finalize();
      } else if (op == "abandon") {
        session->abandon();
      }
    }
    if (!session) continue;
    auto entry = std::make_shared<Entry>();
    entry->session = std::move(session);
    {
      std::lock_guard lock(mutex_);
      sessions_[id] = std::move(entry);
    }
    if (id.size() > 1 && id[0] == 's') {
      try {
        auto n = std::stoull(id.substr(1));
        if (n >= next_id_) next_id_ = n + 1;
      } catch (const std::exception&) {
      }
    }
    ++count;
  }
  return count;
}

struct HttpServer::Impl {
  httplib::Server server;
};

HttpServer::HttpServer(AnnotationService& service) : impl_(std::make_unique<Impl>()) {
  auto bridge = [&service](const httplib::Request& req, httplib::Response& res) {
    HttpRequest r{req.method, req.path, req.body, req.get_header_value("Authorization")};
    auto out = service.handle(r);
    res.status = out.status;
    res.set_content(out.body, out.content_type);
  };
  const std::string pattern = R"(/sessions(/.*)?)";
  impl_->server.Get(pattern, bridge);
  impl_->server.Post(pattern, bridge);
  impl_->server.Delete(pattern, bridge);
  if (const auto& dir = service.config().static_dir; dir && std::filesystem::is_directory(*dir)) {
    impl_->server.set_mount_point("/", dir->string());
  }
}

HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string& host, int port) {
  const int bound = port == 0 ? impl_->server.bind_to_any_port(host) : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw Error(ErrorCode::Io, "cannot listen on " + host + ":" + std::to_string(port));
  return bound;
}

void HttpServer::run() { impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

void serve_http(AnnotationService& service, const std::string& host, int port) {
  HttpServer server(service);
  server.bind(host, port);
  server.run();
}

}  // namespace arsg
