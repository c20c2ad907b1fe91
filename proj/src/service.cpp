#include "morphex/service.hpp"

#include "httplib.h"
#include "morphex/io.hpp"

namespace morphex {

using io::json;

struct Service::Server {
  httplib::Server http;
};

Service::Service(std::shared_ptr<const Engine> engine, SimulationOptions options)
    : engine_(std::move(engine)), options_(options) {}

std::shared_ptr<const Engine> Service::session() const {
  std::lock_guard lock(mutex_);
  return engine_;
}

namespace {

using Response = Service::Response;

Response reply(int status, const json& body) { return {status, io::canonical(body)}; }

Response error(int status, const std::string& message, const std::string& path = "") {
  json body = {{"error", message}};
  if (!path.empty()) body["path"] = path;
  return reply(status, body);
}

struct NotFound : Error {
  using Error::Error;
};

const json& object_body(const json& body) {
  if (!body.is_object()) throw ValidationError("", "request body must be a JSON object");
  return body;
}

std::string text_of(const json& body) {
  auto it = body.find("text");
  if (it == body.end()) throw ValidationError("text", "missing field");
  if (!it->is_string()) throw ValidationError("text", "expected a string");
  return it->get<std::string>();
}

}  // namespace

Response Service::handle(std::string_view method, std::string_view path, std::string_view body) {
  try {
    if (path == "/project") {
      if (method == "GET") {
        auto engine = session();
        if (!engine) return error(404, "no project loaded");
        return reply(200, io::to_json(engine->project()));
      }
      if (method == "PUT") {
        auto project = io::project_from_json(io::parse(body, "body"), ".", "");
        auto engine = std::make_shared<const Engine>(std::move(project));
        std::lock_guard lock(mutex_);
        engine_ = std::move(engine);
        return reply(200, {{"status", "ok"}});
      }
      return error(405, "method not allowed");
    }

    static const char* const kPost[] = {"/analyze",           "/simulate/mbf", "/simulate/mre",
                                        "/extract/relations", "/actions/run",  "/diff"};
    if (std::find(std::begin(kPost), std::end(kPost), path) == std::end(kPost))
      return error(404, "no route " + std::string(path));
    if (method != "POST") return error(405, "method not allowed");

    const json req = io::parse(body, "body");
    object_body(req);

    if (path == "/diff") {
      for (const char* key : {"reference", "candidate", "predicate"})
        if (!req.contains(key)) throw ValidationError(key, "missing field");
      if (!req["predicate"].is_string()) throw ValidationError("predicate", "expected a string");
      const auto predicate = overlap_predicate_from(req["predicate"].get<std::string>());
      if (!predicate)
        throw ValidationError("predicate",
                              "expected intersection, exact, a-includes-b or b-includes-a");
      const auto a = io::tags_from_json(req["reference"], "reference");
      const auto b = io::tags_from_json(req["candidate"], "candidate");
      std::optional<std::size_t> length;
      if (auto it = req.find("documentLength"); it != req.end()) {
        if (!it->is_number_unsigned()) throw ValidationError("documentLength", "expected a count");
        length = it->get<std::size_t>();
      }
      return reply(200, io::to_json(diff_tags(a, b, *predicate, length), *predicate));
    }

    std::shared_ptr<const Engine> engine;
    if (auto it = req.find("project"); it != req.end()) {
      engine = std::make_shared<const Engine>(io::project_from_json(*it, ".", "project"));
    } else {
      engine = session();
      if (!engine) throw NotFound("no project loaded and none given in the request");
    }
    const std::string text = text_of(req);
    SimulationOptions options = options_;
    if (auto it = req.find("maxSteps"); it != req.end()) {
      if (!it->is_number_unsigned() || it->get<std::size_t>() == 0)
        throw ValidationError("maxSteps", "expected a positive integer");
      options.maxSteps = it->get<std::size_t>();
    }

    if (path == "/analyze") return reply(200, {{"words", io::to_json(engine->analyze(text))}});
    if (path == "/simulate/mbf")
      return reply(200, {{"words", io::to_json(engine->tag(engine->analyze(text)))}});

    const RunResult r = engine->run(text, options);
    if (path == "/simulate/mre")
      return reply(200, {{"matches", io::to_json(io::make_tags_file(r, std::nullopt))["matches"]}});
    if (path == "/extract/relations") return reply(200, {{"graph", io::to_json(r.graph)}});

    json vars = json::object();
    for (const auto& [k, v] : r.env.variables) vars[k] = io::to_json(v);
    return reply(200, {{"annotations", io::to_json(io::make_tags_file(r, std::nullopt))["annotations"]},
                       {"printed", r.env.printed},
                       {"variables", std::move(vars)}});
  } catch (const NotFound& e) {
    return error(404, e.what());
  } catch (const ValidationError& e) {
    return error(400, e.what(), e.path());
  } catch (const ParseError& e) {
    return error(400, e.what());
  } catch (const PipelineError& e) {
    json body = {{"error", e.what()}, {"stage", e.stage()}};
    return reply(422, body);
  } catch (const std::exception& e) {
    return error(500, e.what());
  }
}

bool Service::serve(const std::string& host, int port) {
  auto server = std::make_shared<Server>();
  {
    std::lock_guard lock(mutex_);
    server_ = server;
  }
  auto route = [this](const httplib::Request& req, httplib::Response& res) {
    const Response r = handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  server->http.Get(".*", route);
  server->http.Put(".*", route);
  server->http.Post(".*", route);
  server->http.Delete(".*", route);
  return server->http.listen(host, port);
}

void Service::stop() {
  std::shared_ptr<Server> server;
  {
    std::lock_guard lock(mutex_);
    server = server_;
  }
  if (server) server->http.stop();
}

}  // namespace morphex
