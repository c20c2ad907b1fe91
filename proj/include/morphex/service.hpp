#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <string_view>

#include "morphex/project.hpp"

namespace morphex {

/// HTTP front end over the engine. Routes:
///
///   GET  /project             current session project (404 when none)
///   PUT  /project             replace the session project
///   POST /analyze             {text}            -> {words: solutions}
///   POST /simulate/mbf        {text}            -> {words: [{word, index, length, tags}]}
///   POST /simulate/mre        {text, maxSteps?} -> {matches: [...]}
///   POST /extract/relations   {text}            -> {graph}
///   POST /actions/run         {text}            -> {annotations, printed, variables}
///   POST /diff                {reference, candidate, predicate, documentLength?}
///
/// Engine requests use the session project unless the body carries its own
/// "project". Malformed requests answer 400 with {error, path}.
class Service {
public:
  struct Response {
    int status = 200;
    std::string body;  // JSON
  };

  explicit Service(std::shared_ptr<const Engine> engine = nullptr,
                   SimulationOptions options = {});

  /// Transport-independent dispatch; serve() routes every request here.
  Response handle(std::string_view method, std::string_view path, std::string_view body);

  /// Blocks until stop() is called or the socket fails; false when the port
  /// could not be bound.
  bool serve(const std::string& host, int port);
  void stop();

  std::shared_ptr<const Engine> session() const;

private:
  struct Server;

  mutable std::mutex mutex_;
  std::shared_ptr<const Engine> engine_;
  SimulationOptions options_;
  std::shared_ptr<Server> server_;
};

}  // namespace morphex
