// Copyright 2026 The CAS Workbench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cas/http_service.h"

#include "httplib.h"
#include "json.hpp"

namespace cas {
namespace {

using nlohmann::json;

json rouge_json(const RougeTriple& t) {
  auto one = [](const RougeScore& s) {
    return json{{"p", s.precision}, {"r", s.recall}, {"f1", s.f1}};
  };
  return {{"r1", one(t.r1)}, {"r2", one(t.r2)}, {"rl", one(t.rl)}};
}

json iteration_json(const Iteration& it) {
  json diff = json::array();
  for (const auto& d : it.diff) {
    diff.push_back({{"op", d.added ? "added" : "removed"},
                    {"start", d.start},
                    {"end", d.end},
                    {"text", d.text}});
  }
  json out = {{"index", it.index},
              {"constraints", it.constraints},
              {"summary", it.summary},
              {"satisfied", it.satisfied},
              {"fallback_used", it.fallback_used},
              {"raw_logprob", it.raw_logprob},
              {"normalized_score", it.normalized_score},
              {"steps", it.steps},
              {"wall_ms", it.wall_ms},
              {"diff", diff},
              {"timestamp", it.timestamp}};
  out["rouge"] = it.rouge ? rouge_json(*it.rouge) : json(nullptr);
  return out;
}

json decode_json(const DecodeConfig& d) {
  return {{"beam_size", d.beam_size},
          {"max_length", d.max_length},
          {"length_penalty_alpha", d.length_penalty_alpha}};
}

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& code,
                const std::string& message, json detail = nullptr) {
  send_json(res, status,
            {{"code", code}, {"message", message}, {"detail", detail}});
}

json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  json body = json::parse(req.body);
  if (!body.is_object()) {
    throw ServiceError(400, "bad_request", "request body must be an object");
  }
  return body;
}

}  // namespace

struct HttpServer::Impl {
  SessionService& service;
  std::string origin;
  httplib::Server server;

  template <typename Fn>
  httplib::Server::Handler guarded(Fn fn) {
    return [this, fn](const httplib::Request& req, httplib::Response& res) {
      try {
        fn(req, res);
      } catch (const ServiceError& e) {
        json detail = nullptr;
        if (!e.issues().empty()) {
          detail = json::array();
          for (const auto& i : e.issues()) {
            detail.push_back({{"index", i.index},
                              {"constraint", i.text},
                              {"message", i.message}});
          }
        }
        send_error(res, e.status(), e.code(), e.what(), detail);
      } catch (const json::exception& e) {
        send_error(res, 400, "bad_request", e.what());
      } catch (const std::exception& e) {
        send_error(res, 500, "internal", e.what());
      }
    };
  }

  void routes() {
    server.set_default_headers(
        {{"Access-Control-Allow-Origin", origin},
         {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
         {"Access-Control-Allow-Headers", "Content-Type"}});
    server.Options(R"(/.*)", [](const httplib::Request&,
                                httplib::Response& res) { res.status = 204; });

    server.Post("/sessions", guarded([this](const httplib::Request& req,
                                            httplib::Response& res) {
      const json body = parse_body(req);
      if (!body.contains("document") || !body["document"].is_string()) {
        throw ServiceError(400, "bad_request",
                           "\"document\" must be a string");
      }
      std::optional<std::string> reference;
      if (body.contains("reference") && !body["reference"].is_null()) {
        reference = body["reference"].get<std::string>();
      }
      DecodeConfig decode = service.options().decode;
      decode.beam_size = body.value("beam_size", decode.beam_size);
      decode.max_length = body.value("max_length", decode.max_length);
      decode.length_penalty_alpha =
          body.value("length_penalty_alpha", decode.length_penalty_alpha);
      const std::string id = service.create(
          body["document"].get<std::string>(), reference, decode);
      const auto history = service.history(id);
      send_json(res, 201,
                {{"session_id", id},
                 {"iteration", iteration_json(history.front())}});
    }));

    server.Get(R"(/sessions/([^/]+))",
               guarded([this](const httplib::Request& req,
                              httplib::Response& res) {
                 const auto snap = service.get(req.matches[1]);
                 send_json(res, 200,
                           {{"session_id", snap.id},
                            {"document", snap.document},
                            {"reference", snap.reference
                                              ? json(*snap.reference)
                                              : json(nullptr)},
                            {"config", decode_json(snap.decode)},
                            {"num_iterations", snap.iterations.size()},
                            {"latest", iteration_json(snap.iterations.back())}});
               }));

    server.Get(R"(/sessions/([^/]+)/suggestions)",
               guarded([this](const httplib::Request& req,
                              httplib::Response& res) {
                 json list = json::array();
                 for (const auto& s : service.suggest(req.matches[1])) {
                   list.push_back({{"text", s.text},
                                   {"score", s.score},
                                   {"first_position", s.first_position},
                                   {"in_summary", s.in_summary},
                                   {"status", s.status}});
                 }
                 send_json(res, 200, {{"session_id", req.matches[1]},
                                      {"suggestions", list}});
               }));

    server.Post(R"(/sessions/([^/]+)/regenerate)",
                guarded([this](const httplib::Request& req,
                               httplib::Response& res) {
                  const json body = parse_body(req);
                  std::vector<std::string> constraints;
                  if (body.contains("constraints")) {
                    if (!body["constraints"].is_array()) {
                      throw ServiceError(400, "bad_request",
                                         "\"constraints\" must be a list");
                    }
                    for (const auto& c : body["constraints"]) {
                      if (!c.is_string()) {
                        throw ServiceError(400, "bad_request",
                                           "constraints must be strings");
                      }
                      constraints.push_back(c.get<std::string>());
                    }
                  }
                  const Iteration it =
                      service.regenerate(req.matches[1], constraints);
                  send_json(res, 200, {{"session_id", req.matches[1]},
                                       {"iteration", iteration_json(it)}});
                }));

    server.Get(R"(/sessions/([^/]+)/history)",
               guarded([this](const httplib::Request& req,
                              httplib::Response& res) {
                 json list = json::array();
                 for (const auto& it : service.history(req.matches[1])) {
                   list.push_back(iteration_json(it));
                 }
                 send_json(res, 200, {{"session_id", req.matches[1]},
                                      {"iterations", list}});
               }));

    server.set_error_handler([](const httplib::Request&,
                                httplib::Response& res) {
      if (res.body.empty()) {
        send_error(res, res.status, res.status == 404 ? "not_found" : "error",
                   "no such endpoint");
      }
    });
  }
};

HttpServer::HttpServer(SessionService& service, std::string cors_origin)
    : impl_(new Impl{service, std::move(cors_origin), {}}) {
  impl_->routes();
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::run() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_) impl_->server.stop();
}

bool HttpServer::running() const { return impl_->server.is_running(); }

}  // namespace cas
