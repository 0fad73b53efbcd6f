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

#ifndef CAS_HTTP_SERVICE_H_
#define CAS_HTTP_SERVICE_H_

#include <memory>
#include <string>

#include "cas/session.h"

namespace cas {

// JSON over HTTP in front of a SessionService:
//
//   POST /sessions                   {"document", "reference"?, "beam_size"?,
//                                     "max_length"?, "length_penalty_alpha"?}
//   GET  /sessions/{id}
//   GET  /sessions/{id}/suggestions
//   POST /sessions/{id}/regenerate   {"constraints": [string, ...]}
//   GET  /sessions/{id}/history
//
// Errors are {"code", "message", "detail"} with a 4xx/5xx status.
class HttpServer {
 public:
  // `cors_origin` is sent as Access-Control-Allow-Origin.
  HttpServer(SessionService& service, std::string cors_origin = "*");
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds without serving; port 0 picks a free port. Returns the bound port
  // or -1.
  int bind(const std::string& host, int port);
  // Serves until stop(). Call after bind().
  bool run();
  void stop();
  bool running() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace cas

#endif  // CAS_HTTP_SERVICE_H_
