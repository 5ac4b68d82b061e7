// Copyright 2026 The ctfaug Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ctfaug/http_server.h"

#include <cstdlib>
#include <functional>

#include "ctfaug/status.h"
#include "httplib.h"
#include "json.hpp"

namespace ctfaug {

namespace {

using ojson = nlohmann::ordered_json;

void SendJson(httplib::Response& res, int status, const ojson& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void SendError(httplib::Response& res, int status, const std::string& message) {
  SendJson(res, status, ojson{{"error", message}});
}

using Handler = std::function<ojson(const httplib::Request&)>;

httplib::Server::Handler Wrap(Handler fn) {
  return [fn = std::move(fn)](const httplib::Request& req, httplib::Response& res) {
    try {
      SendJson(res, 200, fn(req));
    } catch (const NotFound& e) {
      SendError(res, 404, e.what());
    } catch (const Busy& e) {
      SendError(res, 409, e.what());
    } catch (const InvalidArgument& e) {
      SendError(res, 400, e.what());
    } catch (const nlohmann::json::exception& e) {
      SendError(res, 400, std::string("bad request body: ") + e.what());
    } catch (const std::exception& e) {
      SendError(res, 500, e.what());
    }
  };
}

nlohmann::json Body(const httplib::Request& req) {
  if (req.body.empty()) return nlohmann::json::object();
  auto body = nlohmann::json::parse(req.body);
  if (!body.is_object()) throw InvalidArgument("request body must be a JSON object");
  return body;
}

const std::string& Id(const httplib::Request& req) {
  return req.path_params.at("id");
}

}  // namespace

HttpServer::HttpServer(AnnotationService* service, std::string static_dir)
    : service_(service),
      static_dir_(std::move(static_dir)),
      server_(std::make_unique<httplib::Server>()) {
  Routes();
}

HttpServer::~HttpServer() { Stop(); }

void HttpServer::Routes() {
  auto& s = *server_;
  AnnotationService* svc = service_;

  s.Post("/api/session", Wrap([svc](const httplib::Request& req) {
           auto body = Body(req);
           return svc->CreateSession(body.value("session_id", std::string()));
         }));
  s.Get("/api/sessions", Wrap([svc](const httplib::Request&) {
          return ojson{{"sessions", svc->SessionIds()}};
        }));
  s.Get("/api/session/:id", Wrap([svc](const httplib::Request& req) {
          return svc->Session(Id(req));
        }));
  s.Get("/api/session/:id/status", Wrap([svc](const httplib::Request& req) {
          auto report = svc->Report(Id(req));
          return ojson{{"session_id", Id(req)},
                       {"status", report["status"]},
                       {"revision", report["revision"]}};
        }));
  s.Get("/api/session/:id/candidates", Wrap([svc](const httplib::Request& req) {
          return svc->ListCandidates(Id(req));
        }));
  s.Get("/api/session/:id/antonyms", Wrap([svc](const httplib::Request& req) {
          if (!req.has_param("term")) throw InvalidArgument("missing 'term'");
          return svc->Antonyms(Id(req), req.get_param_value("term"));
        }));
  s.Post("/api/session/:id/annotations", Wrap([svc](const httplib::Request& req) {
           auto body = Body(req);
           if (!body.contains("term") || !body["term"].is_string()) {
             throw InvalidArgument("'term' must be a string");
           }
           if (!body.contains("causal") || !body["causal"].is_boolean()) {
             throw InvalidArgument("'causal' must be a boolean");
           }
           std::optional<std::vector<std::string>> antonyms;
           if (body.contains("antonyms") && !body["antonyms"].is_null()) {
             antonyms = body["antonyms"].get<std::vector<std::string>>();
           }
           return svc->SubmitAnnotation(Id(req), body["term"].get<std::string>(),
                                        body["causal"].get<bool>(), antonyms);
         }));
  s.Post("/api/session/:id/retrain", Wrap([svc](const httplib::Request& req) {
           auto body = Body(req);
           std::uint64_t seed = svc->workspace().config.seed;
           if (body.contains("seed")) {
             if (!body["seed"].is_number_integer()) {
               throw InvalidArgument("'seed' must be an integer");
             }
             seed = body["seed"].get<std::uint64_t>();
           }
           return svc->Retrain(Id(req), seed);
         }));
  s.Get("/api/session/:id/report", Wrap([svc](const httplib::Request& req) {
          return svc->Report(Id(req));
        }));
  s.Get("/api/session/:id/counterfactuals", Wrap([svc](const httplib::Request& req) {
          if (!req.has_param("term")) throw InvalidArgument("missing 'term'");
          std::size_t limit = 20;
          if (req.has_param("limit")) {
            try {
              limit = std::stoul(req.get_param_value("limit"));
            } catch (const std::exception&) {
              throw InvalidArgument("'limit' must be a non-negative integer");
            }
          }
          return svc->Counterfactuals(Id(req), req.get_param_value("term"), limit);
        }));

  if (!static_dir_.empty() && !s.set_mount_point("/", static_dir_)) {
    throw IoError("cannot serve static files from " + static_dir_);
  }
}

int HttpServer::Bind(const std::string& host, int port) {
  if (port == 0) {
    int bound = server_->bind_to_any_port(host);
    if (bound < 0) throw IoError("cannot bind " + host);
    return bound;
  }
  if (!server_->bind_to_port(host, port)) {
    throw IoError("cannot bind " + host + ":" + std::to_string(port));
  }
  return port;
}

void HttpServer::Serve() { server_->listen_after_bind(); }

void HttpServer::Stop() {
  if (server_) server_->stop();
}

int ResolvePort(int flag_value, int fallback) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("CTF_PORT")) {
    try {
      int port = std::stoi(env);
      if (port > 0 && port < 65536) return port;
    } catch (const std::exception&) {
    }
    throw InvalidArgument(std::string("invalid CTF_PORT: ") + env);
  }
  return fallback;
}

}  // namespace ctfaug
