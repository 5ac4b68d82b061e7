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
//
// HTTP/JSON front end for AnnotationService, built on cpp-httplib.

#ifndef CTFAUG_HTTP_SERVER_H_
#define CTFAUG_HTTP_SERVER_H_

#include <memory>
#include <string>

#include "ctfaug/annotation_service.h"

namespace httplib {
class Server;
}

namespace ctfaug {

class HttpServer {
 public:
  // `static_dir` may be empty; otherwise it is served at "/".
  HttpServer(AnnotationService* service, std::string static_dir = "");
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds to host:port. Port 0 picks a free port. Returns the bound port.
  int Bind(const std::string& host, int port);
  // Blocks until Stop() is called.
  void Serve();
  void Stop();

 private:
  void Routes();

  AnnotationService* service_;
  std::string static_dir_;
  std::unique_ptr<httplib::Server> server_;
};

// Port from the flag if positive, else CTF_PORT, else `fallback`.
int ResolvePort(int flag_value, int fallback = 8080);

}  // namespace ctfaug

#endif  // CTFAUG_HTTP_SERVER_H_
