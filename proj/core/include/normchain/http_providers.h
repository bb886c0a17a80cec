// Copyright 2026 The normchain Authors.
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

#ifndef NORMCHAIN_HTTP_PROVIDERS_H_
#define NORMCHAIN_HTTP_PROVIDERS_H_

#include <condition_variable>
#include <memory>
#include <mutex>
#include <string>

#include "normchain/providers.h"

namespace normchain {

// Connection settings for one expert service.
struct HttpEndpoint {
  std::string url;  // "http://host:port[/prefix]"
  int timeout_ms = 30000;
  int max_concurrency = 4;
  // Transport-level retries. A retry resends the identical request (same
  // seed), so it can only reproduce the same answer or fail again.
  int retries = 1;
};

// Caps in-flight requests per endpoint.
class ConcurrencyLimiter {
 public:
  explicit ConcurrencyLimiter(int limit);
  void Acquire();
  void Release();

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  int available_;
};

class HttpTransport;

// JSON-over-HTTP clients for the provider wire protocol:
//   POST {url}/generate {prompt, n, top_p, max_new_tokens, seed}
//        -> {candidates: [{text}]}
//   POST {url}/classify {text, labels} -> {probs: {label: p}}
//   POST {url}/embed    {texts} -> {vectors: [[x]]}
// Non-2xx responses carry {error: message} and raise ProviderError.
class HttpGenerator : public Generator {
 public:
  explicit HttpGenerator(HttpEndpoint endpoint);
  ~HttpGenerator() override;
  std::vector<Candidate> Generate(std::string_view prompt,
                                  const DecodeParams& params) override;

 private:
  std::unique_ptr<HttpTransport> transport_;
};

class HttpClassifier : public Classifier {
 public:
  explicit HttpClassifier(HttpEndpoint endpoint);
  ~HttpClassifier() override;
  ClassDistribution Classify(std::string_view input_text,
                             std::span<const std::string> labels) override;

 private:
  std::unique_ptr<HttpTransport> transport_;
};

class HttpEmbedder : public Embedder {
 public:
  explicit HttpEmbedder(HttpEndpoint endpoint);
  ~HttpEmbedder() override;
  std::vector<EmbeddingVector> Embed(
      std::span<const std::string> texts) override;

 private:
  std::unique_ptr<HttpTransport> transport_;
};

// Hosts in-process providers behind the same wire protocol. Any of the
// three may be null; the matching route then answers 404.
class ProviderServer {
 public:
  ProviderServer(std::shared_ptr<Generator> generator,
                 std::shared_ptr<Classifier> classifier,
                 std::shared_ptr<Embedder> embedder);
  ~ProviderServer();

  ProviderServer(const ProviderServer&) = delete;
  ProviderServer& operator=(const ProviderServer&) = delete;

  // Binds to an ephemeral port and returns it.
  int BindToAnyPort(const std::string& host = "127.0.0.1");
  bool Bind(const std::string& host, int port);
  // Blocks serving requests until Stop().
  void Listen();
  void Stop();
  void WaitUntilReady() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace normchain

#endif  // NORMCHAIN_HTTP_PROVIDERS_H_
