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

#include "normchain/http_providers.h"

#include <httplib.h>

#include <nlohmann/json.hpp>

#include "normchain/error.h"

namespace normchain {

using nlohmann::json;

ConcurrencyLimiter::ConcurrencyLimiter(int limit)
    : available_(limit < 1 ? 1 : limit) {}

void ConcurrencyLimiter::Acquire() {
  std::unique_lock<std::mutex> lock(mu_);
  cv_.wait(lock, [this] { return available_ > 0; });
  --available_;
}

void ConcurrencyLimiter::Release() {
  {
    std::lock_guard<std::mutex> lock(mu_);
    ++available_;
  }
  cv_.notify_one();
}

class HttpTransport {
 public:
  explicit HttpTransport(HttpEndpoint endpoint)
      : endpoint_(std::move(endpoint)), limiter_(endpoint_.max_concurrency) {
    const std::string& url = endpoint_.url;
    const size_t scheme = url.find("://");
    const size_t host_start = scheme == std::string::npos ? 0 : scheme + 3;
    const size_t path_start = url.find('/', host_start);
    if (path_start == std::string::npos) {
      base_ = url;
    } else {
      base_ = url.substr(0, path_start);
      prefix_ = url.substr(path_start);
      while (!prefix_.empty() && prefix_.back() == '/') prefix_.pop_back();
    }
    if (url.compare(0, 7, "http://") != 0) {
      throw ConfigError("only http:// endpoints are supported: " + url);
    }
  }

  // POSTs a JSON body and returns the parsed 2xx response.
  json Post(const std::string& route, const json& body) {
    limiter_.Acquire();
    struct Release {
      ConcurrencyLimiter& l;
      ~Release() { l.Release(); }
    } release{limiter_};

    const std::string payload = body.dump();
    const std::string path = prefix_ + route;
    std::string transport_error;
    for (int attempt = 0; attempt <= std::max(0, endpoint_.retries);
         ++attempt) {
      httplib::Client client(base_);
      const auto timeout_s = endpoint_.timeout_ms / 1000;
      const auto timeout_us = (endpoint_.timeout_ms % 1000) * 1000;
      client.set_connection_timeout(timeout_s, timeout_us);
      client.set_read_timeout(timeout_s, timeout_us);
      client.set_write_timeout(timeout_s, timeout_us);
      auto res = client.Post(path, payload, "application/json");
      if (!res) {
        transport_error = httplib::to_string(res.error());
        continue;
      }
      json parsed;
      try {
        parsed = json::parse(res->body);
      } catch (const json::parse_error&) {
        throw ProviderError(endpoint_.url + route + ": response is not JSON");
      }
      if (res->status < 200 || res->status >= 300) {
        std::string message = "HTTP " + std::to_string(res->status);
        if (parsed.is_object() && parsed.contains("error") &&
            parsed["error"].is_string()) {
          message += ": " + parsed["error"].get<std::string>();
        }
        throw ProviderError(endpoint_.url + route + ": " + message);
      }
      return parsed;
    }
    throw ProviderError(endpoint_.url + route +
                        ": transport failure: " + transport_error);
  }

  const std::string& url() const { return endpoint_.url; }

 private:
  HttpEndpoint endpoint_;
  ConcurrencyLimiter limiter_;
  std::string base_;
  std::string prefix_;
};

HttpGenerator::HttpGenerator(HttpEndpoint endpoint)
    : transport_(std::make_unique<HttpTransport>(std::move(endpoint))) {}
HttpGenerator::~HttpGenerator() = default;

std::vector<Candidate> HttpGenerator::Generate(std::string_view prompt,
                                               const DecodeParams& params) {
  params.Validate();
  const json body = {{"prompt", prompt},
                     {"n", params.n},
                     {"top_p", params.top_p},
                     {"max_new_tokens", params.max_new_tokens},
                     {"seed", params.seed}};
  const json res = transport_->Post("/generate", body);
  if (!res.is_object() || !res.contains("candidates") ||
      !res["candidates"].is_array()) {
    throw ProviderError(transport_->url() +
                        "/generate: response lacks 'candidates'");
  }
  std::vector<Candidate> out;
  for (const json& c : res["candidates"]) {
    if (!c.is_object() || !c.contains("text") || !c["text"].is_string()) {
      throw ProviderError(transport_->url() +
                          "/generate: candidate lacks 'text'");
    }
    out.push_back({c["text"].get<std::string>(), 0, {}});
  }
  return CheckCandidates(std::move(out), params.n);
}

HttpClassifier::HttpClassifier(HttpEndpoint endpoint)
    : transport_(std::make_unique<HttpTransport>(std::move(endpoint))) {}
HttpClassifier::~HttpClassifier() = default;

ClassDistribution HttpClassifier::Classify(
    std::string_view input_text, std::span<const std::string> labels) {
  const json body = {{"text", input_text},
                     {"labels", std::vector<std::string>(labels.begin(),
                                                         labels.end())}};
  const json res = transport_->Post("/classify", body);
  if (!res.is_object() || !res.contains("probs") ||
      !res["probs"].is_object()) {
    throw ProviderError(transport_->url() + "/classify: response lacks 'probs'");
  }
  ClassDistribution d;
  for (const auto& [label, p] : res["probs"].items()) {
    if (!p.is_number()) {
      throw ProviderError(transport_->url() +
                          "/classify: non-numeric probability");
    }
    d.probs[label] = p.get<double>();
  }
  d.Validate(labels);
  return d;
}

HttpEmbedder::HttpEmbedder(HttpEndpoint endpoint)
    : transport_(std::make_unique<HttpTransport>(std::move(endpoint))) {}
HttpEmbedder::~HttpEmbedder() = default;

std::vector<EmbeddingVector> HttpEmbedder::Embed(
    std::span<const std::string> texts) {
  if (texts.empty()) throw ProviderError("embed called with no texts");
  const json body = {
      {"texts", std::vector<std::string>(texts.begin(), texts.end())}};
  const json res = transport_->Post("/embed", body);
  if (!res.is_object() || !res.contains("vectors") ||
      !res["vectors"].is_array()) {
    throw ProviderError(transport_->url() + "/embed: response lacks 'vectors'");
  }
  std::vector<EmbeddingVector> out;
  try {
    out = res["vectors"].get<std::vector<EmbeddingVector>>();
  } catch (const json::exception&) {
    throw ProviderError(transport_->url() + "/embed: malformed vectors");
  }
  CheckEmbeddings(out, texts.size());
  return out;
}

struct ProviderServer::Impl {
  httplib::Server server;
  std::shared_ptr<Generator> generator;
  std::shared_ptr<Classifier> classifier;
  std::shared_ptr<Embedder> embedder;
};

namespace {

void Reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

template <typename Fn>
void Guarded(const httplib::Request& req, httplib::Response& res, Fn&& fn) {
  json body;
  try {
    body = json::parse(req.body);
  } catch (const json::parse_error&) {
    Reply(res, 400, {{"error", "request body is not JSON"}});
    return;
  }
  try {
    Reply(res, 200, fn(body));
  } catch (const json::exception& e) {
    Reply(res, 400, {{"error", std::string("bad request: ") + e.what()}});
  } catch (const ConfigError& e) {
    Reply(res, 400, {{"error", e.what()}});
  } catch (const std::exception& e) {
    Reply(res, 500, {{"error", e.what()}});
  }
}

}  // namespace

ProviderServer::ProviderServer(std::shared_ptr<Generator> generator,
                               std::shared_ptr<Classifier> classifier,
                               std::shared_ptr<Embedder> embedder)
    : impl_(std::make_unique<Impl>()) {
  impl_->generator = std::move(generator);
  impl_->classifier = std::move(classifier);
  impl_->embedder = std::move(embedder);
  Impl* impl = impl_.get();

  if (impl->generator) {
    impl->server.Post("/generate", [impl](const httplib::Request& req,
                                          httplib::Response& res) {
      Guarded(req, res, [&](const json& body) {
        DecodeParams params;
        params.n = body.at("n").get<int>();
        params.top_p = body.at("top_p").get<double>();
        params.max_new_tokens = body.at("max_new_tokens").get<int>();
        params.seed = body.at("seed").get<uint64_t>();
        const auto prompt = body.at("prompt").get<std::string>();
        json candidates = json::array();
        for (const Candidate& c : impl->generator->Generate(prompt, params)) {
          candidates.push_back({{"text", c.text}});
        }
        return json{{"candidates", candidates}};
      });
    });
  }
  if (impl->classifier) {
    impl->server.Post("/classify", [impl](const httplib::Request& req,
                                          httplib::Response& res) {
      Guarded(req, res, [&](const json& body) {
        const auto text = body.at("text").get<std::string>();
        const auto labels = body.at("labels").get<std::vector<std::string>>();
        const ClassDistribution d = impl->classifier->Classify(text, labels);
        json probs = json::object();
        for (const std::string& label : labels) probs[label] = d.prob(label);
        return json{{"probs", probs}};
      });
    });
  }
  if (impl->embedder) {
    impl->server.Post("/embed", [impl](const httplib::Request& req,
                                       httplib::Response& res) {
      Guarded(req, res, [&](const json& body) {
        const auto texts = body.at("texts").get<std::vector<std::string>>();
        return json{{"vectors", impl->embedder->Embed(texts)}};
      });
    });
  }
  impl->server.set_error_handler(
      [](const httplib::Request&, httplib::Response& res) {
        if (res.body.empty()) {
          Reply(res, res.status, {{"error", "HTTP " + std::to_string(res.status)}});
        }
      });
}

ProviderServer::~ProviderServer() { Stop(); }

int ProviderServer::BindToAnyPort(const std::string& host) {
  return impl_->server.bind_to_any_port(host);
}

bool ProviderServer::Bind(const std::string& host, int port) {
  return impl_->server.bind_to_port(host, port);
}

void ProviderServer::Listen() { impl_->server.listen_after_bind(); }

void ProviderServer::Stop() { impl_->server.stop(); }

void ProviderServer::WaitUntilReady() const { impl_->server.wait_until_ready(); }

}  // namespace normchain
