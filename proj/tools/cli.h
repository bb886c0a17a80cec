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

#ifndef NORMCHAIN_TOOLS_CLI_H_
#define NORMCHAIN_TOOLS_CLI_H_

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "normchain/coe.h"
#include "normchain/http_providers.h"
#include "normchain/providers.h"

namespace normchain::cli {

// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kValidationFailure = 1,
  kIoOrConfigError = 2,
  kProviderFailure = 3,
};

// Runs the tool with argv-style arguments (args[0] is the program name).
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

// Builds a provider from an endpoint spec. "http://..." yields a wire
// client; "mock://echo", "mock://oracle?success=0.5",
// "mock://oracle?accuracy=1&seed=0" and "mock://hashed?dim=256&n=3&seed=0"
// yield in-process mocks. Throws ConfigError for anything else.
std::shared_ptr<Generator> MakeGenerator(const HttpEndpoint& endpoint);
std::shared_ptr<Classifier> MakeClassifier(const HttpEndpoint& endpoint);
std::shared_ptr<Embedder> MakeEmbedder(const HttpEndpoint& endpoint);

// Chain configuration file: {"strategy", "decode": {n, top_p,
// max_new_tokens, seed}, "target_orientation", "plausible_threshold",
// "endpoints": {role: {"url", "timeout_ms", "max_concurrency", "retries"}}}.
// decode.seed is mandatory.
struct ChainFile {
  coe::ChainConfig config;
  std::map<Role, HttpEndpoint> endpoints;
};
ChainFile LoadChainFile(const std::string& path);

}  // namespace normchain::cli

#endif  // NORMCHAIN_TOOLS_CLI_H_
