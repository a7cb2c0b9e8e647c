#pragma once

// Output sinks and run manifests for the command-line tool.

#include <chrono>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace renormkit {

std::string sha256_hex(std::string_view bytes);

/// Writes bytes to `path`, or to stdout when path is "-".
void write_output(const std::string& path, std::string_view bytes);

class RunManifest {
 public:
  RunManifest(int argc, const char* const* argv);

  nlohmann::ordered_json& config() { return doc_["config"]; }
  nlohmann::ordered_json& precision() { return doc_["precision"]; }
  nlohmann::ordered_json& results() { return doc_["results"]; }

  /// Writes the output and records its digest.
  void emit(const std::string& path, std::string_view bytes);
  const nlohmann::ordered_json& outputs() const { return doc_["outputs"]; }

  /// Stamps the wall time and serializes.
  std::string finish();

 private:
  nlohmann::ordered_json doc_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace renormkit
