#include "renormkit/io.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include "renormkit/errors.hpp"

namespace renormkit {

std::string sha256_hex(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 digest failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 15]);
  }
  return out;
}

void write_output(const std::string& path, std::string_view bytes) {
  if (path == "-") {
    std::cout.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    std::cout.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw DomainError("cannot open output file '" + path + "'");
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw DomainError("failed writing output file '" + path + "'");
}

RunManifest::RunManifest(int argc, const char* const* argv)
    : start_(std::chrono::steady_clock::now()) {
  auto& cmd = doc_["command_line"] = nlohmann::ordered_json::array();
  for (int i = 0; i < argc; ++i) cmd.push_back(argv[i]);
  doc_["config"] = nlohmann::ordered_json::object();
  doc_["precision"] = nlohmann::ordered_json::object();
  doc_["results"] = nlohmann::ordered_json::object();
  doc_["outputs"] = nlohmann::ordered_json::array();
}

void RunManifest::emit(const std::string& path, std::string_view bytes) {
  write_output(path, bytes);
  doc_["outputs"].push_back(
      {{"path", path}, {"bytes", bytes.size()}, {"sha256", sha256_hex(bytes)}});
}

std::string RunManifest::finish() {
  std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start_;
  doc_["wall_time_s"] = dt.count();
  return doc_.dump(2) + "\n";
}

}  // namespace renormkit
