#pragma once

#include <filesystem>
#include <json.hpp>
#include <string>
#include <vector>

namespace lsakit::cli {

// run_manifest.json: command, effective parameters, input and output
// hashes. Everything in it is a function of the command line and the
// input bytes, so reruns produce the same file.
class RunManifest {
 public:
  explicit RunManifest(std::string command) : command_(std::move(command)) {}

  void parameter(const std::string& name, nlohmann::json value) { parameters_[name] = std::move(value); }
  // Hashes the file now. Repeated paths are recorded once.
  void input(const std::filesystem::path& path);
  // Hashes dir/name and records `name`.
  void output(const std::filesystem::path& dir, const std::string& name);

  std::string dump() const;
  void write(const std::filesystem::path& dir) const;

 private:
  struct Entry {
    std::string path;
    std::string sha256;
  };
  std::string command_;
  nlohmann::json parameters_ = nlohmann::json::object();
  std::vector<Entry> inputs_;
  std::vector<Entry> outputs_;
};

// Writes `content` to dir/name and records it as an output.
void write_output(const std::filesystem::path& dir, const std::string& name, const std::string& content,
                  RunManifest& manifest);

}  // namespace lsakit::cli
