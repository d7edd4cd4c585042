#include "cli/run_manifest.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <memory>

#include "lsakit/cli.hpp"
#include "lsakit/errors.hpp"

#ifndef LSAKIT_VERSION
#define LSAKIT_VERSION "0.0.0"
#endif

namespace lsakit::cli {

namespace {

class Sha256 {
 public:
  Sha256() : ctx_(EVP_MD_CTX_new(), &EVP_MD_CTX_free) {
    if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), EVP_sha256(), nullptr) != 1) throw Error("sha256: init failed");
  }
  void update(const char* data, std::size_t n) {
    if (EVP_DigestUpdate(ctx_.get(), data, n) != 1) throw Error("sha256: update failed");
  }
  std::string hex() {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_DigestFinal_ex(ctx_.get(), md, &len) != 1) throw Error("sha256: final failed");
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
      out += digits[md[i] >> 4];
      out += digits[md[i] & 0xF];
    }
    return out;
  }

 private:
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx_;
};

}  // namespace

std::string sha256_hex(std::string_view bytes) {
  Sha256 h;
  h.update(bytes.data(), bytes.size());
  return h.hex();
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read file: " + path.string());
  Sha256 h;
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    h.update(buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  return h.hex();
}

void RunManifest::input(const std::filesystem::path& path) {
  const auto p = path.generic_string();
  for (const auto& e : inputs_)
    if (e.path == p) return;
  inputs_.push_back({p, sha256_file(path)});
}

void RunManifest::output(const std::filesystem::path& dir, const std::string& name) {
  outputs_.push_back({name, sha256_file(dir / name)});
}

std::string RunManifest::dump() const {
  const auto list = [](const std::vector<Entry>& v) {
    auto a = nlohmann::json::array();
    for (const auto& e : v) a.push_back({{"path", e.path}, {"sha256", e.sha256}});
    return a;
  };
  nlohmann::json j{{"tool", "lsakit"},
                   {"version", LSAKIT_VERSION},
                   {"command", command_},
                   {"parameters", parameters_},
                   {"inputs", list(inputs_)},
                   {"outputs", list(outputs_)}};
  return j.dump(2) + "\n";
}

void RunManifest::write(const std::filesystem::path& dir) const {
  const auto path = dir / "run_manifest.json";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write file: " + path.string());
  out << dump();
}

void write_output(const std::filesystem::path& dir, const std::string& name, const std::string& content,
                  RunManifest& manifest) {
  const auto path = dir / name;
  {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write file: " + path.string());
    out << content;
    out.close();
    if (!out) throw InputError("write failed: " + path.string());
  }
  manifest.output(dir, name);
}

}  // namespace lsakit::cli
