#include <bit>
#include <cstring>
#include <fstream>

#include "lsakit/vecspace.hpp"
#include "util/hash.hpp"
#include "util/text.hpp"

namespace lsakit::vecspace {
namespace {

constexpr char kMagic[8] = {'L', 'S', 'A', 'S', 'P', 'A', 'C', 'E'};
constexpr std::size_t kHeaderSize = 64;

class Writer {
 public:
  void u8(std::uint8_t v) { buf_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void bytes(std::string_view s) { buf_.append(s); }
  std::string take() { return std::move(buf_); }
  const std::string& data() const { return buf_; }

 private:
  std::string buf_;
};

class Reader {
 public:
  explicit Reader(std::string_view b) : b_(b) {}
  std::uint8_t u8() {
    need(1);
    return static_cast<std::uint8_t>(b_[pos_++]);
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(b_[pos_++])) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(b_[pos_++])) << (8 * i);
    return v;
  }
  double f64() { return std::bit_cast<double>(u64()); }
  std::string_view bytes(std::size_t n) {
    need(n);
    auto s = b_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  void skip(std::size_t n) { bytes(n); }
  std::size_t remaining() const { return b_.size() - pos_; }

 private:
  void need(std::size_t n) const {
    if (b_.size() - pos_ < n)
      throw SpaceFormatError(SpaceFormatError::Kind::truncated, "space file is truncated");
  }
  std::string_view b_;
  std::size_t pos_ = 0;
};

std::uint8_t method_code(SvdMethod m) {
  switch (m) {
    case SvdMethod::automatic: return 0;
    case SvdMethod::dense: return 1;
    case SvdMethod::randomized: return 2;
  }
  return 0;
}

}  // namespace

std::string save_space(const SemanticSpace& s) {
  Writer w;
  w.bytes(std::string_view(kMagic, sizeof kMagic));
  w.u32(kSpaceFormatVersion);
  w.u32(0);
  w.u64(s.size());
  w.u64(s.k());
  w.u64(s.n_docs());
  w.u64(s.config().min_count);
  w.u64(s.config().seed);
  w.u8(s.config().scaling == Scaling::sigma ? 0 : 1);
  w.u8(0);  // log-entropy
  w.u8(method_code(s.config().method));
  for (int i = 0; i < 5; ++i) w.u8(0);

  for (Eigen::Index i = 0; i < s.singular_values().size(); ++i) w.f64(s.singular_values()(i));
  const RowMatrix& v = s.vectors();
  for (Eigen::Index r = 0; r < v.rows(); ++r)
    for (Eigen::Index c = 0; c < v.cols(); ++c) w.f64(v(r, c));
  for (const auto& t : s.term_stats()) {
    w.u32(static_cast<std::uint32_t>(t.term.size()));
    w.bytes(t.term);
    w.u64(t.tf_total);
    w.u64(t.df);
    w.f64(t.global_weight);
  }
  w.u64(util::fnv1a(w.data()));
  return w.take();
}

SemanticSpace load_space(std::string_view bytes) {
  using Kind = SpaceFormatError::Kind;
  if (bytes.size() < sizeof kMagic || std::memcmp(bytes.data(), kMagic, sizeof kMagic) != 0)
    throw SpaceFormatError(Kind::bad_magic, "not a space file (bad magic bytes)");
  Reader r(bytes);
  r.skip(sizeof kMagic);
  const std::uint32_t version = r.u32();
  if (version != kSpaceFormatVersion)
    throw SpaceFormatError(Kind::unsupported_version,
                           "unsupported space format version " + std::to_string(version) +
                               " (this build reads version " + std::to_string(kSpaceFormatVersion) + ")");
  if (bytes.size() < kHeaderSize + 8) throw SpaceFormatError(Kind::truncated, "space file is truncated");
  const std::uint64_t stored = [&] {
    Reader tail(bytes.substr(bytes.size() - 8));
    return tail.u64();
  }();
  if (stored != util::fnv1a(bytes.substr(0, bytes.size() - 8)))
    throw SpaceFormatError(Kind::corrupt, "space file checksum mismatch");

  r.u32();  // flags
  const std::uint64_t n_terms = r.u64();
  const std::uint64_t k = r.u64();
  BuildConfig cfg;
  const std::uint64_t n_docs = r.u64();
  cfg.min_count = r.u64();
  cfg.seed = r.u64();
  cfg.k = k;
  cfg.scaling = r.u8() == 0 ? Scaling::sigma : Scaling::none;
  if (r.u8() != 0) throw SpaceFormatError(Kind::corrupt, "unknown weighting code");
  switch (r.u8()) {
    case 0: cfg.method = SvdMethod::automatic; break;
    case 1: cfg.method = SvdMethod::dense; break;
    case 2: cfg.method = SvdMethod::randomized; break;
    default: throw SpaceFormatError(Kind::corrupt, "unknown SVD method code");
  }
  r.skip(5);

  if (n_terms > r.remaining() / 8 || k > r.remaining() / 8 || (k > 0 && n_terms * k > r.remaining() / 8))
    throw SpaceFormatError(Kind::truncated, "space file is truncated");
  Vector sv(static_cast<Eigen::Index>(k));
  for (Eigen::Index i = 0; i < sv.size(); ++i) sv(i) = r.f64();
  RowMatrix vectors(static_cast<Eigen::Index>(n_terms), static_cast<Eigen::Index>(k));
  for (Eigen::Index row = 0; row < vectors.rows(); ++row)
    for (Eigen::Index c = 0; c < vectors.cols(); ++c) vectors(row, c) = r.f64();
  std::vector<TermStats> stats(n_terms);
  for (auto& t : stats) {
    const std::uint32_t len = r.u32();
    t.term = std::string(r.bytes(len));
    t.tf_total = r.u64();
    t.df = r.u64();
    t.global_weight = r.f64();
  }
  if (r.remaining() != 8) throw SpaceFormatError(Kind::corrupt, "trailing bytes in space file");
  return SemanticSpace(std::move(stats), std::move(vectors), std::move(sv), cfg, n_docs);
}

void write_space_file(const std::filesystem::path& path, const SemanticSpace& s) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write file: " + path.string());
  const std::string bytes = save_space(s);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw InputError("write failed: " + path.string());
}

SemanticSpace read_space_file(const std::filesystem::path& path) {
  return load_space(util::read_file(path));
}

}  // namespace lsakit::vecspace
