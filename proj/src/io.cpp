#include "tubal/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <string>

namespace tubal {
namespace {

std::vector<unsigned char> read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed for '" + path.string() + "'");
  return bytes;
}

void write_bytes(const std::filesystem::path& path, const std::vector<unsigned char>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

void put_u64(std::vector<unsigned char>& out, std::uint64_t v) {
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<unsigned char>((v >> (8 * b)) & 0xFF));
}

std::uint64_t get_u64(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int b = 0; b < 8; ++b) v |= static_cast<std::uint64_t>(p[b]) << (8 * b);
  return v;
}

bool is_space(unsigned char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f'; }

struct PnmHeader {
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t payload_offset = 0;
};

PnmHeader parse_pnm(const std::vector<unsigned char>& bytes, char kind, const std::string& name) {
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != static_cast<unsigned char>(kind))
    throw FormatError(FormatErrc::bad_magic, name + ": expected P" + std::string(1, kind));
  std::size_t pos = 2;
  auto next_number = [&]() -> std::size_t {
    for (;;) {
      while (pos < bytes.size() && is_space(bytes[pos])) ++pos;
      if (pos < bytes.size() && bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
        continue;
      }
      break;
    }
    if (pos >= bytes.size()) throw FormatError(FormatErrc::malformed_header, name + ": header ends early");
    if (bytes[pos] < '0' || bytes[pos] > '9')
      throw FormatError(FormatErrc::malformed_header, name + ": expected a decimal number");
    std::size_t v = 0;
    while (pos < bytes.size() && bytes[pos] >= '0' && bytes[pos] <= '9') {
      v = v * 10 + static_cast<std::size_t>(bytes[pos] - '0');
      if (v > (std::size_t{1} << 32)) throw FormatError(FormatErrc::bad_dimensions, name + ": value too large");
      ++pos;
    }
    return v;
  };
  if (pos >= bytes.size() || !is_space(bytes[pos]))
    throw FormatError(FormatErrc::malformed_header, name + ": missing whitespace after magic");
  PnmHeader h;
  h.width = next_number();
  h.height = next_number();
  const std::size_t maxval = next_number();
  if (pos >= bytes.size() || !is_space(bytes[pos]))
    throw FormatError(FormatErrc::malformed_header, name + ": missing whitespace after maxval");
  h.payload_offset = pos + 1;
  if (h.width == 0 || h.height == 0) throw FormatError(FormatErrc::bad_dimensions, name + ": zero size");
  if (maxval != 255) throw FormatError(FormatErrc::unsupported_maxval, name + ": maxval must be 255");
  return h;
}

void check_payload(std::size_t have, std::size_t need, const std::string& name) {
  if (have < need) throw FormatError(FormatErrc::truncated, name + ": payload too short");
  if (have > need) throw FormatError(FormatErrc::trailing_data, name + ": bytes after payload");
}

unsigned char to_byte(double v) {
  if (!(v > 0.0)) return 0;
  if (v >= 255.0) return 255;
  return static_cast<unsigned char>(std::floor(v + 0.5));
}

std::vector<unsigned char> pnm_header(char kind, std::size_t width, std::size_t height) {
  const std::string h = "P" + std::string(1, kind) + "\n" + std::to_string(width) + " " +
                        std::to_string(height) + "\n255\n";
  return std::vector<unsigned char>(h.begin(), h.end());
}

}  // namespace

Tensor3 poly_decay(const PolyDecaySpec& spec) {
  if (spec.n == 0 || spec.p_tubes == 0) throw InvalidArgument("poly_decay: sizes must be positive");
  if (spec.r < 1) throw InvalidArgument("poly_decay: r must be at least 1");
  if (!(spec.exponent > 0.0)) throw InvalidArgument("poly_decay: exponent must be positive");
  Tensor3 a(spec.n, spec.n, spec.p_tubes);
  for (std::size_t j = 1; j <= spec.p_tubes; ++j) {
    const std::size_t ones = std::min({spec.r, j, spec.n});
    for (std::size_t i = 0; i < spec.n; ++i) {
      a(i, i, j - 1) = i < ones ? 1.0
                                : std::pow(static_cast<double>(i - ones + 2), -spec.exponent);
    }
  }
  return a;
}

Tensor3 add_noise(const Tensor3& a, double sigma, Rng& rng) {
  if (!(sigma >= 0.0)) throw InvalidArgument("noise level must be nonnegative");
  Tensor3 out = a;
  if (sigma == 0.0) return out;
  for (double& v : out.data()) v += sigma * rng.normal();
  return out;
}

Tensor3 read_ppm(const std::filesystem::path& path) {
  const auto bytes = read_bytes(path);
  const std::string name = path.string();
  const PnmHeader h = parse_pnm(bytes, '6', name);
  check_payload(bytes.size() - h.payload_offset, h.width * h.height * 3, name);
  Tensor3 a(h.height, h.width, 3);
  const unsigned char* px = bytes.data() + h.payload_offset;
  for (std::size_t i = 0; i < h.height; ++i)
    for (std::size_t j = 0; j < h.width; ++j)
      for (std::size_t c = 0; c < 3; ++c) a(i, j, c) = px[(i * h.width + j) * 3 + c];
  return a;
}

void write_ppm(const std::filesystem::path& path, const Tensor3& a) {
  if (a.tubes() != 3) throw DimensionError("PPM output needs exactly 3 slices");
  auto bytes = pnm_header('6', a.cols(), a.rows());
  bytes.reserve(bytes.size() + a.size());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t c = 0; c < 3; ++c) bytes.push_back(to_byte(a(i, j, c)));
  write_bytes(path, bytes);
}

Tensor3 read_pgm(const std::filesystem::path& path) {
  const auto bytes = read_bytes(path);
  const std::string name = path.string();
  const PnmHeader h = parse_pnm(bytes, '5', name);
  check_payload(bytes.size() - h.payload_offset, h.width * h.height, name);
  Tensor3 a(h.height, h.width, 1);
  const unsigned char* px = bytes.data() + h.payload_offset;
  for (std::size_t i = 0; i < h.height; ++i)
    for (std::size_t j = 0; j < h.width; ++j) a(i, j, 0) = px[i * h.width + j];
  return a;
}

Tensor3 read_pgm_stack(const std::vector<std::filesystem::path>& paths) {
  if (paths.empty()) throw InvalidArgument("no frames given");
  std::vector<Tensor3> frames;
  frames.reserve(paths.size());
  for (const auto& p : paths) {
    frames.push_back(read_pgm(p));
    if (frames.back().rows() != frames.front().rows() || frames.back().cols() != frames.front().cols())
      throw FormatError(FormatErrc::frame_mismatch, p.string() + ": frame size differs from the first frame");
  }
  Tensor3 a(frames.front().rows(), frames.front().cols(), frames.size());
  for (std::size_t t = 0; t < frames.size(); ++t) a.slice(t) = frames[t].slice(0);
  return a;
}

void write_pgm(const std::filesystem::path& path, const Tensor3& a, std::size_t k) {
  if (k >= a.tubes()) throw DimensionError("slice index out of range");
  auto bytes = pnm_header('5', a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) bytes.push_back(to_byte(a(i, j, k)));
  write_bytes(path, bytes);
}

Tensor3 read_tns(const std::filesystem::path& path) {
  const auto bytes = read_bytes(path);
  const std::string name = path.string();
  if (bytes.size() < 4 || std::memcmp(bytes.data(), "TNS3", 4) != 0)
    throw FormatError(FormatErrc::bad_magic, name + ": not a TNS3 file");
  if (bytes.size() < kTnsHeaderSize) throw FormatError(FormatErrc::truncated, name + ": header too short");
  if (bytes[4] != 1) throw FormatError(FormatErrc::bad_version, name + ": unsupported version");
  if (bytes[5] != 0) throw FormatError(FormatErrc::unsupported_scalar_kind, name + ": only real float64 is supported");
  const std::uint64_t m = get_u64(bytes.data() + 6);
  const std::uint64_t n = get_u64(bytes.data() + 14);
  const std::uint64_t p = get_u64(bytes.data() + 22);
  constexpr std::uint64_t kMaxElems = std::numeric_limits<std::uint64_t>::max() / 8;
  if (m == 0 || n == 0 || p == 0 || m > kMaxElems / n || m * n > kMaxElems / p)
    throw FormatError(FormatErrc::bad_dimensions, name + ": invalid dimensions");
  const std::uint64_t count = m * n * p;
  check_payload(bytes.size() - kTnsHeaderSize, static_cast<std::size_t>(count * 8), name);
  Tensor3 a(m, n, p);
  auto out = a.data();
  const unsigned char* src = bytes.data() + kTnsHeaderSize;
  for (std::size_t t = 0; t < count; ++t) out[t] = std::bit_cast<double>(get_u64(src + 8 * t));
  return a;
}

void write_tns(const std::filesystem::path& path, const Tensor3& a) {
  std::vector<unsigned char> bytes = {'T', 'N', 'S', '3', 1, 0};
  bytes.reserve(kTnsHeaderSize + 8 * a.size());
  put_u64(bytes, a.rows());
  put_u64(bytes, a.cols());
  put_u64(bytes, a.tubes());
  for (double v : a.data()) put_u64(bytes, std::bit_cast<std::uint64_t>(v));
  write_bytes(path, bytes);
}

}  // namespace tubal
