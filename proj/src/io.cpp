#include "walkoff/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>

#include "walkoff/errors.hpp"

namespace walkoff::io {

std::string format_double(double v) {
  char buf[40];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf, static_cast<std::size_t>(len));
}

std::string grid_csv(const TPAGrid& grid) {
  std::string out = "theta_s_rad,theta_i_rad,re_F,im_F,abs2_F\n";
  const auto n = grid.size();
  out.reserve(static_cast<std::size_t>(n * n) * 110);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      const std::complex<double> f = grid.values(a, b);
      out += format_double(grid.theta[static_cast<std::size_t>(a)]);
      out += ',';
      out += format_double(grid.theta[static_cast<std::size_t>(b)]);
      out += ',';
      out += format_double(f.real());
      out += ',';
      out += format_double(f.imag());
      out += ',';
      out += format_double(std::norm(f));
      out += '\n';
    }
  }
  return out;
}

std::string distribution_csv(const AngularDistribution& d) {
  std::string out = "theta_rad,p\n";
  for (std::size_t j = 0; j < d.p.size(); ++j) {
    out += format_double(d.theta[j]);
    out += ',';
    out += format_double(d.p[j]);
    out += '\n';
  }
  return out;
}

CsvTable parse_csv(std::string_view text) {
  CsvTable t;
  std::size_t pos = 0;
  int line_no = 0;
  auto split = [](std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      cells.push_back(line.substr(start, comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return cells;
  };
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split(line);
    if (t.header.empty()) {
      for (auto c : cells) t.header.emplace_back(c);
      continue;
    }
    if (cells.size() != t.header.size()) {
      throw IoError("csv line " + std::to_string(line_no) + ": wrong number of fields");
    }
    std::vector<double> row;
    for (auto c : cells) {
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), v);
      if (ec != std::errc{} || ptr != c.data() + c.size()) {
        throw IoError("csv line " + std::to_string(line_no) + ": bad number '" + std::string(c) + "'");
      }
      row.push_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  if (t.header.empty()) throw IoError("csv has no header row");
  return t;
}

std::string intensity_pgm(const TPAGrid& grid) {
  const Eigen::MatrixXd intensity = grid.intensity();
  const auto n = grid.size();
  const double peak = intensity.maxCoeff();
  std::string out = "P5\n" + std::to_string(n) + " " + std::to_string(n) + "\n65535\n";
  out.reserve(out.size() + static_cast<std::size_t>(2 * n * n));
  for (Eigen::Index row = 0; row < n; ++row) {
    const Eigen::Index idler = n - 1 - row;
    for (Eigen::Index col = 0; col < n; ++col) {
      const double v = peak > 0.0 ? intensity(col, idler) / peak : 0.0;
      const auto level =
          static_cast<unsigned>(std::lround(std::clamp(v, 0.0, 1.0) * 65535.0));
      out += static_cast<char>((level >> 8) & 0xFF);
      out += static_cast<char>(level & 0xFF);
    }
  }
  return out;
}

std::string sha256_hex(std::string_view bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1) {
    throw IoError("SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned i = 0; i < len; ++i) {
    hex += kHex[digest[i] >> 4];
    hex += kHex[digest[i] & 0xF];
  }
  return hex;
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw IoError("write failed: " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

}  // namespace walkoff::io
