#include "graphfilt/pgm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace graphfilt {

namespace {

// Reads one header token, skipping whitespace and '#' comments.
bool next_header_token(std::istream& in, std::string& tok) {
  tok.clear();
  int ch = in.get();
  while (ch != EOF) {
    if (ch == '#') {
      while (ch != EOF && ch != '\n') ch = in.get();
    } else if (std::isspace(ch)) {
      ch = in.get();
    } else {
      break;
    }
  }
  if (ch == EOF) return false;
  while (ch != EOF && !std::isspace(ch) && ch != '#') {
    tok.push_back(static_cast<char>(ch));
    ch = in.get();
  }
  if (ch != EOF) in.unget();  // the delimiter is not part of the token
  return true;
}

int parse_header_int(std::istream& in, const std::string& path, const char* what) {
  std::string tok;
  if (!next_header_token(in, tok))
    throw IoError(path + ": truncated PGM header (missing " + what + ")");
  int value = 0;
  for (char c : tok) {
    if (c < '0' || c > '9')
      throw IoError(path + ": malformed PGM header (" + what + " is '" + tok + "')");
    value = value * 10 + (c - '0');
    if (value > 1 << 30)
      throw IoError(path + ": malformed PGM header (" + what + " out of range)");
  }
  return value;
}

}  // namespace

PgmImage read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path + ": cannot open file");

  std::string magic;
  if (!next_header_token(in, magic) || magic != "P5")
    throw IoError(path + ": not a binary PGM (expected magic 'P5', got '" + magic + "')");

  PgmImage img;
  img.width = parse_header_int(in, path, "width");
  img.height = parse_header_int(in, path, "height");
  img.maxval = parse_header_int(in, path, "maxval");
  if (img.width < 1 || img.height < 1)
    throw IoError(path + ": invalid PGM dimensions " + std::to_string(img.width) + "x" +
                  std::to_string(img.height));
  if (static_cast<long long>(img.width) * img.height > (1LL << 30))
    throw IoError(path + ": PGM dimensions " + std::to_string(img.width) + "x" +
                  std::to_string(img.height) + " exceed the supported size");
  if (img.maxval != 255 && img.maxval != 65535)
    throw IoError(path + ": unsupported maxval " + std::to_string(img.maxval) +
                  " (only 255 and 65535)");
  // single whitespace byte separates header from raster
  const int sep = in.get();
  if (sep == EOF || !std::isspace(sep))
    throw IoError(path + ": malformed PGM header (no separator before raster)");

  const std::size_t n = static_cast<std::size_t>(img.width) * img.height;
  const std::size_t bytes_per = img.maxval > 255 ? 2 : 1;
  std::vector<unsigned char> raw(n * bytes_per);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (static_cast<std::size_t>(in.gcount()) != raw.size())
    throw IoError(path + ": truncated PGM payload (expected " + std::to_string(raw.size()) +
                  " bytes, got " + std::to_string(in.gcount()) + ")");

  img.samples.resize(n);
  if (bytes_per == 1) {
    for (std::size_t i = 0; i < n; ++i) img.samples[i] = raw[i];
  } else {
    for (std::size_t i = 0; i < n; ++i)
      img.samples[i] = static_cast<std::uint16_t>((raw[2 * i] << 8) | raw[2 * i + 1]);
  }
  for (std::size_t i = 0; i < n; ++i)
    if (img.samples[i] > img.maxval)
      throw IoError(path + ": sample " + std::to_string(i) + " exceeds maxval");
  return img;
}

void write_pgm(const std::string& path, const PgmImage& img) {
  if (img.width < 1 || img.height < 1)
    throw ValidationError("write_pgm: invalid dimensions");
  if (img.maxval != 255 && img.maxval != 65535)
    throw ValidationError("write_pgm: unsupported maxval " + std::to_string(img.maxval));
  const std::size_t n = static_cast<std::size_t>(img.width) * img.height;
  if (img.samples.size() != n)
    throw ValidationError("write_pgm: sample count does not match dimensions");

  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path + ": cannot open file for writing");
  out << "P5\n" << img.width << " " << img.height << "\n" << img.maxval << "\n";
  if (img.maxval > 255) {
    std::vector<unsigned char> raw(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      raw[2 * i] = static_cast<unsigned char>(img.samples[i] >> 8);
      raw[2 * i + 1] = static_cast<unsigned char>(img.samples[i] & 0xff);
    }
    out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  } else {
    std::vector<unsigned char> raw(n);
    for (std::size_t i = 0; i < n; ++i) raw[i] = static_cast<unsigned char>(img.samples[i]);
    out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  }
  if (!out) throw IoError(path + ": write failed");
}

Signal pgm_to_signal(const PgmImage& img, int window_width) {
  Signal s = Signal::uninitialized(make_grid(img.height, img.width, window_width));
  const double inv = 1.0 / img.maxval;
  for (std::size_t i = 0; i < img.samples.size(); ++i) s[i] = img.samples[i] * inv;
  return s;
}

PgmImage signal_to_pgm(const Signal& s, int maxval) {
  const Grid2D* grid = s.grid();
  if (!grid) throw ValidationError("signal_to_pgm: signal is not on a 2D grid");
  if (maxval != 255 && maxval != 65535)
    throw ValidationError("signal_to_pgm: unsupported maxval " + std::to_string(maxval));
  if (!all_finite(s.values()))
    throw ValidationError("signal_to_pgm: signal contains non-finite values");
  PgmImage img;
  img.width = grid->cols;
  img.height = grid->rows;
  img.maxval = maxval;
  img.samples.resize(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double v = std::clamp(s[i], 0.0, 1.0) * maxval;
    img.samples[i] = static_cast<std::uint16_t>(std::llround(v));
  }
  return img;
}

Signal read_pgm_signal(const std::string& path) { return pgm_to_signal(read_pgm(path)); }

void write_pgm_signal(const std::string& path, const Signal& s, int maxval) {
  write_pgm(path, signal_to_pgm(s, maxval));
}

}  // namespace graphfilt
