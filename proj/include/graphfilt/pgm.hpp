#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "graphfilt/signal.hpp"

namespace graphfilt {

/// Binary PGM ("P5") image. Supported maxval values are 255 (one byte per
/// sample) and 65535 (two bytes, big-endian).
struct PgmImage {
  int width = 0;
  int height = 0;
  int maxval = 255;
  std::vector<std::uint16_t> samples;  // row-major
};

PgmImage read_pgm(const std::string& path);
void write_pgm(const std::string& path, const PgmImage& img);

/// sample/maxval -> intensity in [0,1] on a Grid2D(height, width).
Signal pgm_to_signal(const PgmImage& img, int window_width = 5);

/// round(clamp(v,0,1)*maxval), halves away from zero.
PgmImage signal_to_pgm(const Signal& s, int maxval = 65535);

Signal read_pgm_signal(const std::string& path);
void write_pgm_signal(const std::string& path, const Signal& s, int maxval = 65535);

}  // namespace graphfilt
