#pragma once

namespace graphfilt {

/// Command-line entry point (phantom / addnoise / denoise / psnr / bench).
/// Exit codes: 0 success, 1 validation error, 2 I/O error, 3 numeric failure.
int run_cli(int argc, const char* const* argv);

}  // namespace graphfilt
