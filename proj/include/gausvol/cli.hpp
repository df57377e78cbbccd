#pragma once

namespace gausvol {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitCheckFailed = 4;

// `gausvol <sample|estimate|consistency|clt|diagnose> [--config FILE] [flags]`.
int cli(int argc, const char* const* argv);

}  // namespace gausvol
