#pragma once

namespace slsopt {

inline constexpr const char* kVersion = "0.1.0";

#if defined(__linux__)
inline constexpr const char* kPlatformNote = "linux";
#elif defined(__APPLE__)
inline constexpr const char* kPlatformNote = "macos";
#elif defined(_WIN32)
inline constexpr const char* kPlatformNote = "windows";
#else
inline constexpr const char* kPlatformNote = "unknown";
#endif

}  // namespace slsopt
