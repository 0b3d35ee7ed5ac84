#ifndef NBRCX_VERSION_HPP
#define NBRCX_VERSION_HPP

namespace nbrcx {
inline constexpr const char* kToolVersion = "0.1.0";
}

#endif
