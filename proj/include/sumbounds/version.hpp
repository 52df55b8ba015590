#ifndef SUMBOUNDS_VERSION_HPP
#define SUMBOUNDS_VERSION_HPP

namespace sumbounds {

inline constexpr const char* kVersion = "0.1.0";

}

#endif
